#include "hrep/pseudorep.hpp"

#include <sstream>

namespace hrep {

Matrix EssentiallyAbelianFiber::sigma(int component,
                                      std::span<const double> angles) const {
    const int n = dim();
    Matrix m = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        double phase = static_cast<double>(component_weights[i]) * component /
                       components;
        m(i, i) = chars.value(i, angles) * std::exp(Complex(0, 2.0 * M_PI * phase));
    }
    return m;
}

Matrix EssentiallyAbelianFiber::sigma_representative(int component) const {
    std::vector<double> zero(rank, 0.0);
    return sigma(component, zero);
}

EssentiallyAbelianFiber EssentiallyAbelianFiber::torus(int r) {
    EssentiallyAbelianFiber f;
    f.rank = r;
    f.components = 1;
    f.chars.exponents.assign(r, std::vector<int>(r, 0));
    for (int i = 0; i < r; ++i) f.chars.exponents[i][i] = 1;
    f.component_weights.assign(r, 0);
    return f;
}

double faithfulness_separation(const EssentiallyAbelianFiber& fiber,
                               const SampledGroupBundle& bundle) {
    if (fiber.rank != bundle.rank() || fiber.components != bundle.components())
        throw std::invalid_argument("faithfulness_separation: fiber/bundle mismatch");
    const ArrowId n = bundle.fiber_size();
    std::vector<Matrix> values;
    values.reserve(n);
    for (ArrowId e = 0; e < n; ++e) {
        auto a = bundle.element_angles(e);
        values.push_back(fiber.sigma(bundle.element_component(e), a));
    }
    double sep = std::numeric_limits<double>::infinity();
    for (ArrowId i = 0; i < n; ++i)
        for (ArrowId j = i + 1; j < n; ++j)
            sep = std::min(sep, (values[i] - values[j]).norm());
    return std::isfinite(sep) ? sep : 0.0;
}

PseudoRep build_pseudorep(std::shared_ptr<const SampledGroupBundle> bundle,
                          const EssentiallyAbelianFiber& fiber,
                          const std::vector<double>& cutoff, int x0,
                          const PseudoRepOptions& opts) {
    const SampledGroupBundle& B = *bundle;
    if (static_cast<int>(cutoff.size()) != B.n_base())
        throw std::invalid_argument("build_pseudorep: cutoff size mismatch");
    const int nb = B.n_base();
    if (cutoff[x0] != 1.0 || cutoff[(x0 + 1) % nb] != 1.0 ||
        cutoff[(x0 + nb - 1) % nb] != 1.0)
        throw std::invalid_argument("build_pseudorep: cutoff must be 1 near x0");
    bool has_zero = false;
    for (double v : cutoff) {
        if (v < 0.0 || v > 1.0)
            throw std::invalid_argument("build_pseudorep: cutoff values outside [0,1]");
        has_zero = has_zero || v == 0.0;
    }
    if (!has_zero)
        throw std::invalid_argument("build_pseudorep: cutoff not compactly supported");

    if (double sep = faithfulness_separation(fiber, B);
        sep <= opts.separation_threshold) {
        std::ostringstream msg;
        msg << "build_pseudorep: σ not faithful on the sampled fiber (separation "
            << sep << ")";
        throw std::invalid_argument(msg.str());
    }

    const int N = fiber.dim();
    auto contraction = std::make_shared<ContractionHomotopy>(fiber.chars,
                                                             B.n_fib(), 64);
    // eigenphase paths to the component representatives
    auto paths = std::make_shared<std::vector<EigenphasePath>>();
    for (int i = 0; i < fiber.components; ++i)
        paths->emplace_back(fiber.sigma_representative(i));
    auto c = std::make_shared<std::vector<double>>(cutoff);

    PseudoRep out;
    out.gpd = bundle;
    out.dims.assign(B.n_base(), 2 * N);
    out.map = [bundle, contraction, paths, c, N](ArrowId g) -> Matrix {
        const SampledGroupBundle& b = *bundle;
        const int x = b.source(g);
        const double cu = (*c)[x];
        const ArrowId e = b.element_of(g);
        const int comp = b.element_component(e);
        const auto angles = b.element_angles(e);

        Matrix h = contraction->at(angles, cu);
        Matrix p = (*paths)[comp].at(cu);
        Matrix block = Matrix::Zero(2 * N, 2 * N);
        block.topLeftCorner(N, N) = p;
        block.bottomRightCorner(N, N) = p.conjugate();
        return block * h;
    };
    return out;
}

ObstructionReport obstruction_check(const PseudoRep& lambda, double tau_inv) {
    auto bundle = std::dynamic_pointer_cast<const SampledGroupBundle>(lambda.gpd);
    if (!bundle || bundle->rank() != 2)
        throw std::invalid_argument(
            "obstruction_check: expected a pseudo-rep on a rank-2 bundle");
    if (lambda.min_singular_value() <= tau_inv)
        throw std::invalid_argument("obstruction_check: pseudo-rep not invertible");

    const int nf = bundle->n_fib();
    auto det_at_seam = [&](int ia, int ib) {
        const int grid[2] = {ia, ib};
        ArrowId e = bundle->element_from(0, grid);
        ArrowId glued = bundle->apply_monodromy(e);
        return lambda.map(bundle->arrow(0, glued)).determinant();
    };

    std::vector<Complex> first(nf), second(nf), diag(nf);
    for (int i = 0; i < nf; ++i) {
        first[i] = det_at_seam(i, 0);
        second[i] = det_at_seam(0, i);
        diag[i] = det_at_seam(i, i);
    }
    ObstructionReport r;
    r.deg_first = winding_number(first);
    r.deg_second = winding_number(second);
    r.deg_diagonal = winding_number(diag);
    r.degree_identity_holds = r.deg_diagonal == r.deg_first + r.deg_second;
    r.su_condition_met = r.deg_second == 0;
    return r;
}

SuRestrictionReport su_restriction_check(const CharacterList& rho, int n_fib) {
    if (rho.rank() != 2)
        throw std::invalid_argument("su_restriction_check: expected T^2 characters");
    std::vector<Complex> loop(n_fib);
    std::vector<double> angles(2, 0.0);
    for (int i = 0; i < n_fib; ++i) {
        angles[1] = static_cast<double>(i) / n_fib;
        loop[i] = rho.rho(angles).determinant();
    }
    SuRestrictionReport r;
    r.degree = winding_number(loop);
    r.violates = r.degree != 0;
    return r;
}

}  // namespace hrep
