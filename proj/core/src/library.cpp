#include "hrep/library.hpp"

#include <random>

namespace hrep {

std::vector<Matrix> regular_rep_matrices(const FiniteGroupoid& g) {
    if (g.num_objects() != 1)
        throw std::invalid_argument("regular_rep_matrices: expected a group");
    const ArrowId n = g.num_arrows();
    std::vector<Matrix> out;
    out.reserve(n);
    for (ArrowId a = 0; a < n; ++a) {
        Matrix m = Matrix::Zero(n, n);
        for (ArrowId b = 0; b < n; ++b) m(g.compose(a, b), b) = 1.0;
        out.push_back(std::move(m));
    }
    return out;
}

std::vector<Matrix> trivial_rep_matrices(const FiniteGroupoid& g) {
    return std::vector<Matrix>(g.num_arrows(), Matrix::Identity(1, 1));
}

std::vector<Matrix> cyclic_character_matrices(int n, int weight) {
    std::vector<Matrix> out;
    out.reserve(n);
    for (int k = 0; k < n; ++k) {
        Matrix m(1, 1);
        m(0, 0) = std::exp(Complex(0, 2.0 * M_PI * weight * k / n));
        out.push_back(std::move(m));
    }
    return out;
}

namespace {
// element order matches FiniteGroupoid::symmetric_s3 (identity first);
// the library tests check multiplicativity against the groupoid tables
const int kS3Perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                            {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
}  // namespace

std::vector<Matrix> s3_sign_matrices() {
    std::vector<Matrix> out;
    for (const auto& p : kS3Perms) {
        int inversions = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (p[i] > p[j]) ++inversions;
        Matrix m(1, 1);
        m(0, 0) = (inversions % 2) ? -1.0 : 1.0;
        out.push_back(std::move(m));
    }
    return out;
}

std::vector<Matrix> s3_standard_matrices() {
    // restrict the permutation representation to the plane orthogonal to
    // (1,1,1) using a fixed orthonormal basis
    Eigen::MatrixXd q(3, 2);
    const double s2 = 1.0 / std::sqrt(2.0), s6 = 1.0 / std::sqrt(6.0);
    q << s2, s6, -s2, s6, 0.0, -2.0 * s6;
    std::vector<Matrix> out;
    for (const auto& p : kS3Perms) {
        Eigen::MatrixXd perm = Eigen::MatrixXd::Zero(3, 3);
        for (int i = 0; i < 3; ++i) perm(p[i], i) = 1.0;
        out.push_back((q.transpose() * perm * q).cast<Complex>());
    }
    return out;
}

std::shared_ptr<const HomotopyRep> mapping_cone(
    std::shared_ptr<const FiniteGroupoid> group, const std::vector<Matrix>& v,
    const std::vector<Matrix>& w, const Matrix& f, double equivariance_tol) {
    const ArrowId n = group->num_arrows();
    if (static_cast<ArrowId>(v.size()) != n || static_cast<ArrowId>(w.size()) != n)
        throw std::invalid_argument("mapping_cone: one matrix per group element");
    const int dv = static_cast<int>(v[0].rows());
    const int dw = static_cast<int>(w[0].rows());
    if (f.rows() != dw || f.cols() != dv)
        throw std::invalid_argument("mapping_cone: map shape mismatch");
    for (ArrowId a = 0; a < n; ++a)
        if ((w[a] * f - f * v[a]).norm() > equivariance_tol)
            throw std::invalid_argument("mapping_cone: map is not equivariant");

    GradedDims dims({0, 1}, {dv, dw});
    auto vv = std::make_shared<std::vector<Matrix>>(v);
    auto ww = std::make_shared<std::vector<Matrix>>(w);
    auto ff = std::make_shared<Matrix>(f);
    OpFamily ops = [vv, ww, ff, dims](int k, std::span<const ArrowId> t,
                                      int) -> GradedMap {
        GradedMap m(dims, dims, 1 - k);
        if (k == 0) {
            m.block(0) = *ff;
        } else if (k == 1) {
            m.block(0) = (*vv)[t[0]];
            m.block(1) = (*ww)[t[0]];
        }
        return m;
    };
    auto rep = std::make_shared<HomotopyRep>(
        std::static_pointer_cast<const Groupoid>(group),
        std::vector<GradedDims>{dims}, 1, std::move(ops));
    std::vector<GradedMap> ups;
    ups.emplace_back(dims, dims, -1);
    rep->set_unitality_witness(std::move(ups));
    return rep;
}

std::shared_ptr<const FiniteGroupoid> library_group(const std::string& group_name) {
    if (group_name == "z2")
        return std::make_shared<FiniteGroupoid>(FiniteGroupoid::cyclic_group(2));
    if (group_name == "z4")
        return std::make_shared<FiniteGroupoid>(FiniteGroupoid::cyclic_group(4));
    if (group_name == "s3")
        return std::make_shared<FiniteGroupoid>(FiniteGroupoid::symmetric_s3());
    throw std::invalid_argument("library_group: unknown group '" + group_name + "'");
}

namespace {
std::shared_ptr<const HomotopyRep> honest_shared(
    std::shared_ptr<const FiniteGroupoid> g, std::vector<Matrix> mats, int degree) {
    return std::make_shared<HomotopyRep>(
        honest_rep(std::static_pointer_cast<const Groupoid>(g), std::move(mats),
                   degree));
}

// honest two-term rep acting diagonally in degrees 0 and 1
std::shared_ptr<const HomotopyRep> doubled_rep(
    std::shared_ptr<const FiniteGroupoid> g, std::vector<Matrix> mats) {
    const int d = static_cast<int>(mats[0].rows());
    GradedDims dims = GradedDims::two_term(d);
    auto mm = std::make_shared<std::vector<Matrix>>(std::move(mats));
    return std::make_shared<HomotopyRep>(honest_graded_rep(
        std::static_pointer_cast<const Groupoid>(g), dims, [mm, dims](ArrowId a) {
            return GradedMap::uniform(dims, (*mm)[a]);
        }));
}

GradedMap random_t1(const GradedDims& dims, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    GradedMap t(dims, dims, -1);
    for (int i = dims.window().lo; i <= dims.window().hi; ++i) {
        if (!dims.window().contains(i - 1)) continue;
        Matrix b(dims.dim(i - 1), dims.dim(i));
        for (int r = 0; r < b.rows(); ++r)
            for (int c = 0; c < b.cols(); ++c) b(r, c) = Complex(u(rng), u(rng));
        t.block(i) = b;
    }
    return t;
}
}  // namespace

std::vector<LibraryEntry> standard_library(const std::string& group_name,
                                           std::uint64_t seed) {
    auto g = library_group(group_name);
    const ArrowId n = g->num_arrows();
    std::vector<LibraryEntry> lib;

    lib.push_back({"trivial", honest_shared(g, trivial_rep_matrices(*g), 0)});
    lib.push_back({"trivial-shift1", honest_shared(g, trivial_rep_matrices(*g), 1)});
    auto reg = regular_rep_matrices(*g);
    lib.push_back({"regular", honest_shared(g, reg, 0)});

    // the two-term entries use low-dimensional representations so that
    // the dense hom-complex rank computations stay small
    auto add_gauge_entry = [&](const std::string& name, std::vector<Matrix> mats) {
        std::mt19937_64 rng(seed);
        auto base = doubled_rep(g, std::move(mats));
        auto t1s = std::make_shared<std::vector<GradedMap>>();
        for (ArrowId a = 0; a < n; ++a) t1s->push_back(random_t1(base->fiber(0), rng));
        GaugePair gp = gauge_conjugate(base, [t1s](ArrowId a) { return (*t1s)[a]; });
        lib.push_back({name, gp.conjugated});
    };

    if (group_name == "s3") {
        auto std_mats = s3_standard_matrices();
        // cone of the all-ones averaging map on the 3-point permutation
        // representation: H^0 = the standard plane, H^1 = its cokernel copy
        std::vector<Matrix> perm;
        for (const auto& p : kS3Perms) {
            Matrix m = Matrix::Zero(3, 3);
            for (int i = 0; i < 3; ++i) m(p[i], i) = 1.0;
            perm.push_back(std::move(m));
        }
        lib.push_back(
            {"cone-averaging", mapping_cone(g, perm, perm, Matrix::Ones(3, 3))});
        // cone of the identity on the standard rep: acyclic (H = 0)
        lib.push_back({"cone-identity",
                       mapping_cone(g, std_mats, std_mats, Matrix::Identity(2, 2))});
        add_gauge_entry("gauge-two-term-standard", std_mats);
        lib.push_back({"standard", honest_shared(g, std_mats, 0)});
        lib.push_back({"sign", honest_shared(g, s3_sign_matrices(), 0)});
    } else {
        const int order = static_cast<int>(n);
        // cone of ρ_reg(a) - id for a fixed non-identity element a; right
        // multiplication commutes with the left regular action
        std::vector<Matrix> right(n);
        const ArrowId a = 1;
        for (ArrowId b = 0; b < n; ++b) {
            Matrix m = Matrix::Zero(n, n);
            for (ArrowId h = 0; h < n; ++h) m(g->compose(h, b), h) = 1.0;
            right[b] = std::move(m);
        }
        Matrix cone_map = right[a] - Matrix::Identity(n, n);
        lib.push_back({"cone-right-mult", mapping_cone(g, reg, reg, cone_map)});
        auto chi = cyclic_character_matrices(order, 1);
        lib.push_back({"cone-identity", mapping_cone(g, chi, chi, Matrix::Identity(1, 1))});
        add_gauge_entry("gauge-two-term-regular", reg);
        lib.push_back({"character-1", honest_shared(g, chi, 0)});
    }
    return lib;
}

std::vector<std::vector<Complex>> cohomology_characters(const HomotopyRep& e) {
    const Groupoid& G = e.groupoid();
    if (G.num_objects() != 1)
        throw std::invalid_argument("cohomology_characters: expected a group");
    CohomologySplitting split =
        cohomology(FiberComplex(e.fiber(0), e.differential(0)));
    const DegreeWindow w = split.h_dims.window();
    std::vector<std::vector<Complex>> chi(
        std::max(w.width() + 1, 0), std::vector<Complex>(G.num_arrows(), 0.0));
    for (ArrowId a = 0; a < G.num_arrows(); ++a) {
        GradedMap induced = induced_map(split, split, e.lambda(a));
        for (int i = w.lo; i <= w.hi; ++i)
            if (split.dim(i) > 0) chi[i - w.lo][a] = induced.block(i).trace();
    }
    return chi;
}

int character_hom_dimension(const HomotopyRep& e, const HomotopyRep& f, int n) {
    const Groupoid& G = e.groupoid();
    if (&G != &f.groupoid() || G.num_objects() != 1)
        throw std::invalid_argument("character_hom_dimension: expected one group");
    CohomologySplitting se = cohomology(FiberComplex(e.fiber(0), e.differential(0)));
    CohomologySplitting sf = cohomology(FiberComplex(f.fiber(0), f.differential(0)));
    auto chi_e = cohomology_characters(e);
    auto chi_f = cohomology_characters(f);
    const DegreeWindow we = se.h_dims.window(), wf = sf.h_dims.window();
    const double order = static_cast<double>(G.num_arrows());

    Complex total = 0.0;
    for (int i = we.lo; i <= we.hi; ++i) {
        if (!wf.contains(i + n)) continue;
        if (se.dim(i) == 0 || sf.dim(i + n) == 0) continue;
        Complex inner = 0.0;
        for (ArrowId a = 0; a < G.num_arrows(); ++a)
            inner += std::conj(chi_e[i - we.lo][a]) * chi_f[i + n - wf.lo][a];
        total += inner / order;
    }
    const double val = total.real();
    const long rounded = std::lround(val);
    if (std::abs(val - static_cast<double>(rounded)) > 1e-6 ||
        std::abs(total.imag()) > 1e-6)
        throw std::logic_error("character_hom_dimension: non-integer inner product");
    return static_cast<int>(rounded);
}

}  // namespace hrep
