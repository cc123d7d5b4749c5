#include "hrep/cohomology.hpp"

#include <Eigen/SVD>
#include <sstream>

namespace hrep {

FiberComplex::FiberComplex(GradedDims dims_, GradedMap d_)
    : dims(std::move(dims_)), d(std::move(d_)) {
    if (d.degree() != 1)
        throw std::invalid_argument("FiberComplex: differential must have degree +1");
}

double FiberComplex::square_residual() const {
    return compose(d, d).norm();
}

const Matrix& CohomologySplitting::inclusion(int degree) const {
    return incl[degree - h_dims.window().lo];
}

const Matrix& CohomologySplitting::projection(int degree) const {
    return proj[degree - h_dims.window().lo];
}

GradedMap CohomologySplitting::inclusion_map() const {
    GradedDims fiber = homotopy.src();
    GradedMap m(h_dims, fiber, 0);
    for (int i = h_dims.window().lo; i <= h_dims.window().hi; ++i)
        m.block(i) = inclusion(i);
    return m;
}

GradedMap CohomologySplitting::projection_map() const {
    GradedDims fiber = homotopy.src();
    GradedMap m(fiber, h_dims, 0);
    for (int i = fiber.window().lo; i <= fiber.window().hi; ++i)
        if (h_dims.window().contains(i)) m.block(i) = projection(i);
    return m;
}

namespace {
// orthonormal basis of the null space of m (columns), by SVD
Matrix null_space(const Matrix& m, double rank_threshold) {
    const int n = static_cast<int>(m.cols());
    if (n == 0) return Matrix(0, 0);
    if (m.rows() == 0) return Matrix::Identity(n, n);
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double cut = rank_threshold * (s.size() > 0 ? s(0) : 0.0);
    int rank = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > cut) ++rank;
    return svd.matrixV().rightCols(n - rank);
}

// Moore-Penrose pseudo-inverse
Matrix pinv(const Matrix& m, double rank_threshold) {
    if (m.rows() == 0 || m.cols() == 0) return Matrix(m.cols(), m.rows());
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    const double cut = rank_threshold * (s.size() > 0 ? s(0) : 0.0);
    Eigen::VectorXd si = Eigen::VectorXd::Zero(s.size());
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > cut) si(i) = 1.0 / s(i);
    return svd.matrixV() * si.asDiagonal() * svd.matrixU().adjoint();
}
}  // namespace

CohomologySplitting cohomology(const FiberComplex& fc, double square_tol,
                               double rank_threshold) {
    const auto& w = fc.dims.window();
    // locate the offending degree for the error message
    for (int i = w.lo; i <= w.hi - 2; ++i) {
        double r = operator_norm(fc.d.block(i + 1) * fc.d.block(i));
        if (r > square_tol) {
            std::ostringstream msg;
            msg << "cohomology: d∘d residual " << r << " at degree " << i;
            throw std::invalid_argument(msg.str());
        }
    }

    CohomologySplitting out;
    std::vector<int> hd;
    std::vector<Matrix> incl, proj;
    GradedMap h(fc.dims, fc.dims, -1);
    for (int i = w.lo; i <= w.hi; ++i) {
        const int n = fc.dims.dim(i);
        // d_{i-1}: into degree i (n rows); d_i: out of degree i (n cols)
        Matrix down = w.contains(i - 1) ? Matrix(fc.d.block(i - 1)) : Matrix(n, 0);
        Matrix up = i < w.hi ? Matrix(fc.d.block(i)) : Matrix(0, n);
        // harmonic subspace: ker d_i ∩ ker d_{i-1}^*
        Matrix stacked(up.rows() + down.cols(), n);
        stacked.topRows(up.rows()) = up;
        stacked.bottomRows(down.cols()) = down.adjoint();
        Matrix basis = null_space(stacked, rank_threshold);
        hd.push_back(static_cast<int>(basis.cols()));
        incl.push_back(basis);
        proj.push_back(basis.adjoint());
        h.block(i) = pinv(down, rank_threshold);
    }
    out.h_dims = GradedDims(w, hd);
    out.incl = std::move(incl);
    out.proj = std::move(proj);
    out.homotopy = std::move(h);
    return out;
}

GradedMap induced_map(const CohomologySplitting& src_split,
                      const CohomologySplitting& dst_split, const GradedMap& L) {
    if (L.degree() != 0)
        throw std::invalid_argument("induced_map: chain map must have degree 0");
    GradedMap out(src_split.h_dims, dst_split.h_dims, 0);
    const auto& w = src_split.h_dims.window();
    for (int i = w.lo; i <= w.hi; ++i) {
        if (!dst_split.h_dims.window().contains(i)) continue;
        out.block(i) = dst_split.projection(i) * L.block(i) * src_split.inclusion(i);
    }
    return out;
}

GradedMap induced_map(const FiberComplex& src, const FiberComplex& dst,
                      const GradedMap& L, double chain_tol) {
    double res = (compose(dst.d, L) - compose(L, src.d)).norm();
    if (res > chain_tol) {
        std::ostringstream msg;
        msg << "induced_map: chain-map residual " << res << " exceeds tolerance "
            << chain_tol;
        throw std::invalid_argument(msg.str());
    }
    return induced_map(cohomology(src), cohomology(dst), L);
}

}  // namespace hrep
