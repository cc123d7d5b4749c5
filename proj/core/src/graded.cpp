#include "hrep/graded.hpp"

#include <Eigen/SVD>

namespace hrep {

double operator_norm(const Matrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    return Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
}

GradedDims::GradedDims(DegreeWindow w, std::vector<int> dims)
    : window_(w), dims_(std::move(dims)) {
    if (!w.empty() && static_cast<int>(dims_.size()) != w.width() + 1)
        throw std::invalid_argument("GradedDims: dims size does not match window");
    for (int d : dims_)
        if (d < 0) throw std::invalid_argument("GradedDims: negative dimension");
}

GradedDims GradedDims::concentrated(int degree, int dim) {
    return GradedDims({degree, degree}, {dim});
}

GradedDims GradedDims::two_term(int dim) {
    return GradedDims({0, 1}, {dim, dim});
}

int GradedDims::total() const {
    int t = 0;
    for (int d : dims_) t += d;
    return t;
}

GradedDims GradedDims::shifted(int by) const {
    if (window_.empty()) return *this;
    return GradedDims({window_.lo + by, window_.hi + by}, dims_);
}

GradedMap::GradedMap(GradedDims src, GradedDims dst, int degree)
    : src_(std::move(src)), dst_(std::move(dst)), degree_(degree) {
    const auto& w = src_.window();
    if (!w.empty()) {
        blocks_.reserve(w.width() + 1);
        for (int i = w.lo; i <= w.hi; ++i)
            blocks_.push_back(Matrix::Zero(dst_.dim(i + degree_), src_.dim(i)));
    }
}

GradedMap GradedMap::zero(GradedDims src, GradedDims dst, int degree) {
    return GradedMap(std::move(src), std::move(dst), degree);
}

GradedMap GradedMap::identity(const GradedDims& dims) {
    GradedMap m(dims, dims, 0);
    for (int i = dims.window().lo; i <= dims.window().hi; ++i)
        m.block(i) = Matrix::Identity(dims.dim(i), dims.dim(i));
    return m;
}

GradedMap GradedMap::uniform(const GradedDims& dims, const Matrix& m) {
    GradedMap out(dims, dims, 0);
    for (int i = dims.window().lo; i <= dims.window().hi; ++i) {
        if (dims.dim(i) == 0) continue;
        if (m.rows() != dims.dim(i) || m.cols() != dims.dim(i))
            throw std::invalid_argument("GradedMap::uniform: size mismatch");
        out.block(i) = m;
    }
    return out;
}

Matrix& GradedMap::block(int i) {
    if (!src_.window().contains(i))
        throw std::out_of_range("GradedMap::block: degree outside source window");
    return blocks_[i - src_.window().lo];
}

const Matrix& GradedMap::block(int i) const {
    return const_cast<GradedMap*>(this)->block(i);
}

GradedMap& GradedMap::operator+=(const GradedMap& o) {
    if (degree_ != o.degree_ || src_.window().lo != o.src_.window().lo ||
        blocks_.size() != o.blocks_.size())
        throw std::invalid_argument("GradedMap: shape mismatch in +=");
    for (size_t i = 0; i < blocks_.size(); ++i) blocks_[i] += o.blocks_[i];
    return *this;
}

GradedMap& GradedMap::operator-=(const GradedMap& o) {
    if (degree_ != o.degree_ || src_.window().lo != o.src_.window().lo ||
        blocks_.size() != o.blocks_.size())
        throw std::invalid_argument("GradedMap: shape mismatch in -=");
    for (size_t i = 0; i < blocks_.size(); ++i) blocks_[i] -= o.blocks_[i];
    return *this;
}

GradedMap& GradedMap::operator*=(Complex s) {
    for (auto& b : blocks_) b *= s;
    return *this;
}

GradedMap compose(const GradedMap& a, const GradedMap& b) {
    GradedMap out(b.src_, a.dst_, a.degree_ + b.degree_);
    const auto& w = b.src_.window();
    for (int i = w.lo; i <= w.hi; ++i) {
        int mid = i + b.degree_;  // degree in the middle fiber
        if (!a.src_.window().contains(mid)) continue;
        const Matrix& bb = b.block(i);
        const Matrix& ab = a.block(mid);
        if (ab.cols() != bb.rows())
            throw std::invalid_argument("compose(GradedMap): inner dimension mismatch");
        if (ab.rows() == 0 || bb.cols() == 0) continue;
        out.block(i) = ab * bb;
    }
    return out;
}

GradedMap inverse(const GradedMap& a) {
    if (a.degree_ != 0)
        throw std::invalid_argument("inverse(GradedMap): degree must be 0");
    GradedMap out(a.dst_, a.src_, 0);
    const auto& w = a.dst_.window();
    for (int i = w.lo; i <= w.hi; ++i) {
        if (a.dst_.dim(i) == 0) continue;
        if (!a.src_.window().contains(i) || a.src_.dim(i) != a.dst_.dim(i))
            throw std::invalid_argument("inverse(GradedMap): blocks not square");
        out.block(i) = a.block(i).inverse();
    }
    return out;
}

GradedMap adjoint(const GradedMap& a) {
    GradedMap out(a.dst_, a.src_, -a.degree_);
    const auto& w = a.dst_.window();
    for (int i = w.lo; i <= w.hi; ++i) {
        int j = i - a.degree_;  // source degree of the block mapping into i
        if (!a.src_.window().contains(j)) continue;
        out.block(i) = a.block(j).adjoint();
    }
    return out;
}

double GradedMap::norm() const {
    double n = 0.0;
    for (const auto& b : blocks_) n = std::max(n, operator_norm(b));
    return n;
}

}  // namespace hrep
