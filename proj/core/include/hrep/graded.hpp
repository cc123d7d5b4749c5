#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <vector>

namespace hrep {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Largest singular value; 0 for empty matrices.
double operator_norm(const Matrix& m);

/// Inclusive range of degrees where a graded fiber may be nonzero.
struct DegreeWindow {
    int lo = 0;
    int hi = -1;  // empty by default

    int width() const { return hi - lo; }
    bool contains(int n) const { return lo <= n && n <= hi; }
    bool empty() const { return hi < lo; }

    bool operator==(const DegreeWindow&) const = default;

    static DegreeWindow hull(const DegreeWindow& a, const DegreeWindow& b) {
        if (a.empty()) return b;
        if (b.empty()) return a;
        return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
    }
};

/// Dimensions of a single graded fiber. Zero outside the window;
/// zero entries inside the window are allowed.
class GradedDims {
public:
    GradedDims() = default;
    GradedDims(DegreeWindow w, std::vector<int> dims);

    /// Concentrated in one degree.
    static GradedDims concentrated(int degree, int dim);
    /// Two-term fiber V in degrees 0 and 1, both of dimension `dim`.
    static GradedDims two_term(int dim);

    const DegreeWindow& window() const { return window_; }
    int dim(int degree) const {
        return window_.contains(degree) ? dims_[degree - window_.lo] : 0;
    }
    int total() const;
    GradedDims shifted(int by) const;

    bool operator==(const GradedDims&) const = default;

private:
    DegreeWindow window_;
    std::vector<int> dims_;
};

/// A homogeneous linear map of fixed degree between two graded fibers,
/// stored block-by-block: block(i) maps source degree i to target degree
/// i + deg(). Blocks whose source or target dimension vanishes are empty.
class GradedMap {
public:
    GradedMap() = default;
    GradedMap(GradedDims src, GradedDims dst, int degree);

    static GradedMap zero(GradedDims src, GradedDims dst, int degree);
    static GradedMap identity(const GradedDims& dims);
    /// Degree-0 map acting as `m` on every degree of `dims` (requires
    /// uniform dimensions matching m).
    static GradedMap uniform(const GradedDims& dims, const Matrix& m);

    int degree() const { return degree_; }
    const GradedDims& src() const { return src_; }
    const GradedDims& dst() const { return dst_; }

    /// Block with source degree i (target degree i + degree()).
    Matrix& block(int i);
    const Matrix& block(int i) const;

    GradedMap& operator+=(const GradedMap& o);
    GradedMap& operator-=(const GradedMap& o);
    GradedMap& operator*=(Complex s);
    friend GradedMap operator+(GradedMap a, const GradedMap& b) { return a += b; }
    friend GradedMap operator-(GradedMap a, const GradedMap& b) { return a -= b; }
    friend GradedMap operator*(Complex s, GradedMap a) { return a *= s; }

    /// Composite a∘b; degrees add.
    friend GradedMap compose(const GradedMap& a, const GradedMap& b);

    /// Blockwise inverse of a degree-0 map with square invertible blocks.
    friend GradedMap inverse(const GradedMap& a);

    /// Blockwise adjoint, a degree -degree() map.
    friend GradedMap adjoint(const GradedMap& a);

    /// Max over blocks of the operator norm.
    double norm() const;
    bool is_zero(double tol = 0.0) const { return norm() <= tol; }

private:
    GradedDims src_, dst_;
    int degree_ = 0;
    std::vector<Matrix> blocks_;  // indexed by source degree - src window lo
};

}  // namespace hrep
