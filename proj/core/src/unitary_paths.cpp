#include "hrep/unitary_paths.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace hrep {

Quaternion Quaternion::from_su2(const Matrix& u, double tol) {
    if (u.rows() != 2 || u.cols() != 2)
        throw std::invalid_argument("Quaternion::from_su2: expected 2x2 matrix");
    if ((u.adjoint() * u - Matrix::Identity(2, 2)).norm() > tol ||
        std::abs(u.determinant() - 1.0) > tol)
        throw std::invalid_argument("Quaternion::from_su2: matrix not in SU(2)");
    Quaternion q;
    q.w = u(0, 0).real();
    q.z = u(0, 0).imag();
    q.y = u(0, 1).real();
    q.x = u(0, 1).imag();
    return q;
}

Matrix Quaternion::to_su2() const {
    Matrix u(2, 2);
    u(0, 0) = Complex(w, z);
    u(0, 1) = Complex(y, x);
    u(1, 0) = Complex(-y, x);
    u(1, 1) = Complex(w, -z);
    return u;
}

Quaternion Quaternion::normalized() const {
    double n = std::sqrt(w * w + x * x + y * y + z * z);
    return {w / n, x / n, y / n, z / n};
}

Quaternion slerp(const Quaternion& p, const Quaternion& q, double s) {
    double d = p.dot(q);
    if (d < -1.0 + 1e-12)
        throw std::invalid_argument("slerp: antipodal endpoints, geodesic not unique");
    d = std::min(d, 1.0);
    const double omega = std::acos(d);
    double a, b;
    if (omega < 1e-9) {  // nearly equal endpoints
        a = 1.0 - s;
        b = s;
    } else {
        const double so = std::sin(omega);
        a = std::sin((1.0 - s) * omega) / so;
        b = std::sin(s * omega) / so;
    }
    Quaternion r{a * p.w + b * q.w, a * p.x + b * q.x, a * p.y + b * q.y,
                 a * p.z + b * q.z};
    return r.normalized();
}

Matrix slerp_su2(const Matrix& p, const Matrix& q, double s) {
    return slerp(Quaternion::from_su2(p), Quaternion::from_su2(q), s).to_su2();
}

EigenphasePath::EigenphasePath(const Matrix& u_end, double unitary_tol) {
    const int n = static_cast<int>(u_end.rows());
    if (u_end.cols() != n ||
        (u_end.adjoint() * u_end - Matrix::Identity(n, n)).norm() > unitary_tol)
        throw std::invalid_argument("EigenphasePath: input is not unitary");

    // Diagonalize via the commuting Hermitian pair (U+U*)/2, (U-U*)/2i:
    // first split into eigenspaces of the real part, then diagonalize the
    // imaginary part inside each cluster. Keeps V unitary to machine
    // precision even with degenerate eigenvalues.
    Matrix re = 0.5 * (u_end + u_end.adjoint());
    Matrix im = (u_end - u_end.adjoint()) / Complex(0, 2);
    Eigen::SelfAdjointEigenSolver<Matrix> es(re);
    v_ = es.eigenvectors();
    Eigen::VectorXd c = es.eigenvalues();

    int start = 0;
    while (start < n) {
        int end = start + 1;
        while (end < n && std::abs(c(end) - c(start)) <= 1e-8) ++end;
        const int len = end - start;
        if (len > 1) {
            Matrix sub = v_.middleCols(start, len);
            Eigen::SelfAdjointEigenSolver<Matrix> es2(
                Matrix(sub.adjoint() * im * sub));
            v_.middleCols(start, len) = sub * es2.eigenvectors();
        }
        start = end;
    }

    phases_.resize(n);
    for (int j = 0; j < n; ++j) {
        Complex ev = v_.col(j).adjoint() * u_end * v_.col(j);
        double theta = std::arg(ev);
        if (theta <= -M_PI + 1e-9) theta = M_PI;  // branch cut at -π
        phases_(j) = theta;
    }
}

Matrix EigenphasePath::at(double t) const {
    const int n = static_cast<int>(phases_.size());
    if (t == 0.0) return Matrix::Identity(n, n);  // exact start point
    Vector d(n);
    for (int j = 0; j < n; ++j) d(j) = std::exp(Complex(0, t * phases_(j)));
    return v_ * d.asDiagonal() * v_.adjoint();
}

}  // namespace hrep
