#pragma once

#include "hrep/graded.hpp"

namespace hrep {

/// Quaternion coordinates of an SU(2) matrix: U = w I + x iσ₁ + y iσ₂ + z iσ₃.
struct Quaternion {
    double w = 1, x = 0, y = 0, z = 0;

    static Quaternion from_su2(const Matrix& u, double tol = 1e-10);
    Matrix to_su2() const;
    double dot(const Quaternion& o) const { return w * o.w + x * o.x + y * o.y + z * o.z; }
    Quaternion normalized() const;
};

/// Point at fraction s along the minimizing great-circle arc from p to q
/// on SU(2) ≅ S³. Throws for antipodal endpoints (geodesic not unique).
Matrix slerp_su2(const Matrix& p, const Matrix& q, double s);
Quaternion slerp(const Quaternion& p, const Quaternion& q, double s);

/// Path t ↦ V diag(exp(i t θ_j)) V* from the identity to a unitary matrix,
/// with eigenphases θ_j ∈ (−π, π] (θ = π for eigenvalue −1).
class EigenphasePath {
public:
    explicit EigenphasePath(const Matrix& u_end, double unitary_tol = 1e-8);

    Matrix at(double t) const;
    const Eigen::VectorXd& phases() const { return phases_; }

private:
    Matrix v_;
    Eigen::VectorXd phases_;
};

inline Matrix eigenphase_path(const Matrix& u_end, double t) {
    return EigenphasePath(u_end).at(t);
}

}  // namespace hrep
