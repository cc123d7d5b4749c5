#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hrep/cohomology.hpp"
#include "hrep/unitary_paths.hpp"

using namespace hrep;

namespace {

Matrix random_matrix(int rows, int cols, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m(r, c) = Complex(u(rng), u(rng));
    return m;
}

Matrix random_unitary(int n, std::mt19937_64& rng) {
    Eigen::HouseholderQR<Matrix> qr(random_matrix(n, n, rng));
    Matrix q = qr.householderQ() * Matrix::Identity(n, n);
    return q;
}

}  // namespace

TEST_CASE("operator norm equals the largest singular value") {
    std::mt19937_64 rng(11);
    Matrix m = random_matrix(4, 3, rng);
    Eigen::JacobiSVD<Matrix> svd(m);
    CHECK(operator_norm(m) == doctest::Approx(svd.singularValues()(0)).epsilon(1e-12));
    CHECK(operator_norm(Matrix()) == 0.0);
}

TEST_CASE("graded map block composition matches matrix products") {
    GradedDims a({0, 2}, {2, 3, 1});
    GradedDims b({0, 2}, {2, 3, 1});
    std::mt19937_64 rng(5);

    GradedMap f(a, b, 1);  // degree +1
    f.block(0) = random_matrix(3, 2, rng);
    f.block(1) = random_matrix(1, 3, rng);
    GradedMap g(b, b, -1);  // degree -1
    g.block(1) = random_matrix(2, 3, rng);
    g.block(2) = random_matrix(3, 1, rng);

    GradedMap gf = compose(g, f);  // degree 0
    CHECK((gf.block(0) - g.block(1) * f.block(0)).norm() == 0.0);
    CHECK((gf.block(1) - g.block(2) * f.block(1)).norm() == 0.0);

    GradedMap id = GradedMap::identity(a);
    CHECK((compose(id, f) - f).norm() == 0.0);
    CHECK((compose(f, id) - f).norm() == 0.0);
}

TEST_CASE("inverse and adjoint are blockwise") {
    GradedDims a({0, 1}, {3, 2});
    std::mt19937_64 rng(7);
    GradedMap f(a, a, 0);
    f.block(0) = random_matrix(3, 3, rng) + 3.0 * Matrix::Identity(3, 3);
    f.block(1) = random_matrix(2, 2, rng) + 3.0 * Matrix::Identity(2, 2);

    GradedMap inv = inverse(f);
    CHECK((compose(inv, f) - GradedMap::identity(a)).norm() < 1e-12);
    CHECK((compose(f, inv) - GradedMap::identity(a)).norm() < 1e-12);

    GradedMap adj = adjoint(f);
    CHECK((adj.block(0) - f.block(0).adjoint()).norm() == 0.0);
}

TEST_CASE("composition with mismatched inner dims throws") {
    GradedDims a({0, 0}, {2});
    GradedDims b({0, 0}, {3});
    GradedMap f(a, a, 0), g(b, b, 0);
    CHECK_THROWS(compose(g, f));
}

TEST_CASE("cohomology dims are invariant under invertible conjugation") {
    // known complex: 0 -> C^3 -d0-> C^4 -d1-> C^2 -> 0 with d1 d0 = 0,
    // rank d0 = 2, rank d1 = 1 => H = (1, 1, 1)
    GradedDims dims({0, 2}, {3, 4, 2});
    GradedMap d(dims, dims, 1);
    Matrix d0 = Matrix::Zero(4, 3);
    d0(0, 0) = 1.0;
    d0(1, 1) = 1.0;
    Matrix d1 = Matrix::Zero(2, 4);
    d1(0, 2) = 1.0;  // hits a coordinate killed by d0's image complement
    d.block(0) = d0;
    d.block(1) = d1;
    REQUIRE(FiberComplex(dims, d).square_residual() == 0.0);

    std::mt19937_64 rng(23);
    GradedMap p(dims, dims, 0);
    for (int i = 0; i <= 2; ++i)
        p.block(i) = random_matrix(dims.dim(i), dims.dim(i), rng) +
                     3.0 * Matrix::Identity(dims.dim(i), dims.dim(i));
    GradedMap d_conj = compose(compose(p, d), inverse(p));
    FiberComplex fc(dims, d_conj);
    REQUIRE(fc.square_residual() < 1e-12);

    CohomologySplitting s = cohomology(fc);
    CHECK(s.h_dims.dim(0) == 1);
    CHECK(s.h_dims.dim(1) == 1);
    CHECK(s.h_dims.dim(2) == 1);

    // splitting identities: d iota = 0, pi d = 0, id - iota pi = d h + h d
    GradedMap iota = s.inclusion_map();
    GradedMap pi = s.projection_map();
    CHECK(compose(d_conj, iota).norm() < 1e-9);
    CHECK(compose(pi, d_conj).norm() < 1e-9);
    GradedMap resid = GradedMap::identity(dims) - compose(iota, pi) -
                      compose(d_conj, s.homotopy) - compose(s.homotopy, d_conj);
    CHECK(resid.norm() < 1e-9);
    CHECK((compose(pi, iota) - GradedMap::identity(s.h_dims)).norm() < 1e-10);
}

TEST_CASE("cohomology rejects a non-complex") {
    GradedDims dims({0, 1}, {1, 1});
    GradedMap d(dims, dims, 1);
    d.block(0) = Matrix::Identity(1, 1);
    GradedDims wide({0, 2}, {1, 1, 1});
    GradedMap bad(wide, wide, 1);
    bad.block(0) = Matrix::Identity(1, 1);
    bad.block(1) = Matrix::Identity(1, 1);  // d^2 = 1 != 0
    CHECK_THROWS(cohomology(FiberComplex(wide, bad)));
}

TEST_CASE("induced map of a chain map commutes with identification") {
    // identity chain map induces the identity on cohomology
    GradedDims dims({0, 1}, {2, 2});
    GradedMap d(dims, dims, 1);
    d.block(0) = Matrix::Zero(2, 2);
    d.block(0)(0, 0) = 1.0;  // H^0 = H^1 = C
    FiberComplex fc(dims, d);
    GradedMap ind = induced_map(fc, fc, GradedMap::identity(dims));
    CohomologySplitting s = cohomology(fc);
    CHECK((ind - GradedMap::identity(s.h_dims)).norm() < 1e-12);
}

TEST_CASE("slerp endpoints and midpoint") {
    Quaternion p{1.0, 0.0, 0.0, 0.0};
    Quaternion q{0.0, 1.0, 0.0, 0.0};
    Quaternion s0 = slerp(p, q, 0.0);
    Quaternion s1 = slerp(p, q, 1.0);
    CHECK(s0.w == 1.0);
    CHECK(s1.x == doctest::Approx(1.0).epsilon(1e-15));
    // midpoint of a geodesic is the normalized chord midpoint
    Quaternion mid = slerp(p, q, 0.5);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(mid.w == doctest::Approx(r).epsilon(1e-14));
    CHECK(mid.x == doctest::Approx(r).epsilon(1e-14));
    // unit norm along the path
    for (double t : {0.1, 0.3, 0.7, 0.9}) {
        Quaternion s = slerp(p, q, t);
        CHECK(std::abs(s.w * s.w + s.x * s.x + s.y * s.y + s.z * s.z - 1.0) <
              1e-14);
    }
    CHECK_THROWS(slerp(p, Quaternion{-1.0, 0.0, 0.0, 0.0}, 0.5));
}

TEST_CASE("eigenphase path connects the identity to the input unitary") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 5; ++trial) {
        Matrix u = random_unitary(5, rng);
        EigenphasePath path(u);
        CHECK((path.at(0.0) - Matrix::Identity(5, 5)).norm() == 0.0);
        CHECK((path.at(1.0) - u).norm() < 1e-9);
        Matrix prev = path.at(0.0);
        for (int i = 1; i <= 16; ++i) {
            Matrix cur = path.at(i / 16.0);
            CHECK((cur.adjoint() * cur - Matrix::Identity(5, 5)).norm() < 1e-10);
            CHECK(operator_norm(cur - prev) < 0.9);  // no branch jumps
            prev = cur;
        }
    }
}

TEST_CASE("eigenphase path handles degenerate eigenvalues") {
    // diag(i, i, -1) has a repeated eigenvalue and a boundary phase
    Matrix u = Matrix::Zero(3, 3);
    u(0, 0) = Complex(0, 1);
    u(1, 1) = Complex(0, 1);
    u(2, 2) = -1.0;
    EigenphasePath path(u);
    CHECK((path.at(1.0) - u).norm() < 1e-10);
    CHECK_THROWS(EigenphasePath(2.0 * Matrix::Identity(2, 2)));
}

TEST_CASE("quaternion su2 round trip") {
    Quaternion q{0.5, 0.5, 0.5, 0.5};
    Quaternion r = Quaternion::from_su2(q.to_su2());
    CHECK(r.w == q.w);
    CHECK(r.x == q.x);
    CHECK(r.y == q.y);
    CHECK(r.z == q.z);
    CHECK_THROWS(Quaternion::from_su2(2.0 * Matrix::Identity(2, 2)));
}
