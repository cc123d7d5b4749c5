#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hrep/models.hpp"

using namespace hrep;

TEST_CASE("winding numbers of explicit loops") {
    const int n = 64;
    std::vector<Complex> loop(n);
    for (int i = 0; i < n; ++i)
        loop[i] = std::exp(Complex(0, 2.0 * M_PI * 3.0 * i / n));
    CHECK(winding_number(loop) == 3);

    std::vector<Complex> constant(16, Complex(2.0, 1.0));
    CHECK(winding_number(constant) == 0);

    std::vector<Complex> reversed(n);
    for (int i = 0; i < n; ++i)
        reversed[i] = 0.5 * std::exp(Complex(0, -2.0 * M_PI * 2.0 * i / n));
    CHECK(winding_number(reversed) == -2);
}

TEST_CASE("winding rejects bad input") {
    std::vector<Complex> with_zero = {1.0, 0.0, -1.0, 1.0};
    CHECK_THROWS(winding_number(with_zero));
    // 2 samples of winding 1: phase step exactly pi -> undersampled
    std::vector<Complex> undersampled = {1.0, -1.0};
    CHECK_THROWS(winding_number(undersampled));
    std::vector<Complex> single = {1.0};
    CHECK_THROWS(winding_number(single));
}

TEST_CASE("winding is additive on synthesized loops") {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<int> degree(-4, 4);
    std::uniform_real_distribution<double> amp(-0.4, 0.4);
    const int n = 256;
    auto synth = [&](int k) {
        // e^{2 pi i k t} exp(h(t)) with h a random trigonometric polynomial:
        // nonvanishing by construction, degree exactly k
        double a1 = amp(rng), b1 = amp(rng), a2 = amp(rng), b2 = amp(rng);
        std::vector<Complex> loop(n);
        for (int i = 0; i < n; ++i) {
            double t = static_cast<double>(i) / n;
            Complex h(a1 * std::cos(2 * M_PI * t) + a2 * std::cos(4 * M_PI * t),
                      b1 * std::sin(2 * M_PI * t) + b2 * std::sin(4 * M_PI * t));
            loop[i] = std::exp(Complex(0, 2.0 * M_PI * k * t) + h);
        }
        return loop;
    };
    for (int trial = 0; trial < 20; ++trial) {
        int k1 = degree(rng), k2 = degree(rng);
        auto f = synth(k1), g = synth(k2);
        std::vector<Complex> prod(n);
        for (int i = 0; i < n; ++i) prod[i] = f[i] * g[i];
        CHECK(winding_number(f) == k1);
        CHECK(winding_number(g) == k2);
        CHECK(winding_number(prod) == k1 + k2);
    }
}

TEST_CASE("character lists parse and evaluate") {
    CharacterList c = CharacterList::parse("2,-1;3,0");
    REQUIRE(c.count() == 2);
    REQUIRE(c.rank() == 2);
    double angles[2] = {0.25, 0.5};
    // xi_1 = a^2 b^-1 at (1/4, 1/2): phase 2*(1/4) - 1*(1/2) = 0
    CHECK(std::abs(c.value(0, angles) - Complex(1.0, 0.0)) < 1e-14);
    // xi_2 = a^3: phase 3/4
    CHECK(std::abs(c.value(1, angles) - std::exp(Complex(0, 1.5 * M_PI))) < 1e-14);
    CHECK_THROWS(CharacterList::parse(""));
    CHECK_THROWS(CharacterList::parse("1,2;3"));
}

TEST_CASE("all-zero exponents contract to the constant identity") {
    CharacterList c;
    c.exponents = {{0, 0}};
    ContractionHomotopy h(c, 8, 8);
    for (int ti = 0; ti < 8; ++ti) {
        int grid[2] = {3, 5};
        CHECK((h.frame(grid, ti) - Matrix::Identity(2, 2)).norm() == 0.0);
    }
}

TEST_CASE("single coordinate character winds the diagonal entry") {
    CharacterList c;
    c.exponents = {{1}};
    ContractionHomotopy h(c, 64, 16);
    auto inv = h.check_invariants();
    CHECK(inv.start_error == 0.0);
    CHECK(inv.end_error <= 1e-12);
    CHECK(inv.unitarity <= 1e-10);
    CHECK(inv.determinant <= 1e-10);

    // at t=1 the (0,0) entry is the character itself: winding 1; at t=0
    // the constant 1: winding 0
    std::vector<Complex> end(64), start(64);
    for (int i = 0; i < 64; ++i) {
        int grid[1] = {i};
        end[i] = h.frame(grid, 15)(0, 0);
        start[i] = h.frame(grid, 0)(0, 0);
    }
    CHECK(winding_number(end) == 1);
    CHECK(winding_number(start) == 0);
}

TEST_CASE("contraction endpoint equals the block character matrix") {
    CharacterList c = CharacterList::parse("2,-1;3,0");
    ContractionHomotopy h(c, 16, 16);
    for (int a = 0; a < 16; ++a)
        for (int b = 0; b < 16; ++b) {
            double angles[2] = {a / 16.0, b / 16.0};
            Matrix target = Matrix::Zero(4, 4);
            target(0, 0) = c.value(0, angles);
            target(1, 1) = c.value(1, angles);
            target(2, 2) = std::conj(c.value(0, angles));
            target(3, 3) = std::conj(c.value(1, angles));
            CHECK((h.at(angles, 1.0) - target).norm() <= 1e-12);
        }
}

TEST_CASE("essentially abelian fibers evaluate and separate") {
    EssentiallyAbelianFiber f;
    f.rank = 2;
    f.components = 2;
    // the third character makes sigma faithful: two unimodular diagonal
    // characters always leave (1, (1/2, 0)) in the kernel
    f.chars.exponents = {{1, 0}, {0, 1}, {1, 1}};
    f.component_weights = {1, 0, 0};
    double angles[2] = {0.0, 0.0};
    Matrix s0 = f.sigma(0, angles);
    Matrix s1 = f.sigma(1, angles);
    CHECK((s0 - Matrix::Identity(3, 3)).norm() < 1e-14);
    CHECK(std::abs(s1(0, 0) + 1.0) < 1e-14);  // zeta = -1 twist
    CHECK(std::abs(s1(1, 1) - 1.0) < 1e-14);
    CHECK(std::abs(s1(2, 2) - 1.0) < 1e-14);

    SampledGroupBundle b(8, 2, 4, 2, {{1, 0}, {0, 1}});
    CHECK(faithfulness_separation(f, b) > 0.5);

    EssentiallyAbelianFiber dup;
    dup.rank = 2;
    dup.components = 1;
    dup.chars.exponents = {{1, 0}, {1, 0}};  // kernel: not faithful
    dup.component_weights = {0, 0};
    SampledGroupBundle b1(8, 2, 4, 1, {{1, 0}, {0, 1}});
    CHECK(faithfulness_separation(dup, b1) == 0.0);
}

TEST_CASE("pseudo-representations are special unitary and locally honest") {
    auto model = mapping_torus_model(1, 16, 4);
    const auto& b = *model.bundle;
    CHECK(std::abs(model.pseudo.min_singular_value() - 1.0) <= 1e-10);

    // exactly the identity where the cutoff vanishes
    for (int x = 0; x < b.n_base(); ++x) {
        if (model.cutoff[x] != 0.0) continue;
        for (ArrowId e = 0; e < b.fiber_size(); ++e)
            CHECK((model.pseudo.map(b.arrow(x, e)) - Matrix::Identity(4, 4))
                      .norm() == 0.0);
    }
    // honest block-diagonal representation over the plateau
    double worst = 0.0;
    for (ArrowId e = 0; e < b.fiber_size(); ++e) {
        ArrowId a = b.arrow(model.x0, e);
        auto angles = b.element_angles(e);
        Matrix expect = Matrix::Zero(4, 4);
        expect(0, 0) = model.fiber.chars.value(0, angles);
        expect(1, 1) = model.fiber.chars.value(1, angles);
        expect(2, 2) = std::conj(Complex(expect(0, 0)));
        expect(3, 3) = std::conj(Complex(expect(1, 1)));
        worst = std::max(worst, (model.pseudo.map(a) - expect).norm());
    }
    CHECK(worst <= 1e-10);

    // rejected inputs: cutoff not 1 near the base point
    std::vector<double> bad(b.n_base(), 0.0);
    CHECK_THROWS(build_pseudorep(model.bundle, model.fiber, bad, 0));
}

TEST_CASE("obstruction report on library pseudo-representations") {
    for (const auto& entry : pseudorep_library(1, 16, 8)) {
        INFO(entry.name);
        ObstructionReport r = obstruction_check(entry.pseudo);
        CHECK(r.deg_second == 0);
        CHECK(r.degree_identity_holds);
        CHECK(r.su_condition_met);
    }
}

TEST_CASE("the SU restriction detector flags the coordinate character") {
    CharacterList rho;
    rho.exponents = {{0, 1}};  // rho(a, b) = b
    SuRestrictionReport r = su_restriction_check(rho, 64);
    CHECK(r.degree == 1);
    CHECK(r.violates);

    CharacterList ok;
    ok.exponents = {{1, 1}, {-1, -1}};  // det constant 1 along b
    SuRestrictionReport r2 = su_restriction_check(ok, 64);
    CHECK(r2.degree == 0);
    CHECK_FALSE(r2.violates);
}
