#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "hrep/hom_complex.hpp"
#include "hrep/library.hpp"

using namespace hrep;

namespace {

Matrix random_matrix(int rows, int cols, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m(r, c) = Complex(u(rng), u(rng));
    return m;
}

GradedMap random_graded(const GradedDims& src, const GradedDims& dst, int degree,
                        std::mt19937_64& rng) {
    GradedMap m(src, dst, degree);
    for (int i = src.window().lo; i <= src.window().hi; ++i) {
        const int rows = dst.dim(i + degree), cols = src.dim(i);
        if (rows > 0 && cols > 0) m.block(i) = random_matrix(rows, cols, rng);
    }
    return m;
}

GradedMap random_t1(const GradedDims& dims, std::mt19937_64& rng) {
    return random_graded(dims, dims, -1, rng);
}

// dense random morphism over a one-object groupoid, all components seeded
HRepMorphism random_morphism(std::shared_ptr<const HomotopyRep> src,
                             std::shared_ptr<const HomotopyRep> dst, int degree,
                             std::mt19937_64& rng) {
    const int kb =
        std::max(HRepMorphism::forced_k_bound(*src, *dst, degree), 0);
    using Key = std::vector<ArrowId>;
    auto table = std::make_shared<std::map<std::pair<int, Key>, GradedMap>>();
    const Groupoid& G = src->groupoid();
    for (int k = 0; k <= kb; ++k)
        for_each_composable(G, k, [&](std::span<const ArrowId> t, int) {
            table->emplace(std::make_pair(k, Key(t.begin(), t.end())),
                           random_graded(src->fiber(0), dst->fiber(0),
                                         degree - k, rng));
        });
    auto s = src, d = dst;
    const int deg = degree;
    MorFamily comps = [table, s, d, deg](int k, std::span<const ArrowId> t,
                                         int) -> GradedMap {
        auto it = table->find({k, std::vector<ArrowId>(t.begin(), t.end())});
        if (it == table->end())
            return GradedMap(s->fiber(0), d->fiber(0), deg - k);
        return it->second;
    };
    return HRepMorphism(src, dst, degree, kb, std::move(comps));
}

std::shared_ptr<const HomotopyRep> doubled(const std::string& group_name) {
    auto g = library_group(group_name);
    auto mats = std::make_shared<std::vector<Matrix>>(regular_rep_matrices(*g));
    GradedDims dims = GradedDims::two_term(static_cast<int>((*mats)[0].rows()));
    return std::make_shared<HomotopyRep>(honest_graded_rep(
        g, dims,
        [mats, dims](ArrowId a) { return GradedMap::uniform(dims, (*mats)[a]); }));
}

GaugePair gauge_of(std::shared_ptr<const HomotopyRep> base, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto t1s = std::make_shared<std::vector<GradedMap>>();
    for (ArrowId a = 0; a < base->groupoid().num_arrows(); ++a)
        t1s->push_back(random_t1(base->fiber(0), rng));
    return gauge_conjugate(base, [t1s](ArrowId a) { return (*t1s)[a]; });
}

}  // namespace

TEST_CASE("gauge conjugation produces a homotopy representation") {
    auto base = doubled("z4");
    GaugePair gp = gauge_of(base, 3);
    for (int k = 0; k <= 4; ++k)
        CHECK(cocycle_residual(*gp.conjugated, k) <= 1e-12);

    // structure operator closed forms
    std::mt19937_64 rng(3);
    std::vector<GradedMap> t1s;
    for (ArrowId a = 0; a < 4; ++a) t1s.push_back(random_t1(base->fiber(0), rng));
    const Groupoid& G = base->groupoid();
    for (ArrowId a = 0; a < 4; ++a)
        for (ArrowId b = 0; b < 4; ++b) {
            ArrowId t[2] = {a, b};
            GradedMap expect = compose(t1s[a], base->lambda(b)) +
                               compose(base->lambda(a), t1s[b]) -
                               t1s[G.compose(a, b)];
            CHECK((gp.conjugated->op(2, t) - expect).norm() <= 1e-13);
        }

    // the certifying morphism back to the honest rep is closed
    CHECK(closedness_residual(gp.to_honest, 4) <= 1e-12);
}

TEST_CASE("differential squares to zero and satisfies the Leibniz rule") {
    auto d_rep = doubled("z4");
    GaugePair gp = gauge_of(d_rep, 5);
    auto e_rep = gp.conjugated;
    auto g = library_group("z4");
    auto f_rep = std::make_shared<HomotopyRep>(
        honest_rep(g, regular_rep_matrices(*g), 0));

    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> deg(-1, 1);
    for (int trial = 0; trial < 10; ++trial) {
        HRepMorphism xi = random_morphism(d_rep, e_rep, deg(rng), rng);
        HRepMorphism phi = random_morphism(e_rep, f_rep, deg(rng), rng);

        CHECK(morphism_differential(morphism_differential(phi)).sup_norm() <=
              1e-10);
        CHECK(morphism_differential(morphism_differential(xi)).sup_norm() <=
              1e-10);

        HRepMorphism lhs = morphism_differential(compose(phi, xi));
        HRepMorphism rhs =
            compose(morphism_differential(phi), xi) +
            compose(phi, morphism_differential(xi))
                .scaled(phi.degree() % 2 ? -1.0 : 1.0);
        CHECK((lhs - rhs).sup_norm() <= 1e-10);
    }
}

TEST_CASE("composition is associative and unital") {
    auto e = doubled("z2");
    std::mt19937_64 rng(29);
    HRepMorphism a = random_morphism(e, e, 0, rng);
    HRepMorphism b = random_morphism(e, e, 1, rng);
    HRepMorphism c = random_morphism(e, e, -1, rng);
    CHECK((compose(compose(a, b), c) - compose(a, compose(b, c))).sup_norm() <=
          1e-12);
    HRepMorphism id = HRepMorphism::identity(e);
    CHECK((compose(id, a) - a).sup_norm() <= 1e-14);
    CHECK((compose(a, id) - a).sup_norm() <= 1e-14);
}

TEST_CASE("the exact gauge intertwiner is closed") {
    auto base = doubled("s3");
    std::mt19937_64 rng(41);
    auto t1s = std::make_shared<std::vector<GradedMap>>();
    for (ArrowId a = 0; a < 6; ++a) t1s->push_back(random_t1(base->fiber(0), rng));
    GaugePair gp = gauge_conjugate(base, [t1s](ArrowId a) { return (*t1s)[a]; });

    // ground truth: components (id, -T1) form a closed degree-0 morphism
    // from the honest rep to the conjugated one
    auto dims = base->fiber(0);
    MorFamily comps = [t1s, dims](int k, std::span<const ArrowId> t,
                                  int) -> GradedMap {
        if (k == 0) return GradedMap::identity(dims);
        if (k == 1) return Complex(-1.0) * (*t1s)[t[0]];
        return GradedMap(dims, dims, -k);
    };
    HRepMorphism truth(base, gp.conjugated, 0, 1, comps);
    CHECK(closedness_residual(truth, 4) <= 1e-12);
}

TEST_CASE("equivariant bundle maps extend to closed morphisms") {
    auto base = doubled("z4");
    GaugePair gp = gauge_of(base, 11);

    std::vector<GradedMap> phi0 = {GradedMap::identity(base->fiber(0))};
    HRepMorphism ext = extend_morphism(phi0, base, gp.conjugated);
    CHECK(ext.degree() == 0);
    CHECK((ext.component(0, {}, 0) - GradedMap::identity(base->fiber(0))).norm() ==
          0.0);
    CHECK(closedness_residual(ext, 4) <= 1e-9);

    // l = 0 closed form: the first component is the fiber average
    // integral of {Phi0 R2(g1, g) - S2(g1, g) Phi0} lambda(g)^{-1}; here
    // R2 = 0 on the honest source
    const Groupoid& G = base->groupoid();
    const double order = static_cast<double>(G.num_arrows());
    for (ArrowId g1 = 0; g1 < G.num_arrows(); ++g1) {
        GradedMap acc(base->fiber(0), base->fiber(0), -1);
        for (ArrowId g = 0; g < G.num_arrows(); ++g) {
            ArrowId pair[2] = {g1, g};
            acc += Complex(-1.0 / order) *
                   compose(gp.conjugated->op(2, pair), inverse(base->lambda(g)));
        }
        ArrowId t[1] = {g1};
        CHECK((ext.component(1, t) - acc).norm() <= 1e-12);
    }

    // non-equivariant starting data is rejected
    std::mt19937_64 rng(13);
    std::vector<GradedMap> bad = {random_graded(base->fiber(0), base->fiber(0),
                                                0, rng)};
    CHECK_THROWS(extend_morphism(bad, base, gp.conjugated));
}

TEST_CASE("closed morphisms with vanishing object part are null-homotopic") {
    auto e = doubled("z4");
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 5; ++trial) {
        HRepMorphism xi = random_morphism(e, e, 0, rng);
        HRepMorphism phi = morphism_differential(xi);  // closed, Phi_0 = 0
        REQUIRE(phi.component(0, {}, 0).norm() == 0.0);
        HRepMorphism psi = null_homotopy(phi);
        CHECK((morphism_differential(psi) - phi).sup_norm() <= 1e-9);
    }

    // a morphism with nonzero object part is rejected
    HRepMorphism id = HRepMorphism::identity(e);
    CHECK_THROWS(null_homotopy(id));
}

TEST_CASE("strictify transfers a conjugated representation onto cohomology") {
    auto base = doubled("z4");
    GaugePair gp = gauge_of(base, 19);
    StrictifyResult res = strictify(gp.conjugated);

    // zero differential and honest action on the transferred rep
    CHECK(res.honest->differential(0).norm() == 0.0);
    const Groupoid& G = res.honest->groupoid();
    for (ArrowId a = 0; a < G.num_arrows(); ++a)
        for (ArrowId b = 0; b < G.num_arrows(); ++b) {
            GradedMap lhs = compose(res.honest->lambda(a), res.honest->lambda(b));
            CHECK((lhs - res.honest->lambda(G.compose(a, b))).norm() <= 1e-10);
        }
    CHECK(closedness_residual(res.quasi_iso, 4) <= 1e-9);
    // same cohomology dimensions
    auto split = cohomology(FiberComplex(gp.conjugated->fiber(0),
                                         gp.conjugated->differential(0)));
    CHECK(split.h_dims.total() == res.honest->fiber(0).total());
}

TEST_CASE("strictify handles a genuine differential") {
    auto lib = standard_library("s3");
    for (const auto& e : lib) {
        INFO(e.name);
        StrictifyResult res = strictify(e.rep);
        CHECK(res.honest->differential(0).norm() == 0.0);
        auto split = cohomology(
            FiberComplex(e.rep->fiber(0), e.rep->differential(0)));
        CHECK(res.honest->fiber(0).total() == split.h_dims.total());
    }
}

TEST_CASE("hom complex differentials compose to zero") {
    auto lib = standard_library("z4");
    const HomotopyRep& e = *lib[5].rep;  // gauge-conjugated entry
    const HomotopyRep& f = *lib[3].rep;  // cone entry
    for (int n = -1; n <= 1; ++n) {
        Matrix d0 = hom_differential_matrix(e, f, n);
        Matrix d1 = hom_differential_matrix(e, f, n + 1);
        if (d0.size() == 0 || d1.size() == 0) continue;
        CHECK((d1 * d0).norm() <= 1e-10);
    }
}

TEST_CASE("hom dimensions match the character oracle") {
    auto lib = standard_library("z4");
    // find entries by name to keep the test independent of ordering
    auto find = [&](const std::string& n) {
        for (const auto& e : lib)
            if (e.name == n) return e.rep;
        throw std::runtime_error("missing library entry " + n);
    };
    auto trivial = find("trivial");
    auto regular = find("regular");
    auto gauge = find("gauge-two-term-regular");

    CHECK(drep_hom_dimension(*trivial, *trivial, 0) == 1);
    CHECK(drep_hom_dimension(*regular, *trivial, 0) == 1);
    CHECK(drep_hom_dimension(*regular, *regular, 0) == 4);

    // homotopy invariance: the gauge-conjugated doubled regular rep has
    // the cohomology of regular + regular[-1]
    for (int n = -1; n <= 1; ++n) {
        CHECK(drep_hom_dimension(*gauge, *trivial, n) ==
              character_hom_dimension(*gauge, *trivial, n));
        CHECK(drep_hom_dimension(*gauge, *gauge, n) ==
              character_hom_dimension(*gauge, *gauge, n));
    }
}

TEST_CASE("closed morphisms act on cohomology representations") {
    auto g = library_group("z2");
    auto rep = std::make_shared<HomotopyRep>(
        honest_rep(g, regular_rep_matrices(*g), 0));
    CohomologyRep crep = cohomology_rep(*rep);
    auto maps = cohomology_functor(HRepMorphism::identity(rep), crep, crep);
    REQUIRE(maps.size() == 1);
    CHECK((maps[0] - GradedMap::identity(crep.fiber(0))).norm() <= 1e-12);
}
