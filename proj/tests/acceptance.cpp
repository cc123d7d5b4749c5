// Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.
// argv[1] is the path to the command-line tool (used by criterion 8).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <sys/wait.h>

#include "hrep/hom_complex.hpp"
#include "hrep/library.hpp"
#include "hrep/models.hpp"
#include "hrep/serialize.hpp"

using namespace hrep;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int idx, bool pass, const std::string& detail) {
    std::cout << "CRITERION " << idx << ": " << (pass ? "PASS" : "FAIL") << " - "
              << detail << std::endl;
    if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

// ---- shared random builders (same conventions as the unit tests) ----

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

HRepMorphism random_morphism(std::shared_ptr<const HomotopyRep> src,
                             std::shared_ptr<const HomotopyRep> dst, int degree,
                             std::mt19937_64& rng) {
    const int kb = std::max(HRepMorphism::forced_k_bound(*src, *dst, degree), 0);
    using Key = std::vector<ArrowId>;
    auto table = std::make_shared<std::map<std::pair<int, Key>, GradedMap>>();
    const Groupoid& G = src->groupoid();
    for (int k = 0; k <= kb; ++k)
        for_each_composable(G, k, [&](std::span<const ArrowId> t, int) {
            table->emplace(std::make_pair(k, Key(t.begin(), t.end())),
                           random_graded(src->fiber(0), dst->fiber(0), degree - k,
                                         rng));
        });
    auto s = src, d = dst;
    const int deg = degree;
    MorFamily comps = [table, s, d, deg](int k, std::span<const ArrowId> t,
                                         int) -> GradedMap {
        auto it = table->find({k, std::vector<ArrowId>(t.begin(), t.end())});
        if (it == table->end()) return GradedMap(s->fiber(0), d->fiber(0), deg - k);
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
        t1s->push_back(random_graded(base->fiber(0), base->fiber(0), -1, rng));
    return gauge_conjugate(base, [t1s](ArrowId a) { return (*t1s)[a]; });
}

// ---- criteria ----

MappingTorusModel g_model;  // built in criterion 1, reused in criterion 2

void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    g_model = mapping_torus_model(1, 64, 16);
    VerifyReport bundle = verify(*g_model.two_term, 1e-8, 4);
    VerifyReport finite = verify(*z2_action_two_term(), 1e-12, 4);
    const double secs = seconds_since(t0);
    double worst = 0.0;
    for (double r : bundle.cocycle) worst = std::max(worst, r);
    report(1, bundle.pass && finite.pass && secs < 120.0,
           "two-term cocycle equations: bundle residual " + fmt(worst) +
               " (tol 1e-8), finite-model residual " +
               fmt(*std::max_element(finite.cocycle.begin(), finite.cocycle.end())) +
               " (tol 1e-12), " + fmt(secs) + "s (budget 120s)");
}

void criterion2() {
    try {
        const HomotopyRep& rep = *g_model.two_term;
        const auto& b = *g_model.bundle;
        CohomologyRep crep = cohomology_rep(rep);

        // induced representation at the distinguished base point agrees
        // with the honest fiber representation up to equivalence
        std::vector<Matrix> induced;
        double char_err = 0.0;
        for (ArrowId e = 0; e < b.fiber_size(); ++e) {
            ArrowId a = b.arrow(g_model.x0, e);
            Matrix m = crep.action(a).block(0);
            char_err = std::max(char_err,
                                std::abs(m.trace() - g_model.pseudo.map(a).trace()));
            induced.push_back(std::move(m));
        }

        double separation = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < induced.size(); ++i)
            for (size_t j = i + 1; j < induced.size(); ++j)
                separation = std::min(separation, (induced[i] - induced[j]).norm());

        // all singular values of the action maps are 1 up to 1e-10
        double sv_err = 0.0;
        for (ArrowId a = 0; a < b.num_arrows(); ++a) {
            const GradedMap l = rep.lambda(a);
            for (int i = 0; i <= 1; ++i) {
                Eigen::JacobiSVD<Matrix> svd(l.block(i));
                sv_err = std::max(sv_err,
                                  std::abs(svd.singularValues().maxCoeff() - 1.0));
                sv_err = std::max(sv_err,
                                  std::abs(svd.singularValues().minCoeff() - 1.0));
            }
        }

        report(2,
               char_err <= 1e-9 && separation > 1e-6 && sv_err <= 1e-10,
               "induced isotropy representation: character error " + fmt(char_err) +
                   " (tol 1e-9), faithfulness separation " + fmt(separation) +
                   ", singular-value deviation " + fmt(sv_err) + " (tol 1e-10)");
    } catch (const std::exception& ex) {
        report(2, false, std::string("exception: ") + ex.what());
    }
}

void criterion3() {
    const std::vector<std::string> specs = {"1", "2,-1;3,0", "5"};
    bool pass = true;
    std::ostringstream detail;
    for (const auto& s : specs) {
        ContractionHomotopy h(CharacterList::parse(s), 64, 64);
        auto inv = h.check_invariants();
        const bool ok = inv.start_error == 0.0 && inv.end_error <= 1e-12 &&
                        inv.unitarity <= 1e-10 && inv.determinant <= 1e-10 &&
                        inv.max_step <= 0.35;
        pass = pass && ok;
        detail << "[" << s << "] end " << fmt(inv.end_error) << " su "
               << fmt(std::max(inv.unitarity, inv.determinant)) << " step "
               << fmt(inv.max_step) << " ";
    }
    report(3, pass,
           "contraction frames exact at t=0, endpoint tol 1e-12, "
           "special-unitary tol 1e-10, step bound 0.35: " +
               detail.str());
}

void criterion4() {
    bool pass = true;
    std::ostringstream detail;
    for (const auto& e : pseudorep_library(1, 64, 16)) {
        ObstructionReport r = obstruction_check(e.pseudo);
        const bool ok =
            r.deg_second == 0 && r.degree_identity_holds && r.su_condition_met;
        pass = pass && ok;
        detail << e.name << (ok ? " ok " : " BAD ");
    }

    // degree identity on synthesized loops
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> degree(-4, 4);
    std::uniform_real_distribution<double> amp(-0.4, 0.4);
    const int n = 256;
    auto synth = [&](int k) {
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
    int loop_failures = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const int k1 = degree(rng), k2 = degree(rng);
        auto f = synth(k1), g = synth(k2);
        std::vector<Complex> prod(n);
        for (int i = 0; i < n; ++i) prod[i] = f[i] * g[i];
        if (winding_number(f) != k1 || winding_number(g) != k2 ||
            winding_number(prod) != k1 + k2)
            ++loop_failures;
    }
    pass = pass && loop_failures == 0;

    CharacterList rho;
    rho.exponents = {{0, 1}};
    SuRestrictionReport det = su_restriction_check(rho, 64);
    pass = pass && det.violates && det.degree == 1;

    report(4, pass,
           "winding obstruction: " + detail.str() + "; " +
               std::to_string(loop_failures) +
               "/50 loop degree-identity failures; detector " +
               (det.violates ? "flags" : "MISSES") + " the non-extendable case");
}

void criterion5() {
    bool pass = true;
    double worst_closed = 0.0, worst_l0 = 0.0;
    for (const std::string& name : {"z4", "s3"}) {
        auto base = doubled(name);
        const Groupoid& G = base->groupoid();
        const double order = static_cast<double>(G.num_arrows());
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            GaugePair gp = gauge_of(base, seed);
            std::vector<GradedMap> phi0 = {GradedMap::identity(base->fiber(0))};
            HRepMorphism ext = extend_morphism(phi0, base, gp.conjugated);
            worst_closed = std::max(worst_closed, closedness_residual(ext, 4));

            // first extension step vs the direct fiber-average integral
            for (ArrowId g1 = 0; g1 < G.num_arrows(); ++g1) {
                GradedMap acc(base->fiber(0), base->fiber(0), -1);
                for (ArrowId g = 0; g < G.num_arrows(); ++g) {
                    ArrowId pair[2] = {g1, g};
                    acc += Complex(-1.0 / order) *
                           compose(gp.conjugated->op(2, pair),
                                   inverse(base->lambda(g)));
                }
                ArrowId t[1] = {g1};
                worst_l0 = std::max(worst_l0, (ext.component(1, t) - acc).norm());
            }
        }
    }
    pass = worst_closed <= 1e-9 && worst_l0 <= 1e-12;
    report(5, pass,
           "equivariant maps extend over gauge targets (2 groups x 20 seeds): "
           "closedness residual " +
               fmt(worst_closed) + " (tol 1e-9), first-step closed form " +
               fmt(worst_l0) + " (tol 1e-12)");
}

void criterion6() {
    double worst_null = 0.0;
    for (const std::string& name : {"z2", "z4", "s3"}) {
        auto e = doubled(name);
        for (std::uint64_t seed = 100; seed < 120; ++seed) {
            std::mt19937_64 rng(seed);
            HRepMorphism xi = random_morphism(e, e, 0, rng);
            HRepMorphism phi = morphism_differential(xi);  // closed, phi_0 = 0
            HRepMorphism psi = null_homotopy(phi);
            worst_null =
                std::max(worst_null, (morphism_differential(psi) - phi).sup_norm());
        }
    }

    double worst_dd = 0.0, worst_leibniz = 0.0;
    int triples = 0;
    for (const auto& [name, count] :
         std::vector<std::pair<std::string, int>>{{"z2", 50}, {"z4", 40},
                                                  {"s3", 10}}) {
        auto d_rep = doubled(name);
        GaugePair gp = gauge_of(d_rep, 77);
        auto e_rep = gp.conjugated;
        auto g = library_group(name);
        auto f_rep = std::make_shared<HomotopyRep>(
            honest_rep(g, regular_rep_matrices(*g), 0));
        std::mt19937_64 rng(991);
        std::uniform_int_distribution<int> deg(-1, 1);
        for (int trial = 0; trial < count; ++trial, ++triples) {
            HRepMorphism xi = random_morphism(d_rep, e_rep, deg(rng), rng);
            HRepMorphism phi = random_morphism(e_rep, f_rep, deg(rng), rng);
            worst_dd = std::max(
                worst_dd,
                morphism_differential(morphism_differential(phi)).sup_norm());
            HRepMorphism lhs = morphism_differential(compose(phi, xi));
            HRepMorphism rhs =
                compose(morphism_differential(phi), xi) +
                compose(phi, morphism_differential(xi))
                    .scaled(phi.degree() % 2 ? -1.0 : 1.0);
            worst_leibniz = std::max(worst_leibniz, (lhs - rhs).sup_norm());
        }
    }

    report(6,
           worst_null <= 1e-9 && worst_dd <= 1e-10 && worst_leibniz <= 1e-10,
           "null homotopies (3 groups x 20 seeds) residual " + fmt(worst_null) +
               " (tol 1e-9); over " + std::to_string(triples) +
               " random triples: D^2 " + fmt(worst_dd) + ", Leibniz " +
               fmt(worst_leibniz) + " (tol 1e-10)");
}

void criterion7() {
    auto t0 = std::chrono::steady_clock::now();
    bool pass = true;
    int pairs = 0, mismatches = 0, strictify_failures = 0;
    size_t min_entries = SIZE_MAX;
    for (const std::string& name : {"z2", "z4", "s3"}) {
        auto lib = standard_library(name);
        min_entries = std::min(min_entries, lib.size());
        for (const auto& e : lib)
            for (const auto& f : lib) {
                auto w = hom_degree_window(*e.rep, *f.rep);
                ++pairs;
                for (int n = w.lo; n <= w.hi; ++n)
                    if (drep_hom_dimension(*e.rep, *f.rep, n) !=
                        character_hom_dimension(*e.rep, *f.rep, n))
                        ++mismatches;
            }
        for (const auto& e : lib) {
            try {
                strictify(e.rep);
            } catch (const std::exception&) {
                ++strictify_failures;
            }
        }
    }
    const double secs = seconds_since(t0);
    pass = min_entries >= 6 && mismatches == 0 && strictify_failures == 0 &&
           secs < 60.0;
    report(7, pass,
           "hom dimensions vs character oracle over " + std::to_string(pairs) +
               " pairs: " + std::to_string(mismatches) + " mismatches, " +
               std::to_string(strictify_failures) + " strictification failures, " +
               std::to_string(min_entries) + " library entries minimum, " +
               fmt(secs) + "s (budget 60s)");
}

int run_cli(const std::string& cmd) {
    const int rc = std::system(cmd.c_str());
    if (rc == -1) return -1;
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void criterion8(const std::string& cli) {
    try {
        // in-process round trips
        auto rep = z2_action_two_term();
        Json j1 = rep_to_json(*rep, 1e-12);
        Json j2 = rep_to_json(*rep_from_json(j1).rep, 1e-12);
        bool round_trip = j1.dump() == j2.dump();

        auto g = library_group("z2");
        auto honest = std::make_shared<HomotopyRep>(
            honest_rep(g, regular_rep_matrices(*g), 0));
        Json m1 = morphism_to_json(HRepMorphism::identity(honest), 1e-9);
        Json m2 = morphism_to_json(morphism_from_json(m1).morphism, 1e-9);
        round_trip = round_trip && m1.dump() == m2.dump();

        if (cli.empty()) {
            report(8, false, "no command-line tool path supplied");
            return;
        }

        const fs::path work = fs::path("acceptance_work");
        fs::create_directories(work);
        const fs::path fixture = work / "rep.json";
        std::ofstream(fixture) << j1.dump(2);

        const std::string quiet = " > /dev/null 2>&1";
        const int ec_good = run_cli(cli + " verify " + fixture.string() + quiet);

        const fs::path garbage = work / "garbage.json";
        std::ofstream(garbage) << "this is not a representation {{{";
        const int ec_garbage = run_cli(cli + " verify " + garbage.string() + quiet);

        // corrupt one action entry: residuals now exceed any sane tolerance
        Json bad = j1;
        bool corrupted = false;
        for (auto& group : bad["ops"])
            if (group["k"] == 1 && !corrupted)
                for (auto& entry : group["entries"])
                    if (entry["tuple"] == Json::array({2})) {
                        entry["map"]["blocks"][0]["matrix"]["data"][0][0][0] =
                            entry["map"]["blocks"][0]["matrix"]["data"][0][0][0]
                                .get<double>() +
                            0.5;
                        corrupted = true;
                    }
        const fs::path broken = work / "broken.json";
        std::ofstream(broken) << bad.dump(2);
        const int ec_broken =
            run_cli(cli + " verify " + broken.string() + " --tol 1e-9" + quiet);

        // deterministic reports for a fixed configuration
        const std::string demo_flags =
            " demo lemma3 --chars '2,-1;3,0' --grid-fiber 16 --grid-t 32 --out ";
        run_cli(cli + demo_flags + (work / "d1.txt").string() + quiet);
        run_cli(cli + demo_flags + (work / "d2.txt").string() + quiet);
        const std::string homs_flags = " homs --group z2 --seed 5 --out ";
        run_cli(cli + homs_flags + (work / "h1.csv").string() + quiet);
        run_cli(cli + homs_flags + (work / "h2.csv").string() + quiet);
        const bool deterministic =
            !slurp(work / "d1.txt").empty() &&
            slurp(work / "d1.txt") == slurp(work / "d2.txt") &&
            !slurp(work / "h1.csv").empty() &&
            slurp(work / "h1.csv") == slurp(work / "h2.csv");

        const bool exits_ok =
            ec_good == 0 && ec_garbage == 1 && corrupted && ec_broken == 2;
        report(8, round_trip && exits_ok && deterministic,
               std::string("round trips ") + (round_trip ? "byte-identical" : "DIFFER") +
                   "; exit codes good/garbage/broken = " + std::to_string(ec_good) +
                   "/" + std::to_string(ec_garbage) + "/" +
                   std::to_string(ec_broken) + " (want 0/1/2); reports " +
                   (deterministic ? "deterministic" : "NON-DETERMINISTIC"));
    } catch (const std::exception& ex) {
        report(8, false, std::string("exception: ") + ex.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8(cli);
    std::cout << (g_failures == 0 ? "ALL CRITERIA PASSED"
                                  : std::to_string(g_failures) + " CRITERIA FAILED")
              << std::endl;
    return g_failures == 0 ? 0 : 1;
}
