#include "hrep/homotopy_rep.hpp"

#include <Eigen/SVD>
#include <set>
#include <sstream>

namespace hrep {

HomotopyRep::HomotopyRep(std::shared_ptr<const Groupoid> gpd,
                         std::vector<GradedDims> fibers, int k_max, OpFamily ops)
    : gpd_(std::move(gpd)), fibers_(std::move(fibers)), k_max_(k_max),
      ops_(std::move(ops)) {
    if (static_cast<int>(fibers_.size()) != gpd_->num_objects())
        throw std::invalid_argument("HomotopyRep: one fiber per object required");
    if (k_max_ < 0) throw std::invalid_argument("HomotopyRep: k_max must be >= 0");
}

DegreeWindow HomotopyRep::window() const {
    DegreeWindow w;
    for (const auto& f : fibers_) w = DegreeWindow::hull(w, f.window());
    return w;
}

GradedMap HomotopyRep::zero_op(int k, int src_obj, int tgt_obj) const {
    return GradedMap(fibers_[src_obj], fibers_[tgt_obj], 1 - k);
}

GradedMap HomotopyRep::op(int k, std::span<const ArrowId> tuple, int obj) const {
    if (static_cast<int>(tuple.size()) != k)
        throw std::invalid_argument("HomotopyRep::op: tuple size != k");
    const int src = k > 0 ? gpd_->source(tuple.back()) : obj;
    const int tgt = k > 0 ? gpd_->target(tuple.front()) : obj;
    if (k > k_max_) return zero_op(k, src, tgt);
    GradedMap m = ops_(k, tuple, obj);
    if (m.degree() != 1 - k)
        throw std::logic_error("HomotopyRep::op: operator family has wrong degree");
    return m;
}

double PseudoRep::min_singular_value() const {
    double best = std::numeric_limits<double>::infinity();
    for (ArrowId g = 0; g < gpd->num_arrows(); ++g) {
        Matrix m = map(g);
        if (m.rows() != m.cols()) return 0.0;
        if (m.rows() == 0) continue;
        Eigen::JacobiSVD<Matrix> svd(m);
        best = std::min(best, svd.singularValues().minCoeff());
    }
    return std::isfinite(best) ? best : 0.0;
}

namespace {
double eq1_residual(const HomotopyRep& rep, std::span<const ArrowId> t, int obj) {
    const Groupoid& G = rep.groupoid();
    const int k = static_cast<int>(t.size());
    const int tgt = k > 0 ? G.target(t.front()) : obj;
    const int src = k > 0 ? G.source(t.back()) : obj;

    GradedMap acc(rep.fiber(src), rep.fiber(tgt), 2 - k);
    // LHS: merged tuples
    std::vector<ArrowId> merged(std::max(k - 1, 0));
    for (int j = 1; j <= k - 1; ++j) {
        for (int i = 0; i < j - 1; ++i) merged[i] = t[i];
        merged[j - 1] = G.compose(t[j - 1], t[j]);
        for (int i = j + 1; i < k; ++i) merged[i - 1] = t[i];
        GradedMap term = rep.op(k - 1, merged, src);
        acc += (j % 2 ? Complex(-1) : Complex(1)) * term;
    }
    // RHS: splittings R_j ∘ R_{k-j}
    for (int j = 0; j <= k; ++j) {
        const int mid = j > 0 ? G.source(t[j - 1]) : tgt;
        GradedMap left = rep.op(j, t.subspan(0, j), mid);
        GradedMap right = rep.op(k - j, t.subspan(j), mid);
        acc -= (j % 2 ? Complex(-1) : Complex(1)) * compose(left, right);
    }
    return acc.norm();
}
}  // namespace

double cocycle_residual(const HomotopyRep& rep, int k, std::int64_t tuple_budget) {
    if (k < 0) throw std::invalid_argument("cocycle_residual: k must be >= 0");
    double worst = 0.0;
    auto visit = [&](std::span<const ArrowId> t, int obj) {
        worst = std::max(worst, eq1_residual(rep, t, obj));
    };
    if (rep.groupoid().is_group_bundle())
        for_each_composable_sampled(rep.groupoid(), k, tuple_budget, visit);
    else
        for_each_composable(rep.groupoid(), k, visit);
    return worst;
}

InvertibilityCertificate is_strongly_invertible(const HomotopyRep& rep, double tau) {
    const Groupoid& G = rep.groupoid();
    double best = std::numeric_limits<double>::infinity();
    for (ArrowId g = 0; g < G.num_arrows(); ++g) {
        GradedMap l = rep.lambda(g);
        const auto& src = rep.fiber(G.source(g));
        const auto& dst = rep.fiber(G.target(g));
        for (int i = src.window().lo; i <= src.window().hi; ++i) {
            if (src.dim(i) == 0 && dst.dim(i) == 0) continue;
            if (src.dim(i) != dst.dim(i)) return {false, 0.0};
            Eigen::JacobiSVD<Matrix> svd(l.block(i));
            best = std::min(best, svd.singularValues().minCoeff());
        }
    }
    if (!std::isfinite(best)) best = 0.0;
    return {best > tau, best};
}

namespace {
Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// least-squares Υ at one object: minimize ‖M - ∂Υ - Υ∂‖_F over degree -1 Υ
GradedMap solve_upsilon(const GradedDims& dims, const GradedMap& d, const GradedMap& m) {
    const auto& w = dims.window();
    // variable offsets per block Υ_i : E^i -> E^{i-1}
    std::vector<int> offset(w.width() + 2, 0);
    int nvars = 0;
    for (int i = w.lo; i <= w.hi; ++i) {
        offset[i - w.lo] = nvars;
        if (w.contains(i - 1)) nvars += dims.dim(i) * dims.dim(i - 1);
    }
    offset[w.width() + 1] = nvars;

    int nrows = 0;
    for (int i = w.lo; i <= w.hi; ++i) nrows += dims.dim(i) * dims.dim(i);
    Matrix A = Matrix::Zero(nrows, nvars);
    Vector rhs(nrows);
    int row = 0;
    for (int i = w.lo; i <= w.hi; ++i) {
        const int n = dims.dim(i);
        if (n > 0) {
            Eigen::Map<const Vector> mi(m.block(i).data(), n * n);
            rhs.segment(row, n * n) = mi;
            // ∂_{i-1} Υ_i
            if (w.contains(i - 1) && dims.dim(i - 1) > 0)
                A.block(row, offset[i - w.lo], n * n, n * dims.dim(i - 1)) =
                    kron(Matrix::Identity(n, n), d.block(i - 1));
            // Υ_{i+1} ∂_i
            if (w.contains(i + 1) && dims.dim(i + 1) > 0)
                A.block(row, offset[i + 1 - w.lo], n * n, dims.dim(i + 1) * n) =
                    kron(d.block(i).transpose(), Matrix::Identity(n, n));
        }
        row += n * n;
    }
    Vector sol = nvars > 0 ? Vector(A.completeOrthogonalDecomposition().solve(rhs))
                           : Vector(0);
    GradedMap ups(dims, dims, -1);
    for (int i = w.lo; i <= w.hi; ++i) {
        if (!w.contains(i - 1) || dims.dim(i) == 0 || dims.dim(i - 1) == 0) continue;
        ups.block(i) = Eigen::Map<const Matrix>(sol.data() + offset[i - w.lo],
                                                dims.dim(i - 1), dims.dim(i));
    }
    return ups;
}
}  // namespace

UnitalityResult check_unitality(const HomotopyRep& rep, double tau_inv) {
    const Groupoid& G = rep.groupoid();
    const bool invertible = is_strongly_invertible(rep, tau_inv).strongly_invertible;
    UnitalityResult out{0.0, {}};
    out.upsilon.reserve(G.num_objects());
    for (int x = 0; x < G.num_objects(); ++x) {
        const ArrowId one = G.unit(x);
        GradedMap l1 = rep.lambda(one);
        GradedMap m = l1 - GradedMap::identity(rep.fiber(x));
        GradedMap d = rep.differential(x);
        GradedMap ups(rep.fiber(x), rep.fiber(x), -1);
        if (invertible) {
            ArrowId pair[2] = {one, one};
            ups = compose(inverse(l1), rep.op(2, pair));
        } else {
            ups = solve_upsilon(rep.fiber(x), d, m);
        }
        double res = (m - compose(d, ups) - compose(ups, d)).norm();
        out.residual = std::max(out.residual, res);
        out.upsilon.push_back(std::move(ups));
    }
    return out;
}

HomotopyRep two_term_from_pseudorep(const PseudoRep& lambda, const BumpFunction& c,
                                    const TwoTermOptions& opts) {
    auto gpd = lambda.gpd;
    const Groupoid& G = *gpd;
    const int n_obj = G.num_objects();
    if (static_cast<int>(c.values.size()) != n_obj)
        throw std::invalid_argument("two_term_from_pseudorep: bump size mismatch");

    std::vector<char> in_u(n_obj, 0);
    for (int x : c.carrier) in_u[x] = 1;
    // supp(1-c) ⊂ U
    for (int x = 0; x < n_obj; ++x)
        if (!in_u[x] && c.values[x] != 1.0)
            throw std::invalid_argument("two_term_from_pseudorep: supp(1-c) not in U");

    auto lam = std::make_shared<std::vector<Matrix>>();
    lam->reserve(G.num_arrows());
    for (ArrowId g = 0; g < G.num_arrows(); ++g) lam->push_back(lambda.map(g));

    auto arrow_in_u = [&](ArrowId g) { return in_u[G.source(g)] && in_u[G.target(g)]; };

    // λ|U must be an honest representation: unit law and multiplicativity
    for (int x = 0; x < n_obj; ++x) {
        if (!in_u[x]) continue;
        double r = ((*lam)[G.unit(x)] -
                    Matrix::Identity(lambda.dims[x], lambda.dims[x])).norm();
        if (r > opts.rep_tol)
            throw std::invalid_argument(
                "two_term_from_pseudorep: λ does not respect units on U");
    }
    double worst_mult = 0.0, worst_branch = 0.0;
    auto check_pair = [&](std::span<const ArrowId> t, int) {
        if (!arrow_in_u(t[0]) || !arrow_in_u(t[1])) return;
        double r = ((*lam)[t[0]] * (*lam)[t[1]] - (*lam)[G.compose(t[0], t[1])]).norm();
        worst_mult = std::max(worst_mult, r);
        // the two defining branches of Ψ must agree on U ∖ S
        double cu = c.values[G.target(t[0])];
        if (cu >= opts.c_floor) worst_branch = std::max(worst_branch, r / cu);
    };
    if (G.is_group_bundle())
        for_each_composable_sampled(G, 2, opts.tuple_budget, check_pair);
    else
        for_each_composable(G, 2, check_pair);
    if (worst_mult > opts.rep_tol) {
        std::ostringstream msg;
        msg << "two_term_from_pseudorep: λ|U not multiplicative, residual "
            << worst_mult;
        throw std::invalid_argument(msg.str());
    }
    if (worst_branch > opts.branch_tol) {
        std::ostringstream msg;
        msg << "two_term_from_pseudorep: Ψ branches disagree on U ∖ S by "
            << worst_branch;
        throw std::invalid_argument(msg.str());
    }

    std::vector<GradedDims> fibers;
    fibers.reserve(n_obj);
    for (int x = 0; x < n_obj; ++x) fibers.push_back(GradedDims::two_term(lambda.dims[x]));

    auto values = std::make_shared<std::vector<double>>(c.values);
    auto in_u_sp = std::make_shared<std::vector<char>>(in_u);
    const double c_floor = opts.c_floor;
    auto fibers_sp = std::make_shared<std::vector<GradedDims>>(fibers);

    OpFamily ops = [gpd, lam, values, in_u_sp, c_floor, fibers_sp](
                       int k, std::span<const ArrowId> t, int obj) -> GradedMap {
        const Groupoid& g = *gpd;
        const int src = k > 0 ? g.source(t.back()) : obj;
        const int tgt = k > 0 ? g.target(t.front()) : obj;
        GradedMap m((*fibers_sp)[src], (*fibers_sp)[tgt], 1 - k);
        if (k == 0) {
            const int n = static_cast<int>((*lam)[g.unit(obj)].rows());
            m.block(0) = (*values)[obj] * Matrix::Identity(n, n);
        } else if (k == 1) {
            m.block(0) = (*lam)[t[0]];
            m.block(1) = (*lam)[t[0]];
        } else if (k == 2) {
            const bool on_u = (*in_u_sp)[g.source(t[0])] && (*in_u_sp)[g.target(t[0])] &&
                              (*in_u_sp)[g.source(t[1])] && (*in_u_sp)[g.target(t[1])];
            const double cu = (*values)[tgt];
            if (!on_u && cu >= c_floor)
                m.block(1) = ((*lam)[t[0]] * (*lam)[t[1]] - (*lam)[g.compose(t[0], t[1])]) / cu;
        }
        return m;
    };

    HomotopyRep rep(gpd, std::move(fibers), 2, std::move(ops));

    // unitality witness
    auto cert = is_strongly_invertible(rep);
    if (cert.strongly_invertible) {
        rep.set_unitality_witness(check_unitality(rep).upsilon);
    } else {
        std::vector<GradedMap> ups;
        for (int x = 0; x < n_obj; ++x) {
            GradedMap u(rep.fiber(x), rep.fiber(x), -1);
            if (!in_u[x]) {
                const int n = lambda.dims[x];
                u.block(1) = ((*lam)[G.unit(x)] - Matrix::Identity(n, n)) / c.values[x];
            }
            ups.push_back(std::move(u));
        }
        rep.set_unitality_witness(std::move(ups));
    }
    return rep;
}

CohomologyRep cohomology_rep(const HomotopyRep& rep, const CohomologyRepOptions& opts) {
    for (int k = 0; k <= 2; ++k) {
        double r = cocycle_residual(rep, k, opts.tuple_budget);
        if (r > opts.cocycle_tol) {
            std::ostringstream msg;
            msg << "cohomology_rep: cocycle equation k=" << k << " fails, residual "
                << r;
            throw std::invalid_argument(msg.str());
        }
    }
    double ur = check_unitality(rep).residual;
    if (ur > opts.unitality_tol) {
        std::ostringstream msg;
        msg << "cohomology_rep: unitality residual " << ur;
        throw std::invalid_argument(msg.str());
    }

    const Groupoid& G = rep.groupoid();
    auto splits = std::make_shared<std::vector<CohomologySplitting>>();
    splits->reserve(G.num_objects());
    for (int x = 0; x < G.num_objects(); ++x)
        splits->push_back(
            cohomology(FiberComplex(rep.fiber(x), rep.differential(x)), opts.cocycle_tol));

    auto gpd = rep.groupoid_ptr();
    auto rep_copy = std::make_shared<HomotopyRep>(rep);
    auto action = [gpd, splits, rep_copy](ArrowId g) {
        return induced_map((*splits)[rep_copy->groupoid().source(g)],
                           (*splits)[rep_copy->groupoid().target(g)],
                           rep_copy->lambda(g));
    };

    // verification: units to identities, composition respected
    double worst = 0.0;
    for (int x = 0; x < G.num_objects(); ++x) {
        GradedMap u = action(G.unit(x));
        worst = std::max(worst, (u - GradedMap::identity((*splits)[x].h_dims)).norm());
    }
    auto check_pair = [&](std::span<const ArrowId> t, int) {
        GradedMap lhs = compose(action(t[0]), action(t[1]));
        GradedMap rhs = action(G.compose(t[0], t[1]));
        worst = std::max(worst, (lhs - rhs).norm());
    };
    if (G.is_group_bundle())
        for_each_composable_sampled(G, 2, opts.tuple_budget, check_pair);
    else
        for_each_composable(G, 2, check_pair);
    if (worst > opts.rep_tol) {
        std::ostringstream msg;
        msg << "cohomology_rep: induced maps fail to form a representation, residual "
            << worst;
        throw std::invalid_argument(msg.str());
    }

    CohomologyRep out;
    out.gpd = gpd;
    out.splittings = *splits;
    out.action = action;
    return out;
}

VerifyReport verify(const HomotopyRep& rep, double tol, int k_hi,
                    std::int64_t tuple_budget) {
    if (k_hi < 0) k_hi = rep.k_max() + 2;
    VerifyReport rpt;
    rpt.tolerance = tol;
    for (int k = 0; k <= k_hi; ++k)
        rpt.cocycle.push_back(cocycle_residual(rep, k, tuple_budget));
    rpt.unitality = check_unitality(rep).residual;
    rpt.pass = rpt.unitality <= tol;
    for (double r : rpt.cocycle) rpt.pass = rpt.pass && r <= tol;
    return rpt;
}

HomotopyRep honest_rep(std::shared_ptr<const Groupoid> group,
                       std::vector<Matrix> matrices, int degree) {
    const int dim = matrices.empty() ? 0 : static_cast<int>(matrices[0].rows());
    GradedDims dims = GradedDims::concentrated(degree, dim);
    auto mats = std::make_shared<std::vector<Matrix>>(std::move(matrices));
    return honest_graded_rep(std::move(group), dims, [mats, dims](ArrowId g) {
        GradedMap m(dims, dims, 0);
        m.block(dims.window().lo) = (*mats)[g];
        return m;
    });
}

HomotopyRep honest_graded_rep(std::shared_ptr<const Groupoid> group, GradedDims dims,
                              std::function<GradedMap(ArrowId)> lambda) {
    if (group->num_objects() != 1)
        throw std::invalid_argument("honest_graded_rep: expected a one-object groupoid");
    std::vector<GradedDims> fibers = {dims};
    auto lam = std::make_shared<std::function<GradedMap(ArrowId)>>(std::move(lambda));
    OpFamily ops = [lam, dims](int k, std::span<const ArrowId> t, int) -> GradedMap {
        if (k == 1) return (*lam)(t[0]);
        return GradedMap(dims, dims, 1 - k);
    };
    HomotopyRep rep(std::move(group), std::move(fibers), 1, std::move(ops));
    std::vector<GradedMap> ups;
    ups.emplace_back(dims, dims, -1);
    rep.set_unitality_witness(std::move(ups));
    return rep;
}

}  // namespace hrep
