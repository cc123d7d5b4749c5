#include "hrep/morphism.hpp"

#include <map>
#include <sstream>

namespace hrep {

namespace {
inline Complex sgn(int e) { return ((e % 2 + 2) % 2) ? Complex(-1) : Complex(1); }

void require_same_bundle(const HomotopyRep& a, const HomotopyRep& b,
                         const char* who) {
    if (!same_groupoid(a.groupoid(), b.groupoid()) || !(a.fibers() == b.fibers()))
        throw std::invalid_argument(std::string(who) + ": object mismatch");
}
}  // namespace

HRepMorphism::HRepMorphism(std::shared_ptr<const HomotopyRep> src,
                           std::shared_ptr<const HomotopyRep> dst, int degree,
                           int k_bound, MorFamily comps)
    : src_(std::move(src)), dst_(std::move(dst)), degree_(degree),
      k_bound_(k_bound), comps_(std::move(comps)) {
    if (!same_groupoid(src_->groupoid(), dst_->groupoid()))
        throw std::invalid_argument("HRepMorphism: source/target groupoid mismatch");
}

HRepMorphism HRepMorphism::zero(std::shared_ptr<const HomotopyRep> src,
                                std::shared_ptr<const HomotopyRep> dst, int degree) {
    return HRepMorphism(std::move(src), std::move(dst), degree, -1, {});
}

HRepMorphism HRepMorphism::identity(std::shared_ptr<const HomotopyRep> rep) {
    auto r = rep;
    MorFamily comps = [r](int k, std::span<const ArrowId> t, int obj) -> GradedMap {
        (void)t;
        if (k == 0) return GradedMap::identity(r->fiber(obj));
        throw std::logic_error("identity morphism queried beyond k_bound");
    };
    return HRepMorphism(rep, rep, 0, 0, std::move(comps));
}

int HRepMorphism::forced_k_bound(const HomotopyRep& src, const HomotopyRep& dst,
                                 int degree) {
    DegreeWindow ws = src.window(), wd = dst.window();
    if (ws.empty() || wd.empty()) return -1;
    // Φ_k maps E-degree i to F-degree i + degree - k; nonzero needs
    // degree - k >= wd.lo - ws.hi.
    return degree + ws.hi - wd.lo;
}

GradedMap HRepMorphism::component(int k, std::span<const ArrowId> tuple,
                                  int obj) const {
    if (static_cast<int>(tuple.size()) != k)
        throw std::invalid_argument("HRepMorphism::component: tuple size != k");
    const Groupoid& G = src_->groupoid();
    const int s = k > 0 ? G.source(tuple.back()) : obj;
    const int t = k > 0 ? G.target(tuple.front()) : obj;
    if (k > k_bound_ || k_bound_ < 0)
        return GradedMap(src_->fiber(s), dst_->fiber(t), degree_ - k);
    GradedMap m = comps_(k, tuple, obj);
    if (m.degree() != degree_ - k)
        throw std::logic_error("HRepMorphism: component family has wrong degree");
    return m;
}

HRepMorphism HRepMorphism::operator+(const HRepMorphism& o) const {
    require_same_bundle(*src_, *o.src_, "HRepMorphism::operator+");
    require_same_bundle(*dst_, *o.dst_, "HRepMorphism::operator+");
    if (degree_ != o.degree_)
        throw std::invalid_argument("HRepMorphism::operator+: degree mismatch");
    auto a = std::make_shared<HRepMorphism>(*this);
    auto b = std::make_shared<HRepMorphism>(o);
    MorFamily comps = [a, b](int k, std::span<const ArrowId> t, int obj) {
        return a->component(k, t, obj) + b->component(k, t, obj);
    };
    return HRepMorphism(src_, dst_, degree_, std::max(k_bound_, o.k_bound_),
                        std::move(comps));
}

HRepMorphism HRepMorphism::operator-(const HRepMorphism& o) const {
    return *this + o.scaled(Complex(-1));
}

HRepMorphism HRepMorphism::scaled(Complex s) const {
    auto a = std::make_shared<HRepMorphism>(*this);
    MorFamily comps = [a, s](int k, std::span<const ArrowId> t, int obj) {
        GradedMap m = a->component(k, t, obj);
        m *= s;
        return m;
    };
    return HRepMorphism(src_, dst_, degree_, k_bound_, std::move(comps));
}

double HRepMorphism::sup_norm(int k_hi, std::int64_t tuple_budget) const {
    if (k_hi < 0) k_hi = k_bound_;
    const Groupoid& G = src_->groupoid();
    double worst = 0.0;
    for (int k = 0; k <= k_hi; ++k) {
        auto visit = [&](std::span<const ArrowId> t, int obj) {
            worst = std::max(worst, component(k, t, obj).norm());
        };
        if (G.is_group_bundle())
            for_each_composable_sampled(G, k, tuple_budget, visit);
        else
            for_each_composable(G, k, visit);
    }
    return worst;
}

HRepMorphism morphism_differential(const HRepMorphism& phi) {
    auto p = std::make_shared<HRepMorphism>(phi);
    auto src = phi.src_ptr();
    auto dst = phi.dst_ptr();
    const int n = phi.degree();
    int kb = phi.k_bound() + std::max({src->k_max(), dst->k_max(), 1});
    kb = std::min(kb, HRepMorphism::forced_k_bound(*src, *dst, n + 1));

    MorFamily comps = [p, src, dst, n](int k, std::span<const ArrowId> t,
                                       int obj) -> GradedMap {
        const Groupoid& G = src->groupoid();
        const int s_obj = k > 0 ? G.source(t.back()) : obj;
        const int t_obj = k > 0 ? G.target(t.front()) : obj;
        GradedMap acc(src->fiber(s_obj), dst->fiber(t_obj), n + 1 - k);
        for (int j = 0; j <= k; ++j) {
            const int mid = j > 0 ? G.source(t[j - 1]) : t_obj;
            // S_j ∘ Φ_{k-j}
            acc += sgn(j * n) * compose(dst->op(j, t.subspan(0, j), mid),
                                        p->component(k - j, t.subspan(j), mid));
            // -(-1)^n (-1)^j Φ_j ∘ R_{k-j}
            acc -= sgn(n + j) * compose(p->component(j, t.subspan(0, j), mid),
                                        src->op(k - j, t.subspan(j), mid));
        }
        std::vector<ArrowId> merged(std::max(k - 1, 0));
        for (int j = 1; j <= k - 1; ++j) {
            for (int i = 0; i < j - 1; ++i) merged[i] = t[i];
            merged[j - 1] = G.compose(t[j - 1], t[j]);
            for (int i = j + 1; i < k; ++i) merged[i - 1] = t[i];
            acc += sgn(n + j) * p->component(k - 1, merged, s_obj);
        }
        return acc;
    };
    return HRepMorphism(src, dst, n + 1, kb, std::move(comps));
}

HRepMorphism compose(const HRepMorphism& phi, const HRepMorphism& xi) {
    require_same_bundle(xi.dst(), phi.src(), "compose(HRepMorphism)");
    auto f = std::make_shared<HRepMorphism>(phi);
    auto x = std::make_shared<HRepMorphism>(xi);
    const int n = phi.degree() + xi.degree();
    int kb = (phi.k_bound() < 0 || xi.k_bound() < 0)
                 ? -1
                 : phi.k_bound() + xi.k_bound();
    kb = std::min(kb, HRepMorphism::forced_k_bound(xi.src(), phi.dst(), n));
    const int dxi = xi.degree();

    MorFamily comps = [f, x, n, dxi](int k, std::span<const ArrowId> t,
                                     int obj) -> GradedMap {
        const Groupoid& G = f->src().groupoid();
        const int s_obj = k > 0 ? G.source(t.back()) : obj;
        const int t_obj = k > 0 ? G.target(t.front()) : obj;
        GradedMap acc(x->src().fiber(s_obj), f->dst().fiber(t_obj), n - k);
        for (int j = 0; j <= k; ++j) {
            const int i = k - j;
            const int mid = j > 0 ? G.source(t[j - 1]) : t_obj;
            acc += sgn(j * dxi) * compose(f->component(j, t.subspan(0, j), mid),
                                          x->component(i, t.subspan(j), mid));
        }
        return acc;
    };
    return HRepMorphism(xi.src_ptr(), phi.dst_ptr(), n, kb, std::move(comps));
}

double closedness_residual(const HRepMorphism& phi, int k_hi,
                           std::int64_t tuple_budget) {
    HRepMorphism d = morphism_differential(phi);
    if (k_hi < 0) k_hi = d.k_bound();
    return d.sup_norm(k_hi, tuple_budget);
}

namespace {
// memoized component table shared by the extension/null-homotopy closures
struct MemoTable {
    std::vector<std::map<std::vector<ArrowId>, GradedMap>> cache;
};

GradedMap haar_integrate_graded(const Groupoid& G, int x,
                                const std::function<GradedMap(ArrowId)>& f) {
    const auto& fiber = G.target_fiber(x);
    if (fiber.empty())
        throw std::invalid_argument("haar_integrate_graded: empty fiber");
    GradedMap acc = f(fiber[0]);
    for (size_t i = 1; i < fiber.size(); ++i) acc += f(fiber[i]);
    acc *= Complex(1.0 / static_cast<double>(fiber.size()));
    return acc;
}

void require_honest(const HomotopyRep& rep, double tol, std::int64_t budget,
                    const char* who) {
    const Groupoid& G = rep.groupoid();
    for (int x = 0; x < G.num_objects(); ++x)
        if (rep.differential(x).norm() > tol)
            throw std::invalid_argument(std::string(who) +
                                        ": nonzero differential (R_0 != 0)");
    double worst = 0.0;
    for (int x = 0; x < G.num_objects(); ++x)
        worst = std::max(
            worst,
            (rep.lambda(G.unit(x)) - GradedMap::identity(rep.fiber(x))).norm());
    auto pair_check = [&](std::span<const ArrowId> t, int) {
        GradedMap r = compose(rep.lambda(t[0]), rep.lambda(t[1])) -
                      rep.lambda(G.compose(t[0], t[1]));
        worst = std::max(worst, r.norm());
    };
    if (G.is_group_bundle())
        for_each_composable_sampled(G, 2, budget, pair_check);
    else
        for_each_composable(G, 2, pair_check);
    if (worst > tol) {
        std::ostringstream msg;
        msg << who << ": R_1 is not an honest representation, residual " << worst;
        throw std::invalid_argument(msg.str());
    }
}
}  // namespace

HRepMorphism extend_morphism(std::vector<GradedMap> phi0,
                             std::shared_ptr<const HomotopyRep> src,
                             std::shared_ptr<const HomotopyRep> dst,
                             const ExtendOptions& opts) {
    const Groupoid& G = src->groupoid();
    if (!same_groupoid(G, dst->groupoid()))
        throw std::invalid_argument("extend_morphism: groupoid mismatch");
    if (static_cast<int>(phi0.size()) != G.num_objects())
        throw std::invalid_argument("extend_morphism: one Φ_0 block per object");
    require_honest(*src, opts.rep_tol, opts.tuple_budget, "extend_morphism");
    require_honest(*dst, opts.rep_tol, opts.tuple_budget, "extend_morphism");

    double worst = 0.0;
    for (ArrowId g = 0; g < G.num_arrows(); ++g) {
        GradedMap r = compose(dst->lambda(g), phi0[G.source(g)]) -
                      compose(phi0[G.target(g)], src->lambda(g));
        worst = std::max(worst, r.norm());
    }
    if (worst > opts.equivariance_tol) {
        std::ostringstream msg;
        msg << "extend_morphism: Φ_0 is not equivariant, residual " << worst;
        throw std::invalid_argument(msg.str());
    }

    const int kb = std::max(HRepMorphism::forced_k_bound(*src, *dst, 0), 0);
    auto memo = std::make_shared<MemoTable>();
    memo->cache.resize(kb + 1);
    auto p0 = std::make_shared<std::vector<GradedMap>>(std::move(phi0));

    // recursive evaluator for the inductive integral formula
    auto self = std::make_shared<std::function<GradedMap(int, std::span<const ArrowId>, int)>>();
    *self = [memo, p0, src, dst, kb, self](int k, std::span<const ArrowId> t,
                                           int obj) -> GradedMap {
        const Groupoid& g = src->groupoid();
        const int s_obj = k > 0 ? g.source(t.back()) : obj;
        const int t_obj = k > 0 ? g.target(t.front()) : obj;
        if (k == 0) return (*p0)[obj];
        if (k > kb) return GradedMap(src->fiber(s_obj), dst->fiber(t_obj), -k);
        std::vector<ArrowId> key(t.begin(), t.end());
        if (auto it = memo->cache[k].find(key); it != memo->cache[k].end())
            return it->second;

        GradedMap val = haar_integrate_graded(g, s_obj, [&](ArrowId gg) {
            std::vector<ArrowId> ext(t.begin(), t.end());
            ext.push_back(gg);  // composable: t(gg) = s(g_k)
            std::span<const ArrowId> e(ext);
            const int ks = k + 1;  // extended tuple length = l + 2
            GradedMap integrand(src->fiber(g.source(gg)), dst->fiber(t_obj), -k);
            for (int j = 0; j <= k - 1; ++j) {
                const int mid = j > 0 ? g.source(e[j - 1]) : t_obj;
                integrand += sgn(j) * compose((*self)(j, e.subspan(0, j), mid),
                                              src->op(ks - j, e.subspan(j), mid));
            }
            for (int j = 2; j <= ks; ++j) {
                const int mid = g.source(e[j - 1]);
                integrand -= compose(dst->op(j, e.subspan(0, j), mid),
                                     (*self)(ks - j, e.subspan(j), mid));
            }
            integrand *= sgn(k - 1);
            return compose(integrand, inverse(src->lambda(gg)));
        });
        memo->cache[k].emplace(std::move(key), val);
        return val;
    };

    MorFamily comps = [self](int k, std::span<const ArrowId> t, int obj) {
        return (*self)(k, t, obj);
    };
    return HRepMorphism(src, dst, 0, kb, std::move(comps));
}

HRepMorphism null_homotopy(const HRepMorphism& phi, const NullHomotopyOptions& opts) {
    auto src = phi.src_ptr();
    auto dst = phi.dst_ptr();
    const Groupoid& G = src->groupoid();
    for (const HomotopyRep* r : {src.get(), dst.get()}) {
        bool higher = r->k_max() > 1;
        for (int x = 0; !higher && x < G.num_objects(); ++x)
            higher = r->differential(x).norm() > 0;
        if (higher)
            throw std::invalid_argument(
                "null_homotopy: structure operators R_k != 0 for k != 1 are "
                "unsupported (only honest graded representations)");
    }
    {
        double w0 = 0.0;
        for (int x = 0; x < G.num_objects(); ++x)
            w0 = std::max(w0, phi.component(0, {}, x).norm());
        if (w0 > opts.closed_tol)
            throw std::invalid_argument("null_homotopy: Φ_0 != 0");
    }
    if (double r = closedness_residual(phi, -1, opts.tuple_budget);
        r > opts.closed_tol) {
        std::ostringstream msg;
        msg << "null_homotopy: input not closed, DΦ residual " << r;
        throw std::invalid_argument(msg.str());
    }

    const int n = phi.degree();
    int kb = std::max(phi.k_bound() - 1, -1);
    kb = std::min(kb, HRepMorphism::forced_k_bound(*src, *dst, n - 1));
    auto p = std::make_shared<HRepMorphism>(phi);

    MorFamily comps = [p, src, n](int k, std::span<const ArrowId> t,
                                  int obj) -> GradedMap {
        const Groupoid& g = src->groupoid();
        const int s_obj = k > 0 ? g.source(t.back()) : obj;
        return haar_integrate_graded(g, s_obj, [&](ArrowId gg) {
            std::vector<ArrowId> ext(t.begin(), t.end());
            ext.push_back(gg);
            GradedMap val = compose(p->component(k + 1, ext),
                                    inverse(src->lambda(gg)));
            // the telescoping argument against the differential convention
            // above yields D(integral) = (-1)^n Phi, hence the extra sign
            val *= sgn(k + n);
            return val;
        });
    };
    return HRepMorphism(src, dst, n - 1, kb, std::move(comps));
}

std::vector<GradedMap> cohomology_functor(const HRepMorphism& phi,
                                          const CohomologyRep& src_cohomology,
                                          const CohomologyRep& dst_cohomology,
                                          double closed_tol) {
    if (double r = closedness_residual(phi); r > closed_tol) {
        std::ostringstream msg;
        msg << "cohomology_functor: morphism not closed, residual " << r;
        throw std::invalid_argument(msg.str());
    }
    const Groupoid& G = phi.src().groupoid();
    const int n = phi.degree();
    std::vector<GradedMap> out;
    out.reserve(G.num_objects());
    for (int x = 0; x < G.num_objects(); ++x) {
        const auto& ss = src_cohomology.splittings[x];
        const auto& st = dst_cohomology.splittings[x];
        GradedMap phi0 = phi.component(0, {}, x);
        GradedMap m(ss.h_dims, st.h_dims, n);
        for (int i = ss.h_dims.window().lo; i <= ss.h_dims.window().hi; ++i) {
            if (ss.dim(i) == 0 || st.dim(i + n) == 0) continue;
            if (!phi0.src().window().contains(i)) continue;
            m.block(i) = st.projection(i + n) * phi0.block(i) * ss.inclusion(i);
        }
        out.push_back(std::move(m));
    }
    return out;
}

}  // namespace hrep
