#include "hrep/strictify.hpp"

#include <Eigen/SVD>
#include <sstream>

namespace hrep {

GaugePair gauge_conjugate(std::shared_ptr<const HomotopyRep> honest,
                          std::function<GradedMap(ArrowId)> t1) {
    const Groupoid& G = honest->groupoid();
    for (int x = 0; x < G.num_objects(); ++x)
        if (honest->differential(x).norm() > 0)
            throw std::invalid_argument("gauge_conjugate: input must have zero differential");

    auto t1p = std::make_shared<std::function<GradedMap(ArrowId)>>(std::move(t1));
    auto base = honest;
    DegreeWindow w = honest->window();
    const int k_max = std::min(w.width() + 1, 8);

    // R_2 = T1 λ + λ T1 - T1∘mult, then R_{k+1}(g1,…) = T1(g1)∘R_k(g2,…)
    struct Ops {
        std::shared_ptr<const HomotopyRep> base;
        std::shared_ptr<std::function<GradedMap(ArrowId)>> t1;

        GradedMap r2(ArrowId g1, ArrowId g2) const {
            const Groupoid& G = base->groupoid();
            return compose((*t1)(g1), base->lambda(g2)) +
                   compose(base->lambda(g1), (*t1)(g2)) - (*t1)(G.compose(g1, g2));
        }
        GradedMap eval(int k, std::span<const ArrowId> t, int obj) const {
            const Groupoid& G = base->groupoid();
            if (k == 0)
                return GradedMap(base->fiber(obj), base->fiber(obj), 1);
            if (k == 1) return base->lambda(t[0]);
            if (k == 2) return r2(t[0], t[1]);
            return compose((*t1)(t[0]), eval(k - 1, t.subspan(1), obj));
        }
    };
    Ops ops{base, t1p};
    OpFamily fam = [ops](int k, std::span<const ArrowId> t, int obj) {
        return ops.eval(k, t, obj);
    };
    auto conj = std::make_shared<HomotopyRep>(honest->groupoid_ptr(),
                                              honest->fibers(), k_max, fam);
    {
        std::vector<GradedMap> ups;
        for (int x = 0; x < G.num_objects(); ++x)
            ups.emplace_back(conj->fiber(x), conj->fiber(x), -1);
        conj->set_unitality_witness(std::move(ups));
    }

    const int kb = std::max(HRepMorphism::forced_k_bound(*conj, *honest, 0), 0);
    MorFamily comps = [t1p, base](int k, std::span<const ArrowId> t,
                                  int obj) -> GradedMap {
        if (k == 0) return GradedMap::identity(base->fiber(obj));
        if (k == 1) return (*t1p)(t[0]);
        const Groupoid& G = base->groupoid();
        return GradedMap(base->fiber(G.source(t.back())),
                         base->fiber(G.target(t.front())), -k);
    };
    HRepMorphism to_honest(conj, honest, 0, kb, std::move(comps));
    return {conj, std::move(to_honest)};
}

StrictifyResult strictify(std::shared_ptr<const HomotopyRep> rep,
                          const StrictifyOptions& opts) {
    const Groupoid& G = rep->groupoid();
    if (G.num_objects() != 1)
        throw std::invalid_argument("strictify: only one-object groupoids (groups) supported");

    CohomologySplitting split =
        cohomology(FiberComplex(rep->fiber(0), rep->differential(0)),
                   1e-12, opts.rank_threshold);
    GradedMap incl = split.inclusion_map();
    GradedMap proj = split.projection_map();
    GradedMap h = split.homotopy;

    // transferred honest action λ'(g) = π λ(g) ι
    const ArrowId m = G.num_arrows();
    auto lam_table = std::make_shared<std::vector<GradedMap>>();
    lam_table->reserve(m);
    for (ArrowId g = 0; g < m; ++g)
        lam_table->push_back(compose(proj, compose(rep->lambda(g), incl)));

    GradedDims h_dims = split.h_dims;
    auto honest = std::make_shared<HomotopyRep>(honest_graded_rep(
        rep->groupoid_ptr(), h_dims,
        [lam_table](ArrowId g) { return (*lam_table)[g]; }));

    // intermediate transferred structure on H(E) with the corrected homotopy
    auto rp = std::make_shared<HomotopyRep>(*rep);
    auto ip = std::make_shared<GradedMap>(incl);
    auto pp = std::make_shared<GradedMap>(proj);
    auto hp = std::make_shared<GradedMap>(h);
    OpFamily transferred_ops = [rp, ip, pp, hp, lam_table, h_dims](
                                   int k, std::span<const ArrowId> t,
                                   int obj) -> GradedMap {
        if (k == 1) return (*lam_table)[t[0]];
        if (k == 2) {
            GradedMap inner = rp->op(2, t) -
                              compose(rp->lambda(t[0]),
                                      compose(*hp, rp->lambda(t[1])));
            return compose(*pp, compose(inner, *ip));
        }
        (void)obj;
        return GradedMap(h_dims, h_dims, 1 - k);
    };
    auto transferred = std::make_shared<HomotopyRep>(
        rep->groupoid_ptr(), std::vector<GradedDims>{h_dims}, 2, transferred_ops);
    {
        std::vector<GradedMap> ups;
        ups.emplace_back(h_dims, h_dims, -1);
        transferred->set_unitality_witness(std::move(ups));
    }
    {
        VerifyReport vr = verify(*transferred, opts.tol, 4);
        if (!vr.pass) {
            std::ostringstream msg;
            msg << "strictify: transferred structure fails the cocycle equations"
                << " (worst residual ";
            double worst = vr.unitality;
            for (double r : vr.cocycle) worst = std::max(worst, r);
            msg << worst << ")";
            throw std::logic_error(msg.str());
        }
    }

    // transfer morphism E -> transferred: Φ_0 = π, Φ_1(g) = π λ(g) h
    const int kb_t = std::max(HRepMorphism::forced_k_bound(*rep, *transferred, 0), 1);
    MorFamily t_comps = [rp, pp, hp, h_dims](int k, std::span<const ArrowId> t,
                                             int obj) -> GradedMap {
        if (k == 0) return *pp;
        if (k == 1) return compose(*pp, compose(rp->lambda(t[0]), *hp));
        (void)obj;
        return GradedMap(rp->fiber(0), h_dims, -k);
    };
    HRepMorphism transfer(rp, transferred, 0, kb_t, t_comps);
    if (double r = closedness_residual(transfer, 4); r > opts.tol) {
        std::ostringstream msg;
        msg << "strictify: transfer morphism not closed, residual " << r;
        throw std::logic_error(msg.str());
    }

    // correct the nonzero transferred homotopy by the integral extension
    std::vector<GradedMap> id0 = {GradedMap::identity(h_dims)};
    HRepMorphism correction = extend_morphism(std::move(id0), transferred, honest);
    HRepMorphism quasi_iso = compose(correction, transfer);
    if (double r = closedness_residual(quasi_iso, 4); r > opts.tol) {
        std::ostringstream msg;
        msg << "strictify: composite morphism not closed, residual " << r;
        throw std::logic_error(msg.str());
    }

    // rank test: Φ_0 of the composite must induce an isomorphism on H(E)
    GradedMap phi0 = quasi_iso.component(0, {}, 0);
    for (int i = h_dims.window().lo; i <= h_dims.window().hi; ++i) {
        if (h_dims.dim(i) == 0) continue;
        Matrix induced = phi0.block(i) * split.inclusion(i);
        Eigen::JacobiSVD<Matrix> svd(induced);
        const auto& sv = svd.singularValues();
        int rank = 0;
        for (int j = 0; j < sv.size(); ++j)
            if (sv(j) > opts.rank_threshold * sv(0)) ++rank;
        if (induced.rows() != h_dims.dim(i) || rank != h_dims.dim(i)) {
            std::ostringstream msg;
            msg << "strictify: induced cohomology map not an isomorphism in degree "
                << i;
            throw std::logic_error(msg.str());
        }
    }

    return {honest, std::move(quasi_iso), std::move(split)};
}

}  // namespace hrep
