#include "hrep/models.hpp"

namespace hrep {

MappingTorusModel mapping_torus_model(int l, int n_base, int n_fib,
                                      EssentiallyAbelianFiber fiber) {
    MappingTorusModel m;
    m.bundle = std::make_shared<SampledGroupBundle>(
        SampledGroupBundle::mapping_torus(l, n_base, n_fib));
    m.fiber = fiber.rank > 0 ? std::move(fiber) : EssentiallyAbelianFiber::torus(2);
    if (m.fiber.rank != m.bundle->rank() ||
        m.fiber.components != m.bundle->components())
        throw std::invalid_argument("mapping_torus_model: fiber/bundle mismatch");
    m.x0 = 0;
    m.cutoff = make_cutoff(*m.bundle, m.x0, 0.25, 0.375);
    m.pseudo = build_pseudorep(m.bundle, m.fiber, m.cutoff, m.x0);

    std::vector<int> plateau;
    for (int x = 0; x < m.bundle->n_base(); ++x)
        if (m.cutoff[x] == 1.0) plateau.push_back(x);
    m.bump = make_bump(*m.bundle, m.x0, plateau);
    m.two_term = std::make_shared<HomotopyRep>(
        two_term_from_pseudorep(m.pseudo, m.bump));
    return m;
}

std::vector<PseudoRepEntry> pseudorep_library(int l, int n_base, int n_fib) {
    auto bundle = std::make_shared<SampledGroupBundle>(
        SampledGroupBundle::mapping_torus(l, n_base, n_fib));
    std::vector<double> cutoff = make_cutoff(*bundle, 0, 0.25, 0.375);

    std::vector<std::pair<std::string, EssentiallyAbelianFiber>> fibers;
    fibers.push_back({"torus-coordinates", EssentiallyAbelianFiber::torus(2)});
    {
        EssentiallyAbelianFiber f;
        f.rank = 2;
        f.components = 1;
        f.chars.exponents = {{2, -1}, {3, 0}};
        f.component_weights = {0, 0};
        fibers.push_back({"torus-mixed", std::move(f)});
    }
    {
        // two components: sigma twists the first character by the sign of
        // the component. The third character makes sigma faithful: with
        // only two unimodular diagonal characters the element
        // (1, (1/2, 0)) would always lie in the kernel.
        EssentiallyAbelianFiber f;
        f.rank = 2;
        f.components = 2;
        f.chars.exponents = {{1, 0}, {0, 1}, {1, 1}};
        f.component_weights = {1, 0, 0};
        fibers.push_back({"two-components", std::move(f)});
    }

    std::vector<PseudoRepEntry> out;
    for (auto& [name, fiber] : fibers) {
        auto b = bundle;
        if (fiber.components != b->components())
            b = std::make_shared<SampledGroupBundle>(
                b->n_base(), b->rank(), b->n_fib(), fiber.components,
                b->monodromy());
        out.push_back({name, b, build_pseudorep(b, fiber, cutoff, 0)});
    }
    return out;
}

std::shared_ptr<const HomotopyRep> z2_action_two_term() {
    const std::vector<std::vector<int>> mult = {{0, 1}, {1, 0}};
    const std::vector<std::vector<int>> act = {{0, 1}, {0, 1}};  // trivial
    auto g = std::make_shared<FiniteGroupoid>(
        FiniteGroupoid::action_groupoid(mult, act));

    PseudoRep p;
    p.gpd = g;
    p.dims = {1, 1};
    const int n_points = 2;
    p.map = [n_points](ArrowId a) -> Matrix {
        const int gi = static_cast<int>(a) / n_points;
        const int x = static_cast<int>(a) % n_points;
        Matrix m(1, 1);
        if (gi == 0)
            m(0, 0) = 1.0;  // units
        else
            m(0, 0) = x == 0 ? -1.0 : 2.0;  // honest sign at 0, broken at 1
        return m;
    };

    BumpFunction bump = make_bump(*g, 0, {0});
    return std::make_shared<HomotopyRep>(two_term_from_pseudorep(p, bump));
}

}  // namespace hrep
