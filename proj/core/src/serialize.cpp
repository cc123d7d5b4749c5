#include "hrep/serialize.hpp"

#include <map>

namespace hrep {

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("schema: complex scalar must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

Json matrix_to_json(const Matrix& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            row.push_back(complex_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(rows)}};
}

Matrix matrix_from_json(const Json& j) {
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    Matrix m(rows, cols);
    const Json& data = j.at("data");
    if (static_cast<Eigen::Index>(data.size()) != rows)
        throw std::invalid_argument("schema: matrix row count mismatch");
    for (Eigen::Index r = 0; r < rows; ++r) {
        if (static_cast<Eigen::Index>(data[r].size()) != cols)
            throw std::invalid_argument("schema: matrix column count mismatch");
        for (Eigen::Index c = 0; c < cols; ++c)
            m(r, c) = complex_from_json(data[r][c]);
    }
    return m;
}

Json dims_to_json(const GradedDims& d) {
    Json dims = Json::array();
    for (int i = d.window().lo; i <= d.window().hi; ++i) dims.push_back(d.dim(i));
    return Json{{"lo", d.window().lo}, {"hi", d.window().hi}, {"dims", dims}};
}

GradedDims dims_from_json(const Json& j) {
    DegreeWindow w{j.at("lo").get<int>(), j.at("hi").get<int>()};
    std::vector<int> dims = j.at("dims").get<std::vector<int>>();
    return GradedDims(w, std::move(dims));
}

Json graded_map_to_json(const GradedMap& m) {
    Json blocks = Json::array();
    for (int i = m.src().window().lo; i <= m.src().window().hi; ++i)
        blocks.push_back(Json{{"degree", i}, {"matrix", matrix_to_json(m.block(i))}});
    return Json{{"blocks", std::move(blocks)}};
}

GradedMap graded_map_from_json(const Json& j, const GradedDims& src,
                               const GradedDims& dst, int degree) {
    GradedMap m(src, dst, degree);
    for (const Json& b : j.at("blocks")) {
        const int i = b.at("degree").get<int>();
        Matrix block = matrix_from_json(b.at("matrix"));
        if (block.rows() != dst.dim(i + degree) || block.cols() != src.dim(i))
            throw std::invalid_argument("schema: graded map block shape mismatch");
        if (block.rows() > 0 && block.cols() > 0) m.block(i) = std::move(block);
    }
    return m;
}

Json groupoid_to_json(const FiniteGroupoid& g) {
    const auto& t = g.tables();
    return Json{{"type", "finite_groupoid"},
                {"n_objects", t.n_objects},
                {"src", t.src},
                {"tgt", t.tgt},
                {"units", t.units},
                {"inv", t.inv},
                {"mult", t.mult}};
}

std::shared_ptr<const FiniteGroupoid> groupoid_from_json(const Json& j) {
    if (j.at("type") != "finite_groupoid")
        throw std::invalid_argument("schema: expected type 'finite_groupoid'");
    FiniteGroupoid::Tables t;
    t.n_objects = j.at("n_objects").get<int>();
    t.src = j.at("src").get<std::vector<int>>();
    t.tgt = j.at("tgt").get<std::vector<int>>();
    t.units = j.at("units").get<std::vector<ArrowId>>();
    t.inv = j.at("inv").get<std::vector<ArrowId>>();
    t.mult = j.at("mult").get<std::vector<std::vector<ArrowId>>>();
    return std::make_shared<FiniteGroupoid>(std::move(t));
}

Json bundle_to_json(const SampledGroupBundle& b) {
    return Json{{"type", "sampled_group_bundle"},
                {"n_base", b.n_base()},
                {"rank", b.rank()},
                {"n_fib", b.n_fib()},
                {"components", b.components()},
                {"monodromy", b.monodromy()},
                {"gluing_exponent", b.gluing_exponent()}};
}

std::shared_ptr<const SampledGroupBundle> bundle_from_json(const Json& j) {
    if (j.at("type") != "sampled_group_bundle")
        throw std::invalid_argument("schema: expected type 'sampled_group_bundle'");
    const int l = j.value("gluing_exponent", 0);
    auto mono = j.at("monodromy").get<std::vector<std::vector<int>>>();
    const int n_base = j.at("n_base").get<int>();
    const int n_fib = j.at("n_fib").get<int>();
    if (l != 0)
        return std::make_shared<SampledGroupBundle>(
            SampledGroupBundle::mapping_torus(l, n_base, n_fib));
    return std::make_shared<SampledGroupBundle>(
        n_base, j.at("rank").get<int>(), n_fib, j.at("components").get<int>(),
        std::move(mono));
}

Json rep_to_json(const HomotopyRep& rep, double tolerance) {
    const auto* fg = dynamic_cast<const FiniteGroupoid*>(&rep.groupoid());
    if (!fg)
        throw std::invalid_argument(
            "rep_to_json: dense serialization needs a finite groupoid");
    Json fibers = Json::array();
    for (int x = 0; x < fg->num_objects(); ++x)
        fibers.push_back(dims_to_json(rep.fiber(x)));

    Json ops = Json::array();
    for (int k = 0; k <= rep.k_max(); ++k) {
        Json entries = Json::array();
        for_each_composable(*fg, k, [&](std::span<const ArrowId> t, int obj) {
            Json e{{"tuple", std::vector<ArrowId>(t.begin(), t.end())},
                   {"map", graded_map_to_json(rep.op(k, t, obj))}};
            if (k == 0) e["obj"] = obj;
            entries.push_back(std::move(e));
        });
        ops.push_back(Json{{"k", k}, {"entries", std::move(entries)}});
    }
    return Json{{"type", "homotopy_rep"},
                {"tolerance", tolerance},
                {"k_max", rep.k_max()},
                {"groupoid", groupoid_to_json(*fg)},
                {"fibers", std::move(fibers)},
                {"ops", std::move(ops)}};
}

LoadedRep rep_from_json(const Json& j) {
    if (j.at("type") != "homotopy_rep")
        throw std::invalid_argument("schema: expected type 'homotopy_rep'");
    auto gpd = groupoid_from_json(j.at("groupoid"));
    const int k_max = j.at("k_max").get<int>();
    std::vector<GradedDims> fibers;
    for (const Json& f : j.at("fibers")) fibers.push_back(dims_from_json(f));
    if (static_cast<int>(fibers.size()) != gpd->num_objects())
        throw std::invalid_argument("schema: fiber count != object count");

    using Key = std::vector<ArrowId>;
    auto tables = std::make_shared<std::vector<std::map<Key, GradedMap>>>();
    tables->resize(k_max + 1);
    auto obj_table = std::make_shared<std::map<int, GradedMap>>();
    for (const Json& group : j.at("ops")) {
        const int k = group.at("k").get<int>();
        if (k < 0 || k > k_max)
            throw std::invalid_argument("schema: operator index k outside range");
        for (const Json& e : group.at("entries")) {
            Key tuple = e.at("tuple").get<Key>();
            if (static_cast<int>(tuple.size()) != k)
                throw std::invalid_argument("schema: tuple length != k");
            int src_obj, tgt_obj;
            if (k == 0) {
                src_obj = tgt_obj = e.at("obj").get<int>();
            } else {
                for (size_t i = 0; i + 1 < tuple.size(); ++i)
                    if (gpd->source(tuple[i]) != gpd->target(tuple[i + 1]))
                        throw std::invalid_argument("schema: tuple not composable");
                src_obj = gpd->source(tuple.back());
                tgt_obj = gpd->target(tuple.front());
            }
            GradedMap m = graded_map_from_json(e.at("map"), fibers[src_obj],
                                               fibers[tgt_obj], 1 - k);
            if (k == 0)
                obj_table->emplace(src_obj, std::move(m));
            else
                (*tables)[k].emplace(std::move(tuple), std::move(m));
        }
    }

    auto fibers_sp = std::make_shared<std::vector<GradedDims>>(fibers);
    auto gpd_base = std::static_pointer_cast<const Groupoid>(gpd);
    OpFamily ops = [tables, obj_table, fibers_sp, gpd_base](
                       int k, std::span<const ArrowId> t, int obj) -> GradedMap {
        if (k == 0) {
            auto it = obj_table->find(obj);
            if (it == obj_table->end())
                throw std::invalid_argument("schema: missing differential entry");
            return it->second;
        }
        std::vector<ArrowId> key(t.begin(), t.end());
        auto it = (*tables)[k].find(key);
        if (it == (*tables)[k].end())
            throw std::invalid_argument("schema: missing operator entry");
        return it->second;
    };
    LoadedRep out;
    out.rep = std::make_shared<HomotopyRep>(gpd_base, std::move(fibers), k_max,
                                            std::move(ops));
    out.tolerance = j.at("tolerance").get<double>();
    return out;
}

Json morphism_to_json(const HRepMorphism& phi, double tolerance) {
    const auto* fg = dynamic_cast<const FiniteGroupoid*>(&phi.src().groupoid());
    if (!fg)
        throw std::invalid_argument(
            "morphism_to_json: dense serialization needs a finite groupoid");
    Json comps = Json::array();
    for (int k = 0; k <= phi.k_bound(); ++k) {
        Json entries = Json::array();
        for_each_composable(*fg, k, [&](std::span<const ArrowId> t, int obj) {
            Json e{{"tuple", std::vector<ArrowId>(t.begin(), t.end())},
                   {"map", graded_map_to_json(phi.component(k, t, obj))}};
            if (k == 0) e["obj"] = obj;
            entries.push_back(std::move(e));
        });
        comps.push_back(Json{{"k", k}, {"entries", std::move(entries)}});
    }
    return Json{{"type", "hrep_morphism"},
                {"tolerance", tolerance},
                {"degree", phi.degree()},
                {"k_bound", phi.k_bound()},
                {"source", rep_to_json(phi.src(), tolerance)},
                {"target", rep_to_json(phi.dst(), tolerance)},
                {"components", std::move(comps)}};
}

LoadedMorphism morphism_from_json(const Json& j) {
    if (j.at("type") != "hrep_morphism")
        throw std::invalid_argument("schema: expected type 'hrep_morphism'");
    LoadedRep src = rep_from_json(j.at("source"));
    LoadedRep dst = rep_from_json(j.at("target"));
    const int degree = j.at("degree").get<int>();
    const int k_bound = j.at("k_bound").get<int>();
    const Groupoid& G = src.rep->groupoid();

    using Key = std::vector<ArrowId>;
    auto tables = std::make_shared<std::vector<std::map<Key, GradedMap>>>();
    auto obj_table = std::make_shared<std::map<int, GradedMap>>();
    tables->resize(std::max(k_bound + 1, 1));
    for (const Json& group : j.at("components")) {
        const int k = group.at("k").get<int>();
        if (k < 0 || k > k_bound)
            throw std::invalid_argument("schema: component index outside k_bound");
        for (const Json& e : group.at("entries")) {
            Key tuple = e.at("tuple").get<Key>();
            int src_obj =
                k == 0 ? e.at("obj").get<int>() : G.source(tuple.back());
            int tgt_obj = k == 0 ? src_obj : G.target(tuple.front());
            GradedMap m =
                graded_map_from_json(e.at("map"), src.rep->fiber(src_obj),
                                     dst.rep->fiber(tgt_obj), degree - k);
            if (k == 0)
                obj_table->emplace(src_obj, std::move(m));
            else
                (*tables)[k].emplace(std::move(tuple), std::move(m));
        }
    }
    auto srep = src.rep;
    MorFamily comps = [tables, obj_table](int k, std::span<const ArrowId> t,
                                          int obj) -> GradedMap {
        if (k == 0) {
            auto it = obj_table->find(obj);
            if (it == obj_table->end())
                throw std::invalid_argument("schema: missing morphism entry");
            return it->second;
        }
        std::vector<ArrowId> key(t.begin(), t.end());
        auto it = (*tables)[k].find(key);
        if (it == (*tables)[k].end())
            throw std::invalid_argument("schema: missing morphism entry");
        return it->second;
    };
    LoadedMorphism out{
        HRepMorphism(src.rep, dst.rep, degree, k_bound, std::move(comps)),
        j.at("tolerance").get<double>()};
    return out;
}

}  // namespace hrep
