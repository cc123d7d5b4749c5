#include "hrep/groupoid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace hrep {

std::vector<ArrowId> Groupoid::verification_fiber(int x, int /*k*/,
                                                  std::int64_t /*tuple_budget*/) const {
    return target_fiber(x);
}

// ---------------------------------------------------------------------------
// FiniteGroupoid

FiniteGroupoid::FiniteGroupoid(Tables t) : t_(std::move(t)) {
    const int n_obj = t_.n_objects;
    const ArrowId n_arr = static_cast<ArrowId>(t_.src.size());
    if (t_.tgt.size() != t_.src.size() || t_.inv.size() != t_.src.size() ||
        static_cast<int>(t_.units.size()) != n_obj ||
        t_.mult.size() != t_.src.size())
        throw std::invalid_argument("FiniteGroupoid: inconsistent table sizes");

    fibers_.resize(n_obj);
    for (ArrowId g = 0; g < n_arr; ++g) {
        if (t_.src[g] < 0 || t_.src[g] >= n_obj || t_.tgt[g] < 0 || t_.tgt[g] >= n_obj)
            throw std::invalid_argument("FiniteGroupoid: arrow endpoint out of range");
        fibers_[t_.tgt[g]].push_back(g);
    }

    auto defined = [&](ArrowId g, ArrowId h) { return t_.mult[g][h] >= 0; };

    for (ArrowId g = 0; g < n_arr; ++g) {
        if (static_cast<ArrowId>(t_.mult[g].size()) != n_arr)
            throw std::invalid_argument("FiniteGroupoid: ragged multiplication table");
        for (ArrowId h = 0; h < n_arr; ++h) {
            const bool composable = t_.src[g] == t_.tgt[h];
            if (composable != defined(g, h))
                throw std::invalid_argument(
                    "FiniteGroupoid: compose defined iff source(g)=target(h) violated");
            if (!composable) continue;
            ArrowId gh = t_.mult[g][h];
            if (t_.src[gh] != t_.src[h] || t_.tgt[gh] != t_.tgt[g])
                throw std::invalid_argument("FiniteGroupoid: composite endpoints wrong");
        }
    }
    // associativity on all composable triples
    for (ArrowId g = 0; g < n_arr; ++g)
        for (ArrowId h : fibers_[t_.src[g]])
            for (ArrowId k : fibers_[t_.src[h]])
                if (t_.mult[t_.mult[g][h]][k] != t_.mult[g][t_.mult[h][k]])
                    throw std::invalid_argument("FiniteGroupoid: associativity fails");
    // unit and inverse laws
    for (int x = 0; x < n_obj; ++x) {
        ArrowId u = t_.units[x];
        if (t_.src[u] != x || t_.tgt[u] != x)
            throw std::invalid_argument("FiniteGroupoid: unit is not an endo-arrow");
    }
    for (ArrowId g = 0; g < n_arr; ++g) {
        if (t_.mult[t_.units[t_.tgt[g]]][g] != g || t_.mult[g][t_.units[t_.src[g]]] != g)
            throw std::invalid_argument("FiniteGroupoid: unit law fails");
        ArrowId gi = t_.inv[g];
        if (t_.src[gi] != t_.tgt[g] || t_.tgt[gi] != t_.src[g] ||
            t_.mult[g][gi] != t_.units[t_.tgt[g]] || t_.mult[gi][g] != t_.units[t_.src[g]])
            throw std::invalid_argument("FiniteGroupoid: inverse law fails");
    }
}

ArrowId FiniteGroupoid::compose(ArrowId g, ArrowId h) const {
    if (t_.src[g] != t_.tgt[h])
        throw std::invalid_argument("FiniteGroupoid::compose: arrows not composable");
    return t_.mult[g][h];
}

FiniteGroupoid FiniteGroupoid::group(const std::vector<std::vector<int>>& mult) {
    const int n = static_cast<int>(mult.size());
    Tables t;
    t.n_objects = 1;
    t.src.assign(n, 0);
    t.tgt.assign(n, 0);
    t.units = {0};
    t.inv.resize(n);
    t.mult.assign(n, std::vector<ArrowId>(n, -1));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            t.mult[a][b] = mult[a][b];
            if (mult[a][b] == 0) t.inv[a] = b;
        }
    return FiniteGroupoid(std::move(t));
}

FiniteGroupoid FiniteGroupoid::cyclic_group(int n) {
    std::vector<std::vector<int>> m(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) m[a][b] = (a + b) % n;
    return group(m);
}

namespace {
// permutations of {0,1,2} in a fixed order; index 0 is the identity
const int kS3Perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                            {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};

int s3_mult_index(int a, int b) {
    int c[3];
    for (int i = 0; i < 3; ++i) c[i] = kS3Perms[a][kS3Perms[b][i]];
    for (int j = 0; j < 6; ++j)
        if (c[0] == kS3Perms[j][0] && c[1] == kS3Perms[j][1] && c[2] == kS3Perms[j][2])
            return j;
    return -1;
}
}  // namespace

FiniteGroupoid FiniteGroupoid::symmetric_s3() {
    std::vector<std::vector<int>> m(6, std::vector<int>(6));
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) m[a][b] = s3_mult_index(a, b);
    return group(m);
}

FiniteGroupoid FiniteGroupoid::pair_groupoid(int n) {
    // arrow (i, j): j -> i, id = i*n + j
    Tables t;
    t.n_objects = n;
    const ArrowId n_arr = static_cast<ArrowId>(n) * n;
    t.src.resize(n_arr);
    t.tgt.resize(n_arr);
    t.inv.resize(n_arr);
    t.units.resize(n);
    t.mult.assign(n_arr, std::vector<ArrowId>(n_arr, -1));
    for (int i = 0; i < n; ++i) {
        t.units[i] = static_cast<ArrowId>(i) * n + i;
        for (int j = 0; j < n; ++j) {
            ArrowId g = static_cast<ArrowId>(i) * n + j;
            t.src[g] = j;
            t.tgt[g] = i;
            t.inv[g] = static_cast<ArrowId>(j) * n + i;
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                t.mult[static_cast<ArrowId>(i) * n + j][static_cast<ArrowId>(j) * n + k] =
                    static_cast<ArrowId>(i) * n + k;
    return FiniteGroupoid(std::move(t));
}

FiniteGroupoid FiniteGroupoid::action_groupoid(const std::vector<std::vector<int>>& mult,
                                               const std::vector<std::vector<int>>& act) {
    const int ng = static_cast<int>(mult.size());
    const int nx = static_cast<int>(act[0].size());
    // arrow (g, x): x -> act[g][x], id = g*nx + x
    Tables t;
    t.n_objects = nx;
    const ArrowId n_arr = static_cast<ArrowId>(ng) * nx;
    t.src.resize(n_arr);
    t.tgt.resize(n_arr);
    t.inv.resize(n_arr);
    t.units.resize(nx);
    t.mult.assign(n_arr, std::vector<ArrowId>(n_arr, -1));
    std::vector<int> ginv(ng);
    for (int a = 0; a < ng; ++a)
        for (int b = 0; b < ng; ++b)
            if (mult[a][b] == 0) ginv[a] = b;
    for (int g = 0; g < ng; ++g)
        for (int x = 0; x < nx; ++x) {
            ArrowId a = static_cast<ArrowId>(g) * nx + x;
            t.src[a] = x;
            t.tgt[a] = act[g][x];
            t.inv[a] = static_cast<ArrowId>(ginv[g]) * nx + act[g][x];
        }
    for (int x = 0; x < nx; ++x) t.units[x] = static_cast<ArrowId>(0) * nx + x;
    for (int g1 = 0; g1 < ng; ++g1)
        for (int g2 = 0; g2 < ng; ++g2)
            for (int x = 0; x < nx; ++x) {
                // (g1, g2·x) ∘ (g2, x) = (g1 g2, x)
                ArrowId a = static_cast<ArrowId>(g1) * nx + act[g2][x];
                ArrowId b = static_cast<ArrowId>(g2) * nx + x;
                t.mult[a][b] = static_cast<ArrowId>(mult[g1][g2]) * nx + x;
            }
    return FiniteGroupoid(std::move(t));
}

FiniteGroupoid FiniteGroupoid::disjoint_union(const FiniteGroupoid& a,
                                              const FiniteGroupoid& b) {
    const auto& ta = a.tables();
    const auto& tb = b.tables();
    Tables t;
    t.n_objects = ta.n_objects + tb.n_objects;
    const ArrowId na = a.num_arrows(), nb = b.num_arrows();
    t.src = ta.src;
    t.tgt = ta.tgt;
    t.inv = ta.inv;
    for (ArrowId g = 0; g < nb; ++g) {
        t.src.push_back(tb.src[g] + ta.n_objects);
        t.tgt.push_back(tb.tgt[g] + ta.n_objects);
        t.inv.push_back(tb.inv[g] + na);
    }
    t.units = ta.units;
    for (ArrowId u : tb.units) t.units.push_back(u + na);
    t.mult.assign(na + nb, std::vector<ArrowId>(na + nb, -1));
    for (ArrowId g = 0; g < na; ++g)
        for (ArrowId h = 0; h < na; ++h) t.mult[g][h] = ta.mult[g][h];
    for (ArrowId g = 0; g < nb; ++g)
        for (ArrowId h = 0; h < nb; ++h)
            t.mult[na + g][na + h] = tb.mult[g][h] < 0 ? -1 : tb.mult[g][h] + na;
    return FiniteGroupoid(std::move(t));
}

// ---------------------------------------------------------------------------
// SampledGroupBundle

SampledGroupBundle::SampledGroupBundle(int n_base, int rank, int n_fib, int components,
                                       std::vector<std::vector<int>> monodromy)
    : n_base_(n_base),
      rank_(rank),
      n_fib_(n_fib),
      components_(components),
      monodromy_(std::move(monodromy)) {
    if (n_base < 4 || n_fib < 4)
        throw std::invalid_argument("SampledGroupBundle: resolutions must be >= 4");
    if (rank < 0 || components < 1)
        throw std::invalid_argument("SampledGroupBundle: bad fiber descriptor");
    if (static_cast<int>(monodromy_.size()) != rank)
        throw std::invalid_argument("SampledGroupBundle: monodromy size mismatch");
    // invertibility over the integers: |det| == 1
    if (rank > 0) {
        Eigen::MatrixXd m(rank, rank);
        for (int i = 0; i < rank; ++i) {
            if (static_cast<int>(monodromy_[i].size()) != rank)
                throw std::invalid_argument("SampledGroupBundle: ragged monodromy");
            for (int j = 0; j < rank; ++j) m(i, j) = monodromy_[i][j];
        }
        if (std::lround(std::abs(m.determinant())) != 1)
            throw std::invalid_argument(
                "SampledGroupBundle: monodromy not invertible over Z");
    }
    fiber_size_ = components_;
    for (int j = 0; j < rank_; ++j) fiber_size_ *= n_fib_;

    fibers_.resize(n_base_);
    for (int x = 0; x < n_base_; ++x) {
        fibers_[x].resize(fiber_size_);
        std::iota(fibers_[x].begin(), fibers_[x].end(),
                  static_cast<ArrowId>(x) * fiber_size_);
    }
}

SampledGroupBundle SampledGroupBundle::mapping_torus(int l, int n_base, int n_fib) {
    SampledGroupBundle b(n_base, 2, n_fib, 1, {{1, 0}, {l, 1}});
    b.gluing_exponent_ = l;
    return b;
}

int SampledGroupBundle::element_component(ArrowId e) const {
    ArrowId torus = 1;
    for (int j = 0; j < rank_; ++j) torus *= n_fib_;
    return static_cast<int>(e / torus);
}

std::vector<int> SampledGroupBundle::element_grid(ArrowId e) const {
    std::vector<int> idx(rank_);
    for (int j = 0; j < rank_; ++j) {
        idx[j] = static_cast<int>(e % n_fib_);
        e /= n_fib_;
    }
    return idx;
}

std::vector<double> SampledGroupBundle::element_angles(ArrowId e) const {
    auto idx = element_grid(e);
    std::vector<double> a(rank_);
    for (int j = 0; j < rank_; ++j) a[j] = static_cast<double>(idx[j]) / n_fib_;
    return a;
}

ArrowId SampledGroupBundle::element_from(int component, std::span<const int> grid) const {
    ArrowId e = component;
    for (int j = rank_ - 1; j >= 0; --j) {
        int v = ((grid[j] % n_fib_) + n_fib_) % n_fib_;
        e = e * n_fib_ + v;
    }
    return e;
}

ArrowId SampledGroupBundle::inverse(ArrowId g) const {
    int x = source(g);
    ArrowId e = g % fiber_size_;
    auto idx = element_grid(e);
    for (int& v : idx) v = (n_fib_ - v) % n_fib_;
    int comp = (components_ - element_component(e)) % components_;
    return arrow(x, element_from(comp, idx));
}

ArrowId SampledGroupBundle::compose(ArrowId g, ArrowId h) const {
    int x = source(g);
    if (x != source(h))
        throw std::invalid_argument("SampledGroupBundle::compose: different fibers");
    ArrowId eg = g % fiber_size_, eh = h % fiber_size_;
    auto ig = element_grid(eg);
    auto ih = element_grid(eh);
    for (int j = 0; j < rank_; ++j) ig[j] = (ig[j] + ih[j]) % n_fib_;
    int comp = (element_component(eg) + element_component(eh)) % components_;
    return arrow(x, element_from(comp, ig));
}

std::vector<ArrowId> SampledGroupBundle::verification_fiber(
    int x, int k, std::int64_t tuple_budget) const {
    if (k <= 1 || tuple_budget <= 0) return target_fiber(x);
    const std::int64_t per_object = std::max<std::int64_t>(1, tuple_budget / n_base_);
    // thin the torus grid by a divisor stride so that |subfiber|^k fits
    int stride = 1;
    auto sub_count = [&](int s) {
        std::int64_t c = components_;
        for (int j = 0; j < rank_; ++j) c *= n_fib_ / s;
        return c;
    };
    auto tuples = [&](int s) {
        std::int64_t t = 1, c = sub_count(s);
        for (int i = 0; i < k; ++i) {
            if (t > per_object / std::max<std::int64_t>(c, 1) + 1) return per_object + 1;
            t *= c;
        }
        return t;
    };
    while (stride < n_fib_ && (n_fib_ % stride != 0 || tuples(stride) > per_object))
        ++stride;
    if (n_fib_ % stride != 0) stride = n_fib_;

    std::vector<ArrowId> out;
    out.reserve(sub_count(stride));
    std::vector<int> idx(rank_, 0);
    for (int comp = 0; comp < components_; ++comp) {
        std::fill(idx.begin(), idx.end(), 0);
        while (true) {
            out.push_back(arrow(x, element_from(comp, idx)));
            int j = 0;
            for (; j < rank_; ++j) {
                idx[j] += stride;
                if (idx[j] < n_fib_) break;
                idx[j] = 0;
            }
            if (j == rank_) break;
        }
    }
    return out;
}

ArrowId SampledGroupBundle::apply_monodromy(ArrowId element) const {
    auto idx = element_grid(element);
    std::vector<int> out(rank_, 0);
    for (int i = 0; i < rank_; ++i) {
        long long v = 0;
        for (int j = 0; j < rank_; ++j)
            v += static_cast<long long>(monodromy_[i][j]) * idx[j];
        out[i] = static_cast<int>(((v % n_fib_) + n_fib_) % n_fib_);
    }
    return element_from(element_component(element), out);
}

// ---------------------------------------------------------------------------
// tuple enumeration, Haar, orbits

namespace {
void extend_tuples(const Groupoid& G, int k, std::vector<ArrowId>& tuple,
                   const std::function<std::vector<ArrowId>(int)>& fiber_of,
                   const std::function<void(std::span<const ArrowId>, int)>& fn) {
    if (static_cast<int>(tuple.size()) == k) {
        fn(tuple, G.target(tuple.front()));
        return;
    }
    const int x = G.source(tuple.back());
    for (ArrowId g : fiber_of(x)) {
        tuple.push_back(g);
        extend_tuples(G, k, tuple, fiber_of, fn);
        tuple.pop_back();
    }
}

void enumerate(const Groupoid& G, int k,
               const std::function<std::vector<ArrowId>(int)>& fiber_of,
               const std::function<void(std::span<const ArrowId>, int)>& fn) {
    if (k < 0) throw std::invalid_argument("composable tuples: k must be >= 0");
    if (k == 0) {
        for (int x = 0; x < G.num_objects(); ++x) fn({}, x);
        return;
    }
    std::vector<ArrowId> tuple;
    tuple.reserve(k);
    for (int x = 0; x < G.num_objects(); ++x)
        for (ArrowId g : fiber_of(x)) {
            tuple.push_back(g);
            extend_tuples(G, k, tuple, fiber_of, fn);
            tuple.pop_back();
        }
}
}  // namespace

void for_each_composable(const Groupoid& G, int k,
                         const std::function<void(std::span<const ArrowId>, int)>& fn) {
    enumerate(G, k, [&](int x) { return G.target_fiber(x); }, fn);
}

void for_each_composable_sampled(
    const Groupoid& G, int k, std::int64_t tuple_budget,
    const std::function<void(std::span<const ArrowId>, int)>& fn) {
    enumerate(G, k, [&](int x) { return G.verification_fiber(x, k, tuple_budget); }, fn);
}

bool same_groupoid(const Groupoid& a, const Groupoid& b) {
    if (&a == &b) return true;
    if (const auto* fa = dynamic_cast<const FiniteGroupoid*>(&a)) {
        const auto* fb = dynamic_cast<const FiniteGroupoid*>(&b);
        if (!fb) return false;
        const auto& ta = fa->tables();
        const auto& tb = fb->tables();
        return ta.n_objects == tb.n_objects && ta.src == tb.src &&
               ta.tgt == tb.tgt && ta.units == tb.units && ta.inv == tb.inv &&
               ta.mult == tb.mult;
    }
    if (const auto* ba = dynamic_cast<const SampledGroupBundle*>(&a)) {
        const auto* bb = dynamic_cast<const SampledGroupBundle*>(&b);
        return bb && ba->n_base() == bb->n_base() && ba->rank() == bb->rank() &&
               ba->n_fib() == bb->n_fib() &&
               ba->components() == bb->components() &&
               ba->monodromy() == bb->monodromy();
    }
    return false;
}

std::int64_t count_composable(const Groupoid& G, int k) {
    std::int64_t n = 0;
    for_each_composable(G, k, [&](std::span<const ArrowId>, int) { ++n; });
    return n;
}

Matrix haar_integrate(const Groupoid& G, int x, const std::function<Matrix(ArrowId)>& f) {
    const auto& fiber = G.target_fiber(x);
    if (fiber.empty())
        throw std::invalid_argument("haar_integrate: empty target-fiber");
    Matrix acc = f(fiber.front());
    for (size_t i = 1; i < fiber.size(); ++i) acc += f(fiber[i]);
    return acc / static_cast<double>(fiber.size());
}

namespace {
int uf_find(std::vector<int>& p, int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
}
}  // namespace

OrbitPartition orbits(const Groupoid& G) {
    std::vector<int> parent(G.num_objects());
    std::iota(parent.begin(), parent.end(), 0);
    for (ArrowId g = 0; g < G.num_arrows(); ++g) {
        int a = uf_find(parent, G.source(g));
        int b = uf_find(parent, G.target(g));
        if (a != b) parent[a] = b;
    }
    OrbitPartition out;
    out.block.assign(G.num_objects(), -1);
    for (int x = 0; x < G.num_objects(); ++x) {
        int r = uf_find(parent, x);
        if (out.block[r] < 0) {
            out.block[r] = static_cast<int>(out.orbits.size());
            out.orbits.emplace_back();
        }
        out.block[x] = out.block[r];
        out.orbits[out.block[x]].push_back(x);
    }
    return out;
}

std::vector<ArrowId> isotropy(const Groupoid& G, int x) {
    std::vector<ArrowId> out;
    for (ArrowId g : G.target_fiber(x))
        if (G.source(g) == x) out.push_back(g);
    return out;
}

// ---------------------------------------------------------------------------
// bump functions

namespace {
double circ_dist(double a, double b) {
    double d = std::abs(a - b);
    return std::min(d, 1.0 - d);
}

double shape(double lin, BumpProfile profile) {
    lin = std::clamp(lin, 0.0, 1.0);
    if (profile == BumpProfile::RaisedCosine) return 0.5 * (1.0 - std::cos(M_PI * lin));
    return lin;
}
}  // namespace

BumpFunction make_bump(const Groupoid& G, int x0, const std::vector<int>& carrier,
                       BumpProfile profile) {
    const auto part = orbits(G);
    std::set<int> in_u(carrier.begin(), carrier.end());
    // invariance: U is a union of orbit blocks
    std::set<int> blocks;
    for (int x : carrier) blocks.insert(part.block[x]);
    for (int x = 0; x < G.num_objects(); ++x)
        if (blocks.count(part.block[x]) && !in_u.count(x))
            throw std::invalid_argument("make_bump: carrier set is not G-invariant");
    for (int x : part.orbits[part.block[x0]])
        if (!in_u.count(x))
            throw std::invalid_argument("make_bump: carrier does not contain orbit(x0)");

    BumpFunction c;
    c.values.assign(G.num_objects(), 1.0);
    c.carrier = carrier;

    if (const auto* bundle = dynamic_cast<const SampledGroupBundle*>(&G)) {
        const double t0 = bundle->base_param(x0);
        double radius = 0.5;
        for (int x = 0; x < G.num_objects(); ++x)
            if (!in_u.count(x)) radius = std::min(radius, circ_dist(bundle->base_param(x), t0));
        for (int x = 0; x < G.num_objects(); ++x)
            c.values[x] = shape(circ_dist(bundle->base_param(x), t0) / radius, profile);
    } else {
        for (int x : part.orbits[part.block[x0]]) c.values[x] = 0.0;
    }
    for (int x = 0; x < G.num_objects(); ++x)
        if (c.values[x] == 0.0) c.zero_set.push_back(x);
    return c;
}

std::vector<double> make_cutoff(const SampledGroupBundle& B, int x0, double plateau,
                                double support, BumpProfile profile) {
    if (!(plateau > 0.0 && plateau < support && support <= 0.5))
        throw std::invalid_argument("make_cutoff: need 0 < plateau < support <= 1/2");
    std::vector<double> c(B.n_base());
    const double t0 = B.base_param(x0);
    for (int x = 0; x < B.n_base(); ++x) {
        double d = circ_dist(B.base_param(x), t0);
        if (d <= plateau)
            c[x] = 1.0;
        else if (d >= support)
            c[x] = 0.0;
        else
            c[x] = 1.0 - shape((d - plateau) / (support - plateau), profile);
    }
    return c;
}

}  // namespace hrep
