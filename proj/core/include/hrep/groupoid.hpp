#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hrep/graded.hpp"

namespace hrep {

using ArrowId = std::int64_t;

/// A groupoid with finitely many objects whose arrows can be enumerated
/// fiberwise. Two concrete backends: explicit multiplication tables
/// (FiniteGroupoid) and sampled bundles of compact groups over a
/// discretized circle (SampledGroupBundle). The Haar system is the
/// normalized counting measure on each target-fiber.
class Groupoid {
public:
    virtual ~Groupoid() = default;

    virtual int num_objects() const = 0;
    virtual ArrowId num_arrows() const = 0;
    virtual int source(ArrowId g) const = 0;
    virtual int target(ArrowId g) const = 0;
    virtual ArrowId unit(int x) const = 0;
    virtual ArrowId inverse(ArrowId g) const = 0;
    /// Defined iff source(g) == target(h).
    virtual ArrowId compose(ArrowId g, ArrowId h) const = 0;
    /// All arrows with target x.
    virtual const std::vector<ArrowId>& target_fiber(int x) const = 0;

    /// Arrows of the fiber at x to use when enumerating k-tuples for
    /// verification. Finite backends return the full fiber; sampled
    /// bundles thin the fiber grid to a subgroup so that the tuple count
    /// per object stays within `tuple_budget`.
    virtual std::vector<ArrowId> verification_fiber(int x, int k,
                                                    std::int64_t tuple_budget) const;

    virtual bool is_group_bundle() const { return false; }
};

/// Exact finite groupoid given by tables. The constructor checks all
/// axioms (associativity, units, inverses) exhaustively.
class FiniteGroupoid : public Groupoid {
public:
    struct Tables {
        int n_objects = 0;
        std::vector<int> src, tgt;          // per arrow
        std::vector<ArrowId> units;         // per object
        std::vector<ArrowId> inv;           // per arrow
        // compose[g][h] for composable pairs, -1 otherwise
        std::vector<std::vector<ArrowId>> mult;
    };

    explicit FiniteGroupoid(Tables t);

    int num_objects() const override { return t_.n_objects; }
    ArrowId num_arrows() const override { return static_cast<ArrowId>(t_.src.size()); }
    int source(ArrowId g) const override { return t_.src[g]; }
    int target(ArrowId g) const override { return t_.tgt[g]; }
    ArrowId unit(int x) const override { return t_.units[x]; }
    ArrowId inverse(ArrowId g) const override { return t_.inv[g]; }
    ArrowId compose(ArrowId g, ArrowId h) const override;
    const std::vector<ArrowId>& target_fiber(int x) const override {
        return fibers_[x];
    }

    const Tables& tables() const { return t_; }

    /// One-object groupoid from a group multiplication table
    /// (mult[a][b] = ab, element 0 the identity).
    static FiniteGroupoid group(const std::vector<std::vector<int>>& mult);
    static FiniteGroupoid cyclic_group(int n);
    static FiniteGroupoid symmetric_s3();
    /// Objects 0..n-1, one arrow j -> i for every pair.
    static FiniteGroupoid pair_groupoid(int n);
    /// Action groupoid of the group `mult` on points 0..n_points-1;
    /// act[g][x] is the image of x under g. Arrows are (g, x): x -> g·x.
    static FiniteGroupoid action_groupoid(const std::vector<std::vector<int>>& mult,
                                          const std::vector<std::vector<int>>& act);
    static FiniteGroupoid disjoint_union(const FiniteGroupoid& a,
                                         const FiniteGroupoid& b);

private:
    Tables t_;
    std::vector<std::vector<ArrowId>> fibers_;
};

/// Locally trivial bundle of compact groups over a uniformly sampled
/// circle. Fibers are Z_components x T^rank, with the torus sampled on a
/// uniform grid of n_fib points per coordinate (a finite subgroup, so
/// composition is exact). Arrows never straddle the seam; the integer
/// monodromy matrix records how fiber angle coordinates glue at t -> t+1.
class SampledGroupBundle : public Groupoid {
public:
    SampledGroupBundle(int n_base, int rank, int n_fib, int components,
                       std::vector<std::vector<int>> monodromy);

    /// The T^2-bundle over S^1 glued by (a, b; t) ~ (a, a^l b; t + l);
    /// monodromy [[1, 0], [l, 1]] on angle coordinates.
    static SampledGroupBundle mapping_torus(int l, int n_base, int n_fib);

    int num_objects() const override { return n_base_; }
    ArrowId num_arrows() const override {
        return static_cast<ArrowId>(n_base_) * fiber_size_;
    }
    int source(ArrowId g) const override { return static_cast<int>(g / fiber_size_); }
    int target(ArrowId g) const override { return source(g); }
    ArrowId unit(int x) const override {
        return static_cast<ArrowId>(x) * fiber_size_;
    }
    ArrowId inverse(ArrowId g) const override;
    ArrowId compose(ArrowId g, ArrowId h) const override;
    const std::vector<ArrowId>& target_fiber(int x) const override {
        return fibers_[x];
    }
    std::vector<ArrowId> verification_fiber(int x, int k,
                                            std::int64_t tuple_budget) const override;
    bool is_group_bundle() const override { return true; }

    int n_base() const { return n_base_; }
    int rank() const { return rank_; }
    int n_fib() const { return n_fib_; }
    int components() const { return components_; }
    ArrowId fiber_size() const { return fiber_size_; }
    const std::vector<std::vector<int>>& monodromy() const { return monodromy_; }
    int gluing_exponent() const { return gluing_exponent_; }

    /// Base parameter t in [0, 1) of object x.
    double base_param(int x) const { return static_cast<double>(x) / n_base_; }

    /// Fiber element decoding (index within a fiber, 0 <= e < fiber_size).
    int element_component(ArrowId e) const;
    std::vector<int> element_grid(ArrowId e) const;       // per-coordinate indices
    std::vector<double> element_angles(ArrowId e) const;  // in [0, 1)
    ArrowId element_from(int component, std::span<const int> grid) const;
    /// Arrow at object x with the given fiber element index.
    ArrowId arrow(int x, ArrowId element) const {
        return static_cast<ArrowId>(x) * fiber_size_ + element;
    }
    ArrowId element_of(ArrowId g) const { return g % fiber_size_; }

    /// Image of a fiber element under the seam gluing (grid indices are
    /// mapped exactly by the integer monodromy matrix).
    ArrowId apply_monodromy(ArrowId element) const;

private:
    int n_base_, rank_, n_fib_, components_;
    ArrowId fiber_size_;
    std::vector<std::vector<int>> monodromy_;
    int gluing_exponent_ = 0;  // set for mapping_torus bundles
    std::vector<std::vector<ArrowId>> fibers_;
};

/// True when the two groupoids are the same object or structurally equal
/// (identical finite tables, or sampled bundles with identical
/// parameters). Morphism endpoints loaded from separate files compare
/// equal under this predicate.
bool same_groupoid(const Groupoid& a, const Groupoid& b);

/// Visit all composable k-tuples (g_1, ..., g_k), source(g_j) =
/// target(g_{j+1}). For k = 0 the visitor is called once per object with
/// an empty tuple. `obj` is always t_k of the tuple.
void for_each_composable(const Groupoid& G, int k,
                         const std::function<void(std::span<const ArrowId>, int obj)>& fn);

/// Same, but tuples are drawn from verification_fiber(-, k, tuple_budget)
/// instead of the full fibers.
void for_each_composable_sampled(const Groupoid& G, int k, std::int64_t tuple_budget,
                                 const std::function<void(std::span<const ArrowId>, int obj)>& fn);

std::int64_t count_composable(const Groupoid& G, int k);

/// Mean of f over the target-fiber at x (normalized Haar). Throws on an
/// empty fiber.
Matrix haar_integrate(const Groupoid& G, int x, const std::function<Matrix(ArrowId)>& f);

/// Partition of the objects into orbits; block[x] is the orbit index of x.
struct OrbitPartition {
    std::vector<int> block;                // per object
    std::vector<std::vector<int>> orbits;  // objects per block
};
OrbitPartition orbits(const Groupoid& G);

/// Arrows x -> x.
std::vector<ArrowId> isotropy(const Groupoid& G, int x);

enum class BumpProfile { PiecewiseLinear, RaisedCosine };

/// G-invariant function c: G_0 -> [0, 1] with c = 0 on the orbit of x0
/// and c = 1 outside the invariant carrier U (so supp(1-c) lies in U).
struct BumpFunction {
    std::vector<double> values;
    std::vector<int> carrier;   // U, as object indices
    std::vector<int> zero_set;  // S = c^{-1}(0)

    double operator()(int x) const { return values[x]; }
};

/// On finite groupoids the bump is the indicator of the complement of
/// orbit(x0). On sampled bundles it interpolates along the base circle
/// between 0 at x0 and 1 at the edge of the (contiguous) arc U.
BumpFunction make_bump(const Groupoid& G, int x0, const std::vector<int>& carrier,
                       BumpProfile profile = BumpProfile::PiecewiseLinear);

/// Cutoff over the base of a sampled bundle: 1 on the arc of radius
/// `plateau` around x0, 0 outside the arc of radius `support`, monotone
/// in between. Radii are fractions of the circle.
std::vector<double> make_cutoff(const SampledGroupBundle& B, int x0, double plateau,
                                double support,
                                BumpProfile profile = BumpProfile::PiecewiseLinear);

}  // namespace hrep
