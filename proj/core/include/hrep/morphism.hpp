#pragma once

#include "hrep/homotopy_rep.hpp"

namespace hrep {

/// Component family of a degree-n morphism: Φ_k maps a composable k-tuple
/// to a degree (n-k) fiber map E_{s_k} -> F_{t_k}. Same calling
/// convention as OpFamily (obj names the base point when k = 0).
using MorFamily =
    std::function<GradedMap(int k, std::span<const ArrowId> tuple, int obj)>;

/// A homogeneous morphism between homotopy representations, given by its
/// components {Φ_k}. Components vanish for k > k_bound; k_bound is always
/// finite because the degree windows force Φ_k = 0 once n - k drops below
/// d_min(F) - d_max(E).
class HRepMorphism {
public:
    HRepMorphism() = default;
    HRepMorphism(std::shared_ptr<const HomotopyRep> src,
                 std::shared_ptr<const HomotopyRep> dst, int degree, int k_bound,
                 MorFamily comps);

    static HRepMorphism zero(std::shared_ptr<const HomotopyRep> src,
                             std::shared_ptr<const HomotopyRep> dst, int degree);
    static HRepMorphism identity(std::shared_ptr<const HomotopyRep> rep);

    /// Largest k with Φ_k possibly nonzero given the degree windows.
    static int forced_k_bound(const HomotopyRep& src, const HomotopyRep& dst,
                              int degree);

    const HomotopyRep& src() const { return *src_; }
    const HomotopyRep& dst() const { return *dst_; }
    std::shared_ptr<const HomotopyRep> src_ptr() const { return src_; }
    std::shared_ptr<const HomotopyRep> dst_ptr() const { return dst_; }
    int degree() const { return degree_; }
    int k_bound() const { return k_bound_; }

    /// Φ_k on a composable tuple (zero map beyond k_bound).
    GradedMap component(int k, std::span<const ArrowId> tuple, int obj = -1) const;

    HRepMorphism operator+(const HRepMorphism& o) const;
    HRepMorphism operator-(const HRepMorphism& o) const;
    HRepMorphism scaled(Complex s) const;

    /// Max over k <= k_hi (default k_bound) and over composable tuples of
    /// the component operator norm; measures distance to zero.
    double sup_norm(int k_hi = -1, std::int64_t tuple_budget = 400000) const;

private:
    std::shared_ptr<const HomotopyRep> src_, dst_;
    int degree_ = 0;
    int k_bound_ = -1;  // all components zero
    MorFamily comps_;
};

/// The degree (n+1) morphism DΦ of the DG category, componentwise
/// (DΦ)_k = Σ_{i+j=k} (-1)^{j·n} S_j∘Φ_i
///        - (-1)^n Σ_{i+j=k} (-1)^j Φ_j∘R_i
///        + (-1)^n Σ_{j=1}^{k-1} (-1)^j Φ_{k-1}(g_1,…,g_j g_{j+1},…,g_k).
HRepMorphism morphism_differential(const HRepMorphism& phi);

/// Composite Φ∘Ξ for Ξ: D -> E, Φ: E -> F, componentwise
/// (Φ∘Ξ)_k = Σ_{i+j=k} (-1)^{j·deg Ξ} Φ_j(g_1..g_j)∘Ξ_i(g_{j+1}..g_k).
/// The sign makes the graded Leibniz rule D(ΦΞ) = (DΦ)Ξ + (-1)^{deg Φ}Φ(DΞ)
/// hold, which the tests check as the defining property.
HRepMorphism compose(const HRepMorphism& phi, const HRepMorphism& xi);

/// sup_norm of DΦ; a homomorphism of homotopy representations is exactly
/// a degree-0 Φ with closedness residual 0.
double closedness_residual(const HRepMorphism& phi, int k_hi = -1,
                           std::int64_t tuple_budget = 400000);

struct ExtendOptions {
    double rep_tol = 1e-9;        // honesty of R_1, S_1 and vanishing of R_0, S_0
    double equivariance_tol = 1e-9;
    std::int64_t tuple_budget = 400000;
};

/// Extends an equivariant degree-0 bundle map Φ0 between homotopy
/// representations with zero differential and honest λ = R_1, μ = S_1 to a
/// closed degree-0 morphism, by the inductive fiber-integral formula
/// Φ_{l+1}(g_1..g_{l+1}) = ∫ (-1)^l { Σ_{j≤l} (-1)^j Φ_j∘R_{l+2-j}(…,g)
///   - Σ_{j≥2} S_j∘Φ_{l+2-j}(…,g) } ∘ λ(g)^{-1} dg.
/// `phi0` gives the map per object. Components are memoized.
HRepMorphism extend_morphism(std::vector<GradedMap> phi0,
                             std::shared_ptr<const HomotopyRep> src,
                             std::shared_ptr<const HomotopyRep> dst,
                             const ExtendOptions& opts = {});

struct NullHomotopyOptions {
    double closed_tol = 1e-9;  // DΦ and Φ_0 residual allowed on input
    std::int64_t tuple_budget = 400000;
};

/// For closed Φ of degree n with Φ_0 = 0 between representations with
/// R_k = S_k = 0 for k ≠ 1 (honest graded reps), returns Ψ of degree n-1
/// with DΨ = Φ:  Ψ_k(g_1..g_k) = (-1)^k ∫ Φ_{k+1}(g_1..g_k, g)∘λ(g)^{-1} dg.
/// Throws on Φ_0 ≠ 0, DΦ ≠ 0, or higher structure operators present (the
/// general case is unsupported).
HRepMorphism null_homotopy(const HRepMorphism& phi,
                           const NullHomotopyOptions& opts = {});

/// Intertwiner of cohomology representations induced by a closed morphism
/// (per object, the graded map H(E_x) -> H(F_x) induced by Φ_0).
/// Throws if closedness_residual(phi) exceeds `closed_tol`.
std::vector<GradedMap> cohomology_functor(const HRepMorphism& phi,
                                          const CohomologyRep& src_cohomology,
                                          const CohomologyRep& dst_cohomology,
                                          double closed_tol = 1e-8);

}  // namespace hrep
