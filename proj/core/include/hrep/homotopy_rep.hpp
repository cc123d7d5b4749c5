#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "hrep/cohomology.hpp"
#include "hrep/groupoid.hpp"

namespace hrep {

/// Family of structure operators of a homotopy representation: R_k maps a
/// composable k-tuple to a degree (1-k) fiber map E_{s_k} -> E_{t_k}.
/// For k = 0 the tuple is empty and `obj` names the base point.
using OpFamily =
    std::function<GradedMap(int k, std::span<const ArrowId> tuple, int obj)>;

/// Graded vector bundle with operator family {R_k}; R_0 = ∂, R_1 = λ,
/// R_2 = Ψ. Operators vanish for k > k_max. An optional unitality witness
/// Υ (degree -1 endomorphism per object) certifies λ(1_x) - id = ∂Υ + Υ∂.
class HomotopyRep {
public:
    HomotopyRep() = default;
    HomotopyRep(std::shared_ptr<const Groupoid> gpd, std::vector<GradedDims> fibers,
                int k_max, OpFamily ops);

    const Groupoid& groupoid() const { return *gpd_; }
    std::shared_ptr<const Groupoid> groupoid_ptr() const { return gpd_; }
    const GradedDims& fiber(int x) const { return fibers_[x]; }
    const std::vector<GradedDims>& fibers() const { return fibers_; }
    int k_max() const { return k_max_; }
    DegreeWindow window() const;

    /// R_k evaluated on a composable tuple (zero map for k > k_max).
    GradedMap op(int k, std::span<const ArrowId> tuple, int obj = -1) const;
    GradedMap differential(int x) const { return op(0, {}, x); }
    GradedMap lambda(ArrowId g) const {
        ArrowId t[1] = {g};
        return op(1, t);
    }

    const std::optional<std::vector<GradedMap>>& unitality_witness() const {
        return upsilon_;
    }
    void set_unitality_witness(std::vector<GradedMap> u) { upsilon_ = std::move(u); }

    /// Zero-shaped map for a k-tuple ending/starting at the given objects.
    GradedMap zero_op(int k, int src_obj, int tgt_obj) const;

private:
    std::shared_ptr<const Groupoid> gpd_;
    std::vector<GradedDims> fibers_;
    int k_max_ = 0;
    OpFamily ops_;
    std::optional<std::vector<GradedMap>> upsilon_;
};

/// Pseudo-representation: fiberwise linear maps λ(g): E_{sg} -> E_{tg}
/// with no axioms.
struct PseudoRep {
    std::shared_ptr<const Groupoid> gpd;
    std::vector<int> dims;  // per object
    std::function<Matrix(ArrowId)> map;

    /// Smallest singular value over all arrows (the invertibility
    /// certificate); 0 if any λ(g) is not square.
    double min_singular_value() const;
};

/// Max over composable k-tuples of the operator norm of LHS - RHS of the
/// defining cocycle equation. Finite groupoids are enumerated
/// exhaustively; sampled bundles are thinned to at most `tuple_budget`
/// tuples per k (k <= 2 is always the full grid at the shipped
/// resolutions).
double cocycle_residual(const HomotopyRep& rep, int k,
                        std::int64_t tuple_budget = 400000);

/// Smallest singular value of R_1 over all arrows; flag is value > tau.
struct InvertibilityCertificate {
    bool strongly_invertible;
    double min_singular_value;
};
InvertibilityCertificate is_strongly_invertible(const HomotopyRep& rep,
                                                double tau = 1e-6);

/// Unitality up to homotopy: residual of λ(1_x) - id = ∂Υ + Υ∂ together
/// with the witness. Strongly invertible reps use the closed form
/// Υ = λ(1_x)^{-1} ∘ Ψ(1_x, 1_x); otherwise Υ is the least-squares
/// minimizer per object.
struct UnitalityResult {
    double residual;
    std::vector<GradedMap> upsilon;  // per object
};
UnitalityResult check_unitality(const HomotopyRep& rep, double tau_inv = 1e-6);

struct TwoTermOptions {
    double rep_tol = 1e-9;      // multiplicativity/unit residual of λ on U
    double c_floor = 1e-3;      // evaluate the (λλ-λ)/c branch only above this
    double branch_tol = 1e-8;   // max disagreement of the two Ψ branches on U∖S
    std::int64_t tuple_budget = 400000;
};

/// Two-term homotopy representation E ⊕ E in degrees 0, 1 with ∂ = c·id,
/// λ in both degrees and the piecewise Ψ of the bump construction.
/// Preconditions: λ restricted to G|U is an honest representation and
/// supp(1-c) lies in U (U is the bump's carrier).
HomotopyRep two_term_from_pseudorep(const PseudoRep& lambda, const BumpFunction& c,
                                    const TwoTermOptions& opts = {});

/// A true representation on the cohomology bundle: per object the
/// harmonic splitting, per arrow the induced map.
struct CohomologyRep {
    std::shared_ptr<const Groupoid> gpd;
    std::vector<CohomologySplitting> splittings;  // per object
    std::function<GradedMap(ArrowId)> action;

    const GradedDims& fiber(int x) const { return splittings[x].h_dims; }
};

struct CohomologyRepOptions {
    double cocycle_tol = 1e-8;
    double unitality_tol = 1e-8;
    double rep_tol = 1e-9;  // composition/unit residual of the induced maps
    std::int64_t tuple_budget = 400000;
};

/// Checks the k <= 2 cocycle equations and unitality, then returns the
/// induced representation in cohomology, verified to send units to
/// identities and to respect composition.
CohomologyRep cohomology_rep(const HomotopyRep& rep,
                             const CohomologyRepOptions& opts = {});

/// Residual table for k = 0..k_hi (default k_max + 2) plus unitality.
struct VerifyReport {
    std::vector<double> cocycle;  // index k
    double unitality = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};
VerifyReport verify(const HomotopyRep& rep, double tol, int k_hi = -1,
                    std::int64_t tuple_budget = 400000);

/// Honest representation of a one-object groupoid (a group) packed as a
/// homotopy representation concentrated in the given degree.
HomotopyRep honest_rep(std::shared_ptr<const Groupoid> group,
                       std::vector<Matrix> matrices, int degree = 0);

/// Honest graded representation from per-degree matrices.
HomotopyRep honest_graded_rep(std::shared_ptr<const Groupoid> group,
                              GradedDims dims,
                              std::function<GradedMap(ArrowId)> lambda);

}  // namespace hrep
