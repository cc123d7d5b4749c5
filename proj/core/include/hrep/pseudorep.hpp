#pragma once

#include "hrep/homotopy_rep.hpp"
#include "hrep/torus.hpp"

namespace hrep {

/// A compact group K = Z_ν × T^rank with abelian identity component,
/// together with a diagonal faithful unitary σ: K -> U(N):
/// σ(c, a) = diag( ζ^{w_i c} ξ_i(a) ),  ζ = e^{2πi/ν},
/// given by N torus characters and N component weights.
struct EssentiallyAbelianFiber {
    int rank = 0;
    int components = 1;
    CharacterList chars;                 // N characters of T^rank
    std::vector<int> component_weights;  // N weights modulo `components`

    int dim() const { return chars.count(); }
    Matrix sigma(int component, std::span<const double> angles) const;
    /// σ(k_i) for the component representative k_i = (i, 0).
    Matrix sigma_representative(int component) const;

    /// The torus T^rank with the coordinate characters (σ = identity
    /// embedding, ν = 1).
    static EssentiallyAbelianFiber torus(int rank);
};

/// Smallest pairwise distance ‖σ(x) - σ(y)‖ over distinct elements of the
/// sampled fiber group; positive iff σ is faithful on the grid.
double faithfulness_separation(const EssentiallyAbelianFiber& fiber,
                               const SampledGroupBundle& bundle);

struct PseudoRepOptions {
    double separation_threshold = 1e-6;  // σ faithfulness on the grid
};

/// The invertible pseudo-representation
///   A(z, u) = blockdiag(P_z(c(u)), conj P_z(c(u))) · H(k_z^{-1} z, c(u))
/// on the restriction of the bundle over supp(c), identity elsewhere.
/// P_i is the eigenphase path from the identity to σ(k_i); H is the
/// contraction of blockdiag(σ|T, conj σ|T). Values are special-unitary
/// (all singular values 1, hence invertible), and over the plateau c = 1
/// the map is the honest faithful representation blockdiag(σ, σ̄).
/// `cutoff` is per base point, must be 1 at x0 and its two neighbors and
/// 0 somewhere on the base circle.
PseudoRep build_pseudorep(std::shared_ptr<const SampledGroupBundle> bundle,
                          const EssentiallyAbelianFiber& fiber,
                          const std::vector<double>& cutoff, int x0,
                          const PseudoRepOptions& opts = {});

/// Winding-number bookkeeping for the determinant of a pseudo-rep on the
/// mapping-torus bundle, read off at the seam (t -> 1 identified with the
/// t = 0 fiber through the stored monodromy).
struct ObstructionReport {
    int deg_first = 0;     // a ↦ δ₁(a, 1)
    int deg_second = 0;    // b ↦ δ₁(1, b)
    int deg_diagonal = 0;  // a ↦ δ₁(a, a)
    bool degree_identity_holds = false;  // diagonal = first + second
    bool su_condition_met = false;       // deg_second == 0
};
ObstructionReport obstruction_check(const PseudoRep& lambda, double tau_inv = 1e-6);

/// Necessary-condition detector for extending a candidate fiber
/// representation ρ of T² over the mapping torus: the winding of
/// det ρ(1, -) along the second coordinate must vanish (the restriction
/// must land in the special-unitary part). Nonzero degree flags
/// non-extendability; zero degree is inconclusive.
struct SuRestrictionReport {
    int degree = 0;
    bool violates = false;
};
SuRestrictionReport su_restriction_check(const CharacterList& rho, int n_fib = 64);

}  // namespace hrep
