#pragma once

#include "hrep/morphism.hpp"

namespace hrep {

/// Conjugation of an honest graded representation (E, λ) by the invertible
/// convolution element id + T1, where T1 assigns to each arrow a degree -1
/// fiber map. The result has R_0 = 0, R_1 = λ, and
///   R_2(g1,g2) = T1(g1)λ(g2) + λ(g1)T1(g2) - T1(g1 g2),
///   R_{k+1}(g1,…) = T1(g1)∘R_k(g2,…)   (nonzero only on wide windows).
/// `to_honest` is the exact closed degree-0 morphism (T0 = id, T1) back to
/// the input, certifying the conjugated data as a homotopy representation.
struct GaugePair {
    std::shared_ptr<const HomotopyRep> conjugated;
    HRepMorphism to_honest;
};
GaugePair gauge_conjugate(std::shared_ptr<const HomotopyRep> honest,
                          std::function<GradedMap(ArrowId)> t1);

struct StrictifyOptions {
    double tol = 1e-9;          // residual allowed on transferred structure
    double rank_threshold = kRankThreshold;
};

/// Homotopy transfer of a homotopy representation of a finite group onto
/// its cohomology: the harmonic splitting (ι, π, h) gives the honest
/// representation λ'(g) = π∘λ(g)∘ι on H(E) (zero differential), and the
/// quasi-isomorphism E -> (H(E), λ') with components Φ_0 = π,
/// Φ_1(g) = π∘λ(g)∘h, corrected through the transferred homotopy
/// Ψ'(g1,g2) = π∘(Ψ(g1,g2) - λ(g1)∘h∘λ(g2))∘ι and the integral extension.
/// The returned morphism is verified closed and verified to induce an
/// isomorphism in cohomology (rank test); failures throw.
struct StrictifyResult {
    std::shared_ptr<const HomotopyRep> honest;  // zero differential, honest λ'
    HRepMorphism quasi_iso;                     // closed degree-0, E -> honest
    CohomologySplitting splitting;              // at the single object
};
StrictifyResult strictify(std::shared_ptr<const HomotopyRep> rep,
                          const StrictifyOptions& opts = {});

}  // namespace hrep
