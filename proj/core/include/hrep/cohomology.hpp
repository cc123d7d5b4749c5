#pragma once

#include "hrep/graded.hpp"

namespace hrep {

/// A single point's graded fiber together with a degree +1 differential.
struct FiberComplex {
    GradedDims dims;
    GradedMap d;  // degree +1; d.src() == d.dst() == dims

    FiberComplex() = default;
    FiberComplex(GradedDims dims_, GradedMap d_);

    /// Max over degrees of the operator norm of d∘d.
    double square_residual() const;
};

/// Harmonic splitting of a fiber complex: per degree an orthonormal basis
/// of ker d ∩ ker d*, with inclusion/projection maps and the homotopy
/// h = pinv(d) satisfying id - incl∘proj = d h + h d.
struct CohomologySplitting {
    GradedDims h_dims;             // cohomology dimensions
    std::vector<Matrix> incl;      // per degree: fiber_dim x h_dim
    std::vector<Matrix> proj;      // per degree: h_dim x fiber_dim
    GradedMap homotopy;            // degree -1 on the fiber

    int dim(int degree) const { return h_dims.dim(degree); }
    const Matrix& inclusion(int degree) const;
    const Matrix& projection(int degree) const;
    /// Inclusion/projection packaged as graded maps H -> E and E -> H.
    GradedMap inclusion_map() const;
    GradedMap projection_map() const;
};

/// Relative singular-value threshold used for all rank decisions.
inline constexpr double kRankThreshold = 1e-8;

/// Throws if the d∘d residual exceeds `square_tol` (the message names the
/// offending degree).
CohomologySplitting cohomology(const FiberComplex& fc, double square_tol = 1e-12,
                               double rank_threshold = kRankThreshold);

/// Map induced on cohomology by a chain map L (degree 0, L d_s = d_t L up
/// to `chain_tol`; the error message carries the residual). Returns
/// projection_t ∘ L ∘ inclusion_s packaged degreewise.
GradedMap induced_map(const FiberComplex& src, const FiberComplex& dst,
                      const GradedMap& L, double chain_tol = 1e-9);

/// Same, with splittings already at hand.
GradedMap induced_map(const CohomologySplitting& src_split,
                      const CohomologySplitting& dst_split, const GradedMap& L);

}  // namespace hrep
