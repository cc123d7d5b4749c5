#pragma once

#include "hrep/homotopy_rep.hpp"

namespace hrep {

/// Finite-dimensional model of degree n of the hom complex between two
/// homotopy representations of a finite group (one-object groupoid).
/// A degree-n element is a tuple of components Φ_k, 0 <= k <= k_bound(n),
/// with Φ_k a map on k-tuples of group elements of fiber degree n - k;
/// k_bound(n) = n + d_max(E) - d_min(F) (components beyond vanish by
/// degree bookkeeping).
struct HomSpaceLayout {
    int degree = 0;
    int k_bound = -1;
    std::int64_t group_order = 0;
    GradedDims e_dims, f_dims;
    // offset[k] = first coordinate of the k-component; within it, tuples
    // are ordered lexicographically (base |G| digits, g_1 most significant)
    // and each tuple block stacks the per-degree matrices column-major.
    std::vector<std::int64_t> offset;       // size k_bound + 2
    std::vector<std::int64_t> tuple_stride; // per k
    int total = 0;

    std::int64_t index(int k, std::int64_t tuple_index, int src_degree, int row,
                       int col) const;
};

HomSpaceLayout hom_space_layout(const HomotopyRep& e, const HomotopyRep& f, int n);

/// The differential Hom^n -> Hom^{n+1} assembled as a dense matrix in the
/// coordinates of hom_space_layout.
Matrix hom_differential_matrix(const HomotopyRep& e, const HomotopyRep& f, int n);

/// dim H^n(Hom(E,F), D) by rank-nullity:
/// dim ker D_n - rank D_{n-1} = (dim_n - rank D_n) - rank D_{n-1}.
int drep_hom_dimension(const HomotopyRep& e, const HomotopyRep& f, int n,
                       double rank_threshold = kRankThreshold);

/// Degrees n outside [d_min(F) - d_max(E), d_max(F) - d_min(E)] have zero
/// hom cohomology; this returns that window for iteration.
DegreeWindow hom_degree_window(const HomotopyRep& e, const HomotopyRep& f);

}  // namespace hrep
