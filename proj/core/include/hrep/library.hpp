#pragma once

#include "hrep/morphism.hpp"
#include "hrep/strictify.hpp"

namespace hrep {

/// Matrix representations of small finite groups (element 0 = identity,
/// element order matching FiniteGroupoid::cyclic_group / symmetric_s3).
std::vector<Matrix> regular_rep_matrices(const FiniteGroupoid& g);
std::vector<Matrix> trivial_rep_matrices(const FiniteGroupoid& g);
std::vector<Matrix> cyclic_character_matrices(int n, int weight);
std::vector<Matrix> s3_sign_matrices();
std::vector<Matrix> s3_standard_matrices();

/// Mapping cone of an equivariant map f: V -> W between two honest
/// representations of a group: the two-degree bundle V (degree 0) ⊕ W
/// (degree 1) with differential f and diagonal action. H^0 = ker f,
/// H^1 = coker f.
std::shared_ptr<const HomotopyRep> mapping_cone(
    std::shared_ptr<const FiniteGroupoid> group, const std::vector<Matrix>& v,
    const std::vector<Matrix>& w, const Matrix& f, double equivariance_tol = 1e-10);

/// A named homotopy representation for the test/demo libraries.
struct LibraryEntry {
    std::string name;
    std::shared_ptr<const HomotopyRep> rep;
};

/// The standard library of homotopy representations of a group
/// ("z2", "z4", "s3"): honest irreducibles and regular reps in several
/// degrees, mapping cones, and seeded gauge-conjugated two-term reps
/// (at least 6 entries per group).
std::vector<LibraryEntry> standard_library(const std::string& group_name,
                                           std::uint64_t seed = 7);

/// Group behind a library name.
std::shared_ptr<const FiniteGroupoid> library_group(const std::string& group_name);

/// dim Hom_G(H(E), H(F)) in graded degree n via characters:
/// Σ_i (1/|G|) Σ_g conj χ_{H^i(E)}(g) · χ_{H^{i+n}(F)}(g).
/// Used as the independent oracle against drep_hom_dimension.
int character_hom_dimension(const HomotopyRep& e, const HomotopyRep& f, int n);

/// Character of the induced representation on H^i(E) at each group
/// element, degree by degree.
std::vector<std::vector<Complex>> cohomology_characters(const HomotopyRep& e);

}  // namespace hrep
