#pragma once

#include <json.hpp>

#include "hrep/morphism.hpp"

namespace hrep {

using Json = nlohmann::json;

// Complex scalars are [re, im] pairs; matrices are row-major nested
// arrays; a graded map is a list of {degree, matrix} blocks indexed by
// source degree. Object keys are emitted in sorted order, so dumping is
// deterministic and round-trips byte-identically.

Json complex_to_json(const Complex& z);
Complex complex_from_json(const Json& j);
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);
Json dims_to_json(const GradedDims& d);
GradedDims dims_from_json(const Json& j);
Json graded_map_to_json(const GradedMap& m);
GradedMap graded_map_from_json(const Json& j, const GradedDims& src,
                               const GradedDims& dst, int degree);

Json groupoid_to_json(const FiniteGroupoid& g);
std::shared_ptr<const FiniteGroupoid> groupoid_from_json(const Json& j);

Json bundle_to_json(const SampledGroupBundle& b);
std::shared_ptr<const SampledGroupBundle> bundle_from_json(const Json& j);

/// Dense serialization of a homotopy representation over a finite
/// groupoid: every operator for k <= k_max on every composable tuple.
Json rep_to_json(const HomotopyRep& rep, double tolerance);

struct LoadedRep {
    std::shared_ptr<const HomotopyRep> rep;
    double tolerance = 0.0;
};
LoadedRep rep_from_json(const Json& j);

/// Morphism files embed both endpoint representations.
Json morphism_to_json(const HRepMorphism& phi, double tolerance);

struct LoadedMorphism {
    HRepMorphism morphism;
    double tolerance = 0.0;
};
LoadedMorphism morphism_from_json(const Json& j);

}  // namespace hrep
