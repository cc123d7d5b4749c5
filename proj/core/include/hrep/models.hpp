#pragma once

#include "hrep/pseudorep.hpp"

namespace hrep {

/// End-to-end construction over the mapping-torus bundle: the cutoff and
/// the invertible pseudo-representation over it, the bump of the two-term
/// construction (zero exactly at x0, ramping to 1 across the plateau where
/// the pseudo-rep is honest), and the resulting two-term homotopy
/// representation.
struct MappingTorusModel {
    std::shared_ptr<const SampledGroupBundle> bundle;
    EssentiallyAbelianFiber fiber;
    int x0 = 0;
    std::vector<double> cutoff;  // per base point; 1 on the plateau arc
    BumpFunction bump;           // carrier = plateau, zero set = {x0}
    PseudoRep pseudo;
    std::shared_ptr<const HomotopyRep> two_term;
};

/// Builds the model on the T^rank mapping-torus bundle glued by
/// (a, b) -> (a, a^l b). The default fiber is T^2 with the coordinate
/// characters. Plateau radius 1/4 and support radius 3/8 of the circle.
MappingTorusModel mapping_torus_model(int l = 1, int n_base = 64, int n_fib = 16,
                                      EssentiallyAbelianFiber fiber = {});

/// Named invertible pseudo-representations on the rank-2 mapping-torus
/// bundle, for the winding-number obstruction sweep: several character
/// lists and an essentially abelian fiber with two components.
struct PseudoRepEntry {
    std::string name;
    std::shared_ptr<const SampledGroupBundle> bundle;
    PseudoRep pseudo;
};
std::vector<PseudoRepEntry> pseudorep_library(int l = 1, int n_base = 64,
                                              int n_fib = 16);

/// Two-term homotopy representation over the action groupoid of Z/2
/// acting trivially on two points, built from a hand-made pseudo-rep that
/// is honest over point 0 (the sign character) and deliberately
/// non-multiplicative over point 1. All arithmetic is exact, so the
/// cocycle residuals vanish to machine precision.
std::shared_ptr<const HomotopyRep> z2_action_two_term();

}  // namespace hrep
