#pragma once

#include "hrep/groupoid.hpp"
#include "hrep/unitary_paths.hpp"

namespace hrep {

/// k characters of the torus T^n as integer exponent vectors:
/// ξ_i(a) = Π_j a_j^{m_ij} for angle coordinates a in [0,1)^n.
struct CharacterList {
    std::vector<std::vector<int>> exponents;  // k rows of length n

    int count() const { return static_cast<int>(exponents.size()); }
    int rank() const { return exponents.empty() ? 0 : static_cast<int>(exponents[0].size()); }

    /// Value of character i at angles a.
    Complex value(int i, std::span<const double> angles) const;
    /// diag(ξ_1(a), …, ξ_k(a)).
    Matrix rho(std::span<const double> angles) const;

    /// Parses "2,-1;3,0" into {{2,-1},{3,0}}.
    static CharacterList parse(const std::string& text);
};

/// Contraction of the loop of block matrices blockdiag(ρ, ρ̄) to the
/// identity inside SU(2k): H(a, 0) = id exactly, H(a, 1) = blockdiag(ρ(a),
/// ρ̄(a)), every value special-unitary. Built per character and per torus
/// coordinate as spherical arcs in SU(2) ≅ S³ through the fixed waypoint
/// -iσ₁ (whose antipode misses every diagonal loop), multiplied together
/// and conjugated by the interleaving permutation.
class ContractionHomotopy {
public:
    ContractionHomotopy(CharacterList chars, int n_fib, int n_t);

    const CharacterList& characters() const { return chars_; }
    int n_fib() const { return n_fib_; }
    int n_t() const { return n_t_; }
    int matrix_size() const { return 2 * chars_.count(); }

    /// Continuous evaluation at angles in [0,1)^n and time t in [0,1].
    Matrix at(std::span<const double> angles, double t) const;
    /// Grid evaluation: per-coordinate indices (0..n_fib-1), time index
    /// (0..n_t-1, t = index / (n_t - 1)).
    Matrix frame(std::span<const int> grid, int t_index) const;

    /// The t = 1 target blockdiag(ρ(a), ρ̄(a)).
    Matrix endpoint(std::span<const double> angles) const;

    struct Invariants {
        double unitarity = 0.0;       // max ‖H*H - I‖
        double determinant = 0.0;     // max |det H - 1|
        double start_error = 0.0;     // max ‖H(a,0) - I‖ (exact 0 expected)
        double end_error = 0.0;       // max ‖H(a,1) - blockdiag(ρ, ρ̄)‖
        double max_step = 0.0;        // max t-adjacent frame distance
    };
    /// Streams over the full (fiber × t) grid.
    Invariants check_invariants() const;

private:
    CharacterList chars_;
    int n_fib_, n_t_;
};

ContractionHomotopy contract_torus_rep(const CharacterList& chars, int n_fib = 64,
                                       int n_t = 64);

struct WindingOptions {
    double min_modulus = 1e-12;   // zero-sample error below this
    double max_step = M_PI - 1e-9;  // undersampled error above this
    double round_tol = 0.01;      // distance to nearest integer
};

/// Degree of a closed nonvanishing sampled loop: summed principal-branch
/// phase increments (including the wrap-around step) divided by 2π,
/// rounded. Throws on a zero sample, an undersampled loop, or a rounding
/// distance above `round_tol`.
int winding_number(std::span<const Complex> loop, const WindingOptions& opts = {});

}  // namespace hrep
