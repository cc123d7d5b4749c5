#include "hrep/torus.hpp"

#include <sstream>

namespace hrep {

Complex CharacterList::value(int i, std::span<const double> angles) const {
    double phase = 0.0;
    for (int j = 0; j < rank(); ++j) phase += exponents[i][j] * angles[j];
    return std::exp(Complex(0, 2.0 * M_PI * phase));
}

Matrix CharacterList::rho(std::span<const double> angles) const {
    Matrix m = Matrix::Zero(count(), count());
    for (int i = 0; i < count(); ++i) m(i, i) = value(i, angles);
    return m;
}

CharacterList CharacterList::parse(const std::string& text) {
    CharacterList out;
    std::stringstream rows(text);
    std::string row;
    while (std::getline(rows, row, ';')) {
        std::vector<int> exps;
        std::stringstream cols(row);
        std::string cell;
        while (std::getline(cols, cell, ',')) exps.push_back(std::stoi(cell));
        if (!out.exponents.empty() && exps.size() != out.exponents[0].size())
            throw std::invalid_argument("CharacterList::parse: ragged exponent rows");
        out.exponents.push_back(std::move(exps));
    }
    if (out.exponents.empty())
        throw std::invalid_argument("CharacterList::parse: empty character list");
    return out;
}

namespace {
// the 2x2 special-unitary factor for one character coordinate: a two-arc
// path on S^3 from the identity through the fixed waypoint -iσ₁ to the
// diagonal loop point (cos θ, 0, 0, sin θ); the waypoint's antipode iσ₁
// misses the (1, iσ₃) great circle for every integer winding
Matrix su2_factor(int m, double angle, double t) {
    if (m == 0) return Matrix::Identity(2, 2);
    const Quaternion q_id{1.0, 0.0, 0.0, 0.0};
    const Quaternion q_way{0.0, -1.0, 0.0, 0.0};
    const double theta = 2.0 * M_PI * m * angle;
    const Quaternion q_end{std::cos(theta), 0.0, 0.0, std::sin(theta)};
    if (t <= 0.5) return slerp(q_id, q_way, 2.0 * t).to_su2();
    return slerp(q_way, q_end, 2.0 * t - 1.0).to_su2();
}
}  // namespace

ContractionHomotopy::ContractionHomotopy(CharacterList chars, int n_fib, int n_t)
    : chars_(std::move(chars)), n_fib_(n_fib), n_t_(n_t) {
    if (chars_.count() == 0)
        throw std::invalid_argument("ContractionHomotopy: no characters");
    if (n_fib_ < 4 || n_t_ < 2)
        throw std::invalid_argument("ContractionHomotopy: grids too small");
}

Matrix ContractionHomotopy::at(std::span<const double> angles, double t) const {
    const int k = chars_.count();
    Matrix h = Matrix::Zero(2 * k, 2 * k);
    for (int i = 0; i < k; ++i) {
        Matrix block = Matrix::Identity(2, 2);
        for (int j = 0; j < chars_.rank(); ++j)
            block = block * su2_factor(chars_.exponents[i][j], angles[j], t);
        // interleaved pair (ξ_i, ξ̄_i) goes to rows/cols (i, k+i)
        h(i, i) = block(0, 0);
        h(i, k + i) = block(0, 1);
        h(k + i, i) = block(1, 0);
        h(k + i, k + i) = block(1, 1);
    }
    return h;
}

Matrix ContractionHomotopy::frame(std::span<const int> grid, int t_index) const {
    std::vector<double> angles(chars_.rank());
    for (int j = 0; j < chars_.rank(); ++j)
        angles[j] = static_cast<double>(grid[j]) / n_fib_;
    return at(angles, static_cast<double>(t_index) / (n_t_ - 1));
}

Matrix ContractionHomotopy::endpoint(std::span<const double> angles) const {
    const int k = chars_.count();
    Matrix m = Matrix::Zero(2 * k, 2 * k);
    for (int i = 0; i < k; ++i) {
        Complex v = chars_.value(i, angles);
        m(i, i) = v;
        m(k + i, k + i) = std::conj(v);
    }
    return m;
}

ContractionHomotopy::Invariants ContractionHomotopy::check_invariants() const {
    Invariants inv;
    const int rank = chars_.rank();
    const int n = matrix_size();
    const Matrix id = Matrix::Identity(n, n);
    std::vector<int> grid(rank, 0);
    std::vector<double> angles(rank, 0.0);
    while (true) {
        for (int j = 0; j < rank; ++j) angles[j] = static_cast<double>(grid[j]) / n_fib_;
        Matrix prev;
        for (int ti = 0; ti < n_t_; ++ti) {
            Matrix h = frame(grid, ti);
            inv.unitarity = std::max(inv.unitarity, (h.adjoint() * h - id).norm());
            inv.determinant = std::max(inv.determinant, std::abs(h.determinant() - 1.0));
            if (ti == 0) inv.start_error = std::max(inv.start_error, (h - id).norm());
            if (ti == n_t_ - 1)
                inv.end_error = std::max(inv.end_error, (h - endpoint(angles)).norm());
            if (ti > 0)
                inv.max_step = std::max(inv.max_step, operator_norm(h - prev));
            prev = std::move(h);
        }
        int j = 0;
        for (; j < rank; ++j) {
            if (++grid[j] < n_fib_) break;
            grid[j] = 0;
        }
        if (j == rank) break;
    }
    return inv;
}

ContractionHomotopy contract_torus_rep(const CharacterList& chars, int n_fib, int n_t) {
    return ContractionHomotopy(chars, n_fib, n_t);
}

int winding_number(std::span<const Complex> loop, const WindingOptions& opts) {
    if (loop.size() < 2)
        throw std::invalid_argument("winding_number: need at least 2 samples");
    double total = 0.0;
    const size_t n = loop.size();
    for (size_t i = 0; i < n; ++i) {
        const Complex a = loop[i];
        const Complex b = loop[(i + 1) % n];
        if (std::abs(a) < opts.min_modulus || std::abs(b) < opts.min_modulus)
            throw std::invalid_argument("winding_number: sample too close to zero");
        double step = std::arg(b / a);
        if (std::abs(step) > opts.max_step)
            throw std::invalid_argument(
                "winding_number: phase step >= pi, loop undersampled");
        total += step;
    }
    const double turns = total / (2.0 * M_PI);
    const long rounded = std::lround(turns);
    if (std::abs(turns - static_cast<double>(rounded)) > opts.round_tol)
        throw std::invalid_argument("winding_number: total phase not near an integer");
    return static_cast<int>(rounded);
}

}  // namespace hrep
