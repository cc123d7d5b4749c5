#include "hrep/hom_complex.hpp"

#include <Eigen/QR>

namespace hrep {

namespace {
inline Complex sgn(int e) { return ((e % 2 + 2) % 2) ? Complex(-1) : Complex(1); }

void require_group(const HomotopyRep& e, const HomotopyRep& f) {
    if (&e.groupoid() != &f.groupoid())
        throw std::invalid_argument("hom complex: groupoid mismatch");
    if (e.groupoid().num_objects() != 1)
        throw std::invalid_argument("hom complex: only one-object groupoids (groups)");
}

std::int64_t tuple_to_index(std::span<const ArrowId> t, std::int64_t m) {
    std::int64_t acc = 0;
    for (ArrowId g : t) acc = acc * m + g;
    return acc;
}

int rank_of(const Matrix& m, double threshold) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    Eigen::ColPivHouseholderQR<Matrix> qr(m);
    qr.setThreshold(threshold);
    return static_cast<int>(qr.rank());
}
}  // namespace

std::int64_t HomSpaceLayout::index(int k, std::int64_t tuple_index, int src_degree,
                                   int row, int col) const {
    std::int64_t off = offset[k] + tuple_index * tuple_stride[k];
    for (int i = e_dims.window().lo; i < src_degree; ++i)
        off += static_cast<std::int64_t>(e_dims.dim(i)) *
               f_dims.dim(i + degree - k);
    const int rows = f_dims.dim(src_degree + degree - k);
    return off + static_cast<std::int64_t>(col) * rows + row;
}

HomSpaceLayout hom_space_layout(const HomotopyRep& e, const HomotopyRep& f, int n) {
    require_group(e, f);
    HomSpaceLayout L;
    L.degree = n;
    L.group_order = e.groupoid().num_arrows();
    L.e_dims = e.fiber(0);
    L.f_dims = f.fiber(0);
    const DegreeWindow we = L.e_dims.window(), wf = L.f_dims.window();
    L.k_bound = (we.empty() || wf.empty()) ? -1 : n + we.hi - wf.lo;
    if (L.k_bound < -1) L.k_bound = -1;

    std::int64_t total = 0;
    for (int k = 0; k <= L.k_bound; ++k) {
        std::int64_t stride = 0;
        for (int i = we.lo; i <= we.hi; ++i)
            stride += static_cast<std::int64_t>(L.e_dims.dim(i)) *
                      L.f_dims.dim(i + n - k);
        std::int64_t tuples = 1;
        for (int j = 0; j < k; ++j) tuples *= L.group_order;
        L.offset.push_back(total);
        L.tuple_stride.push_back(stride);
        total += stride * tuples;
    }
    L.offset.push_back(total);
    L.total = static_cast<int>(total);
    return L;
}

Matrix hom_differential_matrix(const HomotopyRep& e, const HomotopyRep& f, int n) {
    require_group(e, f);
    HomSpaceLayout in = hom_space_layout(e, f, n);
    HomSpaceLayout out = hom_space_layout(e, f, n + 1);
    Matrix D = Matrix::Zero(out.total, in.total);
    if (in.total == 0 || out.total == 0) return D;

    const std::int64_t m = in.group_order;
    const DegreeWindow we = in.e_dims.window();

    for (int k = 0; k <= out.k_bound; ++k) {
        std::vector<ArrowId> t(k, 0);
        // odometer over all k-tuples of group elements
        while (true) {
            std::span<const ArrowId> ts(t);
            const std::int64_t tout = tuple_to_index(ts, m);
            for (int j = 0; j <= k; ++j) {
                const int ki = k - j;  // in-component index for split terms
                // S_j ∘ Φ_{k-j}, sign (-1)^{j n}
                if (ki <= in.k_bound) {
                    GradedMap S = f.op(j, ts.subspan(0, j), 0);
                    const std::int64_t tin = tuple_to_index(ts.subspan(j), m);
                    const Complex s1 = sgn(j * n);
                    for (int i = we.lo; i <= we.hi; ++i) {
                        const int cols = in.e_dims.dim(i);
                        const int mid = in.f_dims.dim(i + n - ki);
                        const int rows = in.f_dims.dim(i + n + 1 - k);
                        if (cols == 0 || mid == 0 || rows == 0) continue;
                        if (!S.src().window().contains(i + n - ki)) continue;
                        const Matrix& sb = S.block(i + n - ki);
                        for (int c = 0; c < cols; ++c)
                            for (int mm = 0; mm < mid; ++mm)
                                for (int r = 0; r < rows; ++r)
                                    D(out.index(k, tout, i, r, c),
                                      in.index(ki, tin, i, mm, c)) += s1 * sb(r, mm);
                    }
                }
                // -(-1)^n (-1)^j Φ_j ∘ R_{k-j}
                if (j <= in.k_bound) {
                    GradedMap R = e.op(ki, ts.subspan(j), 0);
                    const std::int64_t tin = tuple_to_index(ts.subspan(0, j), m);
                    const Complex s2 = -sgn(n + j);
                    for (int i = we.lo; i <= we.hi; ++i) {
                        const int cols = in.e_dims.dim(i);
                        const int i2 = i + 1 - ki;  // E-degree seen by Φ_j
                        const int mid = in.e_dims.dim(i2);
                        const int rows = in.f_dims.dim(i + n + 1 - k);
                        if (cols == 0 || mid == 0 || rows == 0) continue;
                        if (!R.src().window().contains(i)) continue;
                        const Matrix& rb = R.block(i);
                        for (int c = 0; c < cols; ++c)
                            for (int mm = 0; mm < mid; ++mm)
                                for (int r = 0; r < rows; ++r)
                                    D(out.index(k, tout, i, r, c),
                                      in.index(j, tin, i2, r, mm)) += s2 * rb(mm, c);
                    }
                }
            }
            // (-1)^n (-1)^j Φ_{k-1}(g_1,…,g_j g_{j+1},…,g_k)
            if (k >= 2 && k - 1 <= in.k_bound) {
                std::vector<ArrowId> merged(k - 1);
                for (int j = 1; j <= k - 1; ++j) {
                    for (int i = 0; i < j - 1; ++i) merged[i] = t[i];
                    merged[j - 1] = e.groupoid().compose(t[j - 1], t[j]);
                    for (int i = j + 1; i < k; ++i) merged[i - 1] = t[i];
                    const std::int64_t tin = tuple_to_index(merged, m);
                    const Complex s3 = sgn(n + j);
                    for (int i = we.lo; i <= we.hi; ++i) {
                        const int cols = in.e_dims.dim(i);
                        const int rows = in.f_dims.dim(i + n + 1 - k);
                        if (cols == 0 || rows == 0) continue;
                        for (int c = 0; c < cols; ++c)
                            for (int r = 0; r < rows; ++r)
                                D(out.index(k, tout, i, r, c),
                                  in.index(k - 1, tin, i, r, c)) += s3;
                    }
                }
            }
            // advance odometer
            int pos = k - 1;
            while (pos >= 0 && t[pos] == m - 1) t[pos--] = 0;
            if (pos < 0) break;
            ++t[pos];
        }
    }
    return D;
}

int drep_hom_dimension(const HomotopyRep& e, const HomotopyRep& f, int n,
                       double rank_threshold) {
    HomSpaceLayout L = hom_space_layout(e, f, n);
    Matrix dn = hom_differential_matrix(e, f, n);
    Matrix dprev = hom_differential_matrix(e, f, n - 1);
    return L.total - rank_of(dn, rank_threshold) - rank_of(dprev, rank_threshold);
}

DegreeWindow hom_degree_window(const HomotopyRep& e, const HomotopyRep& f) {
    DegreeWindow we = e.window(), wf = f.window();
    if (we.empty() || wf.empty()) return {};
    return {wf.lo - we.hi, wf.hi - we.lo};
}

}  // namespace hrep
