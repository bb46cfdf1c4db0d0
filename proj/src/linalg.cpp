#include "freelin/linalg.hpp"

#include <algorithm>

namespace freelin {

ScalarMat identity_matrix(int n, QRing ring) {
    ScalarMat m(n, ScalarVec(n, Scalar::zero(ring)));
    for (int i = 0; i < n; ++i) m[i][i] = Scalar::one(ring);
    return m;
}

ScalarMat mat_mul(const ScalarMat& a, const ScalarMat& b) {
    const int rows = static_cast<int>(a.size());
    const int inner = static_cast<int>(b.size());
    const int cols = inner ? static_cast<int>(b[0].size()) : 0;
    if (rows == 0 || inner == 0) throw InvalidInput("empty matrix product");
    if (static_cast<int>(a[0].size()) != inner) throw InvalidInput("matrix size mismatch");
    const QRing ring = a[0][0].ring();
    ScalarMat out(rows, ScalarVec(cols, Scalar::zero(ring)));
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < inner; ++k)
            for (int j = 0; j < cols; ++j) out[i][j] = out[i][j] + a[i][k] * b[k][j];
    return out;
}

ScalarVec mat_apply(const ScalarMat& a, const ScalarVec& v) {
    const QRing ring = v.at(0).ring();
    ScalarVec out(a.size(), Scalar::zero(ring));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != v.size()) throw InvalidInput("matrix/vector size mismatch");
        for (std::size_t j = 0; j < v.size(); ++j) out[i] = out[i] + a[i][j] * v[j];
    }
    return out;
}

std::optional<ScalarMat> mat_inverse(const ScalarMat& a) {
    const int n = static_cast<int>(a.size());
    if (n == 0 || static_cast<int>(a[0].size()) != n) throw InvalidInput("inverse of non-square");
    const QRing ring = a[0][0].ring();
    ScalarMat m = a;
    ScalarMat inv = identity_matrix(n, ring);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int row = col; row < n; ++row)
            if (!m[row][col].is_zero()) {
                pivot = row;
                break;
            }
        if (pivot < 0) return std::nullopt;
        std::swap(m[pivot], m[col]);
        std::swap(inv[pivot], inv[col]);
        const Scalar d = m[col][col].inverse();
        for (int j = 0; j < n; ++j) {
            m[col][j] = m[col][j] * d;
            inv[col][j] = inv[col][j] * d;
        }
        for (int row = 0; row < n; ++row) {
            if (row == col || m[row][col].is_zero()) continue;
            const Scalar f = m[row][col];
            for (int j = 0; j < n; ++j) {
                m[row][j] = m[row][j] - f * m[col][j];
                inv[row][j] = inv[row][j] - f * inv[col][j];
            }
        }
    }
    return inv;
}

bool mat_is_singular(const ScalarMat& a) { return !mat_inverse(a).has_value(); }

namespace {

/// Row-reduces [a | b] in place; returns pivot column per row.
std::vector<int> row_reduce(ScalarMat& a, ScalarVec* b) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows ? static_cast<int>(a[0].size()) : 0;
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int p = -1;
        for (int r = row; r < rows; ++r)
            if (!a[r][col].is_zero()) {
                p = r;
                break;
            }
        if (p < 0) continue;
        std::swap(a[p], a[row]);
        if (b) std::swap((*b)[p], (*b)[row]);
        const Scalar d = a[row][col].inverse();
        for (int j = 0; j < cols; ++j) a[row][j] = a[row][j] * d;
        if (b) (*b)[row] = (*b)[row] * d;
        for (int r = 0; r < rows; ++r) {
            if (r == row || a[r][col].is_zero()) continue;
            const Scalar f = a[r][col];
            for (int j = 0; j < cols; ++j) a[r][j] = a[r][j] - f * a[row][j];
            if (b) (*b)[r] = (*b)[r] - f * (*b)[row];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

std::optional<ScalarVec> solve_linear(ScalarMat a, ScalarVec b) {
    if (a.empty()) return ScalarVec{};
    if (a.size() != b.size()) throw InvalidInput("solve: size mismatch");
    const int cols = static_cast<int>(a[0].size());
    const QRing ring = b[0].ring();
    const auto pivots = row_reduce(a, &b);
    for (std::size_t r = pivots.size(); r < a.size(); ++r)
        if (!b[r].is_zero()) return std::nullopt;
    ScalarVec x(cols, Scalar::zero(ring));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = b[r];
    return x;
}

std::vector<ScalarVec> nullspace(ScalarMat a, QRing ring) {
    if (a.empty()) return {};
    const int cols = static_cast<int>(a[0].size());
    const auto pivots = row_reduce(a, nullptr);
    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<ScalarVec> basis;
    for (int free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        ScalarVec v(cols, Scalar::zero(ring));
        v[free] = Scalar::one(ring);
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<Int> smith_invariant_factors(std::vector<std::vector<Int>> m) {
    const int rows = static_cast<int>(m.size());
    const int cols = rows ? static_cast<int>(m[0].size()) : 0;
    std::vector<Int> factors;
    int top = 0;
    while (top < rows && top < cols) {
        // find a nonzero entry with minimal absolute value in the submatrix
        int pr = -1, pc = -1;
        Int best = 0;
        for (int i = top; i < rows; ++i)
            for (int j = top; j < cols; ++j) {
                if (m[i][j] == 0) continue;
                Int a = abs(m[i][j]);
                if (pr < 0 || a < best) {
                    best = a;
                    pr = i;
                    pc = j;
                }
            }
        if (pr < 0) break;
        std::swap(m[pr], m[top]);
        for (int i = top; i < rows; ++i) std::swap(m[i][pc], m[i][top]);
        bool clean = true;
        for (int i = top + 1; i < rows; ++i) {
            Int q = m[i][top] / m[top][top];
            if (q != 0)
                for (int j = top; j < cols; ++j) m[i][j] -= q * m[top][j];
            if (m[i][top] != 0) clean = false;
        }
        for (int j = top + 1; j < cols; ++j) {
            Int q = m[top][j] / m[top][top];
            if (q != 0)
                for (int i = top; i < rows; ++i) m[i][j] -= q * m[i][top];
            if (m[top][j] != 0) clean = false;
        }
        if (!clean) continue;  // smaller remainders appeared; repeat
        // divisibility fixup: pivot must divide the rest of the submatrix
        bool divides = true;
        for (int i = top + 1; i < rows && divides; ++i)
            for (int j = top + 1; j < cols; ++j)
                if (m[i][j] % m[top][top] != 0) {
                    for (int k = top; k < cols; ++k) m[top][k] += m[i][k];
                    divides = false;
                    break;
                }
        if (!divides) continue;
        factors.push_back(abs(m[top][top]));
        ++top;
    }
    return factors;
}

}  // namespace freelin
