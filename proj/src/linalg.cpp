#include "serreatlas/linalg.hpp"
#include "serreatlas/errors.hpp"

namespace serreatlas {

std::vector<int> rref_inplace(RatMat& m) {
    const int rows = static_cast<int>(m.rows());
    const int cols = static_cast<int>(m.cols());
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (m(i, c) != 0) { p = i; break; }
        if (p < 0) continue;
        if (p != r) m.row(p).swap(m.row(r));
        m.row(r) /= m(r, c);
        for (int i = 0; i < rows; ++i) {
            if (i == r || m(i, c) == 0) continue;
            m.row(i) -= m(i, c) * m.row(r);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

int rank(RatMat m) { return static_cast<int>(rref_inplace(m).size()); }

RatMat kernel_basis(const RatMat& m) {
    RatMat r = m;
    std::vector<int> piv = rref_inplace(r);
    const int cols = static_cast<int>(m.cols());
    std::vector<bool> is_piv(cols, false);
    for (int c : piv) is_piv[c] = true;
    const int k = cols - static_cast<int>(piv.size());
    RatMat out = RatMat::Zero(cols, k);
    int j = 0;
    for (int c = 0; c < cols; ++c) {
        if (is_piv[c]) continue;
        out(c, j) = 1;
        for (size_t i = 0; i < piv.size(); ++i) out(piv[i], j) = -r(static_cast<int>(i), c);
        ++j;
    }
    return out;
}

RatMat image_basis(const RatMat& m) {
    RatMat r = m;
    std::vector<int> piv = rref_inplace(r);
    RatMat out(m.rows(), piv.size());
    for (size_t j = 0; j < piv.size(); ++j) out.col(j) = m.col(piv[j]);
    return out;
}

std::optional<RatMat> solve_many(const RatMat& A, const RatMat& B) {
    if (A.rows() != B.rows()) throw DomainError("solve: row mismatch");
    RatMat aug(A.rows(), A.cols() + B.cols());
    aug << A, B;
    std::vector<int> piv = rref_inplace(aug);
    // inconsistent iff some pivot lands in the B block
    for (int c : piv)
        if (c >= A.cols()) return std::nullopt;
    RatMat X = RatMat::Zero(A.cols(), B.cols());
    for (size_t i = 0; i < piv.size(); ++i)
        X.row(piv[i]) = aug.block(static_cast<int>(i), A.cols(), 1, B.cols());
    return X;
}

std::optional<RatVec> solve(const RatMat& A, const RatVec& b) {
    auto X = solve_many(A, b);
    if (!X) return std::nullopt;
    return RatVec(X->col(0));
}

std::optional<RatMat> inverse(const RatMat& m) {
    if (m.rows() != m.cols()) throw DomainError("inverse: not square");
    const int n = static_cast<int>(m.rows());
    RatMat aug(n, 2 * n);
    aug << m, RatMat::Identity(n, n);
    std::vector<int> piv = rref_inplace(aug);
    if (static_cast<int>(piv.size()) < n || (n > 0 && piv[n - 1] != n - 1)) return std::nullopt;
    return RatMat(aug.block(0, n, n, n));
}

RatMat complement_columns(const RatMat& s) {
    const int n = static_cast<int>(s.rows());
    const int k = static_cast<int>(s.cols());
    // Pivot rows of s (from rref of s^T) are coordinates where s is "supported";
    // the remaining standard basis vectors complete the column span.
    RatMat st = s.transpose();
    std::vector<int> piv = rref_inplace(st);
    if (static_cast<int>(piv.size()) != k) throw DomainError("complement_columns: dependent columns");
    std::vector<bool> is_piv(n, false);
    for (int c : piv) is_piv[c] = true;
    RatMat out = RatMat::Zero(n, n - k);
    int j = 0;
    for (int c = 0; c < n; ++c)
        if (!is_piv[c]) out(c, j++) = 1;
    return out;
}

IntVec to_int_vec(const std::vector<int>& v) {
    IntVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out(static_cast<int>(i)) = v[i];
    return out;
}

RatMat int_to_rat(const IntMat& m) {
    RatMat out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out(i, j) = Rat(m(i, j));
    return out;
}

RatVec int_to_rat(const IntVec& v) {
    RatVec out(v.size());
    for (int i = 0; i < v.size(); ++i) out(i) = Rat(v(i));
    return out;
}

IntMat rat_to_int(const RatMat& m) {
    IntMat out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            if (denominator(m(i, j)) != 1) throw DomainError("rat_to_int: non-integral entry");
            out(i, j) = numerator(m(i, j));
        }
    return out;
}

} // namespace serreatlas
