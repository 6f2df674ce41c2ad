#include "serreatlas/smith.hpp"

#include <cstdlib>

namespace serreatlas {

namespace {
Int tdiv(const Int& a, const Int& b) { return a / b; } // truncation, |a - qb| < |b|
} // namespace

SmithForm smith_normal_form(IntMat A) {
    const int rows = static_cast<int>(A.rows());
    const int cols = static_cast<int>(A.cols());
    const int R = std::min(rows, cols);
    IntMat V = IntMat::Identity(cols, cols);

    for (int t = 0; t < R; ++t) {
        for (;;) {
            // smallest nonzero entry of the trailing block -> pivot
            int pi = -1, pj = -1;
            for (int i = t; i < rows; ++i)
                for (int j = t; j < cols; ++j) {
                    if (A(i, j) == 0) continue;
                    if (pi < 0 || abs(A(i, j)) < abs(A(pi, pj))) { pi = i; pj = j; }
                }
            if (pi < 0) { t = R; break; } // trailing block is zero
            if (pi != t) A.row(pi).swap(A.row(t));
            if (pj != t) { A.col(pj).swap(A.col(t)); V.col(pj).swap(V.col(t)); }

            bool clean = true;
            for (int i = t + 1; i < rows; ++i) {
                if (A(i, t) == 0) continue;
                Int q = tdiv(A(i, t), A(t, t));
                if (q != 0) A.row(i) -= q * A.row(t);
                if (A(i, t) != 0) clean = false;
            }
            if (!clean) continue;
            for (int j = t + 1; j < cols; ++j) {
                if (A(t, j) == 0) continue;
                Int q = tdiv(A(t, j), A(t, t));
                if (q != 0) { A.col(j) -= q * A.col(t); V.col(j) -= q * V.col(t); }
                if (A(t, j) != 0) clean = false;
            }
            if (!clean) continue;
            // divisibility chain: pivot must divide the whole trailing block
            bool divides = true;
            for (int i = t + 1; i < rows && divides; ++i)
                for (int j = t + 1; j < cols && divides; ++j)
                    if (A(i, j) % A(t, t) != 0) {
                        A.row(t) += A.row(i);
                        divides = false;
                    }
            if (divides) break;
        }
        if (t >= R) break;
    }

    SmithForm out;
    out.diag.resize(R);
    for (int i = 0; i < R; ++i) out.diag[i] = abs(A(i, i));
    // sign normalization is irrelevant for V-based kernel extraction
    out.V = std::move(V);
    return out;
}

IntMat saturated_kernel(const IntMat& A) {
    SmithForm s = smith_normal_form(A);
    const int cols = static_cast<int>(A.cols());
    const int R = static_cast<int>(s.diag.size());
    std::vector<int> ker_cols;
    for (int j = 0; j < cols; ++j) {
        if (j >= R || s.diag[j] == 0) ker_cols.push_back(j);
    }
    IntMat out(cols, ker_cols.size());
    for (size_t j = 0; j < ker_cols.size(); ++j) out.col(j) = s.V.col(ker_cols[j]);
    return out;
}

AbelianInvariants cokernel_invariants(const IntMat& A) {
    SmithForm s = smith_normal_form(A);
    AbelianInvariants out;
    int nonzero = 0;
    for (const auto& d : s.diag) {
        if (d == 0) continue;
        ++nonzero;
        if (d > 1) out.factors.push_back(d);
    }
    out.free_rank = static_cast<int>(A.rows()) - nonzero;
    return out;
}

} // namespace serreatlas
