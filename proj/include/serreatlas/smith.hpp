#pragma once
#include "serreatlas/linalg.hpp"

#include <vector>

namespace serreatlas {

// Smith normal form U A V = D with U, V unimodular and D diagonal with
// d_1 | d_2 | ... | d_r, d_i >= 0. Only V is tracked (enough for kernels).
struct SmithForm {
    std::vector<Int> diag; // min(rows, cols) entries, divisibility chain, nonneg
    IntMat V;              // cols x cols unimodular, A*V has the cleared-column shape
    int zero_count() const {
        int z = 0;
        for (const auto& d : diag)
            if (d == 0) ++z;
        return z;
    }
};

SmithForm smith_normal_form(IntMat A);

// Saturated integer kernel of A: columns b with A b = 0 such that every integer
// solution is an integer combination of them (from the SNF change of basis).
IntMat saturated_kernel(const IntMat& A);

// Invariant factors > 1 of coker(A : Z^cols -> Z^rows), plus the free rank.
struct AbelianInvariants {
    std::vector<Int> factors; // nontrivial invariant factors, divisibility order
    int free_rank = 0;
};
AbelianInvariants cokernel_invariants(const IntMat& A);

} // namespace serreatlas
