#pragma once
#include "serreatlas/quiver.hpp"
#include "serreatlas/smith.hpp"

#include <optional>

namespace serreatlas {

// Integral bilinear/Coxeter data on the dimension-vector lattice of an acyclic
// algebra: euler_form(x, y) = x^T C^{-1} y satisfies
// euler_form([M], [N]) = sum_i (-1)^i dim Ext^i(M, N), and the Coxeter matrix
// Phi = (-1)^shift * C * C^{-T} sends [P_v] to (-1)^shift [I_v].
struct KLattice {
    IntMat cartan;
    IntMat cartan_inv;
    IntMat coxeter;
    int shift = 1;

    int rank() const { return static_cast<int>(cartan.rows()); }
};

// DomainError when the quiver has an oriented cycle (infinite global dimension
// territory: the Cartan matrix need not be invertible over Z there).
KLattice make_klattice(const BoundQuiverAlgebra& A, int shift);
KLattice make_klattice(const BoundQuiverAlgebra& A); // family default shift

Int euler_form(const KLattice& L, const IntVec& x, const IntVec& y);
IntVec coxeter_transform(const KLattice& L, const IntVec& d);
bool is_coxeter_stable(const KLattice& L, const IntVec& d); // Phi d == d

// Saturated basis of the integral fixed lattice ker(Phi - id).
IntMat coxeter_fixed_space(const KLattice& L);
// dim_Q ker (Phi - id)^k for k = 1..up_to (stabilizes at the generalized fixed space)
std::vector<int> coxeter_jordan_kernel_dims(const KLattice& L, int up_to);

// Exhaustive study of stable vectors in the box 0 <= x <= d.
struct MinimalityResult {
    bool stable = false;         // d itself is fixed by Phi
    bool minimal = false;        // no other nonzero fixed vector below d
    bool unique_minimal = false; // the box has exactly one minimal fixed vector
    std::vector<IntVec> smaller_stable;
};
MinimalityResult is_minimal_coxeter_stable(const KLattice& L, const IntVec& d);

// Finitely presented abelian group Z^rank / <relations, gamma>.
struct GradingPresentation {
    int rank = 0;
    std::vector<IntVec> relations;
    IntVec gamma;
};
AbelianInvariants grading_quotient(const GradingPresentation& P);
// Presentation with generators x_1..x_n, relations p_i x_i = p_{i+1} x_{i+1},
// quotiented further by gamma = x_1.
GradingPresentation canonical_grading_presentation(const std::vector<int>& weights);

} // namespace serreatlas
