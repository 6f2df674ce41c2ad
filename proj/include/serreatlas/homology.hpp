#pragma once
#include "serreatlas/klattice.hpp"
#include "serreatlas/rep.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace serreatlas {

// Basis of the intertwiner space Hom_A(M, N).
std::vector<Morphism> hom_basis(const Representation& M, const Representation& N);
int hom_dim(const Representation& M, const Representation& N);

Morphism zero_morphism(const Representation& from, const Representation& to);

// Minimal projective resolution ... -> P_1 -> P_0 -> M -> 0, computed via tops
// (generators are a complement of the radical at every step).
struct Resolution {
    std::vector<ProjSum> terms;  // P_0 .. P_L
    std::vector<Morphism> diffs; // diffs[i]: terms[i+1].rep -> terms[i].rep
    // comps[i][l][k]: the element of e_{u_l} A e_{v_k} (u_l = terms[i-1] summand l,
    // v_k = terms[i] summand k) whose left action is the (l,k) component of the
    // differential P_i -> P_{i-1}; comps[0] is empty.
    std::vector<std::vector<std::vector<Elem>>> comps;
    Morphism augment; // terms[0].rep -> M
    bool complete = false;
};
Resolution projective_resolution(const Representation& M, int max_len);

// dim Ext^i(M, N) for i = 0..max_i (Ext^0 = Hom).
std::vector<int> ext_dims(const Representation& M, const Representation& N, int max_i);

// Derived Nakayama images L_i = D Ext^i(M, A) as modules over the same algebra,
// computed from the dual complex of a minimal resolution over the opposite
// algebra. Refused when the resolution does not terminate (oriented cycles).
struct NakayamaHomology {
    std::vector<Representation> degrees;
};
NakayamaHomology nakayama_homology(const Representation& M);

struct IsoResult {
    bool isomorphic = false;
    bool certain = true; // false only for randomized "no" with hom spaces present
    std::optional<Morphism> witness;
};
// Deterministic for thin modules (gauge fixing over a spanning forest of the
// support graph); randomized with an invertibility certificate otherwise.
IsoResult isomorphism_test(const Representation& M, const Representation& N, uint64_t seed = 0);

struct SerreVerdict {
    bool stable = false;
    std::string reason;               // unstable only
    std::vector<int> nonzero_degrees; // degrees with L_i != 0
    std::optional<Morphism> witness;  // isomorphism L_shift -> M when stable
};
// M is Serre stable at `shift` when the derived Nakayama image is concentrated
// in that single degree and isomorphic to M there.
SerreVerdict is_serre_stable(const Representation& M, int shift);

// Underived Nakayama functor D Hom_A(M, A); exact on the self-injective cyclic
// models where the derived version is refused.
Representation nakayama_plain(const Representation& M);

struct ThinSummand {
    Representation rep;
    std::vector<int> support; // vertices carrying dimension 1
};
// Connected components of the support graph of a thin module.
std::vector<ThinSummand> decompose_thin(const Representation& M);

// Dimension vectors of all submodules of a thin module (= support subsets closed
// under the nonzero arrows), including 0 and M itself.
std::vector<IntVec> enumerate_submodules_thin(const Representation& M);

// <d, [M]> = 0 while <d, [N]> < 0 for every proper nonzero submodule N.
bool is_regular_simple(const Representation& M, const KLattice& L, const IntVec& d);
// every summand of decompose_thin is regular simple
bool is_regular_semisimple(const Representation& M, const KLattice& L, const IntVec& d);

// rho([N]) = dim N_last - dim N_first > 0 for every proper nonzero submodule N.
struct RhoResult {
    bool stable = true;
    std::optional<IntVec> violation; // submodule dimension vector with rho <= 0
};
RhoResult rho_stability(const Representation& M);

} // namespace serreatlas
