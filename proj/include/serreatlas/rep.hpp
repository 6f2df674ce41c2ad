#pragma once
#include "serreatlas/quiver.hpp"

namespace serreatlas {

// Finite-dimensional right module over a bound quiver algebra, given as vector
// spaces Q^{dims[v]} per vertex with a matrix per arrow a: s -> t acting
// M_s -> M_t (shape dims[t] x dims[s]).
struct Representation {
    const BoundQuiverAlgebra* alg = nullptr;
    std::vector<int> dims;
    std::vector<RatMat> maps; // one per arrow

    int total_dim() const;
    IntVec dim_vector() const;
    void validate() const; // shape checks
    // all defining relations act as zero (then so does every length-N path)
    bool satisfies_relations(std::string* why = nullptr) const;
};

Representation zero_rep(const BoundQuiverAlgebra& A);
Representation simple_rep(const BoundQuiverAlgebra& A, int v);
// indecomposable projective P_v = e_v A: slot at w is spanned by block(v, w)
Representation projective_rep(const BoundQuiverAlgebra& A, int v);
// indecomposable injective I_v = (A e_v)^*: slot at w is spanned by block(w, v)^*
Representation injective_rep(const BoundQuiverAlgebra& A, int v);
Representation direct_sum(const Representation& M, const Representation& N);

// matrix of the path/element acting M_source -> M_target
RatMat path_action(const Representation& M, const Path& p);
RatMat elem_action(const Representation& M, const Elem& x); // needs x.source/target set

// Vertex-wise linear map between representations over the same algebra.
struct Morphism {
    Representation from, to;
    std::vector<RatMat> blocks; // per vertex: to.dims[v] x from.dims[v]

    bool is_valid(std::string* why = nullptr) const; // commutes with all arrows
    bool is_iso() const;
};

Morphism identity_morphism(const Representation& M);
Morphism compose(const Morphism& g, const Morphism& f); // g after f

// Direct sum of projectives P_{verts[0]} + ... with coordinate bookkeeping:
// slot w of the sum concatenates block(verts[k], w) ranges; offsets[k][w] is the
// start of summand k inside slot w, gen_pos[k] the row of the generator
// e_{verts[k]} inside slot verts[k].
struct ProjSum {
    Representation rep;
    std::vector<int> verts;
    std::vector<std::vector<int>> offsets;
    std::vector<int> gen_pos;
};
ProjSum projective_sum(const BoundQuiverAlgebra& A, const std::vector<int>& verts);

// The morphism P_{from_v} -> P_{to_v} given by left multiplication with
// x in e_{to_v} A e_{from_v} (i.e. x.source == to_v, x.target == from_v).
Morphism hom_between_projectives(const BoundQuiverAlgebra& A, int from_v, int to_v, const Elem& x);

// Morphism between projective sums with component matrix comp[l][k] (summand k of
// `from` to summand l of `to`), each an element of e_{to.verts[l]} A e_{from.verts[k]}
// acting by left multiplication; zero elements stand for zero components.
Morphism proj_sum_morphism(const BoundQuiverAlgebra& A, const ProjSum& from, const ProjSum& to,
                           const std::vector<std::vector<Elem>>& comp);

// Q-linear dual as a module over the opposite algebra (index-aligned arrows).
Representation dual_rep(const Representation& M);

struct SubQuot {
    Representation rep;
    Morphism map; // inclusion (sub/kernel) or projection (quotient)
};

// Subrepresentation spanned by the columns of V[v] (must be arrow-stable).
SubQuot sub_rep(const Representation& M, const std::vector<RatMat>& V);
// Quotient of M by the arrow-stable subspace spanned by V[v].
SubQuot quotient_rep(const Representation& M, const std::vector<RatMat>& V);
SubQuot kernel_rep(const Morphism& f);
// ker g / im f for composable f, g with g(f(x)) = 0
Representation homology_rep(const Morphism& f, const Morphism& g);

} // namespace serreatlas
