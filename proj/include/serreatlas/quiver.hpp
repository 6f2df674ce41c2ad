#pragma once
#include "serreatlas/linalg.hpp"

#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace serreatlas {

struct Arrow {
    std::string id;
    int src = -1;
    int tgt = -1;
};

struct Quiver {
    std::vector<std::string> vertices; // ids, order is fixed and significant
    std::vector<Arrow> arrows;

    int vertex_index(const std::string& id) const;
    int arrow_index(const std::string& id) const;
    bool is_acyclic() const;
    void validate() const; // unique ids, endpoint indices in range
};

// A path is a left-to-right composable arrow sequence; empty = trivial path at `source`.
struct Path {
    int source = -1;
    int target = -1;
    std::vector<int> arrows;
    int length() const { return static_cast<int>(arrows.size()); }
};

// Formal rational combination of parallel paths (all sharing source/target).
struct PathExpr {
    int source = -1;
    int target = -1;
    std::vector<std::pair<Rat, Path>> terms;
};

// Element of the algebra in normal form: sparse coefficients over basis indices,
// supported in the block e_source A e_target. source/target are -1 for zero.
struct Elem {
    int source = -1;
    int target = -1;
    std::vector<std::pair<int, Rat>> coeffs; // basis index -> coefficient, sorted
    bool is_zero() const { return coeffs.empty(); }
};

// Finite-dimensional quotient of a path algebra by relations plus the nilpotency
// truncation J^N. Basis paths are chosen by Gaussian elimination on relation
// products, eliminating the largest path (length, then arrow-sequence order) of
// each row; the surviving (non-pivot) paths of length < N form the basis.
class BoundQuiverAlgebra {
public:
    enum class Family { Canonical, Beilinson, CyclicNakayama, Custom, Opposite };

    // -- structure --
    const Quiver& quiver() const { return q_; }
    int num_vertices() const { return static_cast<int>(q_.vertices.size()); }
    int num_arrows() const { return static_cast<int>(q_.arrows.size()); }
    int nilpotency_bound() const { return nilp_; }
    bool acyclic() const { return acyclic_; }
    int dimension() const { return static_cast<int>(basis_paths_.size()); }
    const std::vector<PathExpr>& relations() const { return relations_; }

    Family family() const { return family_; }
    const std::vector<int>& weights() const { return weights_; }     // canonical
    const std::vector<Rat>& lambdas() const { return lambdas_; }     // canonical
    int beilinson_n() const { return beil_n_; }                      // beilinson
    int nakayama_n() const { return nak_n_; }                        // cyclic
    int nakayama_m() const { return nak_m_; }
    int default_shift() const;

    // -- basis --
    const Path& basis_path(int b) const { return paths_[basis_paths_[b]]; }
    int basis_source(int b) const { return basis_path(b).source; }
    int basis_target(int b) const { return basis_path(b).target; }
    int unit_element(int v) const { return unit_elem_[v]; }
    // basis index of an arrow's path, or -1 when the arrow reduces to 0/non-basis
    int arrow_element(int a) const { return arrow_elem_[a]; }
    // basis indices of e_v A e_w, in basis order
    const std::vector<int>& block(int v, int w) const { return blocks_[v * num_vertices() + w]; }
    int index_in_block(int b) const { return pos_in_block_[b]; }
    // position of e_v inside block(v, v)
    int unit_index_in_block(int v) const { return pos_in_block_[unit_elem_[v]]; }

    // -- arithmetic --
    Elem zero_elem() const { return Elem{}; }
    Elem unit(int v) const;
    Elem arrow(int a) const; // reduced arrow (may be zero when relations kill it)
    Elem basis_elem(int b) const;
    Elem reduce(const PathExpr& e) const;
    Elem multiply_basis(int b1, int b2) const;
    Elem multiply(const Elem& x, const Elem& y) const;
    Elem add(const Elem& x, const Elem& y) const;
    Elem scale(const Rat& c, const Elem& x) const;

    // Cartan matrix: entry (v, w) = dim e_v A e_w; rows = projective dim vectors,
    // columns = injective dim vectors.
    IntMat cartan_matrix() const;

    // Opposite algebra with an index-aligned basis (basis path b is the reversal of
    // this algebra's basis path b). Built lazily, cached; its opposite() is *this.
    const BoundQuiverAlgebra& opposite() const;

    BoundQuiverAlgebra(BoundQuiverAlgebra&& o) noexcept;
    BoundQuiverAlgebra& operator=(BoundQuiverAlgebra&& o) noexcept;
    BoundQuiverAlgebra(const BoundQuiverAlgebra&) = delete;
    BoundQuiverAlgebra& operator=(const BoundQuiverAlgebra&) = delete;
    ~BoundQuiverAlgebra() = default;

    // arrows grouped by endpoint, by vertex
    const std::vector<int>& arrows_from(int v) const { return arrows_from_[v]; }
    const std::vector<int>& arrows_into(int v) const { return arrows_into_[v]; }

private:
    friend BoundQuiverAlgebra build_custom(Quiver, std::vector<PathExpr>, int);
    friend BoundQuiverAlgebra build_canonical(const std::vector<int>&, const std::vector<Rat>&);
    friend BoundQuiverAlgebra build_beilinson(int);
    friend BoundQuiverAlgebra build_cyclic_nakayama(int, int);

    BoundQuiverAlgebra() = default;
    void construct(Quiver q, std::vector<PathExpr> relations, int nilpotency_bound);
    void build_opposite_of(const BoundQuiverAlgebra& primal);
    void finish_indexing();
    int path_lookup(int source, const std::vector<int>& arrows) const;

    Quiver q_;
    int nilp_ = 0;
    bool acyclic_ = false;
    std::vector<PathExpr> relations_;

    Family family_ = Family::Custom;
    std::vector<int> weights_;
    std::vector<Rat> lambdas_;
    int beil_n_ = -1, nak_n_ = -1, nak_m_ = -1;

    // all paths of length < N, ordered by (length, arrow sequence)
    std::vector<Path> paths_;
    std::unordered_map<std::string, int> path_key_; // encoded path -> index
    // normal form of every path, sparse over basis indices
    std::vector<std::vector<std::pair<int, Rat>>> nf_;
    std::vector<int> basis_paths_;   // path indices forming the basis
    std::vector<int> basis_pos_;     // path index -> basis index or -1
    std::vector<int> unit_elem_;     // vertex -> basis index of e_v
    std::vector<int> arrow_elem_;    // arrow -> basis index or -1
    std::vector<std::vector<int>> blocks_;
    std::vector<int> pos_in_block_;
    std::vector<std::vector<int>> arrows_from_, arrows_into_;

    mutable std::unique_ptr<BoundQuiverAlgebra> op_; // lazily built under a lock
    const BoundQuiverAlgebra* primal_ = nullptr;     // set on opposites
};

// -- builders --

// Ringel's star algebra: arms of lengths weights[i] from source 0 to sink c,
// arm-i composites tied by composite_i = composite_1 + lambda_i * composite_2.
// Vertex order: 0, then arm i = 1..n interior vertices a = 1..p_i - 1, then c.
BoundQuiverAlgebra build_canonical(const std::vector<int>& weights, const std::vector<Rat>& lambdas);

// n+1 vertices 0..n, arrows x_0..x_n at each step, commutativity relations.
BoundQuiverAlgebra build_beilinson(int n);

// Cyclic quiver on n vertices with all paths of length m set to zero.
BoundQuiverAlgebra build_cyclic_nakayama(int n, int m);

// Quotient by arbitrary relations (terms of length >= 1) with a caller-supplied
// nilpotency bound N; the bound is certified (every length-N path must reduce to
// zero against untruncated relation products) and rejected otherwise.
BoundQuiverAlgebra build_custom(Quiver q, std::vector<PathExpr> relations, int nilpotency_bound);

// Path-expression helpers.
PathExpr path_expr(const Quiver& q, const std::vector<std::pair<Rat, std::vector<int>>>& terms);
Path make_path(const Quiver& q, const std::vector<int>& arrows, int source_if_trivial = -1);

} // namespace serreatlas
