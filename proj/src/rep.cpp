#include "serreatlas/rep.hpp"
#include "serreatlas/errors.hpp"

#include <numeric>

namespace serreatlas {

namespace {
bool mat_is_zero(const RatMat& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (m(i, j) != 0) return false;
    return true;
}
} // namespace

int Representation::total_dim() const {
    return std::accumulate(dims.begin(), dims.end(), 0);
}

IntVec Representation::dim_vector() const {
    IntVec d(dims.size());
    for (size_t v = 0; v < dims.size(); ++v) d[static_cast<Eigen::Index>(v)] = dims[v];
    return d;
}

void Representation::validate() const {
    if (!alg) throw SchemaError("representation has no algebra");
    if (static_cast<int>(dims.size()) != alg->num_vertices())
        throw SchemaError("dimension vector length does not match the vertex count");
    for (int v : dims)
        if (v < 0) throw SchemaError("negative dimension");
    if (static_cast<int>(maps.size()) != alg->num_arrows())
        throw SchemaError("map count does not match the arrow count");
    for (int a = 0; a < alg->num_arrows(); ++a) {
        const auto& ar = alg->quiver().arrows[a];
        if (maps[a].rows() != dims[ar.tgt] || maps[a].cols() != dims[ar.src])
            throw SchemaError("map for arrow '" + ar.id + "' has the wrong shape");
    }
}

bool Representation::satisfies_relations(std::string* why) const {
    for (size_t r = 0; r < alg->relations().size(); ++r) {
        const auto& rel = alg->relations()[r];
        RatMat sum = RatMat::Zero(dims[rel.target], dims[rel.source]);
        for (const auto& [c, p] : rel.terms) sum += c * path_action(*this, p);
        if (!mat_is_zero(sum)) {
            if (why) *why = "relation " + std::to_string(r) + " does not act as zero";
            return false;
        }
    }
    return true;
}

Representation zero_rep(const BoundQuiverAlgebra& A) {
    Representation M;
    M.alg = &A;
    M.dims.assign(A.num_vertices(), 0);
    M.maps.reserve(A.num_arrows());
    for (int a = 0; a < A.num_arrows(); ++a) {
        const auto& ar = A.quiver().arrows[a];
        M.maps.push_back(RatMat::Zero(M.dims[ar.tgt], M.dims[ar.src]));
    }
    return M;
}

Representation simple_rep(const BoundQuiverAlgebra& A, int v) {
    Representation M = zero_rep(A);
    M.dims[v] = 1;
    for (int a = 0; a < A.num_arrows(); ++a) {
        const auto& ar = A.quiver().arrows[a];
        M.maps[a] = RatMat::Zero(M.dims[ar.tgt], M.dims[ar.src]);
    }
    return M;
}

Representation projective_rep(const BoundQuiverAlgebra& A, int v) {
    Representation M;
    M.alg = &A;
    M.dims.resize(A.num_vertices());
    for (int w = 0; w < A.num_vertices(); ++w)
        M.dims[w] = static_cast<int>(A.block(v, w).size());
    M.maps.reserve(A.num_arrows());
    for (int a = 0; a < A.num_arrows(); ++a) {
        const auto& ar = A.quiver().arrows[a];
        RatMat m = RatMat::Zero(M.dims[ar.tgt], M.dims[ar.src]);
        const auto& src_blk = A.block(v, ar.src);
        for (size_t j = 0; j < src_blk.size(); ++j) {
            Elem prod = A.multiply(A.basis_elem(src_blk[j]), A.arrow(a));
            for (const auto& [b, c] : prod.coeffs)
                m(A.index_in_block(b), static_cast<Eigen::Index>(j)) = c;
        }
        M.maps.push_back(std::move(m));
    }
    return M;
}

Representation injective_rep(const BoundQuiverAlgebra& A, int v) {
    Representation M;
    M.alg = &A;
    M.dims.resize(A.num_vertices());
    for (int w = 0; w < A.num_vertices(); ++w)
        M.dims[w] = static_cast<int>(A.block(w, v).size());
    M.maps.reserve(A.num_arrows());
    for (int a = 0; a < A.num_arrows(); ++a) {
        const auto& ar = A.quiver().arrows[a];
        // left multiplication block(tgt, v) -> block(src, v), transposed
        RatMat L = RatMat::Zero(M.dims[ar.src], M.dims[ar.tgt]);
        const auto& tgt_blk = A.block(ar.tgt, v);
        for (size_t j = 0; j < tgt_blk.size(); ++j) {
            Elem prod = A.multiply(A.arrow(a), A.basis_elem(tgt_blk[j]));
            for (const auto& [b, c] : prod.coeffs)
                L(A.index_in_block(b), static_cast<Eigen::Index>(j)) = c;
        }
        M.maps.push_back(L.transpose());
    }
    return M;
}

Representation direct_sum(const Representation& M, const Representation& N) {
    if (M.alg != N.alg) throw DomainError("direct sum over different algebras");
    Representation S;
    S.alg = M.alg;
    S.dims.resize(M.dims.size());
    for (size_t v = 0; v < M.dims.size(); ++v) S.dims[v] = M.dims[v] + N.dims[v];
    S.maps.reserve(M.maps.size());
    for (size_t a = 0; a < M.maps.size(); ++a) {
        const auto& ar = M.alg->quiver().arrows[a];
        RatMat m = RatMat::Zero(S.dims[ar.tgt], S.dims[ar.src]);
        m.topLeftCorner(M.dims[ar.tgt], M.dims[ar.src]) = M.maps[a];
        m.bottomRightCorner(N.dims[ar.tgt], N.dims[ar.src]) = N.maps[a];
        S.maps.push_back(std::move(m));
    }
    return S;
}

RatMat path_action(const Representation& M, const Path& p) {
    RatMat act = RatMat::Identity(M.dims[p.source], M.dims[p.source]);
    for (int a : p.arrows) act = M.maps[a] * act;
    return act;
}

RatMat elem_action(const Representation& M, const Elem& x) {
    if (x.source < 0 || x.target < 0)
        throw DomainError("element action needs a block-anchored element");
    RatMat act = RatMat::Zero(M.dims[x.target], M.dims[x.source]);
    for (const auto& [b, c] : x.coeffs)
        act += c * path_action(M, M.alg->basis_path(b));
    return act;
}

bool Morphism::is_valid(std::string* why) const {
    if (from.alg != to.alg) {
        if (why) *why = "source and target live over different algebras";
        return false;
    }
    if (blocks.size() != from.dims.size()) {
        if (why) *why = "wrong number of vertex blocks";
        return false;
    }
    for (size_t v = 0; v < blocks.size(); ++v)
        if (blocks[v].rows() != to.dims[v] || blocks[v].cols() != from.dims[v]) {
            if (why) *why = "block at vertex " + std::to_string(v) + " has the wrong shape";
            return false;
        }
    for (int a = 0; a < from.alg->num_arrows(); ++a) {
        const auto& ar = from.alg->quiver().arrows[a];
        RatMat gap = to.maps[a] * blocks[ar.src] - blocks[ar.tgt] * from.maps[a];
        if (!mat_is_zero(gap)) {
            if (why) *why = "square for arrow '" + ar.id + "' does not commute";
            return false;
        }
    }
    return true;
}

bool Morphism::is_iso() const {
    for (size_t v = 0; v < blocks.size(); ++v) {
        if (blocks[v].rows() != blocks[v].cols()) return false;
        if (rank(blocks[v]) != blocks[v].rows()) return false;
    }
    return true;
}

Morphism identity_morphism(const Representation& M) {
    Morphism f;
    f.from = M;
    f.to = M;
    for (int d : M.dims) f.blocks.push_back(RatMat::Identity(d, d));
    return f;
}

Morphism compose(const Morphism& g, const Morphism& f) {
    Morphism h;
    h.from = f.from;
    h.to = g.to;
    for (size_t v = 0; v < f.blocks.size(); ++v) h.blocks.push_back(g.blocks[v] * f.blocks[v]);
    return h;
}

ProjSum projective_sum(const BoundQuiverAlgebra& A, const std::vector<int>& verts) {
    ProjSum S;
    S.verts = verts;
    S.rep.alg = &A;
    S.rep.dims.assign(A.num_vertices(), 0);
    S.offsets.assign(verts.size(), std::vector<int>(A.num_vertices(), 0));
    for (size_t k = 0; k < verts.size(); ++k)
        for (int w = 0; w < A.num_vertices(); ++w) {
            S.offsets[k][w] = S.rep.dims[w];
            S.rep.dims[w] += static_cast<int>(A.block(verts[k], w).size());
        }
    for (size_t k = 0; k < verts.size(); ++k)
        S.gen_pos.push_back(S.offsets[k][verts[k]] + A.unit_index_in_block(verts[k]));

    for (int a = 0; a < A.num_arrows(); ++a) {
        const auto& ar = A.quiver().arrows[a];
        RatMat m = RatMat::Zero(S.rep.dims[ar.tgt], S.rep.dims[ar.src]);
        for (size_t k = 0; k < verts.size(); ++k) {
            const auto& src_blk = A.block(verts[k], ar.src);
            for (size_t j = 0; j < src_blk.size(); ++j) {
                Elem prod = A.multiply(A.basis_elem(src_blk[j]), A.arrow(a));
                for (const auto& [b, c] : prod.coeffs)
                    m(S.offsets[k][ar.tgt] + A.index_in_block(b),
                      S.offsets[k][ar.src] + static_cast<Eigen::Index>(j)) = c;
            }
        }
        S.rep.maps.push_back(std::move(m));
    }
    return S;
}

Morphism hom_between_projectives(const BoundQuiverAlgebra& A, int from_v, int to_v,
                                 const Elem& x) {
    if (!x.is_zero() && (x.source != to_v || x.target != from_v))
        throw DomainError("element does not lie in the required block");
    Morphism f;
    f.from = projective_rep(A, from_v);
    f.to = projective_rep(A, to_v);
    for (int u = 0; u < A.num_vertices(); ++u) {
        const auto& src_blk = A.block(from_v, u);
        RatMat m = RatMat::Zero(f.to.dims[u], f.from.dims[u]);
        for (size_t j = 0; j < src_blk.size(); ++j) {
            Elem prod = A.multiply(x, A.basis_elem(src_blk[j]));
            for (const auto& [b, c] : prod.coeffs)
                m(A.index_in_block(b), static_cast<Eigen::Index>(j)) = c;
        }
        f.blocks.push_back(std::move(m));
    }
    return f;
}

Morphism proj_sum_morphism(const BoundQuiverAlgebra& A, const ProjSum& from, const ProjSum& to,
                           const std::vector<std::vector<Elem>>& comp) {
    Morphism f;
    f.from = from.rep;
    f.to = to.rep;
    for (int u = 0; u < A.num_vertices(); ++u) {
        RatMat blk = RatMat::Zero(to.rep.dims[u], from.rep.dims[u]);
        for (size_t k = 0; k < from.verts.size(); ++k) {
            const auto& src_blk = A.block(from.verts[k], u);
            for (size_t l = 0; l < to.verts.size(); ++l) {
                const Elem& x = comp[l][k];
                if (x.is_zero()) continue;
                if (x.source != to.verts[l] || x.target != from.verts[k])
                    throw DomainError("component element lies in the wrong block");
                for (size_t j = 0; j < src_blk.size(); ++j) {
                    Elem prod = A.multiply(x, A.basis_elem(src_blk[j]));
                    for (const auto& [b, c] : prod.coeffs)
                        blk(to.offsets[l][u] + A.index_in_block(b),
                            from.offsets[k][u] + static_cast<Eigen::Index>(j)) = c;
                }
            }
        }
        f.blocks.push_back(std::move(blk));
    }
    return f;
}

Representation dual_rep(const Representation& M) {
    const BoundQuiverAlgebra& op = M.alg->opposite();
    Representation D;
    D.alg = &op;
    D.dims = M.dims;
    D.maps.reserve(M.maps.size());
    for (const auto& m : M.maps) D.maps.push_back(m.transpose());
    return D;
}

SubQuot sub_rep(const Representation& M, const std::vector<RatMat>& V) {
    SubQuot S;
    S.rep.alg = M.alg;
    S.rep.dims.resize(M.dims.size());
    for (size_t v = 0; v < M.dims.size(); ++v) {
        if (V[v].rows() != M.dims[v]) throw DomainError("subspace has the wrong ambient dimension");
        S.rep.dims[v] = static_cast<int>(V[v].cols());
    }
    for (int a = 0; a < M.alg->num_arrows(); ++a) {
        const auto& ar = M.alg->quiver().arrows[a];
        auto sol = solve_many(V[ar.tgt], M.maps[a] * V[ar.src]);
        if (!sol) throw DomainError("subspace is not arrow-stable");
        S.rep.maps.push_back(std::move(*sol));
    }
    S.map.from = S.rep;
    S.map.to = M;
    S.map.blocks = V;
    return S;
}

SubQuot quotient_rep(const Representation& M, const std::vector<RatMat>& V) {
    SubQuot Q;
    Q.rep.alg = M.alg;
    Q.rep.dims.resize(M.dims.size());
    std::vector<RatMat> comp(M.dims.size()), proj(M.dims.size());
    for (size_t v = 0; v < M.dims.size(); ++v) {
        RatMat basis = image_basis(V[v]); // column-reduced spanning set
        comp[v] = complement_columns(basis);
        Q.rep.dims[v] = static_cast<int>(comp[v].cols());
        RatMat full(M.dims[v], M.dims[v]);
        full.leftCols(basis.cols()) = basis;
        full.rightCols(comp[v].cols()) = comp[v];
        auto inv = inverse(full);
        if (!inv) throw DomainError("internal: complement is not complementary");
        proj[v] = inv->bottomRows(Q.rep.dims[v]);
    }
    for (int a = 0; a < M.alg->num_arrows(); ++a) {
        const auto& ar = M.alg->quiver().arrows[a];
        Q.rep.maps.push_back(proj[ar.tgt] * M.maps[a] * comp[ar.src]);
    }
    Q.map.from = M;
    Q.map.to = Q.rep;
    Q.map.blocks = std::move(proj);
    std::string why;
    if (!Q.map.is_valid(&why)) throw DomainError("subspace is not arrow-stable: " + why);
    return Q;
}

SubQuot kernel_rep(const Morphism& f) {
    std::vector<RatMat> K(f.from.dims.size());
    for (size_t v = 0; v < f.from.dims.size(); ++v) K[v] = kernel_basis(f.blocks[v]);
    return sub_rep(f.from, K);
}

Representation homology_rep(const Morphism& f, const Morphism& g) {
    SubQuot ker = kernel_rep(g);
    // image of f in kernel coordinates
    std::vector<RatMat> I(ker.rep.dims.size());
    for (size_t v = 0; v < I.size(); ++v) {
        auto coords = solve_many(ker.map.blocks[v], f.blocks[v]);
        if (!coords) throw DomainError("maps do not compose to zero");
        I[v] = image_basis(*coords);
    }
    return quotient_rep(ker.rep, I).rep;
}

} // namespace serreatlas
