#include "serreatlas/homology.hpp"
#include "serreatlas/errors.hpp"
#include "serreatlas/rng.hpp"

#include <algorithm>
#include <numeric>

namespace serreatlas {

namespace {

// flatten the vertex blocks of a morphism-shaped family into one column vector
RatVec flatten_blocks(const std::vector<RatMat>& blocks) {
    Eigen::Index total = 0;
    for (const auto& b : blocks) total += b.size();
    RatVec v(total);
    Eigen::Index at = 0;
    for (const auto& b : blocks)
        for (Eigen::Index j = 0; j < b.cols(); ++j)
            for (Eigen::Index i = 0; i < b.rows(); ++i) v[at++] = b(i, j);
    return v;
}

} // namespace

std::vector<Morphism> hom_basis(const Representation& M, const Representation& N) {
    if (M.alg != N.alg) throw DomainError("hom space needs both modules over one algebra");
    const auto& A = *M.alg;
    const int nv = A.num_vertices();
    // unknowns: entries of f_v (N.dims[v] x M.dims[v]), column-major per vertex
    std::vector<int> off(nv + 1, 0);
    for (int v = 0; v < nv; ++v) off[v + 1] = off[v] + N.dims[v] * M.dims[v];
    const int nvars = off[nv];

    Eigen::Index nrows = 0;
    for (int a = 0; a < A.num_arrows(); ++a) {
        const auto& ar = A.quiver().arrows[a];
        nrows += static_cast<Eigen::Index>(N.dims[ar.tgt]) * M.dims[ar.src];
    }
    RatMat eqs = RatMat::Zero(nrows, nvars);
    Eigen::Index row0 = 0;
    for (int a = 0; a < A.num_arrows(); ++a) {
        const auto& ar = A.quiver().arrows[a];
        const int s = ar.src, t = ar.tgt;
        // N.maps[a] * f_s - f_t * M.maps[a] = 0, equation (i, j) indexed over
        // N.dims[t] x M.dims[s]
        for (int i = 0; i < N.dims[t]; ++i)
            for (int j = 0; j < M.dims[s]; ++j) {
                Eigen::Index r = row0 + static_cast<Eigen::Index>(j) * N.dims[t] + i;
                for (int k = 0; k < N.dims[s]; ++k)
                    eqs(r, off[s] + j * N.dims[s] + k) += N.maps[a](i, k);
                for (int k = 0; k < M.dims[t]; ++k)
                    eqs(r, off[t] + k * N.dims[t] + i) -= M.maps[a](k, j);
            }
        row0 += static_cast<Eigen::Index>(N.dims[t]) * M.dims[s];
    }
    RatMat K = kernel_basis(eqs);
    std::vector<Morphism> basis;
    for (Eigen::Index c = 0; c < K.cols(); ++c) {
        Morphism f;
        f.from = M;
        f.to = N;
        for (int v = 0; v < nv; ++v) {
            RatMat blk(N.dims[v], M.dims[v]);
            for (int j = 0; j < M.dims[v]; ++j)
                for (int i = 0; i < N.dims[v]; ++i) blk(i, j) = K(off[v] + j * N.dims[v] + i, c);
            f.blocks.push_back(std::move(blk));
        }
        basis.push_back(std::move(f));
    }
    return basis;
}

int hom_dim(const Representation& M, const Representation& N) {
    return static_cast<int>(hom_basis(M, N).size());
}

Morphism zero_morphism(const Representation& from, const Representation& to) {
    Morphism f;
    f.from = from;
    f.to = to;
    for (size_t v = 0; v < from.dims.size(); ++v)
        f.blocks.push_back(RatMat::Zero(to.dims[v], from.dims[v]));
    return f;
}

Resolution projective_resolution(const Representation& M, int max_len) {
    M.validate();
    const auto& A = *M.alg;
    const int nv = A.num_vertices();
    Resolution R;
    R.comps.push_back({}); // align comps[i] with diffs into terms[i-1]

    Representation cur = M;                 // current syzygy, in its own coordinates
    std::optional<Morphism> incl_prev;      // cur -> terms.back().rep
    for (int step = 0; step <= max_len; ++step) {
        // top of cur: complement of the radical sum(im of incoming arrows)
        std::vector<int> verts;
        std::vector<RatVec> gens;
        for (int t = 0; t < nv; ++t) {
            Eigen::Index incols = 0;
            for (int a : A.arrows_into(t)) incols += cur.maps[a].cols();
            RatMat rad(cur.dims[t], incols);
            Eigen::Index at = 0;
            for (int a : A.arrows_into(t)) {
                rad.middleCols(at, cur.maps[a].cols()) = cur.maps[a];
                at += cur.maps[a].cols();
            }
            RatMat gen = complement_columns(image_basis(rad));
            for (Eigen::Index c = 0; c < gen.cols(); ++c) {
                verts.push_back(t);
                gens.push_back(gen.col(c));
            }
        }
        if (verts.empty() && step > 0) {
            R.complete = true;
            break;
        }
        ProjSum P = projective_sum(A, verts);
        // cover: generator k maps to gens[k]; basis path b of block(v_k, w) maps
        // to gens[k] acted on by b
        Morphism eps;
        eps.from = P.rep;
        eps.to = cur;
        for (int w = 0; w < nv; ++w) {
            RatMat blk = RatMat::Zero(cur.dims[w], P.rep.dims[w]);
            for (size_t k = 0; k < verts.size(); ++k) {
                const auto& b_blk = A.block(verts[k], w);
                for (size_t j = 0; j < b_blk.size(); ++j)
                    blk.col(P.offsets[k][w] + static_cast<Eigen::Index>(j)) =
                        path_action(cur, A.basis_path(b_blk[j])) * gens[k];
            }
            eps.blocks.push_back(std::move(blk));
        }
        if (step == 0) {
            R.augment = eps;
        } else {
            Morphism d = compose(*incl_prev, eps);
            // extract the component elements from the generator images
            const ProjSum& prev = R.terms.back();
            std::vector<std::vector<Elem>> comp(prev.verts.size(),
                                                std::vector<Elem>(verts.size()));
            for (size_t k = 0; k < verts.size(); ++k) {
                const int vk = verts[k];
                RatVec img = d.blocks[vk].col(P.gen_pos[k]);
                for (size_t l = 0; l < prev.verts.size(); ++l) {
                    const int ul = prev.verts[l];
                    const auto& blk = A.block(ul, vk);
                    Elem x{ul, vk, {}};
                    for (size_t j = 0; j < blk.size(); ++j) {
                        const Rat& c = img[prev.offsets[l][vk] + static_cast<Eigen::Index>(j)];
                        if (c != 0) x.coeffs.emplace_back(blk[j], c);
                    }
                    comp[l][k] = std::move(x);
                }
            }
            R.comps.push_back(std::move(comp));
            R.diffs.push_back(std::move(d));
        }
        R.terms.push_back(std::move(P));

        SubQuot ker = kernel_rep(eps);
        if (ker.rep.total_dim() == 0) {
            R.complete = true;
            break;
        }
        cur = ker.rep;
        incl_prev = ker.map;
    }
    return R;
}

std::vector<int> ext_dims(const Representation& M, const Representation& N, int max_i) {
    if (M.alg != N.alg) throw DomainError("ext needs both modules over one algebra");
    Resolution R = projective_resolution(M, max_i + 1);
    const int L = static_cast<int>(R.terms.size()) - 1; // highest computed term
    // hom_dims[i] = dim Hom(P_i, N) = sum over summands of N at the summand vertex
    auto hom_dims = [&](int i) {
        int d = 0;
        for (int v : R.terms[i].verts) d += N.dims[v];
        return d;
    };
    // T_i : Hom(P_{i-1}, N) -> Hom(P_i, N)
    auto transfer = [&](int i) {
        RatMat T = RatMat::Zero(hom_dims(i), hom_dims(i - 1));
        Eigen::Index r0 = 0;
        for (size_t k = 0; k < R.terms[i].verts.size(); ++k) {
            Eigen::Index c0 = 0;
            for (size_t l = 0; l < R.terms[i - 1].verts.size(); ++l) {
                T.block(r0, c0, N.dims[R.terms[i].verts[k]], N.dims[R.terms[i - 1].verts[l]]) =
                    elem_action(N, R.comps[i][l][k]);
                c0 += N.dims[R.terms[i - 1].verts[l]];
            }
            r0 += N.dims[R.terms[i].verts[k]];
        }
        return T;
    };

    std::vector<int> out;
    int prev_rank = 0; // rank of T_i entering the computation of Ext^i
    for (int i = 0; i <= max_i; ++i) {
        if (i > L) {
            out.push_back(0);
            prev_rank = 0;
            continue;
        }
        int ker_next, next_rank = 0;
        if (i + 1 > L) {
            ker_next = hom_dims(i); // T_{i+1} is the zero map
        } else {
            RatMat T = transfer(i + 1);
            next_rank = rank(T);
            ker_next = static_cast<int>(T.cols()) - next_rank;
        }
        out.push_back(ker_next - prev_rank);
        prev_rank = next_rank;
    }
    return out;
}

namespace {

// the morphism between opposite-projective sums whose (l -> k) component is left
// multiplication (in the opposite algebra) by the transposed resolution element
Morphism dual_transfer(const BoundQuiverAlgebra& op, const ProjSum& from, const ProjSum& to,
                       const std::vector<std::vector<Elem>>& comp) {
    // comp[l][k] lives in e_{u_l} A e_{v_k}; in the opposite algebra it is an
    // element of e_{v_k} A^op e_{u_l} with the same coefficients (aligned bases)
    std::vector<std::vector<Elem>> opcomp(to.verts.size(),
                                          std::vector<Elem>(from.verts.size()));
    for (size_t l = 0; l < from.verts.size(); ++l)
        for (size_t k = 0; k < to.verts.size(); ++k)
            opcomp[k][l] = Elem{to.verts[k], from.verts[l], comp[l][k].coeffs};
    return proj_sum_morphism(op, from, to, opcomp);
}

} // namespace

NakayamaHomology nakayama_homology(const Representation& M) {
    const auto& A = *M.alg;
    Resolution R = projective_resolution(M, A.num_vertices() + 1);
    if (!R.complete)
        throw DomainError("derived Nakayama needs a finite projective resolution; "
                          "this module's resolution did not terminate");
    const auto& op = A.opposite();
    const int L = static_cast<int>(R.terms.size()) - 1;
    std::vector<ProjSum> duals;
    for (int i = 0; i <= L; ++i) duals.push_back(projective_sum(op, R.terms[i].verts));
    std::vector<Morphism> deltas; // deltas[i]: duals[i] -> duals[i+1]
    for (int i = 1; i <= L; ++i)
        deltas.push_back(dual_transfer(op, duals[i - 1], duals[i], R.comps[i]));

    NakayamaHomology H;
    Representation zero = zero_rep(op);
    for (int i = 0; i <= L; ++i) {
        Morphism in = (i == 0) ? zero_morphism(zero, duals[0].rep) : deltas[i - 1];
        Morphism out = (i == L) ? zero_morphism(duals[L].rep, zero) : deltas[i];
        Representation h_op = homology_rep(in, out);
        H.degrees.push_back(dual_rep(h_op));
    }
    return H;
}

// ---------- isomorphism testing ----------

namespace {

bool is_thin(const Representation& M) {
    for (int d : M.dims)
        if (d > 1) return false;
    return true;
}

IsoResult thin_iso(const Representation& M, const Representation& N) {
    const auto& A = *M.alg;
    IsoResult res;
    res.certain = true;
    // support must coincide exactly (vertices and nonzero arrows)
    for (size_t v = 0; v < M.dims.size(); ++v)
        if (M.dims[v] != N.dims[v]) return res;
    auto entry = [](const RatMat& m) { return m.size() > 0 ? m(0, 0) : Rat(0); };
    for (int a = 0; a < A.num_arrows(); ++a) {
        bool mz = M.maps[a].size() == 0 || entry(M.maps[a]) == 0;
        bool nz = N.maps[a].size() == 0 || entry(N.maps[a]) == 0;
        if (mz != nz) return res;
    }
    // gauge scalars over a spanning forest of the support graph
    const int nv = A.num_vertices();
    std::vector<Rat> g(nv, Rat(0));
    std::vector<bool> seen(nv, false);
    for (int root = 0; root < nv; ++root) {
        if (M.dims[root] == 0 || seen[root]) continue;
        g[root] = 1;
        seen[root] = true;
        std::vector<int> stack{root};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int a = 0; a < A.num_arrows(); ++a) {
                const auto& ar = A.quiver().arrows[a];
                if (M.maps[a].size() == 0 || entry(M.maps[a]) == 0) continue;
                Rat ma = entry(M.maps[a]), na = entry(N.maps[a]);
                if (ar.src == v && !seen[ar.tgt]) {
                    // f_t m_a = n_a f_s
                    g[ar.tgt] = na * g[v] / ma;
                    seen[ar.tgt] = true;
                    stack.push_back(ar.tgt);
                } else if (ar.tgt == v && !seen[ar.src]) {
                    g[ar.src] = g[v] * ma / na;
                    seen[ar.src] = true;
                    stack.push_back(ar.src);
                }
            }
        }
    }
    // all constraints (non-tree arrows included) must hold
    for (int a = 0; a < A.num_arrows(); ++a) {
        if (M.maps[a].size() == 0 || entry(M.maps[a]) == 0) continue;
        const auto& ar = A.quiver().arrows[a];
        if (g[ar.tgt] * entry(M.maps[a]) != entry(N.maps[a]) * g[ar.src]) return res;
    }
    res.isomorphic = true;
    Morphism w;
    w.from = M;
    w.to = N;
    for (int v = 0; v < nv; ++v) {
        RatMat blk(N.dims[v], M.dims[v]);
        if (M.dims[v] == 1) blk(0, 0) = g[v];
        w.blocks.push_back(std::move(blk));
    }
    res.witness = std::move(w);
    return res;
}

} // namespace

IsoResult isomorphism_test(const Representation& M, const Representation& N, uint64_t seed) {
    if (M.alg != N.alg) throw DomainError("isomorphism test needs one common algebra");
    IsoResult res;
    for (size_t v = 0; v < M.dims.size(); ++v)
        if (M.dims[v] != N.dims[v]) return res; // certain no

    if (M.total_dim() == 0) {
        res.isomorphic = true;
        res.witness = zero_morphism(M, N);
        return res;
    }
    if (is_thin(M) && is_thin(N)) return thin_iso(M, N);

    auto MN = hom_basis(M, N);
    if (MN.empty()) return res; // certain no
    if (static_cast<int>(MN.size()) != hom_dim(N, M)) return res;
    if (hom_dim(M, M) != hom_dim(N, N)) return res;

    const uint64_t bound = 32u * static_cast<uint64_t>(M.total_dim());
    Rng rng(Rng::mix(seed, 0x15edb0));
    for (int trial = 0; trial < 8; ++trial) {
        Morphism f = zero_morphism(M, N);
        for (const auto& b : MN) {
            Rat c = Rat(Int(rng.below(bound)));
            for (size_t v = 0; v < f.blocks.size(); ++v) f.blocks[v] += c * b.blocks[v];
        }
        if (f.is_iso()) {
            res.isomorphic = true;
            res.witness = std::move(f);
            return res;
        }
    }
    res.isomorphic = false;
    res.certain = false; // randomized misses are possible with probability <= 2^-40
    return res;
}

// ---------- Serre stability ----------

SerreVerdict is_serre_stable(const Representation& M, int shift) {
    SerreVerdict V;
    NakayamaHomology H = nakayama_homology(M);
    for (size_t i = 0; i < H.degrees.size(); ++i)
        if (H.degrees[i].total_dim() != 0) V.nonzero_degrees.push_back(static_cast<int>(i));

    bool concentrated = V.nonzero_degrees.size() == 1 && V.nonzero_degrees[0] == shift &&
                        shift < static_cast<int>(H.degrees.size());
    if (concentrated) {
        IsoResult iso = isomorphism_test(H.degrees[shift], M);
        if (iso.isomorphic) {
            V.stable = true;
            V.witness = iso.witness;
            return V;
        }
        V.reason = "derived Nakayama image sits in the right degree but is not "
                   "isomorphic to the module";
        return V;
    }
    // diagnose projective summands for thin modules: they put homology in degree 0
    bool proj_summand = false;
    if (is_thin(M)) {
        for (const auto& s : decompose_thin(M)) {
            for (int v = 0; v < M.alg->num_vertices(); ++v) {
                Representation P = projective_rep(*M.alg, v);
                if (P.dims == s.rep.dims && isomorphism_test(s.rep, P).isomorphic) {
                    proj_summand = true;
                    break;
                }
            }
            if (proj_summand) break;
        }
    }
    if (proj_summand)
        V.reason = "contains a projective summand";
    else if (V.nonzero_degrees.empty())
        V.reason = "derived Nakayama image vanishes entirely";
    else {
        V.reason = "derived Nakayama image is nonzero in degree";
        for (int d : V.nonzero_degrees) V.reason += " " + std::to_string(d);
    }
    return V;
}

Representation nakayama_plain(const Representation& M) {
    const auto& A = *M.alg;
    const auto& op = A.opposite();
    const int nv = A.num_vertices();
    // X_v = Hom(M, P_v), a module over the opposite algebra via postcomposition
    std::vector<std::vector<Morphism>> X(nv);
    std::vector<Representation> projs;
    for (int v = 0; v < nv; ++v) {
        projs.push_back(projective_rep(A, v));
        X[v] = hom_basis(M, projs[v]);
    }
    Representation Xrep;
    Xrep.alg = &op;
    Xrep.dims.resize(nv);
    for (int v = 0; v < nv; ++v) Xrep.dims[v] = static_cast<int>(X[v].size());
    Xrep.maps.resize(A.num_arrows());
    for (int a = 0; a < A.num_arrows(); ++a) {
        const auto& ar = A.quiver().arrows[a]; // primal a: s -> t; op arrow: t -> s
        const int s = ar.src, t = ar.tgt;
        // postcompose with left multiplication L_a : P_t -> P_s
        Morphism La = hom_between_projectives(A, t, s, A.arrow(a));
        RatMat T = RatMat::Zero(Xrep.dims[s], Xrep.dims[t]);
        if (Xrep.dims[s] > 0 && Xrep.dims[t] > 0) {
            // express L_a o f in the chosen basis of X_s by a flattened solve
            Eigen::Index flat = 0;
            for (int u = 0; u < nv; ++u)
                flat += static_cast<Eigen::Index>(projs[s].dims[u]) * M.dims[u];
            RatMat basis_s(flat, Xrep.dims[s]);
            for (int c = 0; c < Xrep.dims[s]; ++c) basis_s.col(c) = flatten_blocks(X[s][c].blocks);
            RatMat images(flat, Xrep.dims[t]);
            for (int c = 0; c < Xrep.dims[t]; ++c)
                images.col(c) = flatten_blocks(compose(La, X[t][c]).blocks);
            auto sol = solve_many(basis_s, images);
            if (!sol) throw DomainError("internal: hom image left the hom space");
            T = *sol;
        }
        Xrep.maps[a] = std::move(T);
    }
    return dual_rep(Xrep);
}

// ---------- thin-module utilities ----------

std::vector<ThinSummand> decompose_thin(const Representation& M) {
    if (!is_thin(M)) throw DomainError("decomposition implemented for thin modules only");
    const auto& A = *M.alg;
    const int nv = A.num_vertices();
    std::vector<int> comp(nv, -1);
    int ncomp = 0;
    for (int v = 0; v < nv; ++v) {
        if (M.dims[v] == 0 || comp[v] >= 0) continue;
        std::vector<int> stack{v};
        comp[v] = ncomp;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int a = 0; a < A.num_arrows(); ++a) {
                const auto& ar = A.quiver().arrows[a];
                if (M.maps[a].size() == 0 || M.maps[a](0, 0) == 0) continue;
                int other = -1;
                if (ar.src == u)
                    other = ar.tgt;
                else if (ar.tgt == u)
                    other = ar.src;
                if (other >= 0 && comp[other] < 0) {
                    comp[other] = comp[u];
                    stack.push_back(other);
                }
            }
        }
        ++ncomp;
    }
    std::vector<ThinSummand> out(ncomp);
    for (auto& s : out) {
        s.rep = zero_rep(A);
        s.rep.dims.assign(nv, 0);
    }
    for (int v = 0; v < nv; ++v)
        if (comp[v] >= 0) {
            out[comp[v]].rep.dims[v] = 1;
            out[comp[v]].support.push_back(v);
        }
    for (auto& s : out) {
        for (int a = 0; a < A.num_arrows(); ++a) {
            const auto& ar = A.quiver().arrows[a];
            RatMat m(s.rep.dims[ar.tgt], s.rep.dims[ar.src]);
            if (m.size() == 1 && M.maps[a].size() == 1) m(0, 0) = M.maps[a](0, 0);
            else if (m.size() == 1) m(0, 0) = 0;
            s.rep.maps[a] = std::move(m);
        }
    }
    return out;
}

std::vector<IntVec> enumerate_submodules_thin(const Representation& M) {
    if (!is_thin(M)) throw DomainError("submodule enumeration implemented for thin modules only");
    const auto& A = *M.alg;
    std::vector<int> supp;
    for (int v = 0; v < A.num_vertices(); ++v)
        if (M.dims[v] == 1) supp.push_back(v);
    if (supp.size() > 20) throw DomainError("thin support too large to enumerate");
    std::vector<int> pos(A.num_vertices(), -1);
    for (size_t i = 0; i < supp.size(); ++i) pos[supp[i]] = static_cast<int>(i);

    std::vector<IntVec> out;
    for (uint32_t mask = 0; mask < (1u << supp.size()); ++mask) {
        bool closed = true;
        for (int a = 0; a < A.num_arrows() && closed; ++a) {
            const auto& ar = A.quiver().arrows[a];
            if (M.maps[a].size() == 0 || M.maps[a](0, 0) == 0) continue;
            bool sin = pos[ar.src] >= 0 && (mask >> pos[ar.src] & 1);
            bool tin = pos[ar.tgt] >= 0 && (mask >> pos[ar.tgt] & 1);
            if (sin && !tin) closed = false;
        }
        if (!closed) continue;
        IntVec d = IntVec::Zero(A.num_vertices());
        for (size_t i = 0; i < supp.size(); ++i)
            if (mask >> i & 1) d[supp[i]] = 1;
        out.push_back(std::move(d));
    }
    return out;
}

bool is_regular_simple(const Representation& M, const KLattice& L, const IntVec& d) {
    if (M.total_dim() == 0) return false;
    IntVec m = M.dim_vector();
    if (euler_form(L, d, m) != 0) return false;
    for (const auto& s : enumerate_submodules_thin(M)) {
        bool zero = true, full = true;
        for (int i = 0; i < s.size(); ++i) {
            if (s[i] != 0) zero = false;
            if (s[i] != m[i]) full = false;
        }
        if (zero || full) continue;
        if (euler_form(L, d, s) >= 0) return false;
    }
    return true;
}

bool is_regular_semisimple(const Representation& M, const KLattice& L, const IntVec& d) {
    auto parts = decompose_thin(M);
    if (parts.empty()) return false;
    for (const auto& p : parts)
        if (!is_regular_simple(p.rep, L, d)) return false;
    return true;
}

RhoResult rho_stability(const Representation& M) {
    const auto& A = *M.alg;
    if (A.family() != BoundQuiverAlgebra::Family::Beilinson)
        throw DomainError("rho stability is defined for the beilinson family");
    RhoResult R;
    const int first = 0, last = A.num_vertices() - 1;
    IntVec m = M.dim_vector();
    for (const auto& s : enumerate_submodules_thin(M)) {
        bool zero = true, full = true;
        for (int i = 0; i < s.size(); ++i) {
            if (s[i] != 0) zero = false;
            if (s[i] != m[i]) full = false;
        }
        if (zero || full) continue;
        if (s[last] - s[first] <= 0) {
            R.stable = false;
            R.violation = s;
            return R;
        }
    }
    return R;
}

} // namespace serreatlas
