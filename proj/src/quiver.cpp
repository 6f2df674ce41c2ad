#include "serreatlas/quiver.hpp"
#include "serreatlas/errors.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <queue>
#include <set>
#include <sstream>

namespace serreatlas {

// ---------- Quiver ----------

int Quiver::vertex_index(const std::string& id) const {
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == id) return static_cast<int>(i);
    return -1;
}

int Quiver::arrow_index(const std::string& id) const {
    for (size_t i = 0; i < arrows.size(); ++i)
        if (arrows[i].id == id) return static_cast<int>(i);
    return -1;
}

bool Quiver::is_acyclic() const {
    const int n = static_cast<int>(vertices.size());
    std::vector<int> indeg(n, 0);
    for (const auto& a : arrows) ++indeg[a.tgt];
    std::queue<int> q;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) q.push(v);
    int seen = 0;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        ++seen;
        for (const auto& a : arrows)
            if (a.src == v && --indeg[a.tgt] == 0) q.push(a.tgt);
    }
    return seen == n;
}

void Quiver::validate() const {
    std::set<std::string> vids(vertices.begin(), vertices.end());
    if (vids.size() != vertices.size()) throw SchemaError("duplicate vertex ids");
    std::set<std::string> aids;
    for (const auto& a : arrows) {
        if (!aids.insert(a.id).second) throw SchemaError("duplicate arrow id '" + a.id + "'");
        if (a.id.find('.') != std::string::npos)
            throw SchemaError("arrow id '" + a.id + "' must not contain '.'");
        if (a.src < 0 || a.src >= static_cast<int>(vertices.size()) || a.tgt < 0 ||
            a.tgt >= static_cast<int>(vertices.size()))
            throw SchemaError("arrow '" + a.id + "' has endpoints outside the vertex set");
    }
}

// ---------- path helpers ----------

Path make_path(const Quiver& q, const std::vector<int>& arrows, int source_if_trivial) {
    Path p;
    p.arrows = arrows;
    if (arrows.empty()) {
        if (source_if_trivial < 0) throw SchemaError("trivial path needs a vertex");
        p.source = p.target = source_if_trivial;
        return p;
    }
    p.source = q.arrows[arrows.front()].src;
    int at = p.source;
    for (int a : arrows) {
        if (q.arrows[a].src != at) throw SchemaError("path is not composable");
        at = q.arrows[a].tgt;
    }
    p.target = at;
    return p;
}

PathExpr path_expr(const Quiver& q, const std::vector<std::pair<Rat, std::vector<int>>>& terms) {
    PathExpr e;
    for (const auto& [c, arrows] : terms) {
        Path p = make_path(q, arrows);
        if (e.terms.empty()) {
            e.source = p.source;
            e.target = p.target;
        } else if (p.source != e.source || p.target != e.target) {
            throw SchemaError("relation terms are not parallel");
        }
        e.terms.emplace_back(c, std::move(p));
    }
    return e;
}

// ---------- construction internals ----------

namespace {

std::string path_key(int source, const std::vector<int>& arrows) {
    std::ostringstream os;
    os << source << ':';
    for (int a : arrows) os << a << '.';
    return os.str();
}

// sparse row over path indices, sorted ascending; the back() entry is the lead
using Row = std::vector<std::pair<int, Rat>>;

Row row_axpy(const Row& r, const Rat& c, const Row& p) {
    // r + c*p, merging sorted supports
    Row out;
    out.reserve(r.size() + p.size());
    size_t i = 0, j = 0;
    while (i < r.size() || j < p.size()) {
        if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
            out.push_back(r[i++]);
        } else if (i == r.size() || p[j].first < r[i].first) {
            Rat v = c * p[j].second;
            if (v != 0) out.emplace_back(p[j].first, v);
            ++j;
        } else {
            Rat v = r[i].second + c * p[j].second;
            if (v != 0) out.emplace_back(r[i].first, v);
            ++i;
            ++j;
        }
    }
    return out;
}

// Echelon system keyed by lead path index (largest path in each row).
struct Eliminator {
    std::map<int, Row> pivots; // lead -> normalized row (lead coeff 1)

    void insert(Row r) {
        while (!r.empty()) {
            int lead = r.back().first;
            auto it = pivots.find(lead);
            if (it == pivots.end()) {
                Rat inv = Rat(1) / r.back().second;
                for (auto& [idx, c] : r) c *= inv;
                pivots.emplace(lead, std::move(r));
                return;
            }
            r = row_axpy(r, -r.back().second, it->second);
        }
    }

    // residual of a row against the system (supported on non-pivot paths);
    // acc collects strictly decreasing leads, so nothing feeds back into it
    Row reduce(Row r) const {
        Row acc;
        while (!r.empty()) {
            auto it = pivots.find(r.back().first);
            if (it == pivots.end()) {
                acc.insert(acc.begin(), r.back());
                r.pop_back();
            } else {
                r = row_axpy(r, -r.back().second, it->second);
            }
        }
        return acc;
    }
};

} // namespace

int BoundQuiverAlgebra::path_lookup(int source, const std::vector<int>& arrows) const {
    auto it = path_key_.find(path_key(source, arrows));
    return it == path_key_.end() ? -1 : it->second;
}

void BoundQuiverAlgebra::construct(Quiver q, std::vector<PathExpr> relations, int nilpotency_bound) {
    q.validate();
    if (nilpotency_bound < 1) throw SchemaError("nilpotency bound must be >= 1");
    for (const auto& r : relations) {
        for (const auto& [c, p] : r.terms) {
            (void)c;
            if (p.length() < 1) throw SchemaError("relation terms must have length >= 1");
            if (p.length() > nilpotency_bound)
                throw SchemaError("relation term longer than the nilpotency bound");
        }
    }
    q_ = std::move(q);
    relations_ = std::move(relations);
    nilp_ = nilpotency_bound;
    acyclic_ = q_.is_acyclic();

    const int nv = num_vertices();
    arrows_from_.assign(nv, {});
    arrows_into_.assign(nv, {});
    for (int a = 0; a < num_arrows(); ++a) {
        arrows_from_[q_.arrows[a].src].push_back(a);
        arrows_into_[q_.arrows[a].tgt].push_back(a);
    }

    // Enumerate paths of length <= N by (length, sequence) order; lengths < N form
    // the working space, length N is kept for the certificate only.
    std::vector<Path> all; // sorted by construction
    std::vector<size_t> len_begin;
    len_begin.push_back(0);
    for (int v = 0; v < nv; ++v) all.push_back(make_path(q_, {}, v));
    len_begin.push_back(all.size());
    for (int len = 1; len <= nilp_; ++len) {
        size_t from = len_begin[len - 1], to = len_begin[len];
        for (size_t i = from; i < to; ++i) {
            for (int a : arrows_from_[all[i].target]) {
                Path p = all[i];
                p.arrows.push_back(a);
                p.target = q_.arrows[a].tgt;
                all.push_back(std::move(p));
            }
        }
        len_begin.push_back(all.size());
    }
    const size_t n_lt = len_begin[nilp_]; // paths of length < N

    std::unordered_map<std::string, int> all_key;
    all_key.reserve(all.size() * 2);
    for (size_t i = 0; i < all.size(); ++i)
        all_key[path_key(all[i].source, all[i].arrows)] = static_cast<int>(i);

    // --- certificate: every length-N path must reduce to zero against
    // untruncated relation products inside the length-<=N space ---
    {
        Eliminator cert;
        for (const auto& r : relations_) {
            int rmin = nilp_ + 1;
            for (const auto& [c, p] : r.terms) rmin = std::min(rmin, p.length());
            for (const auto& left : all) {
                if (left.target != r.source) continue;
                for (const auto& right : all) {
                    if (right.source != r.target) continue;
                    if (left.length() + rmin + right.length() > nilp_) continue;
                    Row row;
                    bool fits = true;
                    std::map<int, Rat> acc;
                    for (const auto& [c, p] : r.terms) {
                        if (left.length() + p.length() + right.length() > nilp_) {
                            fits = false; // mixed-length product: unusable soundly
                            break;
                        }
                        std::vector<int> seq = left.arrows;
                        seq.insert(seq.end(), p.arrows.begin(), p.arrows.end());
                        seq.insert(seq.end(), right.arrows.begin(), right.arrows.end());
                        acc[all_key.at(path_key(left.source, seq))] += c;
                    }
                    if (!fits) continue;
                    for (auto& [idx, c] : acc)
                        if (c != 0) row.emplace_back(idx, c);
                    if (!row.empty()) cert.insert(std::move(row));
                }
            }
        }
        for (size_t i = len_begin[nilp_]; i < all.size(); ++i) {
            Row residual = cert.reduce({{static_cast<int>(i), Rat(1)}});
            if (!residual.empty()) {
                std::string desc;
                for (int a : all[i].arrows) {
                    if (!desc.empty()) desc += '.';
                    desc += q_.arrows[a].id;
                }
                throw CertificateError("nilpotency certificate failed: path '" + desc +
                                       "' of length " + std::to_string(nilp_) +
                                       " does not reduce to zero");
            }
        }
    }

    // --- basis: eliminate truncated relation products in the length-<N space ---
    paths_.assign(all.begin(), all.begin() + n_lt);
    path_key_.clear();
    path_key_.reserve(paths_.size() * 2);
    for (size_t i = 0; i < paths_.size(); ++i)
        path_key_[path_key(paths_[i].source, paths_[i].arrows)] = static_cast<int>(i);

    Eliminator elim;
    for (const auto& r : relations_) {
        for (const auto& left : paths_) {
            if (left.target != r.source) continue;
            for (const auto& right : paths_) {
                if (right.source != r.target) continue;
                std::map<int, Rat> acc;
                for (const auto& [c, p] : r.terms) {
                    if (left.length() + p.length() + right.length() >= nilp_) continue;
                    std::vector<int> seq = left.arrows;
                    seq.insert(seq.end(), p.arrows.begin(), p.arrows.end());
                    seq.insert(seq.end(), right.arrows.begin(), right.arrows.end());
                    acc[path_key_.at(path_key(left.source, seq))] += c;
                }
                Row row;
                for (auto& [idx, c] : acc)
                    if (c != 0) row.emplace_back(idx, c);
                if (!row.empty()) elim.insert(std::move(row));
            }
        }
    }

    // non-pivot paths are the basis, in path (length, sequence) order
    basis_pos_.assign(paths_.size(), -1);
    basis_paths_.clear();
    for (size_t i = 0; i < paths_.size(); ++i) {
        if (!elim.pivots.count(static_cast<int>(i))) {
            basis_pos_[i] = static_cast<int>(basis_paths_.size());
            basis_paths_.push_back(static_cast<int>(i));
        }
    }

    // normal forms in ascending path order: tails only reference smaller paths
    nf_.assign(paths_.size(), {});
    for (size_t i = 0; i < paths_.size(); ++i) {
        const int pi = static_cast<int>(i);
        if (basis_pos_[pi] >= 0) {
            nf_[pi] = {{basis_pos_[pi], Rat(1)}};
            continue;
        }
        const Row& row = elim.pivots.at(pi); // lead = pi with coeff 1
        std::map<int, Rat> acc;              // over basis indices
        for (size_t k = 0; k + 1 < row.size(); ++k) {
            const auto& [j, c] = row[k];
            for (const auto& [b, cb] : nf_[j]) acc[b] += -c * cb;
        }
        for (auto& [b, c] : acc)
            if (c != 0) nf_[pi].emplace_back(b, c);
    }

    finish_indexing();
}

void BoundQuiverAlgebra::finish_indexing() {
    const int nv = num_vertices();
    unit_elem_.assign(nv, -1);
    arrow_elem_.assign(num_arrows(), -1);
    blocks_.assign(static_cast<size_t>(nv) * nv, {});
    pos_in_block_.assign(basis_paths_.size(), -1);
    for (size_t b = 0; b < basis_paths_.size(); ++b) {
        const Path& p = paths_[basis_paths_[b]];
        auto& blk = blocks_[static_cast<size_t>(p.source) * nv + p.target];
        pos_in_block_[b] = static_cast<int>(blk.size());
        blk.push_back(static_cast<int>(b));
        if (p.length() == 0) unit_elem_[p.source] = static_cast<int>(b);
        if (p.length() == 1) arrow_elem_[p.arrows[0]] = static_cast<int>(b);
    }
    for (int v = 0; v < nv; ++v)
        if (unit_elem_[v] < 0) throw DomainError("internal: unit eliminated");
}

// ---------- arithmetic ----------

Elem BoundQuiverAlgebra::unit(int v) const {
    return Elem{v, v, {{unit_elem_[v], Rat(1)}}};
}

Elem BoundQuiverAlgebra::arrow(int a) const {
    const auto& ar = q_.arrows[a];
    if (arrow_elem_[a] < 0) return Elem{ar.src, ar.tgt, {}};
    return Elem{ar.src, ar.tgt, {{arrow_elem_[a], Rat(1)}}};
}

Elem BoundQuiverAlgebra::basis_elem(int b) const {
    return Elem{basis_source(b), basis_target(b), {{b, Rat(1)}}};
}

Elem BoundQuiverAlgebra::multiply_basis(int b1, int b2) const {
    const Path& p1 = basis_path(b1);
    const Path& p2 = basis_path(b2);
    Elem out;
    if (p1.target != p2.source) return out;
    out.source = p1.source;
    out.target = p2.target;
    if (p1.length() + p2.length() >= nilp_) return out;
    std::vector<int> seq = p1.arrows;
    seq.insert(seq.end(), p2.arrows.begin(), p2.arrows.end());
    int idx = path_lookup(p1.source, seq);
    if (idx < 0) throw DomainError("internal: concatenation not enumerated");
    out.coeffs = nf_[idx];
    return out;
}

Elem BoundQuiverAlgebra::multiply(const Elem& x, const Elem& y) const {
    Elem out;
    if (x.is_zero() || y.is_zero()) return out;
    if (x.target != y.source) return out;
    std::map<int, Rat> acc;
    for (const auto& [bx, cx] : x.coeffs)
        for (const auto& [by, cy] : y.coeffs) {
            Elem prod = multiply_basis(bx, by);
            for (const auto& [b, c] : prod.coeffs) acc[b] += cx * cy * c;
        }
    out.source = x.source;
    out.target = y.target;
    for (auto& [b, c] : acc)
        if (c != 0) out.coeffs.emplace_back(b, c);
    if (out.coeffs.empty()) return Elem{x.source, y.target, {}};
    return out;
}

Elem BoundQuiverAlgebra::add(const Elem& x, const Elem& y) const {
    if (x.is_zero() && x.source < 0) return y;
    if (y.is_zero() && y.source < 0) return x;
    if (x.source != y.source || x.target != y.target)
        throw DomainError("adding elements from different blocks");
    std::map<int, Rat> acc;
    for (const auto& [b, c] : x.coeffs) acc[b] += c;
    for (const auto& [b, c] : y.coeffs) acc[b] += c;
    Elem out{x.source, x.target, {}};
    for (auto& [b, c] : acc)
        if (c != 0) out.coeffs.emplace_back(b, c);
    return out;
}

Elem BoundQuiverAlgebra::scale(const Rat& c, const Elem& x) const {
    if (c == 0) return Elem{x.source, x.target, {}};
    Elem out = x;
    for (auto& [b, v] : out.coeffs) v *= c;
    return out;
}

Elem BoundQuiverAlgebra::reduce(const PathExpr& e) const {
    std::map<int, Rat> acc;
    for (const auto& [c, p] : e.terms) {
        if (p.length() >= nilp_) continue;
        int idx = path_lookup(p.source, p.arrows);
        if (idx < 0) throw SchemaError("expression path is not a path of this quiver");
        for (const auto& [b, cb] : nf_[idx]) acc[b] += c * cb;
    }
    Elem out{e.source, e.target, {}};
    for (auto& [b, c] : acc)
        if (c != 0) out.coeffs.emplace_back(b, c);
    return out;
}

IntMat BoundQuiverAlgebra::cartan_matrix() const {
    const int nv = num_vertices();
    IntMat C(nv, nv);
    for (int v = 0; v < nv; ++v)
        for (int w = 0; w < nv; ++w) C(v, w) = static_cast<int>(block(v, w).size());
    return C;
}

int BoundQuiverAlgebra::default_shift() const {
    if (family_ == Family::Beilinson) return beil_n_;
    return 1;
}

// ---------- opposite ----------

void BoundQuiverAlgebra::build_opposite_of(const BoundQuiverAlgebra& A) {
    q_.vertices = A.q_.vertices;
    for (const auto& a : A.q_.arrows) q_.arrows.push_back({a.id, a.tgt, a.src});
    nilp_ = A.nilp_;
    acyclic_ = A.acyclic_;
    family_ = Family::Opposite;
    primal_ = &A;

    auto reverse_path = [&](const Path& p) {
        Path r;
        r.source = p.target;
        r.target = p.source;
        r.arrows.assign(p.arrows.rbegin(), p.arrows.rend());
        return r;
    };
    for (const auto& r : A.relations_) {
        PathExpr e;
        e.source = r.target;
        e.target = r.source;
        for (const auto& [c, p] : r.terms) e.terms.emplace_back(c, reverse_path(p));
        relations_.push_back(std::move(e));
    }
    paths_.reserve(A.paths_.size());
    for (const auto& p : A.paths_) paths_.push_back(reverse_path(p));
    path_key_.reserve(paths_.size() * 2);
    for (size_t i = 0; i < paths_.size(); ++i)
        path_key_[path_key(paths_[i].source, paths_[i].arrows)] = static_cast<int>(i);
    nf_ = A.nf_;
    basis_paths_ = A.basis_paths_;
    basis_pos_ = A.basis_pos_;

    finish_indexing();
}

const BoundQuiverAlgebra& BoundQuiverAlgebra::opposite() const {
    if (primal_) return *primal_;
    static std::mutex op_mutex;
    std::scoped_lock lk(op_mutex);
    if (!op_) {
        auto op = std::unique_ptr<BoundQuiverAlgebra>(new BoundQuiverAlgebra());
        op->build_opposite_of(*this);
        op_ = std::move(op);
    }
    return *op_;
}

BoundQuiverAlgebra::BoundQuiverAlgebra(BoundQuiverAlgebra&& o) noexcept : BoundQuiverAlgebra() {
    *this = std::move(o);
}

BoundQuiverAlgebra& BoundQuiverAlgebra::operator=(BoundQuiverAlgebra&& o) noexcept {
    q_ = std::move(o.q_);
    nilp_ = o.nilp_;
    acyclic_ = o.acyclic_;
    relations_ = std::move(o.relations_);
    family_ = o.family_;
    weights_ = std::move(o.weights_);
    lambdas_ = std::move(o.lambdas_);
    beil_n_ = o.beil_n_;
    nak_n_ = o.nak_n_;
    nak_m_ = o.nak_m_;
    paths_ = std::move(o.paths_);
    path_key_ = std::move(o.path_key_);
    nf_ = std::move(o.nf_);
    basis_paths_ = std::move(o.basis_paths_);
    basis_pos_ = std::move(o.basis_pos_);
    unit_elem_ = std::move(o.unit_elem_);
    arrow_elem_ = std::move(o.arrow_elem_);
    blocks_ = std::move(o.blocks_);
    pos_in_block_ = std::move(o.pos_in_block_);
    arrows_from_ = std::move(o.arrows_from_);
    arrows_into_ = std::move(o.arrows_into_);
    op_ = std::move(o.op_);
    primal_ = o.primal_;
    if (op_) op_->primal_ = this; // keep the cached opposite's backpointer valid
    return *this;
}

// ---------- family builders ----------

BoundQuiverAlgebra build_custom(Quiver q, std::vector<PathExpr> relations, int nilpotency_bound) {
    BoundQuiverAlgebra A;
    A.construct(std::move(q), std::move(relations), nilpotency_bound);
    A.family_ = BoundQuiverAlgebra::Family::Custom;
    return A;
}

BoundQuiverAlgebra build_canonical(const std::vector<int>& weights, const std::vector<Rat>& lambdas) {
    const int n = static_cast<int>(weights.size());
    if (n < 2) throw SchemaError("canonical algebra needs at least two arms");
    for (int p : weights)
        if (p < 1) throw SchemaError("arm weights must be >= 1");
    if (static_cast<int>(lambdas.size()) != n - 2)
        throw SchemaError("canonical algebra with " + std::to_string(n) + " arms needs " +
                          std::to_string(n - 2) + " lambda values");
    for (size_t i = 0; i < lambdas.size(); ++i) {
        if (lambdas[i] == 0) throw SchemaError("lambda values must be nonzero");
        for (size_t j = i + 1; j < lambdas.size(); ++j)
            if (lambdas[i] == lambdas[j]) throw SchemaError("lambda values must be distinct");
    }

    Quiver q;
    q.vertices.push_back("0");
    for (int i = 1; i <= n; ++i)
        for (int a = 1; a < weights[i - 1]; ++a)
            q.vertices.push_back(std::to_string(a) + "x" + std::to_string(i));
    q.vertices.push_back("c");

    std::vector<std::vector<int>> arm_arrows(n);
    for (int i = 1; i <= n; ++i) {
        const int p = weights[i - 1];
        for (int a = 1; a <= p; ++a) {
            Arrow ar;
            ar.id = "x" + std::to_string(i) + "_" + std::to_string(a);
            ar.src = (a == 1) ? 0 : q.vertex_index(std::to_string(a - 1) + "x" + std::to_string(i));
            ar.tgt = (a == p) ? q.vertex_index("c")
                              : q.vertex_index(std::to_string(a) + "x" + std::to_string(i));
            arm_arrows[i - 1].push_back(static_cast<int>(q.arrows.size()));
            q.arrows.push_back(std::move(ar));
        }
    }

    std::vector<PathExpr> rels;
    for (int i = 3; i <= n; ++i) {
        rels.push_back(path_expr(q, {{Rat(1), arm_arrows[i - 1]},
                                     {Rat(-1), arm_arrows[0]},
                                     {-lambdas[i - 3], arm_arrows[1]}}));
    }

    int pmax = *std::max_element(weights.begin(), weights.end());
    BoundQuiverAlgebra A;
    A.construct(std::move(q), std::move(rels), pmax + 1);
    A.family_ = BoundQuiverAlgebra::Family::Canonical;
    A.weights_ = weights;
    A.lambdas_ = lambdas;
    return A;
}

BoundQuiverAlgebra build_beilinson(int n) {
    if (n < 1) throw SchemaError("beilinson index must be >= 1");
    Quiver q;
    for (int v = 0; v <= n; ++v) q.vertices.push_back(std::to_string(v));
    // arrow (j, step t): index t*(n+1) + j
    for (int t = 0; t < n; ++t)
        for (int j = 0; j <= n; ++j)
            q.arrows.push_back({"x" + std::to_string(j) + "_" + std::to_string(t), t, t + 1});
    auto idx = [n](int j, int t) { return t * (n + 1) + j; };

    std::vector<PathExpr> rels;
    for (int t = 0; t + 1 < n; ++t)
        for (int i = 0; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                rels.push_back(path_expr(q, {{Rat(1), {idx(i, t), idx(j, t + 1)}},
                                             {Rat(-1), {idx(j, t), idx(i, t + 1)}}}));

    BoundQuiverAlgebra A;
    A.construct(std::move(q), std::move(rels), n + 1);
    A.family_ = BoundQuiverAlgebra::Family::Beilinson;
    A.beil_n_ = n;
    return A;
}

BoundQuiverAlgebra build_cyclic_nakayama(int n, int m) {
    if (n < 1 || m < 1) throw SchemaError("cyclic model needs n >= 1 and m >= 1");
    Quiver q;
    for (int v = 0; v < n; ++v) q.vertices.push_back(std::to_string(v));
    for (int v = 0; v < n; ++v) q.arrows.push_back({"a" + std::to_string(v), v, (v + 1) % n});

    std::vector<PathExpr> rels;
    for (int v = 0; v < n; ++v) {
        std::vector<int> seq;
        for (int k = 0; k < m; ++k) seq.push_back((v + k) % n);
        rels.push_back(path_expr(q, {{Rat(1), seq}}));
    }

    BoundQuiverAlgebra A;
    A.construct(std::move(q), std::move(rels), m);
    A.family_ = BoundQuiverAlgebra::Family::CyclicNakayama;
    A.nak_n_ = n;
    A.nak_m_ = m;
    return A;
}

} // namespace serreatlas
