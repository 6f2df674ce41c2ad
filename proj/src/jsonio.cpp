#include "serreatlas/jsonio.hpp"
#include "serreatlas/errors.hpp"

#include <sstream>

namespace serreatlas {

namespace {

const Json& need(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw SchemaError(std::string("missing key '") + key + "'");
    return j.at(key);
}

int need_int(const Json& j, const char* key) {
    const Json& v = need(j, key);
    if (!v.is_number_integer()) throw SchemaError(std::string("'") + key + "' must be an integer");
    return v.get<int>();
}

std::string need_str(const Json& j, const char* key) {
    const Json& v = need(j, key);
    if (!v.is_string()) throw SchemaError(std::string("'") + key + "' must be a string");
    return v.get<std::string>();
}

const Json& need_array(const Json& j, const char* key) {
    const Json& v = need(j, key);
    if (!v.is_array()) throw SchemaError(std::string("'") + key + "' must be an array");
    return v;
}

// rationals arrive as strings ("2/3", "-1") or plain integers
Rat rat_value(const Json& v, const char* what) {
    if (v.is_string()) return parse_rat(v.get<std::string>());
    if (v.is_number_integer()) return Rat(v.get<long long>());
    throw SchemaError(std::string(what) + " must be a rational string or integer");
}

Json int_vec_json(const IntVec& v) {
    Json a = Json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(static_cast<long long>(v(i).convert_to<long long>()));
    return a;
}

Json int_mat_json(const IntMat& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(static_cast<long long>(m(i, j).convert_to<long long>()));
        rows.push_back(row);
    }
    return rows;
}

Json rat_mat_json(const RatMat& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(rat_str(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

} // namespace

BoundQuiverAlgebra algebra_from_json(const Json& j) {
    if (!j.is_object()) throw SchemaError("algebra description must be an object");
    std::string family = need_str(j, "family");
    if (family == "canonical") {
        std::vector<int> weights;
        for (const Json& w : need_array(j, "weights")) {
            if (!w.is_number_integer()) throw SchemaError("'weights' must be integers");
            weights.push_back(w.get<int>());
        }
        std::vector<Rat> lambdas;
        if (j.contains("lambdas"))
            for (const Json& l : need_array(j, "lambdas")) lambdas.push_back(rat_value(l, "lambda"));
        return build_canonical(weights, lambdas);
    }
    if (family == "beilinson") return build_beilinson(need_int(j, "n"));
    if (family == "cyclic_nakayama") return build_cyclic_nakayama(need_int(j, "n"), need_int(j, "m"));
    if (family == "custom") {
        Quiver q;
        for (const Json& v : need_array(j, "vertices")) {
            if (!v.is_string()) throw SchemaError("'vertices' must be strings");
            q.vertices.push_back(v.get<std::string>());
        }
        for (const Json& a : need_array(j, "arrows")) {
            if (!a.is_array() || a.size() != 3 || !a[0].is_string() || !a[1].is_string() ||
                !a[2].is_string())
                throw SchemaError("each arrow must be [id, source, target]");
            int src = q.vertex_index(a[1].get<std::string>());
            int tgt = q.vertex_index(a[2].get<std::string>());
            if (src < 0 || tgt < 0)
                throw SchemaError("arrow '" + a[0].get<std::string>() + "' uses an unknown vertex");
            q.arrows.push_back({a[0].get<std::string>(), src, tgt});
        }
        std::vector<PathExpr> relations;
        for (const Json& r : need_array(j, "relations")) {
            std::vector<std::pair<Rat, std::vector<int>>> terms;
            for (const Json& t : need_array(r, "terms")) {
                if (!t.is_array() || t.size() != 2)
                    throw SchemaError("each relation term must be [coeff, path]");
                Rat c = rat_value(t[0], "relation coefficient");
                if (!t[1].is_string()) throw SchemaError("relation path must be a string");
                std::vector<int> arrows;
                std::stringstream ss(t[1].get<std::string>());
                std::string id;
                while (std::getline(ss, id, '.')) {
                    int a = q.arrow_index(id);
                    if (a < 0) throw SchemaError("unknown arrow '" + id + "' in relation path");
                    arrows.push_back(a);
                }
                if (arrows.empty()) throw SchemaError("relation path must name at least one arrow");
                terms.push_back({c, arrows});
            }
            relations.push_back(path_expr(q, terms));
        }
        return build_custom(std::move(q), std::move(relations), need_int(j, "nilpotency_bound"));
    }
    throw SchemaError("unknown family '" + family + "'");
}

ParsedModule module_from_json(const Json& j) {
    if (!j.is_object()) throw SchemaError("module description must be an object");
    ParsedModule out;
    out.algebra = std::make_unique<BoundQuiverAlgebra>(algebra_from_json(need(j, "algebra")));
    out.rep = module_rep_from_json(j, *out.algebra);
    return out;
}

Representation module_rep_from_json(const Json& j, const BoundQuiverAlgebra& A) {
    if (!j.is_object()) throw SchemaError("module description must be an object");
    const Quiver& q = A.quiver();

    Representation M = zero_rep(A);
    const Json& dims = need(j, "dims");
    if (!dims.is_object()) throw SchemaError("'dims' must be an object keyed by vertex id");
    for (auto it = dims.begin(); it != dims.end(); ++it) {
        int v = q.vertex_index(it.key());
        if (v < 0) throw SchemaError("unknown vertex '" + it.key() + "' in dims");
        if (!it.value().is_number_integer() || it.value().get<int>() < 0)
            throw SchemaError("dimension of '" + it.key() + "' must be a nonnegative integer");
        M.dims[v] = it.value().get<int>();
    }
    for (int a = 0; a < A.num_arrows(); ++a)
        M.maps[a] = RatMat::Zero(M.dims[q.arrows[a].tgt], M.dims[q.arrows[a].src]);

    if (j.contains("maps")) {
        const Json& maps = need(j, "maps");
        if (!maps.is_object()) throw SchemaError("'maps' must be an object keyed by arrow id");
        for (auto it = maps.begin(); it != maps.end(); ++it) {
            int a = q.arrow_index(it.key());
            if (a < 0) throw SchemaError("unknown arrow '" + it.key() + "' in maps");
            int rows = M.dims[q.arrows[a].tgt], cols = M.dims[q.arrows[a].src];
            const Json& mj = it.value();
            if (!mj.is_array() || static_cast<int>(mj.size()) != rows)
                throw SchemaError("map of '" + it.key() + "' must have " + std::to_string(rows) +
                                  " rows");
            RatMat m = RatMat::Zero(rows, cols);
            for (int r = 0; r < rows; ++r) {
                const Json& row = mj[r];
                if (!row.is_array() || static_cast<int>(row.size()) != cols)
                    throw SchemaError("map of '" + it.key() + "' needs rows of length " +
                                      std::to_string(cols));
                for (int c = 0; c < cols; ++c) m(r, c) = rat_value(row[c], "matrix entry");
            }
            M.maps[a] = std::move(m);
        }
    }
    M.validate();
    return M;
}

GradingPresentation grading_from_json(const Json& j) {
    GradingPresentation P;
    P.rank = need_int(j, "rank");
    if (P.rank <= 0) throw SchemaError("'rank' must be positive");
    for (const Json& r : need_array(j, "relations")) {
        if (!r.is_array() || static_cast<int>(r.size()) != P.rank)
            throw SchemaError("each relation must list one integer per generator");
        IntVec v(P.rank);
        for (int i = 0; i < P.rank; ++i) {
            if (!r[i].is_number_integer()) throw SchemaError("relation entries must be integers");
            v(i) = Int(r[i].get<long long>());
        }
        P.relations.push_back(v);
    }
    const Json& g = need_array(j, "gamma");
    if (static_cast<int>(g.size()) != P.rank)
        throw SchemaError("'gamma' must list one integer per generator");
    P.gamma = IntVec(P.rank);
    for (int i = 0; i < P.rank; ++i) {
        if (!g[i].is_number_integer()) throw SchemaError("'gamma' entries must be integers");
        P.gamma(i) = Int(g[i].get<long long>());
    }
    return P;
}

Json algebra_params_json(const BoundQuiverAlgebra& A) {
    Json j;
    switch (A.family()) {
    case BoundQuiverAlgebra::Family::Canonical: {
        j["family"] = "canonical";
        j["weights"] = A.weights();
        Json ls = Json::array();
        for (const Rat& l : A.lambdas()) ls.push_back(rat_str(l));
        j["lambdas"] = ls;
        break;
    }
    case BoundQuiverAlgebra::Family::Beilinson:
        j["family"] = "beilinson";
        j["n"] = A.beilinson_n();
        break;
    case BoundQuiverAlgebra::Family::CyclicNakayama:
        j["family"] = "cyclic_nakayama";
        j["n"] = A.nakayama_n();
        j["m"] = A.nakayama_m();
        break;
    default:
        j["family"] = "custom";
        j["vertices"] = A.quiver().vertices;
        Json arrows = Json::array();
        for (const Arrow& a : A.quiver().arrows)
            arrows.push_back({a.id, A.quiver().vertices[a.src], A.quiver().vertices[a.tgt]});
        j["arrows"] = arrows;
        j["nilpotency_bound"] = A.nilpotency_bound();
        break;
    }
    return j;
}

Json algebra_info_json(const BoundQuiverAlgebra& A) {
    Json j = algebra_params_json(A);
    j["vertices"] = A.quiver().vertices;
    j["dimension"] = A.dimension();
    j["acyclic"] = A.acyclic();
    j["cartan"] = int_mat_json(A.cartan_matrix());
    if (A.acyclic()) {
        KLattice L = make_klattice(A);
        j["shift"] = L.shift;
        j["coxeter"] = int_mat_json(L.coxeter);
    } else {
        j["coxeter"] = nullptr;
        j["note"] = "Cartan matrix is not invertible over the integers; no Coxeter transform";
    }
    return j;
}

Json morphism_json(const Morphism& f) {
    Json blocks;
    const Quiver& q = f.from.alg->quiver();
    for (int v = 0; v < static_cast<int>(q.vertices.size()); ++v)
        blocks[q.vertices[v]] = rat_mat_json(f.blocks[v]);
    return blocks;
}

Json serre_verdict_json(const SerreVerdict& v, int shift) {
    Json j;
    j["serre_stable"] = v.stable;
    j["shift"] = shift;
    if (v.stable) {
        j["witness"] = v.witness ? morphism_json(*v.witness) : Json(nullptr);
    } else {
        j["reason"] = v.reason;
        j["nonzero_degrees"] = v.nonzero_degrees;
    }
    return j;
}

Json minimality_json(const MinimalityResult& m) {
    Json j;
    j["coxeter_stable"] = m.stable;
    j["minimal"] = m.minimal;
    j["unique_minimal"] = m.unique_minimal;
    Json smaller = Json::array();
    for (const IntVec& v : m.smaller_stable) smaller.push_back(int_vec_json(v));
    j["smaller_stable"] = smaller;
    return j;
}

Json point_classification_json(const PointClassification& c) {
    Json j;
    j["chart"] = c.point.chart;
    j["x"] = rat_str(c.point.x);
    j["y"] = rat_str(c.point.y);
    j["coordinate"] = coord_str(c.coarse);
    j["serre_stable"] = c.serre_stable;
    j["weight"] = c.summand_count;
    j["inertia_order"] = c.inertia_order;
    j["nu_orbit_single_cycle"] = c.nu_orbit_ok;
    j["regular_semisimple"] = c.regular_semisimple;
    j["end_dim"] = c.end_dim;
    j["ext1_dim"] = c.ext1_dim;
    Json dims = Json::array();
    for (const IntVec& d : c.summand_dims) dims.push_back(int_vec_json(d));
    j["summand_dims"] = dims;
    return j;
}

Json atlas_report_json(const BoundQuiverAlgebra& A, const AtlasReport& r) {
    Json j;
    j["algebra"] = algebra_params_json(A);
    j["seed"] = r.seed;
    j["sample_count"] = r.sample_count;
    Json specials = Json::array();
    for (const SpecialPoint& s : r.special_points) {
        Json e;
        e["coordinate"] = coord_str(s.coarse);
        e["weight"] = s.weight;
        e["classification"] = point_classification_json(s.cls);
        specials.push_back(e);
    }
    j["special_points"] = specials;
    Json marked = Json::array();
    for (const PointClassification& c : r.marked_unit_points)
        marked.push_back(point_classification_json(c));
    j["marked_unit_points"] = marked;
    Json generic = Json::array();
    for (const PointClassification& c : r.generic_samples)
        generic.push_back(point_classification_json(c));
    j["generic_samples"] = generic;
    j["matches_input"] = r.matches_input;
    return j;
}

Json ortho_table_json(const std::vector<std::string>& labels,
                      const std::vector<std::vector<OrthoEntry>>& table) {
    Json j;
    j["points"] = labels;
    Json rows = Json::array();
    for (const auto& row : table) {
        Json r = Json::array();
        for (const OrthoEntry& e : row) r.push_back({e.hom_dim, e.ext1_dim});
        rows.push_back(r);
    }
    j["table"] = rows;
    return j;
}

Json cyclic_demo_json(const CyclicDemoReport& r) {
    Json j;
    j["n"] = r.n;
    j["simple_permutation"] = r.simple_permutation;
    j["simple_perm_single_cycle"] = r.simple_perm_single_cycle;
    j["semisimple_fixed"] = r.semisimple_fixed;
    j["uniserial_permutation"] = r.uniserial_permutation;
    j["no_uniserial_fixed"] = r.no_uniserial_fixed;
    return j;
}

Json grading_json(const AbelianInvariants& inv) {
    Json j;
    Json factors = Json::array();
    for (const Int& f : inv.factors) factors.push_back(static_cast<long long>(f.convert_to<long long>()));
    j["invariant_factors"] = factors;
    j["free_rank"] = inv.free_rank;
    return j;
}

} // namespace serreatlas
