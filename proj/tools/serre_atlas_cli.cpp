#include "serreatlas/errors.hpp"
#include "serreatlas/jsonio.hpp"

#include <CLI11.hpp>

#include <climits>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace serreatlas;

namespace {

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot read '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError("invalid JSON in '" + path + "': " + e.what());
    }
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw SchemaError("cannot write '" + out_path + "'");
    out << text;
}

IntVec parse_int_vector(const std::string& csv, int rank) {
    IntVec v(rank);
    std::stringstream ss(csv);
    std::string tok;
    int i = 0;
    while (std::getline(ss, tok, ',')) {
        if (i >= rank) throw SchemaError("vector has more than " + std::to_string(rank) + " entries");
        try {
            v(i++) = Int(std::stoll(tok));
        } catch (const std::exception&) {
            throw SchemaError("bad integer '" + tok + "' in vector");
        }
    }
    if (i != rank) throw SchemaError("vector needs " + std::to_string(rank) + " entries");
    return v;
}

std::string int_vec_str(const IntVec& v) {
    std::string s = "(";
    for (int i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v(i).str();
    }
    return s + ")";
}

int cmd_algebra_info(const std::string& file, int shift, const std::string& vector_csv,
                     bool as_json, const std::string& out) {
    BoundQuiverAlgebra A = algebra_from_json(load_json(file));
    Json j = algebra_info_json(A);
    std::ostringstream text;
    text << "family: " << j["family"].get<std::string>() << "\n";
    text << "dimension: " << A.dimension() << "\n";
    text << "vertices:";
    for (const std::string& v : A.quiver().vertices) text << " " << v;
    text << "\ncartan:\n";
    IntMat C = A.cartan_matrix();
    for (int r = 0; r < C.rows(); ++r) {
        text << " ";
        for (int c = 0; c < C.cols(); ++c) text << " " << C(r, c).str();
        text << "\n";
    }
    if (A.acyclic()) {
        KLattice L = shift == INT_MIN ? make_klattice(A) : make_klattice(A, shift);
        j["shift"] = L.shift;
        Json cox = Json::array();
        for (int r = 0; r < L.coxeter.rows(); ++r) {
            Json row = Json::array();
            for (int c = 0; c < L.coxeter.cols(); ++c)
                row.push_back(static_cast<long long>(L.coxeter(r, c).convert_to<long long>()));
            cox.push_back(row);
        }
        j["coxeter"] = cox;
        text << "coxeter shift: " << L.shift << "\n";
        IntMat F = coxeter_fixed_space(L);
        j["fixed_space_dim"] = static_cast<int>(F.cols());
        Json fb = Json::array();
        text << "fixed space dim: " << F.cols() << "\n";
        for (int c = 0; c < F.cols(); ++c) {
            IntVec b = F.col(c);
            Json col = Json::array();
            for (int r = 0; r < b.size(); ++r)
                col.push_back(static_cast<long long>(b(r).convert_to<long long>()));
            fb.push_back(col);
            text << "  basis: " << int_vec_str(b) << "\n";
        }
        j["fixed_space_basis"] = fb;
        std::vector<int> jd = coxeter_jordan_kernel_dims(L, L.rank());
        j["jordan_kernel_dims"] = jd;
        text << "jordan kernel dims:";
        for (int d : jd) text << " " << d;
        text << "\n";
        IntVec d = vector_csv.empty() ? IntVec(IntVec::Ones(L.rank()))
                                      : parse_int_vector(vector_csv, L.rank());
        MinimalityResult m = is_minimal_coxeter_stable(L, d);
        j["vector"] = Json::array();
        for (int i = 0; i < d.size(); ++i)
            j["vector"].push_back(static_cast<long long>(d(i).convert_to<long long>()));
        j["minimality"] = minimality_json(m);
        text << "vector " << int_vec_str(d) << ": "
             << (m.stable ? (m.minimal ? (m.unique_minimal ? "minimal Coxeter stable (unique)"
                                                           : "minimal Coxeter stable")
                                       : "Coxeter stable, not minimal")
                          : "not Coxeter stable")
             << "\n";
    } else {
        text << "note: " << j["note"].get<std::string>() << "\n";
    }
    emit(as_json ? j.dump(2) : text.str(), out);
    return 0;
}

int cmd_module_check(const std::string& algebra_file, const std::string& module_file, int shift,
                     bool as_json, const std::string& out) {
    std::unique_ptr<BoundQuiverAlgebra> A;
    Json mj;
    if (module_file.empty()) {
        // single-file form: the module carries its algebra inline or as a path ref
        mj = load_json(algebra_file);
        if (!mj.is_object() || !mj.contains("algebra"))
            throw SchemaError("module file needs an 'algebra' key when no algebra file is given");
        if (mj["algebra"].is_string())
            A = std::make_unique<BoundQuiverAlgebra>(
                algebra_from_json(load_json(mj["algebra"].get<std::string>())));
        else
            A = std::make_unique<BoundQuiverAlgebra>(algebra_from_json(mj["algebra"]));
    } else {
        A = std::make_unique<BoundQuiverAlgebra>(algebra_from_json(load_json(algebra_file)));
        mj = load_json(module_file);
    }
    Representation M = module_rep_from_json(mj, *A);

    Json j;
    std::ostringstream text;
    j["dims"] = Json::array();
    for (int d : M.dims) j["dims"].push_back(d);
    std::string why;
    bool rel_ok = M.satisfies_relations(&why);
    j["relations_ok"] = rel_ok;
    if (!rel_ok) {
        j["reason"] = why;
        text << "relations: violated (" << why << ")\n";
        emit(as_json ? j.dump(2) : text.str(), out);
        return 2;
    }
    text << "relations: ok\n";

    int use_shift = shift == INT_MIN ? A->default_shift() : shift;
    SerreVerdict v = is_serre_stable(M, use_shift);
    j["serre"] = serre_verdict_json(v, use_shift);
    text << "serre stable (shift " << use_shift << "): " << (v.stable ? "yes" : "no") << "\n";
    if (!v.stable) text << "  reason: " << v.reason << "\n";

    bool thin = true;
    for (int d : M.dims) thin = thin && d <= 1;
    if (thin && A->acyclic() && M.total_dim() > 0) {
        KLattice L = make_klattice(*A);
        IntVec ones = IntVec::Ones(L.rank());
        bool rss = is_regular_semisimple(M, L, ones);
        j["regular_semisimple"] = rss;
        text << "regular semisimple: " << (rss ? "yes" : "no") << "\n";
    }
    if (A->family() == BoundQuiverAlgebra::Family::Beilinson) {
        RhoResult r = rho_stability(M);
        Json rj;
        rj["stable"] = r.stable;
        if (r.violation) {
            Json viol = Json::array();
            for (int i = 0; i < r.violation->size(); ++i)
                viol.push_back(static_cast<long long>((*r.violation)(i).convert_to<long long>()));
            rj["violation"] = viol;
        }
        j["rho"] = rj;
        text << "rho stable: " << (r.stable ? "yes" : "no") << "\n";
    }
    emit(as_json ? j.dump(2) : text.str(), out);
    return v.stable ? 0 : 1;
}

int cmd_atlas(const std::string& file, int samples, uint64_t seed, bool as_json,
              const std::string& out) {
    BoundQuiverAlgebra A = algebra_from_json(load_json(file));
    AtlasReport r = build_atlas(A, samples, seed);
    Json j = atlas_report_json(A, r);
    if (as_json) {
        emit(j.dump(2), out);
    } else {
        std::ostringstream text;
        text << "special points:";
        if (r.special_points.empty()) text << " none";
        for (const SpecialPoint& s : r.special_points)
            text << " " << coord_str(s.coarse) << ":" << s.weight;
        text << "; generic samples: " << r.generic_samples.size() << "; matches: "
             << (r.matches_input ? "yes" : "no") << "\n";
        std::cout << text.str();
        if (!out.empty()) emit(j.dump(2), out);
    }
    return r.matches_input ? 0 : 1;
}

int cmd_ortho(const std::string& file, const std::string& points_csv, bool as_json,
              const std::string& out) {
    BoundQuiverAlgebra A = algebra_from_json(load_json(file));
    std::vector<ChartPoint> pts;
    std::vector<std::string> labels;
    std::vector<CoarseCoord> used;
    std::stringstream ss(points_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        if (tok == "generic") {
            // deterministic scan for a rational point off the marked loci
            bool found = false;
            for (int k = 2; k <= 1000 && !found; ++k) {
                ChartPoint pt;
                try {
                    pt = make_chart_point(A, 1, Rat(k));
                    chart_module(A, pt); // validity check
                } catch (const std::exception&) {
                    continue;
                }
                CoarseCoord c = coarse_coordinate(A, pt);
                bool clash = c == CoarseCoord{false, Rat(0)} || c.infinite;
                for (const Rat& l : A.lambdas()) clash = clash || c == CoarseCoord{false, l};
                for (const CoarseCoord& u : used) clash = clash || c == u;
                if (clash) continue;
                pts.push_back(pt);
                used.push_back(c);
                labels.push_back("generic(" + coord_str(c) + ")");
                found = true;
            }
            if (!found) throw SchemaError("no generic rational chart point found");
            continue;
        }
        CoarseCoord c;
        if (tok == "inf") {
            c.infinite = true;
        } else {
            try {
                c.value = parse_rat(tok);
            } catch (const std::exception&) {
                throw SchemaError("bad point token '" + tok + "'");
            }
        }
        std::optional<ChartPoint> pt = chart_point_at(A, c);
        if (!pt)
            throw SchemaError("no rational chart point with coordinate " + coord_str(c));
        pts.push_back(*pt);
        used.push_back(c);
        labels.push_back(coord_str(c));
    }
    if (pts.empty()) throw SchemaError("no points given");
    auto table = orthogonality_table(A, pts);
    Json j = ortho_table_json(labels, table);
    std::ostringstream text;
    for (size_t i = 0; i < table.size(); ++i) {
        text << labels[i] << ":";
        for (const OrthoEntry& e : table[i]) text << " (" << e.hom_dim << "," << e.ext1_dim << ")";
        text << "\n";
    }
    emit(as_json ? j.dump(2) : text.str(), out);
    return 0;
}

int cmd_grading(const std::string& file, bool as_json, const std::string& out) {
    Json in = load_json(file);
    GradingPresentation P;
    if (in.is_object() && in.contains("family")) {
        BoundQuiverAlgebra A = algebra_from_json(in);
        if (A.family() != BoundQuiverAlgebra::Family::Canonical)
            throw SchemaError("grading from an algebra needs the canonical family");
        P = canonical_grading_presentation(A.weights());
    } else {
        P = grading_from_json(in);
    }
    AbelianInvariants inv = grading_quotient(P);
    Json j = grading_json(inv);
    std::ostringstream text;
    text << "invariant factors: [";
    for (size_t i = 0; i < inv.factors.size(); ++i)
        text << (i ? "," : "") << inv.factors[i].str();
    text << "]; free rank: " << inv.free_rank << "\n";
    emit(as_json ? j.dump(2) : text.str(), out);
    return 0;
}

int cmd_demo_cyclic(int n, bool as_json, const std::string& out) {
    CyclicDemoReport r = cyclic_model_demo(n);
    Json j = cyclic_demo_json(r);
    std::ostringstream text;
    text << "simple permutation:";
    for (int v : r.simple_permutation) text << " " << v;
    text << (r.simple_perm_single_cycle ? " (single cycle)" : " (NOT a single cycle)") << "\n";
    text << "semisimple sum fixed: " << (r.semisimple_fixed ? "yes" : "no") << "\n";
    text << "length-n uniserials fixed: " << (r.no_uniserial_fixed ? "none" : "SOME") << "\n";
    emit(as_json ? j.dump(2) : text.str(), out);
    bool ok = r.simple_perm_single_cycle && r.semisimple_fixed && r.no_uniserial_fixed;
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic invariants of bound quiver algebras"};
    app.require_subcommand(1);

    std::string file, module_file, out, vector_csv, points = "0,inf,1,generic";
    bool as_json = false;
    int shift = INT_MIN, samples = 50, n = 3;
    uint64_t seed = 0;

    CLI::App* algebra = app.add_subcommand("algebra", "algebra-level reports");
    algebra->require_subcommand(1);
    CLI::App* info = algebra->add_subcommand("info", "dimension, Cartan, Coxeter data");
    info->add_option("file", file, "algebra JSON")->required();
    info->add_option("--shift", shift, "Serre shift for the Coxeter transform");
    info->add_option("--vector", vector_csv, "comma-separated vector for the minimality check");
    info->add_flag("--json", as_json, "emit JSON");
    info->add_option("-o,--output", out, "write report to a file");

    CLI::App* module_cmd = app.add_subcommand("module", "module-level reports");
    module_cmd->require_subcommand(1);
    CLI::App* check = module_cmd->add_subcommand("check", "relations + Serre stability verdict");
    check->add_option("file", file, "algebra JSON (or a module JSON with inline algebra)")
        ->required();
    check->add_option("module", module_file, "module JSON (dims and maps)");
    check->add_option("--shift", shift, "Serre shift to test");
    check->add_flag("--json", as_json, "emit JSON");
    check->add_option("-o,--output", out, "write report to a file");

    CLI::App* atlas = app.add_subcommand("atlas", "reconstruct the moduli atlas");
    atlas->add_option("file", file, "algebra JSON (canonical family)")->required();
    atlas->add_option("--samples", samples, "number of random chart points")
        ->check(CLI::PositiveNumber);
    atlas->add_option("--seed", seed, "sampling seed");
    atlas->add_flag("--json", as_json, "emit full JSON");
    atlas->add_option("-o,--output", out, "write the full JSON report to a file");

    CLI::App* ortho = app.add_subcommand("ortho", "pairwise (Hom, Ext^1) table of point modules");
    ortho->add_option("file", file, "algebra JSON (canonical family)")->required();
    ortho->add_option("--points", points, "comma list: coordinates, 'inf', 'generic'");
    ortho->add_flag("--json", as_json, "emit JSON");
    ortho->add_option("-o,--output", out, "write report to a file");

    CLI::App* grading = app.add_subcommand("grading", "invariant factors of a graded quotient");
    grading->add_option("file", file, "presentation JSON or canonical algebra JSON")->required();
    grading->add_flag("--json", as_json, "emit JSON");
    grading->add_option("-o,--output", out, "write report to a file");

    CLI::App* demo = app.add_subcommand("demo", "worked examples");
    demo->require_subcommand(1);
    CLI::App* cyclic = demo->add_subcommand("cyclic", "Nakayama permutation of the cyclic model");
    cyclic->add_option("-n,--n", n, "number of vertices (= radical length)")->required();
    cyclic->add_flag("--json", as_json, "emit JSON");
    cyclic->add_option("-o,--output", out, "write report to a file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (info->parsed()) return cmd_algebra_info(file, shift, vector_csv, as_json, out);
        if (check->parsed()) return cmd_module_check(file, module_file, shift, as_json, out);
        if (atlas->parsed()) return cmd_atlas(file, samples, seed, as_json, out);
        if (ortho->parsed()) return cmd_ortho(file, points, as_json, out);
        if (grading->parsed()) return cmd_grading(file, as_json, out);
        if (cyclic->parsed()) return cmd_demo_cyclic(n, as_json, out);
    } catch (const CertificateError& e) {
        std::cerr << "certificate error: " << e.what() << "\n";
        return 3;
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
