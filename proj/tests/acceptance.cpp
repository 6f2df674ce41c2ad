// Acceptance gate: one pass/fail line per criterion, exit code = number of
// failures. Every check is exact (rational arithmetic, zero tolerance); the two
// timed criteria use wall-clock bounds.
#include "serreatlas/atlas.hpp"
#include "serreatlas/errors.hpp"
#include "serreatlas/homology.hpp"
#include "serreatlas/klattice.hpp"
#include "serreatlas/sampler.hpp"
#include "serreatlas/smith.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace serreatlas;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

IntVec int_vec(const std::vector<long long>& v) {
    IntVec x(v.size());
    for (size_t i = 0; i < v.size(); ++i) x(i) = Int(v[i]);
    return x;
}

bool same_vec(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) return false;
    for (int i = 0; i < a.size(); ++i)
        if (a(i) != b(i)) return false;
    return true;
}

// shared between criteria 4 and 5
std::optional<AtlasReport> g_atlas;
const uint64_t kAtlasSeed = 2026;

const AtlasReport& atlas_235(const BoundQuiverAlgebra& A) {
    if (!g_atlas) g_atlas = build_atlas(A, 50, kAtlasSeed);
    return *g_atlas;
}

bool criterion_1(std::string& detail) {
    auto t0 = Clock::now();
    BoundQuiverAlgebra A = build_canonical({2, 3, 5}, {Rat(1)});
    KLattice L = make_klattice(A);
    MinimalityResult m = is_minimal_coxeter_stable(L, IntVec::Ones(L.rank()));
    int fixed_dim = static_cast<int>(coxeter_fixed_space(L).cols());
    double dt = seconds_since(t0);
    std::ostringstream d;
    d << "stable=" << m.stable << " minimal=" << m.minimal << " unique=" << m.unique_minimal
      << " fixed_dim=" << fixed_dim << " time=" << dt << "s";
    detail = d.str();
    return m.stable && m.minimal && m.unique_minimal && fixed_dim == 1 && dt < 1.0;
}

bool criterion_2(std::string& detail) {
    BoundQuiverAlgebra A = build_canonical({4, 4, 2}, {Rat(1)});
    KLattice L = make_klattice(A);
    int fixed_dim = static_cast<int>(coxeter_fixed_space(L).cols());
    IntVec dp = int_vec({4, 3, 2, 1, 3, 2, 1, 2, 0});
    bool fixed_vec = same_vec(coxeter_transform(L, dp), dp);
    std::ostringstream d;
    d << "fixed_dim=" << fixed_dim << " displayed_vector_fixed=" << fixed_vec;
    detail = d.str();
    return fixed_dim == 2 && fixed_vec;
}

bool criterion_3(std::string& detail) {
    std::ostringstream d;
    bool ok = true;
    for (int n = 1; n <= 3; ++n) {
        BoundQuiverAlgebra B = build_beilinson(n);
        KLattice L = make_klattice(B);
        int fixed_dim = static_cast<int>(coxeter_fixed_space(L).cols());
        IntMat N = L.coxeter - IntMat::Identity(L.rank(), L.rank());
        IntMat Nn = IntMat::Identity(L.rank(), L.rank());
        for (int k = 0; k < n; ++k) Nn = (Nn * N).eval();
        bool nth_nonzero = !Nn.isZero();
        bool next_zero = IntMat(Nn * N).isZero();
        d << "n=" << n << ": fixed_dim=" << fixed_dim << " N^n!=0:" << nth_nonzero
          << " N^{n+1}=0:" << next_zero << "  ";
        ok = ok && fixed_dim == 1 && nth_nonzero && next_zero;
    }
    detail = d.str();
    return ok;
}

bool criterion_4(std::string& detail) {
    auto t0 = Clock::now();
    BoundQuiverAlgebra A = build_canonical({2, 3, 5}, {Rat(1)});
    const AtlasReport& r = atlas_235(A);
    double dt = seconds_since(t0);

    bool specials_ok = r.special_points.size() == 3 && r.marked_unit_points.empty();
    const struct {
        CoarseCoord at;
        int weight;
    } expect[3] = {{{false, Rat(0)}, 2}, {{false, Rat(1)}, 5}, {{true, Rat(0)}, 3}};
    for (int i = 0; i < 3 && specials_ok; ++i) {
        const SpecialPoint& s = r.special_points[i];
        specials_ok = s.coarse == expect[i].at && s.weight == expect[i].weight &&
                      s.cls.serre_stable && s.cls.nu_orbit_ok;
    }
    bool generic_ok = r.generic_samples.size() == 50;
    KLattice L = make_klattice(A);
    IntVec ones = IntVec::Ones(L.rank());
    for (const PointClassification& g : r.generic_samples) {
        if (!generic_ok) break;
        Representation M = chart_module(A, g.point);
        generic_ok = g.summand_count == 1 && g.serre_stable && g.regular_semisimple &&
                     g.end_dim == 1 && g.ext1_dim == 1 && is_regular_simple(M, L, ones);
    }
    std::ostringstream d;
    d << "specials=" << (specials_ok ? "0:2 1:5 inf:3" : "WRONG")
      << " generic_ok=" << generic_ok << " matches_input=" << r.matches_input << " time=" << dt
      << "s";
    detail = d.str();
    return specials_ok && generic_ok && r.matches_input && dt < 30.0;
}

bool criterion_5(std::string& detail) {
    BoundQuiverAlgebra A = build_canonical({2, 3, 5}, {Rat(1)});
    const AtlasReport& r = atlas_235(A);
    KLattice L = make_klattice(A);
    IntVec ones = IntVec::Ones(L.rank());

    std::vector<const PointClassification*> stable_points;
    for (const SpecialPoint& s : r.special_points) stable_points.push_back(&s.cls);
    for (const PointClassification& g : r.generic_samples) stable_points.push_back(&g);

    int modules = 0, submodules = 0;
    for (const PointClassification* c : stable_points) {
        if (!c->serre_stable) continue;
        Representation M = chart_module(A, c->point);
        if (!is_regular_semisimple(M, L, ones)) {
            detail = "a stable thin module is not regular semisimple";
            return false;
        }
        ++modules;
        for (const ThinSummand& s : decompose_thin(M)) {
            IntVec full = s.rep.dim_vector();
            for (const IntVec& nd : enumerate_submodules_thin(s.rep)) {
                if (nd.isZero() || same_vec(nd, full)) continue;
                if (euler_form(L, ones, nd) != -1) {
                    detail = "a proper submodule pairs to a value other than -1";
                    return false;
                }
                ++submodules;
            }
        }
    }
    std::ostringstream d;
    d << modules << " stable thin modules, " << submodules << " proper submodules, all <1,[N]>=-1";
    detail = d.str();
    return modules == 53 && submodules > 0;
}

bool criterion_6(std::string& detail) {
    BoundQuiverAlgebra A = build_canonical({2, 3, 5}, {Rat(1)});
    std::vector<ChartPoint> pts;
    for (CoarseCoord t : {CoarseCoord{false, Rat(0)}, CoarseCoord{true, Rat(0)},
                          CoarseCoord{false, Rat(1)}}) {
        auto p = chart_point_at(A, t);
        if (!p) {
            detail = "missing chart point over a special coordinate";
            return false;
        }
        pts.push_back(*p);
    }
    pts.push_back(make_chart_point(A, 1, Rat(2)));
    auto table = orthogonality_table(A, pts);
    const int q[4] = {2, 3, 5, 1};
    bool ok = true;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            int want = i == j ? q[i] : 0;
            ok = ok && table[i][j].hom_dim == want && table[i][j].ext1_dim == want;
        }
    detail = ok ? "diag (2,2),(3,3),(5,5),(1,1); off-diag (0,0)" : "table mismatch";
    return ok;
}

bool criterion_7(std::string& detail) {
    BoundQuiverAlgebra A = build_canonical({2, 2, 2}, {Rat(1)});
    Representation M = chart_module(A, make_chart_point(A, 1, Rat(2)));
    DualityReport r = duality_audit(A, M, 20, 2026);
    std::ostringstream d;
    d << r.trials << " trials, " << r.violations.size() << " violations";
    detail = d.str();
    return r.trials == 20 && r.violations.empty();
}

bool criterion_8(std::string& detail) {
    BoundQuiverAlgebra B = build_beilinson(2);
    int stable_count = 0, planted_count = 0;
    for (int i = 0; i < 100; ++i) {
        Rng rng(Rng::mix(2026, static_cast<uint64_t>(i)));
        bool plant = i % 5 == 0;
        Representation M = sample_beilinson_thin(B, rng, plant);
        SerreVerdict v = is_serre_stable(M, 2);
        if (plant) {
            ++planted_count;
            if (v.stable) {
                detail = "a module with a zeroed step tested Serre stable";
                return false;
            }
        }
        if (v.stable) {
            ++stable_count;
            if (!rho_stability(M).stable) {
                detail = "a Serre-stable module failed rho stability";
                return false;
            }
        }
    }
    std::ostringstream d;
    d << stable_count << " stable (all rho-stable), " << planted_count
      << " zeroed-step (all unstable), 100 total";
    detail = d.str();
    return stable_count > 0 && planted_count == 20;
}

bool criterion_9(std::string& detail) {
    std::ostringstream d;
    bool ok = true;
    for (int n : {2, 3, 4}) {
        CyclicDemoReport r = cyclic_model_demo(n);
        ok = ok && r.simple_perm_single_cycle && r.semisimple_fixed && r.no_uniserial_fixed;
        d << "n=" << n << ":" << (ok ? "ok " : "FAIL ");
    }
    detail = d.str();
    return ok;
}

bool criterion_10(std::string& detail) {
    BoundQuiverAlgebra a222 = build_canonical({2, 2, 2}, {Rat(1)});
    BoundQuiverAlgebra b2 = build_beilinson(2);
    const BoundQuiverAlgebra* algs[2] = {&a222, &b2};
    int pairs = 0;
    for (int ai = 0; ai < 2; ++ai) {
        const BoundQuiverAlgebra& A = *algs[ai];
        KLattice L = make_klattice(A);
        for (int t = 0; t < 25; ++t) {
            Rng rng(Rng::mix(2026, static_cast<uint64_t>(ai * 1000 + t)));
            Representation M = sample_module(A, rng, 6);
            Representation N = sample_module(A, rng, 6);
            if (M.total_dim() + N.total_dim() > 12) {
                detail = "sampled pair exceeds the dimension cap";
                return false;
            }
            std::vector<int> e = ext_dims(M, N, A.num_vertices());
            Int alt = 0;
            int sign = 1;
            for (int ei : e) {
                alt += sign * ei;
                sign = -sign;
            }
            if (alt != euler_form(L, M.dim_vector(), N.dim_vector())) {
                detail = "alternating ext sum disagrees with the euler form";
                return false;
            }
            ++pairs;
        }
    }
    std::ostringstream d;
    d << pairs << " pairs, alternating ext sums all equal the euler form";
    detail = d.str();
    return pairs == 50;
}

bool criterion_11(std::string& detail) {
    AbelianInvariants a = grading_quotient(canonical_grading_presentation({2, 3, 5}));
    AbelianInvariants b = grading_quotient(canonical_grading_presentation({4, 4, 2}));
    std::ostringstream d;
    auto fmt = [&](const AbelianInvariants& x) {
        std::string s = "[";
        for (size_t i = 0; i < x.factors.size(); ++i)
            s += (i ? "," : "") + x.factors[i].str();
        return s + "]+Z^" + std::to_string(x.free_rank);
    };
    d << "(2,3,5)->" << fmt(a) << " (4,4,2)->" << fmt(b);
    detail = d.str();
    return a.factors == std::vector<Int>{15} && a.free_rank == 0 &&
           b.factors == std::vector<Int>{2, 4} && b.free_rank == 0;
}

bool criterion_12(std::string& detail) {
    BoundQuiverAlgebra a235 = build_canonical({2, 3, 5}, {Rat(1)});
    BoundQuiverAlgebra b2 = build_beilinson(2);
    int verified = 0;
    for (const BoundQuiverAlgebra* Ap : {&a235, &b2}) {
        const BoundQuiverAlgebra& A = *Ap;
        for (int v = 0; v < A.num_vertices(); ++v) {
            NakayamaHomology H = nakayama_homology(projective_rep(A, v));
            if (H.degrees.empty()) {
                detail = "empty derived Nakayama image";
                return false;
            }
            for (size_t i = 1; i < H.degrees.size(); ++i)
                if (H.degrees[i].total_dim() != 0) {
                    detail = "derived Nakayama image of a projective leaks out of degree 0";
                    return false;
                }
            IsoResult iso = isomorphism_test(H.degrees[0], injective_rep(A, v));
            if (!iso.isomorphic || !iso.witness || !iso.witness->is_iso()) {
                detail = "degree-0 image is not the matching injective";
                return false;
            }
            ++verified;
        }
    }
    std::ostringstream d;
    d << verified << " projectives across two algebras, all sent to the matching injective";
    detail = d.str();
    return verified == 12;
}

struct Criterion {
    int id;
    const char* description;
    std::function<bool(std::string&)> run;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "all-ones vector minimal Coxeter stable, unique, fixed space dim 1 (<1s)", criterion_1},
        {2, "tubular (4,4,2): fixed space dim 2, displayed vector Coxeter fixed", criterion_2},
        {3, "beilinson B_n: fixed space dim 1, (Phi - id) nilpotent of index n+1", criterion_3},
        {4, "atlas (2,3,5): special points 0:2 1:5 inf:3, 50 generic weight-1 stable (<30s)",
         criterion_4},
        {5, "stable thin modules regular semisimple; proper submodules pair to -1", criterion_5},
        {6, "orthogonality table over {0, inf, 1, generic} exactly ((q,q)) diag, 0 off",
         criterion_6},
        {7, "serre duality audit over (2,2,2): 20 seeded trials, no violations", criterion_7},
        {8, "beilinson thin sampling: stable => rho-stable, zeroed step => unstable", criterion_8},
        {9, "cyclic model n in {2,3,4}: simples rotate, semisimple fixed, uniserials move",
         criterion_9},
        {10, "alternating ext sums equal the euler form on 50 seeded pairs", criterion_10},
        {11, "grading quotients: (2,3,5) -> Z/15, (4,4,2) -> Z/2 + Z/4", criterion_11},
        {12, "derived Nakayama sends every projective to its injective in degree 0",
         criterion_12},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        std::string detail;
        bool pass = false;
        try {
            pass = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        if (!pass) ++failures;
        std::printf("criterion %2d: %s — %s%s%s\n", c.id, pass ? "PASS" : "FAIL", c.description,
                    detail.empty() ? "" : " | ", detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures;
}
