#include "serreatlas/atlas.hpp"
#include "serreatlas/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>

namespace serreatlas {

std::string coord_str(const CoarseCoord& c) {
    return c.infinite ? "inf" : rat_str(c.value);
}

namespace {

void require_canonical(const BoundQuiverAlgebra& A) {
    if (A.family() != BoundQuiverAlgebra::Family::Canonical)
        throw SchemaError("chart machinery needs the canonical family");
}

// composite values m_1..m_n of all arms at a chart point (1-based index 0 unused)
std::vector<Rat> arm_composites(const BoundQuiverAlgebra& A, const ChartPoint& pt) {
    const int n = static_cast<int>(A.weights().size());
    if (pt.chart < 1 || pt.chart > n) throw SchemaError("chart index out of range");
    auto lam = [&](int j) { return A.lambdas()[j - 3]; };
    std::vector<Rat> m(n + 1);
    if (pt.chart == 1) {
        m[1] = pt.x;
        m[2] = 1;
    } else if (pt.chart == 2) {
        m[1] = 1;
        m[2] = pt.x;
    } else {
        m[1] = pt.x - lam(pt.chart);
        m[2] = 1;
    }
    for (int j = 3; j <= n; ++j) m[j] = m[1] + lam(j) * m[2];
    return m;
}

int arm_weight(const BoundQuiverAlgebra& A, int i) { return A.weights()[i - 1]; }

} // namespace

ChartPoint make_chart_point(const BoundQuiverAlgebra& A, int chart, const Rat& y) {
    require_canonical(A);
    if (chart < 1 || chart > static_cast<int>(A.weights().size()))
        throw SchemaError("chart index out of range");
    ChartPoint pt;
    pt.chart = chart;
    pt.y = y;
    pt.x = rat_pow(y, arm_weight(A, chart));
    return pt;
}

Representation chart_module(const BoundQuiverAlgebra& A, const ChartPoint& pt) {
    require_canonical(A);
    const int n = static_cast<int>(A.weights().size());
    if (pt.x != rat_pow(pt.y, arm_weight(A, pt.chart)))
        throw SchemaError("chart parameters violate the arm relation x = y^p");
    std::vector<Rat> m = arm_composites(A, pt);
    for (int j = 1; j <= n; ++j)
        if (j != pt.chart && m[j] == 0)
            throw DomainError("point lies on the vanishing locus of arm " + std::to_string(j) +
                              "; use that arm's chart");

    Representation M = zero_rep(A);
    M.dims.assign(A.num_vertices(), 1);
    for (int i = 1; i <= n; ++i) {
        const int p = arm_weight(A, i);
        for (int a = 1; a <= p; ++a) {
            int idx = A.quiver().arrow_index("x" + std::to_string(i) + "_" + std::to_string(a));
            RatMat mm(1, 1);
            if (i == pt.chart)
                mm(0, 0) = pt.y;
            else
                mm(0, 0) = (a == p) ? m[i] : Rat(1);
            M.maps[idx] = std::move(mm);
        }
    }
    std::string why;
    if (!M.satisfies_relations(&why))
        throw SchemaError("chart module violates a defining relation: " + why);
    return M;
}

CoarseCoord coarse_coordinate(const BoundQuiverAlgebra& A, const ChartPoint& pt) {
    std::vector<Rat> m = arm_composites(A, pt);
    CoarseCoord c;
    if (m[2] == 0)
        c.infinite = true;
    else
        c.value = -m[1] / m[2];
    return c;
}

std::optional<ChartPoint> chart_point_at(const BoundQuiverAlgebra& A, const CoarseCoord& t) {
    require_canonical(A);
    const int n = static_cast<int>(A.weights().size());
    for (int chart = 1; chart <= n; ++chart) {
        Rat x;
        if (chart == 1) {
            if (t.infinite) continue;
            x = -t.value;
        } else if (chart == 2) {
            if (t.infinite)
                x = 0;
            else if (t.value == 0)
                continue;
            else
                x = Rat(-1) / t.value;
        } else {
            if (t.infinite) continue;
            x = A.lambdas()[chart - 3] - t.value;
        }
        auto y = rat_root(x, arm_weight(A, chart));
        if (!y) continue;
        ChartPoint pt{chart, x, *y};
        std::vector<Rat> m = arm_composites(A, pt);
        bool valid = true;
        for (int j = 1; j <= n && valid; ++j)
            if (j != chart && m[j] == 0) valid = false;
        if (valid) return pt;
    }
    return std::nullopt;
}

PointClassification classify_point(const BoundQuiverAlgebra& A, const ChartPoint& pt) {
    PointClassification C;
    C.point = pt;
    C.coarse = coarse_coordinate(A, pt);
    Representation M = chart_module(A, pt);
    KLattice L = make_klattice(A, 1);
    IntVec ones = IntVec::Ones(A.num_vertices());

    SerreVerdict verdict = is_serre_stable(M, 1);
    C.serre_stable = verdict.stable;

    auto summands = decompose_thin(M);
    C.summand_count = static_cast<int>(summands.size());
    for (const auto& s : summands) C.summand_dims.push_back(s.rep.dim_vector());
    C.inertia_order = C.serre_stable ? C.summand_count : 0;
    C.regular_semisimple = is_regular_semisimple(M, L, ones);
    C.end_dim = hom_dim(M, M);
    C.ext1_dim = ext_dims(M, M, 1)[1];

    // the degree-1 Nakayama image must permute the summands in one cycle
    std::vector<int> sigma(summands.size(), -1);
    bool ok = true;
    for (size_t j = 0; j < summands.size() && ok; ++j) {
        NakayamaHomology H = nakayama_homology(summands[j].rep);
        for (size_t i = 0; i < H.degrees.size() && ok; ++i)
            if (static_cast<int>(i) != 1 && H.degrees[i].total_dim() != 0) ok = false;
        if (!ok || H.degrees.size() < 2) {
            ok = false;
            break;
        }
        for (size_t l = 0; l < summands.size(); ++l)
            if (isomorphism_test(H.degrees[1], summands[l].rep).isomorphic) {
                sigma[j] = static_cast<int>(l);
                break;
            }
        if (sigma[j] < 0) ok = false;
    }
    if (ok) { // single cycle through all summands
        std::vector<bool> seen(summands.size(), false);
        int at = 0, steps = 0;
        while (steps < static_cast<int>(summands.size()) && !seen[at]) {
            seen[at] = true;
            at = sigma[at];
            ++steps;
        }
        ok = std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }) && at == 0;
    }
    C.nu_orbit_ok = ok;
    return C;
}

namespace {

int thread_budget(int samples) {
    unsigned hw = std::thread::hardware_concurrency();
    int cap = hw == 0 ? 1 : static_cast<int>(hw);
    if (const char* env = std::getenv("SERRE_ATLAS_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) cap = v;
    }
    return std::max(1, std::min(cap, samples));
}

ChartPoint sample_chart_point(const BoundQuiverAlgebra& A, Rng& rng) {
    const int n = static_cast<int>(A.weights().size());
    for (;;) {
        int chart = rng.range(1, n);
        Rat y = rng.nonzero_rat(6, 4);
        ChartPoint pt = make_chart_point(A, chart, y);
        std::vector<Rat> m = arm_composites(A, pt);
        bool valid = true;
        for (int j = 1; j <= n && valid; ++j)
            if (j != chart && m[j] == 0) valid = false;
        if (valid) return pt;
    }
}

} // namespace

AtlasReport build_atlas(const BoundQuiverAlgebra& A, int sample_count, uint64_t seed) {
    require_canonical(A);
    const int n = static_cast<int>(A.weights().size());
    AtlasReport R;
    R.seed = seed;
    R.sample_count = sample_count;

    bool all_marked_ok = true;
    for (int i = 1; i <= n; ++i) {
        ChartPoint pt = make_chart_point(A, i, Rat(0));
        PointClassification cls = classify_point(A, pt);
        bool good = cls.serre_stable && cls.nu_orbit_ok && cls.regular_semisimple &&
                    cls.summand_count == arm_weight(A, i);
        all_marked_ok = all_marked_ok && good;
        if (arm_weight(A, i) >= 2)
            R.special_points.push_back({cls.coarse, cls.summand_count, cls});
        else
            R.marked_unit_points.push_back(cls);
    }
    std::sort(R.special_points.begin(), R.special_points.end(),
              [](const SpecialPoint& a, const SpecialPoint& b) { return a.coarse < b.coarse; });

    R.generic_samples.resize(sample_count);
    std::atomic<int> next{0};
    auto worker = [&] {
        for (;;) {
            int s = next.fetch_add(1);
            if (s >= sample_count) return;
            Rng rng(Rng::mix(seed, static_cast<uint64_t>(s) + 1));
            ChartPoint pt = sample_chart_point(A, rng);
            R.generic_samples[s] = classify_point(A, pt);
        }
    };
    int nthreads = thread_budget(sample_count);
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    bool generics_ok = true;
    for (const auto& g : R.generic_samples)
        if (!(g.serre_stable && g.summand_count == 1 && g.regular_semisimple))
            generics_ok = false;
    R.matches_input = all_marked_ok && generics_ok;
    return R;
}

std::vector<std::vector<OrthoEntry>> orthogonality_table(const BoundQuiverAlgebra& A,
                                                         const std::vector<ChartPoint>& points) {
    std::vector<Representation> mods;
    for (const auto& pt : points) {
        Representation M = chart_module(A, pt);
        if (!is_serre_stable(M, 1).stable)
            throw DomainError("orthogonality table requires Serre-stable points");
        mods.push_back(std::move(M));
    }
    std::vector<std::vector<OrthoEntry>> T(mods.size(), std::vector<OrthoEntry>(mods.size()));
    for (size_t i = 0; i < mods.size(); ++i)
        for (size_t j = 0; j < mods.size(); ++j) {
            auto e = ext_dims(mods[i], mods[j], 1);
            T[i][j] = OrthoEntry{e[0], e[1]};
        }
    return T;
}

Representation beilinson_point_module(const BoundQuiverAlgebra& A, const std::vector<Rat>& coords) {
    if (A.family() != BoundQuiverAlgebra::Family::Beilinson)
        throw SchemaError("point modules need the beilinson family");
    const int n = A.beilinson_n();
    if (static_cast<int>(coords.size()) != n + 1)
        throw SchemaError("expected " + std::to_string(n + 1) + " coordinates");
    if (std::all_of(coords.begin(), coords.end(), [](const Rat& c) { return c == 0; }))
        throw SchemaError("the zero vector is not a point");
    Representation M = zero_rep(A);
    M.dims.assign(A.num_vertices(), 1);
    for (int a = 0; a < A.num_arrows(); ++a) {
        int t = A.quiver().arrows[a].src;
        int j = a - t * (n + 1);
        RatMat m(1, 1);
        m(0, 0) = coords[j];
        M.maps[a] = std::move(m);
    }
    return M;
}

CyclicDemoReport cyclic_model_demo(int n) {
    if (n < 2) throw SchemaError("the cyclic demo needs n >= 2");
    BoundQuiverAlgebra A = build_cyclic_nakayama(n, n);
    CyclicDemoReport R;
    R.n = n;

    Representation semisimple = simple_rep(A, 0);
    for (int v = 1; v < n; ++v) semisimple = direct_sum(semisimple, simple_rep(A, v));

    for (int v = 0; v < n; ++v) {
        Representation nu = nakayama_plain(simple_rep(A, v));
        int target = -1;
        for (int w = 0; w < n; ++w)
            if (nu.dims[w] == 1) {
                if (target >= 0) target = -2; // not simple-shaped
                else target = w;
            }
        R.simple_permutation.push_back(target);
    }
    // single cycle of full length
    {
        std::vector<bool> seen(n, false);
        int at = 0, steps = 0;
        bool ok = std::all_of(R.simple_permutation.begin(), R.simple_permutation.end(),
                              [n](int w) { return w >= 0 && w < n; });
        while (ok && steps < n && !seen[at]) {
            seen[at] = true;
            at = R.simple_permutation[at];
            ++steps;
        }
        R.simple_perm_single_cycle =
            ok && at == 0 && std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
    }

    R.semisimple_fixed = isomorphism_test(nakayama_plain(semisimple), semisimple).isomorphic;

    bool any_fixed = false;
    for (int mu = 0; mu < n; ++mu) {
        Representation P = projective_rep(A, mu); // the length-n uniserial at mu
        Representation nu = nakayama_plain(P);
        int target = -1;
        for (int w = 0; w < n; ++w)
            if (isomorphism_test(nu, projective_rep(A, w)).isomorphic) {
                target = w;
                break;
            }
        R.uniserial_permutation.push_back(target);
        if (target == mu) any_fixed = true;
    }
    R.no_uniserial_fixed = !any_fixed;
    return R;
}

DualityReport duality_audit(const BoundQuiverAlgebra& A, const Representation& M, int trials,
                            uint64_t seed) {
    if (!is_serre_stable(M, 1).stable)
        throw DomainError("the duality audit needs a Serre-stable module at shift 1");
    DualityReport R;
    R.trials = trials;
    R.seed = seed;
    for (int s = 0; s < trials; ++s) {
        Rng rng(Rng::mix(seed, static_cast<uint64_t>(s) + 1));
        Representation N = sample_module(A, rng, 12);
        auto mn = ext_dims(M, N, 1);
        auto nm = ext_dims(N, M, 1);
        for (int i = 0; i <= 1; ++i)
            if (mn[i] != nm[1 - i])
                R.violations.push_back({s, i, mn[i], nm[1 - i], N.dim_vector()});
    }
    return R;
}

} // namespace serreatlas
