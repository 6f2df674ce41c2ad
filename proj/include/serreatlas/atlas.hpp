#pragma once
#include "serreatlas/homology.hpp"
#include "serreatlas/rng.hpp"
#include "serreatlas/sampler.hpp"

#include <optional>

namespace serreatlas {

// Point of the coarse moduli line: a rational number or the point at infinity.
struct CoarseCoord {
    bool infinite = false;
    Rat value = 0;

    bool operator==(const CoarseCoord& o) const {
        return infinite == o.infinite && (infinite || value == o.value);
    }
    bool operator<(const CoarseCoord& o) const { // finite by value, infinity last
        if (infinite != o.infinite) return !infinite;
        return !infinite && value < o.value;
    }
};
std::string coord_str(const CoarseCoord& c);

// Chart coordinates: on chart i the arm-i composite is y^{p_i} (= x), arm i's
// maps are all y, and every other arm j is normalized to 1,...,1,m_j with its
// composite m_j pinned by the defining relations.
struct ChartPoint {
    int chart = 1; // arm index, 1-based
    Rat x = 0;
    Rat y = 0;
};
ChartPoint make_chart_point(const BoundQuiverAlgebra& A, int chart, const Rat& y);

// The thin module of a chart point; rejects points on another arm's vanishing
// locus (DomainError) and parameters violating the arm relation (SchemaError).
Representation chart_module(const BoundQuiverAlgebra& A, const ChartPoint& pt);
CoarseCoord coarse_coordinate(const BoundQuiverAlgebra& A, const ChartPoint& pt);
// A chart point whose coarse coordinate is t, when a rational one exists.
std::optional<ChartPoint> chart_point_at(const BoundQuiverAlgebra& A, const CoarseCoord& t);

struct PointClassification {
    ChartPoint point;
    CoarseCoord coarse;
    bool serre_stable = false;
    int summand_count = 0;   // the local weight
    int inertia_order = 0;   // = summand_count at stable points
    bool nu_orbit_ok = false; // summands form one cycle under the degree-1 image
    bool regular_semisimple = false;
    int end_dim = 0;
    int ext1_dim = 0;
    std::vector<IntVec> summand_dims;
};
PointClassification classify_point(const BoundQuiverAlgebra& A, const ChartPoint& pt);

struct SpecialPoint {
    CoarseCoord coarse;
    int weight = 0;
    PointClassification cls;
};

struct AtlasReport {
    std::vector<SpecialPoint> special_points;            // weights >= 2, sorted
    std::vector<PointClassification> marked_unit_points; // weight-1 arm loci
    std::vector<PointClassification> generic_samples;
    bool matches_input = false;
    uint64_t seed = 0;
    int sample_count = 0;
};
// Classifies the arm-vanishing loci plus sample_count random chart points.
// Honors SERRE_ATLAS_THREADS; per-sample forked rngs keep the output identical
// at any thread count.
AtlasReport build_atlas(const BoundQuiverAlgebra& A, int sample_count, uint64_t seed);

struct OrthoEntry {
    int hom_dim = 0;
    int ext1_dim = 0;
};
// Pairwise (dim Hom, dim Ext^1) over the chart-point modules; every point must
// be Serre stable (DomainError otherwise).
std::vector<std::vector<OrthoEntry>> orthogonality_table(const BoundQuiverAlgebra& A,
                                                         const std::vector<ChartPoint>& points);

// Thin module over a beilinson algebra with every step given by coords.
Representation beilinson_point_module(const BoundQuiverAlgebra& A, const std::vector<Rat>& coords);

struct CyclicDemoReport {
    int n = 0;
    std::vector<int> simple_permutation; // v -> w with nu(S_v) = S_w
    bool simple_perm_single_cycle = false;
    bool semisimple_fixed = false;          // nu(S_0 + ... + S_{n-1}) isomorphic to it
    std::vector<int> uniserial_permutation; // mu -> mu' with nu(P_mu) = P_mu'
    bool no_uniserial_fixed = false;        // no length-n uniserial is nu-fixed
};
CyclicDemoReport cyclic_model_demo(int n); // over the cyclic model with m = n; n >= 2

struct DualityViolation {
    int sample_index = 0;
    int i = 0; // dim Ext^i(M, N) != dim Ext^{1-i}(N, M)
    int lhs = 0, rhs = 0;
    IntVec n_dims;
};
struct DualityReport {
    std::vector<DualityViolation> violations;
    int trials = 0;
    uint64_t seed = 0;
};
// Checks dim Ext^i(M, N) = dim Ext^{1-i}(N, M), i in {0, 1}, against random N;
// M must be Serre stable at shift 1.
DualityReport duality_audit(const BoundQuiverAlgebra& A, const Representation& M, int trials,
                            uint64_t seed);

} // namespace serreatlas
