#pragma once
#include "serreatlas/atlas.hpp"
#include "serreatlas/klattice.hpp"

#include <json.hpp>

#include <memory>

namespace serreatlas {

// Key order is preserved so serialized reports are byte-stable across runs.
using Json = nlohmann::ordered_json;

// -- parsing (SchemaError on anything malformed) --

// {"family": "canonical", "weights": [2,3,5], "lambdas": ["1"]}
// {"family": "beilinson", "n": 2}
// {"family": "cyclic_nakayama", "n": 3, "m": 3}
// {"family": "custom", "vertices": [...], "arrows": [[id, src, tgt], ...],
//  "relations": [{"terms": [[coeff, "a.b"], ...]}, ...], "nilpotency_bound": N}
BoundQuiverAlgebra algebra_from_json(const Json& j);

// {"algebra": <algebra object>, "dims": {"v": 1, ...}, "maps": {"a": [["1"]], ...}}
// Missing vertices get dimension 0, missing arrows the zero map; matrix rows
// are lists of rational strings, shaped dims[target] x dims[source].
struct ParsedModule {
    std::unique_ptr<BoundQuiverAlgebra> algebra;
    Representation rep;
};
ParsedModule module_from_json(const Json& j);
// dims/maps only, over an algebra the caller already built ("algebra" key ignored)
Representation module_rep_from_json(const Json& j, const BoundQuiverAlgebra& A);

// {"rank": 3, "relations": [[2,-3,0], ...], "gamma": [1,0,0]}
GradingPresentation grading_from_json(const Json& j);

// -- serialization --

Json algebra_params_json(const BoundQuiverAlgebra& A); // family + defining data
Json algebra_info_json(const BoundQuiverAlgebra& A);   // params + dimension, Cartan, Coxeter
Json morphism_json(const Morphism& f);
Json serre_verdict_json(const SerreVerdict& v, int shift);
Json minimality_json(const MinimalityResult& m);
Json point_classification_json(const PointClassification& c);
Json atlas_report_json(const BoundQuiverAlgebra& A, const AtlasReport& r);
Json ortho_table_json(const std::vector<std::string>& labels,
                      const std::vector<std::vector<OrthoEntry>>& table);
Json cyclic_demo_json(const CyclicDemoReport& r);
Json grading_json(const AbelianInvariants& inv);

} // namespace serreatlas
