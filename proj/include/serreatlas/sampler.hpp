#pragma once
#include "serreatlas/rep.hpp"
#include "serreatlas/rng.hpp"

namespace serreatlas {

// Reproducible random module of total dimension in (0, dim_bound]: simples,
// projectives, injectives, two-term direct sums, and kernels/cokernels of random
// maps between small projective sums.
Representation sample_module(const BoundQuiverAlgebra& A, Rng& rng, int dim_bound);

// Thin module over a beilinson algebra: every step carries a scalar multiple of
// one nonzero coordinate vector; with plant_zero_step one step is zeroed out.
Representation sample_beilinson_thin(const BoundQuiverAlgebra& A, Rng& rng, bool plant_zero_step);

} // namespace serreatlas
