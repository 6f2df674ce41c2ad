#include "serreatlas/sampler.hpp"
#include "serreatlas/errors.hpp"

namespace serreatlas {

namespace {

Morphism random_proj_map(const BoundQuiverAlgebra& A, Rng& rng) {
    auto pick_verts = [&] {
        std::vector<int> v;
        int count = rng.range(1, 2);
        for (int i = 0; i < count; ++i) v.push_back(rng.range(0, A.num_vertices() - 1));
        return v;
    };
    ProjSum from = projective_sum(A, pick_verts());
    ProjSum to = projective_sum(A, pick_verts());
    std::vector<std::vector<Elem>> comp(to.verts.size(), std::vector<Elem>(from.verts.size()));
    for (size_t l = 0; l < to.verts.size(); ++l)
        for (size_t k = 0; k < from.verts.size(); ++k) {
            Elem x = A.zero_elem();
            x.source = to.verts[l];
            x.target = from.verts[k];
            for (int b : A.block(to.verts[l], from.verts[k])) {
                Rat c(rng.range(-3, 3));
                if (c != 0) x.coeffs.emplace_back(b, c);
            }
            comp[l][k] = std::move(x);
        }
    return proj_sum_morphism(A, from, to, comp);
}

Representation basic_module(const BoundQuiverAlgebra& A, Rng& rng) {
    int v = rng.range(0, A.num_vertices() - 1);
    switch (rng.range(0, 2)) {
    case 0: return simple_rep(A, v);
    case 1: return projective_rep(A, v);
    default: return injective_rep(A, v);
    }
}

} // namespace

Representation sample_module(const BoundQuiverAlgebra& A, Rng& rng, int dim_bound) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        Representation M;
        switch (rng.range(0, 5)) {
        case 0: M = simple_rep(A, rng.range(0, A.num_vertices() - 1)); break;
        case 1: M = projective_rep(A, rng.range(0, A.num_vertices() - 1)); break;
        case 2: M = injective_rep(A, rng.range(0, A.num_vertices() - 1)); break;
        case 3: M = direct_sum(basic_module(A, rng), basic_module(A, rng)); break;
        case 4: {
            Morphism f = random_proj_map(A, rng);
            M = quotient_rep(f.to, f.blocks).rep;
            break;
        }
        default: M = kernel_rep(random_proj_map(A, rng)).rep; break;
        }
        if (M.total_dim() > 0 && M.total_dim() <= dim_bound) return M;
    }
    return simple_rep(A, 0); // deterministic fallback, always within bounds
}

Representation sample_beilinson_thin(const BoundQuiverAlgebra& A, Rng& rng, bool plant_zero_step) {
    if (A.family() != BoundQuiverAlgebra::Family::Beilinson)
        throw DomainError("thin sampler is specific to the beilinson family");
    const int n = A.beilinson_n();
    std::vector<Rat> coord(n + 1);
    bool nonzero = false;
    while (!nonzero) {
        for (int j = 0; j <= n; ++j) {
            coord[j] = Rat(rng.range(-4, 4));
            if (coord[j] != 0) nonzero = true;
        }
    }
    std::vector<Rat> step_scale(n);
    for (int t = 0; t < n; ++t) step_scale[t] = Rat(rng.range(1, 5));
    if (plant_zero_step) step_scale[rng.range(0, n - 1)] = 0;

    Representation M = zero_rep(A);
    M.dims.assign(A.num_vertices(), 1);
    for (int a = 0; a < A.num_arrows(); ++a) {
        const auto& ar = A.quiver().arrows[a];
        RatMat m(1, 1);
        int t = ar.src;
        int j = a - t * (n + 1); // arrows are grouped per step in index order
        m(0, 0) = step_scale[t] * coord[j];
        M.maps[a] = std::move(m);
    }
    return M;
}

} // namespace serreatlas
