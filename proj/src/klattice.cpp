#include "serreatlas/klattice.hpp"
#include "serreatlas/errors.hpp"

#include <algorithm>

namespace serreatlas {

KLattice make_klattice(const BoundQuiverAlgebra& A, int shift) {
    if (!A.acyclic())
        throw DomainError("Coxeter data needs an acyclic quiver; this one has an oriented cycle");
    KLattice L;
    L.shift = shift;
    L.cartan = A.cartan_matrix();
    auto inv = inverse(int_to_rat(L.cartan));
    if (!inv) throw DomainError("Cartan matrix is singular");
    L.cartan_inv = rat_to_int(*inv);
    RatMat phi = int_to_rat(L.cartan) * int_to_rat(L.cartan_inv).transpose();
    if (shift % 2 != 0) phi = -phi;
    L.coxeter = rat_to_int(phi);
    return L;
}

KLattice make_klattice(const BoundQuiverAlgebra& A) {
    return make_klattice(A, A.default_shift());
}

Int euler_form(const KLattice& L, const IntVec& x, const IntVec& y) {
    if (x.size() != L.rank() || y.size() != L.rank())
        throw SchemaError("dimension vector length does not match the lattice rank");
    return (x.transpose() * L.cartan_inv * y)(0, 0);
}

IntVec coxeter_transform(const KLattice& L, const IntVec& d) {
    if (d.size() != L.rank())
        throw SchemaError("dimension vector length does not match the lattice rank");
    return L.coxeter * d;
}

bool is_coxeter_stable(const KLattice& L, const IntVec& d) {
    IntVec t = coxeter_transform(L, d);
    for (int i = 0; i < L.rank(); ++i)
        if (t[i] != d[i]) return false;
    return true;
}

IntMat coxeter_fixed_space(const KLattice& L) {
    IntMat A = L.coxeter - IntMat::Identity(L.rank(), L.rank());
    return saturated_kernel(A);
}

std::vector<int> coxeter_jordan_kernel_dims(const KLattice& L, int up_to) {
    const int n = L.rank();
    RatMat N = int_to_rat(L.coxeter) - RatMat::Identity(n, n);
    std::vector<int> dims;
    RatMat P = RatMat::Identity(n, n);
    for (int k = 1; k <= up_to; ++k) {
        P = N * P;
        dims.push_back(n - rank(P));
    }
    return dims;
}

namespace {

bool leq_box(const IntVec& x, const IntVec& d) {
    for (int i = 0; i < x.size(); ++i)
        if (x[i] < 0 || x[i] > d[i]) return false;
    return true;
}

// all nonzero Phi-fixed integer vectors x with 0 <= x <= d
std::vector<IntVec> stable_in_box(const KLattice& L, const IntVec& d) {
    const int n = L.rank();
    Int cells = 1;
    const Int box_cap = Int(1) << 20;
    for (int i = 0; i < n; ++i) {
        cells *= d[i] + 1;
        if (cells > box_cap) break;
    }
    std::vector<IntVec> out;
    if (cells <= box_cap) {
        IntVec x = IntVec::Zero(n);
        for (;;) {
            bool nonzero = false;
            for (int i = 0; i < n; ++i)
                if (x[i] != 0) nonzero = true;
            if (nonzero && is_coxeter_stable(L, x)) out.push_back(x);
            int i = 0;
            while (i < n && x[i] == d[i]) x[i++] = 0;
            if (i == n) break;
            x[i] += 1;
        }
        return out;
    }

    IntMat B = coxeter_fixed_space(L); // n x f, saturated
    const int f = static_cast<int>(B.cols());
    if (f == 0) return out;
    if (f > 3)
        throw DomainError("box too large and fixed space too wide for a minimality search");
    // pick f rows with invertible square submatrix
    std::vector<int> rows;
    {
        RatMat Bt = int_to_rat(B).transpose(); // f x n
        RatMat work = Bt;
        rows = rref_inplace(work); // pivot columns of B^T = independent rows of B
    }
    RatMat R(f, f);
    for (int i = 0; i < f; ++i)
        for (int j = 0; j < f; ++j) R(i, j) = Rat(B(rows[i], j));
    RatMat Rinv = *inverse(R);
    // bound t over the corners of the row-restricted box
    std::vector<Rat> lo(f), hi(f);
    for (int corner = 0; corner < (1 << f); ++corner) {
        RatVec x(f);
        for (int i = 0; i < f; ++i)
            x[i] = (corner >> i & 1) ? Rat(d[rows[i]]) : Rat(0);
        RatVec t = Rinv * x;
        for (int j = 0; j < f; ++j) {
            if (corner == 0 || t[j] < lo[j]) lo[j] = t[j];
            if (corner == 0 || t[j] > hi[j]) hi[j] = t[j];
        }
    }
    std::vector<Int> tlo(f), thi(f);
    for (int j = 0; j < f; ++j) {
        tlo[j] = Int(boost::multiprecision::numerator(lo[j]) /
                     boost::multiprecision::denominator(lo[j])) -
                 1;
        thi[j] = Int(boost::multiprecision::numerator(hi[j]) /
                     boost::multiprecision::denominator(hi[j])) +
                 1;
    }
    IntVec t = IntVec::Zero(f);
    for (int j = 0; j < f; ++j) t[j] = tlo[j];
    for (;;) {
        IntVec x = B * t;
        bool nonzero = false;
        for (int i = 0; i < L.rank(); ++i)
            if (x[i] != 0) nonzero = true;
        if (nonzero && leq_box(x, d)) out.push_back(x);
        int j = 0;
        while (j < f && t[j] == thi[j]) t[j] = tlo[j], ++j;
        if (j == f) break;
        t[j] += 1;
    }
    std::sort(out.begin(), out.end(), [](const IntVec& a, const IntVec& b) {
        for (int i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    });
    return out;
}

} // namespace

MinimalityResult is_minimal_coxeter_stable(const KLattice& L, const IntVec& d) {
    if (d.size() != L.rank())
        throw SchemaError("dimension vector length does not match the lattice rank");
    for (int i = 0; i < d.size(); ++i)
        if (d[i] < 0) throw SchemaError("dimension vectors must be nonnegative");
    MinimalityResult R;
    R.stable = is_coxeter_stable(L, d);
    auto S = stable_in_box(L, d);
    for (const auto& s : S) {
        bool is_d = true;
        for (int i = 0; i < d.size(); ++i)
            if (s[i] != d[i]) is_d = false;
        if (!is_d) R.smaller_stable.push_back(s);
    }
    R.minimal = R.stable && R.smaller_stable.empty();
    // minimal elements of the fixed set inside the box, under componentwise order
    int minima = 0;
    for (size_t i = 0; i < S.size(); ++i) {
        bool dominated = false;
        for (size_t j = 0; j < S.size() && !dominated; ++j) {
            if (i == j) continue;
            bool le = true, eq = true;
            for (int k = 0; k < d.size(); ++k) {
                if (S[j][k] > S[i][k]) le = false;
                if (S[j][k] != S[i][k]) eq = false;
            }
            if (le && !eq) dominated = true;
        }
        if (!dominated) ++minima;
    }
    R.unique_minimal = (minima == 1);
    return R;
}

AbelianInvariants grading_quotient(const GradingPresentation& P) {
    if (P.rank < 1) throw SchemaError("grading rank must be >= 1");
    if (P.gamma.size() != P.rank)
        throw SchemaError("gamma length does not match the grading rank");
    for (const auto& r : P.relations)
        if (r.size() != P.rank) throw SchemaError("relation length does not match the grading rank");
    IntMat A(P.rank, static_cast<int>(P.relations.size()) + 1);
    for (size_t j = 0; j < P.relations.size(); ++j) A.col(static_cast<int>(j)) = P.relations[j];
    A.col(A.cols() - 1) = P.gamma;
    return cokernel_invariants(A);
}

GradingPresentation canonical_grading_presentation(const std::vector<int>& weights) {
    const int n = static_cast<int>(weights.size());
    if (n < 1) throw SchemaError("need at least one weight");
    GradingPresentation P;
    P.rank = n;
    for (int i = 0; i + 1 < n; ++i) {
        IntVec r = IntVec::Zero(n);
        r[i] = weights[i];
        r[i + 1] = -weights[i + 1];
        P.relations.push_back(r);
    }
    P.gamma = IntVec::Zero(n);
    P.gamma[0] = 1;
    return P;
}

} // namespace serreatlas
