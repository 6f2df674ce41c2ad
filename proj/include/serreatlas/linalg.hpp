#pragma once
#include "serreatlas/rational.hpp"

#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>
#include <optional>
#include <vector>

namespace serreatlas {

using RatMat = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using RatVec = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;
using IntMat = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IntVec = Eigen::Matrix<Int, Eigen::Dynamic, 1>;

// Exact reduced row echelon form (in place); returns the pivot columns.
std::vector<int> rref_inplace(RatMat& m);

int rank(RatMat m);

// Columns spanning ker(m). Result has m.cols() rows. Exact.
RatMat kernel_basis(const RatMat& m);

// A maximal independent subset of the columns of m (in column order).
RatMat image_basis(const RatMat& m);

// One solution of A x = b, or nullopt when inconsistent.
std::optional<RatVec> solve(const RatMat& A, const RatVec& b);

// Columnwise solve of A X = B; nullopt when any column is inconsistent.
std::optional<RatMat> solve_many(const RatMat& A, const RatMat& B);

// Exact inverse of a square matrix, or nullopt when singular.
std::optional<RatMat> inverse(const RatMat& m);

// Standard-basis columns completing span(cols of s) to the full space.
// s must have independent columns.
RatMat complement_columns(const RatMat& s);

IntVec to_int_vec(const std::vector<int>& v);
RatMat int_to_rat(const IntMat& m);
RatVec int_to_rat(const IntVec& v);

// Exact integrality cast; throws DomainError if any entry is non-integral.
IntMat rat_to_int(const RatMat& m);

} // namespace serreatlas
