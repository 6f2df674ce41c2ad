#pragma once
#include <boost/multiprecision/gmp.hpp>
#include <optional>
#include <string>

namespace serreatlas {

using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

// Parses "a/b" or "a" (optional leading '-'). Throws SchemaError on anything else,
// including a zero denominator. Result is in lowest terms.
Rat parse_rat(const std::string& s);

// Canonical string form: "a" when the denominator is 1, else "a/b" in lowest terms.
std::string rat_str(const Rat& r);

// Exact p-th power.
Rat rat_pow(const Rat& base, int p);

// Exact rational p-th root if one exists (p >= 1). For even p the input must be >= 0.
std::optional<Rat> rat_root(const Rat& x, int p);

} // namespace serreatlas
