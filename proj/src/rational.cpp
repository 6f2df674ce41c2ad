#include "serreatlas/rational.hpp"
#include "serreatlas/errors.hpp"

#include <gmp.h>

namespace serreatlas {

namespace {
bool all_digits(const std::string& s, size_t from, size_t to) {
    if (from >= to) return false;
    for (size_t i = from; i < to; ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

Int parse_int_part(const std::string& s) {
    size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (!all_digits(s, start, s.size()))
        throw SchemaError("bad integer literal: '" + s + "'");
    return Int(s);
}
} // namespace

Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) {
        return Rat(parse_int_part(s));
    }
    Int num = parse_int_part(s.substr(0, slash));
    std::string den_s = s.substr(slash + 1);
    if (!den_s.empty() && (den_s[0] == '-' || den_s[0] == '+'))
        throw SchemaError("denominator must be unsigned in '" + s + "'");
    Int den = parse_int_part(den_s);
    if (den == 0) throw SchemaError("zero denominator in '" + s + "'");
    return Rat(num, den); // mpq canonicalizes
}

std::string rat_str(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

Rat rat_pow(const Rat& base, int p) {
    Rat out(1);
    for (int i = 0; i < p; ++i) out *= base;
    return out;
}

namespace {
// Exact integer p-th root, or nullopt. x may be negative when p is odd.
std::optional<Int> int_root(const Int& x, int p) {
    if (x < 0) {
        if (p % 2 == 0) return std::nullopt;
        auto r = int_root(-x, p);
        if (!r) return std::nullopt;
        return -*r;
    }
    Int root;
    int exact = mpz_root(root.backend().data(), x.backend().data(), static_cast<unsigned long>(p));
    if (!exact) return std::nullopt;
    return root;
}
} // namespace

std::optional<Rat> rat_root(const Rat& x, int p) {
    if (p < 1) return std::nullopt;
    if (p == 1) return x;
    auto n = int_root(Int(numerator(x)), p);
    if (!n) return std::nullopt;
    auto d = int_root(Int(denominator(x)), p);
    if (!d) return std::nullopt;
    return Rat(*n, *d);
}

} // namespace serreatlas
