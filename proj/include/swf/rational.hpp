#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace swf {

using Rational = mpq_class;
using Integer = mpz_class;

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational rational_from_string(const std::string& s)
{
    Rational q(s);
    q.canonicalize();
    return q;
}

// Largest absolute numerator over the given values.
inline Integer max_abs_numerator(const std::vector<Rational>& values)
{
    Integer best = 0;
    for (const auto& v : values) {
        Integer a = abs(v.get_num());
        if (a > best) best = a;
    }
    return best;
}

}  // namespace swf
