#pragma once

#include <gmpxx.h>
#include <string>

namespace hilbchow {

// Exact arbitrary-precision rationals. mpq_class keeps values in canonical
// form (reduced, positive denominator) through arithmetic; the raw (num,den)
// constructor does not, hence the helper.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline std::string rat_str(const Rational& q) { return q.get_str(); }

}  // namespace hilbchow
