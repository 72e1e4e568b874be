#pragma once

#include <gmpxx.h>
#include <string>

namespace svao {

// Exact rational coefficients. All core arithmetic is over Q; no floating
// point anywhere.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1)
{
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

inline std::string rat_str(const Rat& r) { return r.get_str(); }

}  // namespace svao
