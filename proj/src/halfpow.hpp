#pragma once

#include <cmath>

// x^(m/2) for integer m (possibly negative), used for the |x - zeta|^{-n}
// style kernel factors where std::pow would dominate the profile.

namespace sharpgrad {

inline double ipow(double x, int e)
{
    double r = 1.0;
    while (e > 0) {
        if (e & 1)
            r *= x;
        x *= x;
        e >>= 1;
    }
    return r;
}

// base2^(m/2) given base2 = x^2 (so m odd needs one sqrt)
inline double half_pow(double base2, int m)
{
    const bool inv = m < 0;
    if (inv)
        m = -m;
    double r = ipow(base2, m / 2);
    if (m & 1)
        r *= std::sqrt(base2);
    return inv ? 1.0 / r : r;
}

} // namespace sharpgrad
