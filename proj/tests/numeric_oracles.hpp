#pragma once

#include <cmath>
#include <vector>

namespace oracle {

// Brute-force trapezoid integration of u rho'(u) = -rho(u-1) with step 1/m.
inline double rho_trapezoid(double u, int m) {
    const long total = static_cast<long>(std::llround(u * m));
    std::vector<double> r(static_cast<size_t>(total + 1));
    const double h = 1.0 / m;
    for (long i = 0; i <= total; ++i) {
        if (i <= m) {
            r[static_cast<size_t>(i)] = 1;
            continue;
        }
        double t1 = (i - 1) * h, t2 = i * h;
        r[static_cast<size_t>(i)] = r[static_cast<size_t>(i - 1)] -
                                    0.5 * h * (r[static_cast<size_t>(i - 1 - m)] / t1 + r[static_cast<size_t>(i - m)] / t2);
    }
    return r[static_cast<size_t>(total)];
}

}  // namespace oracle
