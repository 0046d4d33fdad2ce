#pragma once

// Independent reference computations used only by the tests. None of these
// share code with the library routines they check.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace sqrtwell::oracle {

/// Newton iteration on V^3 + 3 Y V - 4 = 0 in extended precision.
inline long double resolvent_root(long double Y)
{
    long double v = Y > 1 ? 4.0L / (3.0L * Y) : 1.0L;
    for (int i = 0; i < 200; ++i) {
        const long double f = v * v * v + 3.0L * Y * v - 4.0L;
        const long double step = f / (3.0L * v * v + 3.0L * Y);
        v -= step;
        if (std::fabs(step) <= 1e-19L * v) {
            break;
        }
    }
    return v;
}

/// Newton iteration on 4x^4 - 8x - 3Y = 0 from max(2^{1/3}, (3Y/4)^{1/4}).
inline long double quartic_root(long double Y)
{
    long double x = std::fmax(std::cbrt(2.0L), std::pow(3.0L * Y / 4.0L, 0.25L));
    for (int i = 0; i < 200; ++i) {
        const long double f = 4.0L * x * x * x * x - 8.0L * x - 3.0L * Y;
        const long double step = f / (16.0L * x * x * x - 8.0L);
        x -= step;
        if (std::fabs(step) <= 1e-19L * x) {
            break;
        }
    }
    return x;
}

/// Ai(z) from its Maclaurin series; adequate for |z| <= 8.
inline long double airy_ai(long double z)
{
    constexpr long double ai0 = 0.355028053887817239260063186004183L;
    constexpr long double aip0 = 0.258819403792806798405183560189203L;
    const long double z3 = z * z * z;
    long double f = 1.0L;
    long double g = z;
    long double tf = 1.0L;
    long double tg = z;
    for (int k = 1; k < 200; ++k) {
        tf *= z3 / ((3.0L * k - 1.0L) * (3.0L * k));
        tg *= z3 / ((3.0L * k) * (3.0L * k + 1.0L));
        f += tf;
        g += tg;
        if (std::fabs(tf) + std::fabs(tg) < 1e-22L * (std::fabs(f) + std::fabs(g))) {
            break;
        }
    }
    return ai0 * f - aip0 * g;
}

/// Magnitudes of the first `count` zeros of Ai, by scanning and bisection.
inline std::vector<double> airy_zeros(int count)
{
    std::vector<double> zeros;
    long double lo = 0.0L;
    long double f_lo = airy_ai(lo);
    const long double step = 0.01L;
    while (static_cast<int>(zeros.size()) < count) {
        const long double hi = lo - step;
        const long double f_hi = airy_ai(hi);
        if ((f_lo > 0) != (f_hi > 0)) {
            long double a = lo;
            long double b = hi;
            long double fa = f_lo;
            for (int i = 0; i < 200; ++i) {
                const long double mid = 0.5L * (a + b);
                const long double fm = airy_ai(mid);
                if ((fm > 0) == (fa > 0)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            zeros.push_back(static_cast<double>(-0.5L * (a + b)));
        }
        lo = hi;
        f_lo = f_hi;
        if (lo < -12.0L) {
            throw std::runtime_error("Airy zero scan out of range");
        }
    }
    return zeros;
}

/// Golden-section search for the minimum of a unimodal function on [lo, hi].
inline double golden_section_min(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-13)
{
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - ratio * (b - a);
    double d = a + ratio * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol * (std::fabs(a) + std::fabs(b))) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
    }
    return f(0.5 * (a + b));
}

} // namespace sqrtwell::oracle
