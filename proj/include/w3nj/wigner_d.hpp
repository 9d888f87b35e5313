#pragma once

#include "w3nj/half_int.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace w3nj {

/// d^s_{m' m}(theta) = <s m'| exp(-i theta J_y) |s m>, by the explicit finite sum.
inline double wigner_d_sum(HalfInt s, HalfInt mp, HalfInt m, double theta) {
    const int j = s.twice, a = mp.twice, b = m.twice;
    auto fact = [](int twice_n) { return std::tgamma(0.5 * twice_n + 1.0); };
    const double c = std::cos(0.5 * theta), sn = std::sin(0.5 * theta);
    const double pre = std::sqrt(fact(j + a) * fact(j - a) * fact(j + b) * fact(j - b));
    double sum = 0.0;
    // k runs over integers with all factorial arguments >= 0
    const int kmin = std::max(0, (b - a) / 2);
    const int kmax = std::min((j + b) / 2, (j - a) / 2);
    for (int k = kmin; k <= kmax; ++k) {
        const int k2 = 2 * k;
        const double den = fact(j + b - k2) * fact(k2) * fact(j - k2 - a) * fact(k2 - b + a);
        const int pc = (2 * j + b - a - 2 * k2) / 2, ps = (2 * k2 - b + a) / 2;
        const double t = std::pow(c, pc) * std::pow(sn, ps) / den;
        sum += (((k2 - b + a) / 2) & 1) ? -t : t;
    }
    return pre * sum;
}

namespace wd_detail {

/// Entries with m' >= |m| for s <= 2 in terms of cos(theta) and the half angle.
inline double upper(int j, int a, int b, double theta) {
    const double C = std::cos(theta), S = std::sin(theta);
    const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
    const double p = 0.5 * (1 + C), q = 0.5 * (1 - C);
    switch (j) {
        case 0: return 1.0;
        case 1: return b == 1 ? c : -s;
        case 2:
            if (a == 2) return b == 2 ? p : (b == 0 ? -S / std::sqrt(2.0) : q);
            return C;
        case 3:
            if (a == 3) {
                if (b == 3) return p * c;
                if (b == 1) return -std::sqrt(3.0) * p * s;
                if (b == -1) return std::sqrt(3.0) * q * c;
                return -q * s;
            }
            return b == 1 ? 0.5 * (3 * C - 1) * c : -0.5 * (3 * C + 1) * s;
        case 4:
            if (a == 4) {
                if (b == 4) return p * p;
                if (b == 2) return -p * S;
                if (b == 0) return std::sqrt(3.0 / 8.0) * S * S;
                if (b == -2) return -q * S;
                return q * q;
            }
            if (a == 2) {
                if (b == 2) return p * (2 * C - 1);
                if (b == 0) return -std::sqrt(1.5) * S * C;
                return q * (2 * C + 1);
            }
            return 0.5 * (3 * C * C - 1);
    }
    throw std::logic_error("closed form only for s <= 2");
}

}  // namespace wd_detail

/// Standard Wigner small-d, d^s_{m' m}(theta); d^1_{10} = -sin(theta)/sqrt(2).
/// Closed forms for s <= 2, the general sum beyond.
inline double wigner_d(HalfInt s, HalfInt mp, HalfInt m, double theta) {
    if (s.twice < 0 || std::abs(mp.twice) > s.twice || std::abs(m.twice) > s.twice ||
        ((s.twice + mp.twice) & 1) || ((s.twice + m.twice) & 1))
        throw std::out_of_range("wigner_d index out of range");
    if (s.twice > 4) return wigner_d_sum(s, mp, m, theta);
    int a = mp.twice, b = m.twice;
    double sign = 1.0;
    // d_{m'm} = (-1)^{m'-m} d_{m m'} moves the larger magnitude to the row
    if (std::abs(b) > std::abs(a)) {
        if (((a - b) / 2) & 1) sign = -sign;
        std::swap(a, b);
    }
    // d_{m'm} = (-1)^{m'-m} d_{-m',-m} makes the row non-negative
    if (a < 0) {
        if (((a - b) / 2) & 1) sign = -sign;
        a = -a;
        b = -b;
    }
    return sign * wd_detail::upper(s.twice, a, b, theta);
}

}  // namespace w3nj
