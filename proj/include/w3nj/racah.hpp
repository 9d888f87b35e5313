#pragma once

#include "w3nj/bigfloat.hpp"
#include "w3nj/half_int.hpp"
#include "w3nj/prime_exp.hpp"
#include "w3nj/sixj_cache.hpp"
#include "w3nj/surd.hpp"
#include "w3nj/twelvej_input.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

namespace w3nj {

namespace detail {

/// Racah sum bookkeeping in integer units; all inputs are twice-values of a triangular 6j.
struct RacahSum {
    long alpha[4];
    long beta[3];
    long tmin, tmax;

    explicit RacahSum(const std::array<int, 6>& t) {
        const int a = t[0], b = t[1], c = t[2], d = t[3], e = t[4], f = t[5];
        alpha[0] = (a + b + c) / 2;
        alpha[1] = (a + e + f) / 2;
        alpha[2] = (d + b + f) / 2;
        alpha[3] = (d + e + c) / 2;
        beta[0] = (a + b + d + e) / 2;
        beta[1] = (a + c + d + f) / 2;
        beta[2] = (b + c + e + f) / 2;
        tmin = *std::max_element(alpha, alpha + 4);
        tmax = *std::min_element(beta, beta + 3);
    }

    /// ratio T(t+1)/T(t) = num/den
    void ratio(long t, long& num, long& den) const {
        num = -(t + 2) * (beta[0] - t) * (beta[1] - t) * (beta[2] - t);
        den = (t + 1 - alpha[0]) * (t + 1 - alpha[1]) * (t + 1 - alpha[2]) * (t + 1 - alpha[3]);
    }
};

/// Δ(abc)^2 = (a+b-c)!(a-b+c)!(-a+b+c)!/(a+b+c+1)! from twice-values.
inline PrimeExp delta_sq(int a, int b, int c) {
    PrimeExp p = PrimeExp::factorial((a + b - c) / 2);
    p *= PrimeExp::factorial((a - b + c) / 2);
    p *= PrimeExp::factorial((-a + b + c) / 2);
    p /= PrimeExp::factorial((a + b + c) / 2 + 1);
    return p;
}

inline bool sixj_triangular(const std::array<int, 6>& t) {
    return triangle_ok_twice(t[0], t[1], t[2]) && triangle_ok_twice(t[0], t[4], t[5]) &&
           triangle_ok_twice(t[3], t[1], t[5]) && triangle_ok_twice(t[3], t[4], t[2]);
}

inline SurdSum sixj_compute(const std::array<int, 6>& t) {
    if (!sixj_triangular(t)) return {};
    const RacahSum rs(t);
    if (rs.tmin > rs.tmax) return {};

    // Σ_t T(t) = T(tmin) * P/Q via nested ratios, innermost first.
    mpz_class P = 1, Q = 1, tmp;
    long num = 0, den = 0;
    for (long t = rs.tmax - 1; t >= rs.tmin; --t) {
        rs.ratio(t, num, den);
        tmp = Q * den;
        P *= num;
        P += tmp;
        Q = tmp;
    }
    if (sgn(P) == 0) return {};

    // T(tmin) = (-1)^tmin (tmin+1)! / Π(tmin-α)! Π(β-tmin)!
    PrimeExp T = PrimeExp::factorial(rs.tmin + 1);
    for (long a : rs.alpha) T /= PrimeExp::factorial(rs.tmin - a);
    for (long b : rs.beta) T /= PrimeExp::factorial(b - rs.tmin);

    PrimeExp under = delta_sq(t[0], t[1], t[2]);
    under *= delta_sq(t[0], t[4], t[5]);
    under *= delta_sq(t[3], t[1], t[5]);
    under *= delta_sq(t[3], t[4], t[2]);
    under *= T.pow(2);

    mpq_class outer;
    mpz_class rad;
    under.sqrt_split(outer, rad);
    mpq_class ratio(P, Q);
    ratio.canonicalize();
    outer *= ratio;
    if (rs.tmin & 1) outer = -outer;
    return SurdSum::term(outer, rad);
}

inline BigFloat sixj_compute_bf(const std::array<int, 6>& t, mpfr_prec_t bits) {
    if (!sixj_triangular(t)) return BigFloat(bits);
    const RacahSum rs(t);
    if (rs.tmin > rs.tmax) return BigFloat(bits);

    BigFloat acc(1L, bits);
    long num = 0, den = 0;
    for (long t6 = rs.tmax - 1; t6 >= rs.tmin; --t6) {
        rs.ratio(t6, num, den);
        acc *= num;
        acc /= den;
        acc += BigFloat(1L, bits);
    }
    auto fac = [bits](long n) { return BigFloat::factorial(static_cast<unsigned long>(n), bits); };
    auto delta = [&](int a, int b, int c) {
        return fac((a + b - c) / 2) * fac((a - b + c) / 2) * fac((-a + b + c) / 2) / fac((a + b + c) / 2 + 1);
    };
    BigFloat T = fac(rs.tmin + 1);
    for (long a : rs.alpha) T /= fac(rs.tmin - a);
    for (long b : rs.beta) T /= fac(b - rs.tmin);
    BigFloat pre = sqrt(delta(t[0], t[1], t[2]) * delta(t[0], t[4], t[5]) * delta(t[3], t[1], t[5]) *
                        delta(t[3], t[4], t[2]));
    BigFloat r = pre * T * acc;
    return (rs.tmin & 1) ? -r : r;
}

}  // namespace detail

/// 6j from twice-values. Uses `cache` when non-null.
inline SurdSum wigner6j_twice(const std::array<int, 6>& t, SixJCache* cache = &SixJCache::global()) {
    if (!detail::sixj_triangular(t)) return {};
    if (cache) {
        auto key = sixj_canonical_key(t);
        if (key) {
            if (const SurdSum* hit = cache->find(*key)) return *hit;
            return cache->insert_if_absent(*key, detail::sixj_compute(t));
        }
    }
    return detail::sixj_compute(t);
}

/// {a b c; d e f}
inline SurdSum wigner6j(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt e, HalfInt f,
                        SixJCache* cache = &SixJCache::global()) {
    return wigner6j_twice({a.twice, b.twice, c.twice, d.twice, e.twice, f.twice}, cache);
}

inline BigFloat wigner6j_bf(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt e, HalfInt f, mpfr_prec_t bits) {
    return detail::sixj_compute_bf({a.twice, b.twice, c.twice, d.twice, e.twice, f.twice}, bits);
}

namespace detail {

/// Common range of a summation variable constrained by triangles (p_k, q_k, x).
struct XRange {
    int lo = 0, hi = -1;  // twice-values, step 2
};

template <std::size_t N>
XRange x_range(const std::array<std::array<int, 2>, N>& pairs) {
    XRange r{0, 1 << 30};
    const int parity = (pairs[0][0] + pairs[0][1]) & 1;
    for (const auto& p : pairs) {
        if (((p[0] + p[1]) & 1) != parity) return {0, -1};
        r.lo = std::max(r.lo, std::abs(p[0] - p[1]));
        r.hi = std::min(r.hi, p[0] + p[1]);
    }
    return r;
}

template <class Eval, class Acc>
void ninej_sum(const std::array<int, 9>& n, Eval&& six, Acc&& acc) {
    const int a = n[0], b = n[1], c = n[2], d = n[3], e = n[4], f = n[5], g = n[6], h = n[7], i = n[8];
    XRange xr = x_range<3>({{{a, i}, {b, f}, {d, h}}});
    for (int x = xr.lo; x <= xr.hi; x += 2) {
        const int sign = (x & 1) ? -1 : 1;
        acc(sign * (x + 1), six({a, b, c, f, i, x}), six({d, e, f, b, x, h}), six({g, h, i, x, a, d}));
    }
}

template <class Eval, class Acc>
void twelvej_sum(const TwelveJInput& in, Eval&& six, Acc&& acc) {
    const Ring12 r = to_ring(in);
    const auto& J = r.J;
    const auto& K = r.K;
    const auto& L = r.L;
    int R = 0;
    for (int k = 0; k < 4; ++k) R += J[k] + K[k] + L[k];
    XRange xr = x_range<4>({{{J[0], K[0]}, {J[1], K[1]}, {J[2], K[2]}, {J[3], K[3]}}});
    for (int x = xr.lo; x <= xr.hi; x += 2) {
        if ((R - x) & 1) throw std::logic_error("12j phase is not integral");
        const int sign = (((R - x) / 2) & 1) ? -1 : 1;
        acc(sign * (x + 1), six({J[0], K[0], x, K[1], J[1], L[0]}), six({J[1], K[1], x, K[2], J[2], L[1]}),
            six({J[2], K[2], x, K[3], J[3], L[2]}), six({J[3], K[3], x, J[0], K[0], L[3]}));
    }
}

}  // namespace detail

/// Exact 9j {a b c; d e f; g h i} as Σ_x (-1)^{2x} (2x+1) {a b c; f i x}{d e f; b x h}{g h i; x a d}.
inline SurdSum wigner9j(const NineJInput& n, SixJCache* cache = &SixJCache::global()) {
    if (!ninej_triangular(n)) return {};
    std::array<int, 9> t{};
    for (int k = 0; k < 9; ++k) t[k] = n[k].twice;
    SurdSum out;
    detail::ninej_sum(
        t, [cache](const std::array<int, 6>& s) { return wigner6j_twice(s, cache); },
        [&out](int w, const SurdSum& x, const SurdSum& y, const SurdSum& z) {
            if (x.is_zero() || y.is_zero() || z.is_zero()) return;
            SurdSum p = x * y * z;
            p *= mpq_class(w);
            out += p;
        });
    return out;
}

inline BigFloat wigner9j_bf(const NineJInput& n, mpfr_prec_t bits) {
    BigFloat out(bits);
    if (!ninej_triangular(n)) return out;
    std::array<int, 9> t{};
    for (int k = 0; k < 9; ++k) t[k] = n[k].twice;
    detail::ninej_sum(
        t, [bits](const std::array<int, 6>& s) { return detail::sixj_compute_bf(s, bits); },
        [&out](int w, const BigFloat& x, const BigFloat& y, const BigFloat& z) {
            BigFloat p = x * y * z;
            p *= w;
            out += p;
        });
    return out;
}

/// Exact 12j of the first kind. Convention: the brute-force contraction with the small spin
/// coupled first, |(s5 j12) j125> and |(s5 j13) j135>, reproduces this sum with sign +1.
inline SurdSum wigner12j_first(const TwelveJInput& in, SixJCache* cache = &SixJCache::global()) {
    if (!in.is_triangular()) return {};
    SurdSum out;
    detail::twelvej_sum(
        in, [cache](const std::array<int, 6>& s) { return wigner6j_twice(s, cache); },
        [&out](int w, const SurdSum& a, const SurdSum& b, const SurdSum& c, const SurdSum& d) {
            if (a.is_zero() || b.is_zero() || c.is_zero() || d.is_zero()) return;
            SurdSum p = a * b * c * d;
            p *= mpq_class(w);
            out += p;
        });
    return out;
}

inline BigFloat wigner12j_first_bf(const TwelveJInput& in, mpfr_prec_t bits) {
    BigFloat out(bits);
    if (!in.is_triangular()) return out;
    detail::twelvej_sum(
        in, [bits](const std::array<int, 6>& s) { return detail::sixj_compute_bf(s, bits); },
        [&out](int w, const BigFloat& a, const BigFloat& b, const BigFloat& c, const BigFloat& d) {
            BigFloat p = a * b * c * d;
            p *= w;
            out += p;
        });
    return out;
}

/// 12j with s5 = 0 through its 9j: +{j1 j2 j12; j3 j4 j34; j13 j24 j6} / sqrt((2j12+1)(2j13+1)).
inline SurdSum reduce_s0(const TwelveJInput& in, SixJCache* cache = &SixJCache::global()) {
    if (in.s5.twice != 0 || in.j125 != in.j12 || in.j135 != in.j13)
        throw std::invalid_argument("reduce_s0 requires s5 = 0, j125 = j12, j135 = j13");
    SurdSum nine = wigner9j({in.j1, in.j2, in.j12, in.j3, in.j4, in.j34, in.j13, in.j24, in.j6}, cache);
    PrimeExp inv = PrimeExp::one() / PrimeExp::of_integer(static_cast<unsigned long>(in.j12.dim()));
    inv /= PrimeExp::of_integer(static_cast<unsigned long>(in.j13.dim()));
    return nine * SurdSum::sqrt_of(inv);
}

enum class ExactBackend { surd, bigfloat };

inline std::string to_string(ExactBackend b) { return b == ExactBackend::surd ? "surd" : "bigfloat"; }

struct ExactOptions {
    ExactBackend backend = ExactBackend::surd;
    mpfr_prec_t precision_bits = 256;
    /// Above this largest twice-label the surd backend hands over to bigfloat. 0 disables the switch.
    int surd_max_twice = 0;
    SixJCache* cache = &SixJCache::global();
};

/// 12j as a floating value through the configured backend.
inline double wigner12j_value(const TwelveJInput& in, const ExactOptions& opt = {}) {
    bool use_surd = opt.backend == ExactBackend::surd;
    if (use_surd && opt.surd_max_twice > 0) {
        auto t = in.twice();
        use_surd = *std::max_element(t.begin(), t.end()) <= opt.surd_max_twice;
    }
    if (use_surd) return wigner12j_first(in, opt.cache).to_bigfloat(opt.precision_bits).to_double();
    return wigner12j_first_bf(in, std::max<mpfr_prec_t>(opt.precision_bits, 113)).to_double();
}

}  // namespace w3nj
