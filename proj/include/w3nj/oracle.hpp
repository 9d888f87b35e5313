#pragma once

#include "w3nj/half_int.hpp"
#include "w3nj/prime_exp.hpp"
#include "w3nj/surd.hpp"
#include "w3nj/twelvej_input.hpp"

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace w3nj {

/// Raised when a brute-force contraction would exceed its state-space bound.
struct DimensionGuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace oracle_detail {

__extension__ using i128 = __int128;
__extension__ using u128 = unsigned __int128;


inline constexpr int kMaxTwice = 6;           // every label 2j <= 6
inline constexpr unsigned kSmallPrimes[4] = {2, 3, 5, 7};

/// sign * r * prod p_k^(e_k / 2), r > 0 coprime to 210. sign == 0 means zero.
struct SmoothValue {
    int sign = 0;
    std::int64_t r = 1;
    std::array<int, 4> e{};
};

inline mpz_class factorial_z(long n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return f;
}

/// Splits a nonzero integer into its {2,3,5,7} exponents and the remaining cofactor.
inline void split_smooth(mpz_class n, std::array<int, 4>& e, mpz_class& rest, int weight) {
    for (int k = 0; k < 4; ++k) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), kSmallPrimes[k])) {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), kSmallPrimes[k]);
            e[k] += weight;
        }
    }
    rest = n;
}

/// <j1 m1 j2 m2 | J M> by the explicit Racah-van der Waerden sum, all arguments twice-values.
inline SmoothValue clebsch_gordan(int j1, int m1, int j2, int m2, int J) {
    SmoothValue out;
    const int M = m1 + m2;
    if (!triangle_ok_twice(j1, j2, J)) return out;
    if (std::abs(m1) > j1 || std::abs(m2) > j2 || std::abs(M) > J) return out;
    if (((j1 + m1) & 1) || ((j2 + m2) & 1)) return out;

    auto h = [](int twice_sum) { return static_cast<long>(twice_sum / 2); };
    // sum over k of (-1)^k / [k! (j1+j2-J-k)! (j1-m1-k)! (j2+m2-k)! (J-j2+m1+k)! (J-j1-m2+k)!]
    long kmin = std::max({0L, h(j2 - J - m1), h(j1 + m2 - J)});
    long kmax = std::min({h(j1 + j2 - J), h(j1 - m1), h(j2 + m2)});
    mpq_class sum = 0;
    for (long k = kmin; k <= kmax; ++k) {
        mpz_class den = factorial_z(k) * factorial_z(h(j1 + j2 - J) - k) * factorial_z(h(j1 - m1) - k) *
                        factorial_z(h(j2 + m2) - k) * factorial_z(h(J - j2 + m1) + k) *
                        factorial_z(h(J - j1 - m2) + k);
        mpq_class term(1, den);
        term.canonicalize();
        if (k & 1) sum -= term; else sum += term;
    }
    if (sgn(sum) == 0) return out;
    out.sign = sgn(sum);

    // squared prefactor (2J+1)(j1+j2-J)!(j1-j2+J)!(-j1+j2+J)!/(j1+j2+J+1)! * prod (j±m)!
    mpz_class pnum = mpz_class(J + 1) * factorial_z(h(j1 + j2 - J)) * factorial_z(h(j1 - j2 + J)) *
                     factorial_z(h(-j1 + j2 + J)) * factorial_z(h(j1 + m1)) * factorial_z(h(j1 - m1)) *
                     factorial_z(h(j2 + m2)) * factorial_z(h(j2 - m2)) * factorial_z(h(J + M)) *
                     factorial_z(h(J - M));
    mpz_class pden = factorial_z(h(j1 + j2 + J) + 1);
    mpz_class rest;
    split_smooth(pnum, out.e, rest, 1);
    if (rest != 1) throw DimensionGuardError("Clebsch-Gordan prefactor outside the small-prime basis");
    split_smooth(pden, out.e, rest, -1);
    if (rest != 1) throw DimensionGuardError("Clebsch-Gordan prefactor outside the small-prime basis");

    mpz_class num = abs(sum.get_num());
    split_smooth(num, out.e, rest, 2);
    if (!rest.fits_slong_p()) throw DimensionGuardError("Clebsch-Gordan cofactor too large");
    out.r = rest.get_si();
    split_smooth(sum.get_den(), out.e, rest, -2);
    if (rest != 1) throw DimensionGuardError("Clebsch-Gordan denominator outside the small-prime basis");
    return out;
}

/// Table over all arguments with twice-values <= kMaxTwice.
class CGTable {
public:
    CGTable() : table_(kSize) {
        for (int j1 = 0; j1 <= kMaxTwice; ++j1)
            for (int j2 = 0; j2 <= kMaxTwice; ++j2)
                for (int J = 0; J <= kMaxTwice; ++J)
                    for (int m1 = -j1; m1 <= j1; m1 += 2)
                        for (int m2 = -j2; m2 <= j2; m2 += 2)
                            table_[index(j1, m1, j2, m2, J)] = clebsch_gordan(j1, m1, j2, m2, J);
    }
    const SmoothValue& operator()(int j1, int m1, int j2, int m2, int J) const {
        return table_[index(j1, m1, j2, m2, J)];
    }
    static const CGTable& instance() {
        static const CGTable t;
        return t;
    }

private:
    static constexpr int kD = kMaxTwice + 1;
    static constexpr int kM = 2 * kMaxTwice + 1;
    static constexpr std::size_t kSize = std::size_t(kD) * kM * kD * kM * kD;
    static std::size_t index(int j1, int m1, int j2, int m2, int J) {
        return (((std::size_t(j1) * kM + std::size_t(m1 + kMaxTwice)) * kD + std::size_t(j2)) * kM +
                std::size_t(m2 + kMaxTwice)) * kD + std::size_t(J);
    }
    std::vector<SmoothValue> table_;
};

/// Product accumulator keyed by the exponent vector.
class SmoothAccumulator {
public:
    void add(int sign, i128 r, const std::array<int, 4>& e) {
        std::uint32_t key = 0;
        for (int k = 0; k < 4; ++k) {
            int v = e[k] + kOffset;
            if (v < 0 || v >= 256) throw DimensionGuardError("exponent out of accumulator range");
            key = (key << 8) | static_cast<std::uint32_t>(v);
        }
        i128& slot = sums_[key];
        if (__builtin_add_overflow(slot, sign > 0 ? r : -r, &slot))
            throw DimensionGuardError("accumulator overflow");
    }

    SurdSum result() const {
        SurdSum out;
        for (const auto& [key, s] : sums_) {
            if (s == 0) continue;
            PrimeExp p;
            p.exps.resize(4);
            for (int k = 3, sh = 0; k >= 0; --k, sh += 8)
                p.exps[k] = static_cast<int>((key >> sh) & 0xff) - kOffset;
            out += SurdSum(to_mpz(s)) * sqrt_exp(p);
        }
        return out;
    }

private:
    static constexpr int kOffset = 128;

    static SurdSum sqrt_exp(const PrimeExp& twice_exps) { return SurdSum::sqrt_of(twice_exps); }

    static mpq_class to_mpz(i128 v) {
        bool neg = v < 0;
        u128 u = neg ? static_cast<u128>(-v) : static_cast<u128>(v);
        mpz_class hi(static_cast<unsigned long>(u >> 64)), lo(static_cast<unsigned long>(u));
        mpz_class z = (hi << 64) + lo;
        return mpq_class(neg ? mpz_class(-z) : z);
    }

    std::unordered_map<std::uint32_t, i128> sums_;
};

inline void require_small(const std::array<int, 12>& t, std::uint64_t max_states) {
    std::uint64_t states = 1;
    for (int k : {0, 1, 4, 5, 10, 11}) states *= static_cast<std::uint64_t>(t[k] + 1);
    for (int v : t)
        if (v > kMaxTwice) throw DimensionGuardError("brute-force oracle limited to 2j <= 6");
    if (states > max_states) throw DimensionGuardError("product space exceeds the configured bound");
}

}  // namespace oracle_detail

/// Brute-force 12j: <b|a> over the product m-basis of (j1 j2 j3 j4 s5 j6) projected on J = 0, divided by
/// sqrt([j12][j34][j13][j24][j125][j135]).
///   |a> = |((s5 (j1 j2) j12) j125, (j3 j4) j34) j6, j6; 0>
///   |b> = |((s5 (j1 j3) j13) j135, (j2 j4) j24) j6, j6; 0>
inline SurdSum oracle_12j_bruteforce(const TwelveJInput& in, std::uint64_t max_states = 117649) {
    using namespace oracle_detail;
    const auto t = in.twice();
    require_small(t, max_states);
    if (!in.is_triangular()) return {};
    const CGTable& cg = CGTable::instance();
    const int j1 = in.j1.twice, j2 = in.j2.twice, j3 = in.j3.twice, j4 = in.j4.twice, s = in.s5.twice,
              j6 = in.j6.twice, j12 = in.j12.twice, j34 = in.j34.twice, j13 = in.j13.twice,
              j24 = in.j24.twice, j125 = in.j125.twice, j135 = in.j135.twice;

    SmoothAccumulator acc;
    struct Partial {
        int sign;
        i128 r;
        std::array<int, 4> e;
    };
    auto mul = [](Partial p, const SmoothValue& v) {
        p.sign *= v.sign;
        if (__builtin_mul_overflow(p.r, static_cast<i128>(v.r), &p.r))
            throw DimensionGuardError("oracle product overflow");
        for (int k = 0; k < 4; ++k) p.e[k] += v.e[k];
        return p;
    };

    for (int m1 = -j1; m1 <= j1; m1 += 2)
        for (int m2 = -j2; m2 <= j2; m2 += 2) {
            const int m12 = m1 + m2;
            const auto& c12 = cg(j1, m1, j2, m2, j12);
            if (!c12.sign) continue;
            Partial p12 = mul(Partial{1, 1, {}}, c12);
            for (int m3 = -j3; m3 <= j3; m3 += 2) {
                const int m13 = m1 + m3;
                const auto& c13 = cg(j1, m1, j3, m3, j13);
                if (!c13.sign) continue;
                Partial p13 = mul(p12, c13);
                for (int m4 = -j4; m4 <= j4; m4 += 2) {
                    const int m34 = m3 + m4, m24 = m2 + m4;
                    const auto& c34 = cg(j3, m3, j4, m4, j34);
                    if (!c34.sign) continue;
                    const auto& c24 = cg(j2, m2, j4, m4, j24);
                    if (!c24.sign) continue;
                    Partial p4 = mul(mul(p13, c34), c24);
                    for (int m5 = -s; m5 <= s; m5 += 2) {
                        const int m125 = m5 + m12, m135 = m5 + m13, M = m125 + m34;
                        if (std::abs(M) > j6) continue;
                        const auto& c125 = cg(s, m5, j12, m12, j125);
                        if (!c125.sign) continue;
                        const auto& c135 = cg(s, m5, j13, m13, j135);
                        if (!c135.sign) continue;
                        const auto& ca = cg(j125, m125, j34, m34, j6);
                        if (!ca.sign) continue;
                        const auto& cb = cg(j135, m135, j24, m24, j6);
                        if (!cb.sign) continue;
                        const auto& c0 = cg(j6, M, j6, -M, 0);
                        Partial p = mul(mul(mul(mul(mul(mul(p4, c125), c135), ca), cb), c0), c0);
                        acc.add(p.sign, p.r, p.e);
                    }
                }
            }
        }

    PrimeExp norm;
    for (int d : {j12, j34, j13, j24, j125, j135}) norm /= PrimeExp::of_integer(static_cast<unsigned long>(d + 1));
    return acc.result() * SurdSum::sqrt_of(norm);
}

/// Brute-force 9j {a b c; d e f; g h i} = <(a d) g, (b e) h; i | (a b) c, (d e) f; i> / sqrt([c][f][g][h]),
/// obtained from the 12j contraction with a spectator spin 0.
inline SurdSum oracle_9j_bruteforce(const NineJInput& n) {
    TwelveJInput t;
    t.j1 = n[0]; t.j2 = n[1]; t.j12 = n[2];
    t.j3 = n[3]; t.j4 = n[4]; t.j34 = n[5];
    t.j13 = n[6]; t.j24 = n[7]; t.j6 = n[8];
    t.s5 = HalfInt{0}; t.j125 = t.j12; t.j135 = t.j13;
    PrimeExp scale = PrimeExp::of_integer(static_cast<unsigned long>(t.j12.dim())) *
                     PrimeExp::of_integer(static_cast<unsigned long>(t.j13.dim()));
    return oracle_12j_bruteforce(t) * SurdSum::sqrt_of(scale);
}

/// Brute-force 6j through the brute-force 9j with a zero corner:
///   9j{a b c; e d c; f f 0} = (-1)^{b+c+e+f} {a b c; d e f} / sqrt((2c+1)(2f+1)).
inline SurdSum oracle_6j_bruteforce(HalfInt a, HalfInt b, HalfInt c, HalfInt d, HalfInt e, HalfInt f) {
    NineJInput n{a, b, c, e, d, c, f, f, HalfInt{0}};
    const int ph = b.twice + c.twice + e.twice + f.twice;
    if (ph & 1) return {};
    SurdSum v = oracle_9j_bruteforce(n) *
                SurdSum::sqrt_of(PrimeExp::of_integer(static_cast<unsigned long>(c.dim())) *
                                 PrimeExp::of_integer(static_cast<unsigned long>(f.dim())));
    return ((ph / 2) & 1) ? -v : v;
}

}  // namespace w3nj
