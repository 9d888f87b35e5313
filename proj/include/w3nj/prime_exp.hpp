#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace w3nj {

namespace detail {

inline constexpr unsigned kPrimeLimit = 1u << 16;

inline const std::vector<unsigned>& primes() {
    static const std::vector<unsigned> table = [] {
        std::vector<bool> composite(kPrimeLimit + 1, false);
        std::vector<unsigned> out;
        for (unsigned i = 2; i <= kPrimeLimit; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (std::uint64_t k = std::uint64_t(i) * i; k <= kPrimeLimit; k += i) composite[k] = true;
        }
        return out;
    }();
    return table;
}

}  // namespace detail

/// Signed product of prime powers. Index k of `exps` is the exponent of the k-th prime.
struct PrimeExp {
    int sign = 1;
    std::vector<int> exps;

    static PrimeExp one() { return {}; }

    /// n! by Legendre's formula.
    static PrimeExp factorial(long n) {
        if (n < 0) throw std::domain_error("factorial of negative integer");
        if (n > static_cast<long>(detail::kPrimeLimit)) throw std::out_of_range("factorial argument too large");
        PrimeExp r;
        const auto& ps = detail::primes();
        for (std::size_t k = 0; k < ps.size() && ps[k] <= static_cast<unsigned long>(n); ++k) {
            long e = 0;
            for (long q = n / ps[k]; q > 0; q /= ps[k]) e += q;
            r.exps.push_back(static_cast<int>(e));
        }
        return r;
    }

    static PrimeExp of_integer(unsigned long n) {
        if (n == 0) throw std::domain_error("zero has no prime factorisation");
        PrimeExp r;
        const auto& ps = detail::primes();
        for (std::size_t k = 0; n > 1; ++k) {
            if (k >= ps.size()) throw std::out_of_range("integer has a prime factor beyond the table");
            if (static_cast<unsigned long>(ps[k]) * ps[k] > n) {
                // remaining n is prime
                auto it = std::lower_bound(ps.begin(), ps.end(), static_cast<unsigned>(n));
                if (it == ps.end() || *it != n) throw std::out_of_range("integer has a prime factor beyond the table");
                std::size_t idx = static_cast<std::size_t>(it - ps.begin());
                if (r.exps.size() <= idx) r.exps.resize(idx + 1, 0);
                r.exps[idx] += 1;
                break;
            }
            while (n % ps[k] == 0) {
                if (r.exps.size() <= k) r.exps.resize(k + 1, 0);
                r.exps[k] += 1;
                n /= ps[k];
            }
        }
        return r;
    }

    PrimeExp& operator*=(const PrimeExp& o) {
        if (exps.size() < o.exps.size()) exps.resize(o.exps.size(), 0);
        for (std::size_t k = 0; k < o.exps.size(); ++k) exps[k] += o.exps[k];
        sign *= o.sign;
        return *this;
    }
    PrimeExp& operator/=(const PrimeExp& o) {
        if (exps.size() < o.exps.size()) exps.resize(o.exps.size(), 0);
        for (std::size_t k = 0; k < o.exps.size(); ++k) exps[k] -= o.exps[k];
        sign *= o.sign;
        return *this;
    }
    friend PrimeExp operator*(PrimeExp a, const PrimeExp& b) { return a *= b; }
    friend PrimeExp operator/(PrimeExp a, const PrimeExp& b) { return a /= b; }

    PrimeExp pow(int k) const {
        PrimeExp r = *this;
        for (int& e : r.exps) e *= k;
        if (k % 2 == 0) r.sign = 1;
        return r;
    }

    bool operator==(const PrimeExp& o) const {
        if (sign != o.sign) return false;
        std::size_t n = std::max(exps.size(), o.exps.size());
        for (std::size_t k = 0; k < n; ++k) {
            int a = k < exps.size() ? exps[k] : 0;
            int b = k < o.exps.size() ? o.exps[k] : 0;
            if (a != b) return false;
        }
        return true;
    }

    /// Exact rational value.
    mpq_class to_mpq() const {
        mpz_class num = 1, den = 1, pk;
        const auto& ps = detail::primes();
        for (std::size_t k = 0; k < exps.size(); ++k) {
            if (exps[k] == 0) continue;
            mpz_ui_pow_ui(pk.get_mpz_t(), ps[k], static_cast<unsigned long>(std::abs(exps[k])));
            if (exps[k] > 0) num *= pk; else den *= pk;
        }
        mpq_class q(sign * num, den);
        q.canonicalize();
        return q;
    }

    /// Splits sqrt(|this|) into rational * sqrt(square-free integer). The sign is not touched.
    void sqrt_split(mpq_class& outer, mpz_class& radicand) const {
        mpz_class num = 1, den = 1, rad = 1, pk;
        const auto& ps = detail::primes();
        for (std::size_t k = 0; k < exps.size(); ++k) {
            int e = exps[k];
            if (e == 0) continue;
            // floor division so that odd negative exponents leave a +1 in the radicand
            int half = e >= 0 ? e / 2 : -((-e + 1) / 2);
            int odd = e - 2 * half;
            if (odd) rad *= ps[k];
            if (half > 0) {
                mpz_ui_pow_ui(pk.get_mpz_t(), ps[k], static_cast<unsigned long>(half));
                num *= pk;
            } else if (half < 0) {
                mpz_ui_pow_ui(pk.get_mpz_t(), ps[k], static_cast<unsigned long>(-half));
                den *= pk;
            }
        }
        outer = mpq_class(num, den);
        outer.canonicalize();
        radicand = rad;
    }
};

}  // namespace w3nj
