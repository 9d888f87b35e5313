#pragma once

#include "w3nj/bigfloat.hpp"
#include "w3nj/prime_exp.hpp"

#include <gmpxx.h>

#include <map>
#include <ostream>
#include <utility>
#include <stdexcept>
#include <string>

namespace w3nj {

namespace detail {
struct MpzLess {
    bool operator()(const mpz_class& a, const mpz_class& b) const { return cmp(a, b) < 0; }
};
}  // namespace detail

/// Exact finite sum  Σ q_k sqrt(r_k)  with rational q_k and distinct square-free r_k > 0.
class SurdSum {
public:
    using Terms = std::map<mpz_class, mpq_class, detail::MpzLess>;

    SurdSum() = default;
    SurdSum(long q) { add_term(mpq_class(q), mpz_class(1)); }
    SurdSum(const mpq_class& q) { add_term(q, mpz_class(1)); }

    /// q * sqrt(r); r must be square-free.
    static SurdSum term(const mpq_class& q, const mpz_class& r) {
        if (sgn(r) <= 0) throw std::domain_error("radicand must be positive");
        SurdSum s;
        s.add_term(q, r);
        return s;
    }

    /// sign * sqrt(p) for a prime-exponent product p.
    static SurdSum sqrt_of(const PrimeExp& p) {
        mpq_class outer;
        mpz_class rad;
        p.sqrt_split(outer, rad);
        if (p.sign < 0) outer = -outer;
        return term(outer, rad);
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_single() const { return terms_.size() <= 1; }

    SurdSum& operator+=(const SurdSum& o) {
        for (const auto& [r, q] : o.terms_) add_term(q, r);
        return *this;
    }
    SurdSum& operator-=(const SurdSum& o) {
        for (const auto& [r, q] : o.terms_) add_term(-q, r);
        return *this;
    }
    SurdSum operator-() const {
        SurdSum s(*this);
        for (auto& kv : s.terms_) kv.second = -kv.second;
        return s;
    }
    friend SurdSum operator+(SurdSum a, const SurdSum& b) { return a += b; }
    friend SurdSum operator-(SurdSum a, const SurdSum& b) { return a -= b; }

    friend SurdSum operator*(const SurdSum& a, const SurdSum& b) {
        SurdSum out;
        mpz_class g, r;
        mpq_class c;
        for (const auto& [ra, qa] : a.terms_) {
            for (const auto& [rb, qb] : b.terms_) {
                mpz_gcd(g.get_mpz_t(), ra.get_mpz_t(), rb.get_mpz_t());
                r = (ra / g) * (rb / g);
                c = qa * qb;
                c *= mpq_class(g);
                out.add_term(c, r);
            }
        }
        return out;
    }
    SurdSum& operator*=(const SurdSum& o) { return *this = *this * o; }
    SurdSum& operator*=(mpq_class q) {
        q.canonicalize();
        if (sgn(q) == 0) { terms_.clear(); return *this; }
        for (auto& kv : terms_) kv.second *= q;
        return *this;
    }

    friend bool operator==(const SurdSum& a, const SurdSum& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        auto ia = a.terms_.begin();
        auto ib = b.terms_.begin();
        for (; ia != a.terms_.end(); ++ia, ++ib) {
            if (cmp(ia->first, ib->first) != 0 || ia->second != ib->second) return false;
        }
        return true;
    }

    /// Sign of the real value; exact for single-term values, evaluated at high precision otherwise.
    int sign() const {
        if (terms_.empty()) return 0;
        if (terms_.size() == 1) return sgn(terms_.begin()->second);
        return to_bigfloat(512).sgn();
    }

    SurdSum abs() const { return sign() < 0 ? -*this : *this; }

    BigFloat to_bigfloat(mpfr_prec_t bits) const {
        BigFloat acc(bits);
        for (const auto& [r, q] : terms_) acc += BigFloat(q, bits) * sqrt(BigFloat(r, bits));
        return acc;
    }
    double to_double() const { return to_bigfloat(128).to_double(); }

    /// "0", "-1/3", "1/6*sqrt(5)", "1/2 - 3*sqrt(2)".
    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        bool first = true;
        for (const auto& [r, q] : terms_) {
            mpq_class a = q;
            if (first) {
                if (sgn(a) < 0) { s += "-"; a = -a; }
            } else {
                s += sgn(a) < 0 ? " - " : " + ";
                if (sgn(a) < 0) a = -a;
            }
            first = false;
            if (r == 1) {
                s += a.get_str();
            } else {
                if (a != 1) s += a.get_str() + "*";
                s += "sqrt(" + r.get_str() + ")";
            }
        }
        return s;
    }

private:
    void add_term(mpq_class q, const mpz_class& r) {
        q.canonicalize();
        if (sgn(q) == 0) return;
        auto [it, inserted] = terms_.try_emplace(r, std::move(q));
        if (!inserted) {
            it->second += q;
            if (sgn(it->second) == 0) terms_.erase(it);
        }
    }

    Terms terms_;
};

inline std::ostream& operator<<(std::ostream& os, const SurdSum& s) { return os << s.str(); }

/// Trial division over the prime table; radicands built from factorials never exceed it.
inline bool is_square_free(mpz_class n) {
    if (sgn(n) <= 0) return false;
    for (unsigned p : detail::primes()) {
        if (n == 1) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
            if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
        }
    }
    return n == 1;
}

}  // namespace w3nj
