#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>

namespace w3nj {

/// Owning mpfr_t with an explicit per-value precision. Binary results take the
/// larger precision of the operands, so no process-wide default is involved.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t bits = 113) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }
    BigFloat(long x, mpfr_prec_t bits) : BigFloat(bits) { mpfr_set_si(v_, x, MPFR_RNDN); }
    BigFloat(double x, mpfr_prec_t bits) : BigFloat(bits) { mpfr_set_d(v_, x, MPFR_RNDN); }
    BigFloat(const mpz_class& x, mpfr_prec_t bits) : BigFloat(bits) { mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN); }
    BigFloat(const mpq_class& x, mpfr_prec_t bits) : BigFloat(bits) { mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN); }

    BigFloat(const BigFloat& o) : BigFloat(o.precision()) { mpfr_set(v_, o.v_, MPFR_RNDN); }
    BigFloat(BigFloat&& o) noexcept : BigFloat(o.precision()) { mpfr_swap(v_, o.v_); }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, o.precision());
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

    static BigFloat factorial(unsigned long n, mpfr_prec_t bits) {
        BigFloat r(bits);
        mpfr_fac_ui(r.v_, n, MPFR_RNDN);
        return r;
    }
    static BigFloat pi(mpfr_prec_t bits) {
        BigFloat r(bits);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }

    BigFloat& operator+=(const BigFloat& o) { widen(o); mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator-=(const BigFloat& o) { widen(o); mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator*=(const BigFloat& o) { widen(o); mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator/=(const BigFloat& o) { widen(o); mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator*=(long k) { mpfr_mul_si(v_, v_, k, MPFR_RNDN); return *this; }
    BigFloat& operator/=(long k) { mpfr_div_si(v_, v_, k, MPFR_RNDN); return *this; }

    friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
    friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
    friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
    friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }
    BigFloat operator-() const { BigFloat r(*this); mpfr_neg(r.v_, r.v_, MPFR_RNDN); return r; }

    friend BigFloat sqrt(BigFloat a) { mpfr_sqrt(a.v_, a.v_, MPFR_RNDN); return a; }
    friend BigFloat abs(BigFloat a) { mpfr_abs(a.v_, a.v_, MPFR_RNDN); return a; }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sgn() const { return mpfr_sgn(v_); }
    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    /// Scientific notation with `digits` significant decimal digits.
    std::string str(int digits = 30) const {
        char* buf = nullptr;
        std::string fmt = "%." + std::to_string(std::max(digits - 1, 0)) + "Re";
        mpfr_asprintf(&buf, fmt.c_str(), v_);
        std::string s(buf);
        mpfr_free_str(buf);
        return s;
    }

private:
    void widen(const BigFloat& o) {
        if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
    }
    mpfr_t v_;
};

}  // namespace w3nj
