#pragma once

#include <mpfr.h>
#include <gmpxx.h>

#include <algorithm>
#include <string>
#include <string_view>
#include <utility>

#include "markoff_teich/errors.hpp"

namespace mkt {

/// Arbitrary-precision real backed by MPFR.
///
/// Precision is a per-value property fixed at construction; binary
/// operations round to the wider of the two operand precisions. There is
/// no ambient default precision anywhere in this library -- every value
/// traces its precision back to an explicit constructor argument.
class Real {
public:
    static constexpr long min_precision = 64;

    explicit Real(long prec_bits) { init(prec_bits); }
    Real(long value, long prec_bits) {
        init(prec_bits);
        mpfr_set_si(v_, value, MPFR_RNDN);
    }
    Real(const mpz_class& value, long prec_bits) {
        init(prec_bits);
        mpfr_set_z(v_, value.get_mpz_t(), MPFR_RNDN);
    }
    Real(const mpq_class& value, long prec_bits) {
        init(prec_bits);
        mpfr_set_q(v_, value.get_mpq_t(), MPFR_RNDN);
    }

    /// Parse a decimal string at the given precision. The string is parsed
    /// directly by MPFR; it never passes through a double.
    static Real from_decimal(std::string_view text, long prec_bits);

    Real(const Real& o) {
        init(mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        v_[0] = o.v_[0];
        mpfr_init2(o.v_, min_precision);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    long precision() const { return mpfr_get_prec(v_); }

    /// Copy rounded to a different precision.
    Real rounded_to(long prec_bits) const {
        Real r(prec_bits);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    /// Scientific-notation decimal string. With digits == 0 emits enough
    /// digits to round-trip the full precision.
    std::string to_decimal(int digits = 0) const;

    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }

    friend Real operator+(const Real& a, const Real& b) { return binop(a, b, mpfr_add); }
    friend Real operator-(const Real& a, const Real& b) { return binop(a, b, mpfr_sub); }
    friend Real operator*(const Real& a, const Real& b) { return binop(a, b, mpfr_mul); }
    friend Real operator/(const Real& a, const Real& b) { return binop(a, b, mpfr_div); }

    friend Real operator+(const Real& a, long b) { return binop_si(a, b, mpfr_add_si); }
    friend Real operator-(const Real& a, long b) { return binop_si(a, b, mpfr_sub_si); }
    friend Real operator*(const Real& a, long b) { return binop_si(a, b, mpfr_mul_si); }
    friend Real operator/(const Real& a, long b) { return binop_si(a, b, mpfr_div_si); }
    friend Real operator-(long a, const Real& b) {
        Real r(b.precision());
        mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator/(long a, const Real& b) {
        Real r(b.precision());
        mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator+(long a, const Real& b) { return b + a; }
    friend Real operator*(long a, const Real& b) { return b * a; }

    Real operator-() const {
        Real r(precision());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

    friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
    friend bool operator!=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) != 0; }
    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }

    friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
    friend bool operator<(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
    friend bool operator<=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) <= 0; }
    friend bool operator>(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }
    friend bool operator>=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) >= 0; }

    friend Real sqrt(const Real& x);
    friend Real log(const Real& x);
    friend Real log1p(const Real& x);
    friend Real exp(const Real& x);
    friend Real sinh(const Real& x);
    friend Real cosh(const Real& x);
    friend Real abs(const Real& x);
    friend Real pow_int(const Real& x, long e);
    friend Real max(const Real& a, const Real& b) { return a >= b ? a : b; }
    friend Real min(const Real& a, const Real& b) { return a <= b ? a : b; }

    /// 2^e at the given precision (exact).
    static Real pow2(long e, long prec_bits) {
        Real r(prec_bits);
        mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
        return r;
    }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

private:
    mpfr_t v_;

    void init(long prec_bits) {
        if (prec_bits < min_precision)
            throw domain_error("precision must be at least 64 bits");
        mpfr_init2(v_, prec_bits);
        mpfr_set_zero(v_, 1);
    }

    template <class F>
    static Real binop(const Real& a, const Real& b, F f) {
        Real r(std::max(a.precision(), b.precision()));
        f(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    template <class F>
    static Real binop_si(const Real& a, long b, F f) {
        Real r(a.precision());
        f(r.v_, a.v_, b, MPFR_RNDN);
        return r;
    }
};

Real sqrt(const Real& x);
Real log(const Real& x);
Real log1p(const Real& x);
Real exp(const Real& x);
Real sinh(const Real& x);
Real cosh(const Real& x);
Real abs(const Real& x);
Real pow_int(const Real& x, long e);

/// |a - b| / max(|a|, |b|); zero when both are zero.
Real rel_diff(const Real& a, const Real& b);

/// |a - b| <= tol * max(|a|, |b|, 1).
bool close_rel(const Real& a, const Real& b, const Real& tol);

/// Sum accumulator carrying 64 guard bits over the target precision.
/// Addition order is chosen by the caller, so results are reproducible.
class Accumulator {
public:
    explicit Accumulator(long prec_bits)
        : target_prec_(prec_bits), sum_(prec_bits + 64) {}

    void add(const Real& term) { sum_ += term; }
    Real value() const { return sum_.rounded_to(target_prec_); }
    const Real& raw_sum() const { return sum_; }

private:
    long target_prec_;
    Real sum_;
};

} // namespace mkt
