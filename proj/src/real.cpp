#include "markoff_teich/real.hpp"

#include <cstdlib>
#include <cstring>
#include <vector>

namespace mkt {

Real Real::from_decimal(std::string_view text, long prec_bits) {
    Real r(prec_bits);
    std::string buf(text);
    if (buf.empty())
        throw domain_error("empty decimal string");
    char* end = nullptr;
    if (mpfr_strtofr(r.v_, buf.c_str(), &end, 10, MPFR_RNDN) == 0 && end == buf.c_str())
        throw domain_error("unparseable decimal string: '" + buf + "'");
    if (end != buf.c_str() + buf.size())
        throw domain_error("trailing characters in decimal string: '" + buf + "'");
    return r;
}

std::string Real::to_decimal(int digits) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return sign() < 0 ? "-inf" : "inf";
    if (is_zero()) return "0";

    // Enough digits that reading the string back at the same precision
    // recovers the value exactly.
    size_t n = digits > 0
        ? static_cast<size_t>(digits)
        : static_cast<size_t>(mpfr_get_str_ndigits(10, mpfr_get_prec(v_)));
    if (n < 2) n = 2;

    mpfr_exp_t e = 0;
    char* s = mpfr_get_str(nullptr, &e, 10, n, v_, MPFR_RNDN);
    std::string mant(s);
    mpfr_free_str(s);

    std::string out;
    size_t i = 0;
    if (!mant.empty() && mant[0] == '-') {
        out += '-';
        i = 1;
    }
    out += mant[i];
    out += '.';
    out += mant.substr(i + 1);
    // Strip trailing zeros but keep one digit after the point.
    size_t last = out.find_last_not_of('0');
    if (out[last] == '.') last += 1;
    out.erase(last + 1);
    out += 'e';
    out += std::to_string(static_cast<long>(e - 1));
    return out;
}

namespace {
template <class F>
Real unop(const Real& x, F f) {
    Real r(x.precision());
    f(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
} // namespace

Real sqrt(const Real& x) {
    if (x.sign() < 0) throw domain_error("sqrt of negative value");
    return unop(x, mpfr_sqrt);
}

Real log(const Real& x) {
    if (x.sign() <= 0) throw domain_error("log of non-positive value");
    return unop(x, mpfr_log);
}

Real log1p(const Real& x) {
    if (x <= -1) throw domain_error("log1p requires x > -1");
    return unop(x, mpfr_log1p);
}

Real exp(const Real& x) { return unop(x, mpfr_exp); }
Real sinh(const Real& x) { return unop(x, mpfr_sinh); }
Real cosh(const Real& x) { return unop(x, mpfr_cosh); }
Real abs(const Real& x) { return unop(x, mpfr_abs); }

Real pow_int(const Real& x, long e) {
    Real r(x.precision());
    mpfr_pow_si(r.raw(), x.raw(), e, MPFR_RNDN);
    return r;
}

Real rel_diff(const Real& a, const Real& b) {
    Real d = abs(a - b);
    Real m = max(abs(a), abs(b));
    if (m.is_zero()) return Real(0, std::max(a.precision(), b.precision()));
    return d / m;
}

bool close_rel(const Real& a, const Real& b, const Real& tol) {
    Real scale = max(max(abs(a), abs(b)), Real(1, tol.precision()));
    return abs(a - b) <= tol * scale;
}

} // namespace mkt
