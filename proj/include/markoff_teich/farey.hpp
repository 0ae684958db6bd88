#pragma once

#include <gmpxx.h>

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "markoff_teich/errors.hpp"

namespace mkt::farey {

/// Reduced fraction p/q with q >= 0. The point at infinity is the
/// distinguished value 1/0; everything else has q > 0. Values are
/// normalized (gcd-reduced, sign carried so q >= 0) at construction.
class Rational {
public:
    Rational(mpz_class p, mpz_class q);
    Rational(long p, long q) : Rational(mpz_class(p), mpz_class(q)) {}

    static Rational infinity() { return Rational(1, 0); }

    const mpz_class& num() const { return p_; }
    const mpz_class& den() const { return q_; }
    bool is_infinity() const { return q_ == 0; }

    std::string str() const { return p_.get_str() + "/" + q_.get_str(); }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.p_ == b.p_ && a.q_ == b.q_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    // 1/0 compares greater than every finite value.
    friend bool operator<(const Rational& a, const Rational& b) {
        if (a.is_infinity()) return false;
        if (b.is_infinity()) return true;
        return a.p_ * b.q_ < b.p_ * a.q_;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

private:
    mpz_class p_, q_;
};

/// max{|p|, |q|, |p-q|} on P^1(Q). Throws on non-coprime input.
mpz_class height(const mpz_class& p, const mpz_class& q);
mpz_class height(const Rational& r);

/// p_b*q_a - p_a*q_b; +-1 exactly when a, b are Farey neighbors.
mpz_class adjacency_det(const Rational& a, const Rational& b);

/// Farey sum of two adjacent rationals. Throws unless |det| = 1.
Rational mediant(const Rational& a, const Rational& b);

/// A rational with its Farey parents (left < target < right) and the
/// opposite vertex of the triangle across the parents' edge.
struct FareyContext {
    Rational target, left, right, opposite;
};

/// Parents and opposite vertex of an interior tree node, via the
/// extended-gcd construction: q' is the inverse of p mod q in (0, q).
/// Only defined for r in (0,1) with q >= 2; the roots 0/1, 1/1, 1/0
/// have no parents inside the sector.
FareyContext context_of(const Rational& r);

/// n-th rational adjacent to ctx.target: |p'' + n p| / |q'' + n q|.
/// x_0 = right parent, x_{-1} = left parent.
Rational neighbor(const FareyContext& ctx, long n);

/// Visit every reduced p/q in (0,1) with q <= max_q exactly once, in
/// breadth-first mediant order (parents always precede children).
void enumerate_sector(long max_q,
                      const std::function<void(const Rational&, const FareyContext&)>& visit);

std::vector<std::pair<Rational, FareyContext>> sector_list(long max_q);

} // namespace mkt::farey
