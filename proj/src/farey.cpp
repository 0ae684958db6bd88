#include "markoff_teich/farey.hpp"

#include <deque>

namespace mkt::farey {

Rational::Rational(mpz_class p, mpz_class q) : p_(std::move(p)), q_(std::move(q)) {
    if (p_ == 0 && q_ == 0)
        throw domain_error("0/0 is not a rational");
    if (q_ < 0) {
        p_ = -p_;
        q_ = -q_;
    }
    if (q_ == 0) {
        p_ = 1;
        return;
    }
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), p_.get_mpz_t(), q_.get_mpz_t());
    if (g > 1) {
        p_ /= g;
        q_ /= g;
    }
}

mpz_class height(const mpz_class& p, const mpz_class& q) {
    if (p == 0 && q == 0)
        throw domain_error("height undefined at (0,0)");
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    if (g != 1)
        throw domain_error("height requires coprime coordinates: (" + p.get_str() + "," + q.get_str() + ")");
    mpz_class h = abs(p);
    mpz_class aq = abs(q);
    if (aq > h) h = aq;
    mpz_class d = abs(p - q);
    if (d > h) h = d;
    return h;
}

mpz_class height(const Rational& r) { return height(r.num(), r.den()); }

mpz_class adjacency_det(const Rational& a, const Rational& b) {
    return b.num() * a.den() - a.num() * b.den();
}

Rational mediant(const Rational& a, const Rational& b) {
    mpz_class det = adjacency_det(a, b);
    if (det != 1 && det != -1)
        throw domain_error("mediant of non-adjacent rationals " + a.str() + ", " + b.str());
    return Rational(a.num() + b.num(), a.den() + b.den());
}

namespace {
Rational opposite_of(const Rational& left, const Rational& right) {
    // The two common neighbors of an adjacent pair are its mediant and
    // its difference; normalization fixes the sign.
    return Rational(right.num() - left.num(), right.den() - left.den());
}
} // namespace

FareyContext context_of(const Rational& r) {
    if (r == Rational(0, 1) || r == Rational(1, 1) || r.is_infinity())
        throw domain_error("root node " + r.str() + " has no parents inside the sector");
    if (r.num() <= 0 || r.num() >= r.den())
        throw domain_error("context_of requires r in (0,1), got " + r.str());

    const mpz_class& p = r.num();
    const mpz_class& q = r.den();
    mpz_class qp; // q' = p^{-1} mod q, normalized to (0, q)
    if (mpz_invert(qp.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t()) == 0)
        throw domain_error("no inverse: input not reduced");
    mpz_class pp = (p * qp - 1) / q;
    mpz_class qpp = q - qp;
    mpz_class ppp = p - pp;
    Rational left(pp, qp), right(ppp, qpp);
    return FareyContext{r, left, right, opposite_of(left, right)};
}

Rational neighbor(const FareyContext& ctx, long n) {
    mpz_class xp = ctx.right.num() + n * ctx.target.num();
    mpz_class xq = ctx.right.den() + n * ctx.target.den();
    return Rational(abs(xp), abs(xq));
}

void enumerate_sector(long max_q,
                      const std::function<void(const Rational&, const FareyContext&)>& visit) {
    if (max_q < 2)
        throw domain_error("enumerate_sector requires max_q >= 2");
    struct Edge {
        Rational left, right, opposite; // opposite vertex of mediant(left,right)
    };
    std::deque<Edge> work;
    work.push_back({Rational(0, 1), Rational(1, 1), Rational::infinity()});
    while (!work.empty()) {
        Edge e = std::move(work.front());
        work.pop_front();
        mpz_class q = e.left.den() + e.right.den();
        if (q > max_q) continue; // q only grows below this edge
        Rational m = mediant(e.left, e.right);
        visit(m, FareyContext{m, e.left, e.right, e.opposite});
        work.push_back({e.left, m, e.right});
        work.push_back({m, e.right, e.left});
    }
}

std::vector<std::pair<Rational, FareyContext>> sector_list(long max_q) {
    std::vector<std::pair<Rational, FareyContext>> out;
    enumerate_sector(max_q, [&](const Rational& r, const FareyContext& ctx) {
        out.emplace_back(r, ctx);
    });
    return out;
}

} // namespace mkt::farey
