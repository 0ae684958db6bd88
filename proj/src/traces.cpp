#include "markoff_teich/traces.hpp"

#include <queue>
#include <set>

#include "markoff_teich/geometry.hpp"

namespace mkt::traces {

namespace {

void check_markoff_relation(const Real& a, const Real& b, const Real& c) {
    long prec = std::max({a.precision(), b.precision(), c.precision()});
    Real lhs = a * a + b * b + c * c;
    Real rhs = a * b * c;
    if (!close_rel(lhs, rhs, eps_triple(prec)))
        throw domain_error("Markoff relation violated: a^2+b^2+c^2 != abc (relative defect "
                           + rel_diff(lhs, rhs).to_decimal(3) + ")");
}

bool is_integer(const Real& x) {
    return mpfr_integer_p(x.raw()) != 0;
}

mpz_class to_integer(const Real& x) {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), x.raw(), MPFR_RNDN);
    return z;
}

} // namespace

BaseTriple BaseTriple::checked(Real a, Real b, Real c) {
    if (a <= 2 || b <= 2 || c <= 2)
        throw domain_error("base triple requires a, b, c > 2");
    check_markoff_relation(a, b, c);
    return BaseTriple{std::move(a), std::move(b), std::move(c)};
}

bool BaseTriple::is_integral() const {
    return is_integer(a) && is_integer(b) && is_integer(c);
}

mpz_class BaseTriple::integral_a() const { return to_integer(a); }
mpz_class BaseTriple::integral_b() const { return to_integer(b); }
mpz_class BaseTriple::integral_c() const { return to_integer(c); }

BaseTriple complete_triple(const Real& a, const Real& b, Branch branch) {
    if (a <= 2 || b <= 2)
        throw domain_error("complete_triple requires a, b > 2");
    Real disc = a * a * b * b - 4 * (a * a) - 4 * (b * b);
    if (disc.sign() < 0)
        throw domain_error("no hyperbolic torus: a^2 b^2 - 4a^2 - 4b^2 < 0");
    Real root = sqrt(disc);
    Real c = branch == Branch::plus ? (a * b + root) / 2 : (a * b - root) / 2;
    if (c <= 2)
        throw domain_error("degenerate triple: completed c <= 2");
    return BaseTriple::checked(a, b, std::move(c));
}

SectorSeeds<Real> seeds_for(const BaseTriple& base, SeedPair pair) {
    switch (pair) {
        case SeedPair::ab: return {base.a, base.b, base.c};
        case SeedPair::bc: return {base.b, base.c, base.a};
        default:           return {base.c, base.a, base.b};
    }
}

SectorSeeds<mpz_class> exact_seeds_for(const BaseTriple& base, SeedPair pair) {
    if (!base.is_integral())
        throw domain_error("exact seeds require an integer base triple");
    mpz_class a = base.integral_a(), b = base.integral_b(), c = base.integral_c();
    switch (pair) {
        case SeedPair::ab: return {a, b, c};
        case SeedPair::bc: return {b, c, a};
        default:           return {c, a, b};
    }
}

TraceTable::TraceTable(const BaseTriple& base, SeedPair pair, long max_q)
    : seeds_(seeds_for(base, pair)) {
    walk_sector_traces(seeds_, max_q,
        [&](const Rational& r, const FareyContext& ctx, const Real& t,
            const Real&, const Real&, const Real&) {
            Real l = geometry::length_of_trace(t);
            index_.emplace(r, nodes_.size());
            nodes_.push_back(TraceNode{r, t, std::move(l), r.den()});
            contexts_.push_back(ctx);
        });
}

const TraceNode& TraceTable::at(const Rational& r) const {
    auto it = index_.find(r);
    if (it == index_.end())
        throw domain_error("curve " + r.str() + " not enumerated (parents missing)");
    return nodes_[it->second];
}

const FareyContext& TraceTable::context_at(const Rational& r) const {
    auto it = index_.find(r);
    if (it == index_.end())
        throw domain_error("curve " + r.str() + " not enumerated (parents missing)");
    return contexts_[it->second];
}

const Real& TraceTable::trace_of(const Rational& r) const {
    if (r == Rational(0, 1)) return seeds_.t01;
    if (r == Rational(1, 1)) return seeds_.t11;
    if (r.is_infinity()) return seeds_.t10;
    return at(r).t;
}

TraceNode trace_at(const BaseTriple& base, SeedPair pair, const Rational& r) {
    if (r == Rational(0, 1) || r == Rational(1, 1) || r.is_infinity()) {
        SectorSeeds<Real> s = seeds_for(base, pair);
        const Real& t = r == Rational(0, 1) ? s.t01 : (r.is_infinity() ? s.t10 : s.t11);
        return TraceNode{r, t, geometry::length_of_trace(t), 1};
    }
    TraceTable table(base, pair, mpz_get_si(r.den().get_mpz_t()));
    return table.at(r);
}

namespace {

template <class S>
S commutator_trace(const Mat2<S>& x, const Mat2<S>& y) {
    return mat_mul(mat_mul(x, y), mat_mul(mat_inv(x), mat_inv(y))).trace();
}

template <class S>
TraceMatrix<S> entry_matrix(const S& u, const S& t) {
    return TraceMatrix<S>{u, S((u * u + 1) / t), t};
}

template <class S>
SeedMatrices<S> build_seed_matrices(const S& a, const S& b, const S& c) {
    return SeedMatrices<S>{entry_matrix(S(c / b), a),
                           entry_matrix(S(a - a), b), // u = 0, v = 1/b
                           entry_matrix(S(c - a / b), c)};
}

} // namespace

SeedMatrices<Real> seed_matrices(const BaseTriple& base, SeedPair pair) {
    SectorSeeds<Real> s = seeds_for(base, pair);
    SeedMatrices<Real> m = build_seed_matrices(s.t01, s.t11, s.t10);
    long prec = base.precision();
    Real tol = eps_triple(prec);
    Real minus2(-2, prec);
    const Mat2<Real> A = full_matrix(m.m01), B = full_matrix(m.m11);
    if (!close_rel(commutator_trace(A, B), minus2, tol))
        throw domain_error("inconsistent base: commutator trace of (M01, M11) is not -2");
    const Mat2<Real> C = full_matrix(m.m10);
    if (!close_rel(commutator_trace(B, C), minus2, tol) ||
        !close_rel(commutator_trace(A, C), minus2, tol))
        throw domain_error("inconsistent base: commutator trace is not -2");
    return m;
}

SeedMatrices<mpq_class> exact_seed_matrices(const BaseTriple& base, SeedPair pair) {
    SectorSeeds<mpz_class> s = exact_seeds_for(base, pair);
    mpq_class a(s.t01), b(s.t11), c(s.t10);
    SeedMatrices<mpq_class> m = build_seed_matrices(a, b, c);
    mpq_class t1 = commutator_trace(full_matrix(m.m01), full_matrix(m.m11));
    mpq_class t2 = commutator_trace(full_matrix(m.m11), full_matrix(m.m10));
    mpq_class t3 = commutator_trace(full_matrix(m.m01), full_matrix(m.m10));
    if (t1 != -2 || t2 != -2 || t3 != -2)
        throw domain_error("inconsistent base: exact commutator trace is not -2");
    return m;
}

namespace {
template <class S>
TraceMatrix<S> matrix_at_impl(const SeedMatrices<S>& seeds, const Rational& r) {
    if (r == Rational(0, 1)) return seeds.m01;
    if (r == Rational(1, 1)) return seeds.m11;
    if (r.is_infinity()) return seeds.m10;
    if (r.num() <= 0 || r.num() >= r.den())
        throw domain_error("matrix_at requires r in [0,1] or 1/0, got " + r.str());
    std::optional<TraceMatrix<S>> found;
    walk_sector_matrices(seeds, mpz_get_si(r.den().get_mpz_t()),
        [&](const Rational& rr, const FareyContext&, const TraceMatrix<S>& m) {
            if (rr == r) found = m;
        });
    if (!found)
        throw domain_error("matrix_at: " + r.str() + " not reached");
    return *found;
}
} // namespace

TraceMatrix<Real> matrix_at(const BaseTriple& base, SeedPair pair, const Rational& r) {
    return matrix_at_impl(seed_matrices(base, pair), r);
}

TraceMatrix<mpq_class> exact_matrix_at(const BaseTriple& base, SeedPair pair, const Rational& r) {
    return matrix_at_impl(exact_seed_matrices(base, pair), r);
}

std::vector<MarkoffTriple> enumerate_markoff(const mpz_class& max_z) {
    if (max_z < 1)
        throw domain_error("enumerate_markoff requires max_z >= 1");
    std::set<MarkoffTriple> seen;
    std::queue<MarkoffTriple> work;
    work.push(MarkoffTriple{1, 1, 1});
    while (!work.empty()) {
        MarkoffTriple t = std::move(work.front());
        work.pop();
        if (t.z > max_z) continue;
        if (!seen.insert(t).second) continue;
        // Vieta flips of the two smaller coordinates move down the tree.
        mpz_class z1 = 3 * t.x * t.z - t.y;
        work.push(MarkoffTriple{t.x, t.z, z1});
        mpz_class z2 = 3 * t.y * t.z - t.x;
        work.push(MarkoffTriple{t.y, t.z, z2});
    }
    return std::vector<MarkoffTriple>(seen.begin(), seen.end());
}

} // namespace mkt::traces
