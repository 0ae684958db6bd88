#pragma once

#include <gmpxx.h>

#include <deque>
#include <map>
#include <optional>
#include <vector>

#include "markoff_teich/errors.hpp"
#include "markoff_teich/farey.hpp"
#include "markoff_teich/real.hpp"
#include "markoff_teich/tolerances.hpp"

namespace mkt::traces {

using farey::FareyContext;
using farey::Rational;

enum class Branch { plus, minus };

/// Which pair of the base triple seeds a sector: the seeds at
/// (0/1, 1/1, 1/0) are (a,b,c), (b,c,a), (c,a,b) respectively.
enum class SeedPair { ab, bc, ca };

inline const char* seed_pair_name(SeedPair p) {
    switch (p) {
        case SeedPair::ab: return "ab";
        case SeedPair::bc: return "bc";
        default: return "ca";
    }
}

/// Traces a, b, c > 2 of three simple closed curves through one point,
/// satisfying a^2 + b^2 + c^2 = abc.
struct BaseTriple {
    Real a, b, c;

    long precision() const { return std::max({a.precision(), b.precision(), c.precision()}); }

    /// Validates positivity and the Markoff-Fricke relation within
    /// eps_triple at the values' precision.
    static BaseTriple checked(Real a, Real b, Real c);

    /// True when all three traces are integers (exact engines apply).
    bool is_integral() const;
    mpz_class integral_a() const;
    mpz_class integral_b() const;
    mpz_class integral_c() const;
};

/// Solve a^2 + b^2 + c^2 = abc for c given a, b > 2:
/// c = (ab +- sqrt(a^2 b^2 - 4a^2 - 4b^2)) / 2.
BaseTriple complete_triple(const Real& a, const Real& b, Branch branch);

/// Seed traces (t_{0/1}, t_{1/1}, t_{1/0}) for one sector.
template <class S>
struct SectorSeeds {
    S t01, t11, t10;
};

SectorSeeds<Real> seeds_for(const BaseTriple& base, SeedPair pair);
SectorSeeds<mpz_class> exact_seeds_for(const BaseTriple& base, SeedPair pair);

/// Breadth-first Vieta walk over one sector: every interior p/q with
/// q <= max_q is visited exactly once, parents before children, with its
/// trace t = t' t'' - t~. The visitor receives
///   (r, ctx, t, t_left, t_right, t_opposite).
/// Works for any scalar with *, - (Real, mpz_class, mpq_class).
template <class S, class Visit>
void walk_sector_traces(const SectorSeeds<S>& seeds, long max_q, Visit&& visit) {
    if (max_q < 2) throw domain_error("walk_sector_traces requires max_q >= 2");
    struct Edge {
        Rational left, right, opposite;
        S tl, tr, topp;
    };
    std::deque<Edge> work;
    work.push_back({Rational(0, 1), Rational(1, 1), Rational::infinity(),
                    seeds.t01, seeds.t11, seeds.t10});
    while (!work.empty()) {
        Edge e = std::move(work.front());
        work.pop_front();
        mpz_class q = e.left.den() + e.right.den();
        if (q > max_q) continue;
        Rational m = farey::mediant(e.left, e.right);
        S t = e.tl * e.tr - e.topp;
        visit(m, FareyContext{m, e.left, e.right, e.opposite}, t, e.tl, e.tr, e.topp);
        work.push_back({e.left, m, e.right, e.tl, t, e.tr});
        work.push_back({m, e.right, e.left, t, e.tr, e.tl});
    }
}

/// Curve with its trace, length and height for a fixed base triple.
/// Heights of interior sector curves equal the sector denominator; the
/// three seeds have height 1.
struct TraceNode {
    Rational curve;
    Real t, l;
    mpz_class h;
};

/// Memoized sector table: one BFS pass computes every trace once.
class TraceTable {
public:
    TraceTable(const BaseTriple& base, SeedPair pair, long max_q);

    const std::vector<TraceNode>& nodes() const { return nodes_; }   // BFS order, interior
    const TraceNode& at(const Rational& r) const;                    // interior lookup
    const FareyContext& context_at(const Rational& r) const;
    /// Trace of any enumerated curve or seed (0/1, 1/1, 1/0).
    const Real& trace_of(const Rational& r) const;

private:
    SectorSeeds<Real> seeds_;
    std::vector<TraceNode> nodes_;
    std::vector<FareyContext> contexts_;
    std::map<Rational, size_t> index_;
};

/// Single-curve convenience used by tests: builds the table up to r's
/// denominator and returns the node.
TraceNode trace_at(const BaseTriple& base, SeedPair pair, const Rational& r);

/// 2x2 unimodular matrix in (u, v, t) entry form: rows (u, u-v), (t, t-u).
/// The lower-left entry equals the trace; det = tv - u^2 = 1.
template <class S>
struct TraceMatrix {
    S u, v, t;
};

/// Entry recurrences for M = M' M'' (three multiplies per entry, no full
/// matrix product): u = u'u'' + u't'' - v't'', t = t'u'' + t't'' - u't''.
template <class S>
TraceMatrix<S> matrix_product(const TraceMatrix<S>& L, const TraceMatrix<S>& R) {
    S u = L.u * R.u + L.u * R.t - L.v * R.t;
    S t = L.t * R.u + L.t * R.t - L.u * R.t;
    S v = (u * u + 1) / t;
    return TraceMatrix<S>{std::move(u), std::move(v), std::move(t)};
}

/// Plain 2x2 matrix; the full-multiplication route kept as a second oracle.
template <class S>
struct Mat2 {
    S a, b, c, d;
    S trace() const { return a + d; }
    S det() const { return a * d - b * c; }
};

template <class S>
Mat2<S> full_matrix(const TraceMatrix<S>& m) {
    return Mat2<S>{m.u, m.u - m.v, m.t, m.t - m.u};
}

template <class S>
Mat2<S> mat_mul(const Mat2<S>& x, const Mat2<S>& y) {
    return Mat2<S>{x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                   x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

/// Inverse of a det-1 matrix.
template <class S>
Mat2<S> mat_inv(const Mat2<S>& x) {
    return Mat2<S>{x.d, S(-x.b), S(-x.c), x.a};
}

template <class S>
struct SeedMatrices {
    TraceMatrix<S> m01, m11, m10;
};

/// Explicit generator matrices for one sector:
///   M_{0/1}: u = c/b, t = a;  M_{1/1}: u = 0, t = b;
///   M_{1/0} = M_{0/1} M_{1/1}^{-1}: u = c - a/b, t = c.
/// Verifies the pairwise commutator traces are -2 within eps_triple.
SeedMatrices<Real> seed_matrices(const BaseTriple& base, SeedPair pair);
SeedMatrices<mpq_class> exact_seed_matrices(const BaseTriple& base, SeedPair pair);

/// Breadth-first matrix walk: visits (r, ctx, M) for interior p/q <= max_q.
template <class S, class Visit>
void walk_sector_matrices(const SeedMatrices<S>& seeds, long max_q, Visit&& visit) {
    if (max_q < 2) throw domain_error("walk_sector_matrices requires max_q >= 2");
    struct Edge {
        Rational left, right, opposite;
        TraceMatrix<S> ml, mr;
    };
    std::deque<Edge> work;
    work.push_back({Rational(0, 1), Rational(1, 1), Rational::infinity(),
                    seeds.m01, seeds.m11});
    while (!work.empty()) {
        Edge e = std::move(work.front());
        work.pop_front();
        mpz_class q = e.left.den() + e.right.den();
        if (q > max_q) continue;
        Rational m = farey::mediant(e.left, e.right);
        TraceMatrix<S> mat = matrix_product(e.ml, e.mr);
        visit(m, FareyContext{m, e.left, e.right, e.opposite}, mat);
        work.push_back({e.left, m, e.right, e.ml, mat});
        work.push_back({m, e.right, e.left, mat, e.mr});
    }
}

/// Matrix at a single rational via the entry recurrences (0/1 and 1/1
/// return the seeds themselves).
TraceMatrix<Real> matrix_at(const BaseTriple& base, SeedPair pair, const Rational& r);
TraceMatrix<mpq_class> exact_matrix_at(const BaseTriple& base, SeedPair pair, const Rational& r);

/// Positive integer solution of x^2 + y^2 + z^2 = 3xyz, sorted x <= y <= z.
struct MarkoffTriple {
    mpz_class x, y, z;
    friend bool operator==(const MarkoffTriple&, const MarkoffTriple&) = default;
    friend bool operator<(const MarkoffTriple& a, const MarkoffTriple& b) {
        if (a.z != b.z) return a.z < b.z;
        if (a.y != b.y) return a.y < b.y;
        return a.x < b.x;
    }
};

/// All Markoff triples with z <= max_z, by topograph walk from (1,1,1)
/// with the Vieta move, deduplicated as sorted triples. Exact arithmetic.
std::vector<MarkoffTriple> enumerate_markoff(const mpz_class& max_z);

} // namespace mkt::traces
