#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "markoff_teich/geometry.hpp"
#include "markoff_teich/traces.hpp"
#include "test_common.hpp"

using namespace mkt;
using namespace mkt::traces;
using farey::Rational;
using mkt::testing::dec;
using mkt::testing::kPrec;

TEST_CASE("complete_triple branches") {
    BaseTriple plus = complete_triple(Real(3, kPrec), Real(3, kPrec), Branch::plus);
    CHECK(plus.c == Real(6, kPrec));
    BaseTriple minus = complete_triple(Real(3, kPrec), Real(3, kPrec), Branch::minus);
    CHECK(minus.c == Real(3, kPrec));

    // Reference triple: its published 12-digit values miss the Markoff
    // relation by ~1.2e-8, so completing from a and b reproduces the
    // 12-digit c = 7.73808785195 only to 9 significant digits.
    BaseTriple ref = mkt::testing::reference_triple();
    Real expected = dec("7.73808784943472362369749988599026346244385855");
    CHECK(abs(ref.c - expected) < dec("1e-40"));
    CHECK(abs(ref.c - dec("7.73808785195")) < dec("5e-9"));

    CHECK_THROWS_AS(complete_triple(dec("2.1"), dec("2.1"), Branch::plus), domain_error);
    CHECK_THROWS_AS(complete_triple(dec("2.0"), dec("5.0"), Branch::plus), domain_error);
    // Both roots exceed 2 whenever the discriminant is nonnegative, so the
    // minus branch is a valid triple as well.
    CHECK(complete_triple(dec("3"), dec("7.5"), Branch::minus).c > Real(2, kPrec));
}

TEST_CASE("base triple validation") {
    CHECK_NOTHROW(BaseTriple::checked(Real(3, kPrec), Real(3, kPrec), Real(6, kPrec)));
    CHECK_THROWS_AS(BaseTriple::checked(Real(3, kPrec), Real(3, kPrec), Real(5, kPrec)),
                    domain_error);
    CHECK_THROWS_AS(BaseTriple::checked(Real(2, kPrec), Real(3, kPrec), Real(3, kPrec)),
                    domain_error);
    // 12 digits are not enough to pass the eps_triple gate.
    CHECK_THROWS_AS(BaseTriple::checked(dec("2.59740058623"), dec("4.18711171215"),
                                        dec("7.73808785195")),
                    domain_error);
    CHECK(mkt::testing::modular_torus().is_integral());
    CHECK_FALSE(mkt::testing::reference_triple().is_integral());
}

TEST_CASE("trace recursion on the modular torus") {
    BaseTriple base = mkt::testing::modular_torus();
    CHECK(trace_at(base, SeedPair::ab, Rational(1, 2)).t == Real(6, kPrec));
    CHECK(trace_at(base, SeedPair::ab, Rational(1, 3)).t == Real(15, kPrec));
    CHECK(trace_at(base, SeedPair::ab, Rational(2, 5)).t == Real(87, kPrec));
    CHECK(trace_at(base, SeedPair::ab, Rational(0, 1)).t == Real(3, kPrec));
    CHECK(trace_at(base, SeedPair::ab, Rational(1, 2)).h == 2);

    // Exact integer engine agrees with the Real engine everywhere, q <= 40.
    auto seeds_z = exact_seeds_for(base, SeedPair::ab);
    std::map<Rational, mpz_class> exact;
    walk_sector_traces(seeds_z, 40,
        [&](const Rational& r, const farey::FareyContext&, const mpz_class& t,
            const mpz_class&, const mpz_class&, const mpz_class&) { exact.emplace(r, t); });
    TraceTable table(base, SeedPair::ab, 40);
    for (const TraceNode& n : table.nodes()) {
        CHECK(n.t == Real(exact.at(n.curve), kPrec));
    }
}

TEST_CASE("Markoff-Fricke relation and triangle inequality at every triangle") {
    auto triples = mkt::testing::random_triples(3);
    triples.push_back(mkt::testing::modular_torus());
    for (const BaseTriple& base : triples) {
        Real tol = eps_triple(kPrec);
        for (SeedPair pair : {SeedPair::ab, SeedPair::bc, SeedPair::ca}) {
            auto seeds = seeds_for(base, pair);
            walk_sector_traces(seeds, 30,
                [&](const Rational& r, const farey::FareyContext&, const Real& t,
                    const Real& tl, const Real& tr, const Real& topp) {
                    Real lhs = t * t + tl * tl + tr * tr;
                    CHECK(close_rel(lhs, t * tl * tr, tol));
                    // Triangle inequality l < l' + l'' in its exact trace
                    // form t_hat > t~ (Markoff roots interlace the Fricke
                    // roots); the length form drowns in rounding once
                    // l'+l''-l falls below one ulp of l.
                    Real t_hat = (tl * tr + sqrt((tl * tl - 4) * (tr * tr - 4))) / 2;
                    CHECK(t_hat > topp);
                    // t_hat - t = 4/(t_hat - t~) shrinks like 1/t_hat, so the
                    // direct comparison is only resolvable at moderate depth.
                    if (r.den() <= 20) CHECK(t_hat > t);
                    if (r.den() <= 6) {
                        Real l = geometry::length_of_trace(t);
                        Real lp = geometry::length_of_trace(tl);
                        Real lpp = geometry::length_of_trace(tr);
                        CHECK(l < lp + lpp);
                    }
                });
        }
    }
}

TEST_CASE("seed matrices") {
    BaseTriple base = mkt::testing::modular_torus();
    SeedMatrices<Real> m = seed_matrices(base, SeedPair::ab);
    CHECK(m.m01.u == Real(1, kPrec));
    CHECK(m.m01.t == Real(3, kPrec));
    CHECK(close_rel(m.m01.v, Real(2, kPrec) / 3, eps_triple(kPrec)));
    CHECK(m.m11.u == Real(0, kPrec));
    CHECK(close_rel(m.m11.v, Real(1, kPrec) / 3, eps_triple(kPrec)));
    CHECK(m.m10.u == Real(2, kPrec));
    CHECK(m.m10.t == Real(3, kPrec));

    // M_{1/0} = M_{0/1} M_{1/1}^{-1} entrywise.
    Mat2<Real> prod = mat_mul(full_matrix(m.m01), mat_inv(full_matrix(m.m11)));
    Mat2<Real> direct = full_matrix(m.m10);
    Real tol = eps_triple(kPrec);
    CHECK(close_rel(prod.a, direct.a, tol));
    CHECK(close_rel(prod.b, direct.b, tol));
    CHECK(close_rel(prod.c, direct.c, tol));
    CHECK(close_rel(prod.d, direct.d, tol));

    for (const BaseTriple& b : mkt::testing::random_triples(3)) {
        SeedMatrices<Real> sm = seed_matrices(b, SeedPair::bc);
        CHECK(close_rel(sm.m11.v, Real(1, kPrec) / b.c, tol)); // sector (b,c): t11 = c
    }
}

TEST_CASE("matrix recursion matches examples and the exact trace engine") {
    BaseTriple base = mkt::testing::modular_torus();
    TraceMatrix<Real> m12 = matrix_at(base, SeedPair::ab, Rational(1, 2));
    CHECK(close_rel(m12.u, Real(1, kPrec), eps_oracle(kPrec)));
    CHECK(close_rel(m12.t, Real(6, kPrec), eps_oracle(kPrec)));
    TraceMatrix<Real> m13 = matrix_at(base, SeedPair::ab, Rational(1, 3));
    CHECK(close_rel(m13.t, Real(15, kPrec), eps_oracle(kPrec)));
    TraceMatrix<Real> m01 = matrix_at(base, SeedPair::ab, Rational(0, 1));
    CHECK(m01.u == Real(1, kPrec));

    // Exact oracle: entry recursion in rationals equals integer traces, q <= 50.
    auto seeds_q = exact_seed_matrices(base, SeedPair::ab);
    auto seeds_z = exact_seeds_for(base, SeedPair::ab);
    std::map<Rational, mpz_class> exact;
    walk_sector_traces(seeds_z, 50,
        [&](const Rational& r, const farey::FareyContext&, const mpz_class& t,
            const mpz_class&, const mpz_class&, const mpz_class&) { exact.emplace(r, t); });
    size_t checked = 0;
    walk_sector_matrices(seeds_q, 50,
        [&](const Rational& r, const farey::FareyContext&, const TraceMatrix<mpq_class>& m) {
            CHECK(m.t == mpq_class(exact.at(r)));          // trace equality, exact
            CHECK(m.t * m.v - m.u * m.u == 1);             // det = 1, exact
            checked += 1;
        });
    CHECK(checked == exact.size());
}

TEST_CASE("entry recurrences vs full 2x2 multiplication (second oracle)") {
    for (const BaseTriple& base : mkt::testing::random_triples(2)) {
        auto seeds = seed_matrices(base, SeedPair::ab);
        Real tol = eps_oracle(kPrec);
        walk_sector_matrices(seeds, 12,
            [&](const Rational&, const farey::FareyContext& ctx, const TraceMatrix<Real>& m) {
                TraceMatrix<Real> ml = matrix_at(base, SeedPair::ab, ctx.left);
                TraceMatrix<Real> mr = matrix_at(base, SeedPair::ab, ctx.right);
                Mat2<Real> full = mat_mul(full_matrix(ml), full_matrix(mr));
                CHECK(close_rel(full.c, m.t, tol));        // lower-left = trace
                CHECK(close_rel(full.a, m.u, tol));
                CHECK(close_rel(full.trace(), m.t, tol));  // trace equals lower-left
                CHECK(close_rel(full.det(), Real(1, kPrec), tol));
            });
    }
}

TEST_CASE("real-base matrix oracle agrees with trace recursion") {
    for (const BaseTriple& base : mkt::testing::random_triples(3)) {
        TraceTable table(base, SeedPair::ab, 25);
        auto seeds = seed_matrices(base, SeedPair::ab);
        Real tol = eps_oracle(kPrec);
        walk_sector_matrices(seeds, 25,
            [&](const Rational& r, const farey::FareyContext&, const TraceMatrix<Real>& m) {
                CHECK(close_rel(m.t, table.at(r).t, tol));
            });
    }
}

TEST_CASE("modular torus traces are 3x Markoff numbers") {
    BaseTriple base = mkt::testing::modular_torus();
    auto markoff = enumerate_markoff(mpz_class(300000));
    std::set<mpz_class> maxima;
    for (const auto& t : markoff) maxima.insert(t.z);
    maxima.insert(1);
    maxima.insert(2);

    auto seeds = exact_seeds_for(base, SeedPair::ab);
    walk_sector_traces(seeds, 12,
        [&](const Rational&, const farey::FareyContext&, const mpz_class& t,
            const mpz_class&, const mpz_class&, const mpz_class&) {
            CHECK(t % 3 == 0);
            mpz_class m = t / 3;
            if (m <= 300000) CHECK(maxima.count(m) == 1);
        });
}

TEST_CASE("markoff enumeration") {
    auto two = enumerate_markoff(2);
    REQUIRE(two.size() == 2);
    CHECK(two[0] == MarkoffTriple{1, 1, 1});
    CHECK(two[1] == MarkoffTriple{1, 1, 2});

    auto five = enumerate_markoff(5);
    CHECK(std::find(five.begin(), five.end(), MarkoffTriple{1, 2, 5}) != five.end());

    auto to35 = enumerate_markoff(35);
    CHECK(std::find(to35.begin(), to35.end(), MarkoffTriple{2, 5, 29}) != to35.end());
    CHECK(std::find(to35.begin(), to35.end(), MarkoffTriple{1, 13, 34}) != to35.end());

    auto list = enumerate_markoff(250);
    std::vector<long> maxima;
    for (const auto& t : list) maxima.push_back(mpz_get_si(t.z.get_mpz_t()));
    CHECK(maxima == std::vector<long>{1, 2, 5, 13, 29, 34, 89, 169, 194, 233});

    for (const auto& t : enumerate_markoff(100000))
        CHECK(t.x * t.x + t.y * t.y + t.z * t.z == 3 * t.x * t.y * t.z);

    CHECK_THROWS_AS(enumerate_markoff(0), domain_error);
}

TEST_CASE("missing parents raise enumeration-order errors") {
    BaseTriple base = mkt::testing::modular_torus();
    TraceTable table(base, SeedPair::ab, 5);
    CHECK_THROWS_AS(table.at(Rational(1, 7)), domain_error);
    CHECK_NOTHROW(table.at(Rational(2, 5)));
}
