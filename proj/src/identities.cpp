#include "markoff_teich/identities.hpp"

#include <algorithm>
#include <set>

#include "markoff_teich/tolerances.hpp"

namespace mkt::identities {

namespace {

constexpr SeedPair kPairs[3] = {SeedPair::ab, SeedPair::bc, SeedPair::ca};

/// log(t^2/(t^2-4)) = -log1p(-4/t^2), exact to full relative precision
/// even when 4/t^2 is far below one ulp of 1.
Real product_log_factor(const Real& t) {
    return -log1p(-(4 / (t * t)));
}

/// (1 - sqrt(1-4/t^2))/2 = 2/(t^2 (1 + sqrt(1-4/t^2))), cancellation-free.
Real mcshane_term(const Real& t) {
    Real x = 4 / (t * t);
    return (x / (1 + sqrt(1 - x))) / 2;
}

Real unit_factor(const Real& t) { // (t + sqrt(t^2-4))/2 = e^{l/2}
    return (t + sqrt(t * t - 4)) / 2;
}

struct CurveTerm {
    int sector; // -1 for the three base curves
    mpz_class p, q;
    mpz_class h;
    Real trace;
};

GlobalClass class_of_term(const CurveTerm& c) {
    if (c.sector >= 0) return global_class(kPairs[c.sector], Rational(c.p, c.q));
    if (c.q == 0) return seed_class(2);        // c at 1/0
    return seed_class(c.p == 0 ? 0 : 1);       // a at 0/1, b at 1/1
}

bool term_order(const CurveTerm& x, const CurveTerm& y) {
    if (x.h != y.h) return x.h < y.h;
    if (x.sector != y.sector) return x.sector < y.sector;
    return x.p * y.q < y.p * x.q;
}

/// Every simple closed curve with h <= max_h: the three seeds once, then
/// each sector's interior rationals with q = h <= max_h. For integer bases
/// the traces come from the exact integer recursion.
std::vector<CurveTerm> collect_curves(const BaseTriple& base, long max_h) {
    if (max_h < 1) throw domain_error("max_height must be >= 1");
    long prec = base.precision();
    std::vector<CurveTerm> out;
    out.push_back({-1, 0, 1, 1, base.a});
    out.push_back({-1, 1, 1, 1, base.b});
    out.push_back({-1, 1, 0, 1, base.c});
    if (max_h >= 2) {
        for (int s = 0; s < 3; ++s) {
            if (base.is_integral()) {
                auto seeds = traces::exact_seeds_for(base, kPairs[s]);
                traces::walk_sector_traces(seeds, max_h,
                    [&](const Rational& r, const farey::FareyContext&, const mpz_class& t,
                        const mpz_class&, const mpz_class&, const mpz_class&) {
                        out.push_back({s, r.num(), r.den(), r.den(), Real(t, prec)});
                    });
            } else {
                auto seeds = traces::seeds_for(base, kPairs[s]);
                traces::walk_sector_traces(seeds, max_h,
                    [&](const Rational& r, const farey::FareyContext&, const Real& t,
                        const Real&, const Real&, const Real&) {
                        out.push_back({s, r.num(), r.den(), r.den(), t});
                    });
            }
        }
    }
    std::sort(out.begin(), out.end(), term_order);

    // Duplicate global classes across sectors would double-count a curve.
    std::set<GlobalClass> classes;
    for (const CurveTerm& c : out) {
        if (!classes.insert(class_of_term(c)).second)
            throw consistency_error("assembly error: duplicate curve class across sectors");
    }
    return out;
}

IdentityReport assemble(const BaseTriple& base, long max_h, bool emit_terms,
                        IdentityKind kind) {
    long prec = base.precision();
    std::vector<CurveTerm> curves = collect_curves(base, max_h);

    IdentityReport rep(prec);
    rep.kind = kind;
    rep.base_a = base.a.to_decimal();
    rep.base_b = base.b.to_decimal();
    rep.base_c = base.c.to_decimal();
    rep.max_height = max_h;
    rep.terms_used = static_cast<long>(curves.size());

    Accumulator acc(prec);
    rep.partial_by_height.reserve(max_h);
    mpz_class level = 1;
    bool monotone = true;
    Real prev_partial(0, prec);
    bool have_prev = false;
    Real frontier_min(0, prec);
    long frontier_count = 0;

    auto close_level = [&](const mpz_class& upto) {
        while (level <= upto) {
            Real partial = kind == IdentityKind::product ? exp(acc.value()) : acc.value();
            if (have_prev && partial <= prev_partial) monotone = false;
            prev_partial = partial;
            have_prev = true;
            rep.partial_by_height.push_back(partial);
            level += 1;
        }
    };

    for (const CurveTerm& c : curves) {
        close_level(c.h - 1);
        Real contribution = kind == IdentityKind::product
            ? Real(c.h, prec) * product_log_factor(c.trace)
            : mcshane_term(c.trace);
        acc.add(contribution);
        if (c.h == max_h) {
            if (frontier_count == 0 || c.trace < frontier_min) frontier_min = c.trace;
            frontier_count += 1;
        }
        if (emit_terms)
            rep.terms.push_back(TermRecord{c.p, c.q, c.sector, c.h, c.trace, contribution});
    }
    close_level(max_h);

    rep.partial = rep.partial_by_height.back();
    rep.target = kind == IdentityKind::product
        ? unit_factor(base.a) * unit_factor(base.b) * unit_factor(base.c)
        : Real(1, prec) / 2;
    rep.residual = abs(rep.partial - rep.target) / abs(rep.target);
    rep.monotone = monotone;
    rep.frontier_min_trace = frontier_count > 0 ? frontier_min : Real(0, prec);
    rep.frontier_curves = frontier_count;
    return rep;
}

} // namespace

GlobalClass global_class(SeedPair pair, const Rational& r) {
    const mpz_class& p = r.num();
    const mpz_class& q = r.den();
    switch (pair) {
        case SeedPair::ab: return GlobalClass{p, q};
        case SeedPair::bc: return GlobalClass{q, q - p};
        default:           return GlobalClass{p - q, p};
    }
}

GlobalClass seed_class(int seed_index) {
    switch (seed_index) {
        case 0: return GlobalClass{0, 1};
        case 1: return GlobalClass{1, 1};
        case 2: return GlobalClass{1, 0};
        default: throw domain_error("seed index must be 0, 1 or 2");
    }
}

SectorProduct sector_product(const BaseTriple& base, SeedPair pair, long max_q) {
    if (max_q < 2) throw domain_error("sector_product requires max_q >= 2");
    long prec = base.precision();
    Accumulator acc(prec);
    long terms = 0;
    auto seeds = traces::seeds_for(base, pair);
    traces::walk_sector_traces(seeds, max_q,
        [&](const Rational& r, const farey::FareyContext&, const Real& t,
            const Real&, const Real&, const Real&) {
            acc.add(Real(mpz_class(r.den()), prec) * product_log_factor(t));
            terms += 1;
        });
    Real rho0 = geometry::sector_rho_at_zero(seeds);
    Real lam1 = geometry::sector_lambda_at_one(seeds);
    return SectorProduct{exp(acc.value()), exp((lam1 - rho0) / 2), terms};
}

Real sector_closed_form(const BaseTriple& base, SeedPair pair) {
    auto s = traces::seeds_for(base, pair);
    const Real &a = s.t01, &b = s.t11, &c = s.t10;
    Real sa = sqrt(a * a - 4), sb = sqrt(b * b - 4);
    return sa * sb / ((a - c * (b - sb) / 2) * (b - c * (a - sa) / 2));
}

IdentityReport full_product(const BaseTriple& base, long max_height, bool emit_terms) {
    return assemble(base, max_height, emit_terms, IdentityKind::product);
}

McShaneSector mcshane_sector_sum(const BaseTriple& base, SeedPair pair, long max_q) {
    if (max_q < 2) throw domain_error("mcshane_sector_sum requires max_q >= 2");
    long prec = base.precision();
    Accumulator acc(prec);
    long terms = 0;
    auto seeds = traces::seeds_for(base, pair);
    traces::walk_sector_traces(seeds, max_q,
        [&](const Rational&, const farey::FareyContext&, const Real& t,
            const Real&, const Real&, const Real&) {
            acc.add(-2 * mcshane_term(t)); // -1 + sqrt(1-4/t^2)
            terms += 1;
        });
    Real boundary = seeds.t10 / (seeds.t01 * seeds.t11)
        - mcshane_term(seeds.t01) - mcshane_term(seeds.t11);
    return McShaneSector{acc.value(), std::move(boundary), terms};
}

IdentityReport full_mcshane(const BaseTriple& base, long max_height, bool emit_terms) {
    return assemble(base, max_height, emit_terms, IdentityKind::mcshane);
}

Real tail_bound(const IdentityReport& report) {
    long prec = report.precision_bits;
    if (report.frontier_curves == 0 || report.frontier_min_trace <= 2)
        return Real(0, prec);
    // Per-level growth of the slowest frontier trace, estimated from the
    // frontier itself: T^(1/h) ~ exp(F_min/2). The shortest base curve
    // would overestimate the growth on skew tori whose minimizing slope
    // lies in the interior of a sector.
    Real growth = exp(log(report.frontier_min_trace) / report.max_height);
    Real t = report.frontier_min_trace * growth;
    Real k(report.frontier_curves, prec);
    Real cutoff = Real::pow2(-(prec + 32), prec);
    Accumulator acc(prec);
    for (long j = 1; j <= 128; ++j) {
        Real mult = k * (1 + j); // multiplicity grows along the frontier
        Real term = report.kind == IdentityKind::product
            ? mult * Real(report.max_height + j, prec) * product_log_factor(t)
            : mult * mcshane_term(t);
        acc.add(term);
        if (term < cutoff) break;
        t *= growth;
    }
    return 2 * acc.value();
}

TelescopeCheck telescoping_check(const BaseTriple& base, SeedPair pair, long max_q) {
    if (max_q < 2) throw domain_error("telescoping_check requires max_q >= 2");
    long prec = base.precision();
    traces::TraceTable table(base, pair, max_q);
    auto seeds = traces::seeds_for(base, pair);

    // Farey level: 0/1, interior rationals sorted by value, 1/1.
    struct Entry {
        Rational r;
        Real l;
    };
    std::vector<Entry> seq;
    seq.push_back({Rational(0, 1), geometry::length_of_trace(seeds.t01)});
    {
        std::vector<const traces::TraceNode*> interior;
        interior.reserve(table.nodes().size());
        for (const auto& n : table.nodes()) interior.push_back(&n);
        std::sort(interior.begin(), interior.end(),
                  [](const traces::TraceNode* x, const traces::TraceNode* y) {
                      return x->curve < y->curve;
                  });
        for (const auto* n : interior) seq.push_back({n->curve, n->l});
    }
    seq.push_back({Rational(1, 1), geometry::length_of_trace(seeds.t11)});

    // Chord slope between consecutive (hence adjacent) Farey-level entries:
    // (F(r2) - F(r1)) / (r2 - r1) = q1 l2 - q2 l1.
    auto chord = [&](const Entry& x, const Entry& y) {
        return Real(mpz_class(x.r.den()), prec) * y.l - Real(mpz_class(y.r.den()), prec) * x.l;
    };

    Real direct = chord(seq[seq.size() - 2], seq.back()) - chord(seq[0], seq[1]);

    Accumulator brackets(prec);
    Accumulator jumps(prec);
    for (size_t k = 1; k + 1 < seq.size(); ++k) {
        const Rational& r = seq[k].r;
        const traces::TraceNode& node = table.at(r);
        const farey::FareyContext& ctx = table.context_at(r);
        const Real& tl = table.trace_of(ctx.left);
        const Real& tr = table.trace_of(ctx.right);
        long q = mpz_get_si(r.den().get_mpz_t());
        long qpp = mpz_get_si(ctx.right.den().get_mpz_t());

        // Farey-level neighbors of r are members of its own neighbor
        // sequence x_n; recover the indices from the denominators.
        long n_plus = static_cast<long>(mpz_get_si(mpz_class(seq[k + 1].r.den() - qpp).get_mpz_t())) / q;
        long n_minus = -static_cast<long>(mpz_get_si(mpz_class(seq[k - 1].r.den() + qpp).get_mpz_t())) / q;
        if (farey::neighbor(ctx, n_plus) != seq[k + 1].r ||
            farey::neighbor(ctx, n_minus) != seq[k - 1].r)
            throw consistency_error("telescoping: neighbor index reconstruction failed");

        Real t_plus = geometry::neighbor_traces(node.t, tl, tr, n_plus);
        Real t_minus = geometry::neighbor_traces(node.t, tl, tr, n_minus);
        Real s_plus = Real(q, prec) * geometry::length_of_trace(t_plus)
            - node.l * (qpp + n_plus * q);
        Real s_minus = node.l * (-(qpp + n_minus * q))
            - Real(q, prec) * geometry::length_of_trace(t_minus);
        brackets.add(s_plus - s_minus);
        jumps.add(2 * q * product_log_factor(node.t)); // rho - lambda
    }

    Real rho0 = geometry::sector_rho_at_zero(seeds);
    Real lam1 = geometry::sector_lambda_at_one(seeds);
    return TelescopeCheck{brackets.value(), std::move(direct),
                          lam1 - rho0 - jumps.value()};
}

std::vector<FRow> emit_F(const BaseTriple& base, SeedPair pair, long max_q) {
    traces::TraceTable table(base, pair, max_q);
    auto seeds = traces::seeds_for(base, pair);

    std::vector<FRow> rows;
    {
        Real l = geometry::length_of_trace(seeds.t01);
        rows.push_back(FRow{Rational(0, 1), 1, seeds.t01, l, l,
                            std::nullopt, geometry::sector_rho_at_zero(seeds)});
    }
    std::vector<const traces::TraceNode*> interior;
    for (const auto& n : table.nodes()) interior.push_back(&n);
    std::sort(interior.begin(), interior.end(),
              [](const traces::TraceNode* x, const traces::TraceNode* y) {
                  return x->curve < y->curve;
              });
    for (const auto* n : interior) {
        const farey::FareyContext& ctx = table.context_at(n->curve);
        geometry::DerivativePair d = geometry::one_sided_derivatives(
            *n, ctx, table.trace_of(ctx.left), table.trace_of(ctx.right));
        rows.push_back(FRow{n->curve, n->h, n->t, n->l, geometry::F_value(*n),
                            std::move(d.lambda), std::move(d.rho)});
    }
    {
        Real l = geometry::length_of_trace(seeds.t11);
        rows.push_back(FRow{Rational(1, 1), 1, seeds.t11, l, l,
                            geometry::sector_lambda_at_one(seeds), std::nullopt});
    }
    return rows;
}

std::vector<SmallFRow> emit_f(const BaseTriple& base, SeedPair pair, long max_q) {
    auto seeds = traces::seed_matrices(base, pair);
    struct Item {
        Rational r;
        traces::TraceMatrix<Real> m;
    };
    std::vector<Item> items;
    items.push_back({Rational(0, 1), seeds.m01});
    traces::walk_sector_matrices(seeds, max_q,
        [&](const Rational& r, const farey::FareyContext&, const traces::TraceMatrix<Real>& m) {
            items.push_back({r, m});
        });
    items.push_back({Rational(1, 1), seeds.m11});
    std::sort(items.begin(), items.end(),
              [](const Item& x, const Item& y) { return x.r < y.r; });

    std::vector<SmallFRow> rows;
    rows.reserve(items.size());
    for (const Item& it : items) {
        mpz_class h = it.r.den() >= 2 ? it.r.den() : mpz_class(1);
        rows.push_back(SmallFRow{it.r, h, it.m.t,
                                 geometry::f_value(it.m), geometry::f_jump(it.m.t)});
    }
    return rows;
}

std::vector<UnitBallRow> emit_unit_ball(const BaseTriple& base, long max_height, bool reflect) {
    if (max_height < 1) throw domain_error("max_height must be >= 1");
    long prec = base.precision();
    std::vector<CurveTerm> curves = collect_curves(base, max_height);
    std::vector<UnitBallRow> rows;
    rows.reserve(curves.size() * (reflect ? 2 : 1));
    for (const CurveTerm& c : curves) {
        GlobalClass cls = class_of_term(c);
        Real l = geometry::length_of_trace(c.trace);
        Real x = Real(cls.q, prec) / l;
        Real y = Real(cls.p, prec) / l;
        rows.push_back(UnitBallRow{cls, c.sector, c.h, c.trace, std::move(l),
                                   std::move(x), std::move(y)});
    }
    if (reflect) {
        size_t n = rows.size();
        for (size_t i = 0; i < n; ++i) {
            UnitBallRow r = rows[i];
            r.x = -r.x;
            r.y = -r.y;
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

} // namespace mkt::identities
