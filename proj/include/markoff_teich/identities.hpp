#pragma once

#include <optional>
#include <string>
#include <vector>

#include "markoff_teich/geometry.hpp"
#include "markoff_teich/traces.hpp"

namespace mkt::identities {

using farey::Rational;
using geometry::UnitBallPoint;
using traces::BaseTriple;
using traces::SeedPair;

enum class IdentityKind { product, mcshane };

/// Global projective class [p:q], normalized so q > 0, or (1,0).
/// Interior curves of the three sectors map to disjoint regions:
///   ab: (p,q) -> (p,q);  bc: (p,q) -> (q, q-p);  ca: (p,q) -> (p-q, p).
struct GlobalClass {
    mpz_class p, q;
    friend bool operator==(const GlobalClass&, const GlobalClass&) = default;
    friend bool operator<(const GlobalClass& a, const GlobalClass& b) {
        if (a.p != b.p) return a.p < b.p;
        return a.q < b.q;
    }
};

GlobalClass global_class(SeedPair pair, const Rational& r);
GlobalClass seed_class(int seed_index); // 0 -> a = [0:1], 1 -> b = [1:1], 2 -> c = [1:0]

struct TermRecord {
    mpz_class p, q; // sector-local curve; seeds recorded as 0/1, 1/1, 1/0 of sector ab
    int sector;     // 0 = ab, 1 = bc, 2 = ca; -1 for the three base curves
    mpz_class h;
    Real trace;
    Real contribution; // product: h*log(t^2/(t^2-4)); mcshane: (1-sqrt(1-4/t^2))/2
};

struct IdentityReport {
    IdentityKind kind;
    std::string base_a, base_b, base_c;
    long max_height = 0;
    long terms_used = 0;
    Real partial, target, residual;
    long precision_bits = 0;
    bool monotone = false;
    // Tail diagnostics: smallest trace and curve count at h = max_height.
    Real frontier_min_trace;
    long frontier_curves = 0;
    // Partial value after truncating at each height 1..max_height.
    std::vector<Real> partial_by_height;
    std::vector<TermRecord> terms; // filled when emit_terms was requested

    explicit IdentityReport(long prec)
        : kind(IdentityKind::product),
          partial(prec), target(prec), residual(prec),
          precision_bits(prec), frontier_min_trace(prec) {}
};

/// One sector of the product: partial = prod over p/q in (0,1), q <= max_q
/// of (t^2/(t^2-4))^q, accumulated in log space; target is the sector
/// closed form exp((lambda(1/1) - rho(0/1))/2).
struct SectorProduct {
    Real partial, target;
    long terms;
};
SectorProduct sector_product(const BaseTriple& base, SeedPair pair, long max_q);

/// Sector closed form from radicals:
/// sqrt(a^2-4) sqrt(b^2-4) / ((a - c(b - sqrt(b^2-4))/2)(b - c(a - sqrt(a^2-4))/2))
/// with (a,b,c) the sector's rotated seeds. Used to cross-check the
/// derivative route.
Real sector_closed_form(const BaseTriple& base, SeedPair pair);

/// The completed product over all simple closed geodesics with h <= max_height:
/// three base factors t^2/(t^2-4) plus the three sector pieces with exponent
/// q = h, against the target prod (t_i + sqrt(t_i^2-4))/2.
IdentityReport full_product(const BaseTriple& base, long max_height, bool emit_terms = false);

/// One sector of the McShane sum: interior sum of (-1 + sqrt(1-4/t^2)) for
/// q <= max_q, and the exact boundary combination
/// c/(ab) + half-jump(a) + half-jump(b). interior + boundary -> 0.
struct McShaneSector {
    Real interior, boundary;
    long terms;
};
McShaneSector mcshane_sector_sum(const BaseTriple& base, SeedPair pair, long max_q);

/// McShane's identity truncated at h <= max_height:
/// partial = sum (1 - sqrt(1-4/t^2))/2 -> 1/2.
IdentityReport full_mcshane(const BaseTriple& base, long max_height, bool emit_terms = false);

/// Heuristic upper bound on the omitted tail of a report: frontier curves
/// extrapolated by the minimal frontier trace growing at the slowest
/// staircase ratio exp(l_min/2), with linear multiplicity growth and a
/// safety factor of 2. A diagnostic, not a proof.
Real tail_bound(const IdentityReport& report);

/// Discrete telescoping over the Farey level q <= max_q of one sector.
/// closed_route: sum over interior nodes of the chord-slope brackets
/// computed through the closed-form neighbor-trace solution; telescopes to
/// direct_route, the same frontier chord difference computed from table
/// traces. The two routes agree within eps_id at every depth. limit_residual
/// = lambda(1/1) - rho(0/1) - sum of limit jumps (2q log(t^2/(t^2-4))),
/// which is nonnegative and decreasing in max_q.
struct TelescopeCheck {
    Real closed_route, direct_route, limit_residual;
};
TelescopeCheck telescoping_check(const BaseTriple& base, SeedPair pair, long max_q);

/// Plot data for F: one row per rational of the sector with q <= max_q,
/// plus the endpoint rows (0/1 carries only rho, 1/1 only lambda).
struct FRow {
    Rational curve;
    mpz_class h;
    Real trace, length, F;
    std::optional<Real> lambda, rho;
};
std::vector<FRow> emit_F(const BaseTriple& base, SeedPair pair, long max_q);

/// Plot data for the appendix step function f = u/t, with the jump
/// magnitude -1 + sqrt(1-4/t^2) per rational.
struct SmallFRow {
    Rational curve;
    mpz_class h;
    Real trace, f, jump;
};
std::vector<SmallFRow> emit_f(const BaseTriple& base, SeedPair pair, long max_q);

/// Length-norm unit ball boundary points for all curves with h <= max_height
/// in global homology coordinates; optionally completed by reflection
/// through the origin.
struct UnitBallRow {
    GlobalClass cls;
    int sector; // -1 for seeds
    mpz_class h;
    Real trace, length, x, y;
};
std::vector<UnitBallRow> emit_unit_ball(const BaseTriple& base, long max_height, bool reflect);

} // namespace mkt::identities
