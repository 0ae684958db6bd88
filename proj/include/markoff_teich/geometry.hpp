#pragma once

#include "markoff_teich/farey.hpp"
#include "markoff_teich/real.hpp"
#include "markoff_teich/traces.hpp"

namespace mkt::geometry {

using farey::FareyContext;
using farey::Rational;
using traces::BaseTriple;
using traces::SeedPair;
using traces::TraceMatrix;
using traces::TraceNode;

/// Geodesic length from the trace: l = 2 arccosh(t/2), computed as
/// 2 log(t/2 + sqrt(t^2/4 - 1)). Requires t > 2. When t is within
/// 2^(-P/2) of 2 the sqrt cancellation halves the usable digits; the
/// optional flag reports that instead of silently losing them.
Real length_of_trace(const Real& t, bool* conditioning_warning = nullptr);

/// F(p/q) = l(p/q)/q on Q [0,1].
Real F_value(const TraceNode& node);

/// Closed-form solution of the neighbor trace recurrence
/// t_{n+2} = t t_{n+1} - t_n, t_{-1} = t', t_0 = t'':
/// t_n = A e^{nl/2} + B e^{-nl/2} with e^{l/2} = (t + sqrt(t^2-4))/2.
Real neighbor_traces(const Real& t, const Real& t_prime, const Real& t_dprime, long n);

/// One-sided derivatives of F at an interior rational.
struct DerivativePair {
    Real lambda, rho;
};

/// lambda = -(2q log((t' - t'' e^{-l/2}) / (e^{l/2} - e^{-l/2})) + l q''),
/// rho    =   2q log((t'' e^{l/2} - t') / (e^{l/2} - e^{-l/2})) - l q''.
/// These are the actual slope limits of F (the neighbor-chord slopes S_n
/// converge to them); their difference is 2q log(t^2/(t^2-4)).
/// Computed in log space. Non-positive log arguments cannot occur for a
/// valid triple and raise consistency_error.
DerivativePair one_sided_derivatives(long q, long q_dprime, const Real& t,
                                     const Real& t_prime, const Real& t_dprime);
DerivativePair one_sided_derivatives(const TraceNode& node, const FareyContext& ctx,
                                     const Real& t_left, const Real& t_right);

/// Endpoint conventions: at 0/1 take q = q'' = 1, t = t01, t' = t10,
/// t'' = t11; at 1/1 take q = 1, q'' = 0, t = t11, t' = t01, t'' = t10.
Real sector_rho_at_zero(const traces::SectorSeeds<Real>& seeds);
Real sector_lambda_at_one(const traces::SectorSeeds<Real>& seeds);

/// Strengthened triangle inequality data for a Farey triangle with mediant
/// trace t and parent lengths l', l''. With t^ = 2 cosh((l'+l'')/2) the
/// exact relation (t^ - t)(t^ - t~) = 4 gives the strict bound
///   l' + l'' - l < 2 (t^ - t) / sqrt(t^2 - 4)            (sharp_bound)
/// and, whenever the mediant is the larger root of its Markoff quadratic
/// (t >= t~, true for all but finitely many shallow triangles),
///   l' + l'' - l <= 2 / sinh(l/2) = 4 / sqrt(t^2 - 4)    (weak_bound).
struct TriangleGap {
    Real gap;         // l' + l'' - l, strictly positive
    Real sharp_bound; // always exceeds gap
    Real weak_bound;  // exceeds gap when not inverted
    bool inverted;    // t < t~: mediant is the smaller root
    // t_hat > t~ certifies gap > 0 even when the gap itself is below one
    // ulp of the lengths (the subtraction l'+l''-l cannot resolve it there).
    bool positive;
};

/// t_opposite must be the carried opposite trace from the enumeration;
/// recomputing it as t't'' - t cancels catastrophically on deep triangles.
TriangleGap analyze_triangle(const Real& t, const Real& t_opposite, const Real& l,
                             const Real& l_prime, const Real& l_dprime);

/// Margin of the resolved strengthened inequality:
/// l + sharp_bound - (l' + l''); strictly positive for all valid triangles.
/// Recovers the opposite trace from the parent lengths, so it is meant for
/// moderate depths (the acceptance range q <= 50 is fine at 256 bits).
Real strengthened_triangle_gap(const Real& t, const Real& l,
                               const Real& l_prime, const Real& l_dprime);

/// f(p/q) = u/t from the sector matrix entries.
template <class S>
S f_value(const TraceMatrix<S>& m) {
    return S(m.u / m.t);
}

/// Jump of f at a rational with trace t: -1 + sqrt(1 - 4/t^2), in (-1, 0).
/// Equals -2/(1 + e^l).
Real f_jump(const Real& t);

/// Boundary point of the length-norm unit ball: (q/l, p/l).
struct UnitBallPoint {
    Real x, y;
};

UnitBallPoint unit_ball_point(const TraceNode& node);

} // namespace mkt::geometry
