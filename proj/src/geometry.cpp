#include "markoff_teich/geometry.hpp"

#include "markoff_teich/tolerances.hpp"

namespace mkt::geometry {

Real length_of_trace(const Real& t, bool* conditioning_warning) {
    if (t <= 2)
        throw domain_error("non-hyperbolic: trace must exceed 2, got " + t.to_decimal(8));
    long prec = t.precision();
    if (conditioning_warning) {
        *conditioning_warning = (t - 2) <= Real::pow2(-prec / 2, prec);
    }
    Real half = t / 2;
    return 2 * log(half + sqrt(half * half - 1));
}

Real F_value(const TraceNode& node) {
    if (node.curve.is_infinity() || node.curve.den() == 0)
        throw domain_error("F is defined on finite slopes only");
    return node.l / Real(mpz_class(node.curve.den()), node.l.precision());
}

namespace {

struct RecurrenceFrame {
    Real l, E, sqrt_disc, A, B; // E = e^{l/2}, sqrt_disc = E - 1/E = sqrt(t^2-4)
};

RecurrenceFrame frame_of(const Real& t, const Real& t_prime, const Real& t_dprime) {
    if (t <= 2)
        throw domain_error("degenerate triangle: mediant trace <= 2");
    Real disc = sqrt(t * t - 4);
    Real E = (t + disc) / 2;
    Real arg_a = t_dprime * E - t_prime;
    Real arg_b = t_prime - t_dprime / E;
    if (arg_a.sign() <= 0 || arg_b.sign() <= 0)
        throw consistency_error("log-domain violation in derivative frame: invalid triple");
    return RecurrenceFrame{length_of_trace(t), E, disc, arg_a / disc, arg_b / disc};
}

} // namespace

Real neighbor_traces(const Real& t, const Real& t_prime, const Real& t_dprime, long n) {
    RecurrenceFrame f = frame_of(t, t_prime, t_dprime);
    return f.A * pow_int(f.E, n) + f.B * pow_int(f.E, -n);
}

DerivativePair one_sided_derivatives(long q, long q_dprime, const Real& t,
                                     const Real& t_prime, const Real& t_dprime) {
    RecurrenceFrame f = frame_of(t, t_prime, t_dprime);
    Real lq = f.l * q_dprime;
    Real lambda = -(2 * q * log(f.B) + lq);
    Real rho = 2 * q * log(f.A) - lq;
    return DerivativePair{std::move(lambda), std::move(rho)};
}

DerivativePair one_sided_derivatives(const TraceNode& node, const FareyContext& ctx,
                                     const Real& t_left, const Real& t_right) {
    long q = mpz_get_si(node.curve.den().get_mpz_t());
    long q_dprime = mpz_get_si(ctx.right.den().get_mpz_t());
    return one_sided_derivatives(q, q_dprime, node.t, t_left, t_right);
}

Real sector_rho_at_zero(const traces::SectorSeeds<Real>& seeds) {
    return one_sided_derivatives(1, 1, seeds.t01, seeds.t10, seeds.t11).rho;
}

Real sector_lambda_at_one(const traces::SectorSeeds<Real>& seeds) {
    return one_sided_derivatives(1, 0, seeds.t11, seeds.t01, seeds.t10).lambda;
}

TriangleGap analyze_triangle(const Real& t, const Real& t_opposite, const Real& l,
                             const Real& l_prime, const Real& l_dprime) {
    Real tp = 2 * cosh(l_prime / 2);
    Real tpp = 2 * cosh(l_dprime / 2);
    // t_hat = 2 cosh((l'+l'')/2), the larger root of the additive Fricke
    // equation; (t_hat - t)(t_hat - t~) = 4.
    Real t_hat = (tp * tpp + sqrt((tp * tp - 4) * (tpp * tpp - 4))) / 2;
    Real delta = 4 / (t_hat - t_opposite); // = t_hat - t
    Real sqrt_disc = sqrt(t * t - 4);
    return TriangleGap{l_prime + l_dprime - l,
                       2 * delta / sqrt_disc,
                       4 / sqrt_disc,
                       t < t_opposite,
                       t_hat > t_opposite};
}

Real strengthened_triangle_gap(const Real& t, const Real& l,
                               const Real& l_prime, const Real& l_dprime) {
    Real tp = 2 * cosh(l_prime / 2);
    Real tpp = 2 * cosh(l_dprime / 2);
    TriangleGap g = analyze_triangle(t, Real(tp * tpp - t), l, l_prime, l_dprime);
    return g.sharp_bound - g.gap;
}

Real f_jump(const Real& t) {
    if (t <= 2)
        throw domain_error("f_jump requires trace > 2");
    // -1 + sqrt(1-x) written as -x/(1 + sqrt(1-x)) so deep curves
    // (x = 4/t^2 below one ulp of 1) keep full relative precision.
    Real x = 4 / (t * t);
    return -(x / (1 + sqrt(1 - x)));
}

UnitBallPoint unit_ball_point(const TraceNode& node) {
    if (node.l.sign() <= 0)
        throw domain_error("unit ball point requires positive length");
    long prec = node.l.precision();
    Real q(mpz_class(node.curve.den()), prec);
    Real p(mpz_class(node.curve.num()), prec);
    return UnitBallPoint{q / node.l, p / node.l};
}

} // namespace mkt::geometry
