#pragma once

#include <random>
#include <string>
#include <vector>

#include "markoff_teich/real.hpp"
#include "markoff_teich/traces.hpp"

namespace mkt::testing {

constexpr long kPrec = 256;

inline Real dec(const char* s, long prec = kPrec) { return Real::from_decimal(s, prec); }

inline bool near(const Real& x, const char* expected, double tol_abs) {
    Real e = dec(expected, x.precision());
    return abs(x - e) <= Real::from_decimal(std::to_string(tol_abs).c_str(), x.precision());
}

inline bool near_rel(const Real& x, const Real& y, int tol_exp2) {
    return close_rel(x, y, Real::pow2(tol_exp2, std::max(x.precision(), y.precision())));
}

/// Deterministic random base triples: a, b uniform in [3, 3.6], completed
/// with the plus branch. The window keeps the shortest curve of the torus
/// (trace ab - c) above ~2.47, so both identities converge below 1e-6 by
/// height 30; wider windows admit tori with slower tails.
inline std::vector<traces::BaseTriple> random_triples(int count, unsigned seed = 20240817) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(3.0, 3.6);
    std::vector<traces::BaseTriple> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        char bufa[64], bufb[64];
        std::snprintf(bufa, sizeof bufa, "%.17g", dist(rng));
        std::snprintf(bufb, sizeof bufb, "%.17g", dist(rng));
        out.push_back(traces::complete_triple(dec(bufa), dec(bufb), traces::Branch::plus));
    }
    return out;
}

inline traces::BaseTriple modular_torus(long prec = kPrec) {
    return traces::BaseTriple::checked(Real(3, prec), Real(3, prec), Real(3, prec));
}

/// Reference torus given by two 12-digit traces; the plus-branch
/// completion is the exact triple those roundings approximate.
inline traces::BaseTriple reference_triple(long prec = kPrec) {
    return traces::complete_triple(dec("2.59740058623", prec), dec("4.18711171215", prec),
                                   traces::Branch::plus);
}

} // namespace mkt::testing
