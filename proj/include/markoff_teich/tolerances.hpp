#pragma once

#include "markoff_teich/real.hpp"

namespace mkt {

// Relative tolerances at working precision P bits. The guard bands cover
// error accumulation over deep recursions (triple), composed transcendental
// evaluations (id), and trace/matrix recursion to depth ~50 (oracle).

inline Real eps_triple(long prec_bits) { return Real::pow2(-(prec_bits - 16), prec_bits); }
inline Real eps_id(long prec_bits) { return Real::pow2(-(prec_bits - 24), prec_bits); }
inline Real eps_oracle(long prec_bits) { return Real::pow2(-(prec_bits - 48), prec_bits); }

} // namespace mkt
