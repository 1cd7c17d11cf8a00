#pragma once

namespace qcap {

// Equality tolerance for entropy identities.
inline constexpr double EQ_TOL = 1e-10;
// Slack allowed on Bloch vector norms before a state is rejected.
inline constexpr double NORM_TOL = 1e-12;
// Below this radius the second argument of D is treated as the maximally mixed state.
inline constexpr double Q_ZERO = 1e-12;

}  // namespace qcap
