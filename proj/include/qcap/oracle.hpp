#pragma once

#include <cstdint>
#include <vector>

#include "qcap/capacity.hpp"

namespace qcap {

// Pure input state |psi> = (alpha, sqrt(1 - alpha^2) e^{i theta}).
struct PureStateParam {
    double alpha = 1.0;
    double theta = 0.0;

    BlochVector to_bloch() const;
};

struct EnsembleParam {
    std::vector<PureStateParam> states;
    std::vector<double> raw_weights;  // softmax gives the probabilities

    std::vector<double> probabilities() const;
};

/// Holevo quantity of the channel outputs of the parameterised input ensemble.
double chi_objective(const ChannelParams& p, const EnsembleParam& e);

/// Multistart compass search over (alpha, theta, raw weight) of n_states pure
/// inputs. Each restart is seeded from (seed, restart index).
CapacityResult brute_force_capacity(const ChannelParams& p, int n_states, int restarts, std::uint64_t seed);

}  // namespace qcap
