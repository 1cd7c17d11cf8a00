#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qcap/capacity.hpp"

namespace qcap::detail {

struct SaddleAtom {
    BlochVector input;
    double weight = 0.0;
};

struct SaddlePoint {
    std::vector<SaddleAtom> atoms;  // inputs refined, weights summing to 1
    BlochVector average;
    double residual = 0.0;
};

// Newton solve of the optimality conditions of an ensemble: every output is a
// stationary point of D(. || V) on the surface and all divergences agree.
// Starts from approximate maximisers and weights; nullopt if it stalls.
std::optional<SaddlePoint> solve_saddle(const ChannelParams& p, std::span<const SaddleAtom> start,
                                        std::optional<Plane> plane);

}  // namespace qcap::detail
