#include <cmath>

#include "qcap/capacity.hpp"
#include "qcap/oracle.hpp"

namespace qcap {

namespace {

CapacityResult point_channel_result(const ChannelParams& p) {
    CapacityResult res;
    res.method = Method::Unital;
    res.average_output = p.t;
    const BlochVector input{0.0, 0.0, 1.0};
    res.ensemble.items = {{1.0, input, apply_channel(p, input)}};
    res.ensemble.recompute_average();
    res.diagnostics.note = "point channel";
    return res;
}

CapacityResult solve_linear(const ChannelParams& p) {
    const bool on_z = std::abs(p.lambda.z) > 1e-12 && std::abs(p.t.x) <= 1e-12 && std::abs(p.t.y) <= 1e-12;
    return on_z ? linear_capacity_axis_aligned(p) : linear_capacity_general(p);
}

}  // namespace

CapacityResult solve_capacity(const ChannelParams& p, SolveMethod method, const IterConfig& cfg) {
    switch (method) {
        case SolveMethod::Unital: return unital_capacity(p);
        case SolveMethod::Linear: return solve_linear(p);
        case SolveMethod::Iterative: return iterative_capacity(p, cfg);
        case SolveMethod::Brute: return brute_force_capacity(p, 4, 20, cfg.seed);
        case SolveMethod::Auto: break;
    }

    if (is_unital(p)) return unital_capacity(p);
    const int nonzero = count_nonzero_lambda(p);
    if (nonzero == 0) return point_channel_result(p);
    if (nonzero == 1) {
        try {
            return solve_linear(p);
        } catch (const Error& e) {
            // Pure segment endpoints break the closed forms but not the search.
            if (e.code() != ErrorCode::EndpointPure) throw;
        }
    }
    return iterative_capacity(p, cfg);
}

std::vector<std::pair<double, double>> capacity_sweep(NamedChannel kind, std::span<const double> xs) {
    std::vector<std::pair<double, double>> out;
    out.reserve(xs.size());
    for (double x : xs) {
        const ChannelParams p = named_channel({kind, x});
        const CapacityResult res =
            (kind == NamedChannel::AmplitudeDamping) ? solve_capacity(p) : unital_capacity(p);
        out.emplace_back(x, res.capacity_bits);
    }
    return out;
}

}  // namespace qcap
