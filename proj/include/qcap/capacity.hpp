#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qcap/bloch.hpp"
#include "qcap/channel.hpp"
#include "qcap/error.hpp"

namespace qcap {

struct SignalState {
    double prob = 0.0;
    BlochVector input;
    BlochVector output;
};

struct SignalEnsemble {
    std::vector<SignalState> items;
    BlochVector average_output;

    /// Rebuilds average_output from the items.
    void recompute_average();
};

enum class Method { Unital, LinearClosedForm, LinearTranscendental, Iterative, BruteForce };

const char* to_string(Method m);

struct SolverDiagnostics {
    std::uint64_t seed = 0;
    double final_epsilon = 0.0;
    // Accepted D_max values of the iterative search, in order.
    std::vector<double> dmax_history;
    // Linear solvers: segment parameter and equation residual.
    double beta = 0.0;
    double equation_residual = 0.0;
    // Brute force: restart statistics.
    int restarts = 0;
    int best_restart = -1;
    double restart_spread = 0.0;
    std::int64_t evaluations = 0;
    std::string note;
};

struct CapacityResult {
    double capacity_bits = 0.0;
    BlochVector average_output;
    SignalEnsemble ensemble;
    int iterations = 0;
    double max_equal_distance_residual = 0.0;
    Method method = Method::Iterative;
    SolverDiagnostics diagnostics;
};

// Search parameters for the min-max iteration.
struct IterConfig {
    double step_epsilon = 0.5;
    double shrink_factor = 0.5;
    int surface_grid = 96;
    int refine_iters = 40;
    double tol_dmax = 1e-10;
    int max_iters = 10000;
    std::uint64_t seed = 0;
    // Restrict the surface search to the great circle of input directions in
    // this plane (used when the channel is symmetric about an axis).
    std::optional<Plane> restrict_plane;
    // Starting average output; defaults to the ellipsoid centre t.
    std::optional<BlochVector> start;
    // Local maxima within this band of D_max form the argmax set.
    double argmax_band = 1e-9;
    // Wider band used when rebuilding the optimal ensemble at the end.
    double ensemble_band = 1e-7;
    // Largest number of grid local maxima that get refined.
    int max_refined = 24;
};

// Quantities along the segment of a linear channel (nonzero lambda on z).
struct LinearSolveState {
    double beta = 0.0;
    double A = 0.0;  // r_plus^2
    double B = 0.0;  // q(beta)^2
    double C = 0.0;  // r_minus^2
    double r_plus = 0.0;
    double r_minus = 0.0;
    double q = 0.0;

    static LinearSolveState at(const ChannelParams& p, double beta);
};

/// Residual of the segment equation for D(W+ || V) = D(W- || V), in nats:
/// 4 lz (tz + beta lz) atanh(sqrt B)/sqrt B - [ln(1-A) - ln(1-C) + 2 sqrt A atanh sqrt A - 2 sqrt C atanh sqrt C].
double linear_equation_residual(const ChannelParams& p, double beta);

CapacityResult unital_capacity(const ChannelParams& p);
CapacityResult linear_capacity_axis_aligned(const ChannelParams& p);
CapacityResult linear_capacity_general(const ChannelParams& p);

struct SurfaceMax {
    double dmax = 0.0;
    std::vector<BlochVector> argmax_set;     // outputs
    std::vector<BlochVector> argmax_inputs;  // matching input directions
    // Every refined local maximum, sorted by decreasing D.
    std::vector<std::pair<double, BlochVector>> local_maxima;
    std::vector<BlochVector> local_inputs;  // inputs of local_maxima
    std::int64_t evaluations = 0;
};

/// max over unit inputs u of D(apply_channel(p, u) || v): coarse grid over
/// (polar, azimuth), then golden-section refinement of the grid's local maxima.
SurfaceMax max_relative_entropy_on_surface(const ChannelParams& p, const BlochVector& v,
                                           const IterConfig& cfg = {});

/// Thrown when the iteration budget runs out; carries the best result found.
class MaxItersExceeded : public Error {
public:
    explicit MaxItersExceeded(CapacityResult best)
        : Error(ErrorCode::MaxItersExceeded, "iteration budget exhausted"), best_(std::move(best)) {}
    const CapacityResult& best() const noexcept { return best_; }

private:
    CapacityResult best_;
};

CapacityResult iterative_capacity(const ChannelParams& p, const IterConfig& cfg = {});

/// Probabilities p_k >= 0 with sum p_k W_k = v and sum p_k = 1, at most four
/// nonzero. Inputs come from invert_channel.
SignalEnsemble recover_ensemble(const ChannelParams& p, const BlochVector& v,
                                std::span<const BlochVector> argmax_set, double hull_tol = 1e-6);

/// S(average) - sum p_i S(output_i).
double holevo_chi(const SignalEnsemble& e);
/// sum p_i D(output_i || average).
double holevo_chi_divergence_form(const SignalEnsemble& e);

/// max_i |D(output_i || average) - capacity| over members with p > 0.
double equal_distance_residual(const SignalEnsemble& e, double capacity);

enum class SolveMethod { Auto, Unital, Linear, Iterative, Brute };

/// Dispatch: t = 0 -> unital, one nonzero lambda -> linear, otherwise the
/// iterative search (restricted to the XZ plane when the channel is
/// symmetric about z). Point channels have capacity 0.
CapacityResult solve_capacity(const ChannelParams& p, SolveMethod method = SolveMethod::Auto,
                              const IterConfig& cfg = {});

std::vector<std::pair<double, double>> capacity_sweep(NamedChannel kind, std::span<const double> xs);

}  // namespace qcap
