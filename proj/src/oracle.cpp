// Brute-force Holevo maximisation over small pure-state input ensembles.
// Deliberately independent of the min-max machinery: it only uses the
// channel map and von Neumann entropies.

#include "qcap/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace qcap {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInitialStep = 0.3;
constexpr double kShrink = 0.5;
constexpr double kFinalStep = 1e-7;
constexpr std::int64_t kEvalBudget = 400000;

EnsembleParam unpack(const std::vector<double>& x, int n) {
    EnsembleParam e;
    for (int i = 0; i < n; ++i) {
        e.states.push_back({x[static_cast<std::size_t>(3 * i)], x[static_cast<std::size_t>(3 * i + 1)]});
        e.raw_weights.push_back(x[static_cast<std::size_t>(3 * i + 2)]);
    }
    return e;
}

void project(std::vector<double>& x, std::size_t k) {
    if (k % 3 == 0) x[k] = std::clamp(x[k], 0.0, 1.0);
    if (k % 3 == 1) x[k] = x[k] - kTwoPi * std::floor(x[k] / kTwoPi);
}

SignalEnsemble build(const ChannelParams& p, const EnsembleParam& e) {
    SignalEnsemble out;
    const auto probs = e.probabilities();
    for (std::size_t i = 0; i < e.states.size(); ++i) {
        const BlochVector in = e.states[i].to_bloch();
        out.items.push_back({probs[i], in, apply_channel(p, in)});
    }
    out.recompute_average();
    return out;
}

// Folds signals with (numerically) the same input together.
SignalEnsemble merge_duplicates(const SignalEnsemble& e) {
    SignalEnsemble out;
    for (const auto& s : e.items) {
        auto same = std::find_if(out.items.begin(), out.items.end(),
                                 [&](const SignalState& k) { return distance(k.input, s.input) < 1e-4; });
        if (same == out.items.end()) {
            out.items.push_back(s);
        } else {
            same->prob += s.prob;
        }
    }
    std::erase_if(out.items, [](const SignalState& s) { return s.prob < 1e-12; });
    out.recompute_average();
    return out;
}

}  // namespace

BlochVector PureStateParam::to_bloch() const {
    const double a = std::clamp(alpha, 0.0, 1.0);
    const double s = 2.0 * a * std::sqrt(std::max(0.0, 1.0 - a * a));
    return {s * std::cos(theta), s * std::sin(theta), 2.0 * a * a - 1.0};
}

std::vector<double> EnsembleParam::probabilities() const {
    std::vector<double> p(raw_weights.size());
    if (p.empty()) return p;
    const double top = *std::max_element(raw_weights.begin(), raw_weights.end());
    double total = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        p[i] = std::exp(raw_weights[i] - top);
        total += p[i];
    }
    for (auto& pi : p) pi /= total;
    return p;
}

double chi_objective(const ChannelParams& p, const EnsembleParam& e) { return holevo_chi(build(p, e)); }

CapacityResult brute_force_capacity(const ChannelParams& p, int n_states, int restarts, std::uint64_t seed) {
    if (n_states < 2 || n_states > 4) throw Error(ErrorCode::Domain, "n_states must be 2, 3 or 4");
    restarts = std::max(restarts, 1);

    const auto dim = static_cast<std::size_t>(3 * n_states);
    std::vector<double> best_x;
    double best_f = -1.0;
    double worst_f = 2.0;
    int best_restart = -1;
    std::int64_t evals = 0;

    for (int r = 0; r < restarts; ++r) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(r)};
        std::mt19937_64 rng(seq);
        std::uniform_real_distribution<double> unit(0.0, 1.0);

        std::vector<double> x(dim);
        for (int i = 0; i < n_states; ++i) {
            // Uniform on the sphere: z = 2 alpha^2 - 1 uniform in [-1, 1].
            x[static_cast<std::size_t>(3 * i)] = std::sqrt(unit(rng));
            x[static_cast<std::size_t>(3 * i + 1)] = kTwoPi * unit(rng);
            x[static_cast<std::size_t>(3 * i + 2)] = 2.0 * unit(rng) - 1.0;
        }
        auto f = [&](const std::vector<double>& y) {
            ++evals;
            return chi_objective(p, unpack(y, n_states));
        };

        double fx = f(x);
        const std::int64_t budget_end = evals + kEvalBudget;
        for (double step = kInitialStep; step >= kFinalStep && evals < budget_end;) {
            bool improved = false;
            for (std::size_t k = 0; k < dim; ++k) {
                for (double sign : {1.0, -1.0}) {
                    std::vector<double> y = x;
                    y[k] += sign * step;
                    project(y, k);
                    const double fy = f(y);
                    if (fy > fx) {
                        x = std::move(y);
                        fx = fy;
                        improved = true;
                        break;
                    }
                }
            }
            if (!improved) step *= kShrink;
        }

        worst_f = std::min(worst_f, fx);
        if (fx > best_f) {
            best_f = fx;
            best_x = x;
            best_restart = r;
        }
    }

    CapacityResult res;
    res.method = Method::BruteForce;
    res.ensemble = merge_duplicates(build(p, unpack(best_x, n_states)));
    res.capacity_bits = holevo_chi(res.ensemble);
    res.average_output = res.ensemble.average_output;
    double worst = 0.0;
    for (const auto& s : res.ensemble.items) {
        if (s.prob > 1e-4) {
            worst = std::max(worst, std::abs(relative_entropy(s.output, res.average_output) - res.capacity_bits));
        }
    }
    res.max_equal_distance_residual = worst;
    res.diagnostics.seed = seed;
    res.diagnostics.restarts = restarts;
    res.diagnostics.best_restart = best_restart;
    res.diagnostics.restart_spread = best_f - worst_f;
    res.diagnostics.evaluations = evals;
    res.diagnostics.note = "compass search: step 0.3, shrink 0.5, stop below 1e-7";
    return res;
}

}  // namespace qcap
