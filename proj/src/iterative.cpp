// Min-max search for the optimal average output:
//   C1 = min_V max_{W on surface} D(W || V).
// Each iteration steps V towards a surface point of maximal divergence; a
// step is kept only if D_max goes down.

#include <algorithm>
#include <cmath>
#include <random>

#include "qcap/capacity.hpp"
#include "saddle.hpp"

namespace qcap {

namespace {

constexpr double kEpsilonFloor = 1e-12;

// Mixture of the given outputs that maximises the Holevo quantity
// (Blahut-Arimoto on a fixed finite alphabet). Its average is the point that
// minimises the largest divergence to those outputs.
struct Balanced {
    BlochVector v;
    std::vector<double> weights;
};

Balanced balanced_mixture(std::span<const std::pair<double, BlochVector>> atoms) {
    const std::size_t m = atoms.size();
    std::vector<double> w(m, 1.0 / static_cast<double>(m));
    std::vector<double> d(m, 0.0);
    BlochVector v;
    for (int it = 0; it < 20000; ++it) {
        v = {};
        for (std::size_t i = 0; i < m; ++i) v += w[i] * atoms[i].second;
        if (!(v.norm() < 1.0)) break;
        const DivergenceTo div(v);
        double chi = 0.0;
        double top = -1.0;
        for (std::size_t i = 0; i < m; ++i) {
            d[i] = div(atoms[i].second);
            chi += w[i] * d[i];
            top = std::max(top, d[i]);
        }
        if (top - chi <= 1e-13) break;
        double total = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            w[i] *= std::exp2(d[i] - top);
            total += w[i];
        }
        for (auto& wi : w) wi /= total;
    }
    return {v, w};
}

BlochVector balanced_target(std::span<const std::pair<double, BlochVector>> atoms) {
    return balanced_mixture(atoms).v;
}

struct Point {
    BlochVector v;
    SurfaceMax surface;
};

// Start for the saddle solve: the competitive local maxima with their
// Blahut-Arimoto weights, at most four, negligible ones dropped.
std::vector<detail::SaddleAtom> saddle_start(const SurfaceMax& s, double band) {
    std::vector<std::pair<double, BlochVector>> near;
    std::vector<BlochVector> inputs;
    for (std::size_t i = 0; i < s.local_maxima.size(); ++i) {
        if (s.local_maxima[i].first >= s.dmax - band) {
            near.push_back(s.local_maxima[i]);
            inputs.push_back(s.local_inputs[i]);
        }
    }
    if (near.size() < 2) return {};
    const auto weights = balanced_mixture(near).weights;
    std::vector<detail::SaddleAtom> atoms;
    for (std::size_t i = 0; i < near.size(); ++i) {
        if (weights[i] > 1e-3) atoms.push_back({inputs[i], weights[i]});
    }
    std::sort(atoms.begin(), atoms.end(), [](const auto& a, const auto& b) { return a.weight > b.weight; });
    if (atoms.size() > 4) atoms.resize(4);
    double total = 0.0;
    for (const auto& a : atoms) total += a.weight;
    for (auto& a : atoms) a.weight /= total;
    return atoms;
}

}  // namespace

CapacityResult iterative_capacity(const ChannelParams& p, const IterConfig& user_cfg) {
    // With rotational symmetry about z the maximisers form rings; an optimal
    // ensemble always lies in the XZ plane.
    IterConfig cfg = user_cfg;
    if (!cfg.restrict_plane && has_z_rotational_symmetry(p)) cfg.restrict_plane = Plane::XZ;

    if (count_nonzero_lambda(p) == 0) {
        throw Error(ErrorCode::DegenerateChannel, "all lambda are zero: the output set is a single point");
    }
    if (!(cfg.step_epsilon > 0.0 && cfg.step_epsilon < 1.0)) {
        throw Error(ErrorCode::Domain, "step_epsilon must lie in (0, 1)");
    }
    if (!(cfg.tol_dmax > 0.0)) throw Error(ErrorCode::Domain, "tol_dmax must be positive");

    auto evaluate = [&](const BlochVector& v) { return Point{v, max_relative_entropy_on_surface(p, v, cfg)}; };

    std::mt19937_64 rng(cfg.seed);
    Point cur = evaluate(cfg.start.value_or(p.t));
    double eps = cfg.step_epsilon;
    std::vector<double> history{cur.surface.dmax};
    bool balanced_failed = false;  // balanced step already tried from this V
    bool converged = false;
    int iter = 0;

    for (; iter < cfg.max_iters && !converged; ++iter) {
        std::optional<Point> best;
        auto consider = [&](Point&& cand) {
            if (cand.surface.dmax < cur.surface.dmax && (!best || cand.surface.dmax < best->surface.dmax)) {
                best = std::move(cand);
                return true;
            }
            return false;
        };

        const auto& maxima = cur.surface.argmax_set;
        std::uniform_int_distribution<std::size_t> pick(0, maxima.size() - 1);
        const BlochVector toward = maxima[pick(rng)];
        if (!consider(evaluate(lerp(cur.v, toward, eps)))) eps *= cfg.shrink_factor;

        // A single maximiser cannot lower D_max once V sits on the ridge where
        // several maximisers tie; a step to the best mixture of all local
        // maxima moves along that ridge.
        if (!balanced_failed && cur.surface.local_maxima.size() > 1) {
            const BlochVector target = balanced_target(cur.surface.local_maxima);
            bool ok = false;
            for (double frac = 1.0; frac > 1e-6; frac *= 0.5) {
                const BlochVector vb = lerp(cur.v, target, frac);
                if (distance(vb, cur.v) < 1e-15 || !(vb.norm() < 1.0)) break;
                if (consider(evaluate(vb))) {
                    ok = true;
                    break;
                }
            }
            balanced_failed = !ok;
        }

        if (!best) {
            if (eps < kEpsilonFloor) converged = true;
            continue;
        }
        const double decrease = cur.surface.dmax - best->surface.dmax;
        cur = std::move(*best);
        balanced_failed = false;
        history.push_back(cur.surface.dmax);
        if (decrease <= cfg.tol_dmax) converged = true;
    }

    // D_max is quadratic in V near the optimum, so V itself is only good to
    // about sqrt(tol_dmax) here. Solving the optimality conditions directly
    // pins V down to rounding level.
    std::vector<BlochVector> polished_outputs;
    if (converged) {
        for (double band : {1e-6, 1e-4}) {
            const auto start = saddle_start(cur.surface, band);
            const auto saddle = detail::solve_saddle(p, start, cfg.restrict_plane);
            if (!saddle) continue;
            Point cand = evaluate(saddle->average);
            if (!(cand.surface.dmax <= cur.surface.dmax + 1e-12)) continue;
            if (cand.surface.dmax < cur.surface.dmax) history.push_back(cand.surface.dmax);
            cur = std::move(cand);
            for (const auto& a : saddle->atoms) polished_outputs.push_back(apply_channel(p, a.input));
            break;
        }
    }

    CapacityResult res;
    res.method = Method::Iterative;
    res.capacity_bits = cur.surface.dmax;
    res.average_output = cur.v;
    res.iterations = iter;
    res.diagnostics.seed = cfg.seed;
    res.diagnostics.final_epsilon = eps;
    res.diagnostics.dmax_history = std::move(history);

    if (!polished_outputs.empty()) {
        try {
            res.ensemble = recover_ensemble(p, cur.v, polished_outputs);
        } catch (const Error&) {
            res.ensemble = {};
        }
    }
    // Otherwise rebuild the ensemble from the near-maximal surface points.
    for (double band = cfg.ensemble_band; res.ensemble.items.empty(); band *= 10.0) {
        std::vector<BlochVector> near;
        for (const auto& [value, w] : cur.surface.local_maxima) {
            if (value >= cur.surface.dmax - band) near.push_back(w);
        }
        try {
            res.ensemble = recover_ensemble(p, cur.v, near);
            break;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NotInHull || band >= 1e-4) {
                if (!converged) break;
                throw;
            }
        }
    }
    if (!res.ensemble.items.empty()) {
        double worst = 0.0;
        for (const auto& s : res.ensemble.items) {
            worst = std::max(worst, std::abs(relative_entropy(s.output, cur.v) - res.capacity_bits));
        }
        res.max_equal_distance_residual = worst;
    }

    if (!converged) throw MaxItersExceeded(std::move(res));
    return res;
}

}  // namespace qcap
