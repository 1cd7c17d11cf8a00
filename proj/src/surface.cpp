// Maximisation of D(W || V) over the output surface, parameterised by the
// input direction so that flat (linear, planar) ellipsoids need no special
// handling.

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qcap/capacity.hpp"

namespace qcap {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDedupe = 1e-6;

struct Candidate {
    double value = 0.0;
    double a = 0.0;  // polar angle, or circle angle in plane mode
    double b = 0.0;  // azimuth (unused in plane mode)
};

class SurfaceObjective {
public:
    SurfaceObjective(const ChannelParams& p, const BlochVector& v, std::optional<Plane> plane)
        : p_(p), d_(v), plane_(plane) {}

    BlochVector input(double a, double b) const {
        if (plane_) return embed_in_plane(*plane_, std::cos(a), std::sin(a));
        const double s = std::sin(a);
        return {s * std::cos(b), s * std::sin(b), std::cos(a)};
    }

    BlochVector output(double a, double b) const { return apply_channel(p_, input(a, b)); }

    double operator()(double a, double b) const {
        ++evaluations;
        return d_(output(a, b));
    }

    mutable std::int64_t evaluations = 0;

private:
    const ChannelParams& p_;
    DivergenceTo d_;
    std::optional<Plane> plane_;
};

// Golden-section maximisation of f on [lo, hi]; returns (argmax, max).
template <class F>
std::pair<double, double> golden_max(F&& f, double lo, double hi, double x0, double f0) {
    constexpr double inv_phi = 0.6180339887498949;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = f(c);
    double fd = f(d);
    while (hi - lo > 1e-11) {
        if (fc >= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    double best_x = x0;
    double best_f = f0;
    for (auto [x, fx] : {std::pair{c, fc}, std::pair{d, fd}}) {
        if (fx > best_f) {
            best_x = x;
            best_f = fx;
        }
    }
    // The bracket ends are never evaluated by the loop above.
    for (double x : {lo, hi}) {
        const double fx = f(x);
        if (fx > best_f) {
            best_x = x;
            best_f = fx;
        }
    }
    return {best_x, best_f};
}

Candidate refine(const SurfaceObjective& obj, Candidate c, double h, int rounds, bool plane_mode) {
    for (int round = 0; round < rounds; ++round) {
        const Candidate before = c;
        {
            const double lo = plane_mode ? c.a - h : std::max(0.0, c.a - h);
            const double hi = plane_mode ? c.a + h : std::min(kPi, c.a + h);
            const auto [x, fx] = golden_max([&](double a) { return obj(a, c.b); }, lo, hi, c.a, c.value);
            c.a = x;
            c.value = fx;
        }
        if (!plane_mode) {
            const auto [x, fx] = golden_max([&](double b) { return obj(c.a, b); }, c.b - h, c.b + h, c.b, c.value);
            c.b = x;
            c.value = fx;
        }
        const bool settled = std::abs(c.a - before.a) < 1e-10 && std::abs(c.b - before.b) < 1e-10;
        if (settled) break;
        // Later rounds only need to track small drifts of the maximum.
        h = std::max(4.0 * std::max(std::abs(c.a - before.a), std::abs(c.b - before.b)), 1e-6);
    }
    return c;
}

// Picks up to `limit` candidates: the best one first, then repeatedly the one
// farthest (in output space) from those already chosen.
std::vector<Candidate> spread_selection(const SurfaceObjective& obj, std::vector<Candidate> cands, int limit) {
    std::sort(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) { return x.value > y.value; });
    if (static_cast<int>(cands.size()) <= limit) return cands;

    std::vector<BlochVector> pos;
    pos.reserve(cands.size());
    for (const auto& c : cands) pos.push_back(obj.output(c.a, c.b));

    std::vector<double> gap(cands.size(), std::numeric_limits<double>::infinity());
    std::vector<bool> taken(cands.size(), false);
    std::vector<Candidate> chosen;
    std::size_t next = 0;
    while (static_cast<int>(chosen.size()) < limit) {
        taken[next] = true;
        chosen.push_back(cands[next]);
        double best_gap = -1.0;
        std::size_t best = 0;
        for (std::size_t i = 0; i < cands.size(); ++i) {
            if (taken[i]) continue;
            gap[i] = std::min(gap[i], distance(pos[i], pos[next]));
            if (gap[i] > best_gap) {
                best_gap = gap[i];
                best = i;
            }
        }
        if (best_gap < 0.0) break;
        next = best;
    }
    return chosen;
}

}  // namespace

SurfaceMax max_relative_entropy_on_surface(const ChannelParams& p, const BlochVector& v, const IterConfig& cfg) {
    const SurfaceObjective obj(p, v, cfg.restrict_plane);
    const bool plane_mode = cfg.restrict_plane.has_value();
    const int n = std::max(cfg.surface_grid, 4);

    std::vector<Candidate> local;
    double h = 0.0;
    if (plane_mode) {
        const int m = 4 * n;
        h = 2.0 * kPi / m;
        std::vector<double> g(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) g[static_cast<std::size_t>(i)] = obj(h * i, 0.0);
        for (int i = 0; i < m; ++i) {
            const double gi = g[static_cast<std::size_t>(i)];
            if (gi >= g[static_cast<std::size_t>((i + 1) % m)] && gi >= g[static_cast<std::size_t>((i + m - 1) % m)]) {
                local.push_back({gi, h * i, 0.0});
            }
        }
    } else {
        h = kPi / n;
        const int cols = 2 * n;
        const double hb = 2.0 * kPi / cols;
        std::vector<double> g(static_cast<std::size_t>(n * cols));
        auto at = [&](int i, int j) -> double& {
            return g[static_cast<std::size_t>(i * cols + ((j % cols) + cols) % cols)];
        };
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < cols; ++j) at(i, j) = obj((i + 0.5) * h, j * hb);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < cols; ++j) {
                const double gij = at(i, j);
                bool peak = true;
                for (int di = -1; di <= 1 && peak; ++di) {
                    const int ii = i + di;
                    if (ii < 0 || ii >= n) continue;
                    for (int dj = -1; dj <= 1; ++dj) {
                        if ((di != 0 || dj != 0) && at(ii, j + dj) > gij) {
                            peak = false;
                            break;
                        }
                    }
                }
                if (peak) local.push_back({gij, (i + 0.5) * h, j * hb});
            }
        }
        h = std::max(h, hb);
    }

    const auto chosen = spread_selection(obj, std::move(local), std::max(cfg.max_refined, 1));

    std::vector<Candidate> refined;
    refined.reserve(chosen.size());
    for (const auto& c : chosen) refined.push_back(refine(obj, c, h, std::max(cfg.refine_iters, 1), plane_mode));
    std::sort(refined.begin(), refined.end(), [](const Candidate& x, const Candidate& y) { return x.value > y.value; });

    SurfaceMax out;
    std::vector<BlochVector> inputs;
    for (const auto& c : refined) {
        const BlochVector w = obj.output(c.a, c.b);
        const bool dup = std::any_of(out.local_maxima.begin(), out.local_maxima.end(),
                                     [&](const auto& kept) { return distance(kept.second, w) <= kDedupe; });
        if (dup) continue;
        out.local_maxima.emplace_back(c.value, w);
        inputs.push_back(obj.input(c.a, c.b));
    }
    out.dmax = out.local_maxima.front().first;
    for (std::size_t i = 0; i < out.local_maxima.size(); ++i) {
        if (out.local_maxima[i].first >= out.dmax - cfg.argmax_band) {
            out.argmax_set.push_back(out.local_maxima[i].second);
            out.argmax_inputs.push_back(inputs[i]);
        }
    }
    out.local_inputs = std::move(inputs);
    out.evaluations = obj.evaluations;
    return out;
}

}  // namespace qcap
