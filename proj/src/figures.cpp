#include "qcap/figures.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <ostream>
#include <unordered_map>

#include "qcap/error.hpp"

namespace qcap {

namespace {

// D(. || v) inside the unit disk; outside it the boundary value plus the
// distance to the disk, so level sets that touch the pure states close up.
class SliceField {
public:
    SliceField(const BlochVector& v, Plane plane) : div_(v), plane_(plane) {}

    double operator()(double c1, double c2) const {
        BlochVector w = embed_in_plane(plane_, c1, c2);
        const double r = w.norm();
        if (r <= 1.0) return div_(w);
        w *= 1.0 / r;
        return div_(w) + (r - 1.0);
    }

private:
    DivergenceTo div_;
    Plane plane_;
};

struct Segment {
    std::int64_t a;
    std::int64_t b;
};

std::vector<Polyline> march(const std::vector<double>& field, int n, double level) {
    const int nodes = n + 1;
    auto f = [&](int i, int j) { return field[static_cast<std::size_t>(j * nodes + i)]; };
    auto coord = [&](int i) { return -1.0 + 2.0 * i / n; };
    auto h_edge = [&](int i, int j) { return 2LL * (static_cast<std::int64_t>(j) * nodes + i); };
    auto v_edge = [&](int i, int j) { return 2LL * (static_cast<std::int64_t>(j) * nodes + i) + 1; };

    std::unordered_map<std::int64_t, std::array<double, 2>> edge_point;
    auto point_on = [&](std::int64_t id) {
        if (auto it = edge_point.find(id); it != edge_point.end()) return it->second;
        const std::int64_t node = id / 2;
        const int i = static_cast<int>(node % nodes);
        const int j = static_cast<int>(node / nodes);
        const int i2 = (id % 2 == 0) ? i + 1 : i;
        const int j2 = (id % 2 == 0) ? j : j + 1;
        const double fa = f(i, j);
        const double fb = f(i2, j2);
        const double s = (fb == fa) ? 0.5 : std::clamp((level - fa) / (fb - fa), 0.0, 1.0);
        const std::array<double, 2> p{coord(i) + s * (coord(i2) - coord(i)), coord(j) + s * (coord(j2) - coord(j))};
        edge_point.emplace(id, p);
        return p;
    };

    std::vector<Segment> segs;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const std::array<double, 4> c{f(i, j), f(i + 1, j), f(i + 1, j + 1), f(i, j + 1)};
            const std::array<std::int64_t, 4> e{h_edge(i, j), v_edge(i + 1, j), h_edge(i, j + 1), v_edge(i, j)};
            std::array<bool, 4> above{};
            int mask = 0;
            for (int k = 0; k < 4; ++k) {
                above[static_cast<std::size_t>(k)] = c[static_cast<std::size_t>(k)] > level;
                mask |= above[static_cast<std::size_t>(k)] ? (1 << k) : 0;
            }
            if (mask == 0 || mask == 15) continue;
            if (mask == 5 || mask == 10) {
                // Saddle: cut off the corners whose side differs from the centre.
                const bool centre = 0.25 * (c[0] + c[1] + c[2] + c[3]) > level;
                for (int k = 0; k < 4; ++k) {
                    if (above[static_cast<std::size_t>(k)] != centre) {
                        segs.push_back({e[static_cast<std::size_t>((k + 3) % 4)], e[static_cast<std::size_t>(k)]});
                    }
                }
                continue;
            }
            std::array<std::int64_t, 2> crossing{};
            int count = 0;
            for (int k = 0; k < 4 && count < 2; ++k) {
                if (above[static_cast<std::size_t>(k)] != above[static_cast<std::size_t>((k + 1) % 4)]) {
                    crossing[static_cast<std::size_t>(count++)] = e[static_cast<std::size_t>(k)];
                }
            }
            segs.push_back({crossing[0], crossing[1]});
        }
    }

    std::unordered_map<std::int64_t, std::vector<std::size_t>> by_edge;
    for (std::size_t s = 0; s < segs.size(); ++s) {
        by_edge[segs[s].a].push_back(s);
        by_edge[segs[s].b].push_back(s);
    }
    std::vector<bool> used(segs.size(), false);
    auto next_seg = [&](std::int64_t edge, std::size_t from) -> std::optional<std::size_t> {
        for (std::size_t s : by_edge[edge])
            if (s != from && !used[s]) return s;
        return std::nullopt;
    };

    std::vector<Polyline> lines;
    for (std::size_t start = 0; start < segs.size(); ++start) {
        if (used[start]) continue;
        used[start] = true;
        std::deque<std::int64_t> chain{segs[start].a, segs[start].b};
        for (std::size_t cur = start;;) {
            const auto nxt = next_seg(chain.back(), cur);
            if (!nxt) break;
            used[*nxt] = true;
            chain.push_back(segs[*nxt].a == chain.back() ? segs[*nxt].b : segs[*nxt].a);
            cur = *nxt;
        }
        for (std::size_t cur = start;;) {
            const auto nxt = next_seg(chain.front(), cur);
            if (!nxt) break;
            used[*nxt] = true;
            chain.push_front(segs[*nxt].a == chain.front() ? segs[*nxt].b : segs[*nxt].a);
            cur = *nxt;
        }
        Polyline line;
        line.level = level;
        line.closed = chain.size() > 2 && chain.front() == chain.back();
        for (auto id : chain) line.points.push_back(point_on(id));
        lines.push_back(std::move(line));
    }
    return lines;
}

// Splits a polyline wherever it leaves the disk of radius `limit`.
void clip_to_disk(Polyline line, double limit, std::vector<Polyline>& out) {
    auto inside = [&](const std::array<double, 2>& p) { return std::hypot(p[0], p[1]) <= limit; };
    if (std::all_of(line.points.begin(), line.points.end(), inside)) {
        out.push_back(std::move(line));
        return;
    }
    Polyline piece{line.level, 0, false, {}};
    auto flush = [&] {
        if (piece.points.size() >= 2) out.push_back(piece);
        piece.points.clear();
    };
    for (const auto& p : line.points) {
        if (inside(p)) {
            piece.points.push_back(p);
        } else {
            flush();
        }
    }
    flush();
}

}  // namespace

ContourResult contour_polylines(const ContourRequest& req) {
    if (!(req.v.norm() < 1.0)) throw Error(ErrorCode::Domain, "contour reference state must have norm < 1");
    if (req.resolution < 2) throw Error(ErrorCode::Domain, "resolution must be at least 2");
    for (double level : req.levels) {
        if (!(level > 0.0)) throw Error(ErrorCode::Domain, "contour levels must be positive");
    }

    const int n = req.resolution;
    const SliceField field_fn(req.v, req.plane);
    std::vector<double> field(static_cast<std::size_t>((n + 1) * (n + 1)));
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i)
            field[static_cast<std::size_t>(j * (n + 1) + i)] = field_fn(-1.0 + 2.0 * i / n, -1.0 + 2.0 * j / n);

    const double limit = 1.0 + 2.0 / n;
    ContourResult out;
    for (double level : req.levels) {
        std::vector<Polyline> kept;
        for (auto& line : march(field, n, level)) clip_to_disk(std::move(line), limit, kept);
        if (kept.empty()) out.empty_levels.push_back(level);
        int id = 0;
        for (auto& line : kept) {
            line.id = id++;
            out.polylines.push_back(std::move(line));
        }
    }
    return out;
}

void write_contour_csv(std::ostream& os, const ContourResult& contours) {
    os << "level,polyline_id,c1,c2\n";
    const auto old = os.precision(17);
    for (const auto& line : contours.polylines) {
        for (const auto& p : line.points) os << line.level << ',' << line.id << ',' << p[0] << ',' << p[1] << '\n';
    }
    os.precision(old);
}

std::vector<ScanSample> angular_scan(const AngularScanRequest& req) {
    if (req.samples < 8) throw Error(ErrorCode::Domain, "scan needs at least 8 samples");
    const DivergenceTo div(req.v);
    const auto [a, b] = plane_axes(req.plane);
    constexpr double two_pi = 2.0 * std::numbers::pi;

    std::vector<ScanSample> out;
    out.reserve(static_cast<std::size_t>(req.samples));
    for (int k = 0; k < req.samples; ++k) {
        const double psi = two_pi * k / req.samples;
        const BlochVector w = apply_channel(req.channel, embed_in_plane(req.plane, std::cos(psi), std::sin(psi)));
        double theta = std::atan2(w[b], w[a]);
        if (theta < 0.0) theta += two_pi;
        out.push_back({theta, div(w), w});
    }
    return out;
}

std::vector<std::size_t> scan_local_maxima(const std::vector<ScanSample>& s) {
    std::vector<std::size_t> peaks;
    const std::size_t n = s.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double prev = s[(i + n - 1) % n].divergence;
        const double next = s[(i + 1) % n].divergence;
        if (s[i].divergence > prev && s[i].divergence >= next) peaks.push_back(i);
    }
    return peaks;
}

void write_scan_csv(std::ostream& os, const std::vector<ScanSample>& samples) {
    os << "theta,D\n";
    const auto old = os.precision(17);
    for (const auto& s : samples) os << s.theta << ',' << s.divergence << '\n';
    os.precision(old);
}

}  // namespace qcap
