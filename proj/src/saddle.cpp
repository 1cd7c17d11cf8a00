#include "saddle.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace qcap::detail {

namespace {

BlochVector scale_by_lambda(const ChannelParams& p, const BlochVector& d) {
    return {p.lambda.x * d.x, p.lambda.y * d.y, p.lambda.z * d.z};
}

// Orthonormal tangent directions at the unit vector n.
std::vector<BlochVector> tangents(const BlochVector& n, std::optional<Plane> plane) {
    if (plane) {
        const auto [a, b] = plane_axes(*plane);
        return {embed_in_plane(*plane, -n[b], n[a])};
    }
    BlochVector helper{1.0, 0.0, 0.0};
    if (std::abs(n.x) > 0.6) helper = {0.0, 1.0, 0.0};
    BlochVector e1 = helper - helper.dot(n) * n;
    e1 *= 1.0 / e1.norm();
    const BlochVector e2{n.y * e1.z - n.z * e1.y, n.z * e1.x - n.x * e1.z, n.x * e1.y - n.y * e1.x};
    return {e1, e2};
}

class System {
public:
    System(const ChannelParams& p, std::span<const SaddleAtom> start, std::optional<Plane> plane) : p_(p) {
        for (const auto& a : start) {
            base_.push_back(a.input);
            frame_.push_back(tangents(a.input, plane));
        }
        k_ = static_cast<int>(frame_.front().size());
        m_ = static_cast<int>(start.size());
        x_ = Eigen::VectorXd::Zero(size());
        for (int i = 0; i + 1 < m_; ++i) x_[m_ * k_ + i] = start[static_cast<std::size_t>(i)].weight;
    }

    int size() const { return m_ * k_ + m_ - 1; }
    const Eigen::VectorXd& x() const { return x_; }
    void set(const Eigen::VectorXd& x) { x_ = x; }

    BlochVector raw(const Eigen::VectorXd& x, int i) const {
        BlochVector m = base_[static_cast<std::size_t>(i)];
        for (int j = 0; j < k_; ++j) m += x[i * k_ + j] * frame_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        return m;
    }
    BlochVector input(const Eigen::VectorXd& x, int i) const {
        const BlochVector m = raw(x, i);
        return m * (1.0 / m.norm());
    }
    double weight(const Eigen::VectorXd& x, int i) const {
        if (i + 1 < m_) return x[m_ * k_ + i];
        double rest = 1.0;
        for (int j = 0; j + 1 < m_; ++j) rest -= x[m_ * k_ + j];
        return rest;
    }
    bool feasible(const Eigen::VectorXd& x) const {
        for (int i = 0; i < m_; ++i)
            if (!(weight(x, i) > 0.0)) return false;
        return average(x).norm() < 1.0;
    }
    BlochVector average(const Eigen::VectorXd& x) const {
        BlochVector v;
        for (int i = 0; i < m_; ++i) v += weight(x, i) * apply_channel(p_, input(x, i));
        return v;
    }

    Eigen::VectorXd residual(const Eigen::VectorXd& x) const {
        const DivergenceTo div(average(x));
        Eigen::VectorXd g(size());
        std::vector<double> d(static_cast<std::size_t>(m_));
        for (int i = 0; i < m_; ++i) {
            const BlochVector m = raw(x, i);
            const double len = m.norm();
            const BlochVector n = m * (1.0 / len);
            const BlochVector w = apply_channel(p_, n);
            const BlochVector grad = div.gradient(w);
            for (int j = 0; j < k_; ++j) {
                const BlochVector& e = frame_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                const BlochVector dn = (e - n.dot(e) * n) * (1.0 / len);
                g[i * k_ + j] = grad.dot(scale_by_lambda(p_, dn));
            }
            d[static_cast<std::size_t>(i)] = div(w);
        }
        for (int i = 0; i + 1 < m_; ++i) g[m_ * k_ + i] = d[static_cast<std::size_t>(i)] - d.back();
        return g;
    }

    Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const {
        constexpr double h = 1e-6;
        Eigen::MatrixXd jac(size(), size());
        for (int c = 0; c < size(); ++c) {
            Eigen::VectorXd xp = x;
            Eigen::VectorXd xm = x;
            xp[c] += h;
            xm[c] -= h;
            jac.col(c) = (residual(xp) - residual(xm)) / (2.0 * h);
        }
        return jac;
    }

private:
    const ChannelParams& p_;
    std::vector<BlochVector> base_;
    std::vector<std::vector<BlochVector>> frame_;
    int k_ = 0;
    int m_ = 0;
    Eigen::VectorXd x_;
};

}  // namespace

std::optional<SaddlePoint> solve_saddle(const ChannelParams& p, std::span<const SaddleAtom> start,
                                        std::optional<Plane> plane) {
    if (start.size() < 2) return std::nullopt;
    System sys(p, start, plane);
    if (!sys.feasible(sys.x())) return std::nullopt;

    Eigen::VectorXd g = sys.residual(sys.x());
    for (int it = 0; it < 30 && g.lpNorm<Eigen::Infinity>() > 1e-14; ++it) {
        const Eigen::MatrixXd jac = sys.jacobian(sys.x());
        if (!jac.allFinite()) return std::nullopt;
        const Eigen::FullPivLU<Eigen::MatrixXd> lu(jac);
        if (lu.rank() < sys.size()) return std::nullopt;
        const Eigen::VectorXd step = lu.solve(-g);

        bool moved = false;
        for (double s = 1.0; s > 1e-4; s *= 0.5) {
            const Eigen::VectorXd trial = sys.x() + s * step;
            if (!sys.feasible(trial)) continue;
            const Eigen::VectorXd gt = sys.residual(trial);
            if (gt.allFinite() && gt.norm() < g.norm()) {
                sys.set(trial);
                g = gt;
                moved = true;
                break;
            }
        }
        if (!moved) break;
    }
    if (!(g.lpNorm<Eigen::Infinity>() <= 1e-10)) return std::nullopt;

    SaddlePoint out;
    const int m = static_cast<int>(start.size());
    for (int i = 0; i < m; ++i) out.atoms.push_back({sys.input(sys.x(), i), sys.weight(sys.x(), i)});
    out.average = sys.average(sys.x());
    out.residual = g.lpNorm<Eigen::Infinity>();
    return out;
}

}  // namespace qcap::detail
