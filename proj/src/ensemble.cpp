#include <algorithm>
#include <cmath>
#include <sstream>

#include "nnls.hpp"
#include "qcap/capacity.hpp"

namespace qcap {

const char* to_string(Method m) {
    switch (m) {
        case Method::Unital: return "unital";
        case Method::LinearClosedForm: return "linear-closed-form";
        case Method::LinearTranscendental: return "linear-transcendental";
        case Method::Iterative: return "iterative";
        case Method::BruteForce: return "brute-force";
    }
    return "?";
}

void SignalEnsemble::recompute_average() {
    average_output = {};
    for (const auto& s : items) average_output += s.prob * s.output;
}

double holevo_chi(const SignalEnsemble& e) {
    double chi = von_neumann_entropy(std::min(e.average_output.norm(), 1.0));
    for (const auto& s : e.items) chi -= s.prob * von_neumann_entropy(std::min(s.output.norm(), 1.0));
    return chi;
}

double holevo_chi_divergence_form(const SignalEnsemble& e) {
    double chi = 0.0;
    for (const auto& s : e.items) {
        if (s.prob > 0.0) chi += s.prob * relative_entropy(s.output, e.average_output);
    }
    return chi;
}

double equal_distance_residual(const SignalEnsemble& e, double capacity) {
    double worst = 0.0;
    for (const auto& s : e.items) {
        if (s.prob > 0.0) worst = std::max(worst, std::abs(relative_entropy(s.output, e.average_output) - capacity));
    }
    return worst;
}

namespace {

// Reduce a convex combination to at most four points with the same barycentre.
void caratheodory_reduce(std::vector<BlochVector>& pts, std::vector<double>& w) {
    while (pts.size() > 4) {
        const auto k = static_cast<Eigen::Index>(pts.size());
        Eigen::MatrixXd m(4, k);
        for (Eigen::Index i = 0; i < k; ++i) {
            const auto& p = pts[static_cast<std::size_t>(i)];
            m.col(i) << p.x, p.y, p.z, 1.0;
        }
        const Eigen::MatrixXd kernel = m.fullPivLu().kernel();
        const Eigen::VectorXd z = kernel.col(0);
        double alpha = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < k; ++i) {
            if (z[i] > 1e-15) alpha = std::min(alpha, w[static_cast<std::size_t>(i)] / z[i]);
        }
        std::vector<BlochVector> next_pts;
        std::vector<double> next_w;
        for (Eigen::Index i = 0; i < k; ++i) {
            const double wi = w[static_cast<std::size_t>(i)] - alpha * z[i];
            if (wi > 1e-14) {
                next_pts.push_back(pts[static_cast<std::size_t>(i)]);
                next_w.push_back(wi);
            }
        }
        if (next_pts.size() >= pts.size()) break;
        pts = std::move(next_pts);
        w = std::move(next_w);
    }
}

}  // namespace

SignalEnsemble recover_ensemble(const ChannelParams& p, const BlochVector& v,
                                std::span<const BlochVector> argmax_set, double hull_tol) {
    if (argmax_set.empty()) throw Error(ErrorCode::NotInHull, "empty argmax set");

    const auto n = static_cast<Eigen::Index>(argmax_set.size());
    Eigen::MatrixXd a(4, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& w = argmax_set[static_cast<std::size_t>(i)];
        a.col(i) << w.x, w.y, w.z, 1.0;
    }
    Eigen::VectorXd b(4);
    b << v.x, v.y, v.z, 1.0;
    const Eigen::VectorXd x = detail::nnls(a, b);

    std::vector<BlochVector> pts;
    std::vector<double> w;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (x[i] > 1e-12) {
            pts.push_back(argmax_set[static_cast<std::size_t>(i)]);
            w.push_back(x[i]);
        }
    }
    caratheodory_reduce(pts, w);

    double total = 0.0;
    BlochVector mix;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        total += w[i];
        mix += w[i] * pts[i];
    }
    const double miss = pts.empty() ? 1.0 : distance(mix, v);
    if (pts.empty() || std::abs(total - 1.0) > hull_tol || miss > hull_tol) {
        std::ostringstream os;
        os << "no convex combination of " << argmax_set.size() << " maximizers reaches v (miss " << miss
           << ", weight sum " << total << ")";
        throw Error(ErrorCode::NotInHull, os.str());
    }

    SignalEnsemble e;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        e.items.push_back({w[i] / total, invert_channel(p, pts[i]), pts[i]});
    }
    e.recompute_average();
    return e;
}

}  // namespace qcap
