#include "qcap/bloch.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>

#include "qcap/error.hpp"
#include "qcap/tolerances.hpp"

namespace qcap {

namespace {

constexpr double kLn2 = std::numbers::ln2;

// (1+r) ln(1+r) + (1-r) ln(1-r), finite at r = 1.
double radial_term_nats(double r) {
    const double minus = (r >= 1.0) ? 0.0 : (1.0 - r) * std::log1p(-r);
    return (1.0 + r) * std::log1p(r) + minus;
}

double checked_radius(const BlochVector& w, const char* which) {
    const double r = w.norm();
    if (!(r <= 1.0 + NORM_TOL)) {
        std::ostringstream os;
        os << which << " Bloch vector has norm " << r << " > 1";
        throw Error(ErrorCode::Domain, os.str());
    }
    return std::min(r, 1.0);
}

}  // namespace

RelEntropyGeometry geometry(const BlochVector& w, const BlochVector& v) {
    RelEntropyGeometry g;
    g.r = w.norm();
    g.q = v.norm();
    if (g.r > 0.0 && g.q > 0.0) {
        g.cos_theta = std::clamp(w.dot(v) / (g.r * g.q), -1.0, 1.0);
    }
    return g;
}

double binary_entropy(double p) {
    auto h = [](double a) { return a <= 0.0 ? 0.0 : -a * std::log2(a); };
    return h(p) + h(1.0 - p);
}

double von_neumann_entropy(double r) {
    if (!(r >= 0.0 && r <= 1.0 + NORM_TOL)) {
        throw Error(ErrorCode::Domain, "radius outside [0, 1]");
    }
    r = std::min(r, 1.0);
    return 1.0 - 0.5 * radial_term_nats(r) / kLn2;
}

double relative_entropy(const BlochVector& w, const BlochVector& v) {
    const double r = checked_radius(w, "first");
    const double q = checked_radius(v, "second");

    if (q >= 1.0) {
        if (distance(w, v) <= NORM_TOL) return 0.0;
        throw Error(ErrorCode::Domain,
                    "second argument is pure and differs from the first; D diverges");
    }

    // -S(w) part, shifted by one bit: 1/2 [(1+r) ln(1+r) + (1-r) ln(1-r)].
    double nats = 0.5 * radial_term_nats(r);
    if (q >= Q_ZERO) {
        // -1/2 ln(1 - q^2) - (w.v / q) atanh(q)
        nats -= 0.5 * std::log1p(-q * q);
        nats -= (w.dot(v) / q) * std::atanh(q);
    }
    return nats / kLn2;
}

DivergenceTo::DivergenceTo(const BlochVector& v) : v_(v) {
    const double q = v.norm();
    if (!(q < 1.0)) throw Error(ErrorCode::Domain, "reference state must be interior (norm < 1)");
    if (q >= Q_ZERO) {
        q_term_ = -0.5 * std::log1p(-q * q);
        atanh_over_q_ = std::atanh(q) / q;
    }
}

double DivergenceTo::operator()(const BlochVector& w) const {
    const double r = std::min(w.norm(), 1.0);
    return (0.5 * radial_term_nats(r) + q_term_ - w.dot(v_) * atanh_over_q_) / kLn2;
}

BlochVector DivergenceTo::gradient(const BlochVector& w) const {
    const double r = w.norm();
    const double radial = (r < 1e-8) ? 1.0 + r * r / 3.0 : std::atanh(r) / r;
    return (radial * w - atanh_over_q_ * v_) * (1.0 / kLn2);
}

double rel_entropy_vs_max_mixed(const BlochVector& w) {
    return 1.0 - von_neumann_entropy(checked_radius(w, "first"));
}

DonaldSides donald_decomposition(std::span<const WeightedState> ensemble, const BlochVector& phi) {
    if (ensemble.empty()) throw Error(ErrorCode::Domain, "empty ensemble");
    double total = 0.0;
    BlochVector sigma;
    for (const auto& [p, s] : ensemble) {
        if (p < 0.0) throw Error(ErrorCode::Domain, "negative probability");
        total += p;
        sigma += p * s;
    }
    if (std::abs(total - 1.0) > 1e-12) throw Error(ErrorCode::Domain, "probabilities do not sum to 1");
    if (!(phi.norm() < 1.0)) throw Error(ErrorCode::Domain, "phi must be an interior state");

    DonaldSides out;
    out.rhs = relative_entropy(sigma, phi);
    for (const auto& [p, s] : ensemble) {
        if (p == 0.0) continue;
        out.lhs += p * relative_entropy(s, phi);
        out.rhs += p * relative_entropy(s, sigma);
    }
    return out;
}

const std::array<Eigen::Matrix2cd, 3>& pauli() {
    static const std::array<Eigen::Matrix2cd, 3> sigmas = [] {
        using C = std::complex<double>;
        std::array<Eigen::Matrix2cd, 3> s;
        s[0] << C(0, 0), C(1, 0), C(1, 0), C(0, 0);
        s[1] << C(0, 0), C(0, -1), C(0, 1), C(0, 0);
        s[2] << C(1, 0), C(0, 0), C(0, 0), C(-1, 0);
        return s;
    }();
    return sigmas;
}

DensityMatrix bloch_to_density(const BlochVector& w) {
    using C = std::complex<double>;
    DensityMatrix d;
    d.m << C(0.5 * (1.0 + w.z), 0.0), C(0.5 * w.x, -0.5 * w.y),
           C(0.5 * w.x, 0.5 * w.y), C(0.5 * (1.0 - w.z), 0.0);
    return d;
}

BlochVector density_to_bloch(const DensityMatrix& d) {
    constexpr double tol = 1e-10;
    if ((d.m - d.m.adjoint()).cwiseAbs().maxCoeff() > tol) {
        throw Error(ErrorCode::Domain, "matrix is not Hermitian");
    }
    if (std::abs(d.m.trace() - std::complex<double>(1.0, 0.0)) > tol) {
        throw Error(ErrorCode::Domain, "matrix trace is not 1");
    }
    const auto& s = pauli();
    return {(d.m * s[0]).trace().real(), (d.m * s[1]).trace().real(), (d.m * s[2]).trace().real()};
}

}  // namespace qcap
