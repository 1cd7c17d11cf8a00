#include "qcap/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qcap/error.hpp"
#include "qcap/tolerances.hpp"

namespace qcap {

namespace {

using C = std::complex<double>;

void check_parameter(double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        std::ostringstream os;
        os << "channel parameter " << x << " outside [0, 1]";
        throw Error(ErrorCode::Domain, os.str());
    }
}

// Deterministic, roughly uniform points on the unit sphere.
BlochVector fibonacci_point(int i, int n) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    const double z = 1.0 - 2.0 * (i + 0.5) / n;
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    return {rho * std::cos(phi), rho * std::sin(phi), z};
}

}  // namespace

std::array<int, 2> plane_axes(Plane plane) {
    switch (plane) {
        case Plane::XY: return {0, 1};
        case Plane::XZ: return {0, 2};
        case Plane::YZ: return {1, 2};
    }
    return {0, 1};
}

BlochVector embed_in_plane(Plane plane, double c1, double c2) {
    BlochVector w;
    const auto [a, b] = plane_axes(plane);
    w[a] = c1;
    w[b] = c2;
    return w;
}

const char* to_string(NamedChannel kind) {
    switch (kind) {
        case NamedChannel::Depolarizing: return "depolarizing";
        case NamedChannel::TwoPauli: return "two_pauli";
        case NamedChannel::AmplitudeDamping: return "amplitude_damping";
    }
    return "?";
}

const char* to_string(Plane plane) {
    switch (plane) {
        case Plane::XY: return "xy";
        case Plane::XZ: return "xz";
        case Plane::YZ: return "yz";
    }
    return "?";
}

std::optional<NamedChannel> parse_named_channel(const std::string& name) {
    if (name == "depolarizing") return NamedChannel::Depolarizing;
    if (name == "two_pauli") return NamedChannel::TwoPauli;
    if (name == "amplitude_damping") return NamedChannel::AmplitudeDamping;
    return std::nullopt;
}

std::optional<Plane> parse_plane(const std::string& name) {
    std::string s = name;
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "xy") return Plane::XY;
    if (s == "xz") return Plane::XZ;
    if (s == "yz") return Plane::YZ;
    return std::nullopt;
}

ChannelCheck check_channel(const ChannelParams& p, int samples) {
    constexpr double tol = 1e-12;
    ChannelCheck out;
    auto fail = [&](const std::string& why) {
        if (out.ok) {
            out.ok = false;
            out.violation = why;
        }
    };
    for (int k = 0; k < 3; ++k) {
        if (!std::isfinite(p.t[k]) || !std::isfinite(p.lambda[k])) {
            fail("non-finite channel parameter");
            return out;
        }
        const char axis = "xyz"[k];
        if (std::abs(p.lambda[k]) > 1.0 + tol) {
            fail(std::string("|lambda_") + axis + "| <= 1 violated");
        }
        if (std::abs(p.t[k]) + std::abs(p.lambda[k]) > 1.0 + tol) {
            fail(std::string("|t_") + axis + "| + |lambda_" + axis + "| <= 1 violated");
        }
    }
    for (int i = 0; i < samples; ++i) {
        out.max_image_norm = std::max(out.max_image_norm, apply_channel(p, fibonacci_point(i, samples)).norm());
    }
    if (out.max_image_norm > 1.0 + tol) {
        std::ostringstream os;
        os << "image of the Bloch sphere leaves the unit ball (max norm " << out.max_image_norm << ")";
        fail(os.str());
    }
    return out;
}

void validate_channel(const ChannelParams& p, int samples) {
    const auto check = check_channel(p, samples);
    if (!check.ok) throw Error(ErrorCode::InvalidChannel, check.violation);
}

BlochVector apply_channel(const ChannelParams& p, const BlochVector& w) {
    return {p.t.x + p.lambda.x * w.x, p.t.y + p.lambda.y * w.y, p.t.z + p.lambda.z * w.z};
}

BlochVector invert_channel(const ChannelParams& p, const BlochVector& w_out) {
    constexpr double zero_tol = 1e-9;
    BlochVector w_in;
    int first_free = -1;
    for (int k = 0; k < 3; ++k) {
        if (p.lambda[k] == 0.0) {
            if (std::abs(w_out[k] - p.t[k]) > zero_tol) {
                std::ostringstream os;
                os << "component " << "xyz"[k] << " = " << w_out[k] << " but the channel pins it to "
                   << p.t[k];
                throw Error(ErrorCode::NoPreimage, os.str());
            }
            if (first_free < 0) first_free = k;
        } else {
            w_in[k] = (w_out[k] - p.t[k]) / p.lambda[k];
        }
    }
    const double n2 = w_in.norm2();
    if (n2 > 1.0 + zero_tol) {
        std::ostringstream os;
        os << "preimage needs Bloch norm " << std::sqrt(n2) << " > 1";
        throw Error(ErrorCode::NotReachable, os.str());
    }
    if (n2 > 1.0 - 1e-12) {
        w_in *= 1.0 / std::sqrt(n2);
    } else if (first_free >= 0) {
        w_in[first_free] = std::sqrt(1.0 - n2);
    }
    return w_in;
}

ChannelParams named_channel(const NamedChannelSpec& spec) {
    check_parameter(spec.x);
    const double x = spec.x;
    ChannelParams p;
    switch (spec.kind) {
        case NamedChannel::Depolarizing: {
            const double l = (4.0 * x - 1.0) / 3.0;
            p.lambda = {l, l, l};
            break;
        }
        case NamedChannel::TwoPauli:
            p.lambda = {x, x, 2.0 * x - 1.0};
            break;
        case NamedChannel::AmplitudeDamping:
            p.t = {0.0, 0.0, 1.0 - x};
            p.lambda = {std::sqrt(x), std::sqrt(x), x};
            break;
    }
    return p;
}

KrausSet named_kraus(const NamedChannelSpec& spec) {
    check_parameter(spec.x);
    const double x = spec.x;
    const auto& s = pauli();
    const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    KrausSet k;
    switch (spec.kind) {
        case NamedChannel::TwoPauli: {
            const double a = std::sqrt((1.0 - x) / 2.0);
            k.ops = {std::sqrt(x) * id, a * s[0], C(0.0, -a) * s[1]};
            break;
        }
        case NamedChannel::Depolarizing: {
            const double a = std::sqrt((1.0 - x) / 3.0);
            k.ops = {std::sqrt(x) * id, a * s[0], C(0.0, -a) * s[1], a * s[2]};
            break;
        }
        case NamedChannel::AmplitudeDamping: {
            // Written in the basis where the fixed (ground) state is the z = +1
            // pole, so the ellipsoid is translated by +(1 - xi) along z.
            Eigen::Matrix2cd a1 = Eigen::Matrix2cd::Zero();
            a1(0, 0) = 1.0;
            a1(1, 1) = std::sqrt(x);
            Eigen::Matrix2cd a2 = Eigen::Matrix2cd::Zero();
            a2(0, 1) = std::sqrt(1.0 - x);
            k.ops = {a1, a2};
            break;
        }
    }
    return k;
}

double kraus_completeness_error(const KrausSet& k) {
    Eigen::Matrix2cd sum = Eigen::Matrix2cd::Zero();
    for (const auto& a : k.ops) sum += a.adjoint() * a;
    return (sum - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
}

Eigen::Matrix2cd apply_kraus(const KrausSet& k, const Eigen::Matrix2cd& rho) {
    Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
    for (const auto& a : k.ops) out += a * rho * a.adjoint();
    return out;
}

ChannelParams kraus_to_krsw(const KrausSet& k) {
    if (k.ops.empty()) throw Error(ErrorCode::InvalidChannel, "empty Kraus set");
    if (const double err = kraus_completeness_error(k); err > 1e-10) {
        std::ostringstream os;
        os << "sum A^dagger A differs from I by " << err;
        throw Error(ErrorCode::InvalidChannel, os.str());
    }
    const auto& s = pauli();
    const Eigen::Matrix2cd half_id = 0.5 * Eigen::Matrix2cd::Identity();

    ChannelParams p;
    const Eigen::Matrix2cd centre = apply_kraus(k, half_id);
    for (int j = 0; j < 3; ++j) p.t[j] = (centre * s[j]).trace().real();

    Eigen::Matrix3d linear;
    for (int col = 0; col < 3; ++col) {
        const Eigen::Matrix2cd image = apply_kraus(k, s[col]);
        for (int row = 0; row < 3; ++row) linear(row, col) = 0.5 * (image * s[row]).trace().real();
    }
    double off = 0.0;
    for (int row = 0; row < 3; ++row)
        for (int col = 0; col < 3; ++col)
            if (row != col) off = std::max(off, std::abs(linear(row, col)));
    if (off > 1e-9) {
        std::ostringstream os;
        os << "linear part has off-diagonal magnitude " << off << "; rotate the Kraus set first";
        throw Error(ErrorCode::NotDiagonal, os.str());
    }
    p.lambda = {linear(0, 0), linear(1, 1), linear(2, 2)};
    return p;
}

BlochVector surface_point(const ChannelParams& p, const BlochVector& direction) {
    return apply_channel(p, direction);
}

int count_nonzero_lambda(const ChannelParams& p, double tol) {
    int n = 0;
    for (int k = 0; k < 3; ++k) n += std::abs(p.lambda[k]) > tol ? 1 : 0;
    return n;
}

bool is_unital(const ChannelParams& p, double tol) { return p.t.norm() <= tol; }

bool has_z_rotational_symmetry(const ChannelParams& p, double tol) {
    return std::abs(p.t.x) <= tol && std::abs(p.t.y) <= tol &&
           std::abs(std::abs(p.lambda.x) - std::abs(p.lambda.y)) <= tol;
}

AxisPermutation AxisPermutation::swap_with_z(int axis) {
    AxisPermutation perm;
    std::swap(perm.to_new[axis], perm.to_new[2]);
    return perm;
}

BlochVector AxisPermutation::forward(const BlochVector& v) const {
    return {v[to_new[0]], v[to_new[1]], v[to_new[2]]};
}

BlochVector AxisPermutation::backward(const BlochVector& v) const {
    BlochVector out;
    for (int k = 0; k < 3; ++k) out[to_new[k]] = v[k];
    return out;
}

ChannelParams AxisPermutation::forward(const ChannelParams& p) const {
    return {forward(p.t), forward(p.lambda)};
}

}  // namespace qcap
