#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qcap/bloch.hpp"

namespace qcap {

// Affine Bloch-ball map w_k -> t_k + lambda_k w_k in the frame where the
// linear part is diagonal.
struct ChannelParams {
    BlochVector t;
    BlochVector lambda{1.0, 1.0, 1.0};

    static ChannelParams identity() { return {}; }
};

struct KrausSet {
    std::vector<Eigen::Matrix2cd> ops;
};

enum class NamedChannel { Depolarizing, TwoPauli, AmplitudeDamping };

struct NamedChannelSpec {
    NamedChannel kind = NamedChannel::Depolarizing;
    double x = 1.0;  // for amplitude damping this is the damping parameter xi
};

enum class Plane { XY, XZ, YZ };

// Coordinates of the in-plane axes, e.g. XZ -> {0, 2}.
std::array<int, 2> plane_axes(Plane plane);
BlochVector embed_in_plane(Plane plane, double c1, double c2);

const char* to_string(NamedChannel kind);
const char* to_string(Plane plane);
std::optional<NamedChannel> parse_named_channel(const std::string& name);
std::optional<Plane> parse_plane(const std::string& name);

struct ChannelCheck {
    bool ok = true;
    std::string violation;  // empty when ok
    double max_image_norm = 0.0;
};

/// Necessary conditions for the ellipsoid to sit inside the Bloch ball:
/// |lambda_k| <= 1, |t_k| + |lambda_k| <= 1, and image norms <= 1 over
/// `samples` sphere points.
ChannelCheck check_channel(const ChannelParams& p, int samples = 1000);
/// Throws Error(InvalidChannel) naming the violated condition.
void validate_channel(const ChannelParams& p, int samples = 1000);

BlochVector apply_channel(const ChannelParams& p, const BlochVector& w_in);

/// A preimage of w_out. Axes with lambda_k = 0 receive the component that
/// makes the input pure, placed on the first such axis.
BlochVector invert_channel(const ChannelParams& p, const BlochVector& w_out);

ChannelParams named_channel(const NamedChannelSpec& spec);
KrausSet named_kraus(const NamedChannelSpec& spec);

/// Largest deviation of sum_i A_i^dagger A_i from the identity.
double kraus_completeness_error(const KrausSet& k);
/// Applies the operator-sum map to a 2x2 matrix.
Eigen::Matrix2cd apply_kraus(const KrausSet& k, const Eigen::Matrix2cd& rho);
ChannelParams kraus_to_krsw(const KrausSet& k);

BlochVector surface_point(const ChannelParams& p, const BlochVector& direction);

int count_nonzero_lambda(const ChannelParams& p, double tol = 1e-12);
bool is_unital(const ChannelParams& p, double tol = 1e-12);
/// t_x = t_y = 0 and |lambda_x| = |lambda_y|: the output set is a solid of
/// revolution about z.
bool has_z_rotational_symmetry(const ChannelParams& p, double tol = 1e-12);

// Axis relabelling used to bring a linear channel's nonzero lambda onto z.
struct AxisPermutation {
    std::array<int, 3> to_new{0, 1, 2};  // new coordinate k comes from old to_new[k]

    static AxisPermutation swap_with_z(int axis);
    BlochVector forward(const BlochVector& old_frame) const;
    BlochVector backward(const BlochVector& new_frame) const;
    ChannelParams forward(const ChannelParams& p) const;
};

}  // namespace qcap
