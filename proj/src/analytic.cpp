// Closed-form unital capacity and the two linear-channel solvers.

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/tools/toms748_solve.hpp>

#include "qcap/capacity.hpp"
#include "qcap/tolerances.hpp"

namespace qcap {

namespace {

constexpr double kUnitalTol = 1e-12;
constexpr double kZeroLambda = 1e-12;

// atanh(s)/s with its limit 1 at s = 0.
double atanh_over(double s) { return s < 1e-8 ? 1.0 + s * s / 3.0 : std::atanh(s) / s; }

CapacityResult two_point_result(const ChannelParams& p, const BlochVector& w_plus, const BlochVector& w_minus,
                                double p_plus, const BlochVector& v, Method method) {
    CapacityResult res;
    res.method = method;
    res.average_output = v;
    res.ensemble.items = {
        {p_plus, invert_channel(p, w_plus), w_plus},
        {1.0 - p_plus, invert_channel(p, w_minus), w_minus},
    };
    res.ensemble.recompute_average();
    res.capacity_bits = relative_entropy(w_plus, v);
    res.max_equal_distance_residual = equal_distance_residual(res.ensemble, res.capacity_bits);
    return res;
}

void require_interior_endpoint(double r, const char* which) {
    if (r >= 1.0 - NORM_TOL) {
        throw Error(ErrorCode::EndpointPure, std::string("segment endpoint ") + which + " is a pure state");
    }
}

}  // namespace

CapacityResult unital_capacity(const ChannelParams& p) {
    if (!is_unital(p, kUnitalTol)) {
        std::ostringstream os;
        os << "translation t has norm " << p.t.norm() << "; unital channels need t = 0";
        throw Error(ErrorCode::NotUnital, os.str());
    }
    int major = 0;
    for (int k = 1; k < 3; ++k) {
        if (std::abs(p.lambda[k]) > std::abs(p.lambda[major])) major = k;
    }
    BlochVector axis;
    axis[major] = 1.0;
    const BlochVector w_plus = apply_channel(p, axis);
    const BlochVector w_minus = apply_channel(p, -axis);

    CapacityResult res;
    res.method = Method::Unital;
    res.average_output = {};
    res.ensemble.items = {{0.5, axis, w_plus}, {0.5, -axis, w_minus}};
    res.ensemble.recompute_average();
    res.capacity_bits = 1.0 - von_neumann_entropy(std::min(std::abs(p.lambda[major]), 1.0));
    res.max_equal_distance_residual = equal_distance_residual(res.ensemble, res.capacity_bits);
    res.diagnostics.note = std::string("major axis ") + "xyz"[major];
    return res;
}

CapacityResult linear_capacity_axis_aligned(const ChannelParams& p) {
    if (std::abs(p.lambda.z) <= kZeroLambda) throw Error(ErrorCode::DegenerateSegment, "lambda_z = 0");
    if (std::abs(p.lambda.x) > kZeroLambda || std::abs(p.lambda.y) > kZeroLambda || std::abs(p.t.x) > kZeroLambda ||
        std::abs(p.t.y) > kZeroLambda) {
        throw Error(ErrorCode::Domain, "closed form needs a segment on the z axis");
    }
    // Signed endpoint coordinates on z.
    const double a = p.t.z + p.lambda.z;
    const double b = p.t.z - p.lambda.z;
    require_interior_endpoint(std::abs(a), "W+");
    require_interior_endpoint(std::abs(b), "W-");

    const double num = 0.5 * std::log((1.0 - a * a) / (1.0 - b * b)) + a * std::atanh(a) - b * std::atanh(b);
    const double q = std::tanh(num / (a - b));
    const double p_plus = (q - b) / (a - b);

    auto res = two_point_result(p, {0.0, 0.0, a}, {0.0, 0.0, b}, p_plus, {0.0, 0.0, q},
                                Method::LinearClosedForm);
    res.diagnostics.beta = (q - p.t.z) / p.lambda.z;
    return res;
}

LinearSolveState LinearSolveState::at(const ChannelParams& p, double beta) {
    LinearSolveState s;
    const double base = p.t.x * p.t.x + p.t.y * p.t.y;
    s.beta = beta;
    s.A = base + (p.t.z + p.lambda.z) * (p.t.z + p.lambda.z);
    s.B = base + (p.t.z + beta * p.lambda.z) * (p.t.z + beta * p.lambda.z);
    s.C = base + (p.t.z - p.lambda.z) * (p.t.z - p.lambda.z);
    s.r_plus = std::sqrt(s.A);
    s.r_minus = std::sqrt(s.C);
    s.q = std::sqrt(s.B);
    return s;
}

double linear_equation_residual(const ChannelParams& p, double beta) {
    const auto s = LinearSolveState::at(p, beta);
    const double lhs = 4.0 * p.lambda.z * (p.t.z + beta * p.lambda.z) * atanh_over(s.q);
    const double rhs = std::log1p(-s.A) - std::log1p(-s.C) + 2.0 * s.r_plus * std::atanh(s.r_plus) -
                       2.0 * s.r_minus * std::atanh(s.r_minus);
    return lhs - rhs;
}

CapacityResult linear_capacity_general(const ChannelParams& p_in) {
    if (count_nonzero_lambda(p_in, kZeroLambda) != 1) {
        if (count_nonzero_lambda(p_in, kZeroLambda) == 0) {
            throw Error(ErrorCode::DegenerateSegment, "all lambda are zero");
        }
        throw Error(ErrorCode::Domain, "linear solver needs exactly one nonzero lambda");
    }
    int axis = 0;
    for (int k = 0; k < 3; ++k)
        if (std::abs(p_in.lambda[k]) > kZeroLambda) axis = k;
    const auto perm = AxisPermutation::swap_with_z(axis);
    ChannelParams p = perm.forward(p_in);
    p.lambda.x = p.lambda.y = 0.0;

    const auto ends = LinearSolveState::at(p, 0.0);
    require_interior_endpoint(ends.r_plus, "W+");
    require_interior_endpoint(ends.r_minus, "W-");

    const double lo = -1.0 + 1e-9;
    const double hi = 1.0 - 1e-9;
    const double f_lo = linear_equation_residual(p, lo);
    const double f_hi = linear_equation_residual(p, hi);

    double beta = 0.0;
    if (f_lo == 0.0) {
        beta = lo;
    } else if (f_hi == 0.0) {
        beta = hi;
    } else {
        if ((f_lo > 0.0) == (f_hi > 0.0)) {
            std::ostringstream os;
            os << "segment equation residual keeps its sign on [-1, 1] (" << f_lo << ", " << f_hi << ")";
            throw Error(ErrorCode::NoBracket, os.str());
        }
        std::uintmax_t max_iter = 200;
        const auto f = [&](double b) { return linear_equation_residual(p, b); };
        const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, f_lo, f_hi,
                                                              boost::math::tools::eps_tolerance<double>(52), max_iter);
        const double fa = f(a);
        const double fb = f(b);
        beta = std::abs(fa) <= std::abs(fb) ? a : b;
    }

    const BlochVector w_plus{p.t.x, p.t.y, p.t.z + p.lambda.z};
    const BlochVector w_minus{p.t.x, p.t.y, p.t.z - p.lambda.z};
    const BlochVector v{p.t.x, p.t.y, p.t.z + beta * p.lambda.z};

    auto res = two_point_result(p_in, perm.backward(w_plus), perm.backward(w_minus), 0.5 * (1.0 + beta),
                                perm.backward(v), Method::LinearTranscendental);
    res.diagnostics.beta = beta;
    res.diagnostics.equation_residual = linear_equation_residual(p, beta);
    return res;
}

}  // namespace qcap
