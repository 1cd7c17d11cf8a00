#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qcap/capacity.hpp"
#include "qcap/oracle.hpp"

using namespace qcap;

namespace {

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected qcap::Error";
    return ErrorCode::Domain;
}

// Closed forms of the depolarizing and two-Pauli capacity curves.
double depolarizing_formula(double x) {
    const double a = std::abs((4 * x - 1) / 3);
    auto term = [](double s) { return s > 0 ? s * std::log2(s) : 0.0; };
    return 0.5 * (term(1 + a) + term(1 - a));
}

double two_pauli_formula(double x) {
    auto xlog = [](double s) { return s > 0 ? s * std::log2(s) : 0.0; };
    if (x <= 1.0 / 3.0) return 1 + xlog(x) + xlog(1 - x);
    return 0.5 * (xlog(1 + x) + xlog(1 - x));
}

const ChannelParams kSimpleLinear{{0, 0, 0.2}, {0, 0, 0.4}};
const ChannelParams kGeneralLinear{{0.1, 0.2, 0.3}, {0, 0, 0.4}};

const SignalState* find_input(const CapacityResult& r, const BlochVector& in) {
    for (const auto& s : r.ensemble.items)
        if (distance(s.input, in) < 1e-9) return &s;
    return nullptr;
}

}  // namespace

TEST(unital, named_curves_match_formulas) {
    for (int i = 0; i <= 100; ++i) {
        const double x = i / 100.0;
        EXPECT_NEAR(unital_capacity(named_channel({NamedChannel::Depolarizing, x})).capacity_bits,
                    depolarizing_formula(x), 1e-12);
        EXPECT_NEAR(unital_capacity(named_channel({NamedChannel::TwoPauli, x})).capacity_bits, two_pauli_formula(x),
                    1e-12);
    }
    EXPECT_NEAR(unital_capacity(named_channel({NamedChannel::TwoPauli, 0.25})).capacity_bits, 0.18872, 5e-6);
    EXPECT_NEAR(unital_capacity(named_channel({NamedChannel::Depolarizing, 0.25})).capacity_bits, 0.0, 1e-15);
    EXPECT_NEAR(unital_capacity(named_channel({NamedChannel::Depolarizing, 1.0})).capacity_bits, 1.0, 1e-15);
}

TEST(unital, two_pauli_symmetry) {
    for (double a : {0.05, 0.1, 0.15, 0.2}) {
        const double lo = unital_capacity(named_channel({NamedChannel::TwoPauli, 1.0 / 3 - a})).capacity_bits;
        const double hi = unital_capacity(named_channel({NamedChannel::TwoPauli, 1.0 / 3 + 2 * a})).capacity_bits;
        EXPECT_NEAR(lo, hi, 1e-12) << a;
    }
}

TEST(unital, ensemble_on_major_axis) {
    const auto r = unital_capacity({{0, 0, 0}, {0.2, -0.7, 0.5}});
    EXPECT_NEAR(r.capacity_bits, 1 - von_neumann_entropy(0.7), 1e-14);
    ASSERT_EQ(r.ensemble.items.size(), 2u);
    for (const auto& s : r.ensemble.items) {
        EXPECT_DOUBLE_EQ(s.prob, 0.5);
        EXPECT_NEAR(std::abs(s.input.y), 1.0, 0);
    }
    EXPECT_LT(r.average_output.norm(), 1e-15);
    EXPECT_EQ(code_of([] { unital_capacity(kSimpleLinear); }), ErrorCode::NotUnital);
}

TEST(linear, simple_channel_reference_values) {
    const auto r = linear_capacity_axis_aligned(kSimpleLinear);
    EXPECT_EQ(r.method, Method::LinearClosedForm);
    EXPECT_NEAR(r.average_output.z, 0.2125, 5e-5);
    EXPECT_NEAR(r.capacity_bits, 0.1246, 5e-5);
    const auto* plus = find_input(r, {0, 0, 1});
    const auto* minus = find_input(r, {0, 0, -1});
    ASSERT_TRUE(plus && minus);
    EXPECT_NEAR(plus->prob, 0.5156, 5e-4);
    EXPECT_NEAR(minus->prob, 0.4844, 5e-4);
    EXPECT_LT(r.max_equal_distance_residual, 1e-12);
}

TEST(linear, symmetric_segment) {
    const auto r = linear_capacity_axis_aligned({{0, 0, 0}, {0, 0, 0.4}});
    EXPECT_NEAR(r.average_output.z, 0.0, 1e-12);
    EXPECT_NEAR(r.capacity_bits, 1 - von_neumann_entropy(0.4), 1e-12);
    for (const auto& s : r.ensemble.items) EXPECT_NEAR(s.prob, 0.5, 1e-12);
    EXPECT_NEAR(linear_capacity_general({{0, 0, 0}, {0, 0, 0.4}}).diagnostics.beta, 0.0, 1e-12);
}

TEST(linear, general_channel_reference_values) {
    const auto r = linear_capacity_general(kGeneralLinear);
    EXPECT_EQ(r.method, Method::LinearTranscendental);
    EXPECT_NEAR(r.diagnostics.beta, 0.0534, 5e-4);
    EXPECT_NEAR(r.average_output.x, 0.1, 5e-4);
    EXPECT_NEAR(r.average_output.y, 0.2, 5e-4);
    EXPECT_NEAR(r.average_output.z, 0.3214, 5e-4);
    EXPECT_NEAR(r.capacity_bits, 0.1365, 5e-5);
    const auto* plus = find_input(r, {0, 0, 1});
    const auto* minus = find_input(r, {0, 0, -1});
    ASSERT_TRUE(plus && minus);
    EXPECT_NEAR(plus->prob, 0.5267, 5e-4);
    EXPECT_NEAR(minus->prob, 0.4733, 5e-4);
    EXPECT_LT(std::abs(linear_equation_residual(kGeneralLinear, r.diagnostics.beta)), 1e-10);
}

TEST(linear, general_agrees_with_closed_form) {
    for (double tz : {-0.3, 0.0, 0.2, 0.45}) {
        for (double lz : {0.1, 0.4, -0.5}) {
            const ChannelParams p{{0, 0, tz}, {0, 0, lz}};
            if (!check_channel(p).ok || std::abs(tz) + std::abs(lz) >= 1.0) continue;
            EXPECT_NEAR(linear_capacity_general(p).capacity_bits, linear_capacity_axis_aligned(p).capacity_bits,
                        1e-9);
        }
    }
}

TEST(linear, segment_along_other_axes) {
    // Relabelled copy of the general channel with the segment along x.
    const auto r = linear_capacity_general({{0.3, 0.2, 0.1}, {0.4, 0, 0}});
    EXPECT_NEAR(r.capacity_bits, 0.1365, 5e-5);
    EXPECT_NEAR(r.average_output.x, 0.3214, 5e-4);
    EXPECT_NEAR(r.average_output.z, 0.1, 1e-12);
}

TEST(linear, errors) {
    EXPECT_EQ(code_of([] { linear_capacity_axis_aligned({{0, 0, 0.3}, {0, 0, 0.7}}); }), ErrorCode::EndpointPure);
    EXPECT_EQ(code_of([] { linear_capacity_axis_aligned({{0, 0, 0.3}, {0, 0, 0}}); }),
              ErrorCode::DegenerateSegment);
    EXPECT_EQ(code_of([] { linear_capacity_general({{0, 0, 0.3}, {0.2, 0, 0.4}}); }), ErrorCode::Domain);
}

TEST(linear, matches_direct_equal_distance) {
    // At the reported beta both endpoints are equally far from V.
    const auto r = linear_capacity_general(kGeneralLinear);
    const BlochVector plus{0.1, 0.2, 0.7};
    const BlochVector minus{0.1, 0.2, -0.1};
    EXPECT_NEAR(relative_entropy(plus, r.average_output), relative_entropy(minus, r.average_output), 1e-12);
}

TEST(ensemble, recover_ensemble) {
    auto e = recover_ensemble(ChannelParams::identity(), {0, 0, 0},
                              std::vector<BlochVector>{{0, 0.8, 0}, {0, -0.8, 0}});
    ASSERT_EQ(e.items.size(), 2u);
    EXPECT_NEAR(e.items[0].prob, 0.5, 1e-12);

    const ChannelParams planar{{0.3, 0.1, 0}, {0.4, 0.5, 0}};
    BlochVector u1{-0.0207, -0.9998, 0};
    BlochVector u2{0.1215, 0.9926, 0};
    u1 *= 1.0 / u1.norm();
    u2 *= 1.0 / u2.norm();
    const BlochVector w1 = apply_channel(planar, u1);
    const BlochVector w2 = apply_channel(planar, u2);
    e = recover_ensemble(planar, 0.4869 * w1 + 0.5131 * w2, std::vector<BlochVector>{w1, w2});
    ASSERT_EQ(e.items.size(), 2u);
    EXPECT_NEAR(e.items[0].prob, 0.4869, 1e-3);
    EXPECT_NEAR(e.items[1].prob, 0.5131, 1e-3);

    e = recover_ensemble(kSimpleLinear, {0, 0, 0.2125}, std::vector<BlochVector>{{0, 0, 0.6}, {0, 0, -0.2}});
    EXPECT_NEAR(e.items[0].prob, 0.5156, 5e-4);
    EXPECT_NEAR(e.items[1].prob, 0.4844, 5e-4);

    EXPECT_EQ(code_of([] {
                  recover_ensemble(ChannelParams::identity(), {0.5, 0, 0},
                                   std::vector<BlochVector>{{0, 0.8, 0}, {0, -0.8, 0}});
              }),
              ErrorCode::NotInHull);
}

TEST(ensemble, holevo_chi) {
    SignalEnsemble single;
    single.items = {{1.0, {0, 0, 1}, {0, 0, 0.6}}};
    single.recompute_average();
    EXPECT_NEAR(holevo_chi(single), 0.0, 1e-15);

    SignalEnsemble twins;
    twins.items = {{0.5, {0, 0, 1}, {0, 0, 0.6}}, {0.5, {0, 0, 1}, {0, 0, 0.6}}};
    twins.recompute_average();
    EXPECT_NEAR(holevo_chi(twins), 0.0, 1e-15);

    SignalEnsemble optimal;
    optimal.items = {{0.5156, {0, 0, 1}, {0, 0, 0.6}}, {0.4844, {0, 0, -1}, {0, 0, -0.2}}};
    optimal.recompute_average();
    EXPECT_NEAR(holevo_chi(optimal), 0.1246, 5e-5);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    for (int i = 0; i < 200; ++i) {
        SignalEnsemble e;
        double total = 0;
        for (int k = 0; k < 3; ++k) {
            const double w = u(rng);
            total += w;
            e.items.push_back({w, {}, oracle::random_in_ball(rng)});
        }
        for (auto& s : e.items) s.prob /= total;
        e.recompute_average();
        const double chi = holevo_chi(e);
        EXPECT_NEAR(chi, holevo_chi_divergence_form(e), 1e-10);
        EXPECT_LE(chi, 1.0 + 1e-15);
        EXPECT_GE(chi, -1e-15);
    }
}

TEST(dispatch, auto_routes) {
    EXPECT_EQ(solve_capacity(named_channel({NamedChannel::TwoPauli, 0.3})).method, Method::Unital);
    EXPECT_EQ(solve_capacity(kSimpleLinear).method, Method::LinearClosedForm);
    EXPECT_EQ(solve_capacity(kGeneralLinear).method, Method::LinearTranscendental);
    EXPECT_EQ(solve_capacity({{0.3, 0.1, 0}, {0.4, 0.5, 0}}).method, Method::Iterative);

    const auto point = solve_capacity({{0.1, 0.2, 0.3}, {0, 0, 0}});
    EXPECT_EQ(point.capacity_bits, 0.0);

    // Pure segment endpoint: closed forms refuse, the search still works.
    const ChannelParams pure_end{{0, 0, 0.3}, {0, 0, 0.7}};
    const auto r = solve_capacity(pure_end);
    EXPECT_EQ(r.method, Method::Iterative);
    EXPECT_NEAR(r.capacity_bits, brute_force_capacity(pure_end, 4, 20, 1).capacity_bits, 1e-6);
}

TEST(dispatch, capacity_sweep) {
    const std::vector<double> xs{0.0, 0.25, 0.5, 1.0};
    const auto dep = capacity_sweep(NamedChannel::Depolarizing, xs);
    ASSERT_EQ(dep.size(), xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) EXPECT_NEAR(dep[i].second, depolarizing_formula(xs[i]), 1e-12);
    const auto ad = capacity_sweep(NamedChannel::AmplitudeDamping, std::vector<double>{0.36});
    EXPECT_NEAR(ad[0].second, 0.3600, 1e-4);
}
