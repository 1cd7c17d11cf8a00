#include <gtest/gtest.h>

#include "qcap/capacity.hpp"
#include "qcap/oracle.hpp"

using namespace qcap;

namespace {

const ChannelParams kPlanar{{0.3, 0.1, 0}, {0.4, 0.5, 0}};

}  // namespace

TEST(oracle, pure_state_param) {
    const auto up = PureStateParam{1.0, 0.0}.to_bloch();
    EXPECT_NEAR(up.z, 1.0, 1e-15);
    const auto plus = PureStateParam{std::sqrt(0.5), 0.0}.to_bloch();
    EXPECT_NEAR(plus.x, 1.0, 1e-15);
    EXPECT_NEAR(plus.norm(), 1.0, 1e-15);
}

TEST(oracle, softmax_probabilities) {
    EnsembleParam e;
    e.states = {{1.0, 0.0}, {0.0, 0.0}};
    e.raw_weights = {0.0, 0.0};
    const auto p = e.probabilities();
    EXPECT_DOUBLE_EQ(p[0], 0.5);
    EXPECT_DOUBLE_EQ(p[1], 0.5);
    EXPECT_NEAR(chi_objective(ChannelParams::identity(), e), 1.0, 1e-14);
    const double s02 = von_neumann_entropy(0.2);
    EXPECT_NEAR(chi_objective({{0, 0, 0.2}, {0, 0, 0.4}}, e), s02 - 0.5 * (von_neumann_entropy(0.6) + s02), 1e-12);
}

TEST(oracle, planar_two_vs_four_states) {
    const auto two = brute_force_capacity(kPlanar, 2, 20, 1);
    const auto four = brute_force_capacity(kPlanar, 4, 20, 1);
    EXPECT_EQ(two.method, Method::BruteForce);
    EXPECT_NEAR(two.capacity_bits, 0.1994, 1e-4);
    EXPECT_NEAR(four.capacity_bits, two.capacity_bits, 1e-5);
    EXPECT_NEAR(four.capacity_bits, iterative_capacity(kPlanar).capacity_bits, 1e-5);
}

TEST(oracle, amplitude_damping_two_vs_four_states) {
    const auto p = named_channel({NamedChannel::AmplitudeDamping, 0.36});
    const double two = brute_force_capacity(p, 2, 20, 1).capacity_bits;
    const double four = brute_force_capacity(p, 4, 20, 1).capacity_bits;
    EXPECT_NEAR(two, 0.3600, 1e-4);
    EXPECT_NEAR(four, two, 1e-5);
}

TEST(oracle, identity_channel) {
    EXPECT_NEAR(brute_force_capacity(ChannelParams::identity(), 2, 10, 3).capacity_bits, 1.0, 1e-6);
}

TEST(oracle, deterministic_for_a_seed) {
    const auto a = brute_force_capacity(kPlanar, 3, 5, 42);
    const auto b = brute_force_capacity(kPlanar, 3, 5, 42);
    EXPECT_EQ(a.capacity_bits, b.capacity_bits);
    EXPECT_EQ(a.diagnostics.best_restart, b.diagnostics.best_restart);
    EXPECT_EQ(a.diagnostics.restarts, 5);
}

TEST(oracle, ensemble_is_consistent) {
    const auto r = brute_force_capacity(kPlanar, 4, 10, 7);
    double total = 0.0;
    for (const auto& s : r.ensemble.items) {
        total += s.prob;
        EXPECT_NEAR(s.input.norm(), 1.0, 1e-12);
        EXPECT_LT(distance(apply_channel(kPlanar, s.input), s.output), 1e-12);
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_NEAR(holevo_chi(r.ensemble), r.capacity_bits, 1e-12);
    EXPECT_NEAR(holevo_chi_divergence_form(r.ensemble), r.capacity_bits, 1e-10);
}

TEST(oracle, rejects_bad_arguments) {
    EXPECT_THROW(brute_force_capacity(kPlanar, 0, 5, 1), Error);
    EXPECT_THROW(brute_force_capacity(kPlanar, 5, 5, 1), Error);
}
