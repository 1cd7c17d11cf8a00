#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "qcap/capacity.hpp"
#include "qcap/channel_spec.hpp"

namespace qcap {

std::optional<SolveMethod> parse_solve_method(const std::string& name);

struct CapacityReport {
    ChannelParams channel;
    CapacityResult result;
    std::optional<CapacityResult> oracle;  // present with --verify
    double seconds = 0.0;

    double verify_gap() const;  // |C1 - oracle C1|, NaN without an oracle
};

// Oracle settings used by --verify.
inline constexpr int kVerifyStates = 4;
inline constexpr int kVerifyRestarts = 20;

CapacityReport run_capacity(const ChannelParams& p, SolveMethod method, std::uint64_t seed, bool verify);

/// Human-readable report; capacities to 4 decimals ("C1 = 0.1365").
void write_capacity_text(std::ostream& os, const CapacityReport& report);
nlohmann::json capacity_json(const CapacityReport& report);

/// CSV with header "x,C1".
void write_sweep_csv(std::ostream& os, std::span<const std::pair<double, double>> rows);

struct SymmetryCheck {
    double max_deviation = 0.0;
    int pairs = 0;
};

/// Two-Pauli identity C1(1/3 - a) = C1(1/3 + 2a) for every grid point
/// x = 1/3 - a below 1/3 whose partner lies in [0, 1].
SymmetryCheck check_two_pauli_symmetry(std::span<const double> xs);

std::vector<double> linspace(double from, double to, int points);

}  // namespace qcap
