#include "qcap/report.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "qcap/oracle.hpp"

namespace qcap {

namespace {

nlohmann::json vec_json(const BlochVector& v) { return {v.x, v.y, v.z}; }

// Rounds away the sign of values that print as zero.
double tidy(double x) { return std::abs(x) < 5e-5 ? 0.0 : x; }

std::string fmt4(const BlochVector& v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(4) << '(' << tidy(v.x) << ", " << tidy(v.y) << ", " << tidy(v.z) << ')';
    return os.str();
}

nlohmann::json result_json(const CapacityResult& r) {
    nlohmann::json j;
    j["method"] = to_string(r.method);
    j["capacity_bits"] = r.capacity_bits;
    j["average_output"] = vec_json(r.average_output);
    j["iterations"] = r.iterations;
    j["max_equal_distance_residual"] = r.max_equal_distance_residual;
    nlohmann::json ens = nlohmann::json::array();
    for (const auto& s : r.ensemble.items) {
        ens.push_back({{"prob", s.prob}, {"input", vec_json(s.input)}, {"output", vec_json(s.output)}});
    }
    j["ensemble"] = ens;
    const auto& d = r.diagnostics;
    nlohmann::json diag{{"seed", d.seed}, {"evaluations", d.evaluations}};
    if (r.method == Method::Iterative) {
        diag["final_epsilon"] = d.final_epsilon;
        diag["dmax_history"] = d.dmax_history;
    }
    if (r.method == Method::LinearClosedForm || r.method == Method::LinearTranscendental) {
        diag["beta"] = d.beta;
        diag["equation_residual"] = d.equation_residual;
    }
    if (r.method == Method::BruteForce) {
        diag["restarts"] = d.restarts;
        diag["best_restart"] = d.best_restart;
        diag["restart_spread"] = d.restart_spread;
    }
    if (!d.note.empty()) diag["note"] = d.note;
    j["diagnostics"] = diag;
    return j;
}

}  // namespace

std::optional<SolveMethod> parse_solve_method(const std::string& name) {
    if (name == "auto") return SolveMethod::Auto;
    if (name == "unital") return SolveMethod::Unital;
    if (name == "linear") return SolveMethod::Linear;
    if (name == "iterative") return SolveMethod::Iterative;
    if (name == "brute") return SolveMethod::Brute;
    return std::nullopt;
}

double CapacityReport::verify_gap() const {
    if (!oracle) return std::numeric_limits<double>::quiet_NaN();
    return std::abs(result.capacity_bits - oracle->capacity_bits);
}

CapacityReport run_capacity(const ChannelParams& p, SolveMethod method, std::uint64_t seed, bool verify) {
    CapacityReport report;
    report.channel = p;
    IterConfig cfg;
    cfg.seed = seed;
    const auto t0 = std::chrono::steady_clock::now();
    report.result = solve_capacity(p, method, cfg);
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (verify) report.oracle = brute_force_capacity(p, kVerifyStates, kVerifyRestarts, seed);
    return report;
}

void write_capacity_text(std::ostream& os, const CapacityReport& report) {
    const CapacityResult& r = report.result;
    const auto flags = os.flags();
    const auto prec = os.precision();
    os << std::fixed << std::setprecision(4);
    os << "C1 = " << r.capacity_bits << '\n';
    os << "V = " << fmt4(r.average_output) << '\n';
    os << "method: " << to_string(r.method) << '\n';
    os << "ensemble:\n";
    os << "  " << std::setw(8) << "p" << "  " << std::setw(26) << std::left << "input" << "  output\n" << std::right;
    for (const auto& s : r.ensemble.items) {
        os << "  " << std::setw(8) << s.prob << "  " << std::setw(26) << std::left << fmt4(s.input) << std::right
           << "  " << fmt4(s.output) << '\n';
    }

    os << std::scientific << std::setprecision(2);
    os << "residuals:\n";
    os << "  max |D(out_i || V) - C1| = " << r.max_equal_distance_residual << '\n';
    if (r.method == Method::LinearClosedForm || r.method == Method::LinearTranscendental) {
        os << "  beta = " << std::fixed << std::setprecision(4) << r.diagnostics.beta << std::scientific
           << std::setprecision(2) << ", equation residual = " << r.diagnostics.equation_residual << '\n';
    }
    if (r.method == Method::Iterative) {
        os << "  iterations = " << r.iterations << ", final epsilon = " << r.diagnostics.final_epsilon << '\n';
    }
    if (r.method == Method::BruteForce) {
        os << "  restarts = " << r.diagnostics.restarts << ", restart spread = " << r.diagnostics.restart_spread
           << '\n';
    }
    if (!r.diagnostics.note.empty()) os << "  note: " << r.diagnostics.note << '\n';
    if (report.oracle) {
        os << std::fixed << std::setprecision(4) << "verify: brute-force C1 = " << report.oracle->capacity_bits
           << std::scientific << std::setprecision(2) << ", gap = " << report.verify_gap() << '\n';
    }
    os.flags(flags);
    os.precision(prec);
}

nlohmann::json capacity_json(const CapacityReport& report) {
    nlohmann::json j = result_json(report.result);
    j["channel"] = to_json(report.channel);
    j["seconds"] = report.seconds;
    if (report.oracle) {
        j["verify"] = {{"oracle", result_json(*report.oracle)}, {"gap", report.verify_gap()}};
    }
    return j;
}

void write_sweep_csv(std::ostream& os, std::span<const std::pair<double, double>> rows) {
    os << "x,C1\n";
    const auto old = os.precision(17);
    for (const auto& [x, c] : rows) os << x << ',' << c << '\n';
    os.precision(old);
}

SymmetryCheck check_two_pauli_symmetry(std::span<const double> xs) {
    SymmetryCheck out;
    for (double x : xs) {
        const double a = 1.0 / 3.0 - x;
        const double partner = 1.0 / 3.0 + 2.0 * a;
        if (!(a > 0.0) || partner > 1.0) continue;
        const double c1 = unital_capacity(named_channel({NamedChannel::TwoPauli, x})).capacity_bits;
        const double c2 = unital_capacity(named_channel({NamedChannel::TwoPauli, partner})).capacity_bits;
        out.max_deviation = std::max(out.max_deviation, std::abs(c1 - c2));
        ++out.pairs;
    }
    return out;
}

std::vector<double> linspace(double from, double to, int points) {
    if (points < 1) throw Error(ErrorCode::Domain, "need at least one grid point");
    std::vector<double> xs(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i) {
        xs[static_cast<std::size_t>(i)] = (points == 1) ? from : from + (to - from) * i / (points - 1);
    }
    return xs;
}

}  // namespace qcap
