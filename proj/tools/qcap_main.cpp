#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qcap/capacity.hpp"
#include "qcap/channel_spec.hpp"
#include "qcap/figures.hpp"
#include "qcap/report.hpp"

namespace {

constexpr int kExitInvalidSpec = 2;
constexpr int kExitSolverFailure = 3;

// Thrown for anything wrong with the inputs; everything else that escapes a
// solver is a solver failure.
struct BadInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class T>
T require(std::optional<T> v, const std::string& what) {
    if (!v) throw BadInput("unknown " + what);
    return *v;
}

qcap::ChannelParams load_channel(const std::string& path) {
    try {
        return qcap::load_channel_spec(path).params;
    } catch (const qcap::Error& e) {
        throw BadInput(e.what());
    }
}

qcap::BlochVector parse_state(const std::vector<double>& v) {
    if (v.size() != 3) throw BadInput("state must have three components x,y,z");
    const qcap::BlochVector out{v[0], v[1], v[2]};
    if (!(out.norm() < 1.0)) throw BadInput("reference state must satisfy norm(v) < 1");
    return out;
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (path.empty()) return;
        file_.open(path, std::ios::binary);
        if (!file_) throw BadInput("cannot open output file " + path);
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Classical capacity (HSW, product inputs) of single-qubit channels"};
    app.require_subcommand(1);

    std::string channel_path;
    std::string method_name = "auto";
    std::uint64_t seed = 0;
    bool as_json = false;
    bool verify = false;
    std::string out_path;

    auto* cap = app.add_subcommand("capacity", "C1, optimal average output and signal ensemble of a channel");
    cap->add_option("--channel", channel_path, "channel spec JSON file")->required();
    cap->add_option("--method", method_name, "auto|unital|linear|iterative|brute")->capture_default_str();
    cap->add_option("--seed", seed, "seed for the randomised solvers")->capture_default_str();
    cap->add_flag("--json", as_json, "full-precision JSON instead of the text report");
    cap->add_flag("--verify", verify, "also run the brute-force oracle and report the gap");
    cap->add_option("--out", out_path, "output file (default stdout)");

    std::vector<double> v_components;
    std::vector<double> levels;
    std::string plane_name = "xy";
    int resolution = 512;
    auto* contour = app.add_subcommand("contour", "level sets of D(. || v) on a plane slice, as CSV polylines");
    contour->add_option("--v", v_components, "fixed second argument x,y,z")->delimiter(',')->required();
    contour->add_option("--levels", levels, "levels in bits, comma separated")->delimiter(',')->required();
    contour->add_option("--plane", plane_name, "xy|xz|yz")->capture_default_str();
    contour->add_option("--resolution", resolution, "grid cells per side")->capture_default_str();
    contour->add_option("--out", out_path, "output file (default stdout)");

    int samples = 720;
    auto* scan = app.add_subcommand("scan", "D(W || v) around the image of a great circle, as (theta, D) CSV");
    scan->add_option("--channel", channel_path, "channel spec JSON file")->required();
    scan->add_option("--v", v_components, "reference state x,y,z (default: the optimal average output)")
        ->delimiter(',');
    scan->add_option("--plane", plane_name, "xy|xz|yz")->capture_default_str();
    scan->add_option("--samples", samples, "points on the circle")->capture_default_str();
    scan->add_option("--method", method_name, "solver used for the default v")->capture_default_str();
    scan->add_option("--seed", seed, "seed for the randomised solvers")->capture_default_str();
    scan->add_option("--out", out_path, "output file (default stdout)");

    std::string kind_name;
    double from = 0.0;
    double to = 1.0;
    int points = 101;
    bool check_symmetry = false;
    auto* sweep = app.add_subcommand("sweep", "C1 of a named channel family over a parameter grid, as CSV");
    sweep->add_option("--kind", kind_name, "depolarizing|two_pauli|amplitude_damping")->required();
    sweep->add_option("--from", from, "first grid point")->capture_default_str();
    sweep->add_option("--to", to, "last grid point")->capture_default_str();
    sweep->add_option("--points", points, "number of grid points")->capture_default_str();
    sweep->add_flag("--check-symmetry", check_symmetry, "check C1(1/3 - a) = C1(1/3 + 2a) (two_pauli only)");
    sweep->add_option("--out", out_path, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalidSpec;
    }

    bool solving = false;
    try {
        if (cap->parsed()) {
            const auto method = require(qcap::parse_solve_method(method_name), "method '" + method_name + "'");
            const auto channel = load_channel(channel_path);
            Output out(out_path);
            solving = true;
            const auto report = qcap::run_capacity(channel, method, seed, verify);
            if (as_json) {
                out.stream() << qcap::capacity_json(report).dump(2) << '\n';
            } else {
                qcap::write_capacity_text(out.stream(), report);
            }
        } else if (contour->parsed()) {
            qcap::ContourRequest req;
            req.v = parse_state(v_components);
            req.levels = levels;
            req.plane = require(qcap::parse_plane(plane_name), "plane '" + plane_name + "'");
            req.resolution = resolution;
            for (double level : levels) {
                if (!(level > 0.0)) throw BadInput("contour levels must be > 0");
            }
            if (resolution < 2) throw BadInput("resolution must be at least 2");
            Output out(out_path);
            solving = true;
            const auto result = qcap::contour_polylines(req);
            qcap::write_contour_csv(out.stream(), result);
            for (double level : result.empty_levels) {
                std::cerr << "note: level " << level << " has no contour inside the unit disk\n";
            }
        } else if (scan->parsed()) {
            qcap::AngularScanRequest req;
            req.channel = load_channel(channel_path);
            req.plane = require(qcap::parse_plane(plane_name), "plane '" + plane_name + "'");
            req.samples = samples;
            if (samples < 8) throw BadInput("samples must be at least 8");
            std::optional<qcap::BlochVector> v;
            if (!v_components.empty()) v = parse_state(v_components);
            const auto method = require(qcap::parse_solve_method(method_name), "method '" + method_name + "'");
            Output out(out_path);
            solving = true;
            if (!v) {
                qcap::IterConfig cfg;
                cfg.seed = seed;
                v = qcap::solve_capacity(req.channel, method, cfg).average_output;
            }
            req.v = *v;
            qcap::write_scan_csv(out.stream(), qcap::angular_scan(req));
        } else if (sweep->parsed()) {
            const auto kind = require(qcap::parse_named_channel(kind_name), "channel kind '" + kind_name + "'");
            if (!(from >= 0.0 && to <= 1.0 && from <= to)) throw BadInput("sweep range must satisfy 0 <= from <= to <= 1");
            if (check_symmetry && kind != qcap::NamedChannel::TwoPauli) {
                throw BadInput("--check-symmetry applies to two_pauli only");
            }
            const auto xs = qcap::linspace(from, to, points);
            Output out(out_path);
            solving = true;
            qcap::write_sweep_csv(out.stream(), qcap::capacity_sweep(kind, xs));
            if (check_symmetry) {
                const auto check = qcap::check_two_pauli_symmetry(xs);
                std::cerr << "symmetry: " << check.pairs << " pairs, max |C1(1/3 - a) - C1(1/3 + 2a)| = "
                          << check.max_deviation << '\n';
                if (check.max_deviation > 1e-12) return kExitSolverFailure;
            }
        }
    } catch (const BadInput& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalidSpec;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return solving ? kExitSolverFailure : kExitInvalidSpec;
    }
    return 0;
}
