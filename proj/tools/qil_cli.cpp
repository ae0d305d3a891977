// Command-line front end: property suite plus the holevo / dpi / zeroth /
// cascade experiments, with JSON reports and CSV trajectories.
//
// Exit codes: 0 pass, 1 property violation, 2 usage or configuration error.
// All randomness flows from --seed; runs with equal flags are byte-identical.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "qil/channel.hpp"
#include "qil/protocols.hpp"
#include "qil/rng.hpp"
#include "qil/suite.hpp"

namespace {

using nlohmann::json;

// write-to-temp-then-rename so partially written reports never appear
void write_file(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open '" + tmp + "' for writing");
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

void emit(const std::optional<std::string>& out, const json& report) {
    const std::string text = report.dump(2) + "\n";
    if (out)
        write_file(*out, text);
    else
        std::cout << text;
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read '" + path + "'");
    return json::parse(in);
}

std::string sibling_csv_path(const std::string& json_path) {
    std::filesystem::path p(json_path);
    p.replace_extension(".csv");
    return p.string();
}

struct CommonFlags {
    std::uint64_t seed = 0;
    double tol = 1e-9;
    std::optional<std::string> out;
    std::optional<std::size_t> max_dim;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--seed", f.seed, "Base seed; all randomness derives from it");
    cmd->add_option("--tol", f.tol, "Numerical tolerance for pass/fail margins")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", f.out, "Write the JSON report here instead of stdout");
    cmd->add_option("--max-dim", f.max_dim, "Override the total-dimension cap");
}

void apply_max_dim(const CommonFlags& f) {
    if (f.max_dim) qil::set_max_total_dim(*f.max_dim);
}

int exit_code(bool pass) { return pass ? 0 : 1; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"directed-entanglement simulation and verification toolkit"};
    app.require_subcommand(1);

    CommonFlags verify_f, holevo_f, dpi_f, zeroth_f, cascade_f;

    auto* verify = app.add_subcommand("verify", "Run the randomized property suite");
    std::size_t verify_trials = 0;  // 0 = per-property defaults
    add_common(verify, verify_f);
    verify->add_option("--trials", verify_trials, "Trials per property (0 keeps defaults)");

    auto* holevo = app.add_subcommand("holevo", "Preparation/transmission/measurement experiment");
    std::string ensemble_path, holevo_channel_path;
    add_common(holevo, holevo_f);
    holevo->add_option("--ensemble", ensemble_path, "Ensemble JSON")->required();
    holevo->add_option("--channel", holevo_channel_path, "Channel JSON")->required();

    auto* dpi = app.add_subcommand("dpi", "Two-channel data processing chain");
    std::vector<std::string> dpi_channel_paths;
    add_common(dpi, dpi_f);
    dpi->add_option("--channel", dpi_channel_paths, "Channel JSON (repeat for the second stage)")
        ->required()
        ->expected(1, 2);

    auto* zeroth = app.add_subcommand("zeroth", "Randomized two-system entropy monotonicity check");
    std::size_t zeroth_trials = 500;
    add_common(zeroth, zeroth_f);
    zeroth->add_option("--trials", zeroth_trials, "Number of randomized couplings")
        ->check(CLI::PositiveNumber);

    auto* cascade = app.add_subcommand("cascade", "Sequential-coupling relaxation trajectory");
    std::string cascade_path;
    add_common(cascade, cascade_f);
    cascade->add_option("--cascade", cascade_path, "Cascade config JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;  // --help exits 0, bad usage exits 2
    }

    try {
        if (verify->parsed()) {
            if (verify->count("--trials") && verify_trials == 0)
                throw std::invalid_argument("--trials must be >= 1");
            apply_max_dim(verify_f);
            qil::SuiteReport rep =
                qil::run_suite(qil::default_suite(verify_f.seed, verify_trials, verify_f.tol));
            emit(verify_f.out, rep.to_json());
            return exit_code(rep.pass);
        }
        if (holevo->parsed()) {
            apply_max_dim(holevo_f);
            qil::Ensemble ens = qil::Ensemble::from_json(load_json(ensemble_path));
            qil::Channel ch = qil::Channel::from_json(load_json(holevo_channel_path));
            qil::HolevoReport rep =
                qil::simulate_classical_communication(ens, ch, {.target = "Q"}, holevo_f.tol);
            emit(holevo_f.out, rep.to_json());
            return exit_code(rep.pass);
        }
        if (dpi->parsed()) {
            apply_max_dim(dpi_f);
            qil::Channel ch1 = qil::Channel::from_json(load_json(dpi_channel_paths[0]));
            qil::Channel ch2 = dpi_channel_paths.size() > 1
                                   ? qil::Channel::from_json(load_json(dpi_channel_paths[1]))
                                   : qil::preset_channel("identity", 0.0, ch1.dim_out());
            qil::SystemRegistry reg({qil::SystemEntry::physical("Q", ch1.dim_in())});
            qil::Rng rng(dpi_f.seed);
            qil::DensityMatrix rho = qil::random_density_matrix(reg, ch1.dim_in(), rng);
            qil::DpiReport rep = qil::simulate_dpi_chain(rho, ch1, ch2, dpi_f.tol);
            json j = rep.to_json();
            j["seed"] = dpi_f.seed;
            emit(dpi_f.out, j);
            return exit_code(rep.pass);
        }
        if (zeroth->parsed()) {
            apply_max_dim(zeroth_f);
            qil::PropertyCheckConfig cfg;
            cfg.id = qil::PropertyId::zeroth;
            cfg.trials = zeroth_trials;
            cfg.seed = zeroth_f.seed;
            cfg.tolerance = zeroth_f.tol;
            qil::PropertyResult res = qil::check_property(cfg);
            emit(zeroth_f.out, res.to_json());
            return exit_code(res.violations == 0 && res.error.empty());
        }
        if (cascade->parsed()) {
            apply_max_dim(cascade_f);
            qil::CascadeConfig cfg = qil::CascadeConfig::from_json(load_json(cascade_path));
            qil::CascadeReport rep = qil::simulate_cascade(cfg, "B", cascade_f.tol);
            emit(cascade_f.out, rep.to_json());
            if (cascade_f.out) write_file(sibling_csv_path(*cascade_f.out), rep.trajectory_csv());
            return exit_code(rep.pass);
        }
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
