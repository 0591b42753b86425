// Command-line front end: classify | orbit | rate | drift | suite.
//
// Each subcommand reads an optional JSON config (--config) and then applies
// the command-line overrides on top of it. suite runs without a config.

#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "parashift/config.hpp"
#include "parashift/runner.hpp"

namespace {

parashift::ParseError bad_pair(const std::string& flag, const std::string& text) {
    return parashift::ParseError("flag " + flag + ": expected two comma-separated numbers, got '" +
                                 text + "'");
}

std::pair<double, double> parse_pair(const std::string& flag, const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw bad_pair(flag, text);
    try {
        std::size_t usedA = 0, usedB = 0;
        const double a = std::stod(text.substr(0, comma), &usedA);
        const std::string rest = text.substr(comma + 1);
        const double b = std::stod(rest, &usedB);
        if (usedA != comma || usedB != rest.size()) throw bad_pair(flag, text);
        return {a, b};
    } catch (const std::logic_error&) {
        throw bad_pair(flag, text);
    }
}

struct Overrides {
    std::string config_path;
    std::string out_dir;
    std::optional<long> horizon;
    std::optional<long> stride;
    std::optional<std::uint64_t> seed;
    std::string z0_text;
    std::string tau_text;
};

void add_common_flags(CLI::App& cmd, Overrides& ov, bool config_required) {
    Overrides* o = &ov;  // lambdas outlive this call; capture the stable address
    auto* config = cmd.add_option("--config", ov.config_path, "JSON config file");
    if (config_required) config->required();
    cmd.add_option("--out", ov.out_dir, "output directory for CSV files");
    cmd.add_option_function<long long>(
        "--n", [o](long long v) { o->horizon = static_cast<long>(v); }, "iteration horizon");
    cmd.add_option_function<long long>(
        "--stride", [o](long long v) { o->stride = static_cast<long>(v); },
        "CSV recording stride");
    cmd.add_option_function<unsigned long long>(
        "--seed", [o](unsigned long long v) { o->seed = static_cast<std::uint64_t>(v); },
        "random seed (suite)");
    cmd.add_option("--z0", ov.z0_text,
                   "start point \"x,y\" (half-plane; in rate mode the disk base point \"re,im\")");
    cmd.add_option("--tau", ov.tau_text, "Denjoy-Wolff point \"re,im\" on the unit circle");
}

parashift::ExperimentConfig build_config(parashift::ExperimentKind kind, const Overrides& ov) {
    parashift::ExperimentConfig cfg;
    if (!ov.config_path.empty()) {
        std::ifstream file(ov.config_path, std::ios::binary);
        if (!file) throw parashift::ParseError("cannot read config file " + ov.config_path);
        std::ostringstream text;
        text << file.rdbuf();
        cfg = parashift::parse_config(text.str());
    }
    cfg.kind = kind;  // the subcommand wins over the config's "experiment" field
    if (!ov.out_dir.empty()) cfg.out_dir = ov.out_dir;
    if (ov.horizon) cfg.horizon = *ov.horizon;
    if (ov.stride) cfg.stride = *ov.stride;
    if (ov.seed) cfg.seed = *ov.seed;
    if (!ov.z0_text.empty()) {
        const auto [a, b] = parse_pair("--z0", ov.z0_text);
        if (kind == parashift::ExperimentKind::rate)
            cfg.z_disk = {a, b};
        else
            cfg.z0 = {a, b};
    }
    if (!ov.tau_text.empty()) {
        const auto [re, im] = parse_pair("--tau", ov.tau_text);
        cfg.tau = {re, im};
    }
    parashift::validate_config(cfg);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"parabolic half-plane map experiments"};
    app.require_subcommand(1);

    struct Sub {
        parashift::ExperimentKind kind;
        CLI::App* cmd;
        Overrides ov;
    };
    Sub subs[] = {
        {parashift::ExperimentKind::classify,
         app.add_subcommand("classify", "moment-based finite/infinite shift verdict"), {}},
        {parashift::ExperimentKind::orbit,
         app.add_subcommand("orbit", "iterate one orbit and write its CSV + diagnostics"), {}},
        {parashift::ExperimentKind::rate,
         app.add_subcommand("rate", "disk-side gap decay n|g^n - tau| and its limit"), {}},
        {parashift::ExperimentKind::drift,
         app.add_subcommand("drift", "horizontal speed limit vs the analytic drift"), {}},
        {parashift::ExperimentKind::suite,
         app.add_subcommand("suite", "randomized classifier/orbit cross-validation"), {}},
    };
    for (auto& sub : subs)
        add_common_flags(*sub.cmd, sub.ov, sub.kind != parashift::ExperimentKind::suite);

    CLI11_PARSE(app, argc, argv);

    for (const auto& sub : subs) {
        if (!sub.cmd->parsed()) continue;
        try {
            const parashift::ExperimentConfig cfg = build_config(sub.kind, sub.ov);
            return parashift::run(cfg, std::cout, std::cerr);
        } catch (const parashift::Error& e) {
            std::cerr << e.name() << ": " << e.what() << "\n";
            return 1;
        }
    }
    return 1;
}
