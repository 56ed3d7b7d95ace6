#include "relaylab/cli.hpp"
#include "relaylab/error.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace relaylab;

namespace {

cli::Settings parse_sets(const std::vector<std::string>& sets) {
    cli::Settings kv;
    for (const auto& s : sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + s + "'");
        kv.emplace_back(s.substr(0, eq), s.substr(eq + 1));
    }
    return kv;
}

// stdout unless a path was given
template <class F>
int with_output(const std::string& path, F&& f) {
    if (path.empty()) return f(std::cout);
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        std::cerr << "error: cannot write '" << path << "'\n";
        return cli::kConfigFailure;
    }
    return f(os);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dual-hop AF relaying with ORS, outdated CSI and nonlinear amplifiers: closed forms and Monte Carlo"};
    app.set_version_flag("--version", cli::kVersion);
    app.require_subcommand(1);

    std::string config, out_path, defaults = RELAYLAB_FIGURE_DEFAULTS, fault = "none", coupling = "physical";
    std::vector<std::string> sets;
    int fig_id = 0;
    int workers = 0;
    std::uint64_t samples = 0;

    auto add_common = [&](CLI::App* c) {
        c->add_option("-o,--output", out_path, "write CSV here instead of stdout");
        c->add_option("--workers", workers, "override the worker count")->check(CLI::PositiveNumber);
        c->add_option("--samples", samples, "override the trial count")->check(CLI::PositiveNumber);
    };

    auto* sweep = app.add_subcommand("sweep", "analytic and MC values over the config's SNR grid, as CSV");
    sweep->add_option("config", config, "config file (key = value)")->required();
    sweep->add_option("--coupling", coupling, "MC hop coupling: physical or independent (diagnostic)")
        ->check(CLI::IsMember({"physical", "independent"}));
    add_common(sweep);

    auto* figure = app.add_subcommand("figure", "reproduce one of Figs. 3-10 with the versioned defaults");
    figure->add_option("id", fig_id, "figure number")->required()->check(CLI::Range(3, 10));
    figure->add_option("--defaults", defaults, "figure defaults table (JSON)");
    figure->add_option("--set", sets, "override a config key on every curve, key=value");
    add_common(figure);

    auto* validate = app.add_subcommand("validate", "cross-engine checks, one PASS/FAIL line each");
    validate->add_option("config", config, "config file (key = value)")->required();
    validate->add_option("--inject-fault", fault, "corrupt the analytic side on purpose: none, hop-coefficient");
    add_common(validate);

    double sigma_sq = 1.0, smoothness = 1.0, phi0 = 0.0, snr = 20.0;
    std::string ibo_grid = "0:1:20";
    auto* bussgang = app.add_subcommand("bussgang", "delta, sigma_tau^2 and zeta against IBO");
    bussgang->add_option("--ibo-db", ibo_grid, "list or start:step:stop");
    bussgang->add_option("--sigma-sq", sigma_sq, "amplifier input power")->check(CLI::PositiveNumber);
    bussgang->add_option("--smoothness", smoothness, "SSPA smoothness")->check(CLI::PositiveNumber);
    bussgang->add_option("--phi0", phi0, "TWTA AM/PM constant (rad)");
    bussgang->add_option("--snr-db", snr, "mean hop-1 SNR for zeta");
    bussgang->add_option("-o,--output", out_path, "write CSV here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? cli::kOk : cli::kConfigFailure;
    }

    try {
        auto apply_common = [&](SystemConfig& s) {
            if (workers) s.mc.workers = workers;
            if (samples) s.mc.samples = samples;
        };
        if (*sweep) {
            auto sys = cli::parse_config(config);
            apply_common(sys);
            sys.mc.coupling = coupling == "independent" ? Coupling::Independent : Coupling::Physical;
            return with_output(out_path, [&](std::ostream& os) { return cli::cmd_sweep(sys, os, std::cerr); });
        }
        if (*figure) {
            auto kv = parse_sets(sets);
            if (workers) kv.emplace_back("workers", std::to_string(workers));
            if (samples) kv.emplace_back("samples", std::to_string(samples));
            return with_output(out_path,
                               [&](std::ostream& os) { return cli::cmd_figure(fig_id, defaults, kv, os, std::cerr); });
        }
        if (*validate) {
            auto sys = cli::parse_config(config);
            apply_common(sys);
            const auto opt = cli::fault(fault);
            return with_output(out_path, [&](std::ostream& os) { return cli::cmd_validate(sys, opt, os); });
        }
        if (*bussgang) {
            const auto grid = cli::parse_snr_grid(ibo_grid);
            return with_output(out_path, [&](std::ostream& os) {
                return cli::cmd_bussgang(grid, sigma_sq, smoothness, phi0, snr, os);
            });
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return cli::kConfigFailure;
    } catch (const DomainError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return cli::kConfigFailure;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return cli::kNumericFailure;
    }
    return cli::kOk;
}
