#pragma once

#include "relaylab/montecarlo.hpp"
#include "relaylab/system_config.hpp"

#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace relaylab::cli {

inline constexpr const char* kVersion = "relaylab 0.3.0";

enum ExitCode { kOk = 0, kConfigFailure = 1, kNumericFailure = 2, kValidationFailure = 3 };

// Config format: one `key = value` per line, `#` starts a comment. Keys are exact; unknown
// or repeated keys are errors. Errors carry the line number.
SystemConfig parse_config_text(const std::string& text);
SystemConfig parse_config(const std::string& path);

// Ordered key/value pairs, applied and then checked exactly as a config file would be.
using Settings = std::vector<std::pair<std::string, std::string>>;
SystemConfig build_config(const Settings& kv, const std::vector<int>& lines = {});

// "0, 10, 20", "[0,10,20]" or "start:step:stop" (stop included)
std::vector<double> parse_snr_grid(const std::string& s);

// Canonical key = value echo of a resolved config.
std::string echo_config(const SystemConfig& sys);

std::string format_number(double v);

inline const std::vector<std::string> kSweepColumns{
    "snr_db",     "outage_analytic", "outage_asymptotic", "outage_mc",     "outage_mc_ci",   "ber_analytic",
    "ber_mc",     "ber_mc_ci",       "capacity_analytic", "capacity_mc",   "capacity_mc_ci", "capacity_ceiling"};

struct Curve {
    std::string label;
    SystemConfig sys;
    std::vector<montecarlo::SweepPoint> points;
};

// '#' preamble (version, config echo, provenance), header, rows. A non-empty curve label adds a
// leading `curve` column. Returns false when any point failed numerically.
bool write_csv(std::ostream& os, const std::vector<Curve>& curves, const std::vector<std::string>& notes = {});

int cmd_sweep(const SystemConfig& sys, std::ostream& out, std::ostream& err);

// Figure definitions live in a versioned JSON table; `overrides` are applied on top of every curve.
struct Figure {
    int id = 0;
    std::string title;
    std::vector<std::string> calibration;  // how unstated figure parameters were chosen
    std::vector<std::pair<std::string, SystemConfig>> curves;
};
Figure load_figure(int id, const std::string& defaults_path, const Settings& overrides = {});
std::string defaults_version(const std::string& defaults_path);
std::vector<Curve> run_figure(const Figure& fig);
int cmd_figure(int id, const std::string& defaults_path, const Settings& overrides, std::ostream& out,
               std::ostream& err);

// Cross-engine checks on one config, one `check <name> snr_db=<x> PASS|FAIL ...` line each.
struct ValidateOptions {
    std::function<void(channel::HopStatistics&)> corrupt;  // fault injection for the analytic side
};
struct CheckResult {
    std::string name;
    double snr_db = 0.0;
    bool pass = false;
    std::string detail;
};
std::vector<CheckResult> validate(const SystemConfig& sys, const ValidateOptions& opt = {});
int cmd_validate(const SystemConfig& sys, const ValidateOptions& opt, std::ostream& out);
ValidateOptions fault(const std::string& name);  // "none" or "hop-coefficient"

// delta, sigma_tau^2 and zeta against IBO for every amplifier model.
int cmd_bussgang(const std::vector<double>& ibo_db, double sigma_sq, double smoothness, double phi0, double snr_db,
                 std::ostream& out);

}  // namespace relaylab::cli
