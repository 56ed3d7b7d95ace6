#include "relaylab/cli.hpp"

#include "relaylab/channel.hpp"
#include "relaylab/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace relaylab::cli {

namespace {

const std::set<std::string> kKeys{"n_relays", "rank",        "rho1",    "rho2",  "doppler_hz", "delay_s", "scheme",
                                  "hpa",      "ibo_db",      "smoothness", "phi0", "modulation", "alpha", "beta",
                                  "snr_db",   "gamma_th_db", "samples", "seed",  "workers",    "fidelity"};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

double to_double(const std::string& key, const std::string& v, int line) {
    double x = 0.0;
    const auto* end = v.data() + v.size();
    const auto r = std::from_chars(v.data(), end, x);
    if (r.ec != std::errc() || r.ptr != end || !std::isfinite(x))
        throw ConfigError(key + ": expected a finite number, got '" + v + "'", line);
    return x;
}

std::uint64_t to_count(const std::string& key, const std::string& v, int line) {
    std::uint64_t n = 0;
    const auto* end = v.data() + v.size();
    const auto r = std::from_chars(v.data(), end, n);
    if (r.ec == std::errc() && r.ptr == end) return n;
    // allow 1e7 style counts
    const double x = to_double(key, v, line);
    if (x < 0.0 || x != std::floor(x) || x > 1.8e19)
        throw ConfigError(key + ": expected a non-negative integer, got '" + v + "'", line);
    return static_cast<std::uint64_t>(x);
}

int to_int(const std::string& key, const std::string& v, int line) {
    int n = 0;
    const auto* end = v.data() + v.size();
    const auto r = std::from_chars(v.data(), end, n);
    if (r.ec != std::errc() || r.ptr != end) throw ConfigError(key + ": expected an integer, got '" + v + "'", line);
    return n;
}

template <class E>
E pick(const std::string& key, const std::string& v, int line, std::initializer_list<std::pair<const char*, E>> opts) {
    std::string names;
    for (const auto& [n, e] : opts) {
        if (v == n) return e;
        names += names.empty() ? n : std::string(", ") + n;
    }
    throw ConfigError(key + ": expected one of {" + names + "}, got '" + v + "'", line);
}

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::vector<double> parse_snr_grid(const std::string& s0) {
    std::string s = trim(s0);
    if (!s.empty() && s.front() == '[' && s.back() == ']') s = trim(s.substr(1, s.size() - 2));
    std::vector<double> out;
    if (s.empty()) throw ConfigError("snr_db: empty grid");
    if (s.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(s);
        for (std::string p; std::getline(ss, p, ':');) parts.push_back(trim(p));
        if (parts.size() != 3) throw ConfigError("snr_db: range must be start:step:stop");
        const double a = to_double("snr_db", parts[0], 0), h = to_double("snr_db", parts[1], 0),
                     b = to_double("snr_db", parts[2], 0);
        if (!(h > 0.0) || b < a) throw ConfigError("snr_db: range needs step > 0 and stop >= start");
        const auto n = static_cast<long>(std::floor((b - a) / h + 1e-9));
        if (n > 100000) throw ConfigError("snr_db: range has too many points");
        for (long i = 0; i <= n; ++i) out.push_back(a + i * h);
        return out;
    }
    std::stringstream ss(s);
    for (std::string p; std::getline(ss, p, ',');) out.push_back(to_double("snr_db", trim(p), 0));
    return out;
}

SystemConfig build_config(const Settings& kv, const std::vector<int>& lines) {
    SystemConfig sys;
    std::map<std::string, int> seen;  // key -> line
    std::string modulation;
    std::optional<double> alpha, beta;
    bool rho2_set = false;
    for (std::size_t i = 0; i < kv.size(); ++i) {
        const auto& [key, v] = kv[i];
        const int line = i < lines.size() ? lines[i] : 0;
        if (!kKeys.count(key)) throw ConfigError("unknown key '" + key + "'", line);
        if (seen.count(key) && !lines.empty()) throw ConfigError("key '" + key + "' given twice", line);
        seen[key] = line;
        if (key == "n_relays") sys.n_relays = to_int(key, v, line);
        else if (key == "rank") sys.rank = to_int(key, v, line);
        else if (key == "rho1") sys.rho1 = to_double(key, v, line);
        else if (key == "rho2") sys.rho2 = to_double(key, v, line), rho2_set = true;
        else if (key == "doppler_hz") sys.doppler_hz = to_double(key, v, line);
        else if (key == "delay_s") sys.delay_s = to_double(key, v, line);
        else if (key == "scheme")
            sys.scheme = pick<relaying::Scheme>(key, v, line, {{"fg", relaying::Scheme::FG},
                                                               {"vgi", relaying::Scheme::VGI},
                                                               {"vgii", relaying::Scheme::VGII}});
        else if (key == "hpa")
            sys.hpa = pick<HpaKind>(key, v, line, {{"ideal", HpaKind::Ideal}, {"sel", HpaKind::Sel},
                                                   {"sspa", HpaKind::Sspa}, {"twta", HpaKind::Twta}});
        else if (key == "ibo_db") sys.ibo_db = to_double(key, v, line);
        else if (key == "smoothness") sys.smoothness = to_double(key, v, line);
        else if (key == "phi0") sys.phi0 = to_double(key, v, line);
        else if (key == "modulation") modulation = pick<std::string>(key, v, line, {{"bpsk", "bpsk"}, {"custom", "custom"}});
        else if (key == "alpha") alpha = to_double(key, v, line);
        else if (key == "beta") beta = to_double(key, v, line);
        else if (key == "snr_db") {
            try {
                sys.snr_db = parse_snr_grid(v);
            } catch (const ConfigError& e) {
                throw ConfigError(e.what(), line);
            }
        } else if (key == "gamma_th_db") sys.gamma_th_db = to_double(key, v, line);
        else if (key == "samples") sys.mc.samples = to_count(key, v, line);
        else if (key == "seed") sys.mc.seed = to_count(key, v, line);
        else if (key == "workers") sys.mc.workers = to_int(key, v, line);
        else if (key == "fidelity")
            sys.mc.fidelity = pick<Fidelity>(key, v, line, {{"surrogate", Fidelity::Surrogate}, {"full", Fidelity::Full}});
    }
    auto line_of = [&](const char* k) { return seen.count(k) ? seen[k] : 0; };

    if (sys.n_relays < 1) throw ConfigError("n_relays must be >= 1", line_of("n_relays"));
    if (sys.rank < 1 || sys.rank > sys.n_relays)
        throw ConfigError("rank k must satisfy 1 ≤ k ≤ N (k = " + std::to_string(sys.rank) +
                              ", N = " + std::to_string(sys.n_relays) + ")",
                          line_of("rank") ? line_of("rank") : line_of("n_relays"));

    const bool rho_path = seen.count("rho1") || seen.count("rho2");
    const bool doppler_path = seen.count("doppler_hz") || seen.count("delay_s");
    if (rho_path && doppler_path)
        throw ConfigError("give either rho1/rho2 or doppler_hz + delay_s, not both: exactly one specification path allowed",
                          std::max(line_of("doppler_hz"), line_of("delay_s")));
    if (doppler_path) {
        if (!sys.doppler_hz || !sys.delay_s)
            throw ConfigError("doppler_hz and delay_s must be given together",
                              std::max(line_of("doppler_hz"), line_of("delay_s")));
        try {
            sys.rho1 = sys.rho2 = channel::jakes_rho(*sys.doppler_hz, *sys.delay_s);
        } catch (const DomainError& e) {
            throw ConfigError(e.what(), line_of("doppler_hz"));
        }
    } else if (!rho2_set) {
        sys.rho2 = sys.rho1;
    }
    for (const char* k : {"rho1", "rho2"}) {
        const double r = std::string(k) == "rho1" ? sys.rho1 : sys.rho2;
        if (!(r >= 0.0 && r <= 1.0)) throw ConfigError(std::string(k) + " must lie in [0, 1]", line_of(k));
    }

    if (modulation == "custom") {
        if (!alpha || !beta) throw ConfigError("modulation = custom needs alpha and beta", line_of("modulation"));
        sys.modulation = {*alpha, *beta};
    } else if (alpha || beta) {
        if (modulation == "bpsk")
            throw ConfigError("alpha/beta conflict with modulation = bpsk; use modulation = custom",
                              std::max(line_of("alpha"), line_of("beta")));
        if (!alpha || !beta) throw ConfigError("alpha and beta must be given together", std::max(line_of("alpha"), line_of("beta")));
        sys.modulation = {*alpha, *beta};
    }
    if (!(sys.modulation.alpha > 0.0) || !(sys.modulation.beta > 0.0))
        throw ConfigError("alpha and beta must be > 0", std::max(line_of("alpha"), line_of("beta")));

    if (seen.count("smoothness") && sys.hpa != HpaKind::Sspa)
        throw ConfigError("smoothness applies only to hpa = sspa", line_of("smoothness"));
    if (seen.count("phi0") && sys.hpa != HpaKind::Twta)
        throw ConfigError("phi0 applies only to hpa = twta", line_of("phi0"));
    if (!(sys.smoothness > 0.0)) throw ConfigError("smoothness must be > 0", line_of("smoothness"));
    if (sys.snr_db.empty()) throw ConfigError("snr_db is required");
    if (sys.mc.samples < 1) throw ConfigError("samples must be >= 1", line_of("samples"));
    if (sys.mc.workers < 1) throw ConfigError("workers must be >= 1", line_of("workers"));

    try {
        sys.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    return sys;
}

SystemConfig parse_config_text(const std::string& text) {
    Settings kv;
    std::vector<int> lines;
    std::stringstream ss(text);
    int n = 0;
    for (std::string raw; std::getline(ss, raw);) {
        ++n;
        const std::string s = trim(raw.substr(0, raw.find('#')));
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw ConfigError("expected 'key = value', got '" + s + "'", n);
        const std::string key = trim(s.substr(0, eq)), value = trim(s.substr(eq + 1));
        if (key.empty()) throw ConfigError("missing key before '='", n);
        if (value.empty()) throw ConfigError("missing value for '" + key + "'", n);
        kv.emplace_back(key, value);
        lines.push_back(n);
    }
    return build_config(kv, lines);
}

SystemConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_config_text(ss.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

std::string echo_config(const SystemConfig& sys) {
    std::ostringstream os;
    auto kv = [&](const std::string& k, const std::string& v) { os << k << " = " << v << '\n'; };
    kv("n_relays", std::to_string(sys.n_relays));
    kv("rank", std::to_string(sys.rank));
    if (sys.doppler_hz && sys.delay_s) {
        kv("doppler_hz", format_number(*sys.doppler_hz));
        kv("delay_s", format_number(*sys.delay_s));
    }
    kv("rho1", format_number(sys.rho1));
    kv("rho2", format_number(sys.rho2));
    kv("scheme", relaying::to_string(sys.scheme));
    kv("hpa", to_string(sys.hpa));
    kv("ibo_db", format_number(sys.ibo_db));
    if (sys.hpa == HpaKind::Sspa) kv("smoothness", format_number(sys.smoothness));
    if (sys.hpa == HpaKind::Twta) kv("phi0", format_number(sys.phi0));
    const bool bpsk = sys.modulation.alpha == 1.0 && sys.modulation.beta == 1.0;
    kv("modulation", bpsk ? "bpsk" : "custom");
    kv("alpha", format_number(sys.modulation.alpha));
    kv("beta", format_number(sys.modulation.beta));
    std::string grid;
    for (double s : sys.snr_db) grid += (grid.empty() ? "" : ", ") + format_number(s);
    kv("snr_db", grid);
    kv("gamma_th_db", format_number(sys.gamma_th_db));
    kv("samples", std::to_string(sys.mc.samples));
    kv("seed", std::to_string(sys.mc.seed));
    // workers left out: results do not depend on them
    kv("fidelity", to_string(sys.mc.fidelity));
    return os.str();
}

}  // namespace relaylab::cli
