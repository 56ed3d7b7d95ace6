#include "relaylab/cli.hpp"

#include "relaylab/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace relaylab::cli {

namespace {

using metrics::Provenance;

void comment_block(std::ostream& os, const std::string& prefix, const std::string& text) {
    std::istringstream ss(text);
    for (std::string l; std::getline(ss, l);) os << "# " << prefix << l << '\n';
}

// "closed-form (snr_db 10, 20); quadrature (snr_db 0)"
std::string provenance_summary(const std::vector<montecarlo::SweepPoint>& pts,
                               const metrics::Value montecarlo::SweepPoint::*field) {
    std::vector<std::pair<std::string, std::string>> groups;
    for (const auto& p : pts) {
        if (!p.error.empty()) continue;
        const auto& v = p.*field;
        const std::string name = std::isnan(v.value) ? "none" : metrics::to_string(v.provenance);
        auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == name; });
        if (it == groups.end()) it = groups.insert(groups.end(), {name, ""});
        it->second += (it->second.empty() ? "" : ", ") + format_number(p.snr_db);
    }
    if (groups.size() == 1) return groups.front().first;
    std::string s;
    for (const auto& [n, snrs] : groups) s += (s.empty() ? "" : "; ") + n + " (snr_db " + snrs + ")";
    return s;
}

std::string to_setting(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) return format_number(v.get<double>());
    if (v.is_array()) {
        std::string s;
        for (const auto& e : v) s += (s.empty() ? "" : ", ") + to_setting(e);
        return s;
    }
    throw ConfigError("figure defaults: unsupported value " + v.dump());
}

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read figure defaults '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

}  // namespace

bool write_csv(std::ostream& os, const std::vector<Curve>& curves, const std::vector<std::string>& notes) {
    const bool labelled = curves.size() > 1 || (!curves.empty() && !curves.front().label.empty());
    bool ok = true;
    os << "# " << kVersion << '\n';
    for (const auto& n : notes) os << "# " << n << '\n';
    for (const auto& c : curves) {
        const std::string pre = labelled ? "[" + c.label + "] " : "";
        comment_block(os, pre, echo_config(c.sys));
        os << "# " << pre << "provenance: outage_analytic = "
           << provenance_summary(c.points, &montecarlo::SweepPoint::outage)
           << "; outage_asymptotic = " << provenance_summary(c.points, &montecarlo::SweepPoint::outage_asymptotic)
           << "; ber_analytic = " << provenance_summary(c.points, &montecarlo::SweepPoint::ber)
           << "; capacity_analytic = " << provenance_summary(c.points, &montecarlo::SweepPoint::capacity)
           << "; capacity_ceiling = closed-form; *_mc = mc (" << to_string(c.sys.mc.fidelity) << ", "
           << to_string(c.sys.mc.coupling) << " coupling, 95% half-width in *_ci)\n";
        for (const auto& p : c.points) {
            for (const auto* v : {&p.outage, &p.outage_asymptotic, &p.ber})
                if (!v->note.empty() && !std::isnan(v->value))
                    os << "# " << pre << "note snr_db " << format_number(p.snr_db) << ": " << v->note << '\n';
            if (!p.error.empty()) {
                os << "# " << pre << "error snr_db " << format_number(p.snr_db) << ": " << p.error << '\n';
                ok = false;
            }
        }
    }
    if (labelled) os << "curve,";
    for (std::size_t i = 0; i < kSweepColumns.size(); ++i) os << (i ? "," : "") << kSweepColumns[i];
    os << '\n';
    const double nan = std::nan("");
    for (const auto& c : curves)
        for (const auto& p : c.points) {
            const bool e = !p.error.empty();
            if (labelled) os << c.label << ',';
            const double row[] = {p.snr_db,
                                  e ? nan : p.outage.value,
                                  e ? nan : p.outage_asymptotic.value,
                                  p.mc.outage.mean,
                                  p.mc.outage.half_width_95,
                                  e ? nan : p.ber.value,
                                  p.mc.ber.mean,
                                  p.mc.ber.half_width_95,
                                  e ? nan : p.capacity.value,
                                  p.mc.capacity.mean,
                                  p.mc.capacity.half_width_95,
                                  e ? nan : p.capacity_ceiling};
            for (std::size_t i = 0; i < std::size(row); ++i) os << (i ? "," : "") << format_number(row[i]);
            os << '\n';
        }
    return ok;
}

int cmd_sweep(const SystemConfig& sys, std::ostream& out, std::ostream& err) {
    try {
        const std::vector<Curve> c{{"", sys, montecarlo::run_sweep(sys, sys.mc, sys.snr_db)}};
        if (!write_csv(out, c)) {
            err << "error: numerical failure at one or more SNR points (see '# error' lines)\n";
            return kNumericFailure;
        }
        return kOk;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kConfigFailure;
    } catch (const NumericalError& e) {
        err << "error: " << e.what() << '\n';
        return kNumericFailure;
    }
}

std::string defaults_version(const std::string& path) { return read_json(path).value("version", "unversioned"); }

Figure load_figure(int id, const std::string& path, const Settings& overrides) {
    const auto j = read_json(path);
    const auto key = std::to_string(id);
    if (!j.contains("figures") || !j["figures"].contains(key))
        throw ConfigError("unknown figure " + key + " (defaults table has no entry)");
    const auto& f = j["figures"][key];
    Figure fig;
    fig.id = id;
    fig.title = f.value("title", "");
    for (const auto& c : f.value("calibration", nlohmann::json::array())) fig.calibration.push_back(c.get<std::string>());
    Settings base;
    for (const auto& [k, v] : f.at("base").items()) base.emplace_back(k, to_setting(v));
    for (const auto& c : f.at("curves")) {
        Settings kv = base;
        for (const auto& [k, v] : c.items())
            if (k != "label") kv.emplace_back(k, to_setting(v));
        kv.insert(kv.end(), overrides.begin(), overrides.end());
        try {
            fig.curves.emplace_back(c.at("label").get<std::string>(), build_config(kv));
        } catch (const ConfigError& e) {
            throw ConfigError("figure " + key + " curve " + c.value("label", "?") + ": " + e.what());
        }
    }
    return fig;
}

std::vector<Curve> run_figure(const Figure& fig) {
    std::vector<Curve> out;
    for (const auto& [label, sys] : fig.curves) out.push_back({label, sys, montecarlo::run_sweep(sys, sys.mc, sys.snr_db)});
    return out;
}

int cmd_figure(int id, const std::string& path, const Settings& overrides, std::ostream& out, std::ostream& err) {
    Figure fig;
    std::string version;
    try {
        fig = load_figure(id, path, overrides);
        version = defaults_version(path);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kConfigFailure;
    }
    std::vector<std::string> notes{"figure " + std::to_string(id) + ": " + fig.title,
                                   "figure defaults version " + version};
    for (const auto& c : fig.calibration) notes.push_back("calibration: " + c);
    try {
        if (!write_csv(out, run_figure(fig), notes)) {
            err << "error: numerical failure at one or more SNR points (see '# error' lines)\n";
            return kNumericFailure;
        }
        return kOk;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kConfigFailure;
    } catch (const NumericalError& e) {
        err << "error: " << e.what() << '\n';
        return kNumericFailure;
    }
}

ValidateOptions fault(const std::string& name) {
    if (name == "none") return {};
    if (name == "hop-coefficient") return {[](channel::HopStatistics& st) { st.U1[0] *= 1.25; }};
    throw ConfigError("unknown fault '" + name + "' (known: none, hop-coefficient)");
}

std::vector<CheckResult> validate(const SystemConfig& sys, const ValidateOptions& opt) {
    std::vector<CheckResult> out;
    auto check = [&](const std::string& name, double snr, bool pass, const std::string& detail) {
        out.push_back({name, snr, pass, detail});
    };
    auto fmt = [](double v) { return format_number(v); };

    // The closed forms treat the selected relay's hops as independent ordered marginals; with
    // several relays the MC reference is drawn the same way.
    McConfig mc = sys.mc;
    if (sys.n_relays > 1) mc.coupling = Coupling::Independent;
    const auto lanes = [&] {
        std::vector<montecarlo::Lane> l;
        for (double s : sys.snr_db) l.push_back(montecarlo::lane_of(sys, s));
        return l;
    }();
    const auto sim = montecarlo::simulate(montecarlo::shape_of(sys), lanes, mc);
    const double n = static_cast<double>(mc.samples);
    const double ceiling = metrics::capacity_ceiling(sys.bussgang(), sys.hpa_input_power);
    const bool vgi = sys.scheme == relaying::Scheme::VGI;

    std::vector<std::pair<double, double>> outage_curve;
    for (std::size_t i = 0; i < sys.snr_db.size(); ++i) {
        const double snr = sys.snr_db[i];
        const auto& m = sim[i];
        try {
            const auto f = sys.fading(snr);
            auto st = channel::hop_statistics(f);
            if (opt.corrupt) opt.corrupt(st);
            const double z = sys.zeta(snr), th = sys.gamma_th();

            const double po = metrics::outage(sys.scheme, th, f, st, z).value;
            outage_curve.emplace_back(snr, po);
            check("outage-range", snr, po >= 0.0 && po <= 1.0, "analytic=" + fmt(po));
            const double sig = std::sqrt(std::max(po * (1.0 - po), 1.0 / n) / n);
            const double tol_o = 3.0 * sig + (vgi ? 0.10 * po : 0.0);
            check("outage-vs-mc", snr, std::abs(m.outage.mean - po) <= tol_o,
                  "analytic=" + fmt(po) + " mc=" + fmt(m.outage.mean) + " tol=" + fmt(tol_o));

            const auto ber = metrics::ber_value(sys.scheme, sys.modulation, f, st, z);
            const double tol_b = std::max(1.5 * m.ber.half_width_95, 0.05 * ber.value);
            check("ber-vs-mc", snr, std::abs(m.ber.mean - ber.value) <= tol_b,
                  "analytic=" + fmt(ber.value) + " (" + metrics::to_string(ber.provenance) + ") mc=" + fmt(m.ber.mean) +
                      " tol=" + fmt(tol_b));

            const double cap = metrics::capacity(sys.scheme, f, st, z);
            const double tol_c = std::max(1.5 * m.capacity.half_width_95, (vgi ? 0.05 : 0.02) * cap);
            check("capacity-vs-mc", snr, std::abs(m.capacity.mean - cap) <= tol_c,
                  "analytic=" + fmt(cap) + " mc=" + fmt(m.capacity.mean) + " tol=" + fmt(tol_c));
            check("capacity-ceiling", snr, m.capacity.mean <= ceiling + m.capacity.half_width_95 && cap <= ceiling,
                  "analytic=" + fmt(cap) + " mc=" + fmt(m.capacity.mean) + " ceiling=" + fmt(ceiling));
        } catch (const std::exception& e) {
            check("analytic-evaluation", snr, false, e.what());
        }
    }
    std::sort(outage_curve.begin(), outage_curve.end());
    bool mono = true;
    for (std::size_t i = 1; i < outage_curve.size(); ++i)
        mono = mono && outage_curve[i].second <= outage_curve[i - 1].second * (1.0 + 1e-9) + 1e-15;
    check("outage-nonincreasing", std::nan(""), mono, std::to_string(outage_curve.size()) + " points");

    const auto model = sys.hpa_model();
    const bool has_closed = sys.hpa == HpaKind::Sel || (sys.hpa == HpaKind::Sspa && sys.smoothness == 1.0) ||
                            (sys.hpa == HpaKind::Twta && sys.phi0 == 0.0);
    if (has_closed) {
        const auto a = hpa::bussgang_closed_form(model, sys.hpa_input_power);
        const auto b = hpa::bussgang_numeric(model, sys.hpa_input_power);
        const double r1 = std::abs(a.delta / b.delta - 1.0);
        const double r2 = b.sigma_tau_sq > 0.0 ? std::abs(a.sigma_tau_sq / b.sigma_tau_sq - 1.0) : 0.0;
        check("bussgang-closed-vs-numeric", std::nan(""), r1 < 1e-6 && r2 < 1e-6,
              "delta_rel=" + fmt(r1) + " sigma_tau_sq_rel=" + fmt(r2));
    }
    return out;
}

int cmd_validate(const SystemConfig& sys, const ValidateOptions& opt, std::ostream& out) {
    std::vector<CheckResult> res;
    try {
        res = validate(sys, opt);
    } catch (const DomainError& e) {
        out << "error " << e.what() << '\n';
        return kConfigFailure;
    } catch (const NumericalError& e) {
        out << "error " << e.what() << '\n';
        return kNumericFailure;
    }
    int failed = 0;
    for (const auto& r : res) {
        out << "check " << r.name;
        if (!std::isnan(r.snr_db)) out << " snr_db=" << format_number(r.snr_db);
        out << ' ' << (r.pass ? "PASS" : "FAIL") << ' ' << r.detail << '\n';
        failed += !r.pass;
    }
    out << "summary checks=" << res.size() << " failed=" << failed << '\n';
    return failed ? kValidationFailure : kOk;
}

int cmd_bussgang(const std::vector<double>& ibo_db, double sigma_sq, double smoothness, double phi0, double snr_db,
                 std::ostream& out) {
    out << "# " << kVersion << '\n'
        << "# sigma_sq = " << format_number(sigma_sq) << ", sspa smoothness = " << format_number(smoothness)
        << ", twta phi0 = " << format_number(phi0) << '\n'
        << "# zeta at mean hop-1 SNR " << format_number(snr_db) << " dB, single relay\n"
        << "ibo_db,hpa,a_sat,delta,sigma_tau_sq,zeta,capacity_ceiling\n";
    for (double ibo : ibo_db)
        for (auto kind : {HpaKind::Sel, HpaKind::Sspa, HpaKind::Twta}) {
            SystemConfig s;
            s.hpa = kind;
            s.ibo_db = ibo;
            s.smoothness = smoothness;
            s.phi0 = phi0;
            s.hpa_input_power = sigma_sq;
            const auto bp = s.bussgang();
            const double z = metrics::surrogate_zeta(bp, sigma_sq, db_to_linear(snr_db));
            out << format_number(ibo) << ',' << to_string(kind) << ',' << format_number(hpa::saturation_amplitude(s.hpa_model()))
                << ',' << format_number(bp.delta) << ',' << format_number(bp.sigma_tau_sq) << ',' << format_number(z) << ','
                << format_number(metrics::capacity_ceiling(bp, sigma_sq)) << '\n';
        }
    return kOk;
}

}  // namespace relaylab::cli
