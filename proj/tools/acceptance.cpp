// Acceptance run: one PASS/FAIL line per criterion.
#include "relaylab/cli.hpp"
#include "relaylab/error.hpp"
#include "relaylab/metrics.hpp"
#include "relaylab/montecarlo.hpp"
#include "relaylab/specfun.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

using namespace relaylab;
using relaying::Scheme;

namespace {

std::string g_defaults = RELAYLAB_FIGURE_DEFAULTS;
int g_workers = 1;

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::string scheme_name(Scheme s) { return relaying::to_string(s); }

SystemConfig base_config(int n, int k, double rho, Scheme s, HpaKind h, double ibo) {
    SystemConfig c;
    c.n_relays = n;
    c.rank = k;
    c.rho1 = c.rho2 = rho;
    c.scheme = s;
    c.hpa = h;
    c.ibo_db = ibo;
    c.mc.workers = g_workers;
    return c;
}

double binomial_sd(double p, double n) { return std::sqrt(std::max(p * (1.0 - p), 0.0) / n); }

// 1. closed-form Bussgang against the numeric integrals
Outcome bussgang_oracle() {
    Outcome o;
    double worst = 0.0;
    std::string where;
    for (double ibo : {0.0, 3.0, 6.0, 10.0, 20.0}) {
        const double a = hpa::ibo_to_asat({1.0, ibo});
        for (const hpa::HpaModel& m : {hpa::HpaModel{hpa::Sel{a}}, hpa::HpaModel{hpa::Sspa{a, 1.0}},
                                       hpa::HpaModel{hpa::Twta{a, 0.0}}}) {
            const auto c = hpa::bussgang_closed_form(m, 1.0);
            const auto q = hpa::bussgang_numeric(m, 1.0);
            for (double e : {std::abs(c.delta / q.delta - 1.0), std::abs(c.sigma_tau_sq / q.sigma_tau_sq - 1.0)}) {
                if (e > worst) worst = e, where = fmt("%s ibo %g", hpa::name(m).c_str(), ibo);
            }
        }
    }
    o.pass = worst <= 1e-6;
    o.detail = fmt("max rel err %.2e (%s), limit 1e-6", worst, where.c_str());
    return o;
}

// 2. ordered hop-1 pdf: normalization and mean
Outcome statistics_consistency() {
    Outcome o;
    double worst_norm = 0.0, worst_mean = 0.0;
    int cases = 0;
    for (int n : {1, 2, 3, 5})
        for (int k = 1; k <= n; ++k)
            for (double rho : {0.0, 0.5, 0.9, 1.0}) {
                const channel::FadingConfig c{n, k, 10.0, 10.0, rho, rho};
                const auto st = channel::hop_statistics(c);
                const double mass = specfun::integrate(
                    [&](double x) { return channel::ordered_pdf_hop1(x, c, st); }, 0.0, specfun::kInf);
                const double mean = specfun::integrate(
                    [&](double x) { return x * channel::ordered_pdf_hop1(x, c, st); }, 0.0, specfun::kInf);
                worst_norm = std::max(worst_norm, std::abs(mass - 1.0));
                worst_mean = std::max(worst_mean, std::abs(mean / channel::hop1_moment(1, c, st) - 1.0));
                ++cases;
            }
    o.pass = worst_norm <= 1e-6 && worst_mean <= 1e-6;
    o.detail = fmt("%d configs, max |mass-1| %.2e, max mean rel err %.2e, limit 1e-6", cases, worst_norm, worst_mean);
    return o;
}

// 3. closed-form outage against 1e7-trial Monte Carlo on the metrics config grid
Outcome cross_engine_outage(std::uint64_t samples, std::uint64_t diag_samples) {
    const std::vector<double> snrs{10, 20, 30, 40};
    const double gth_db = 5.0;
    struct Hw {
        HpaKind kind;
        double ibo;
        const char* name;
    };
    const std::vector<Hw> hws{{HpaKind::Ideal, 0.0, "ideal"}, {HpaKind::Sel, 3.0, "sel3"}, {HpaKind::Twta, 8.0, "twta8"}};
    const std::vector<Scheme> schemes{Scheme::FG, Scheme::VGI, Scheme::VGII};

    int checked = 0, failed = 0, failed_n1 = 0, diag_checked = 0, diag_failed = 0;
    double worst_z = 0.0, worst_vgi = 0.0;
    std::string worst_where;
    std::ostringstream fails_by_shape;
    for (int n : {1, 2, 3})
        for (int k = 1; k <= n; ++k)
            for (double rho : {0.5, 0.9, 1.0}) {
                std::vector<montecarlo::Lane> lanes;
                std::vector<std::tuple<Scheme, const Hw*, double, double, bool>> expect;  // scheme, hw, snr, analytic, approx
                for (auto s : schemes)
                    for (const auto& hw : hws)
                        for (double snr : snrs) {
                            auto sys = base_config(n, k, rho, s, hw.kind, hw.ibo);
                            sys.gamma_th_db = gth_db;
                            const auto c = sys.fading(snr);
                            const auto st = channel::hop_statistics(c);
                            const auto v = metrics::outage(s, sys.gamma_th(), c, st, sys.zeta(snr));
                            // the vgi redirect near rho1 = 1 evaluates the vgii expression
                            const bool approx = s == Scheme::VGI && v.note.empty();
                            expect.emplace_back(s, &hw, snr, v.value, approx);
                            lanes.push_back(montecarlo::lane_of(sys, snr));
                        }
                const auto shape = montecarlo::LinkShape{n, k, rho, rho, 1.0};
                auto run = [&](Coupling cp, std::uint64_t ns, int& chk, int& bad, bool record) {
                    McConfig mc;
                    mc.samples = ns;
                    mc.seed = 1;
                    mc.workers = g_workers;
                    mc.coupling = cp;
                    mc.outage_only = true;
                    const auto res = montecarlo::simulate(shape, lanes, mc);
                    int shape_bad = 0;
                    for (std::size_t i = 0; i < res.size(); ++i) {
                        const auto& [s, hw, snr, an, approx] = expect[i];
                        const double m = res[i].outage.mean, sd = binomial_sd(an, double(ns));
                        const double diff = std::abs(m - an);
                        const bool ok = approx ? diff <= 0.1 * an + 3.0 * sd : diff <= 3.0 * sd;
                        ++chk;
                        if (!ok) ++bad, ++shape_bad;
                        if (!record) continue;
                        if (!ok && n == 1) ++failed_n1;
                        if (approx) {
                            if (an > 0) worst_vgi = std::max(worst_vgi, (diff - 3.0 * sd) / an);
                        } else if (sd > 0 && diff / sd > worst_z) {
                            worst_z = diff / sd;
                            worst_where = fmt("N=%d k=%d rho=%g %s %s %g dB: an %.3e mc %.3e", n, k, rho,
                                              scheme_name(s).c_str(), hw->name, snr, an, m);
                        }
                    }
                    if (record && shape_bad)
                        fails_by_shape << fmt(" N%dk%d/rho%g:%d", n, k, rho, shape_bad);
                };
                run(Coupling::Physical, samples, checked, failed, true);
                if (diag_samples) run(Coupling::Independent, diag_samples, diag_checked, diag_failed, false);
            }
    Outcome o;
    o.pass = failed == 0;
    o.detail = fmt("physical coupling, %llu trials: %d/%d lanes outside tolerance (N=1: %d); worst exact-form %.1f sd (%s); "
                   "worst vgi excess over 10%%+3sd %.3f; failing lanes per shape:",
                   (unsigned long long)samples, failed, checked, failed_n1, worst_z, worst_where.c_str(), worst_vgi) +
                   fails_by_shape.str();
    if (diag_samples)
        o.detail += fmt("; diagnostic, independent hop-2 draw at %llu trials: %d/%d outside", (unsigned long long)diag_samples,
                        diag_failed, diag_checked);
    return o;
}

// 4. BER closed forms against quadrature of the outage they integrate
Outcome ber_identity() {
    const auto mod = metrics::ModulationParams::bpsk();
    // eight configs drawn across the metrics grid, two at each SNR
    const std::vector<std::tuple<int, int, double, HpaKind, double, double>> grid{
        {1, 1, 0.5, HpaKind::Ideal, 0.0, 10}, {3, 2, 0.9, HpaKind::Sel, 3.0, 10}, {2, 2, 1.0, HpaKind::Twta, 8.0, 20},
        {3, 1, 0.5, HpaKind::Ideal, 0.0, 20}, {2, 1, 0.9, HpaKind::Sel, 3.0, 30}, {3, 3, 0.9, HpaKind::Twta, 8.0, 30},
        {1, 1, 0.9, HpaKind::Sel, 3.0, 40},   {3, 3, 0.5, HpaKind::Ideal, 0.0, 40}};
    double worst_fg = 0.0, worst_vgi = 0.0, worst_vgii = 0.0, worst_record = 0.0;
    std::string fails;
    for (const auto& [n, k, rho, h, ibo, snr] : grid) {
        const auto sys = base_config(n, k, rho, Scheme::FG, h, ibo);
        const auto c = sys.fading(snr);
        const auto st = channel::hop_statistics(c);
        const double z = sys.zeta(snr);
        const double fg = std::abs(metrics::ber(Scheme::FG, mod, c, st, z) / metrics::ber_quadrature(Scheme::FG, mod, c, st, z) - 1.0);
        const double vgi = std::abs(metrics::ber(Scheme::VGI, mod, c, st, z) / metrics::ber_quadrature(Scheme::VGI, mod, c, st, z) - 1.0);
        const double vgii = std::abs(metrics::ber(Scheme::VGII, mod, c, st, z) / metrics::ber_quadrature(Scheme::VGII, mod, c, st, z) - 1.0);
        worst_fg = std::max(worst_fg, fg);
        worst_vgi = std::max(worst_vgi, vgi);
        worst_vgii = std::max(worst_vgii, vgii);
        for (auto s : {Scheme::VGI, Scheme::VGII})
            worst_record = std::max(worst_record, std::abs(metrics::ber_value(s, mod, c, st, z).value /
                                                               metrics::ber_quadrature(s, mod, c, st, z) - 1.0));
        if (fg > 1e-3 || vgi > 0.05 || vgii > 0.05)
            fails += fmt(" [N%dk%d rho%g %g dB: fg %.1e vgi %.3f vgii %.3f]", n, k, rho, snr, fg, vgi, vgii);
    }
    Outcome o;
    o.pass = worst_fg <= 1e-3 && worst_vgi <= 0.05 && worst_vgii <= 0.05;
    o.detail = fmt("8 configs, max rel err fg %.2e (limit 1e-3), vgi %.3f, vgii %.3f (limit 0.05); value of record "
                   "(fallback) within %.3f",
                   worst_fg, worst_vgi, worst_vgii, worst_record) +
               fails;
    return o;
}

// 5. asymptote over exact at 40 dB, ideal hardware
Outcome asymptote_convergence() {
    const auto mod = metrics::ModulationParams::bpsk();
    double lo = 1e9, hi = -1e9;
    std::string worst;
    auto note = [&](double r, const std::string& where) {
        if (r < lo) lo = r;
        if (r > hi) hi = r;
        if (r < 0.95 || r > 1.05) worst += fmt(" [%s %.4f]", where.c_str(), r);
    };
    int cases = 0;
    for (int n : {1, 2, 3})
        for (int k = 1; k <= n; ++k)
            for (double rho : {0.5, 0.9, 1.0}) {
                auto sys = base_config(n, k, rho, Scheme::FG, HpaKind::Ideal, 0.0);
                sys.gamma_th_db = 5.0;
                const auto c = sys.fading(40);
                const auto st = channel::hop_statistics(c);
                const double th = sys.gamma_th();
                const std::string tag = fmt("N%dk%d rho%g", n, k, rho);
                for (auto s : {Scheme::FG, Scheme::VGII}) {
                    note(metrics::outage_asymptote(s, th, c, st, 1.0).value / metrics::outage(s, th, c, st, 1.0).value,
                         tag + " outage " + scheme_name(s));
                    note(metrics::ber_asymptotic(s, mod, c, st, 1.0) / metrics::ber_value(s, mod, c, st, 1.0).value,
                         tag + " ber " + scheme_name(s));
                }
                ++cases;
            }
    Outcome o;
    o.pass = worst.empty();
    o.detail = fmt("%d shapes x {fg, vgii} x {outage, ber}: ratios in [%.4f, %.4f], limit [0.95, 1.05]", cases, lo, hi) + worst;
    return o;
}

std::vector<double> grid(double a, double step, double b) {
    std::vector<double> v;
    for (double s = a; s <= b + 1e-9; s += step) v.push_back(s);
    return v;
}

double analytic_slope(const SystemConfig& sys, const std::vector<double>& snrs) {
    std::vector<std::pair<double, double>> pts;
    for (double s : snrs) {
        const auto c = sys.fading(s);
        pts.push_back({s, metrics::outage(sys.scheme, sys.gamma_th(), c, channel::hop_statistics(c), sys.zeta(s)).value});
    }
    return metrics::diversity_gain(pts);
}

// 6. diversity slopes over 30..45 dB
Outcome diversity_gains() {
    Outcome o;
    const auto snrs = grid(30, 2.5, 45);
    std::string d;
    for (int n : {2, 3})
        for (double rho : {1.0, 0.9})
            for (auto s : {Scheme::FG, Scheme::VGI, Scheme::VGII}) {
                if (s == Scheme::VGI && rho == 1.0) continue;  // redirected to vgii
                auto sys = base_config(n, n, rho, s, HpaKind::Ideal, 0.0);
                sys.gamma_th_db = 5.0;
                const double g = analytic_slope(sys, snrs), want = rho == 1.0 ? n : 1.0;
                const double tol = rho == 1.0 ? 0.10 : 0.15;
                const bool ok = std::abs(g / want - 1.0) <= tol;
                o.pass = o.pass && ok;
                d += fmt(" %s N%d rho%g %.3f%s", scheme_name(s).c_str(), n, rho, g, ok ? "" : "(x)");
            }
    auto tw = cli::load_figure(4, g_defaults).curves[2].second;
    const double g = analytic_slope(tw, snrs);
    o.pass = o.pass && g < 0.1;
    d += fmt("; twta floor (fig 4 config) %.3f%s", g, g < 0.1 ? "" : "(x)");
    o.detail = "slopes, want N+-10% at rho 1, 1+-15% at rho 0.9, <0.1 in floor:" + d;
    return o;
}

std::vector<montecarlo::SweepPoint> sweep(SystemConfig sys, std::uint64_t samples, const std::vector<double>& snrs) {
    sys.mc.samples = samples;
    sys.mc.workers = g_workers;
    sys.snr_db = snrs;
    return montecarlo::run_sweep(sys, sys.mc, snrs);
}

// 7. fig 4 floors
Outcome floor_anchors(std::uint64_t samples) {
    const auto fig = cli::load_figure(4, g_defaults);
    std::vector<std::vector<montecarlo::SweepPoint>> r;
    for (const auto& [label, sys] : fig.curves) r.push_back(sweep(sys, samples, {30, 35, 40}));
    const auto &sel = r[0], &sspa = r[1], &twta = r[2];
    Outcome o;
    std::string d;
    auto within2 = [](double v, double q) { return v >= q / 2.0 && v <= 2.0 * q; };
    for (int mc = 0; mc < 2; ++mc) {
        auto val = [&](const montecarlo::SweepPoint& p) { return mc ? p.mc.outage.mean : p.outage.value; };
        auto slope = [&](const std::vector<montecarlo::SweepPoint>& c) {
            std::vector<std::pair<double, double>> pts;
            for (const auto& p : c) pts.push_back({p.snr_db, val(p)});
            return metrics::diversity_gain(pts);
        };
        bool ok = true;
        for (int i : {1, 2})
            ok = ok && val(twta[i]) > val(sspa[i]) && within2(val(twta[i]), 0.002) && within2(val(sspa[i]), 0.0003);
        // a floor has slope near 0; sel should still fall
        const double gs = slope(sel);
        const bool no_floor = gs >= 0.5;
        o.pass = o.pass && ok && no_floor;
        d += fmt("%s 35/40 dB twta %.3e/%.3e sspa %.3e/%.3e%s, slopes twta %.3f sspa %.3f sel %.3f (>=0.5%s); ",
                 mc ? "mc" : "analytic", val(twta[1]), val(twta[2]), val(sspa[1]), val(sspa[2]), ok ? "" : " x",
                 slope(twta), slope(sspa), gs, no_floor ? "" : " x");
    }
    o.detail = d + "target floors 2e-3 and 3e-4, factor 2";
    return o;
}

double snr_at(const SystemConfig& sys, double target) {
    auto f = [&](double s) {
        const auto c = sys.fading(s);
        return std::log(metrics::outage(sys.scheme, sys.gamma_th(), c, channel::hop_statistics(c), sys.zeta(s)).value /
                        target);
    };
    double a = 0.0, b = 60.0;
    if (f(a) < 0 || f(b) > 0) return std::nan("");
    for (int i = 0; i < 60; ++i) {
        const double m = 0.5 * (a + b);
        (f(m) > 0 ? a : b) = m;
    }
    return 0.5 * (a + b);
}

// 8. fig 5 SNR at outage 1e-3
Outcome relay_count(std::uint64_t samples) {
    const auto fig = cli::load_figure(5, g_defaults);
    const double target[] = {35, 27, 20};
    double s[3];
    Outcome o;
    std::string d;
    for (int i = 0; i < 3; ++i) {
        const auto& sys = fig.curves[i].second;
        s[i] = snr_at(sys, 1e-3);
        const bool ok = std::abs(s[i] - target[i]) <= 3.0;
        o.pass = o.pass && ok;
        const auto p = sweep(sys, samples, {std::round(s[i] * 10.0) / 10.0}).front();
        d += fmt(" %s %.2f dB (target %g%s, mc outage there %.2e);", fig.curves[i].first.c_str(), s[i], target[i],
                 ok ? "" : " (x)", p.mc.outage.mean);
    }
    const bool mono = s[0] > s[1] && s[1] > s[2];
    const bool gaps = (s[0] - s[1]) > (s[1] - s[2]);
    o.pass = o.pass && mono && gaps;
    o.detail = "snr for outage 1e-3:" + d + fmt(" gaps %.2f > %.2f%s", s[0] - s[1], s[1] - s[2], mono && gaps ? "" : " (x)");
    return o;
}

// 9. fig 10 capacity ceiling
Outcome capacity_ceiling(std::uint64_t samples) {
    const auto fig = cli::load_figure(10, g_defaults);
    const auto lo = sweep(fig.curves[0].second, samples, {50, 60});
    const std::vector<double> steps{0, 10, 20, 30, 40};
    const auto hi = sweep(fig.curves[4].second, samples, steps);
    auto ideal = fig.curves[4].second;
    ideal.hpa = HpaKind::Ideal;
    const auto id = sweep(ideal, samples, steps);
    const double c60 = lo[1].mc.capacity.mean, c50 = lo[0].mc.capacity.mean, ceil = lo[1].capacity_ceiling;
    const bool in_band = c60 >= 1.5 && c60 <= 2.5, below = c60 <= ceil + lo[1].mc.capacity.half_width_95;
    // saturated: under 0.1 bit per 10 dB. Unsaturated: at least half of what ideal hardware gains.
    const bool sat = c60 - c50 < 0.1;
    bool unsat = true;
    std::string gains;
    for (std::size_t i = 1; i < steps.size(); ++i) {
        const double g = hi[i].mc.capacity.mean - hi[i - 1].mc.capacity.mean;
        const double gi = id[i].mc.capacity.mean - id[i - 1].mc.capacity.mean;
        unsat = unsat && g >= 0.5 * gi;
        gains += fmt(" %.3f/%.3f", g, gi);
    }
    Outcome o;
    o.pass = in_band && below && sat && unsat;
    o.detail = fmt("ibo 4: mc capacity at 60 dB %.4f (band [1.5, 2.5]%s), ceiling %.4f%s, 50->60 dB gain %.4f (<0.1%s); "
                   "ibo 20: 10 dB gains vs ideal from 0 to 40 dB",
                   c60, in_band ? "" : " x", ceil, below ? "" : " x", c60 - c50, sat ? "" : " x") +
               gains + (unsat ? " (each >= half)" : " (x)");
    return o;
}

// 10. orderings at every tested SNR
Outcome orderings(std::uint64_t samples) {
    Outcome o;
    std::string d;
    auto le = [](const montecarlo::Estimate& a, const montecarlo::Estimate& b) {
        return a.mean <= b.mean + std::hypot(a.half_width_95, b.half_width_95) * 1.5;  // 3 sd combined
    };
    auto check = [&](const std::string& what, const std::vector<montecarlo::SweepPoint>& a,
                     const std::vector<montecarlo::SweepPoint>& b, bool ber, double from) {
        int bad_an = 0, bad_mc = 0, n = 0;
        std::string at;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i].snr_db < from) continue;
            ++n;
            const double va = ber ? a[i].ber.value : a[i].outage.value, vb = ber ? b[i].ber.value : b[i].outage.value;
            const bool an_ok = va <= vb * (1.0 + 1e-12);
            const bool mc_ok = le(ber ? a[i].mc.ber : a[i].mc.outage, ber ? b[i].mc.ber : b[i].mc.outage);
            bad_an += !an_ok, bad_mc += !mc_ok;
            if (!an_ok || !mc_ok) at += fmt(" %g", a[i].snr_db);
        }
        o.pass = o.pass && bad_an == 0 && bad_mc == 0;
        d += fmt(" %s: %d points, violations analytic %d mc %d", what.c_str(), n, bad_an, bad_mc) +
             (at.empty() ? ";" : " at snr_db" + at + ";");
    };
    const auto snrs = grid(0, 5, 40);
    {
        const auto fig = cli::load_figure(3, g_defaults);
        const auto fg = sweep(fig.curves[0].second, samples, snrs), vgi = sweep(fig.curves[1].second, samples, snrs),
                   vgii = sweep(fig.curves[2].second, samples, snrs);
        check("fig3 vgii<=vgi", vgii, vgi, false, 0);
        check("fig3 vgi<=fg", vgi, fg, false, 0);
    }
    {
        const auto fig = cli::load_figure(4, g_defaults);
        const auto sel = sweep(fig.curves[0].second, samples, snrs), sspa = sweep(fig.curves[1].second, samples, snrs),
                   twta = sweep(fig.curves[2].second, samples, snrs);
        check("fig4 sel<=sspa", sel, sspa, false, 30);
        check("fig4 sspa<=twta", sspa, twta, false, 30);
    }
    {
        const auto fig = cli::load_figure(6, g_defaults);
        const auto i5 = sweep(fig.curves[0].second, samples, snrs), i10 = sweep(fig.curves[2].second, samples, snrs);
        check("fig6 ber ibo10<=ibo5", i10, i5, true, 25);
    }
    o.detail = fmt("mc %llu trials, tie allowance 3 combined sd;", (unsigned long long)samples) + d;
    return o;
}

// 11. byte-identical sweeps
Outcome determinism() {
    auto sys = cli::parse_config(RELAYLAB_SOURCE_DIR "/tests/golden/sweep_small.cfg");
    std::vector<std::string> outs;
    for (int w : {1, 1, 4, 8}) {
        sys.mc.workers = w;
        std::ostringstream out, err;
        cli::cmd_sweep(sys, out, err);
        outs.push_back(out.str());
    }
    Outcome o;
    o.pass = std::all_of(outs.begin(), outs.end(), [&](const std::string& s) { return s == outs[0]; });
    o.detail = fmt("golden config, runs at workers 1, 1, 4, 8: %s (%zu bytes)", o.pass ? "identical" : "differ", outs[0].size());
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"relaylab acceptance criteria"};
    std::vector<int> only;
    std::uint64_t samples = 10'000'000, diag = 1'000'000;
    app.add_option("--only", only, "criteria to run (default all)")->check(CLI::Range(1, 11));
    app.add_option("--samples", samples, "Monte Carlo trials for criteria 3 and 7-9");
    app.add_option("--diagnostic-samples", diag, "trials for the independent-coupling diagnostic of criterion 3 (0: off)");
    app.add_option("--workers", g_workers, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--defaults", g_defaults, "figure defaults table");
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"bussgang oracle equivalence", bussgang_oracle},
        {"statistics consistency", statistics_consistency},
        {"cross-engine outage", [&] { return cross_engine_outage(samples, diag); }},
        {"ber exact identity", ber_identity},
        {"asymptote convergence", asymptote_convergence},
        {"diversity gains", diversity_gains},
        {"floor anchors", [&] { return floor_anchors(samples); }},
        {"relay-count anchor", [&] { return relay_count(samples); }},
        {"capacity ceiling", [&] { return capacity_ceiling(samples); }},
        {"orderings", [&] { return orderings(std::min<std::uint64_t>(samples, 1'000'000)); }},
        {"determinism", determinism},
    };
    const std::set<int> pick(only.begin(), only.end());
    int failed = 0, ran = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = int(i) + 1;
        if (!pick.empty() && !pick.count(id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome r;
        try {
            r = criteria[i].second();
        } catch (const std::exception& e) {
            r = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        ++ran;
        failed += !r.pass;
        std::cout << "criterion " << id << " " << (r.pass ? "PASS" : "FAIL") << " " << criteria[i].first << " ["
                  << fmt("%.1f s", secs) << "] " << r.detail << std::endl;
    }
    std::cout << "summary criteria=" << ran << " failed=" << failed << std::endl;
    return failed ? 1 : 0;
}
