#include "doctest.h"

#include "ors_oracle.hpp"
#include "relaylab/montecarlo.hpp"
#include "relaylab/specfun.hpp"

#include <cmath>
#include <complex>

using namespace relaylab;
using namespace relaylab::montecarlo;
using relaying::Scheme;

namespace {

SystemConfig make(int n, int k, double rho, Scheme s, HpaKind h = HpaKind::Ideal, double ibo = 10.0) {
    SystemConfig c;
    c.n_relays = n;
    c.rank = k;
    c.rho1 = c.rho2 = rho;
    c.scheme = s;
    c.hpa = h;
    c.ibo_db = ibo;
    c.gamma_th_db = 0.0;
    return c;
}

McConfig mcfg(std::uint64_t n, int workers = 4, std::uint64_t seed = 7) {
    McConfig m;
    m.samples = n;
    m.workers = workers;
    m.seed = seed;
    return m;
}

bool same(const Estimate& a, const Estimate& b) {
    return a.mean == b.mean && a.half_width_95 == b.half_width_95 && a.samples_used == b.samples_used;
}

}  // namespace

TEST_CASE("rank_index matches ors_select") {
    TrialStream rng(3, 0, 9);
    for (int t = 0; t < 2000; ++t) {
        const int n = 1 + static_cast<int>(rng.next_u32() % 8);
        std::vector<std::pair<double, double>> p(n);
        std::vector<double> b(n);
        for (int i = 0; i < n; ++i) {
            // coarse values so ties happen
            p[i] = {1.0 + rng.next_u32() % 4, 1.0 + rng.next_u32() % 4};
            b[i] = std::min(p[i].first, p[i].second);
        }
        for (int k = 1; k <= n; ++k) CHECK(rank_index(b, k) == static_cast<int>(relaying::ors_select(p, k)));
    }
}

TEST_CASE("physical draws reproduce the brute-force sampler trial for trial") {
    for (auto [n, k, rho, s] : {std::tuple{3, 2, 0.9, Scheme::VGI}, {4, 4, 1.0, Scheme::FG}, {2, 1, 0.5, Scheme::VGII}}) {
        auto sys = make(n, k, rho, s);
        sys.gamma_th_db = 5.0;
        const double snr = 12.0;
        const auto mc = mcfg(40000, 3);
        const auto est = estimate_outage(sys, mc, snr);
        const auto c = sys.fading(snr);
        const double mean = channel::hop1_moment(1, c, channel::hop_statistics(c));
        std::uint64_t hits = 0;
        for (std::uint64_t t = 0; t < mc.samples; ++t) {
            const auto d = oracle::draw_selected(mc.seed, t, c, 1);
            hits += relaying::sndr(s, {d.x1, d.y1, d.x2, d.y2}, 1.0, mean) < sys.gamma_th();
        }
        CHECK(est.mean == static_cast<double>(hits) / mc.samples);
    }
}

TEST_CASE("worker count does not change results") {
    const LinkShape sh{3, 2, 0.9, 0.8, 1.0};
    std::vector<Lane> lanes;
    for (auto s : {Scheme::FG, Scheme::VGI, Scheme::VGII})
        for (double snr : {5.0, 25.0}) {
            Lane l;
            l.scheme = s;
            l.snr_db = snr;
            l.gamma_th = 2.0;
            l.hpa = hpa::Twta{1.5, 0.3};
            lanes.push_back(l);
        }
    for (auto fid : {Fidelity::Surrogate, Fidelity::Full}) {
        auto m = mcfg(50001, 1);  // not a multiple of the chunk
        m.fidelity = fid;
        const auto ref = simulate(sh, lanes, m);
        for (int w : {2, 4, 8}) {
            m.workers = w;
            const auto r = simulate(sh, lanes, m);
            for (std::size_t i = 0; i < lanes.size(); ++i) {
                CHECK(same(r[i].outage, ref[i].outage));
                CHECK(same(r[i].ber, ref[i].ber));
                CHECK(same(r[i].capacity, ref[i].capacity));
            }
        }
    }
    auto m = mcfg(50001, 4);
    const auto a = simulate(sh, lanes, m);
    m.seed = 8;
    const auto b = simulate(sh, lanes, m);
    CHECK(a[0].outage.mean != b[0].outage.mean);
}

TEST_CASE("threshold limits") {
    auto sys = make(3, 2, 0.9, Scheme::VGI, HpaKind::Sel, 3.0);
    auto lane = lane_of(sys, 20.0);
    for (auto fid : {Fidelity::Surrogate, Fidelity::Full}) {
        auto m = mcfg(20000);
        m.fidelity = fid;
        lane.gamma_th = 0.0;
        CHECK(simulate(shape_of(sys), {lane}, m)[0].outage.mean == 0.0);
        lane.gamma_th = 1e12;
        CHECK(simulate(shape_of(sys), {lane}, m)[0].outage.mean == 1.0);
    }
}

TEST_CASE("single-hop Rayleigh BPSK through estimate_mean") {
    const double g = 10.0;
    const auto est = estimate_mean(mcfg(1'000'000), [g](TrialStream& rng) {
        return 0.5 * specfun::erfc(std::sqrt(g * std::norm(rng.complex_normal())));
    });
    const double exact = 0.5 * (1.0 - std::sqrt(g / (1.0 + g)));
    CHECK(std::abs(est.mean - exact) < 1.5 * est.half_width_95);
    CHECK(est.samples_used == 1'000'000);
}

TEST_CASE("vanishing SNR: BER alpha / 2, capacity 0") {
    for (auto s : {Scheme::FG, Scheme::VGI, Scheme::VGII}) {
        auto sys = make(2, 1, 0.9, s);
        sys.modulation = {1.5, 0.4};
        const auto r = simulate(shape_of(sys), {lane_of(sys, -300.0)}, mcfg(5000))[0];
        CHECK(r.ber.mean == doctest::Approx(0.75).epsilon(1e-12));
        CHECK(r.capacity.mean < 1e-12);
        CHECK(r.outage.mean == 1.0);
    }
}

TEST_CASE("half-width shrinks as 1 / sqrt(n)") {
    const auto sys = make(2, 2, 0.9, Scheme::VGII);
    const auto a = simulate(shape_of(sys), {lane_of(sys, 10.0)}, mcfg(100000))[0];
    const auto b = simulate(shape_of(sys), {lane_of(sys, 10.0)}, mcfg(400000))[0];
    CHECK(a.outage.half_width_95 / b.outage.half_width_95 == doctest::Approx(2.0).epsilon(0.2));
    CHECK(a.ber.half_width_95 / b.ber.half_width_95 == doctest::Approx(2.0).epsilon(0.2));
    CHECK(a.capacity.half_width_95 / b.capacity.half_width_95 == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("agreement with the analytic engine") {
    struct Case {
        int n, k;
        double rho;
        Scheme s;
        HpaKind h;
        double snr;
        Coupling cpl;
    };
    // single relay: coupling is moot; several relays: independent coupling is the analytic model
    const std::vector<Case> cases{
        {1, 1, 0.9, Scheme::FG, HpaKind::Sel, 15, Coupling::Physical},
        {1, 1, 1.0, Scheme::VGII, HpaKind::Twta, 20, Coupling::Physical},
        {1, 1, 0.5, Scheme::VGI, HpaKind::Sspa, 20, Coupling::Physical},
        {3, 2, 0.9, Scheme::FG, HpaKind::Ideal, 15, Coupling::Independent},
        {3, 3, 1.0, Scheme::VGII, HpaKind::Sel, 10, Coupling::Independent},
        {2, 2, 0.8, Scheme::VGI, HpaKind::Twta, 20, Coupling::Independent},
    };
    for (const auto& c : cases) {
        CAPTURE(c.n);
        CAPTURE(c.rho);
        CAPTURE(static_cast<int>(c.s));
        auto sys = make(c.n, c.k, c.rho, c.s, c.h, 6.0);
        sys.gamma_th_db = 3.0;
        auto m = mcfg(400000);
        m.coupling = c.cpl;
        const auto r = simulate(shape_of(sys), {lane_of(sys, c.snr)}, m)[0];
        const auto f = sys.fading(c.snr);
        const auto st = channel::hop_statistics(f);
        const double z = sys.zeta(c.snr);
        // 2 half-widths ~ 4 sigma; VGI's closed form is an approximation, allow 3% on top
        const double slack = c.s == Scheme::VGI ? 0.03 : 0.0;
        const double out = metrics::outage(c.s, sys.gamma_th(), f, st, z).value;
        CHECK(std::abs(r.outage.mean - out) < 2.0 * r.outage.half_width_95 + slack * out);
        const double ber = metrics::ber_quadrature(c.s, sys.modulation, f, st, z);
        CHECK(std::abs(r.ber.mean - ber) < 2.0 * r.ber.half_width_95 + slack * ber);
        const double cap = metrics::capacity(c.s, f, st, z);
        CHECK(std::abs(r.capacity.mean - cap) < 2.0 * r.capacity.half_width_95 + slack * cap);
    }
}

TEST_CASE("physical coupling departs from the product-of-marginals model for N > 1") {
    // frozen observation: the selected relay's hops are dependent through the bottleneck
    auto sys = make(3, 3, 1.0, Scheme::FG);
    const double snr = 20.0;
    auto m = mcfg(400000);
    const double phys = estimate_outage(sys, m, snr).mean;
    m.coupling = Coupling::Independent;
    const auto ind = estimate_outage(sys, m, snr);
    const auto f = sys.fading(snr);
    const double an = metrics::outage_fg(1.0, f, channel::hop_statistics(f), 1.0);
    CHECK(std::abs(ind.mean - an) < 2.5 * ind.half_width_95);
    CHECK(phys > 1.5 * an);
}

TEST_CASE("DriveTable against direct Bussgang evaluation") {
    const double sigma_sq = 1.0;
    for (const hpa::HpaModel& model : {hpa::HpaModel{hpa::Sel{1.2}}, hpa::HpaModel{hpa::Sspa{1.0, 2.0}},
                                       hpa::HpaModel{hpa::Twta{1.6, 0.4}}}) {
        const DriveTable t(model, sigma_sq);
        CHECK(t.delta0() == doctest::Approx(hpa::bussgang(model, sigma_sq).delta).epsilon(1e-12));
        for (double s : {1e-3, 0.0137, 0.21, 0.9, 1.0, 3.3, 47.0, 1e4}) {
            CAPTURE(s);
            const auto [d, r] = t.at(s);
            const auto bp = hpa::bussgang(model, sigma_sq * s);
            CHECK(d == doctest::Approx(bp.delta).epsilon(1e-4));
            CHECK(r == doctest::Approx(bp.sigma_tau_sq / (sigma_sq * s)).epsilon(2e-3).scale(1e-6));
        }
    }
    const DriveTable ideal(hpa::Ideal{}, 1.0);
    CHECK(ideal.at(5.0) == std::pair{1.0, 0.0});
}

TEST_CASE("full-fidelity SNDR matches a symbol-level simulation") {
    // Gaussian symbols through hop 1, relay gain, the amplifier and hop 2; project onto the symbol
    struct Case {
        hpa::HpaModel m;
        double g1, g2, c;
    };
    const std::vector<Case> cases{
        {hpa::Sel{1.0}, 30.0, 20.0, 10.0},  {hpa::Sel{1.0}, 3.0, 40.0, 10.0},
        {hpa::Twta{1.4, 0.5}, 100.0, 100.0, 100.0}, {hpa::Twta{1.4, 0.5}, 8.0, 5.0, 12.0},
        {hpa::Sspa{0.9, 1.5}, 50.0, 200.0, 20.0},   {hpa::Ideal{}, 10.0, 10.0, 4.0},
    };
    const double sigma_sq = 1.0;
    for (const auto& c : cases) {
        CAPTURE(hpa::name(c.m));
        CAPTURE(c.g1);
        const double d0 = hpa::bussgang(c.m, sigma_sq).delta;
        const double gain = std::sqrt(sigma_sq / (c.c + 1.0));
        const double h1 = std::sqrt(c.g1), h2 = std::sqrt(c.g2 / (d0 * d0 * sigma_sq));
        TrialStream rng(21, 0, 4);
        const int n = 400000;
        std::complex<double> yx = 0.0;
        std::vector<std::complex<double>> xs(n), ys(n);
        double xx = 0.0;
        for (int i = 0; i < n; ++i) {
            const auto x = rng.complex_normal();
            const auto r = h1 * x + rng.complex_normal();
            const auto y = h2 * hpa::apply_nonlinearity(c.m, gain * r) + rng.complex_normal();
            xs[i] = x, ys[i] = y;
            yx += y * std::conj(x);
            xx += std::norm(x);
        }
        const auto a = yx / xx;
        double err = 0.0;
        for (int i = 0; i < n; ++i) err += std::norm(ys[i] - a * xs[i]);
        const double sim = std::norm(a) / (err / n);
        const DriveTable t(c.m, sigma_sq);
        CHECK(sndr_full(c.g1, c.g2, c.c, t) == doctest::Approx(sim).epsilon(0.02));
    }
}

TEST_CASE("ideal amplifier: full fidelity equals the surrogate") {
    for (auto s : {Scheme::FG, Scheme::VGI, Scheme::VGII}) {
        const auto sys = make(3, 2, 0.8, s);
        auto m = mcfg(50000);
        const auto a = simulate(shape_of(sys), {lane_of(sys, 15.0)}, m)[0];
        m.fidelity = Fidelity::Full;
        const auto b = simulate(shape_of(sys), {lane_of(sys, 15.0)}, m)[0];
        CHECK(a.outage.mean == b.outage.mean);
        CHECK(a.capacity.mean == doctest::Approx(b.capacity.mean).epsilon(1e-12));
    }
}

TEST_CASE("mild SEL backoff: full and surrogate outage within 10%") {
    for (double ibo : {8.0, 12.0})
        for (auto s : {Scheme::FG, Scheme::VGI, Scheme::VGII})
            for (int n : {1, 2}) {
                CAPTURE(ibo);
                CAPTURE(static_cast<int>(s));
                CAPTURE(n);
                const auto sys = make(n, n, 0.9, s, HpaKind::Sel, ibo);
                auto m = mcfg(400000);
                const double a = estimate_outage(sys, m, 30.0).mean;
                m.fidelity = Fidelity::Full;
                const double b = estimate_outage(sys, m, 30.0).mean;
                CHECK(std::abs(b - a) < 0.1 * a);
            }
}

TEST_CASE("VGI overdrive under outdated CSI is invisible to the surrogate") {
    // gain follows the stale hop-1 SNR; when the fade has lifted the relay clips
    auto sys = make(1, 1, 0.9, Scheme::VGI, HpaKind::Sel, 12.0);
    sys.gamma_th_db = 15.0;
    auto m = mcfg(400000);
    const double a = estimate_outage(sys, m, 30.0).mean;
    m.fidelity = Fidelity::Full;
    const double b = estimate_outage(sys, m, 30.0).mean;
    CHECK(b / a - 1.0 == doctest::Approx(0.16).epsilon(0.2));
    sys.scheme = Scheme::VGII;
    m.fidelity = Fidelity::Surrogate;
    const double c = estimate_outage(sys, m, 30.0).mean;
    m.fidelity = Fidelity::Full;
    CHECK(std::abs(estimate_outage(sys, m, 30.0).mean / c - 1.0) < 0.02);
}

TEST_CASE("capacity stays under the distortion ceiling") {
    auto sys = make(2, 2, 0.9, Scheme::VGII, HpaKind::Twta, 4.0);
    const auto r = simulate(shape_of(sys), {lane_of(sys, 60.0)}, mcfg(100000))[0];
    const double ceil = metrics::capacity_ceiling(sys.bussgang(), sys.hpa_input_power);
    CHECK(r.capacity.mean <= ceil);
    CHECK(r.capacity.mean > 0.8 * ceil);
}

TEST_CASE("run_sweep") {
    auto sys = make(2, 1, 0.9, Scheme::VGI, HpaKind::Sspa, 6.0);
    const auto pts = run_sweep(sys, mcfg(20000), {0.0, 20.0});
    REQUIRE(pts.size() == 2);
    for (const auto& p : pts) {
        CHECK(p.error.empty());
        CHECK(std::isnan(p.outage_asymptotic.value));
        CHECK(p.outage.value > 0.0);
        CHECK(p.capacity_ceiling > 0.0);
        CHECK(p.mc.outage.samples_used == 20000);
    }
    CHECK(pts[1].outage.value < pts[0].outage.value);
    CHECK_THROWS(run_sweep(sys, mcfg(10), {}));
}
