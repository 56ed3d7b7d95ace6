#include "relaylab/metrics.hpp"

#include "relaylab/error.hpp"
#include "relaylab/specfun.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace relaylab::metrics {

namespace sf = specfun;

void ModulationParams::validate() const {
    if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta))
        throw DomainError("modulation parameters alpha and beta must be finite and > 0");
}

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::ClosedForm: return "closed-form";
        case Provenance::Asymptote: return "asymptote";
        case Provenance::Quadrature: return "quadrature";
    }
    return "?";
}

double surrogate_zeta(const hpa::BussgangParams& bp, double sigma_sq, double mean_g1) {
    if (!(mean_g1 >= 0.0)) throw DomainError("surrogate_zeta: mean hop-1 SNR must be >= 0");
    return hpa::zeta(bp, sigma_sq / (mean_g1 + 1.0), 1.0);
}

namespace {

// One (m, n, i, j) product of hop-1 and hop-2 exponentials; sum of w / R is 1.
struct Term {
    double w, R, U;
};

std::vector<Term> terms(const HopStatistics& st) {
    const double kc = st.rank * st.binom_nk;
    std::vector<Term> out;
    for (int m = 0; m < st.rank; ++m)
        for (int n = 0; n < st.rank; ++n)
            for (int i = 1; i <= 2; ++i)
                for (int j = 1; j <= 2; ++j) {
                    const double w = kc * kc * st.S[m] * st.P[n] * st.T(m, i) * st.Q(n, j);
                    if (w != 0.0) out.push_back({w, st.R(n, j), st.U(m, i)});
                }
    return out;
}

double checked_probability(double p, const char* what) {
    if (!std::isfinite(p) || p < -1e-9 || p > 1.0 + 1e-9) {
        std::ostringstream os;
        os << what << ": value " << p << " outside [0, 1]; coefficient sums lost accuracy";
        throw NumericalError(os.str());
    }
    return std::min(1.0, std::max(0.0, p));
}

void check_threshold(double t, const char* what) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError(std::string(what) + ": threshold must be finite and >= 0");
}

double mean_g1(const FadingConfig& cfg, const HopStatistics& st) { return channel::hop1_moment(1, cfg, st); }

// 1 - e^{-a} z K1(z), both pieces nonnegative
double one_minus_exp_zk1(double a, double z) { return -std::expm1(-a) + std::exp(-a) * sf::one_minus_z_k1(z); }

double exp_zk1(double a, double z) {
    if (z == 0.0) return std::exp(-a);
    return z * sf::bessel_k1_scaled(z) * std::exp(-a - z);
}

// exponents (a, z) of the FG and VGII closed forms for one term
std::pair<double, double> fg_args(const Term& tm, double t, double g1, double zeta, double c) {
    return {tm.R * zeta * t / g1, 2.0 / g1 * std::sqrt(tm.U * tm.R * c * t)};
}
std::pair<double, double> vgii_args(const Term& tm, double t, double g1, double zeta) {
    return {(tm.U + zeta * tm.R) * t / g1, 2.0 / g1 * std::sqrt(tm.U * tm.R * zeta * t * (1.0 + t))};
}

// VGI: hop-1 outdated SNR as a mixture of exponentials (rate theta / g1), realized SNR
// conditionally Rician, hop-2 realized CCDF as before.
struct VgiTerm {
    double weight;  // A B
    double theta, q0, a, b;
};

std::vector<VgiTerm> vgi_terms(const FadingConfig& cfg, const HopStatistics& st) {
    if (!(cfg.rho1 < 1.0)) throw DomainError("outage_vgi: needs rho1 < 1; with rho1 = 1 VGI coincides with VGII");
    FadingConfig perfect = cfg;
    perfect.rho1 = 1.0;
    const auto st1 = channel::hop_statistics(perfect);
    const double kc = st.rank * st.binom_nk;
    const double rho = cfg.rho1, s = 1.0 - rho;
    std::vector<VgiTerm> out;
    for (int n = 0; n < st.rank; ++n)
        for (int j = 1; j <= 2; ++j)
            for (int m = 0; m < st.rank; ++m)
                for (int i = 1; i <= 2; ++i) {
                    const double w = kc * st1.P[n] * st1.Q(n, j) * kc * st.S[m] * st.T(m, i);
                    if (w == 0.0) continue;
                    const double theta = st1.R(n, j);
                    const double q0 = rho + s * theta;
                    out.push_back({w, theta, q0, q0 / s, st.U(m, i)});
                }
    return out;
}

// e-folding rate of one VGI term in tau = gamma / g1
double vgi_kappa(const VgiTerm& v, double rho, double zeta) {
    return zeta * v.theta / v.q0 + rho * v.b / (v.q0 * v.q0);
}

}  // namespace

double ccdf_fg(double t, const FadingConfig& cfg, const HopStatistics& st, double zeta) {
    check_threshold(t, "ccdf_fg");
    const double g1 = cfg.gamma1_bar, c = mean_g1(cfg, st) + zeta;
    double s = 0.0;
    for (const auto& tm : terms(st)) {
        const auto [a, z] = fg_args(tm, t, g1, zeta, c);
        s += tm.w / tm.R * exp_zk1(a, z);
    }
    return s;
}

double outage_fg(double t, const FadingConfig& cfg, const HopStatistics& st, double zeta) {
    check_threshold(t, "outage_fg");
    const double g1 = cfg.gamma1_bar, c = mean_g1(cfg, st) + zeta;
    double s = 0.0;
    for (const auto& tm : terms(st)) {
        const auto [a, z] = fg_args(tm, t, g1, zeta, c);
        s += tm.w / tm.R * one_minus_exp_zk1(a, z);
    }
    return checked_probability(s, "outage_fg");
}

double ccdf_vgii(double t, const FadingConfig& cfg, const HopStatistics& st, double zeta) {
    check_threshold(t, "ccdf_vgii");
    double s = 0.0;
    for (const auto& tm : terms(st)) {
        const auto [a, z] = vgii_args(tm, t, cfg.gamma1_bar, zeta);
        s += tm.w / tm.R * exp_zk1(a, z);
    }
    return s;
}

double outage_vgii(double t, const FadingConfig& cfg, const HopStatistics& st, double zeta) {
    check_threshold(t, "outage_vgii");
    double s = 0.0;
    for (const auto& tm : terms(st)) {
        const auto [a, z] = vgii_args(tm, t, cfg.gamma1_bar, zeta);
        s += tm.w / tm.R * one_minus_exp_zk1(a, z);
    }
    return checked_probability(s, "outage_vgii");
}

namespace {

// VGI CCDF in tau = gamma / g1, from per-term pieces
//   F0 = sum w e^{-kappa tau} J0,  J0 = c0 - kj tau G,  G = e^{sig tau} E1(sig tau)
//   C  = sum w e^{-kappa tau} corr, corr = c2 tau^2 (G (1 + sig tau) - 1) + kn tau G
// J0 alone drops the second-order terms of the hop-1 Rician exponent and the noise floor;
// C restores them to first order and is resummed as F0 exp(-C / F0).
struct VgiCoef {
    double weight, kappa, sig, c0, c2, kj, kn;
};

std::vector<VgiCoef> vgi_coefs(const FadingConfig& cfg, const HopStatistics& st, double zeta) {
    const double rho = cfg.rho1, s = 1.0 - rho, eps = 1.0 / cfg.gamma1_bar;
    std::vector<VgiCoef> out;
    for (const auto& v : vgi_terms(cfg, st)) {
        const double q0 = v.q0, b = v.b;
        const double r2 = rho * b * (zeta * q0 - s * b) / (q0 * q0 * q0);
        out.push_back({v.weight, vgi_kappa(v, rho, zeta), (v.theta / q0) * b / v.a, 1.0 / v.theta, r2 / q0,
                       b / (v.a * q0), eps * b * zeta / q0});
    }
    return out;
}

struct VgiParts {
    double out0 = 0.0;  // 1 - F0
    double f0 = 1.0, corr = 0.0;
    double ccdf() const { return f0 > 0.0 ? f0 * std::exp(-corr / f0) : 0.0; }
    double outage() const { return f0 > 0.0 ? out0 - f0 * std::expm1(-corr / f0) : 1.0; }
};

VgiParts vgi_parts(const std::vector<VgiCoef>& cs, double tau) {
    VgiParts p;
    if (tau == 0.0) return p;
    p.f0 = 0.0;
    for (const auto& c : cs) {
        const double g = sf::expint_e1_scaled(c.sig * tau);
        const double e = std::exp(-c.kappa * tau);
        p.out0 += c.weight * (-std::expm1(-c.kappa * tau) * c.c0 + e * c.kj * tau * g);
        p.f0 += c.weight * e * (c.c0 - c.kj * tau * g);
        p.corr += c.weight * e * (c.c2 * tau * tau * (g * (1.0 + c.sig * tau) - 1.0) + c.kn * tau * g);
    }
    return p;
}

}  // namespace

double ccdf_vgi(double t, const FadingConfig& cfg, const HopStatistics& st, double zeta) {
    check_threshold(t, "ccdf_vgi");
    return vgi_parts(vgi_coefs(cfg, st, zeta), t / cfg.gamma1_bar).ccdf();
}

double outage_vgi(double t, const FadingConfig& cfg, const HopStatistics& st, double zeta) {
    check_threshold(t, "outage_vgi");
    return checked_probability(vgi_parts(vgi_coefs(cfg, st, zeta), t / cfg.gamma1_bar).outage(), "outage_vgi");
}

namespace {
constexpr double kVgiRedirect = 0.999;
}

Value outage(Scheme sch, double t, const FadingConfig& cfg, const HopStatistics& st, double zeta) {
    switch (sch) {
        case Scheme::FG: return {outage_fg(t, cfg, st, zeta), Provenance::ClosedForm, ""};
        case Scheme::VGII: return {outage_vgii(t, cfg, st, zeta), Provenance::ClosedForm, ""};
        case Scheme::VGI:
            if (cfg.rho1 > kVgiRedirect)
                return {outage_vgii(t, cfg, st, zeta), Provenance::ClosedForm, "vgi evaluated as vgii (rho1 > 0.999)"};
            return {outage_vgi(t, cfg, st, zeta), Provenance::ClosedForm, ""};
    }
    return {};
}

double ccdf(Scheme sch, double t, const FadingConfig& cfg, const HopStatistics& st, double zeta) {
    switch (sch) {
        case Scheme::FG: return ccdf_fg(t, cfg, st, zeta);
        case Scheme::VGII: return ccdf_vgii(t, cfg, st, zeta);
        case Scheme::VGI:
            if (cfg.rho1 > kVgiRedirect) return ccdf_vgii(t, cfg, st, zeta);
            return ccdf_vgi(t, cfg, st, zeta);
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// high-SNR expansion

namespace {

// truncated series sum_d (c0[d] + c1[d] ln eps) eps^d
struct LogSeries {
    std::vector<double> c0, c1;
    explicit LogSeries(int order) : c0(order + 1, 0.0), c1(order + 1, 0.0) {}
    int order() const { return static_cast<int>(c0.size()) - 1; }
};

// 1 - e^{-L eps} z K1(z) with z^2/4 = A eps^p (1 + B eps)
LogSeries expand_term(double L, double A, double B, int p, int D) {
    LogSeries z(D);
    z.c0[0] = 1.0;
    if (A == 0.0) p = D + 1;  // z = 0: only the exponential survives
    // ln(1 + B eps)
    std::vector<double> log1p(D + 1, 0.0);
    for (int r = 1; r <= D; ++r) log1p[r] = ((r % 2) ? 1.0 : -1.0) * std::pow(B, r) / r;
    for (int k = 0; p * (k + 1) <= D; ++k) {
        const double coef = std::pow(A, k + 1) / (sf::gamma_fn(k + 1.0) * sf::gamma_fn(k + 2.0));
        // (1 + B eps)^{k+1}
        std::vector<double> pw(D + 1, 0.0);
        for (int r = 0; r <= std::min(k + 1, D); ++r) pw[r] = sf::binomial(k + 1, r) * std::pow(B, r);
        const double c = std::log(A) - sf::digamma(k + 1.0) - sf::digamma(k + 2.0);
        const int shift = p * (k + 1);
        for (int r = 0; r + shift <= D; ++r) {
            z.c0[r + shift] += coef * pw[r] * c;
            z.c1[r + shift] += coef * pw[r] * p;
            for (int q = 1; q + r + shift <= D; ++q) z.c0[q + r + shift] += coef * pw[r] * log1p[q];
        }
    }
    LogSeries g(D);
    for (int d = 0; d <= D; ++d) {
        double e0 = 0.0, e1 = 0.0;
        for (int r = 0; r <= d; ++r) {
            const double e = std::pow(-L, r) / sf::gamma_fn(r + 1.0);
            e0 += e * z.c0[d - r];
            e1 += e * z.c1[d - r];
        }
        g.c0[d] = (d == 0 ? 1.0 : 0.0) - e0;
        g.c1[d] = -e1;
    }
    return g;
}

}  // namespace

Asymptote outage_asymptote(Scheme sch, double t, const FadingConfig& cfg, const HopStatistics& st, double zeta,
                           int forced_order) {
    check_threshold(t, "outage_asymptote");
    if (sch == Scheme::VGI) throw DomainError("outage_asymptote: no high-SNR form for VGI");
    const double g1 = cfg.gamma1_bar, eps = 1.0 / g1;
    const double mu = mean_g1(cfg, st) / g1;
    const int D = std::max(forced_order, cfg.n_relays + 2);
    LogSeries tot(D), mag(D);
    for (const auto& tm : terms(st)) {
        const LogSeries g = sch == Scheme::FG
                                ? expand_term(tm.R * zeta * t, tm.U * tm.R * t * mu, zeta / mu, 1, D)
                                : expand_term((tm.U + zeta * tm.R) * t, tm.U * tm.R * zeta * t * (1.0 + t), 0.0, 2, D);
        for (int d = 0; d <= D; ++d) {
            tot.c0[d] += tm.w / tm.R * g.c0[d];
            tot.c1[d] += tm.w / tm.R * g.c1[d];
            mag.c0[d] += std::abs(tm.w / tm.R * g.c0[d]);
            mag.c1[d] += std::abs(tm.w / tm.R * g.c1[d]);
        }
    }
    int d = forced_order;
    if (d == 0) {
        for (d = 1; d <= D; ++d) {
            const bool zero0 = std::abs(tot.c0[d]) <= 1e-9 * mag.c0[d];
            const bool zero1 = std::abs(tot.c1[d]) <= 1e-9 * mag.c1[d];
            if (!(zero0 && zero1)) break;
        }
        if (d > D) throw NumericalError("outage_asymptote: no non-vanishing order found");
    }
    Asymptote a;
    a.order = d;
    a.c0 = tot.c0[d];
    a.c1 = tot.c1[d];
    a.value = std::pow(eps, d) * (a.c0 + a.c1 * std::log(eps));
    return a;
}

double outage_fg_asymptotic(double t, const FadingConfig& cfg, const HopStatistics& st, double zeta) {
    return outage_asymptote(Scheme::FG, t, cfg, st, zeta).value;
}

double outage_vgii_asymptotic(double t, const FadingConfig& cfg, const HopStatistics& st, double zeta) {
    return outage_asymptote(Scheme::VGII, t, cfg, st, zeta).value;
}

// ---------------------------------------------------------------------------
// BER

namespace {

sf::QuadratureSpec tight() {
    sf::QuadratureSpec q;
    q.abs_tol = 1e-18;  // closed-form CDFs carry ~1e-17 absolute cancellation noise
    q.rel_tol = 1e-9;
    q.max_subdivisions = 4000;
    return q;
}

// (alpha sqrt(beta) / (2 sqrt(pi))) int e^{-beta t} t^{-1/2} F(t) dt, t = v^2
template <class F>
double ber_integral(const ModulationParams& mod, F&& cdf) {
    auto f = [&](double v) { return 2.0 * std::exp(-mod.beta * v * v) * cdf(v * v); };
    return mod.alpha * std::sqrt(mod.beta) / (2.0 * std::sqrt(sf::kPi)) * sf::integrate(f, 0.0, sf::kInf, tight());
}

// value and the magnitude of what was summed to get it
struct Closed {
    double value = 0.0, scale = 0.0;
};

Closed ber_fg(const ModulationParams& mod, const FadingConfig& cfg, const HopStatistics& st, double zeta) {
    const double g1 = cfg.gamma1_bar, c = mean_g1(cfg, st) + zeta, b = mod.beta;
    double s = 0.0, m = 0.0;
    for (const auto& tm : terms(st)) {
        const double p = b + tm.R * zeta / g1;
        const double z = tm.U * tm.R * c / (g1 * (b * g1 + tm.R * zeta));
        const double v = tm.w / (tm.R * std::sqrt(p)) * z * sf::hypergeometric_u(1.5, 2.0, z);
        s += v, m += std::abs(v);
    }
    const double f = mod.alpha * std::sqrt(b * sf::kPi) / 4.0;
    return {mod.alpha / 2.0 - f * s, mod.alpha / 2.0 + f * m};
}

Closed ber_vgii(const ModulationParams& mod, const FadingConfig& cfg, const HopStatistics& st, double zeta) {
    const double g1 = cfg.gamma1_bar, b = mod.beta;
    double s = 0.0, m = 0.0;
    for (const auto& tm : terms(st)) {
        const double varrho = 2.0 / g1 * std::sqrt(tm.U * tm.R * zeta);
        const double omega = b + (tm.R * zeta + tm.U) / g1;
        const double x = (omega - varrho) / (omega + varrho);
        const double v = tm.w / tm.R * varrho * varrho / std::pow(omega + varrho, 2.5) * sf::hyp2f1(2.5, 1.5, 2.0, x);
        s += v, m += std::abs(v);
    }
    const double f = mod.alpha * std::sqrt(b) * sf::gamma_fn(0.5) * sf::gamma_fn(2.5);
    return {mod.alpha / 2.0 - f * s, mod.alpha / 2.0 + f * m};
}

// Corrected CCDF linearized in corr: e^{-kappa tau} [c0 + c2 tau^2 - G (d1 tau + d2 tau^2 + d3 tau^3)],
// each piece integrated against e^{-beta t} t^{-1/2}.
Closed ber_vgi(const ModulationParams& mod, const FadingConfig& cfg, const HopStatistics& st, double zeta) {
    const double eps = 1.0 / cfg.gamma1_bar, b = mod.beta;
    double s = 0.0, m = 0.0;
    for (const auto& c : vgi_coefs(cfg, st, zeta)) {
        const double p = b + c.kappa * eps, sp = c.sig * eps;
        const double d[4] = {0.0, c.kj + c.kn, c.c2, c.c2 * c.sig};
        double term = c.c0 * sf::gamma_fn(0.5) / std::sqrt(p) + c.c2 * eps * eps * sf::gamma_fn(2.5) * std::pow(p, -2.5);
        for (int n = 1; n <= 3; ++n) {
            if (d[n] == 0.0) continue;
            const double nu = n + 0.5;
            term -= d[n] * std::pow(eps, n) * sf::gamma_fn(nu) / nu * std::pow(p, -nu) *
                    sf::hyp2f1(1.0, nu, nu + 1.0, (p - sp) / p);
        }
        s += c.weight * term, m += std::abs(c.weight * term);
    }
    const double f = mod.alpha * std::sqrt(b) / (2.0 * std::sqrt(sf::kPi));
    return {mod.alpha / 2.0 - f * s, mod.alpha / 2.0 + f * m};
}

Closed ber_closed(Scheme sch, const ModulationParams& mod, const FadingConfig& cfg, const HopStatistics& st,
                  double zeta) {
    switch (sch) {
        case Scheme::FG: return ber_fg(mod, cfg, st, zeta);
        case Scheme::VGI:
            return cfg.rho1 > kVgiRedirect ? ber_vgii(mod, cfg, st, zeta) : ber_vgi(mod, cfg, st, zeta);
        case Scheme::VGII: break;
    }
    return ber_vgii(mod, cfg, st, zeta);
}

}  // namespace

double ber(Scheme sch, const ModulationParams& mod, const FadingConfig& cfg, const HopStatistics& st, double zeta) {
    mod.validate();
    return checked_probability(ber_closed(sch, mod, cfg, st, zeta).value, "ber");
}

namespace {

// Largest gap, over gamma in {1/4, 1, 4} / beta, between the outage the BER closed form
// integrates and the outage of record, relative to the smaller of outage and CCDF.
// VGII: t (1 + t) replaced by t^2. VGI: correction kept linear.
double ber_closed_gap(Scheme sch, const ModulationParams& mod, const FadingConfig& cfg, const HopStatistics& st,
                      double zeta) {
    const double g1 = cfg.gamma1_bar;
    const bool vgi = sch == Scheme::VGI && cfg.rho1 <= kVgiRedirect;
    const auto cs = vgi ? vgi_coefs(cfg, st, zeta) : std::vector<VgiCoef>{};
    double gap = 0.0;
    for (double f : {0.25, 1.0, 4.0}) {
        const double t = f / mod.beta;
        double exact = 0.0, approx = 0.0;
        if (vgi) {
            const auto p = vgi_parts(cs, t / g1);
            exact = p.outage();
            approx = p.out0 + p.corr;
        } else {
            for (const auto& tm : terms(st)) {
                const double a = (tm.U + zeta * tm.R) * t / g1;
                exact += tm.w / tm.R * one_minus_exp_zk1(a, 2.0 / g1 * std::sqrt(tm.U * tm.R * zeta * t * (1.0 + t)));
                approx += tm.w / tm.R * one_minus_exp_zk1(a, 2.0 / g1 * std::sqrt(tm.U * tm.R * zeta) * t);
            }
        }
        const double scale = std::min(exact, 1.0 - exact);
        if (scale <= 0.0) return sf::kInf;
        gap = std::max(gap, std::abs(approx - exact) / scale);
    }
    return gap;
}

constexpr double kBerClosedGap = 0.03;
constexpr double kBerRounding = 64.0 * std::numeric_limits<double>::epsilon();

}  // namespace

Value ber_value(Scheme sch, const ModulationParams& mod, const FadingConfig& cfg, const HopStatistics& st,
                double zeta) {
    mod.validate();
    if (sch == Scheme::FG || ber_closed_gap(sch, mod, cfg, st, zeta) <= kBerClosedGap) {
        try {
            const auto c = ber_closed(sch, mod, cfg, st, zeta);
            // a small BER is the difference of O(1) sums
            if (kBerRounding * c.scale <= 1e-4 * c.value)
                return {checked_probability(c.value, "ber"), Provenance::ClosedForm, ""};
            return {ber_quadrature(sch, mod, cfg, st, zeta), Provenance::Quadrature,
                    "closed form lost to cancellation; integral form used"};
        } catch (const NumericalError&) {
        }
    }
    return {ber_quadrature(sch, mod, cfg, st, zeta), Provenance::Quadrature,
            "closed form outside its accuracy range; integral form used"};
}

double ber_quadrature(Scheme sch, const ModulationParams& mod, const FadingConfig& cfg, const HopStatistics& st,
                      double zeta) {
    mod.validate();
    return checked_probability(ber_integral(mod, [&](double t) { return outage(sch, t, cfg, st, zeta).value; }),
                               "ber_quadrature");
}

double ber_asymptotic(Scheme sch, const ModulationParams& mod, const FadingConfig& cfg, const HopStatistics& st,
                      double zeta) {
    mod.validate();
    if (sch == Scheme::VGI) throw DomainError("ber_asymptotic: no high-SNR form for VGI");
    const int d = outage_asymptote(sch, 1.0, cfg, st, zeta).order;
    const double eps = 1.0 / cfg.gamma1_bar, b = mod.beta;
    if (d == 1) {
        // closed forms of the first-order term
        double s = 0.0;
        const double mu = mean_g1(cfg, st) * eps;
        const double psi32 = 2.0 - sf::kEulerGamma - 2.0 * std::log(2.0);
        for (const auto& tm : terms(st)) {
            if (sch == Scheme::VGII)
                s += tm.w * (zeta + tm.U / tm.R);
            else
                s += tm.w * (zeta - tm.U * mu *
                                        (std::log(tm.U * tm.R * mu * eps / b) + 2.0 * sf::kEulerGamma - 1.0 + psi32));
        }
        return mod.alpha / (4.0 * b) * eps * s;
    }
    return ber_integral(mod, [&](double t) { return outage_asymptote(sch, t, cfg, st, zeta, d).value; });
}

// ---------------------------------------------------------------------------
// capacity

double capacity(Scheme sch, const FadingConfig& cfg, const HopStatistics& st, double zeta) {
    auto fbar = [&](double g) { return ccdf(sch, g, cfg, st, zeta); };
    sf::QuadratureSpec q;
    q.abs_tol = 1e-12;
    q.rel_tol = 1e-9;
    q.max_subdivisions = 4000;
    const double lo = sf::integrate([&](double g) { return fbar(g) / (1.0 + g); }, 0.0, 1.0, q);
    // log scale above 1; components are negligible past a few hundred mean SNRs
    const double vmax = std::log1p(400.0 * std::max(cfg.gamma1_bar, 1.0));
    const double hi = sf::integrate(
        [&](double v) {
            const double g = std::exp(v);
            return fbar(g) * g / (1.0 + g);
        },
        0.0, vmax, q);
    const double c = (lo + hi) / (2.0 * std::log(2.0));
    if (!(c >= -1e-12)) throw NumericalError("capacity: negative result");
    return std::max(c, 0.0);
}

double capacity_vgi_closed(const FadingConfig& cfg, const HopStatistics& st, double zeta) {
    const double eps = 1.0 / cfg.gamma1_bar;
    double s = 0.0;
    for (const auto& c : vgi_coefs(cfg, st, zeta)) {
        // log factor G frozen at tau = 1/kappa: CCDF = e^{-mu g} sum_n e_n (eps g)^n
        const double g = sf::expint_e1_scaled(c.sig / c.kappa);
        const double e[4] = {c.c0, -g * (c.kj + c.kn), c.c2 * (1.0 - g), -g * c.c2 * c.sig};
        const double mu = c.kappa * eps;
        // I_n = int e^{-mu g} g^n / (1 + g) dg = (n-1)! / mu^n - I_{n-1}
        double in = sf::expint_e1_scaled(mu), fact = 1.0, term = e[0] * in;
        for (int n = 1; n <= 3; ++n) {
            in = fact / std::pow(mu, n) - in;
            fact *= n;
            term += e[n] * std::pow(eps, n) * in;
        }
        s += c.weight * term;
    }
    return s / (2.0 * std::log(2.0));
}

double capacity_ceiling(const hpa::BussgangParams& bp, double sigma_sq) {
    if (!(sigma_sq > 0.0)) throw DomainError("capacity_ceiling: sigma^2 must be > 0");
    if (bp.sigma_tau_sq == 0.0) return sf::kInf;
    // eps = E|psi|^2 / sigma^2 = delta^2 + sigma_tau^2 / sigma^2
    return 0.5 * std::log2(1.0 + bp.delta * bp.delta * sigma_sq / bp.sigma_tau_sq);
}

double diversity_gain(const std::vector<std::pair<double, double>>& curve) {
    if (curve.size() < 3) throw DomainError("diversity_gain: needs at least 3 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, p] : curve) {
        if (!(p > 0.0)) throw DomainError("diversity_gain: outage values must be > 0");
        const double y = std::log10(p);
        sx += x, sy += y, sxx += x * x, sxy += x * y;
    }
    const double n = static_cast<double>(curve.size());
    const double den = n * sxx - sx * sx;
    if (!(den > 0.0)) throw DomainError("diversity_gain: SNR points must differ");
    return -10.0 * (n * sxy - sx * sy) / den;
}

}  // namespace relaylab::metrics
