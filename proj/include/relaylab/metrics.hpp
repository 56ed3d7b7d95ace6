#pragma once

#include "relaylab/channel.hpp"
#include "relaylab/hpa.hpp"
#include "relaylab/relaying.hpp"

#include <string>
#include <utility>
#include <vector>

namespace relaylab::metrics {

using channel::FadingConfig;
using channel::HopStatistics;
using relaying::Scheme;

struct ModulationParams {
    double alpha = 1.0;
    double beta = 1.0;

    static ModulationParams bpsk() { return {1.0, 1.0}; }
    void validate() const;
};

enum class Provenance { ClosedForm, Asymptote, Quadrature };
std::string to_string(Provenance p);

struct Value {
    double value = 0.0;
    Provenance provenance = Provenance::ClosedForm;
    std::string note;  // set when a formula was substituted
};

struct PerformancePoint {
    double snr_db = 0.0;
    Value outage, ber, capacity;
};

// zeta of the analytic surrogate: gain set from the mean hop-1 SNR, sigma0^2 = 1.
double surrogate_zeta(const hpa::BussgangParams& bp, double sigma_sq, double mean_g1);

// Outage probabilities. gamma_th >= 0 (linear).
double outage_fg(double gamma_th, const FadingConfig& cfg, const HopStatistics& st, double zeta);
double outage_vgi(double gamma_th, const FadingConfig& cfg, const HopStatistics& st, double zeta);  // rho1 < 1
double outage_vgii(double gamma_th, const FadingConfig& cfg, const HopStatistics& st, double zeta);

// Complementary forms, accurate in the upper tail.
double ccdf_fg(double gamma, const FadingConfig& cfg, const HopStatistics& st, double zeta);
double ccdf_vgi(double gamma, const FadingConfig& cfg, const HopStatistics& st, double zeta);
double ccdf_vgii(double gamma, const FadingConfig& cfg, const HopStatistics& st, double zeta);

// Scheme dispatch; VGI with rho1 > 0.999 is evaluated with the VGII formulas and a note.
Value outage(Scheme s, double gamma_th, const FadingConfig& cfg, const HopStatistics& st, double zeta);
double ccdf(Scheme s, double gamma, const FadingConfig& cfg, const HopStatistics& st, double zeta);

// High-SNR behaviour: leading non-vanishing term of the closed form in 1/gamma1_bar,
// c0 eps^d + c1 eps^d ln(eps). Ratios gamma2_bar/gamma1_bar and zeta held fixed.
struct Asymptote {
    int order = 0;
    double c0 = 0.0, c1 = 0.0;
    double value = 0.0;
};
Asymptote outage_asymptote(Scheme s, double gamma_th, const FadingConfig& cfg, const HopStatistics& st, double zeta,
                           int forced_order = 0);
double outage_fg_asymptotic(double gamma_th, const FadingConfig& cfg, const HopStatistics& st, double zeta);
double outage_vgii_asymptotic(double gamma_th, const FadingConfig& cfg, const HopStatistics& st, double zeta);

// Average BER. Closed forms: FG exact, VGI and VGII approximations.
double ber(Scheme s, const ModulationParams& mod, const FadingConfig& cfg, const HopStatistics& st, double zeta);
// Value of record: the closed form where the outage it integrates stays within 3% of the
// scheme's outage at gamma = {1/4, 1, 4} / beta and the alternating sum keeps its precision,
// otherwise ber_quadrature.
Value ber_value(Scheme s, const ModulationParams& mod, const FadingConfig& cfg, const HopStatistics& st, double zeta);
// Integration-by-parts form over the scheme's outage expression.
double ber_quadrature(Scheme s, const ModulationParams& mod, const FadingConfig& cfg, const HopStatistics& st,
                      double zeta);
double ber_asymptotic(Scheme s, const ModulationParams& mod, const FadingConfig& cfg, const HopStatistics& st,
                      double zeta);

// Ergodic capacity (bits/s/Hz, half-duplex factor included) by quadrature of the CCDF.
double capacity(Scheme s, const FadingConfig& cfg, const HopStatistics& st, double zeta);
// VGI scalar closed form (exponential-integral terms), cross-checked against capacity().
double capacity_vgi_closed(const FadingConfig& cfg, const HopStatistics& st, double zeta);
// 0.5 log2(1 + delta^2 sigma^2 / sigma_tau^2); +inf for distortion-free hardware.
double capacity_ceiling(const hpa::BussgangParams& bp, double sigma_sq);

// -10 x least-squares slope of log10(outage) against SNR in dB.
double diversity_gain(const std::vector<std::pair<double, double>>& curve);

}  // namespace relaylab::metrics
