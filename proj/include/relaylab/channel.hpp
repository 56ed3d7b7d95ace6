#pragma once

#include "relaylab/philox.hpp"

#include <complex>
#include <vector>

namespace relaylab::channel {

struct FadingConfig {
    int n_relays = 1;
    int rank = 1;  // ascending: rank == n_relays is the best relay
    double gamma1_bar = 1.0;
    double gamma2_bar = 1.0;
    double rho1 = 1.0;
    double rho2 = 1.0;

    void validate() const;  // throws DomainError naming the violated invariant
};

struct CsiPair {
    std::complex<double> current;   // h, the channel the transmission sees
    std::complex<double> outdated;  // h~ = sqrt(rho) h + sqrt(1 - rho) w, used for selection/gain
};

// Ordered-selection coefficient tables for rank k of N. Row index n (or m) runs over 0..k-1;
// column j/i = 1, 2. Q1 = R1 = T1 = 1.
struct HopStatistics {
    int n_relays = 1;
    int rank = 1;
    double binom_nk = 1.0;  // C(N, k)
    double gamma_h = 0.5;   // g1 g2 / (g1 + g2)
    std::vector<double> P, S, Q2, R2, T2, U1, U2;

    double Q(int n, int j) const { return j == 1 ? 1.0 : Q2[n]; }
    double R(int n, int j) const { return j == 1 ? 1.0 : R2[n]; }
    double T(int m, int i) const { return i == 1 ? 1.0 : T2[m]; }
    double U(int m, int i) const { return i == 1 ? U1[m] : U2[m]; }
};

double jakes_rho(double doppler_hz, double delay_s);

CsiPair sample_csi_pair(TrialStream& rng, double mean_power, double rho);

HopStatistics hop_statistics(const FadingConfig& cfg);

// density of the realized hop-1 SNR of the selected relay
double ordered_pdf_hop1(double x, const FadingConfig& cfg, const HopStatistics& st);
double ordered_cdf_hop1(double x, const FadingConfig& cfg, const HopStatistics& st);
// distribution of the realized hop-2 SNR of the selected relay
double ordered_cdf_hop2(double x, const FadingConfig& cfg, const HopStatistics& st);
double ordered_ccdf_hop2(double x, const FadingConfig& cfg, const HopStatistics& st);

double hop1_moment(int order, const FadingConfig& cfg, const HopStatistics& st);

}  // namespace relaylab::channel
