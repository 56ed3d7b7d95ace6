#pragma once

#include <string>
#include <utility>
#include <vector>

namespace relaylab::relaying {

enum class Scheme { FG, VGI, VGII };

Scheme parse_scheme(const std::string& s);  // "fg", "vgi", "vgii"
std::string to_string(Scheme s);

// SNRs of the selected relay. Outdated values drive selection and the VGI gain;
// current values are what the transmission experiences.
struct LinkSample {
    double gamma1_outdated = 0.0;
    double gamma1_current = 0.0;
    double gamma2_outdated = 0.0;
    double gamma2_current = 0.0;
};

// Index of the relay whose bottleneck min(x1, x2) has ascending rank `rank`
// (rank == size() picks the best). Ties keep the lower index first.
std::size_t ors_select(const std::vector<std::pair<double, double>>& outdated, int rank);

// g1, g2 below are the realized hop SNRs of the selected relay.
double sndr_fg(double g1, double g2, double zeta, double mean_g1);
// g1_gain_csi: the outdated hop-1 SNR the gain was set from
double sndr_vgi(double g1, double g2, double g1_gain_csi, double zeta);
double sndr_vgii(double g1, double g2, double zeta);

double sndr(Scheme s, const LinkSample& l, double zeta, double mean_g1);

// Power gain setting the amplifier-input mean power to sigma_sq.
double relay_gain(Scheme s, const LinkSample& l, double sigma_sq, double p1, double noise_var, double mean_h1_sq);

}  // namespace relaylab::relaying
