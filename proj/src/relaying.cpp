#include "relaylab/relaying.hpp"

#include "relaylab/error.hpp"

#include <cmath>
#include <numeric>

namespace relaylab::relaying {

Scheme parse_scheme(const std::string& s) {
    if (s == "fg") return Scheme::FG;
    if (s == "vgi") return Scheme::VGI;
    if (s == "vgii") return Scheme::VGII;
    throw DomainError("unknown relaying scheme '" + s + "' (expected fg, vgi or vgii)");
}

std::string to_string(Scheme s) {
    switch (s) {
        case Scheme::FG: return "fg";
        case Scheme::VGI: return "vgi";
        case Scheme::VGII: return "vgii";
    }
    return "?";
}

std::size_t ors_select(const std::vector<std::pair<double, double>>& outdated, int rank) {
    if (outdated.empty()) throw DomainError("ors_select: no relays to select from");
    const int n = static_cast<int>(outdated.size());
    if (rank < 1 || rank > n) throw DomainError("ors_select: rank must satisfy 1 <= k <= N");
    std::vector<std::size_t> idx(outdated.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    auto bottleneck = [&](std::size_t i) { return std::min(outdated[i].first, outdated[i].second); };
    std::nth_element(idx.begin(), idx.begin() + (rank - 1), idx.end(), [&](std::size_t a, std::size_t b) {
        const double x = bottleneck(a), y = bottleneck(b);
        return x < y || (x == y && a < b);
    });
    return idx[rank - 1];
}

namespace {
void check(double g1, double g2, double zeta) {
    if (!(g1 >= 0.0) || !(g2 >= 0.0)) throw DomainError("SNDR: hop SNRs must be >= 0");
    if (!(zeta >= 1.0)) throw DomainError("SNDR: zeta must be >= 1");
}
}  // namespace

double sndr_fg(double g1, double g2, double zeta, double mean_g1) {
    check(g1, g2, zeta);
    if (!(mean_g1 >= 0.0)) throw DomainError("sndr_fg: mean hop-1 SNR must be >= 0");
    if (g1 == 0.0 || g2 == 0.0) return 0.0;
    return g1 * g2 / (zeta * g2 + mean_g1 + zeta);
}

double sndr_vgi(double g1, double g2, double g1_gain_csi, double zeta) {
    check(g1, g2, zeta);
    if (!(g1_gain_csi >= 0.0)) throw DomainError("sndr_vgi: gain CSI must be >= 0");
    if (g1 == 0.0 || g2 == 0.0) return 0.0;
    return g1 * g2 / (zeta * g2 + g1_gain_csi + zeta);
}

double sndr_vgii(double g1, double g2, double zeta) {
    check(g1, g2, zeta);
    if (g1 == 0.0 || g2 == 0.0) return 0.0;
    return g1 * g2 / (zeta * g2 + g1 + zeta);
}

double sndr(Scheme s, const LinkSample& l, double zeta, double mean_g1) {
    switch (s) {
        case Scheme::FG: return sndr_fg(l.gamma1_current, l.gamma2_current, zeta, mean_g1);
        case Scheme::VGI: return sndr_vgi(l.gamma1_current, l.gamma2_current, l.gamma1_outdated, zeta);
        case Scheme::VGII: return sndr_vgii(l.gamma1_current, l.gamma2_current, zeta);
    }
    return 0.0;
}

double relay_gain(Scheme s, const LinkSample& l, double sigma_sq, double p1, double noise_var, double mean_h1_sq) {
    if (!(sigma_sq > 0.0) || !(p1 > 0.0) || !(noise_var > 0.0))
        throw DomainError("relay_gain: powers must be > 0");
    // gamma = P1 |h|^2 / sigma0^2
    double h1_sq = 0.0;
    switch (s) {
        case Scheme::FG:
            if (!(mean_h1_sq >= 0.0)) throw DomainError("relay_gain: mean channel power must be >= 0");
            h1_sq = mean_h1_sq;
            break;
        case Scheme::VGI: h1_sq = l.gamma1_outdated * noise_var / p1; break;
        case Scheme::VGII: h1_sq = l.gamma1_current * noise_var / p1; break;
    }
    return sigma_sq / (h1_sq * p1 + noise_var);
}

}  // namespace relaylab::relaying
