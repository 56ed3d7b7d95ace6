#include "relaylab/channel.hpp"

#include "relaylab/error.hpp"
#include "relaylab/specfun.hpp"

#include <cmath>
#include <sstream>

namespace relaylab::channel {

void FadingConfig::validate() const {
    std::ostringstream os;
    if (n_relays < 1) {
        os << "n_relays must be >= 1 (got " << n_relays << ")";
    } else if (rank < 1 || rank > n_relays) {
        os << "rank k must satisfy 1 <= k <= N (got k = " << rank << ", N = " << n_relays << ")";
    } else if (!(gamma1_bar > 0.0) || !(gamma2_bar > 0.0) || !std::isfinite(gamma1_bar) ||
               !std::isfinite(gamma2_bar)) {
        os << "average SNRs must be finite and > 0";
    } else if (!(rho1 >= 0.0 && rho1 <= 1.0) || !(rho2 >= 0.0 && rho2 <= 1.0)) {
        os << "correlation coefficients must lie in [0, 1] (got rho1 = " << rho1 << ", rho2 = " << rho2 << ")";
    } else {
        return;
    }
    throw DomainError(os.str());
}

double jakes_rho(double doppler_hz, double delay_s) {
    if (!(doppler_hz >= 0.0) || !(delay_s >= 0.0) || !std::isfinite(doppler_hz) || !std::isfinite(delay_s)) {
        throw DomainError("jakes_rho: doppler and delay must be finite and >= 0");
    }
    return specfun::bessel_j0(2.0 * specfun::kPi * doppler_hz * delay_s);
}

CsiPair sample_csi_pair(TrialStream& rng, double mean_power, double rho) {
    const double amp = std::sqrt(mean_power);
    const std::complex<double> h = amp * rng.complex_normal();
    const std::complex<double> w = amp * rng.complex_normal();
    if (rho == 1.0) return {h, h};
    return {h, std::sqrt(rho) * h + std::sqrt(1.0 - rho) * w};
}

HopStatistics hop_statistics(const FadingConfig& cfg) {
    cfg.validate();
    const int N = cfg.n_relays, k = cfg.rank;
    const double g1 = cfg.gamma1_bar, g2 = cfg.gamma2_bar;
    HopStatistics st;
    st.n_relays = N;
    st.rank = k;
    st.binom_nk = specfun::binomial(N, k);
    st.gamma_h = g1 * g2 / (g1 + g2);
    const double gh = st.gamma_h;
    for (int n = 0; n < k; ++n) {
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        const double b = specfun::binomial(k - 1, n);
        const double l = N - k + n;  // number of relays with a larger bottleneck, shifted
        st.P.push_back(sign * b / (1.0 + (g2 / gh) * l));
        st.S.push_back(sign * b / (1.0 + (g1 / gh) * l));

        const double d1 = cfg.rho1 == 1.0 ? gh : cfg.rho1 * gh + (1.0 - cfg.rho1) * (l + 1.0) * g1;
        st.Q2.push_back(l * g2 / d1);
        st.R2.push_back((l + 1.0) * g1 / d1);

        st.T2.push_back(l * g1 / ((l + 1.0) * g2));
        st.U1.push_back(g1 / g2);
        // the printed numerator carries g2; rescaling the hop-2 exponent to the g1 denominator needs g1
        const double d2 = cfg.rho2 == 1.0 ? gh : cfg.rho2 * gh + (1.0 - cfg.rho2) * (l + 1.0) * g2;
        st.U2.push_back((l + 1.0) * g1 / d2);
    }
    return st;
}

double ordered_pdf_hop1(double x, const FadingConfig& cfg, const HopStatistics& st) {
    if (!(x >= 0.0)) throw DomainError("ordered_pdf_hop1: x must be >= 0");
    const double g1 = cfg.gamma1_bar;
    double s = 0.0;
    for (int n = 0; n < st.rank; ++n)
        for (int j = 1; j <= 2; ++j) s += st.P[n] * st.Q(n, j) * std::exp(-st.R(n, j) * x / g1);
    return st.rank * st.binom_nk / g1 * s;
}

double ordered_cdf_hop1(double x, const FadingConfig& cfg, const HopStatistics& st) {
    if (!(x >= 0.0)) throw DomainError("ordered_cdf_hop1: x must be >= 0");
    const double g1 = cfg.gamma1_bar;
    double s = 0.0;
    for (int n = 0; n < st.rank; ++n)
        for (int j = 1; j <= 2; ++j) s -= st.P[n] * st.Q(n, j) / st.R(n, j) * std::expm1(-st.R(n, j) * x / g1);
    return st.rank * st.binom_nk * s;
}

double ordered_ccdf_hop2(double x, const FadingConfig& cfg, const HopStatistics& st) {
    if (!(x >= 0.0)) throw DomainError("ordered_ccdf_hop2: x must be >= 0");
    const double g1 = cfg.gamma1_bar;
    double s = 0.0;
    for (int m = 0; m < st.rank; ++m)
        for (int i = 1; i <= 2; ++i) s += st.S[m] * st.T(m, i) * std::exp(-st.U(m, i) * x / g1);
    return st.rank * st.binom_nk * s;
}

double ordered_cdf_hop2(double x, const FadingConfig& cfg, const HopStatistics& st) {
    if (!(x >= 0.0)) throw DomainError("ordered_cdf_hop2: x must be >= 0");
    const double g1 = cfg.gamma1_bar;
    // 1 - F_bar written with expm1 so the value at the origin does not lose digits
    double s = 0.0;
    for (int m = 0; m < st.rank; ++m)
        for (int i = 1; i <= 2; ++i) s -= st.S[m] * st.T(m, i) * std::expm1(-st.U(m, i) * x / g1);
    return st.rank * st.binom_nk * s;
}

double hop1_moment(int order, const FadingConfig& cfg, const HopStatistics& st) {
    if (order < 1) throw DomainError("hop1_moment: order must be >= 1");
    const double g1 = cfg.gamma1_bar;
    const double fact = specfun::gamma_fn(order + 1.0);
    double s = 0.0;
    for (int n = 0; n < st.rank; ++n)
        for (int j = 1; j <= 2; ++j) s += st.P[n] * st.Q(n, j) * std::pow(g1 / st.R(n, j), order + 1);
    return st.rank * st.binom_nk / g1 * fact * s;
}

}  // namespace relaylab::channel
