#pragma once

#include "relaylab/channel.hpp"
#include "relaylab/hpa.hpp"
#include "relaylab/metrics.hpp"
#include "relaylab/relaying.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace relaylab {

enum class Fidelity { Surrogate, Full };
// Physical: hop 2 belongs to the selected relay. Independent: hop 2 comes from a second,
// independent selection draw (the product-of-marginals model behind the closed forms).
enum class Coupling { Physical, Independent };

std::string to_string(Fidelity f);
std::string to_string(Coupling c);

struct McConfig {
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 1;
    int workers = 1;
    Fidelity fidelity = Fidelity::Surrogate;
    Coupling coupling = Coupling::Physical;
    bool outage_only = false;  // skip the BER and capacity sums

    void validate() const;
};

enum class HpaKind { Ideal, Sel, Sspa, Twta };
std::string to_string(HpaKind k);

// Units: sigma0^2 = 1, unit-mean fading, so the transmit power P1 equals the mean hop-1 SNR.
// The hop-2 SNR includes the amplifier's linear gain at its nominal drive.
struct SystemConfig {
    int n_relays = 1;
    int rank = 1;
    double rho1 = 1.0;
    double rho2 = 1.0;
    std::optional<double> doppler_hz, delay_s;  // kept for the echo; rho1/rho2 already derived
    relaying::Scheme scheme = relaying::Scheme::VGII;
    HpaKind hpa = HpaKind::Ideal;
    double ibo_db = 10.0;
    double smoothness = 1.0;
    double phi0 = 0.0;
    double hpa_input_power = 1.0;  // sigma^2
    double gamma2_ratio = 1.0;     // gamma2_bar / gamma1_bar
    metrics::ModulationParams modulation = metrics::ModulationParams::bpsk();
    std::vector<double> snr_db;
    double gamma_th_db = 0.0;
    McConfig mc;

    void validate() const;

    hpa::HpaModel hpa_model() const;
    channel::FadingConfig fading(double snr_db) const;
    hpa::BussgangParams bussgang() const;  // at the nominal drive
    // zeta of the analytic model at this SNR
    double zeta(double snr_db) const;
    double gamma_th() const;
};

double db_to_linear(double db);

}  // namespace relaylab
