#include "relaylab/system_config.hpp"

#include "relaylab/error.hpp"

#include <cmath>

namespace relaylab {

std::string to_string(Fidelity f) { return f == Fidelity::Full ? "full" : "surrogate"; }
std::string to_string(Coupling c) { return c == Coupling::Independent ? "independent" : "physical"; }

std::string to_string(HpaKind k) {
    switch (k) {
        case HpaKind::Ideal: return "ideal";
        case HpaKind::Sel: return "sel";
        case HpaKind::Sspa: return "sspa";
        case HpaKind::Twta: return "twta";
    }
    return "?";
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

void McConfig::validate() const {
    if (samples < 1) throw DomainError("samples must be >= 1");
    if (workers < 1) throw DomainError("workers must be >= 1");
}

void SystemConfig::validate() const {
    fading(0.0).validate();
    hpa::validate(hpa_model());
    modulation.validate();
    if (!(hpa_input_power > 0.0)) throw DomainError("hpa input power must be > 0");
    if (!(gamma2_ratio > 0.0)) throw DomainError("gamma2_ratio must be > 0");
    if (!std::isfinite(gamma_th_db)) throw DomainError("gamma_th_db must be finite");
    for (double s : snr_db)
        if (!std::isfinite(s)) throw DomainError("snr_db values must be finite");
    mc.validate();
}

hpa::HpaModel SystemConfig::hpa_model() const {
    const double a = hpa::ibo_to_asat({hpa_input_power, ibo_db});
    switch (hpa) {
        case HpaKind::Ideal: return hpa::Ideal{};
        case HpaKind::Sel: return hpa::Sel{a};
        case HpaKind::Sspa: return hpa::Sspa{a, smoothness};
        case HpaKind::Twta: return hpa::Twta{a, phi0};
    }
    return hpa::Ideal{};
}

channel::FadingConfig SystemConfig::fading(double snr) const {
    const double g = db_to_linear(snr);
    return {n_relays, rank, g, gamma2_ratio * g, rho1, rho2};
}

hpa::BussgangParams SystemConfig::bussgang() const { return hpa::bussgang(hpa_model(), hpa_input_power); }

double SystemConfig::zeta(double snr) const {
    const auto c = fading(snr);
    const auto st = channel::hop_statistics(c);
    return metrics::surrogate_zeta(bussgang(), hpa_input_power, channel::hop1_moment(1, c, st));
}

double SystemConfig::gamma_th() const { return db_to_linear(gamma_th_db); }

}  // namespace relaylab
