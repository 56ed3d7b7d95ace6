#pragma once

#include <complex>
#include <string>
#include <variant>

namespace relaylab::hpa {

struct Ideal {
    bool operator==(const Ideal&) const = default;
};
struct Sel {
    double a_sat;
    bool operator==(const Sel&) const = default;
};
struct Sspa {
    double a_sat;
    double smoothness = 1.0;  // Rapp nu
    bool operator==(const Sspa&) const = default;
};
struct Twta {
    double a_sat;
    double phi0 = 0.0;  // radians
    bool operator==(const Twta&) const = default;
};

using HpaModel = std::variant<Ideal, Sel, Sspa, Twta>;

struct BussgangParams {
    double delta = 1.0;
    double sigma_tau_sq = 0.0;
};

struct AmplifierOperatingPoint {
    double mean_output_power = 1.0;  // sigma^2 at the amplifier input
    double ibo_db = 0.0;
};

void validate(const HpaModel& model);
std::string name(const HpaModel& model);
double saturation_amplitude(const HpaModel& model);  // 0 for Ideal

double ibo_to_asat(const AmplifierOperatingPoint& op);

double am_am(const HpaModel& model, double input_modulus);
double am_pm(const HpaModel& model, double input_modulus);
std::complex<double> apply_nonlinearity(const HpaModel& model, std::complex<double> input);

// SEL, SSPA with nu = 1, TWTA (phase ignored). SSPA with nu != 1 throws DomainError.
BussgangParams bussgang_closed_form(const HpaModel& model, double sigma_sq);
// Radial expectation over a circular Gaussian input of power sigma_sq; any model.
BussgangParams bussgang_numeric(const HpaModel& model, double sigma_sq);
// Closed form when the model has one, numeric otherwise.
BussgangParams bussgang(const HpaModel& model, double sigma_sq);

// zeta = 1 + sigma_tau^2 / (delta^2 G sigma0^2), G a power gain
double zeta(const BussgangParams& bp, double gain_power, double noise_var);

}  // namespace relaylab::hpa
