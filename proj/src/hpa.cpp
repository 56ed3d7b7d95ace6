#include "relaylab/hpa.hpp"

#include "relaylab/error.hpp"
#include "relaylab/specfun.hpp"

#include <cmath>
#include <sstream>

namespace relaylab::hpa {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_sigma(double sigma_sq) {
    if (!(sigma_sq > 0.0) || !std::isfinite(sigma_sq)) throw DomainError("input power sigma^2 must be finite and > 0");
}

}  // namespace

void validate(const HpaModel& model) {
    std::visit(overloaded{
                   [](const Ideal&) {},
                   [](const Sel& m) {
                       if (!(m.a_sat > 0.0) || !std::isfinite(m.a_sat)) throw DomainError("SEL: a_sat must be > 0");
                   },
                   [](const Sspa& m) {
                       if (!(m.a_sat > 0.0) || !std::isfinite(m.a_sat)) throw DomainError("SSPA: a_sat must be > 0");
                       if (!(m.smoothness >= 1.0) || !std::isfinite(m.smoothness))
                           throw DomainError("SSPA: smoothness nu must be >= 1");
                   },
                   [](const Twta& m) {
                       if (!(m.a_sat > 0.0) || !std::isfinite(m.a_sat)) throw DomainError("TWTA: a_sat must be > 0");
                       if (!std::isfinite(m.phi0)) throw DomainError("TWTA: phi0 must be finite");
                   },
               },
               model);
}

std::string name(const HpaModel& model) {
    return std::visit(overloaded{
                          [](const Ideal&) { return std::string("ideal"); },
                          [](const Sel&) { return std::string("sel"); },
                          [](const Sspa&) { return std::string("sspa"); },
                          [](const Twta&) { return std::string("twta"); },
                      },
                      model);
}

double saturation_amplitude(const HpaModel& model) {
    return std::visit(overloaded{
                          [](const Ideal&) { return 0.0; },
                          [](const auto& m) { return m.a_sat; },
                      },
                      model);
}

double ibo_to_asat(const AmplifierOperatingPoint& op) {
    if (!(op.mean_output_power > 0.0)) throw DomainError("ibo_to_asat: sigma^2 must be > 0");
    if (!std::isfinite(op.ibo_db)) throw DomainError("ibo_to_asat: IBO must be finite");
    return std::sqrt(op.mean_output_power) * std::pow(10.0, op.ibo_db / 20.0);
}

double am_am(const HpaModel& model, double r) {
    if (!(r >= 0.0)) throw DomainError("am_am: input modulus must be >= 0");
    return std::visit(overloaded{
                          [&](const Ideal&) { return r; },
                          [&](const Sel& m) { return std::min(r, m.a_sat); },
                          [&](const Sspa& m) {
                              const double t = r / m.a_sat;
                              if (t == 0.0) return 0.0;
                              // log form keeps large nu from overflowing
                              const double lp = std::log1p(std::exp(2.0 * m.smoothness * std::log(t)));
                              return r * std::exp(-lp / (2.0 * m.smoothness));
                          },
                          [&](const Twta& m) {
                              if (std::isinf(r)) return 0.0;
                              return m.a_sat * m.a_sat * r / (r * r + m.a_sat * m.a_sat);
                          },
                      },
                      model);
}

double am_pm(const HpaModel& model, double r) {
    if (!(r >= 0.0)) throw DomainError("am_pm: input modulus must be >= 0");
    if (const auto* m = std::get_if<Twta>(&model)) {
        if (std::isinf(r)) return m->phi0;
        return m->phi0 * r * r / (r * r + m->a_sat * m->a_sat);
    }
    return 0.0;
}

std::complex<double> apply_nonlinearity(const HpaModel& model, std::complex<double> z) {
    if (std::holds_alternative<Ideal>(model)) return z;
    const double r = std::abs(z);
    if (r == 0.0) return {0.0, 0.0};
    return std::polar(am_am(model, r), std::arg(z) + am_pm(model, r));
}

BussgangParams bussgang_closed_form(const HpaModel& model, double sigma_sq) {
    check_sigma(sigma_sq);
    validate(model);
    const double s = std::sqrt(sigma_sq);
    return std::visit(
        overloaded{
            [](const Ideal&) { return BussgangParams{1.0, 0.0}; },
            [&](const Sel& m) {
                const double y = m.a_sat / s, x = y * y;
                // 1 - delta = e^{-x} q, with erfc(+A/sigma)
                const double q = 1.0 - 0.5 * std::sqrt(specfun::kPi) * y * specfun::erfcx(y);
                const double one_minus = std::exp(-x) * q;
                const double var = std::exp(-x) * (2.0 * q - 1.0) - one_minus * one_minus;
                return BussgangParams{1.0 - one_minus, sigma_sq * std::max(var, 0.0)};
            },
            [&](const Sspa& m) {
                if (m.smoothness != 1.0) {
                    std::ostringstream os;
                    os << "bussgang_closed_form: no closed form for SSPA with nu = " << m.smoothness
                       << "; use bussgang_numeric";
                    throw DomainError(os.str());
                }
                const double y = m.a_sat / s, x = y * y;
                const double delta =
                    0.5 * y * (2.0 * y - std::sqrt(specfun::kPi) * specfun::erfcx(y) * (2.0 * x - 1.0));
                const double w = x * specfun::expint_e1_scaled(x);  // -x e^x Ei(-x)
                const double var = x * (1.0 - w) - delta * delta;
                return BussgangParams{delta, sigma_sq * std::max(var, 0.0)};
            },
            [&](const Twta& m) {
                const double x = m.a_sat * m.a_sat / sigma_sq;
                const double e = specfun::expint_e1_scaled(x);
                const double delta = x * (1.0 - x * e);
                const double var = x * x * ((1.0 + x) * e - 1.0) - delta * delta;
                return BussgangParams{delta, sigma_sq * std::max(var, 0.0)};
            },
        },
        model);
}

BussgangParams bussgang_numeric(const HpaModel& model, double sigma_sq) {
    check_sigma(sigma_sq);
    validate(model);
    if (std::holds_alternative<Ideal>(model)) return {1.0, 0.0};

    // u = r^2 / sigma^2 ~ Exp(1). Work with the residual phi - psi so the
    // nearly linear regime does not cancel.
    const double s = std::sqrt(sigma_sq);
    auto residual = [&](double u) {
        const double r = s * std::sqrt(u);
        return std::complex<double>(r, 0.0) - std::polar(am_am(model, r), am_pm(model, r));
    };
    specfun::QuadratureSpec spec;
    spec.abs_tol = 1e-300;
    spec.rel_tol = 1e-12;
    const double a = saturation_amplitude(model);
    const double kink = a * a / sigma_sq;

    auto expect = [&](auto&& f, const specfun::QuadratureSpec& sp) {
        auto g = [&](double u) { return f(u) * std::exp(-u); };
        return specfun::integrate(g, 0.0, kink, sp) + specfun::integrate(g, kink, specfun::kInf, sp);
    };
    // The residual carries ~1e-16 r of rounding wherever it is nonzero; at low drive that noise
    // is all the quadrature sees, so each integral gets an absolute floor sized by a rough pass.
    specfun::QuadratureSpec rough = spec;
    rough.rel_tol = 1e-2;
    auto floor_of = [&](auto&& mag) {
        specfun::QuadratureSpec sp = spec;
        sp.abs_tol = std::max(1e-300, 1e-15 * expect(mag, rough));
        return sp;
    };
    const auto spec_lin = floor_of([&](double u) { return residual(u) == 0.0 ? 0.0 : sigma_sq * u; });
    const auto spec_sq = floor_of([&](double u) { return s * std::sqrt(u) * std::abs(residual(u)); });

    const double d_re = expect([&](double u) { return s * std::sqrt(u) * residual(u).real(); }, spec_lin) / sigma_sq;
    const double d_im = expect([&](double u) { return s * std::sqrt(u) * residual(u).imag(); }, spec_lin) / sigma_sq;
    const double e2 = expect([&](double u) { return std::norm(residual(u)); }, spec_sq);

    // delta = 1 - d (complex when AM/PM is present); only |delta| enters the SNDR
    const double delta = std::hypot(1.0 - d_re, d_im);
    const double var = e2 - sigma_sq * (d_re * d_re + d_im * d_im);
    return {delta, std::max(var, 0.0)};
}

BussgangParams bussgang(const HpaModel& model, double sigma_sq) {
    if (const auto* m = std::get_if<Sspa>(&model); m && m->smoothness != 1.0) return bussgang_numeric(model, sigma_sq);
    if (const auto* m = std::get_if<Twta>(&model); m && m->phi0 != 0.0) return bussgang_numeric(model, sigma_sq);
    return bussgang_closed_form(model, sigma_sq);
}

double zeta(const BussgangParams& bp, double gain_power, double noise_var) {
    if (!(gain_power > 0.0) || !(noise_var > 0.0)) throw DomainError("zeta: gain and noise variance must be > 0");
    if (bp.sigma_tau_sq == 0.0) return 1.0;
    return 1.0 + bp.sigma_tau_sq / (bp.delta * bp.delta * gain_power * noise_var);
}

}  // namespace relaylab::hpa
