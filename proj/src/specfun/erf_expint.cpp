#include "relaylab/error.hpp"
#include "relaylab/specfun.hpp"

#include <cmath>

namespace relaylab::specfun {

namespace {

constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;

double erf_series(double x) {
    // 2/sqrt(pi) sum (-1)^n x^(2n+1) / (n! (2n+1))
    const double x2 = x * x;
    double p = x, sum = x;
    for (int n = 1; n < 200; ++n) {
        p *= -x2 / n;
        const double t = p / (2 * n + 1);
        sum += t;
        if (std::fabs(t) < kEps * std::fabs(sum)) break;
    }
    return 2.0 / std::sqrt(kPi) * sum;
}

// e^{x^2} erfc(x) by Lentz on x + (1/2)/(x + 1/(x + (3/2)/(x + ...))), x >= 2
double erfcx_cf(double x) {
    double f = x, c = x, d = 0.0;
    for (int n = 1; n < 5000; ++n) {
        const double an = 0.5 * n;
        d = x + an * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = x + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = c * d;
        f *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return 1.0 / (std::sqrt(kPi) * f);
}

// e^x E1(x) by continued fraction, x > 1
double e1_scaled_cf(double x) {
    double b = x + 1.0;
    double c = 1.0 / kTiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double del = c * d;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) return h;
    }
    throw NumericalError("expint_e1: continued fraction did not converge");
}

double e1_series(double x) {
    // -gamma - ln x - sum (-x)^k / (k k!)
    double term = 1.0, sum = 0.0;
    for (int k = 1; k < 500; ++k) {
        term *= -x / k;
        const double t = term / k;
        sum += t;
        if (std::fabs(t) < kEps * std::fabs(sum)) break;
    }
    return -kEulerGamma - std::log(x) - sum;
}

}  // namespace

double erfc(double x) {
    if (!std::isfinite(x)) throw DomainError("erfc: non-finite argument");
    if (x < 0.0) return 2.0 - erfc(-x);
    if (x < 2.0) return 1.0 - erf_series(x);
    if (x > 27.3) return 0.0;
    return erfcx_cf(x) * std::exp(-x * x);
}

double erfcx(double x) {
    if (!std::isfinite(x)) throw DomainError("erfcx: non-finite argument");
    if (x < 2.0) return std::exp(x * x) * erfc(x);
    return erfcx_cf(x);
}

double gauss_q(double x) { return 0.5 * erfc(x / std::sqrt(2.0)); }

double expint_e1(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("expint_e1: argument must be > 0");
    if (x <= 1.0) return e1_series(x);
    if (x > 740.0) return 0.0;
    return e1_scaled_cf(x) * std::exp(-x);
}

double expint_e1_scaled(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("expint_e1_scaled: argument must be > 0");
    if (x <= 1.0) return e1_series(x) * std::exp(x);
    return e1_scaled_cf(x);
}

double expint_ei(double x) {
    if (!std::isfinite(x)) throw DomainError("expint_ei: non-finite argument");
    if (x == 0.0) throw DomainError("expint_ei: logarithmic singularity at 0");
    if (x < 0.0) return -expint_e1(-x);
    if (x < 40.0) {
        double term = 1.0, sum = 0.0;
        for (int k = 1; k < 500; ++k) {
            term *= x / k;
            const double t = term / k;
            sum += t;
            if (t < kEps * sum) break;
        }
        return kEulerGamma + std::log(x) + sum;
    }
    if (x > 709.0) return kInf;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 40; ++k) {
        term *= k / x;
        sum += term;
        if (term < kEps * sum) break;
    }
    return std::exp(x) / x * sum;
}

}  // namespace relaylab::specfun
