#include "relaylab/error.hpp"
#include "relaylab/specfun.hpp"

#include <cmath>

namespace relaylab::specfun {

namespace {

constexpr double kEps = 1e-16;

// Maclaurin series in long double; good to ~1e-12 absolute up to |x| = 20.
double j0_series(double x) {
    const long double q = -0.25L * x * x;
    long double term = 1.0L, sum = 1.0L;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<long double>(k) * k);
        sum += term;
        if (std::fabs(term) < 1e-22L) break;
    }
    return static_cast<double>(sum);
}

// Hankel expansion, |x| > 20.
double j0_asymptotic(double x) {
    const double y = 1.0 / (8.0 * x);
    double p = 1.0, q = 0.0;
    double term = 1.0;
    // P and Q from (mu - (2k-1)^2) products with mu = 0
    for (int k = 1; k < 60; ++k) {
        const double f = -static_cast<double>((2 * k - 1) * (2 * k - 1)) / k;
        const double next = term * f * y;
        if (std::fabs(next) > std::fabs(term)) break;
        term = next;
        if (std::fabs(term) < 1e-17) break;
        if (k % 2 == 1) {
            q += (k % 4 == 1 ? 1.0 : -1.0) * term;
        } else {
            p += (k % 4 == 2 ? -1.0 : 1.0) * term;
        }
    }
    const double chi = x - 0.25 * kPi;
    return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

// Steed's CF2 (Temme); returns e^x K0 and e^x K1 for x >= 2.
void k01_scaled_cf2(double x, double& k0s, double& k1s) {
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25;
    double q = a1, c = a1, a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i < 10000; ++i) {
        a -= 2 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::fabs(dels / s) < kEps) break;
    }
    h = a1 * h;
    k0s = std::sqrt(kPi / (2.0 * x)) / s;
    k1s = k0s * (x + 0.5 - h) / x;
}

// sum_{k>=0} [psi(k+1) + psi(k+2)] y^k / (k! (k+1)!), y = x^2/4
double k1_psi_sum(double y) {
    double psi1 = -kEulerGamma;        // psi(1)
    double psi2 = 1.0 - kEulerGamma;   // psi(2)
    double w = 1.0, sum = 0.0;
    for (int k = 0; k < 200; ++k) {
        const double t = (psi1 + psi2) * w;
        sum += t;
        if (k > 2 && std::fabs(t) < kEps * std::fabs(sum)) break;
        psi1 += 1.0 / (k + 1);
        psi2 += 1.0 / (k + 2);
        w *= y / ((k + 1.0) * (k + 2.0));
    }
    return sum;
}

}  // namespace

double bessel_j0(double x) {
    if (!std::isfinite(x)) throw DomainError("bessel_j0: non-finite argument");
    x = std::fabs(x);
    return x <= 20.0 ? j0_series(x) : j0_asymptotic(x);
}

double bessel_i1(double x) {
    if (!std::isfinite(x)) throw DomainError("bessel_i1: non-finite argument");
    const double y = 0.25 * x * x;
    double term = 0.5 * x, sum = term;
    for (int k = 1; k < 500; ++k) {
        term *= y / (k * (k + 1.0));
        sum += term;
        if (std::fabs(term) < kEps * std::fabs(sum)) break;
    }
    return sum;
}

double bessel_k1(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("bessel_k1: argument must be > 0");
    if (x <= 2.0) {
        return 1.0 / x + std::log(0.5 * x) * bessel_i1(x) - 0.25 * x * k1_psi_sum(0.25 * x * x);
    }
    double k0s = 0.0, k1s = 0.0;
    k01_scaled_cf2(x, k0s, k1s);
    return k1s * std::exp(-x);
}

double bessel_k1_scaled(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("bessel_k1_scaled: argument must be > 0");
    if (x <= 2.0) return bessel_k1(x) * std::exp(x);
    double k0s = 0.0, k1s = 0.0;
    k01_scaled_cf2(x, k0s, k1s);
    return k1s;
}

double one_minus_z_k1(double z) {
    if (!(z >= 0.0)) throw DomainError("one_minus_z_k1: argument must be >= 0");
    if (z == 0.0) return 0.0;
    if (z >= 2.0) {
        if (z > 745.0) return 1.0;
        return 1.0 - z * bessel_k1(z);
    }
    const double y = 0.25 * z * z;
    return -z * std::log(0.5 * z) * bessel_i1(z) + y * k1_psi_sum(y);
}

}  // namespace relaylab::specfun
