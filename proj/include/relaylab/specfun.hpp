#pragma once

#include <functional>
#include <limits>

namespace relaylab::specfun {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kEulerGamma = 0.57721566490153286061;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Gamma family. gamma_fn/log_gamma use a Lanczos fit (g = 7, 9 terms).
double gamma_fn(double x);
double log_gamma(double x);  // log|Gamma(x)|
double digamma(double x);
double binomial(int n, int k);

double bessel_j0(double x);
double bessel_i1(double x);
double bessel_k1(double x);
double bessel_k1_scaled(double x);  // e^x K1(x)
// 1 - z K1(z) for z >= 0, accurate as z -> 0.
double one_minus_z_k1(double z);

double erfc(double x);
double erfcx(double x);  // e^{x^2} erfc(x)
double gauss_q(double x);

double expint_ei(double x);
double expint_e1(double x);
double expint_e1_scaled(double x);  // e^x E1(x), x > 0

double hyp2f1(double a, double b, double c, double z);
double hypergeometric_u(double a, double b, double x);
double whittaker_w(double p, double q, double x);

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_subdivisions = 2000;
};

// Adaptive Gauss-Kronrod (7/15). hi may be +infinity. Throws NumericalError when
// the tolerance cannot be met within max_subdivisions.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureSpec& spec = {});

}  // namespace relaylab::specfun
