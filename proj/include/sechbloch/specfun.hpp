#pragma once

// Real-argument special functions used by the closed-form solution:
// gamma family, digamma and the Gauss hypergeometric function 2F1 on [0, 1].
// Every function here is pure and reentrant.

namespace sechbloch::specfun {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kEulerGamma = 0.577215664901532860606512090082402431;

/// Parameters (lambda, mu; nu) of F(lambda, mu; nu; z).
struct Hyp2F1Params {
  double lambda = 0.0;
  double mu = 0.0;
  double nu = 1.0;
};

/// ln Gamma(x) for x > 0. Throws DomainError otherwise.
double ln_gamma(double x);

/// Gamma(x). Throws DomainError at the poles x = 0, -1, -2, ...
double gamma(double x);

/// 1/Gamma(x), an entire function: exactly zero at the nonpositive integers.
double recip_gamma(double x);

/// log|Gamma(x)| together with the sign of Gamma(x), for any x that is not a
/// pole. Stays finite where Gamma itself overflows.
struct SignedLog {
  double log_abs = 0.0;
  int sign = 1;
};
SignedLog log_abs_gamma(double x);

/// psi(x) = d/dx ln Gamma(x) for x > 0.
double digamma(double x);

/// sin(pi x) and cos(pi x) with exact zeros at integers and half-integers.
double sin_pi(double x);
double cos_pi(double x);

/// Rising factorial (x)_k = x (x+1) ... (x+k-1), by running product.
double pochhammer(double x, int k);

/// F(lambda, mu; nu; z) for z in [0, 1].
///
/// Direct series for z <= 0.75. Above that the z -> 1-z connection formula is
/// used; when nu - lambda - mu is an integer the logarithmic form of that
/// formula replaces it, and within 1e-4 of an integer the value is
/// interpolated in nu across the degenerate point. At z = 1 the Gauss sum is
/// returned (requires nu - lambda - mu > 0).
double hyp2f1(const Hyp2F1Params& p, double z);

/// Same as above with the complement 1 - z supplied separately, so that
/// points with 1 - z below machine epsilon keep their full precision.
double hyp2f1(const Hyp2F1Params& p, double z, double one_minus_z);

/// Gauss sum F(lambda, mu; nu; 1) = G(nu) G(nu-lambda-mu) / (G(nu-lambda) G(nu-mu)).
/// Denominator poles give an exact zero. Throws DomainError if
/// nu - lambda - mu <= 0.
double hyp2f1_at_unity(const Hyp2F1Params& p);

namespace detail {
/// psi(x) for any real x that is not a nonpositive integer (reflection for x <= 0).
double digamma_any(double x);
}  // namespace detail

}  // namespace sechbloch::specfun
