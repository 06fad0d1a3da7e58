#include "sechbloch/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "sechbloch/errors.hpp"

namespace sechbloch::specfun {

namespace {

constexpr double kLogPi = 1.144729885849400174143427351353058712;
constexpr double kHalfLogTwoPi = 0.918938533204672741780329736405617640;

// zeta(k) - 1 for k = 2..33
constexpr std::array<double, 32> kZetaMinusOne = {
    0.6449340668482264364724,      0.2020569031595942853997,
    0.082323233711138191516,       0.03692775514336992633137,
    0.01734306198444913971452,     0.008349277381922826839798,
    0.004077356197944339378685,    0.002008392826082214417853,
    0.000994575127818085337146,    0.0004941886041194645587023,
    0.000246086553308048298638,    0.0001227133475784891467518,
    0.00006124813505870482925855,  0.00003058823630702049355173,
    0.00001528225940865187173257,  0.0000076371976378997622736,
    0.000003817293264999839856462, 0.000001908212716553938925657,
    9.53962033872796113152e-7,     4.769329867878064631167e-7,
    2.384505027277329900036e-7,    1.192199259653110730678e-7,
    5.960818905125947961244e-8,    2.980350351465228018606e-8,
    1.490155482836504123466e-8,    7.450711789835429491981e-9,
    3.725334024788457054819e-9,    1.862659723513049006404e-9,
    9.313274324196681828718e-10,   4.656629065033784072989e-10,
    2.328311833676505492001e-10,   1.164155017270051977593e-10,
};

// B_{2k} / (2k (2k-1)), k = 1..8
constexpr std::array<double, 8> kStirlingCoeffs = {
    1.0 / 12.0,   -1.0 / 360.0,      1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0, -691.0 / 360360.0, 1.0 / 156.0,  -3617.0 / 122400.0,
};

// B_{2k} / (2k), k = 1..7
constexpr std::array<double, 7> kDigammaCoeffs = {
    1.0 / 12.0,  -1.0 / 120.0,      1.0 / 252.0, -1.0 / 240.0,
    1.0 / 132.0, -691.0 / 32760.0,  1.0 / 12.0,
};

constexpr int kMaxSeriesTerms = 1'000'000;
constexpr double kSeriesTol = 1e-17;
constexpr double kDirectSeriesLimit = 0.75;
constexpr double kDegenerateBand = 1e-4;
constexpr double kDegenerateStep = 2e-4;

bool is_nonpositive_integer(double x) { return x <= 0.0 && std::floor(x) == x; }

// ln Gamma(1 + e) for |e| <= 1/2.
double ln_gamma_1p(double e) {
  double sum = 0.0;
  double power = -e;  // (-e)^k
  for (std::size_t i = 0; i < kZetaMinusOne.size(); ++i) {
    power *= -e;
    const double k = static_cast<double>(i + 2);
    const double term = kZetaMinusOne[i] * power / k;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return -std::log1p(e) + e * (1.0 - kEulerGamma) + sum;
}

double ln_gamma_stirling(double x) {
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double corr = 0.0;
  double p = inv;
  for (double c : kStirlingCoeffs) {
    corr += c * p;
    p *= inv2;
  }
  return (x - 0.5) * std::log(x) - x + kHalfLogTwoPi + corr;
}

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw DomainError(std::string(what) + ": non-finite argument");
}

// Plain power series of 2F1. Terminates exactly when lambda or mu is a
// nonpositive integer.
double series(double a, double b, double c, double z) {
  double term = 1.0;
  double sum = 1.0;
  for (int n = 0; n < kMaxSeriesTerms; ++n) {
    const double ratio = (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
    term *= ratio;
    sum += term;
    if (term == 0.0) return sum;
    if (std::abs(ratio) < 1.0 && std::abs(term) <= kSeriesTol * std::abs(sum)) return sum;
  }
  throw std::runtime_error("hyp2f1: series did not converge within 1e6 terms");
}

// z -> 1-z connection formula, valid when s = c-a-b is not an integer.
double connection(double a, double b, double c, double zc) {
  const double s = c - a - b;
  const double gc = gamma(c);
  double result = 0.0;
  const double r1 = recip_gamma(c - a) * recip_gamma(c - b);
  if (r1 != 0.0) result += gc * gamma(s) * r1 * series(a, b, 1.0 - s, zc);
  const double r2 = recip_gamma(a) * recip_gamma(b);
  if (r2 != 0.0) {
    result += gc * gamma(-s) * r2 * std::pow(zc, s) * series(c - a, c - b, 1.0 + s, zc);
  }
  return result;
}

// Logarithmic connection formula for c = a + b + m, m = 0, 1, 2, ...
double connection_integer(double a, double b, int m, double zc) {
  const double c = a + b + m;
  double result = 0.0;

  if (m > 0) {
    const double pre = gamma(static_cast<double>(m)) * gamma(c) * recip_gamma(a + m) *
                       recip_gamma(b + m);
    if (pre != 0.0) {
      double term = 1.0;
      double sum = 1.0;
      for (int k = 0; k + 1 < m; ++k) {
        term *= (a + k) * (b + k) / ((k + 1.0) * (1.0 - m + k)) * zc;
        sum += term;
      }
      result += pre * sum;
    }
  }

  const double pre = gamma(c) * recip_gamma(a) * recip_gamma(b);
  if (pre == 0.0) return result;

  const double log_zc = std::log(zc);
  double psi_k1 = -kEulerGamma;  // psi(k+1)
  double psi_km1 = -kEulerGamma;  // psi(k+m+1)
  double coef = 1.0;              // (a+m)_k (b+m)_k / (k! (k+m)!)
  for (int j = 1; j <= m; ++j) {
    psi_km1 += 1.0 / j;
    coef /= j;
  }
  double psi_a = detail::digamma_any(a + m);
  double psi_b = detail::digamma_any(b + m);

  double sum = 0.0;
  bool converged = false;
  for (int k = 0; k < kMaxSeriesTerms; ++k) {
    const double term = coef * (log_zc - psi_k1 - psi_km1 + psi_a + psi_b);
    sum += term;
    const double ratio = (a + m + k) * (b + m + k) / ((k + 1.0) * (k + m + 1.0)) * zc;
    if (coef == 0.0 ||
        (k > 0 && std::abs(ratio) < 1.0 && std::abs(term) <= kSeriesTol * std::abs(sum))) {
      converged = true;
      break;
    }
    coef *= ratio;
    psi_k1 += 1.0 / (k + 1.0);
    psi_km1 += 1.0 / (k + m + 1.0);
    psi_a += 1.0 / (a + m + k);
    psi_b += 1.0 / (b + m + k);
  }
  if (!converged) throw std::runtime_error("hyp2f1: logarithmic series did not converge");

  const double sign = (m % 2 == 0) ? 1.0 : -1.0;  // (z-1)^m = (-zc)^m
  result -= sign * std::pow(zc, m) * pre * sum;
  return result;
}

double hyp2f1_impl(double a, double b, double c, double z, double zc) {
  if (z == 0.0) return 1.0;
  if (is_nonpositive_integer(a) || is_nonpositive_integer(b)) return series(a, b, c, z);
  if (zc == 0.0) return hyp2f1_at_unity({a, b, c});
  if (z <= kDirectSeriesLimit) return series(a, b, c, z);

  const double s = c - a - b;
  const double m = std::round(s);
  const double eps = s - m;
  if (std::abs(eps) > kDegenerateBand) return connection(a, b, c, zc);

  if (m < 0.0) {
    // Euler: F(a,b;c;z) = (1-z)^s F(c-a, c-b; c; z) turns s into -s.
    return std::pow(zc, s) * hyp2f1_impl(c - a, c - b, c, z, zc);
  }
  const int mi = static_cast<int>(m);
  if (eps == 0.0) return connection_integer(a, b, mi, zc);

  // Quadratic interpolation in c through the degenerate point.
  const double base = a + b + mi;
  const double f0 = connection_integer(a, b, mi, zc);
  const double fm = connection(a, b, base - kDegenerateStep, zc);
  const double fp = connection(a, b, base + kDegenerateStep, zc);
  const double h = kDegenerateStep;
  return f0 + eps * (fp - fm) / (2.0 * h) + eps * eps * (fp - 2.0 * f0 + fm) / (2.0 * h * h);
}

}  // namespace

double ln_gamma(double x) {
  if (std::isnan(x) || x <= 0.0) throw DomainError("ln_gamma: requires x > 0");
  if (std::isinf(x)) return x;
  if (x < 0.5) return ln_gamma(x + 1.0) - std::log(x);
  if (x < 1.5) return ln_gamma_1p(x - 1.0);
  if (x < 2.5) {
    const double d = x - 2.0;
    return std::log1p(d) + ln_gamma_1p(d);
  }
  if (x >= 13.0) return ln_gamma_stirling(x);
  double y = x;
  double product = 1.0;
  while (y >= 2.5) {
    y -= 1.0;
    product *= y;
  }
  return std::log(product) + ln_gamma(y);
}

double sin_pi(double x) {
  if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
  double r = std::remainder(x, 2.0);  // [-1, 1]
  if (r > 0.5) {
    r = 1.0 - r;
  } else if (r < -0.5) {
    r = -1.0 - r;
  }
  return std::sin(kPi * r);
}

double cos_pi(double x) {
  if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
  const double r = std::abs(std::remainder(x, 2.0));  // [0, 1]
  return std::sin(kPi * (0.5 - r));
}

SignedLog log_abs_gamma(double x) {
  require_finite(x, "log_abs_gamma");
  if (x > 0.0) return {ln_gamma(x), 1};
  if (is_nonpositive_integer(x)) throw DomainError("log_abs_gamma: pole at nonpositive integer");
  const double s = sin_pi(x);
  return {kLogPi - std::log(std::abs(s)) - ln_gamma(1.0 - x), s > 0.0 ? 1 : -1};
}

double gamma(double x) {
  require_finite(x, "gamma");
  if (is_nonpositive_integer(x)) throw DomainError("gamma: pole at nonpositive integer");
  const SignedLog g = log_abs_gamma(x);
  return g.sign * std::exp(g.log_abs);
}

double recip_gamma(double x) {
  if (std::isnan(x)) return x;
  if (std::isinf(x)) return x > 0 ? 0.0 : std::numeric_limits<double>::quiet_NaN();
  if (x > 0.0) return std::exp(-ln_gamma(x));
  if (is_nonpositive_integer(x)) return 0.0;
  // 1/Gamma(x) = sin(pi x) Gamma(1-x) / pi
  const double s = sin_pi(x);
  const double mag = std::exp(ln_gamma(1.0 - x) + std::log(std::abs(s)) - kLogPi);
  return s > 0.0 ? mag : -mag;
}

double digamma(double x) {
  if (std::isnan(x) || x <= 0.0) throw DomainError("digamma: requires x > 0");
  if (std::isinf(x)) return x;
  double shift = 0.0;
  while (x < 10.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  const double inv2 = 1.0 / (x * x);
  double series_sum = 0.0;
  double p = inv2;
  for (double c : kDigammaCoeffs) {
    series_sum += c * p;
    p *= inv2;
  }
  return shift + std::log(x) - 0.5 / x - series_sum;
}

double detail::digamma_any(double x) {
  require_finite(x, "digamma");
  if (x > 0.0) return digamma(x);
  if (is_nonpositive_integer(x)) throw DomainError("digamma: pole at nonpositive integer");
  // psi(x) = psi(1-x) - pi cot(pi x)
  return digamma(1.0 - x) - kPi * cos_pi(x) / sin_pi(x);
}

double pochhammer(double x, int k) {
  if (k < 0) throw DomainError("pochhammer: requires k >= 0");
  double p = 1.0;
  for (int j = 0; j < k; ++j) p *= x + j;
  return p;
}

double hyp2f1(const Hyp2F1Params& p, double z) { return hyp2f1(p, z, 1.0 - z); }

double hyp2f1(const Hyp2F1Params& p, double z, double one_minus_z) {
  require_finite(p.lambda, "hyp2f1");
  require_finite(p.mu, "hyp2f1");
  require_finite(p.nu, "hyp2f1");
  if (!(z >= 0.0 && z <= 1.0) || !(one_minus_z >= 0.0 && one_minus_z <= 1.0)) {
    throw DomainError("hyp2f1: requires 0 <= z <= 1");
  }
  if (p.nu <= 0.0 && std::abs(p.nu - std::round(p.nu)) < 1e-12) {
    throw DomainError("hyp2f1: nu at a nonpositive integer");
  }
  return hyp2f1_impl(p.lambda, p.mu, p.nu, z, one_minus_z);
}

double hyp2f1_at_unity(const Hyp2F1Params& p) {
  const double s = p.nu - p.lambda - p.mu;
  if (!(s > 0.0)) throw DomainError("hyp2f1_at_unity: requires nu - lambda - mu > 0");
  if (is_nonpositive_integer(p.nu)) throw DomainError("hyp2f1_at_unity: nu at a pole");
  const double d1 = p.nu - p.lambda;
  const double d2 = p.nu - p.mu;
  if (is_nonpositive_integer(d1) || is_nonpositive_integer(d2)) return 0.0;
  const SignedLog gn = log_abs_gamma(p.nu);
  const SignedLog gs = log_abs_gamma(s);
  const SignedLog g1 = log_abs_gamma(d1);
  const SignedLog g2 = log_abs_gamma(d2);
  const int sign = gn.sign * gs.sign * g1.sign * g2.sign;
  return sign * std::exp(gn.log_abs + gs.log_abs - g1.log_abs - g2.log_abs);
}

}  // namespace sechbloch::specfun
