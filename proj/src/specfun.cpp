#include "layermie/specfun.hpp"

#include <cmath>
#include <string>

#include "layermie/errors.hpp"

namespace layermie::specfun {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kRescale = 1e250;

void check_order(int n) {
  if (n < 0) throw InvalidArgument("Bessel order must be non-negative, got " + std::to_string(n));
  if (n > kMaxOrder) {
    throw UnsupportedOrder("Bessel order " + std::to_string(n) + " exceeds the supported maximum " +
                           std::to_string(kMaxOrder));
  }
}

void check_argument(cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw InvalidArgument("Bessel argument must be finite");
  }
}

// sin(z), cos(z) times e^{-|Im z|}.
struct ScaledTrig {
  cplx sin;
  cplx cos;
};

ScaledTrig scaled_trig(cplx z) {
  const double y = z.imag();
  const double ay = std::abs(y);
  if (ay < 300.0) {
    const double s = std::exp(-ay);
    return {std::sin(z) * s, std::cos(z) * s};
  }
  const cplx ep = std::polar(std::exp(-y - ay), z.real());
  const cplx em = std::polar(std::exp(y - ay), -z.real());
  return {(ep - em) / (2.0 * kI), (ep + em) / 2.0};
}

// Multiply a scaled value by e^{log_factor}, failing if the result is not representable.
cplx unscale(cplx v, double log_factor, const char* what) {
  if (v == cplx{0.0, 0.0}) return v;
  cplx out;
  if (log_factor < 600.0) {
    out = v * std::exp(log_factor);
  } else {
    const double logmag = std::log(std::abs(v)) + log_factor;
    if (logmag > 709.0) throw RangeError(std::string(what) + " overflows double precision");
    out = std::polar(std::exp(logmag), std::arg(v));
  }
  if (!std::isfinite(out.real()) || !std::isfinite(out.imag())) {
    throw RangeError(std::string(what) + " overflows double precision");
  }
  return out;
}

void check_finite(cplx v, const char* what) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    throw RangeError(std::string(what) + " overflows double precision");
  }
}

std::vector<cplx> j_upward(int n_max, cplx z, const ScaledTrig& t) {
  std::vector<cplx> out(n_max + 1);
  out[0] = t.sin / z;
  if (n_max >= 1) out[1] = t.sin / (z * z) - t.cos / z;
  for (int n = 1; n < n_max; ++n) out[n + 1] = double(2 * n + 1) / z * out[n] - out[n - 1];
  return out;
}

std::vector<cplx> j_miller(int n_max, cplx z, const ScaledTrig& t) {
  const double az = std::abs(z);
  int m = std::max(n_max, static_cast<int>(std::ceil(az)));
  double acc = 0.0;
  while (acc > -75.0) {
    ++m;
    acc += 2.0 * std::log(az / (2.0 * m + 1.0));
  }
  const int start = m + 5;

  std::vector<cplx> f(n_max + 1);
  cplx above{0.0, 0.0};
  cplx cur{1e-30, 0.0};
  for (int k = start; k >= 1; --k) {
    if (k <= n_max) f[k] = cur;
    const cplx below = double(2 * k + 1) / z * cur - above;
    above = cur;
    cur = below;
    if (std::abs(cur) > kRescale) {
      cur /= kRescale;
      above /= kRescale;
      for (int i = k; i <= n_max; ++i) f[i] /= kRescale;
    }
  }
  f[0] = cur;

  const cplx j0 = t.sin / z;
  cplx scale;
  if (n_max >= 1) {
    const cplx j1 = t.sin / (z * z) - t.cos / z;
    scale = std::abs(j0) >= std::abs(j1) ? j0 / f[0] : j1 / f[1];
  } else {
    scale = j0 / f[0];
  }
  for (auto& v : f) v *= scale;
  return f;
}

}  // namespace

std::vector<cplx> sph_bessel_j_scaled(int n_max, cplx z) {
  check_order(n_max);
  check_argument(z);
  if (z == cplx{0.0, 0.0}) {
    std::vector<cplx> out(n_max + 1, cplx{0.0, 0.0});
    out[0] = 1.0;
    return out;
  }
  const ScaledTrig t = scaled_trig(z);
  if (std::abs(z.imag()) < 1e-3 * std::abs(z) && std::abs(z) > n_max + 10) return j_upward(n_max, z, t);
  return j_miller(n_max, z, t);
}

std::vector<cplx> sph_bessel_y_scaled(int n_max, cplx z) {
  check_order(n_max);
  check_argument(z);
  if (z == cplx{0.0, 0.0}) throw SingularArgument("y_n is singular at z = 0");
  const ScaledTrig t = scaled_trig(z);
  std::vector<cplx> out(n_max + 1);
  out[0] = -t.cos / z;
  if (n_max >= 1) out[1] = -t.cos / (z * z) - t.sin / z;
  for (int n = 1; n < n_max; ++n) out[n + 1] = double(2 * n + 1) / z * out[n] - out[n - 1];
  return out;
}

std::vector<cplx> sph_hankel1_scaled(int n_max, cplx z) {
  check_order(n_max);
  check_argument(z);
  if (z == cplx{0.0, 0.0}) throw SingularArgument("h_n^(1) is singular at z = 0");
  const cplx e = std::polar(1.0, z.real());
  std::vector<cplx> out(n_max + 1);
  out[0] = -kI * e / z;
  if (n_max >= 1) out[1] = -e * (z + kI) / (z * z);
  for (int n = 1; n < n_max; ++n) out[n + 1] = double(2 * n + 1) / z * out[n] - out[n - 1];
  return out;
}

cplx sph_bessel_j(int n, cplx z) {
  const auto js = sph_bessel_j_scaled(n, z);
  return unscale(js[n], std::abs(z.imag()), "j_n");
}

cplx sph_bessel_y(int n, cplx z) {
  const auto ys = sph_bessel_y_scaled(n, z);
  check_finite(ys[n], "y_n");
  return unscale(ys[n], std::abs(z.imag()), "y_n");
}

cplx sph_hankel1(int n, cplx z) {
  const auto hs = sph_hankel1_scaled(n, z);
  check_finite(hs[n], "h_n");
  return unscale(hs[n], -z.imag(), "h_n");
}

RiccatiTable riccati_scaled(RiccatiKind kind, int n_max, cplx z) {
  RiccatiTable t;
  t.value.resize(n_max + 1);
  t.derivative.resize(n_max + 1);
  std::vector<cplx> f;
  if (kind == RiccatiKind::psi) {
    f = sph_bessel_j_scaled(n_max, z);
    t.derivative[0] = z == cplx{0.0, 0.0} ? cplx{1.0, 0.0} : scaled_trig(z).cos;
  } else {
    f = sph_hankel1_scaled(n_max, z);
    t.derivative[0] = std::polar(1.0, z.real());
  }
  t.value[0] = z * f[0];
  for (int n = 1; n <= n_max; ++n) {
    t.value[n] = z * f[n];
    t.derivative[n] = z * f[n - 1] - double(n) * f[n];
  }
  return t;
}

RadialPair riccati(RiccatiKind kind, int n, cplx z) {
  const RiccatiTable t = riccati_scaled(kind, n, z);
  const double log_factor = kind == RiccatiKind::psi ? std::abs(z.imag()) : -z.imag();
  const char* name = kind == RiccatiKind::psi ? "psi_n" : "xi_n";
  check_finite(t.value[n], name);
  check_finite(t.derivative[n], name);
  return {unscale(t.value[n], log_factor, name), unscale(t.derivative[n], log_factor, name)};
}

void mie_angular_table(int n_max, double mu, std::span<double> pi, std::span<double> tau) {
  if (!(std::abs(mu) <= 1.0)) throw InvalidArgument("cos(theta) must lie in [-1, 1]");
  check_order(n_max);
  if (pi.size() < static_cast<std::size_t>(n_max + 1) || tau.size() < static_cast<std::size_t>(n_max + 1)) {
    throw InvalidArgument("angular table spans are too short");
  }
  pi[0] = 0.0;
  tau[0] = 0.0;
  if (n_max == 0) return;
  pi[1] = 1.0;
  tau[1] = mu;
  for (int n = 2; n <= n_max; ++n) {
    pi[n] = ((2.0 * n - 1.0) * mu * pi[n - 1] - n * pi[n - 2]) / (n - 1.0);
    tau[n] = n * mu * pi[n] - (n + 1.0) * pi[n - 1];
  }
}

MieAngular mie_angular(int n, double mu) {
  if (n < 1) throw InvalidArgument("angular order must be >= 1");
  std::vector<double> pi(n + 1), tau(n + 1);
  mie_angular_table(n, mu, pi, tau);
  return {pi[n], tau[n]};
}

}  // namespace layermie::specfun
