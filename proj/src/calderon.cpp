#include "layermie/calderon.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "layermie/errors.hpp"
#include "layermie/specfun.hpp"

namespace layermie::calderon {

namespace {

constexpr cplx kI{0.0, 1.0};

// Which azimuthal family (odd = true) a key lives on.
bool is_odd(Parity p, int m) { return (p == Parity::te) == (m == 1); }

// (theta, phi) components of m_sigma and n_sigma.
void patterns(bool odd, double pi, double tau, double c, double s, double m[2], double nn[2]) {
  if (odd) {
    m[0] = c * pi;
    m[1] = -s * tau;
    nn[0] = s * tau;
    nn[1] = c * pi;
  } else {
    m[0] = -s * pi;
    m[1] = -c * tau;
    nn[0] = c * tau;
    nn[1] = -s * pi;
  }
}

// (theta, phi) components of the basis vector of a key.
void basis(TraceKind kind, Parity p, int m, double pi, double tau, double c, double s, double out[2]) {
  double mv[2], nv[2];
  patterns(is_odd(p, m), pi, tau, c, s, mv, nv);
  const bool n_type = (kind == TraceKind::electric) == (p == Parity::te);
  const double sign = n_type ? 1.0 : -1.0;
  const double* v = n_type ? nv : mv;
  out[0] = sign * v[0];
  out[1] = sign * v[1];
}

void require_compatible(const TangentialField& a, const TangentialField& b) {
  if (a.radius() != b.radius()) throw InvalidArgument("tangential fields live on spheres of different radius");
  if (a.n_max() != b.n_max()) throw InvalidArgument("tangential fields have different truncation");
}

}  // namespace

TangentialField::TangentialField(double radius, int n_max, TraceKind kind)
    : radius_(radius), n_max_(n_max), kind_(kind), c_(static_cast<std::size_t>(4 * std::max(n_max, 0))) {
  if (!(radius > 0.0)) throw InvalidArgument("tangential field radius must be positive");
  if (n_max < 1) throw InvalidArgument("tangential field needs n_max >= 1");
}

std::size_t TangentialField::index(int n, Parity p, int m) const {
  if (n < 1 || n > n_max_ || (m != 1 && m != -1)) {
    throw InvalidArgument("tangential key (" + std::to_string(n) + ", " + std::to_string(m) + ") out of range");
  }
  return static_cast<std::size_t>(n - 1) * 4 + static_cast<std::size_t>(p) * 2 + (m == 1 ? 0 : 1);
}

cplx& TangentialField::at(int n, Parity p, int m) { return c_[index(n, p, m)]; }
cplx TangentialField::at(int n, Parity p, int m) const { return c_[index(n, p, m)]; }

TangentialField& TangentialField::operator+=(const TangentialField& o) {
  require_compatible(*this, o);
  if (kind_ != o.kind_) throw InvalidArgument("cannot add electric and magnetic traces");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

TangentialField& TangentialField::operator*=(cplx a) {
  for (auto& v : c_) v *= a;
  return *this;
}

TangentialField operator+(TangentialField a, const TangentialField& b) { return a += b; }
TangentialField operator*(cplx a, TangentialField b) { return b *= a; }

Multipliers calderon_multipliers(int n, cplx k, double R) {
  if (n < 1) throw InvalidArgument("Calderon multipliers need n >= 1");
  const cplx z = k * R;
  if (z == cplx{0.0, 0.0}) throw SingularArgument("Calderon multipliers are singular at kR = 0");
  // r = xi_n / xi_{n-1} by upward recurrence; xi_n' / xi_n = 1/r - n/z.
  cplx r = (1.0 - kI * z) / z;
  for (int j = 2; j <= n; ++j) r = (2.0 * j - 1.0) / z - 1.0 / r;
  const cplx log_der = 1.0 / r - double(n) / z;
  return {-kI * log_der, -kI / log_der};
}

TangentialField apply_calderon(const TangentialField& lambda, cplx k) {
  if (lambda.kind() != TraceKind::electric) throw InvalidArgument("the Calderon operator acts on electric traces");
  TangentialField out(lambda.radius(), lambda.n_max(), TraceKind::magnetic);
  for (int n = 1; n <= lambda.n_max(); ++n) {
    const Multipliers mult = calderon_multipliers(n, k, lambda.radius());
    for (int m : {1, -1}) {
      out.at(n, Parity::te, m) = mult.te * lambda.at(n, Parity::te, m);
      out.at(n, Parity::tm, m) = mult.tm * lambda.at(n, Parity::tm, m);
    }
  }
  return out;
}

TangentialField apply_Ge(const TangentialField& lambda, double k) {
  if (!(k > 0.0)) throw InvalidArgument("apply_Ge needs a positive real wavenumber");
  return apply_calderon(lambda, cplx{k, 0.0});
}

TangentialField apply_Ge_tilde(const TangentialField& lambda) { return apply_calderon(lambda, kI); }

Multipliers compact_part_multipliers(int n, double k, double R) {
  const Multipliers a = calderon_multipliers(n, cplx{k, 0.0}, R);
  const Multipliers b = calderon_multipliers(n, kI, R);
  return {a.te + kI * b.te, a.tm + kI * b.tm};
}

double tangential_norm(int n) {
  const double nn = double(n) * (n + 1);
  return 2.0 * std::numbers::pi * nn * nn / (2.0 * n + 1.0);
}

cplx inner(const TangentialField& a, const TangentialField& b) {
  require_compatible(a, b);
  if (a.kind() != b.kind()) throw InvalidArgument("inner product of traces of different kind");
  cplx sum{0.0, 0.0};
  for (int n = 1; n <= a.n_max(); ++n) {
    cplx s{0.0, 0.0};
    for (Parity p : {Parity::te, Parity::tm}) {
      for (int m : {1, -1}) s += a.at(n, p, m) * std::conj(b.at(n, p, m));
    }
    sum += tangential_norm(n) * s;
  }
  return a.radius() * a.radius() * sum;
}

TangentialField cross_normal(const TangentialField& lambda) {
  const bool electric = lambda.kind() == TraceKind::electric;
  TangentialField out(lambda.radius(), lambda.n_max(), electric ? TraceKind::magnetic : TraceKind::electric);
  for (int n = 1; n <= lambda.n_max(); ++n) {
    for (int m : {1, -1}) {
      out.at(n, Parity::te, m) = (electric ? -1.0 : 1.0) * lambda.at(n, Parity::te, m);
      out.at(n, Parity::tm, m) = (electric ? 1.0 : -1.0) * lambda.at(n, Parity::tm, m);
    }
  }
  return out;
}

cplx tilde_pairing(const TangentialField& lambda) { return inner(apply_Ge_tilde(lambda), cross_normal(lambda)); }

cplx flux(const TangentialField& lambda, const TangentialField& mu) {
  if (lambda.kind() != TraceKind::electric || mu.kind() != TraceKind::magnetic) {
    throw InvalidArgument("flux needs an electric and a magnetic trace");
  }
  return inner(cross_normal(mu), lambda);
}

double proxy_norm_sq(const TangentialField& lambda) {
  double sum = 0.0;
  for (int n = 1; n <= lambda.n_max(); ++n) {
    double s = 0.0;
    for (Parity p : {Parity::te, Parity::tm}) {
      for (int m : {1, -1}) s += std::norm(lambda.at(n, p, m));
    }
    sum += tangential_norm(n) * s / std::sqrt(1.0 + double(n) * (n + 1));
  }
  return lambda.radius() * lambda.radius() * sum;
}

Eigen::Vector3cd synthesize(const TangentialField& f, double theta, double phi) {
  const int nmax = f.n_max();
  std::vector<double> pi(nmax + 1), tau(nmax + 1);
  specfun::mie_angular_table(nmax, std::cos(theta), pi, tau);
  const double c = std::cos(phi), s = std::sin(phi);
  cplx vt{0.0, 0.0}, vp{0.0, 0.0};
  for (int n = 1; n <= nmax; ++n) {
    for (Parity p : {Parity::te, Parity::tm}) {
      for (int m : {1, -1}) {
        double b[2];
        basis(f.kind(), p, m, pi[n], tau[n], c, s, b);
        const cplx a = f.at(n, p, m);
        vt += a * b[0];
        vp += a * b[1];
      }
    }
  }
  const double ct = std::cos(theta), st = std::sin(theta);
  const Eigen::Vector3d et(ct * c, ct * s, -st), ep(-s, c, 0.0);
  return et.cast<cplx>() * vt + ep.cast<cplx>() * vp;
}

TangentialField project(const std::vector<Eigen::Vector3cd>& samples, const SphereQuadrature& quad, double radius,
                        int n_max, TraceKind kind) {
  if (samples.size() != quad.size()) throw InvalidArgument("sample count does not match the quadrature");
  TangentialField out(radius, n_max, kind);
  std::vector<double> pi(n_max + 1), tau(n_max + 1);
  const int nphi = quad.n_phi();
  for (int i = 0; i < quad.n_theta(); ++i) {
    const double ct = quad.cos_theta()[i];
    specfun::mie_angular_table(n_max, ct, pi, tau);
    for (int j = 0; j < nphi; ++j) {
      const std::size_t q = static_cast<std::size_t>(i) * nphi + j;
      const auto& node = quad.nodes()[q];
      const double c = std::cos(node.phi), s = std::sin(node.phi);
      const double st = std::sin(node.theta);
      const Eigen::Vector3d et(ct * c, ct * s, -st), ep(-s, c, 0.0);
      const cplx ft = et.cast<cplx>().dot(samples[q]);
      const cplx fp = ep.cast<cplx>().dot(samples[q]);
      for (int n = 1; n <= n_max; ++n) {
        for (Parity p : {Parity::te, Parity::tm}) {
          for (int m : {1, -1}) {
            double b[2];
            basis(kind, p, m, pi[n], tau[n], c, s, b);
            out.at(n, p, m) += node.weight * (ft * b[0] + fp * b[1]);
          }
        }
      }
    }
  }
  for (int n = 1; n <= n_max; ++n) {
    const double w = 1.0 / tangential_norm(n);
    for (Parity p : {Parity::te, Parity::tm}) {
      for (int m : {1, -1}) out.at(n, p, m) *= w;
    }
  }
  return out;
}

}  // namespace layermie::calderon
