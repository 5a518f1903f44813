#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "layermie/mie.hpp"
#include "layermie/quadrature.hpp"

namespace layermie::calderon {

/// Which tangential trace a field represents: x x E (electric) or x x H (magnetic).
enum class TraceKind { electric, magnetic };

/// Tangential field on the sphere |x| = R in the rotated frame, expanded in the tangential
/// patterns
///   m_o = cos(phi) pi theta^ - sin(phi) tau phi^,   n_o = sin(phi) tau theta^ + cos(phi) pi phi^,
///   m_e = -sin(phi) pi theta^ - cos(phi) tau phi^,  n_e = cos(phi) tau theta^ - sin(phi) pi phi^.
/// The label m = +1 selects the family excited by an x-polarized wave (TE on o, TM on e),
/// m = -1 the family excited by y polarization (TE on e, TM on o). Basis vectors are the traces
/// of the corresponding field patterns:
///   electric: TE -> x^ x m = n,   TM -> x^ x n = -m
///   magnetic: TE -> x^ x n = -m,  TM -> x^ x m = n
class TangentialField {
 public:
  TangentialField(double radius, int n_max, TraceKind kind);

  double radius() const { return radius_; }
  int n_max() const { return n_max_; }
  TraceKind kind() const { return kind_; }

  cplx& at(int n, Parity p, int m);
  cplx at(int n, Parity p, int m) const;

  const std::vector<cplx>& data() const { return c_; }
  std::vector<cplx>& data() { return c_; }

  TangentialField& operator+=(const TangentialField& o);
  TangentialField& operator*=(cplx a);

 private:
  std::size_t index(int n, Parity p, int m) const;

  double radius_;
  int n_max_;
  TraceKind kind_;
  std::vector<cplx> c_;
};

TangentialField operator+(TangentialField a, const TangentialField& b);
TangentialField operator*(cplx a, TangentialField b);

struct Multipliers {
  cplx te;
  cplx tm;
};

/// Diagonal action of x^ x E^s -> x^ x H^s on an outgoing field at wavenumber k:
///   m_TE = -i xi_n'(kR) / xi_n(kR),   m_TM = -i xi_n(kR) / xi_n'(kR).
Multipliers calderon_multipliers(int n, cplx k, double R);

/// Calderon operator at a general (possibly complex) wavenumber.
TangentialField apply_calderon(const TangentialField& lambda, cplx k);
TangentialField apply_Ge(const TangentialField& lambda, double k);
/// Same operator with k replaced by i.
TangentialField apply_Ge_tilde(const TangentialField& lambda);

/// Multipliers of G_e + i G~_e.
Multipliers compact_part_multipliers(int n, double k, double R);

/// Surface measure of |m_sigma n|^2 (equal to that of n_sigma n) over the unit sphere.
double tangential_norm(int n);

/// L^2(|x| = R) inner product <a, b> = int a . conj(b); both fields must share kind and radius.
cplx inner(const TangentialField& a, const TangentialField& b);

/// lambda x x^, expressed in the basis of the other trace kind.
TangentialField cross_normal(const TangentialField& lambda);

/// <G~_e lambda, lambda x x^> for an electric trace lambda.
cplx tilde_pairing(const TangentialField& lambda);

/// int (nu x conj(E)) . H over the sphere, from the electric trace lambda = nu x E and the
/// magnetic trace mu = nu x H.
cplx flux(const TangentialField& lambda, const TangentialField& mu);

/// Spectral proxy sum (1 + n(n+1))^{-1/2} |c|^2 |basis|^2 for the H_div^{-1/2} norm squared.
double proxy_norm_sq(const TangentialField& lambda);

/// Tangential value (rotated-frame Cartesian components) at the unit direction (theta, phi).
Eigen::Vector3cd synthesize(const TangentialField& f, double theta, double phi);

/// Orthogonal projection, by quadrature, of tangential samples (one per quadrature node, rotated frame)
/// onto the basis of the given kind.
TangentialField project(const std::vector<Eigen::Vector3cd>& samples, const SphereQuadrature& quad, double radius,
                        int n_max, TraceKind kind);

}  // namespace layermie::calderon
