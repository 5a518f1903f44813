#pragma once

#include <complex>
#include <span>
#include <vector>

namespace layermie::specfun {

using cplx = std::complex<double>;

/// Highest supported Bessel order.
inline constexpr int kMaxOrder = 512;

struct RadialPair {
  cplx value;
  cplx derivative;  // d/dz
};

enum class RiccatiKind { psi, xi };

/// Spherical Bessel function of the first kind j_n(z).
cplx sph_bessel_j(int n, cplx z);

/// Spherical Bessel function of the second kind y_n(z), z != 0.
cplx sph_bessel_y(int n, cplx z);

/// Spherical Hankel function h_n^(1)(z) = j_n(z) + i y_n(z), z != 0.
cplx sph_hankel1(int n, cplx z);

/// Riccati-Bessel psi_n(z) = z j_n(z) or xi_n(z) = z h_n^(1)(z) with derivative.
RadialPair riccati(RiccatiKind kind, int n, cplx z);

/// j_n(z) e^{-|Im z|} for n = 0..n_max.
///
/// Upward recurrence is used only for nearly real z with |z| > n_max + 10, where
/// every requested order lies below the turning point. Everywhere else (including
/// complex z with large |z|, where the growing h^(2) component contaminates the
/// upward sweep) a downward Miller sweep normalized against j_0 or j_1 is used.
std::vector<cplx> sph_bessel_j_scaled(int n_max, cplx z);

/// y_n(z) e^{-|Im z|} for n = 0..n_max by upward recurrence.
std::vector<cplx> sph_bessel_y_scaled(int n_max, cplx z);

/// h_n^(1)(z) e^{Im z} for n = 0..n_max by upward recurrence.
std::vector<cplx> sph_hankel1_scaled(int n_max, cplx z);

/// Riccati-Bessel values and derivatives for n = 0..n_max, carrying the same
/// exponential scale as the underlying j (e^{-|Im z|}) or h (e^{Im z}) arrays.
struct RiccatiTable {
  std::vector<cplx> value;
  std::vector<cplx> derivative;
};
RiccatiTable riccati_scaled(RiccatiKind kind, int n_max, cplx z);

struct MieAngular {
  double pi;
  double tau;
};

/// pi_n = P_n^1 / sin(theta), tau_n = dP_n^1/dtheta at cos(theta) = mu.
MieAngular mie_angular(int n, double mu);

/// pi_n, tau_n for n = 0..n_max written into the spans (size n_max + 1).
void mie_angular_table(int n_max, double mu, std::span<double> pi, std::span<double> tau);

}  // namespace layermie::specfun
