#include "catcav/mode_overlap.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "catcav/bessel.hpp"
#include "catcav/errors.hpp"
#include "catcav/fock.hpp"

namespace catcav {

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

Polarization Polarization::normalized(const CVec3& eps) {
  const double n = std::sqrt(std::norm(eps[0]) + std::norm(eps[1]) + std::norm(eps[2]));
  if (!(n > 0.0) || !std::isfinite(n)) throw ParameterError("polarization vector must be nonzero");
  return Polarization({eps[0] / n, eps[1] / n, eps[2] / n});
}

Polarization Polarization::circular_left() {
  return normalized({Complex(1.0, 0.0), Complex(0.0, 1.0), Complex(0.0, 0.0)});
}

Polarization Polarization::linear(const Vec3& direction) {
  return normalized({direction[0], direction[1], direction[2]});
}

double Polarization::self_product() const {
  return std::min(1.0, std::abs(eps_[0] * eps_[0] + eps_[1] * eps_[1] + eps_[2] * eps_[2]));
}

double Polarization::projection(const Vec3& e) const {
  return std::min(1.0, std::abs(e[0] * eps_[0] + e[1] * eps_[1] + e[2] * eps_[2]));
}

double dipole_overlap(double kx, double projection) {
  return sph_j0(kx) + legendre_p2(projection) * sph_j2(kx);
}

Complex pair_overlap(const Vec3& x_i, const Vec3& x_j, const Vec3& k_in, const Polarization& eps) {
  const double k = norm(k_in);
  if (!(k > 0.0)) throw ParameterError("|k_in| must be > 0");
  const Vec3 d{x_i[0] - x_j[0], x_i[1] - x_j[1], x_i[2] - x_j[2]};
  const double r = norm(d);
  if (r == 0.0) return 1.0;
  const double proj = eps.projection({d[0] / r, d[1] / r, d[2] / r});
  const double beta = dot(k_in, d);
  return std::polar(dipole_overlap(k * r, proj), -beta);
}

OverlapMatrix::OverlapMatrix(const AtomCloud& cloud, const Polarization& eps)
    : n_(int(cloud.positions.size())), s_(std::size_t(n_) * n_) {
  if (!(norm(cloud.k_in) > 0.0)) throw ParameterError("|k_in| must be > 0");
  const auto& x = cloud.positions;
  for (int i = 0; i < n_; ++i) {
    s_[std::size_t(i) * n_ + i] = 1.0;
    for (int j = i + 1; j < n_; ++j) {
      const Complex v = pair_overlap(x[i], x[j], cloud.k_in, eps);
      s_[std::size_t(i) * n_ + j] = v;
      s_[std::size_t(j) * n_ + i] = std::conj(v);
    }
  }
}

OverlapMatrix::OverlapMatrix(int n, std::vector<Complex> entries) : n_(n), s_(std::move(entries)) {
  if (n < 0 || s_.size() != std::size_t(n) * n) throw ParameterError("overlap matrix must be n x n");
}

double OverlapMatrix::hermiticity_defect() const {
  double d = 0.0;
  for (int i = 0; i < n_; ++i) {
    d = std::max(d, std::abs((*this)(i, i) - 1.0));
    for (int j = i + 1; j < n_; ++j) d = std::max(d, std::abs((*this)(j, i) - std::conj((*this)(i, j))));
  }
  return d;
}

CollectiveOverlap collective_overlap(const OverlapMatrix& s, bool with_per_atom) {
  using LD = long double;
  using LC = std::complex<long double>;
  const int n = s.size();
  if (n < 2) throw ParameterError("collective overlap needs at least 2 atoms");

  // Row sums R_i = sum_j S_ij; N_dn = sum_i R_i is real for Hermitian S.
  std::vector<LC> row(n);
  LC total = 0;
  for (int i = 0; i < n; ++i) {
    LC acc = 0;
    for (int j = 0; j < n; ++j) acc += LC(s(i, j));
    row[i] = acc;
    total += acc;
  }
  const LD n_dn = total.real();
  if (!(n_dn > 0)) throw NumericalError("degenerate normalization: N_dn <= 0");

  // N_i = sum_{j,k != i} S_jk = N_dn - R_i - conj(R_i) + 1.
  std::vector<LD> w(n);
  LD w_sum = 0;
  for (int i = 0; i < n; ++i) {
    const LD n_i = n_dn - 2 * row[i].real() + 1;
    if (!(n_i > 0)) throw NumericalError("degenerate normalization: N_i <= 0 for atom " + std::to_string(i));
    w[i] = 1 / std::sqrt(n_i);
    w_sum += w[i];
  }

  // N_up = sum_ij w_i w_j (N_dn - R_i - conj(R_j) + S_ij).
  LC rw = 0;
  for (int i = 0; i < n; ++i) rw += row[i] * w[i];
  LC sww = 0;
  for (int i = 0; i < n; ++i) {
    LC acc = 0;
    for (int j = 0; j < n; ++j) acc += LC(s(i, j)) * w[j];
    sww += acc * w[i];
  }
  const LD n_up = (n_dn * w_sum * w_sum - 2 * (rw.real() * w_sum) + sww.real());
  if (!(n_up > 0)) throw NumericalError("degenerate normalization: N_up <= 0");

  // C_i,dn = (N_dn - R_i) w_i / sqrt(N_dn).
  const LD inv_sqrt_dn = 1 / std::sqrt(n_dn);
  CollectiveOverlap out;
  LC c_sum = 0;
  if (with_per_atom) out.per_atom.resize(n);
  for (int i = 0; i < n; ++i) {
    const LC ci = (n_dn - row[i]) * (w[i] * inv_sqrt_dn);
    c_sum += ci;
    if (with_per_atom) out.per_atom[i] = Complex(double(ci.real()), double(ci.imag()));
  }
  const LC c = c_sum / std::sqrt(n_up);
  out.c_up_dn = Complex(double(c.real()), double(c.imag()));
  out.b_up_dn = double(1 - c.real());
  return out;
}

CollectiveOverlap collective_overlap(const AtomCloud& cloud, const Polarization& eps,
                                     bool with_per_atom) {
  return collective_overlap(OverlapMatrix(cloud, eps), with_per_atom);
}

double mode_loss_input(const CollectiveOverlap& collective) { return collective.b_up_dn; }

LemmaCheck fock_overlap_lemma_check(Complex c_updn, Complex alpha_up, Complex alpha_dn,
                                    int cutoff) {
  if (std::abs(c_updn) > 1.0 + 1e-12) throw ParameterError("|C_updn| must be <= 1");
  if (cutoff < 1) throw ParameterError("cutoff must be >= 1");
  const fock::ModeOverlapReference ref =
      fock::coherent_overlap_in_modes(c_updn, alpha_up, alpha_dn, cutoff);
  LemmaCheck out;
  out.brute_force = ref.overlap;
  out.closed_form = std::exp(-0.5 * std::norm(alpha_up) - 0.5 * std::norm(alpha_dn) +
                             std::conj(alpha_up) * c_updn * alpha_dn);
  out.norm_deficit = ref.norm_deficit;
  out.cutoff_sufficient = ref.norm_deficit <= 1e-8;
  return out;
}

}  // namespace catcav
