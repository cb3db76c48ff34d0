#pragma once

// Overlaps of far-field electric-dipole modes radiated by point atoms and of
// the collective (speckle) modes built from them.

#include <array>
#include <complex>
#include <vector>

namespace catcav {

using Complex = std::complex<double>;
using Vec3 = std::array<double, 3>;
using CVec3 = std::array<Complex, 3>;

double dot(const Vec3& a, const Vec3& b);
double norm(const Vec3& a);

class Polarization {
 public:
  // Normalizes `eps` under eps* . eps; throws ParameterError for a zero vector.
  static Polarization normalized(const CVec3& eps);
  static Polarization circular_left();  // (1, i, 0) / sqrt(2)
  static Polarization linear(const Vec3& direction);

  const CVec3& vector() const { return eps_; }
  // |eps . eps| (no conjugation): 1 for linear, 0 for circular.
  double self_product() const;
  // |e . eps| for a real unit vector e.
  double projection(const Vec3& e) const;

 private:
  explicit Polarization(const CVec3& eps) : eps_(eps) {}
  CVec3 eps_;
};

// V_ij as a function of k x_ij and |e_ij . eps|: j0(kx) + P2(proj) j2(kx).
double dipole_overlap(double kx, double projection);

// S_ij = exp(-i k_in . (x_i - x_j)) V_ij, with k = |k_in|. Returns exactly 1
// for coincident atoms.
Complex pair_overlap(const Vec3& x_i, const Vec3& x_j, const Vec3& k_in, const Polarization& eps);

struct AtomCloud {
  std::vector<Vec3> positions;
  Vec3 k_in;
};

// Hermitian matrix of single-atom mode overlaps with unit diagonal.
class OverlapMatrix {
 public:
  OverlapMatrix(const AtomCloud& cloud, const Polarization& eps);
  // Takes an explicit matrix (row-major, n*n); used by tests.
  OverlapMatrix(int n, std::vector<Complex> entries);

  int size() const { return n_; }
  const Complex& operator()(int i, int j) const { return s_[std::size_t(i) * n_ + j]; }

  // Largest |S_ji - conj(S_ij)| and |S_ii - 1|.
  double hermiticity_defect() const;

 private:
  int n_;
  std::vector<Complex> s_;
};

struct CollectiveOverlap {
  Complex c_up_dn;            // <c_up, c_dn>
  double b_up_dn;             // 1 - Re C_updn
  std::vector<Complex> per_atom;  // C_i,dn (filled on request)
};

// Reduces the pair overlaps to the collective-mode overlap for a Dicke-state
// excitation, in O(N^2). Sums run in extended precision since B is ~1e-12.
// Throws NumericalError if a normalization constant is not positive.
CollectiveOverlap collective_overlap(const OverlapMatrix& s, bool with_per_atom = false);
CollectiveOverlap collective_overlap(const AtomCloud& cloud, const Polarization& eps,
                                     bool with_per_atom = false);

// b_mode input for the loss budget: B_updn.
double mode_loss_input(const CollectiveOverlap& collective);

struct LemmaCheck {
  Complex brute_force;
  Complex closed_form;  // exp(-|a_up|^2/2 - |a_dn|^2/2 + conj(a_up) C a_dn)
  double norm_deficit;
  bool cutoff_sufficient;  // norm_deficit <= 1e-8
};

// Coherent states in two modes overlapping by `c_updn`, compared between an
// explicit two-mode Fock construction and the closed form.
LemmaCheck fock_overlap_lemma_check(Complex c_updn, Complex alpha_up, Complex alpha_dn,
                                    int cutoff);

}  // namespace catcav
