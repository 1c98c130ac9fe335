#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>

#include "floq/units.hpp"

namespace floq {

// Truncated window of the extended-space product basis |n, m>> = e^{i m t} |n>:
// n in [max(n0 - r, 0), n0 + r], m in [-r, r].  The basis is orthonormal under
// the extended scalar product (1/T) int_0^T dt <.|.>.
class AnsatzWindow {
 public:
  AnsatzWindow(int n0, int r);

  int n0() const { return n0_; }
  int r() const { return r_; }
  int n_min() const { return n0_ > r_ ? n0_ - r_ : 0; }
  int n_max() const { return n0_ + r_; }
  int m_min() const { return -r_; }
  int m_max() const { return r_; }
  int n_count() const { return n_max() - n_min() + 1; }
  int m_count() const { return 2 * r_ + 1; }
  int dim() const { return n_count() * m_count(); }

  bool contains(int n, int m) const;
  bool contains(const AnsatzWindow& other) const;

  // Window grown by one shell: one unit in n above, one below when n_min > 0,
  // and one unit in |m| on both sides.  Equals AnsatzWindow(n0, r + 1).
  AnsatzWindow extended() const { return AnsatzWindow(n0_, r_ + 1); }

  friend bool operator==(const AnsatzWindow&, const AnsatzWindow&) = default;

 private:
  int n0_;
  int r_;
};

// Flat layout is m-major with n contiguous:
//   index = (m - m_min) * n_count + (n - n_min).
int flat_index(const AnsatzWindow& w, int n, int m);
std::pair<int, int> index_pair(const AnsatzWindow& w, int index);

// Real coefficient vector c_{n,m} over a window; the state is zero outside.
// coeffs(i, j) = c_{n_min + i, m_min + j}; column-major storage realizes the
// documented flat layout.
struct ExtendedVector {
  AnsatzWindow window;
  Eigen::MatrixXd coeffs;

  static ExtendedVector zero(const AnsatzWindow& w);
  static ExtendedVector basis_state(const AnsatzWindow& w, int n, int m);

  double& at(int n, int m);
  double at(int n, int m) const;
};

// Extended scalar product; real coefficients make it a plain dot product.
double overlap(const ExtendedVector& u, const ExtendedVector& v);
double norm(const ExtendedVector& v);
ExtendedVector normalized(ExtendedVector v);

// Copy into a containing window (norm preserving) / project onto a sub-window.
ExtendedVector embed(const ExtendedVector& v, const AnsatzWindow& target);
ExtendedVector restrict_to(const ExtendedVector& v, const AnsatzWindow& target);

// Section psi_n(t) = sum_m c_{n,m} e^{i m t}, indexed over the window's
// n-range (entry k corresponds to n = n_min + k).
Eigen::VectorXcd time_section(const ExtendedVector& v, double t);

}  // namespace floq
