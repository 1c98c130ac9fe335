#include "floq/basis.hpp"

#include <cmath>

namespace floq {

AnsatzWindow::AnsatzWindow(int n0, int r) : n0_(n0), r_(r) {
  if (n0 < 0) throw InvalidParameter("AnsatzWindow: n0 must be >= 0");
  if (r < 1) throw InvalidParameter("AnsatzWindow: r must be >= 1");
}

bool AnsatzWindow::contains(int n, int m) const {
  return n >= n_min() && n <= n_max() && m >= m_min() && m <= m_max();
}

bool AnsatzWindow::contains(const AnsatzWindow& other) const {
  return n_min() <= other.n_min() && n_max() >= other.n_max() &&
         m_min() <= other.m_min() && m_max() >= other.m_max();
}

int flat_index(const AnsatzWindow& w, int n, int m) {
  if (!w.contains(n, m)) throw InvalidParameter("flat_index: (n, m) outside window");
  return (m - w.m_min()) * w.n_count() + (n - w.n_min());
}

std::pair<int, int> index_pair(const AnsatzWindow& w, int index) {
  if (index < 0 || index >= w.dim()) {
    throw InvalidParameter("index_pair: flat index out of range");
  }
  int n = w.n_min() + index % w.n_count();
  int m = w.m_min() + index / w.n_count();
  return {n, m};
}

ExtendedVector ExtendedVector::zero(const AnsatzWindow& w) {
  return ExtendedVector{w, Eigen::MatrixXd::Zero(w.n_count(), w.m_count())};
}

ExtendedVector ExtendedVector::basis_state(const AnsatzWindow& w, int n, int m) {
  if (!w.contains(n, m)) {
    throw InvalidParameter("basis_state: (n, m) outside window");
  }
  ExtendedVector v = zero(w);
  v.coeffs(n - w.n_min(), m - w.m_min()) = 1.0;
  return v;
}

double& ExtendedVector::at(int n, int m) {
  if (!window.contains(n, m)) throw InvalidParameter("at: (n, m) outside window");
  return coeffs(n - window.n_min(), m - window.m_min());
}

double ExtendedVector::at(int n, int m) const {
  if (!window.contains(n, m)) throw InvalidParameter("at: (n, m) outside window");
  return coeffs(n - window.n_min(), m - window.m_min());
}

double overlap(const ExtendedVector& u, const ExtendedVector& v) {
  if (!(u.window == v.window)) {
    throw InvalidParameter("overlap: vectors live on different windows");
  }
  return (u.coeffs.array() * v.coeffs.array()).sum();
}

double norm(const ExtendedVector& v) { return v.coeffs.norm(); }

ExtendedVector normalized(ExtendedVector v) {
  double nrm = norm(v);
  if (!(nrm > 0.0)) throw InvalidParameter("normalized: zero vector");
  v.coeffs /= nrm;
  return v;
}

ExtendedVector embed(const ExtendedVector& v, const AnsatzWindow& target) {
  if (!target.contains(v.window)) {
    throw InvalidParameter("embed: target window does not contain source window");
  }
  ExtendedVector out = ExtendedVector::zero(target);
  out.coeffs.block(v.window.n_min() - target.n_min(),
                   v.window.m_min() - target.m_min(), v.window.n_count(),
                   v.window.m_count()) = v.coeffs;
  return out;
}

ExtendedVector restrict_to(const ExtendedVector& v, const AnsatzWindow& target) {
  if (!v.window.contains(target)) {
    throw InvalidParameter("restrict_to: target window exceeds source window");
  }
  ExtendedVector out{target,
                     v.coeffs.block(target.n_min() - v.window.n_min(),
                                    target.m_min() - v.window.m_min(),
                                    target.n_count(), target.m_count())};
  return out;
}

Eigen::VectorXcd time_section(const ExtendedVector& v, double t) {
  const AnsatzWindow& w = v.window;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(w.n_count());
  for (int m = w.m_min(); m <= w.m_max(); ++m) {
    std::complex<double> phase = std::exp(std::complex<double>(0.0, m * t));
    out += phase * v.coeffs.col(m - w.m_min()).cast<std::complex<double>>();
  }
  return out;
}

}  // namespace floq
