#pragma once

#include "floq/basis.hpp"

namespace floq {

// Quasienergy operator K = H0 + lambda x cos(t) + (1/i) d/dt on the extended
// space, in hbar*omega units:
//
//   <<n',m'| K |n,m>> = delta_{nn'} delta_{mm'} (E_n + m)
//                     + (lambda/2) X_{n'n} (delta_{m',m+1} + delta_{m',m-1}),
//   X_{n'n} = sqrt(omega_ratio/2) (sqrt(n) delta_{n',n-1} + sqrt(n+1) delta_{n',n+1}).
//
// K is real symmetric and banded: (n, m) couples only to itself and to
// (n +- 1, m +- 1), so a vector supported on the window maps into the
// one-shell extended window exactly.
class OperatorContext {
 public:
  OperatorContext(const SystemParams& params, const AnsatzWindow& window);

  const SystemParams& params() const { return params_; }
  const AnsatzWindow& window() const { return window_; }
  const AnsatzWindow& extended_window() const { return extended_; }

  double level_energy(int n) const { return energies_[n]; }
  double coupling() const { return g_; }  // g = (lambda/2) sqrt(omega_ratio/2)
  const Eigen::VectorXd& energy_table() const { return energies_; }
  const Eigen::VectorXd& sqrt_table() const { return sqrtn_; }

 private:
  SystemParams params_;
  AnsatzWindow window_;
  AnsatzWindow extended_;
  Eigen::VectorXd energies_;  // E_n, n = 0 .. ext.n_max + 2
  Eigen::VectorXd sqrtn_;     // sqrt(n), same index range
  double g_;
};

// P_target K v, computed exactly from the banded matrix elements.  Both v's
// window and target must lie inside the context's extended window.
ExtendedVector apply_K_into(const OperatorContext& ctx, const ExtendedVector& v,
                            const AnsatzWindow& target);

// Exact application for v on ctx.window(); result lives on the extended
// window, which contains the full image (no projection before squaring).
ExtendedVector apply_K(const OperatorContext& ctx, const ExtendedVector& v);

// (K - epsilon) v on the extended window, exact for v on ctx.window().
ExtendedVector residual(const OperatorContext& ctx, const ExtendedVector& v,
                        double epsilon);

// F_eps[v] = ||(K - eps) v||^2 / ||v||^2 with the exact residual.
double functional_F(const OperatorContext& ctx, const ExtendedVector& v,
                    double epsilon);

// <<v|K|v>> / <<v|v>> for v supported on ctx.window().
double expectation_K(const OperatorContext& ctx, const ExtendedVector& v);

}  // namespace floq
