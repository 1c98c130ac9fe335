#pragma once

#include <utility>

#include "floq/quasienergy_operator.hpp"

namespace floq {

struct VariationalState {
  ExtendedVector vec;   // normalized, supported on the operator window
  double epsilon;       // hbar*omega units, unfolded
  double F;             // functional value at (vec, epsilon)
  long iterations = 0;  // relaxation iterations spent producing this state
};

struct ConvergenceReport {
  bool converged = false;
  double final_F = 0.0;
  double delta_F_last = 0.0;
  long iterations = 0;
  bool representable = false;
  long descent_violations = 0;  // iterations where F increased (expected 0)
};

// Step size dtau = safety / B^2 where B is a Gershgorin bound on the spectral
// radius of (K - epsilon) over the extended window.  For safety in (0, 1) the
// power-iteration matrix I - dtau (K - eps)^2 is positive definite on the
// window, which guarantees monotone descent of F.
double dtau_rule(const OperatorContext& ctx, double epsilon, double safety);

// One imaginary-time step on (K - eps)^2 at fixed epsilon:
//   c' = normalize(c - dtau P_W [(K - eps) (K - eps) c])
// with the inner residual evaluated exactly on the extended window.
VariationalState imaginary_time_step(const OperatorContext& ctx,
                                     const VariationalState& state, double dtau);

// epsilon <- <<K>>; vec unchanged; F recomputed at the new epsilon (equal to
// the variance <<K^2>> - <<K>>^2, the minimum of F over epsilon at fixed vec).
VariationalState update_epsilon(const OperatorContext& ctx, VariationalState state);

// Basis-state seed |n, m>> with epsilon = E_n + m.
VariationalState make_basis_seed(const OperatorContext& ctx, int n, int m);

// Alternate imaginary_time_step and update_epsilon until the change of F per
// iteration falls below cfg.tol_F or cfg.max_iters is reached.
std::pair<VariationalState, ConvergenceReport> relax(const OperatorContext& ctx,
                                                     VariationalState seed,
                                                     const NumericsConfig& cfg);

}  // namespace floq
