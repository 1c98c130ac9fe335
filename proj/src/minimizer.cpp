#include "floq/minimizer.hpp"

#include <algorithm>
#include <cmath>

namespace floq {

double dtau_rule(const OperatorContext& ctx, double epsilon, double safety) {
  if (!(safety > 0.0 && safety < 1.0)) {
    throw InvalidParameter("dtau_rule: safety must lie in (0, 1)");
  }
  const AnsatzWindow& ext = ctx.extended_window();
  const Eigen::VectorXd& E = ctx.energy_table();
  const Eigen::VectorXd& sq = ctx.sqrt_table();
  const double g = ctx.coupling();

  // Row sums of |K - eps|: the m-dependence of the diagonal is linear, so the
  // maximum over the window sits at an m endpoint.
  double bound = 0.0;
  for (int n = ext.n_min(); n <= ext.n_max(); ++n) {
    double diag = std::max(std::abs(E(n) + ext.m_min() - epsilon),
                           std::abs(E(n) + ext.m_max() - epsilon));
    bound = std::max(bound, diag + 2.0 * g * (sq(n) + sq(n + 1)));
  }
  if (!(bound > 0.0) || !std::isfinite(bound)) {
    throw StepSizeFailure("dtau_rule: degenerate spectral bound");
  }
  return safety / (bound * bound);
}

VariationalState imaginary_time_step(const OperatorContext& ctx,
                                     const VariationalState& state, double dtau) {
  // y = (K - eps) c, exact on the extended window; z = P_W (K - eps) y.
  ExtendedVector y = residual(ctx, state.vec, state.epsilon);
  ExtendedVector z = apply_K_into(ctx, y, ctx.window());
  z.coeffs -= state.epsilon * restrict_to(y, ctx.window()).coeffs;

  VariationalState out = state;
  out.vec.coeffs = state.vec.coeffs - dtau * z.coeffs;
  out.vec = normalized(std::move(out.vec));
  return out;
}

VariationalState update_epsilon(const OperatorContext& ctx, VariationalState state) {
  const AnsatzWindow& ext = ctx.extended_window();
  double n2 = state.vec.coeffs.squaredNorm();
  if (!(n2 > 0.0)) throw InvalidParameter("update_epsilon: zero vector");
  ExtendedVector kv = apply_K(ctx, state.vec);
  ExtendedVector ve = embed(state.vec, ext);
  state.epsilon = overlap(ve, kv) / n2;
  kv.coeffs -= state.epsilon * ve.coeffs;
  state.F = kv.coeffs.squaredNorm() / n2;
  return state;
}

VariationalState make_basis_seed(const OperatorContext& ctx, int n, int m) {
  VariationalState s{ExtendedVector::basis_state(ctx.window(), n, m),
                     ctx.level_energy(n) + m, 0.0};
  s.F = functional_F(ctx, s.vec, s.epsilon);
  return s;
}

std::pair<VariationalState, ConvergenceReport> relax(const OperatorContext& ctx,
                                                     VariationalState seed,
                                                     const NumericsConfig& cfg) {
  cfg.validate();
  if (!(seed.vec.window == ctx.window())) {
    throw InvalidParameter("relax: seed lives on a different window");
  }
  VariationalState state = std::move(seed);
  state.vec = normalized(std::move(state.vec));
  state.F = functional_F(ctx, state.vec, state.epsilon);

  ConvergenceReport report;
  double F_prev = state.F;
  long it = 0;
  while (it < cfg.max_iters) {
    double dtau = dtau_rule(ctx, state.epsilon, cfg.dtau_safety);
    state = imaginary_time_step(ctx, state, dtau);
    state = update_epsilon(ctx, state);
    ++it;
    if (state.F > F_prev * (1.0 + 1e-12) + 1e-18) ++report.descent_violations;
    report.delta_F_last = std::abs(F_prev - state.F);
    F_prev = state.F;
    if (report.delta_F_last < cfg.tol_F) {
      report.converged = true;
      break;
    }
  }
  state.iterations = it;
  report.iterations = it;
  report.final_F = state.F;
  report.representable = state.F <= cfg.rep_threshold;
  return {std::move(state), report};
}

}  // namespace floq
