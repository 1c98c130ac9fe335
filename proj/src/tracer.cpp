#include "floq/tracer.hpp"

#include <cmath>
#include <optional>
#include <utility>

#include "floq/oracle.hpp"

namespace floq {

double representability_bound(const SystemParams& params, int r) {
  if (r < 0) throw InvalidParameter("representability_bound: r must be >= 0");
  double ratio = params.omega_ratio();
  double detune = 1.0 - 1.0 / (ratio * ratio);
  return std::abs(detune) * std::sqrt(ratio * (2.0 * r + 1.0));
}

void TraceConfig::validate() const {
  if (params0.lambda_scaled() != 0.0) {
    throw InvalidParameter("TraceConfig: the trace must start at lambda_scaled = 0");
  }
  if (!(lambda_max >= 0.0) || !std::isfinite(lambda_max)) {
    throw InvalidParameter("TraceConfig: lambda_max must be >= 0 and finite");
  }
  numerics.validate();
  if (!window.contains(start_n, 0)) {
    throw InvalidParameter("TraceConfig: start_n outside the window");
  }
}

std::vector<TraceRecord> trace(const TraceConfig& cfg) {
  return trace(cfg, TraceObserver{});
}

std::vector<TraceRecord> trace(const TraceConfig& cfg, const TraceObserver& observer) {
  cfg.validate();
  long n_steps = std::lround(cfg.lambda_max / cfg.numerics.dlambda);
  if (n_steps * cfg.numerics.dlambda > cfg.lambda_max + 1e-12) --n_steps;

  std::vector<TraceRecord> records;
  records.reserve(static_cast<size_t>(n_steps) + 1);

  std::optional<VariationalState> state;
  for (long k = 0; k <= n_steps; ++k) {
    double lam = static_cast<double>(k) * cfg.numerics.dlambda;
    OperatorContext ctx(cfg.params0.with_lambda(lam), cfg.window);
    if (k == 0) state = make_basis_seed(ctx, cfg.start_n, 0);
    auto [converged_state, report] = relax(ctx, std::move(*state), cfg.numerics);
    state = std::move(converged_state);

    double eps_exact_unfolded =
        exact_quasienergy_unfolded(ctx.params(), cfg.start_n);
    TraceRecord rec;
    rec.lambda_scaled = lam;
    rec.epsilon_unfolded = state->epsilon;
    rec.epsilon_folded = fold_quasienergy(state->epsilon);
    rec.epsilon_exact = fold_quasienergy(eps_exact_unfolded);
    rec.F = state->F;
    rec.delta_eps_exact = circular_distance(state->epsilon, eps_exact_unfolded);
    rec.iterations = report.iterations;
    rec.representable = report.representable;
    records.push_back(rec);
    if (observer) observer(rec, *state);
  }
  return records;
}

}  // namespace floq
