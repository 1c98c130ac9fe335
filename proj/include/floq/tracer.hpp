#pragma once

#include <functional>
#include <vector>

#include "floq/minimizer.hpp"

namespace floq {

// Turning-point estimate of the largest representable drive amplitude for a
// window of half-width r:
//   lambda_max = sqrt([1 - (omega0/omega)^2]^2 (omega/omega0) (2r + 1)).
// The classical sloshing amplitude exceeds the highest turning point of the
// window beyond this value.  Accepts r >= 0 so the formula's r -> 0 limit is
// reachable.
double representability_bound(const SystemParams& params, int r);

struct TraceConfig {
  SystemParams params0;  // lambda_scaled must be 0; the trace starts there
  AnsatzWindow window;
  double lambda_max;
  NumericsConfig numerics;
  int start_n;  // oscillator level traced; seed is |start_n, 0>>

  void validate() const;
};

struct TraceRecord {
  double lambda_scaled;
  double epsilon_folded;    // in [0, 1)
  double epsilon_unfolded;  // continuous along the trace
  double epsilon_exact;     // folded analytic value for the traced level
  double F;
  double delta_eps_exact;   // circular distance to epsilon_exact
  long iterations;
  bool representable;
};

using TraceObserver =
    std::function<void(const TraceRecord&, const VariationalState&)>;

// Continuation in lambda: relax at lambda = 0, dlambda, 2 dlambda, ...,
// lambda_max, seeding each step with the previous converged state (vector and
// epsilon).  Tracing continues past representability breakdown; records flag
// it instead of aborting.
std::vector<TraceRecord> trace(const TraceConfig& cfg);
std::vector<TraceRecord> trace(const TraceConfig& cfg, const TraceObserver& observer);

}  // namespace floq
