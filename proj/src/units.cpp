#include "floq/units.hpp"

#include <cmath>

namespace floq {

SystemParams::SystemParams(double omega_ratio, double lambda_scaled)
    : omega_ratio_(omega_ratio), lambda_scaled_(lambda_scaled) {
  if (!(omega_ratio > 0.0) || !std::isfinite(omega_ratio)) {
    throw InvalidParameter("SystemParams: omega_ratio must be positive and finite");
  }
  if (std::abs(omega_ratio - 1.0) < 1e-12) {
    throw ResonantDrive(
        "SystemParams: omega_ratio = 1 is resonant; the driven-oscillator "
        "quasienergy shift diverges");
  }
  if (!(lambda_scaled >= 0.0) || !std::isfinite(lambda_scaled)) {
    throw InvalidParameter("SystemParams: lambda_scaled must be >= 0 and finite");
  }
}

void NumericsConfig::validate() const {
  if (!(tol_F > 0.0)) throw InvalidParameter("NumericsConfig: tol_F must be > 0");
  if (!(dlambda > 0.0)) throw InvalidParameter("NumericsConfig: dlambda must be > 0");
  if (!(dtau_safety > 0.0 && dtau_safety < 1.0)) {
    throw InvalidParameter("NumericsConfig: dtau_safety must lie in (0, 1)");
  }
  if (max_iters < 1) throw InvalidParameter("NumericsConfig: max_iters must be >= 1");
  if (propagator_steps < 100) {
    throw InvalidParameter("NumericsConfig: propagator_steps must be >= 100");
  }
  if (!(rep_threshold > 0.0)) {
    throw InvalidParameter("NumericsConfig: rep_threshold must be > 0");
  }
}

UnitTable scaled_units(const SystemParams& params) {
  UnitTable t;
  t.omega0_over_omega = 1.0 / params.omega_ratio();
  t.x_matrix_scale = std::sqrt(params.omega_ratio() / 2.0);
  t.lambda_scaled = params.lambda_scaled();
  return t;
}

double fold_quasienergy(double epsilon) {
  double f = epsilon - std::floor(epsilon);
  return f >= 1.0 ? 0.0 : f;  // floor rounding can land exactly on 1
}

double circular_distance(double a, double b) {
  double d = std::abs(fold_quasienergy(a) - fold_quasienergy(b));
  return d > 0.5 ? 1.0 - d : d;
}

}  // namespace floq
