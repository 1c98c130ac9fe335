#pragma once

#include <stdexcept>
#include <string>

namespace floq {

// Internal unit convention: hbar = M = omega = 1, so the driving period is
// T = 2*pi and all energies / quasienergies are expressed in units of
// hbar*omega.  Quasienergies are defined modulo 1 in these units; folding is
// applied at reporting time only.
inline constexpr double kPeriod = 6.283185307179586476925286766559;

class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// omega == omega0 makes the classical response (and the quasienergy shift)
// singular; it is rejected as a hard input error.
class ResonantDrive : public InvalidParameter {
 public:
  using InvalidParameter::InvalidParameter;
};

class StepSizeFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SystemParams {
 public:
  // omega_ratio = omega / omega0 (drive over oscillator frequency),
  // lambda_scaled = lambda / sqrt(hbar M omega^3).
  SystemParams(double omega_ratio, double lambda_scaled);

  double omega_ratio() const { return omega_ratio_; }
  double lambda_scaled() const { return lambda_scaled_; }
  SystemParams with_lambda(double lambda_scaled) const {
    return SystemParams(omega_ratio_, lambda_scaled);
  }

 private:
  double omega_ratio_;
  double lambda_scaled_;
};

struct NumericsConfig {
  double tol_F = 1e-8;         // stop when |F_new - F_old| drops below this
  double dlambda = 0.025;      // continuation step in lambda_scaled
  double dtau_safety = 0.5;    // dtau = safety / B^2, must lie in (0, 1)
  long max_iters = 200000;
  int propagator_steps = 8000;
  double rep_threshold = 1e-3; // representability cut on F/(hbar*omega)^2

  void validate() const;
};

// Dimensionless constants derived from SystemParams.
struct UnitTable {
  double omega0_over_omega;  // 1 / omega_ratio
  double x_matrix_scale;     // sqrt(omega_ratio / 2); x = x_matrix_scale (a + a^+)
  double lambda_scaled;      // passes through unchanged (identity round trip)

  // E_n / (hbar*omega) for the undriven oscillator
  double level_energy(int n) const { return (n + 0.5) * omega0_over_omega; }
};

UnitTable scaled_units(const SystemParams& params);

// Fold a quasienergy (hbar*omega units) into [0, 1).
double fold_quasienergy(double epsilon);

// Distance between two quasienergies on the folding circle, in [0, 1/2].
double circular_distance(double a, double b);

}  // namespace floq
