#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "floq/units.hpp"

namespace floq {

// Analytic benchmark for the linearly driven harmonic oscillator
//   H(t) = p^2/2 + (omega0^2/2) x^2 + lambda x cos(t)      (scaled units)
// plus a brute-force stroboscopic propagator.  Everything here is independent
// of the variational machinery: no quasienergy-operator or minimizer code is
// used on any path.

// Steady classical response xi(t) = xi0 cos(t),
// xi0 = lambda_scaled / (1 - (omega0/omega)^2); solves
// xi'' + omega0^2 xi = -lambda cos(t).
class ClassicalTrajectory {
 public:
  explicit ClassicalTrajectory(const SystemParams& params);

  double amplitude() const { return xi0_; }
  double position(double t) const;
  double velocity(double t) const;

 private:
  double xi0_;
};

// epsilon_n = (n + 1/2)/omega_ratio + lambda^2 / (4 (1 - 1/omega_ratio^2)),
// folded to [0, 1).  The shift is n-independent (rigid ac Stark shift of the
// whole ladder).
double exact_quasienergy(const SystemParams& params, int n);
double exact_quasienergy_unfolded(const SystemParams& params, int n);

// Floquet states of the driven oscillator are displaced-and-boosted number
// states.  Coefficient of |k> is the displacement matrix element
// <k| D(alpha(t)) |n> with alpha(t) = sqrt(omega0/2) xi(t) + i xi'(t)/sqrt(2 omega0)
// (scaled units), evaluated through the associated-Laguerre closed form.
Eigen::VectorXcd exact_floquet_coefficients(const SystemParams& params, int n,
                                            double t, int truncation);

// One driving period of i dpsi/dt = H(t) psi in the truncated oscillator
// basis, classical RK4 with fixed step h = T/steps.
Eigen::VectorXcd propagate_one_period(const SystemParams& params,
                                      const Eigen::VectorXcd& psi0, int steps);

// Return amplitude r_a(T) = |e^{-i eps T} <psi(0)|psi(T)>| for normalized
// psi0.  The epsilon phase drops out of the modulus; it is kept for fidelity
// to the defining expression.
double raT_metric(const SystemParams& params, const Eigen::VectorXcd& psi0,
                  double epsilon, int steps);

// Monodromy matrix U(T, 0) built by propagating the identity.
class StroboscopicPropagator {
 public:
  StroboscopicPropagator(const SystemParams& params, int n_prop, int steps);

  const Eigen::MatrixXcd& matrix() const { return u_; }
  double unitarity_defect() const { return defect_; }  // ||U^H U - I||_2
  int dimension() const { return static_cast<int>(u_.rows()); }
  int steps() const { return steps_; }

 private:
  Eigen::MatrixXcd u_;
  double defect_;
  int steps_;
};

struct StrobeEigenpair {
  double quasienergy;         // -arg(mu)/(2 pi) folded to [0, 1)
  Eigen::VectorXcd state;     // normalized eigenvector of U(T, 0)
  double modulus_defect;      // | |mu| - 1 |
  bool trusted;               // modulus_defect <= 1e-6
};

// Eigen-decomposition of U(T, 0), sorted by folded quasienergy.
std::vector<StrobeEigenpair> strobe_eigenpairs(const SystemParams& params,
                                               int n_prop, int steps);

struct StrobeMatch {
  double quasienergy;
  double overlap;  // projection norm onto the matching (near-degenerate) eigenspace
};

// Match by maximal overlap with the reference state rather than by ordering;
// eigenpairs whose quasienergies agree within degeneracy_tol are treated as
// one eigenspace (the n, n+2 ladder degeneracy at omega_ratio = 2/3 makes
// individual eigenvectors arbitrary within that space).
StrobeMatch match_state(const std::vector<StrobeEigenpair>& pairs,
                        const Eigen::VectorXcd& reference,
                        double degeneracy_tol = 1e-6);

// Step count for a target unitarity defect of U(T, 0).  Error budget: one RK4
// step on an eigenvalue E has amplitude defect theta^6/144 with theta = E h,
// so the accumulated defect is (2 pi E)^6 / (144 steps^5); E is taken at the
// top of the truncated basis plus a drive margin.
int steps_for_unitarity(const SystemParams& params, int n_prop,
                        double target_defect);

}  // namespace floq
