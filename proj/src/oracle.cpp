#include "floq/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace floq {
namespace {

// L_q^{(a)}(x) by the ascending three-term recurrence
//   (j+1) L_{j+1} = (2j + 1 + a - x) L_j - (j + a) L_{j-1},
// stable for the moderate degrees and arguments used here.
double laguerre(int q, int a, double x) {
  double prev = 1.0;
  if (q == 0) return prev;
  double curr = 1.0 + a - x;
  for (int j = 1; j < q; ++j) {
    double next = ((2.0 * j + 1.0 + a - x) * curr - (j + a) * prev) / (j + 1.0);
    prev = curr;
    curr = next;
  }
  return curr;
}

// <k| exp(alpha a^+ - conj(alpha) a) |n>:
//   sqrt(n!/k!) alpha^{k-n} e^{-|alpha|^2/2} L_n^{(k-n)}(|alpha|^2)   (k >= n)
// and the k < n case by symmetry with (-conj(alpha))^{n-k}.
std::complex<double> displacement_element(int k, int n, std::complex<double> alpha) {
  double x = std::norm(alpha);
  if (x == 0.0) return k == n ? 1.0 : 0.0;
  int lo = std::min(k, n);
  int d = std::abs(k - n);
  double logmag = 0.5 * (std::lgamma(lo + 1.0) - std::lgamma(lo + d + 1.0)) +
                  0.5 * d * std::log(x) - 0.5 * x;
  std::complex<double> dir = alpha / std::abs(alpha);
  std::complex<double> phase =
      k >= n ? std::pow(dir, d) : std::pow(-std::conj(dir), d);
  return std::exp(logmag) * laguerre(lo, d, x) * phase;
}

// Truncated driven oscillator H(t) = H0 + lambda x cos(t) and an RK4
// one-period integrator; columns of a matrix argument propagate independently.
class DrivenOscillator {
 public:
  DrivenOscillator(const SystemParams& params, int dim)
      : lambda_(params.lambda_scaled()) {
    UnitTable units = scaled_units(params);
    xscale_ = units.x_matrix_scale;
    energies_.resize(dim);
    sqrtn_.resize(dim);
    for (int k = 0; k < dim; ++k) {
      energies_(k) = units.level_energy(k);
      sqrtn_(k) = std::sqrt(static_cast<double>(k));
    }
  }

  // -i H(t) y
  Eigen::MatrixXcd deriv(double t, const Eigen::MatrixXcd& y) const {
    const Eigen::Index n = y.rows();
    std::complex<double> drive(lambda_ * xscale_ * std::cos(t), 0.0);
    Eigen::MatrixXcd h = energies_.asDiagonal() * y;
    if (n > 1) {
      auto ladder = sqrtn_.tail(n - 1).asDiagonal();
      h.middleRows(1, n - 1) += drive * (ladder * y.topRows(n - 1));
      h.topRows(n - 1) += drive * (ladder * y.bottomRows(n - 1));
    }
    return std::complex<double>(0.0, -1.0) * h;
  }

  Eigen::MatrixXcd propagate_period(Eigen::MatrixXcd y, int steps) const {
    const double h = kPeriod / steps;
    for (int s = 0; s < steps; ++s) {
      double t = s * h;
      Eigen::MatrixXcd k1 = deriv(t, y);
      Eigen::MatrixXcd k2 = deriv(t + 0.5 * h, y + (0.5 * h) * k1);
      Eigen::MatrixXcd k3 = deriv(t + 0.5 * h, y + (0.5 * h) * k2);
      Eigen::MatrixXcd k4 = deriv(t + h, y + h * k3);
      y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return y;
  }

 private:
  double lambda_;
  double xscale_;
  Eigen::VectorXcd energies_;
  Eigen::VectorXcd sqrtn_;
};

}  // namespace

ClassicalTrajectory::ClassicalTrajectory(const SystemParams& params) {
  double inv2 = 1.0 / (params.omega_ratio() * params.omega_ratio());
  xi0_ = params.lambda_scaled() / (1.0 - inv2);
}

double ClassicalTrajectory::position(double t) const { return xi0_ * std::cos(t); }

double ClassicalTrajectory::velocity(double t) const { return -xi0_ * std::sin(t); }

double exact_quasienergy_unfolded(const SystemParams& params, int n) {
  if (n < 0) throw InvalidParameter("exact_quasienergy: n must be >= 0");
  double ratio = params.omega_ratio();
  double lam = params.lambda_scaled();
  double shift = lam * lam / (4.0 * (1.0 - 1.0 / (ratio * ratio)));
  return (n + 0.5) / ratio + shift;
}

double exact_quasienergy(const SystemParams& params, int n) {
  return fold_quasienergy(exact_quasienergy_unfolded(params, n));
}

Eigen::VectorXcd exact_floquet_coefficients(const SystemParams& params, int n,
                                            double t, int truncation) {
  if (n < 0) throw InvalidParameter("exact_floquet_coefficients: n must be >= 0");
  if (truncation <= n) {
    throw InvalidParameter("exact_floquet_coefficients: truncation must exceed n");
  }
  ClassicalTrajectory traj(params);
  double omega0 = 1.0 / params.omega_ratio();
  std::complex<double> alpha(std::sqrt(omega0 / 2.0) * traj.position(t),
                             traj.velocity(t) / std::sqrt(2.0 * omega0));
  Eigen::VectorXcd out(truncation);
  for (int k = 0; k < truncation; ++k) out(k) = displacement_element(k, n, alpha);
  return out;
}

Eigen::VectorXcd propagate_one_period(const SystemParams& params,
                                      const Eigen::VectorXcd& psi0, int steps) {
  if (steps < 1) throw InvalidParameter("propagate_one_period: steps must be >= 1");
  if (psi0.size() < 1) throw InvalidParameter("propagate_one_period: empty state");
  DrivenOscillator osc(params, static_cast<int>(psi0.size()));
  return osc.propagate_period(psi0, steps);
}

double raT_metric(const SystemParams& params, const Eigen::VectorXcd& psi0,
                  double epsilon, int steps) {
  double nrm = psi0.norm();
  if (!(nrm > 0.0)) throw InvalidParameter("raT_metric: zero state");
  Eigen::VectorXcd start = psi0 / nrm;
  Eigen::VectorXcd end = propagate_one_period(params, start, steps);
  std::complex<double> phase = std::exp(std::complex<double>(0.0, -epsilon * kPeriod));
  return std::abs(phase * start.dot(end));
}

StroboscopicPropagator::StroboscopicPropagator(const SystemParams& params, int n_prop,
                                               int steps)
    : steps_(steps) {
  if (n_prop < 1) {
    throw InvalidParameter("StroboscopicPropagator: n_prop must be >= 1");
  }
  if (steps < 1) throw InvalidParameter("StroboscopicPropagator: steps must be >= 1");
  DrivenOscillator osc(params, n_prop);
  u_ = osc.propagate_period(Eigen::MatrixXcd::Identity(n_prop, n_prop), steps);
  Eigen::MatrixXcd gram = u_.adjoint() * u_;
  gram.diagonal().array() -= 1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
  defect_ = es.eigenvalues().cwiseAbs().maxCoeff();
}

std::vector<StrobeEigenpair> strobe_eigenpairs(const SystemParams& params, int n_prop,
                                               int steps) {
  StroboscopicPropagator prop(params, n_prop, steps);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(prop.matrix());
  if (solver.info() != Eigen::Success) {
    throw StepSizeFailure("strobe_eigenpairs: eigensolver did not converge");
  }
  std::vector<StrobeEigenpair> pairs;
  pairs.reserve(static_cast<size_t>(n_prop));
  for (int i = 0; i < n_prop; ++i) {
    std::complex<double> mu = solver.eigenvalues()(i);
    StrobeEigenpair p;
    p.quasienergy = fold_quasienergy(-std::arg(mu) / kPeriod);
    p.state = solver.eigenvectors().col(i).normalized();
    p.modulus_defect = std::abs(std::abs(mu) - 1.0);
    p.trusted = p.modulus_defect <= 1e-6;
    pairs.push_back(std::move(p));
  }
  std::sort(pairs.begin(), pairs.end(), [](const StrobeEigenpair& a,
                                           const StrobeEigenpair& b) {
    return a.quasienergy < b.quasienergy;
  });
  return pairs;
}

StrobeMatch match_state(const std::vector<StrobeEigenpair>& pairs,
                        const Eigen::VectorXcd& reference, double degeneracy_tol) {
  if (pairs.empty()) throw InvalidParameter("match_state: no eigenpairs");
  double ref_norm = reference.norm();
  if (!(ref_norm > 0.0)) throw InvalidParameter("match_state: zero reference");
  Eigen::VectorXcd ref = reference / ref_norm;

  size_t best = 0;
  double best_overlap = -1.0;
  for (size_t i = 0; i < pairs.size(); ++i) {
    if (pairs[i].state.size() != ref.size()) {
      throw InvalidParameter("match_state: dimension mismatch");
    }
    double ov = std::abs(pairs[i].state.dot(ref));
    if (ov > best_overlap) {
      best_overlap = ov;
      best = i;
    }
  }

  double eps_best = pairs[best].quasienergy;
  std::vector<size_t> group;
  for (size_t i = 0; i < pairs.size(); ++i) {
    if (circular_distance(pairs[i].quasienergy, eps_best) <= degeneracy_tol) {
      group.push_back(i);
    }
  }
  Eigen::MatrixXcd span(ref.size(), static_cast<Eigen::Index>(group.size()));
  for (size_t j = 0; j < group.size(); ++j) {
    span.col(static_cast<Eigen::Index>(j)) = pairs[group[j]].state;
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(span);
  Eigen::MatrixXcd q = qr.householderQ() *
                       Eigen::MatrixXcd::Identity(ref.size(), span.cols());
  double overlap = (q.adjoint() * ref).norm();
  return {eps_best, std::min(overlap, 1.0)};
}

int steps_for_unitarity(const SystemParams& params, int n_prop, double target_defect) {
  if (n_prop < 1) throw InvalidParameter("steps_for_unitarity: n_prop must be >= 1");
  if (!(target_defect > 0.0)) {
    throw InvalidParameter("steps_for_unitarity: target_defect must be > 0");
  }
  UnitTable units = scaled_units(params);
  double e_top = units.level_energy(n_prop - 1) +
                 2.0 * params.lambda_scaled() * units.x_matrix_scale *
                     std::sqrt(static_cast<double>(n_prop));
  double theta = kPeriod * e_top;
  double steps = std::pow(std::pow(theta, 6) / (144.0 * target_defect), 0.2);
  return std::max(static_cast<int>(std::ceil(steps)), 100);
}

}  // namespace floq
