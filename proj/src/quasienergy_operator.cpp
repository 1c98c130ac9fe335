#include "floq/quasienergy_operator.hpp"

#include <algorithm>
#include <cmath>

namespace floq {

OperatorContext::OperatorContext(const SystemParams& params, const AnsatzWindow& window)
    : params_(params), window_(window), extended_(window.extended()) {
  UnitTable units = scaled_units(params);
  g_ = 0.5 * params.lambda_scaled() * units.x_matrix_scale;
  int table_size = extended_.n_max() + 3;
  energies_.resize(table_size);
  sqrtn_.resize(table_size);
  for (int n = 0; n < table_size; ++n) {
    energies_(n) = units.level_energy(n);
    sqrtn_(n) = std::sqrt(static_cast<double>(n));
  }
}

ExtendedVector apply_K_into(const OperatorContext& ctx, const ExtendedVector& v,
                            const AnsatzWindow& target) {
  const AnsatzWindow& ext = ctx.extended_window();
  if (!ext.contains(v.window) || !ext.contains(target)) {
    throw InvalidParameter("apply_K_into: window outside the operator's range");
  }
  const AnsatzWindow& src = v.window;
  ExtendedVector out_vec = ExtendedVector::zero(target);

  const Eigen::VectorXd& E = ctx.energy_table();
  const Eigen::VectorXd& sq = ctx.sqrt_table();
  const double g = ctx.coupling();

  for (int mT = target.m_min(); mT <= target.m_max(); ++mT) {
    auto out = out_vec.coeffs.col(mT - target.m_min());

    // m-diagonal part: (E_n + m) c_{n,m}
    if (mT >= src.m_min() && mT <= src.m_max()) {
      int lo = std::max(target.n_min(), src.n_min());
      int hi = std::min(target.n_max(), src.n_max());
      if (lo <= hi) {
        int len = hi - lo + 1;
        out.segment(lo - target.n_min(), len).array() +=
            (E.segment(lo, len).array() + static_cast<double>(mT)) *
            v.coeffs.col(mT - src.m_min()).segment(lo - src.n_min(), len).array();
      }
    }

    // Coupling: source column m = mT -+ 1 feeds target rows n' = n +- 1 with
    // weights g sqrt(n') (raising) and g sqrt(n' + 1) (lowering).
    for (int mS : {mT - 1, mT + 1}) {
      if (mS < src.m_min() || mS > src.m_max()) continue;
      auto in = v.coeffs.col(mS - src.m_min());

      {  // n' = n + 1: out[n'] += g sqrt(n') in[n' - 1]
        int lo = std::max(target.n_min(), src.n_min() + 1);
        int hi = std::min(target.n_max(), src.n_max() + 1);
        if (lo <= hi) {
          int len = hi - lo + 1;
          out.segment(lo - target.n_min(), len).array() +=
              g * sq.segment(lo, len).array() *
              in.segment(lo - 1 - src.n_min(), len).array();
        }
      }
      {  // n' = n - 1: out[n'] += g sqrt(n' + 1) in[n' + 1]
        int lo = std::max(target.n_min(), src.n_min() - 1);
        int hi = std::min(target.n_max(), src.n_max() - 1);
        if (lo <= hi) {
          int len = hi - lo + 1;
          out.segment(lo - target.n_min(), len).array() +=
              g * sq.segment(lo + 1, len).array() *
              in.segment(lo + 1 - src.n_min(), len).array();
        }
      }
    }
  }
  return out_vec;
}

ExtendedVector apply_K(const OperatorContext& ctx, const ExtendedVector& v) {
  if (!(v.window == ctx.window())) {
    throw InvalidParameter("apply_K: vector must live on the context window");
  }
  return apply_K_into(ctx, v, ctx.extended_window());
}

ExtendedVector residual(const OperatorContext& ctx, const ExtendedVector& v,
                        double epsilon) {
  ExtendedVector out = apply_K(ctx, v);
  out.coeffs -= epsilon * embed(v, ctx.extended_window()).coeffs;
  return out;
}

double functional_F(const OperatorContext& ctx, const ExtendedVector& v,
                    double epsilon) {
  double n2 = v.coeffs.squaredNorm();
  if (!(n2 > 0.0)) throw InvalidParameter("functional_F: zero vector");
  return residual(ctx, v, epsilon).coeffs.squaredNorm() / n2;
}

double expectation_K(const OperatorContext& ctx, const ExtendedVector& v) {
  double n2 = v.coeffs.squaredNorm();
  if (!(n2 > 0.0)) throw InvalidParameter("expectation_K: zero vector");
  ExtendedVector kv = apply_K(ctx, v);
  return overlap(embed(v, ctx.extended_window()), kv) / n2;
}

}  // namespace floq
