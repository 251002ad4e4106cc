#include "putzer/putzer_log.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "putzer/oracles.hpp"

namespace putzer {

PutzerPlan::PutzerPlan(DenseMatrix a, PlanOptions opt)
    : a_(std::move(a)), options_(opt) {
  p_ = options_.poly_kind == PolyKind::minimal
           ? minimal_polynomial(a_, options_.poly_tol)
           : characteristic_polynomial(a_);
  spectrum_ = eigenvalues(a_, options_.cluster_tol);
  domain_ = domain_interval(spectrum_);
  q_ = reciprocal_polynomial(p_);
  fact_ = factor_reciprocal(q_, spectrum_);
  integrands_ = build_integrands(p_, fact_);
  fs_.reserve(integrands_.size());
  for (const auto& integrand : integrands_) {
    fs_.push_back(integrate_elementary(partial_fractions(integrand), domain_));
  }
  powers_.reserve(p_.k);
  powers_.push_back(DenseMatrix::identity(a_.dim()));
  for (int i = 1; i < p_.k; ++i) {
    powers_.push_back(mat_mul(powers_.back(), a_));
  }
}

PutzerPlan PutzerPlan::build(const DenseMatrix& a, const PlanOptions& opt) {
  return PutzerPlan(a, opt);
}

PutzerPlan plan(const DenseMatrix& a, PolyKind kind, double tol) {
  PlanOptions opt;
  opt.poly_kind = kind;
  opt.poly_tol = tol;
  return PutzerPlan::build(a, opt);
}

LogResult eval_log_curve(const PutzerPlan& plan, double t) {
  const auto& fs = plan.coefficient_functions();
  std::vector<double> scalars;
  scalars.reserve(fs.size());
  for (const auto& f : fs) scalars.push_back(f.evaluate(t));

  LogResult result{linear_combination(scalars, plan.powers()), t,
                   std::numeric_limits<double>::quiet_NaN(),
                   plan.polynomial().residual};
  if (plan.options().compute_residual) {
    const DenseMatrix target =
        mat_sub(DenseMatrix::identity(plan.matrix().dim()),
                mat_scale(t, plan.matrix()));
    const double scale = inf_norm(target);
    result.residual =
        inf_norm(mat_sub(oracles::expm(result.value), target)) /
        (scale > 0.0 ? scale : 1.0);
  }
  return result;
}

namespace {

void reject_negative_axis(const Spectrum& spec, double band) {
  std::vector<std::complex<double>> offending;
  for (const auto& e : spec.real_eigs) {
    if (e.value <= band) offending.emplace_back(e.value, 0.0);
  }
  for (const auto& p : spec.complex_pairs) {
    if (p.im <= band && p.re <= band) {
      offending.emplace_back(p.re, p.im);
      offending.emplace_back(p.re, -p.im);
    }
  }
  if (!offending.empty()) {
    std::ostringstream msg;
    msg << "principal logarithm undefined: eigenvalue(s) on the closed "
           "negative real axis:";
    for (const auto& z : offending) {
      msg << " (" << z.real() << (z.imag() < 0.0 ? " - " : " + ")
          << std::abs(z.imag()) << "i)";
    }
    throw PrincipalLogError(msg.str(), std::move(offending));
  }
}

}  // namespace

LogResult logm(const DenseMatrix& a, const PlanOptions& opt) {
  const double band = opt.neg_axis_tol * inf_norm(a);
  reject_negative_axis(eigenvalues(a, opt.cluster_tol), band);

  const DenseMatrix shifted =
      mat_sub(DenseMatrix::identity(a.dim()), a);  // log A = log(I - (I-A))
  const PutzerPlan p = PutzerPlan::build(shifted, opt);
  return eval_log_curve(p, 1.0);
}

LogResult logm(const DenseMatrix& a, PolyKind kind, double tol) {
  PlanOptions opt;
  opt.poly_kind = kind;
  opt.poly_tol = tol;
  return logm(a, opt);
}

std::vector<LogResult> segment_samples(const DenseMatrix& a,
                                       std::span<const double> ts,
                                       const PlanOptions& opt) {
  const DenseMatrix shifted = mat_sub(DenseMatrix::identity(a.dim()), a);
  const PutzerPlan p = PutzerPlan::build(shifted, opt);
  std::vector<LogResult> out;
  out.reserve(ts.size());
  for (double t : ts) out.push_back(eval_log_curve(p, t));
  return out;
}

}  // namespace putzer
