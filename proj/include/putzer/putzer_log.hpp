#ifndef PUTZER_PUTZER_LOG_HPP
#define PUTZER_PUTZER_LOG_HPP

#include <span>
#include <vector>

#include "putzer/closed_form.hpp"
#include "putzer/matrix.hpp"
#include "putzer/spectral.hpp"

namespace putzer {

struct PlanOptions {
  PolyKind poly_kind = PolyKind::minimal;
  // minimal-polynomial degree acceptance, relative to ||A||_inf^k
  double poly_tol = 1e-9;
  // eigenvalue snap/cluster tolerance, relative to ||A||_inf
  double cluster_tol = 1e-7;
  // band around the closed negative real axis, relative to ||A||_inf
  double neg_axis_tol = 1e-9;
  // skip the exp round-trip residual in results
  bool compute_residual = true;
};

// Everything needed to evaluate log(I - At) for one matrix A at any
// admissible t: polynomial, spectrum, factorization, coefficient
// functions, domain, and the cached powers I, A, ..., A^{k-1}.
// Immutable once built; evaluations may run concurrently.
class PutzerPlan {
 public:
  static PutzerPlan build(const DenseMatrix& a, const PlanOptions& opt = {});

  const DenseMatrix& matrix() const { return a_; }
  const AnnihilatingPolynomial& polynomial() const { return p_; }
  const Spectrum& spectrum() const { return spectrum_; }
  const std::vector<double>& reciprocal() const { return q_; }
  const RealFactorization& factorization() const { return fact_; }
  const std::vector<RationalIntegrand>& integrands() const {
    return integrands_;
  }
  const std::vector<ClosedFormFunction>& coefficient_functions() const {
    return fs_;
  }
  const DomainInterval& domain() const { return domain_; }
  const std::vector<DenseMatrix>& powers() const { return powers_; }
  const PlanOptions& options() const { return options_; }

 private:
  PutzerPlan(DenseMatrix a, PlanOptions opt);

  DenseMatrix a_;
  PlanOptions options_;
  AnnihilatingPolynomial p_;
  Spectrum spectrum_;
  std::vector<double> q_;
  RealFactorization fact_;
  std::vector<RationalIntegrand> integrands_;
  std::vector<ClosedFormFunction> fs_;
  DomainInterval domain_;
  std::vector<DenseMatrix> powers_;
};

struct LogResult {
  DenseMatrix value;
  double t = 0.0;
  // ||exp(value) - (I - At)||_inf / ||I - At||_inf; NaN when skipped
  double residual = 0.0;
  // ||p(A)||_inf normalized by max(1, ||A||_inf)^k
  double polynomial_residual = 0.0;
};

PutzerPlan plan(const DenseMatrix& a, PolyKind kind = PolyKind::minimal,
                double tol = 1e-9);

// log(I - At) via the coefficient functions; t must lie inside the
// plan's admissible interval.
LogResult eval_log_curve(const PutzerPlan& plan, double t);

// Principal logarithm of a: requires the spectrum of a to avoid the
// closed negative real axis, plans on I - a, and evaluates at t = 1.
LogResult logm(const DenseMatrix& a, const PlanOptions& opt = {});
LogResult logm(const DenseMatrix& a, PolyKind kind, double tol = 1e-9);

// log((1 - t) I + t a) for each requested t, sharing one plan on I - a.
std::vector<LogResult> segment_samples(const DenseMatrix& a,
                                       std::span<const double> ts,
                                       const PlanOptions& opt = {});

}  // namespace putzer

#endif
