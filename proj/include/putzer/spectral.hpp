#ifndef PUTZER_SPECTRAL_HPP
#define PUTZER_SPECTRAL_HPP

#include <complex>
#include <span>
#include <vector>

#include "putzer/matrix.hpp"

namespace putzer {

enum class PolyKind { characteristic, minimal };

// Monic real polynomial lambda^k + c_1 lambda^{k-1} + ... + c_k with
// p(A) = 0 for the matrix it was extracted from.
struct AnnihilatingPolynomial {
  int k = 0;
  std::vector<double> coeffs;  // c_1..c_k
  PolyKind kind = PolyKind::characteristic;
  // ||p(A)||_inf / max(1, ||A||_inf)^k at extraction time, diagnostic only
  double residual = 0.0;
  // set when the minimal-degree search failed and the coefficients are
  // the characteristic polynomial's
  bool minimal_fell_back = false;
};

struct RealEig {
  double value = 0.0;
  int multiplicity = 1;
};

// One conjugate pair re +- i*im with im > 0; the conjugate is implicit.
struct ComplexPairEig {
  double re = 0.0;
  double im = 0.0;
  int multiplicity = 1;
};

struct Spectrum {
  std::vector<RealEig> real_eigs;
  std::vector<ComplexPairEig> complex_pairs;

  // multiplicities summed, conjugate pairs counted twice
  int degree() const;
  std::vector<std::complex<double>> flatten() const;
};

struct LinearFactor {
  double root = 0.0;
  int multiplicity = 1;
};

// s^2 + b s + c with b^2 - 4c < 0
struct QuadraticFactor {
  double b = 0.0;
  double c = 0.0;
  int multiplicity = 1;
};

// constant * prod (s - root)^m * prod (s^2 + b s + c)^m
struct RealFactorization {
  double constant = 1.0;
  std::vector<LinearFactor> linear;
  std::vector<QuadraticFactor> quadratics;

  int degree() const;
  std::vector<double> expand() const;  // ascending coefficients
};

// Open interval of curve parameters t for which I - At has no eigenvalue
// on the closed negative real axis; always contains 0.
struct DomainInterval {
  double lo;
  double hi;

  DomainInterval();
  DomainInterval(double lo, double hi);
  bool contains(double t) const { return lo < t && t < hi; }
  bool bounded_below() const;
  bool bounded_above() const;
};

// Monic characteristic polynomial by the Faddeev-LeVerrier recurrence.
AnnihilatingPolynomial characteristic_polynomial(const DenseMatrix& a);

// Lowest-degree monic polynomial with ||p(A)||_inf <= tol * ||A||_inf^k,
// searched by least squares over vectorized powers. Falls back to the
// characteristic polynomial (flagged) when no degree passes.
AnnihilatingPolynomial minimal_polynomial(const DenseMatrix& a,
                                          double tol = 1e-9);

// k x k companion matrix: identity subdiagonal, last column
// (-c_k, ..., -c_1)^T.
DenseMatrix companion_matrix(const AnnihilatingPolynomial& p);

// All eigenvalues via Hessenberg reduction and Francis double-shift QR.
// Values with |Im| <= tol * ||A||_inf snap to the real axis; clusters
// within the same tolerance merge into multiplicities.
Spectrum eigenvalues(const DenseMatrix& a, double tol = 1e-7);

DomainInterval domain_interval(const Spectrum& spec);

// Coefficients of q(s) = 1 + c_1 s + ... + c_k s^k, ascending, with
// trailing near-zero coefficients trimmed (degree drop for singular A).
std::vector<double> reciprocal_polynomial(const AnnihilatingPolynomial& p);

// Factors q over the reals using the reciprocals of the spectrum's
// nonzero eigenvalues as roots; throws InconsistencyError when the
// expanded factorization fails to reproduce q.
RealFactorization factor_reciprocal(std::span<const double> q,
                                    const Spectrum& spec);

}  // namespace putzer

#endif
