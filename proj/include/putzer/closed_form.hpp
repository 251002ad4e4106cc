#ifndef PUTZER_CLOSED_FORM_HPP
#define PUTZER_CLOSED_FORM_HPP

#include <string>
#include <variant>
#include <vector>

#include "putzer/spectral.hpp"

namespace putzer {

// One of the k rational integrands f_i'(s) = numerator(s) / q(s).
struct RationalIntegrand {
  int index = 1;                    // 1-based position i
  std::vector<double> numerator;    // ascending powers of s
  std::vector<double> denominator;  // q, ascending, trimmed
  RealFactorization factors;        // factorization of q

  double value(double s) const;
};

// The k integrands of the coefficient functions: the first has numerator
// c_k s^{k-1}, the middle ones -(s^{i-2} + c_1 s^{i-1} + ... +
// c_{k-i} s^{k-i}), the last -s^{k-2}. For k = 1 only the first case
// exists and reduces to c_1.
std::vector<RationalIntegrand> build_integrands(
    const AnnihilatingPolynomial& p, const RealFactorization& fact);

// coef / (s - root)^power
struct LinearFraction {
  double coef = 0.0;
  double root = 0.0;
  int power = 1;
};

// (lin s + cst) / (s^2 + b s + c)^power
struct QuadraticFraction {
  double lin = 0.0;
  double cst = 0.0;
  double b = 0.0;
  double c = 0.0;
  int power = 1;
};

struct PartialFractions {
  std::vector<double> polynomial;  // long-division part, ascending
  std::vector<LinearFraction> linear;
  std::vector<QuadraticFraction> quadratic;

  double value(double s) const;
};

// Decomposes the integrand into elementary fractions; improper inputs
// (degree drop of q) are long-divided first and keep their polynomial
// part alongside.
PartialFractions partial_fractions(const RationalIntegrand& r);

// Antiderivative terms. Meanings:
//   LogTerm        coef * ln|s - root|
//   QuadLogTerm    coef * ln(s^2 + b s + c)
//   AtanTerm       coef * atan((2 s + b) / sqrt(4 c - b^2))
//   RationalTerm   coef / (s - root)^power
//   QuadRationalTerm  (lin s + cst) / (s^2 + b s + c)^power
//   MonomialTerm   coef * s^power
struct LogTerm {
  double coef;
  double root;
};
struct QuadLogTerm {
  double coef;
  double b;
  double c;
};
struct AtanTerm {
  double coef;
  double b;
  double c;
};
struct RationalTerm {
  double coef;
  double root;
  int power;
};
struct QuadRationalTerm {
  double lin;
  double cst;
  double b;
  double c;
  int power;
};
struct MonomialTerm {
  double coef;
  int power;
};

using ClosedFormTerm = std::variant<LogTerm, QuadLogTerm, AtanTerm,
                                    RationalTerm, QuadRationalTerm,
                                    MonomialTerm>;

enum class RenderStyle { plain, latex };

// Symbolic antiderivative with F(0) = 0; the constant of integration is
// chosen so the term sum cancels exactly at 0.
class ClosedFormFunction {
 public:
  ClosedFormFunction() = default;
  ClosedFormFunction(std::vector<ClosedFormTerm> terms, DomainInterval domain);

  // Throws DomainError when t leaves the attached interval.
  double evaluate(double t) const;
  std::string render(RenderStyle style) const;

  const std::vector<ClosedFormTerm>& terms() const { return terms_; }
  double constant() const { return constant_; }
  const DomainInterval& domain() const { return domain_; }

 private:
  std::vector<ClosedFormTerm> terms_;
  double constant_ = 0.0;
  DomainInterval domain_;
};

// Termwise antiderivatives of the elementary fractions; repeated
// quadratic denominators go through Hermite reduction.
ClosedFormFunction integrate_elementary(const PartialFractions& fractions,
                                        const DomainInterval& domain = {});

inline double evaluate(const ClosedFormFunction& f, double t) {
  return f.evaluate(t);
}
inline std::string render(const ClosedFormFunction& f, RenderStyle style) {
  return f.render(style);
}

}  // namespace putzer

#endif
