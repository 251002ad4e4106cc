#include "putzer/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <utility>

#include "putzer/poly.hpp"

namespace putzer {

namespace {

double ipow(double x, int n) {
  double acc = 1.0;
  for (int i = 0; i < n; ++i) acc *= x;
  return acc;
}

double term_value(const ClosedFormTerm& term, double s) {
  return std::visit(
      [s](const auto& t) -> double {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, LogTerm>) {
          return t.coef * std::log(std::abs(s - t.root));
        } else if constexpr (std::is_same_v<T, QuadLogTerm>) {
          return t.coef * std::log(s * s + t.b * s + t.c);
        } else if constexpr (std::is_same_v<T, AtanTerm>) {
          const double d = std::sqrt(4.0 * t.c - t.b * t.b);
          return t.coef * std::atan((2.0 * s + t.b) / d);
        } else if constexpr (std::is_same_v<T, RationalTerm>) {
          return t.coef / ipow(s - t.root, t.power);
        } else if constexpr (std::is_same_v<T, QuadRationalTerm>) {
          return (t.lin * s + t.cst) / ipow(s * s + t.b * s + t.c, t.power);
        } else {
          return t.coef * ipow(s, t.power);
        }
      },
      term);
}

int term_rank(const ClosedFormTerm& term) {
  return static_cast<int>(term.index());
}

bool term_less(const ClosedFormTerm& a, const ClosedFormTerm& b) {
  if (a.index() != b.index()) return term_rank(a) < term_rank(b);
  return std::visit(
      [&b](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b);
        if constexpr (std::is_same_v<T, LogTerm>) {
          return x.root < y.root;
        } else if constexpr (std::is_same_v<T, QuadLogTerm> ||
                             std::is_same_v<T, AtanTerm>) {
          return x.b != y.b ? x.b < y.b : x.c < y.c;
        } else if constexpr (std::is_same_v<T, RationalTerm>) {
          return x.root != y.root ? x.root < y.root : x.power < y.power;
        } else if constexpr (std::is_same_v<T, QuadRationalTerm>) {
          if (x.b != y.b) return x.b < y.b;
          if (x.c != y.c) return x.c < y.c;
          return x.power < y.power;
        } else {
          return x.power < y.power;
        }
      },
      a);
}

std::string fmt(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// "1 + 2*t" style linear argument with sign folded into the operator
std::string signed_append(const std::string& head, double coef,
                          const std::string& sym, bool latex) {
  if (coef == 0.0) return head;
  const std::string mul = latex ? " " : "*";
  const std::string mag = fmt(std::abs(coef));
  std::string piece;
  if (sym == "1") {
    piece = mag;
  } else {
    piece = (mag == "1" ? sym : mag + mul + sym);
  }
  return head + (coef > 0.0 ? " + " : " - ") + piece;
}

std::string pow_sym(const std::string& base, int power, bool latex) {
  if (power == 1) return base;
  if (latex) return base + "^{" + std::to_string(power) + "}";
  return base + "^" + std::to_string(power);
}

std::string quad_str(double b, double c, bool latex) {
  std::string s = pow_sym("t", 2, latex);
  s = signed_append(s, b, "t", latex);
  s = signed_append(s, c, "1", latex);
  return s;
}

std::string linear_shift_str(double root) {
  std::string s = "t";
  if (root != 0.0) {
    s += (root < 0.0 ? " + " : " - ") + fmt(std::abs(root));
  }
  return s;
}

}  // namespace

double RationalIntegrand::value(double s) const {
  return poly::eval(numerator, s) / poly::eval(denominator, s);
}

std::vector<RationalIntegrand> build_integrands(
    const AnnihilatingPolynomial& p, const RealFactorization& fact) {
  const int k = p.k;
  if (k < 1) throw DimensionError("build_integrands: degree must be >= 1");
  const std::vector<double> q = reciprocal_polynomial(p);

  std::vector<RationalIntegrand> out;
  out.reserve(k);

  // i = 1: c_k s^{k-1}
  {
    RationalIntegrand r;
    r.index = 1;
    r.numerator.assign(k, 0.0);
    r.numerator[k - 1] = p.coeffs[k - 1];
    r.numerator = poly::trimmed(r.numerator, 0.0);
    r.denominator = q;
    r.factors = fact;
    out.push_back(std::move(r));
  }
  // i = 2..k: -(s^{i-2} + c_1 s^{i-1} + ... + c_{k-i} s^{k-i})
  for (int i = 2; i <= k; ++i) {
    RationalIntegrand r;
    r.index = i;
    r.numerator.assign(k - 1, 0.0);
    for (int j = 0; j <= k - i; ++j) {
      r.numerator[i - 2 + j] = -(j == 0 ? 1.0 : p.coeffs[j - 1]);
    }
    r.numerator = poly::trimmed(r.numerator, 0.0);
    r.denominator = q;
    r.factors = fact;
    out.push_back(std::move(r));
  }
  return out;
}

double PartialFractions::value(double s) const {
  double acc = poly::eval(polynomial, s);
  for (const auto& f : linear) acc += f.coef / ipow(s - f.root, f.power);
  for (const auto& f : quadratic)
    acc += (f.lin * s + f.cst) / ipow(s * s + f.b * s + f.c, f.power);
  return acc;
}

namespace {

// Product of the monic factors with one factor's multiplicity reduced.
std::vector<double> monic_expand(const RealFactorization& fact,
                                 int reduce_linear, int reduce_quad,
                                 int amount) {
  std::vector<double> acc{1.0};
  for (std::size_t i = 0; i < fact.linear.size(); ++i) {
    int m = fact.linear[i].multiplicity;
    if (static_cast<int>(i) == reduce_linear) m -= amount;
    const std::vector<double> f{-fact.linear[i].root, 1.0};
    for (int rep = 0; rep < m; ++rep) acc = poly::mul(acc, f);
  }
  for (std::size_t i = 0; i < fact.quadratics.size(); ++i) {
    int m = fact.quadratics[i].multiplicity;
    if (static_cast<int>(i) == reduce_quad) m -= amount;
    const std::vector<double> f{fact.quadratics[i].c, fact.quadratics[i].b,
                                1.0};
    for (int rep = 0; rep < m; ++rep) acc = poly::mul(acc, f);
  }
  return acc;
}

}  // namespace

PartialFractions partial_fractions(const RationalIntegrand& r) {
  PartialFractions out;
  const std::vector<double> q = poly::trimmed(r.denominator);
  const int d = poly::degree(q);
  std::vector<double> num = poly::trimmed(r.numerator, 0.0);

  if (poly::degree(num) == 0 && num[0] == 0.0) return out;

  if (d == 0) {
    for (double& v : num) v /= q[0];
    out.polynomial = std::move(num);
    return out;
  }

  if (r.factors.degree() != d) {
    throw InconsistencyError(
        "partial_fractions: factorization degree does not match q");
  }

  if (poly::degree(num) >= d) {
    std::vector<double> quo, rem;
    poly::div(num, q, &quo, &rem);
    out.polynomial = poly::trimmed(quo, 0.0);
    if (out.polynomial.size() == 1 && out.polynomial[0] == 0.0)
      out.polynomial.clear();
    num = poly::trimmed(rem, 0.0);
    if (poly::degree(num) == 0 && num[0] == 0.0) return out;
  }

  // clear denominators: num/K = sum over unknowns of basis polynomials
  const double constant = r.factors.constant;
  std::vector<std::vector<double>> columns;
  for (std::size_t li = 0; li < r.factors.linear.size(); ++li) {
    for (int j = 1; j <= r.factors.linear[li].multiplicity; ++j) {
      columns.push_back(monic_expand(r.factors, static_cast<int>(li), -1, j));
    }
  }
  for (std::size_t qi = 0; qi < r.factors.quadratics.size(); ++qi) {
    for (int j = 1; j <= r.factors.quadratics[qi].multiplicity; ++j) {
      std::vector<double> base =
          monic_expand(r.factors, -1, static_cast<int>(qi), j);
      std::vector<double> shifted(base.size() + 1, 0.0);
      for (std::size_t i = 0; i < base.size(); ++i) shifted[i + 1] = base[i];
      columns.push_back(std::move(shifted));  // s * base, for the linear part
      columns.push_back(std::move(base));
    }
  }

  DenseMatrix system(d);
  for (int col = 0; col < d; ++col) {
    const auto& poly_col = columns[col];
    for (int row = 0; row < d; ++row) {
      system(row, col) =
          row < static_cast<int>(poly_col.size()) ? poly_col[row] : 0.0;
    }
  }
  std::vector<double> rhs(d, 0.0);
  for (int i = 0; i < d && i < static_cast<int>(num.size()); ++i) {
    rhs[i] = num[i] / constant;
  }

  std::vector<double> u;
  try {
    u = mat_solve(system, std::move(rhs));
  } catch (const SingularMatrixError& e) {
    throw InconsistencyError(
        std::string("partial_fractions: singular coefficient system (") +
        e.what() + ")");
  }

  std::size_t idx = 0;
  for (const auto& lf : r.factors.linear) {
    for (int j = 1; j <= lf.multiplicity; ++j) {
      out.linear.push_back({u[idx++], lf.root, j});
    }
  }
  for (const auto& qf : r.factors.quadratics) {
    for (int j = 1; j <= qf.multiplicity; ++j) {
      const double lin = u[idx++];
      const double cst = u[idx++];
      out.quadratic.push_back({lin, cst, qf.b, qf.c, j});
    }
  }
  return out;
}

ClosedFormFunction::ClosedFormFunction(std::vector<ClosedFormTerm> terms,
                                       DomainInterval domain)
    : terms_(std::move(terms)), domain_(domain) {
  std::sort(terms_.begin(), terms_.end(), term_less);
  double at_zero = 0.0;
  for (const auto& t : terms_) at_zero += term_value(t, 0.0);
  constant_ = -at_zero;
}

double ClosedFormFunction::evaluate(double t) const {
  if (!domain_.contains(t)) {
    std::ostringstream msg;
    msg << "t=" << t << " outside admissible interval (" << domain_.lo << ", "
        << domain_.hi << "): violates "
        << (t <= domain_.lo ? "lower" : "upper") << " endpoint "
        << (t <= domain_.lo ? domain_.lo : domain_.hi);
    throw DomainError(msg.str());
  }
  double acc = 0.0;
  for (const auto& term : terms_) acc += term_value(term, t);
  return acc + constant_;
}

ClosedFormFunction integrate_elementary(const PartialFractions& fractions,
                                        const DomainInterval& domain) {
  std::vector<ClosedFormTerm> terms;

  for (std::size_t j = 0; j < fractions.polynomial.size(); ++j) {
    const double c = fractions.polynomial[j];
    if (c == 0.0) continue;
    terms.push_back(
        MonomialTerm{c / static_cast<double>(j + 1), static_cast<int>(j + 1)});
  }

  for (const auto& f : fractions.linear) {
    if (f.coef == 0.0) continue;
    if (f.power == 1) {
      terms.push_back(LogTerm{f.coef, f.root});
    } else {
      terms.push_back(
          RationalTerm{f.coef / (1.0 - f.power), f.root, f.power - 1});
    }
  }

  for (const auto& f : fractions.quadratic) {
    double beta = f.lin;
    double gamma = f.cst;
    const double delta = 4.0 * f.c - f.b * f.b;  // > 0 by construction
    int j = f.power;
    // Hermite reduction peels one denominator power per step, leaving a
    // rational term and a constant-numerator remainder integrand
    while (j >= 2) {
      const double sigma1 = (beta * f.b - 2.0 * gamma) / delta;
      const double sigma0 = (2.0 * f.c * beta - f.b * gamma) / delta;
      const double tau = -2.0 * sigma1;
      const double denom_power = static_cast<double>(j - 1);
      if (sigma1 != 0.0 || sigma0 != 0.0) {
        terms.push_back(QuadRationalTerm{-sigma1 / denom_power,
                                         -sigma0 / denom_power, f.b, f.c,
                                         j - 1});
      }
      beta = 0.0;
      gamma = tau + sigma1 / denom_power;
      --j;
    }
    if (beta != 0.0) {
      terms.push_back(QuadLogTerm{beta / 2.0, f.b, f.c});
    }
    const double atan_num = gamma - beta * f.b / 2.0;
    if (atan_num != 0.0) {
      terms.push_back(AtanTerm{atan_num * 2.0 / std::sqrt(delta), f.b, f.c});
    }
  }

  return ClosedFormFunction(std::move(terms), domain);
}

std::string ClosedFormFunction::render(RenderStyle style) const {
  const bool latex = style == RenderStyle::latex;
  const std::string mul = latex ? " " : "*";

  struct Item {
    bool negative;
    std::string body;  // rendered magnitude, coefficient included
  };
  std::vector<Item> items;
  double const_shift = constant_;
  double coef_scale = 0.0;

  auto scalar_item = [&](double coef, const std::string& body) {
    coef_scale = std::max(coef_scale, std::abs(coef));
    items.push_back({coef < 0.0, fmt(std::abs(coef)) + mul + body});
  };

  for (const auto& term : terms_) {
    std::visit(
        [&](const auto& t) {
          using T = std::decay_t<decltype(t)>;
          if constexpr (std::is_same_v<T, LogTerm>) {
            // ln|s - r| displayed as ln(1 - s/r); the offset ln|r| moves
            // into the printed constant
            const double slope = -1.0 / t.root;
            std::string arg = signed_append("1", slope, "t", latex);
            scalar_item(t.coef, (latex ? "\\ln(" : "ln(") + arg + ")");
            const_shift += t.coef * std::log(std::abs(t.root));
          } else if constexpr (std::is_same_v<T, QuadLogTerm>) {
            std::string arg =
                "(" + quad_str(t.b, t.c, latex) + ")/" + fmt(t.c);
            scalar_item(t.coef, (latex ? "\\ln(" : "ln(") + arg + ")");
            const_shift += t.coef * std::log(t.c);
          } else if constexpr (std::is_same_v<T, AtanTerm>) {
            const double d = std::sqrt(4.0 * t.c - t.b * t.b);
            std::string arg;
            if (t.b == 0.0) {
              const double m = 2.0 / d;
              arg = (m == 1.0 ? "t" : fmt(m) + mul + "t");
            } else {
              arg = "(2" + mul + "t" +
                    (t.b > 0.0 ? " + " + fmt(t.b) : " - " + fmt(-t.b)) + ")/" +
                    fmt(d);
            }
            scalar_item(t.coef,
                        (latex ? "\\arctan(" : "atan(") + arg + ")");
          } else if constexpr (std::is_same_v<T, RationalTerm>) {
            const std::string den =
                pow_sym("(" + linear_shift_str(t.root) + ")", t.power,
                        latex);
            coef_scale = std::max(coef_scale, std::abs(t.coef));
            if (latex) {
              items.push_back({t.coef < 0.0, "\\frac{" +
                                                 fmt(std::abs(t.coef)) + "}{" +
                                                 den + "}"});
            } else {
              items.push_back({t.coef < 0.0, fmt(std::abs(t.coef)) + "/" + den});
            }
          } else if constexpr (std::is_same_v<T, QuadRationalTerm>) {
            const double lead = t.lin != 0.0 ? t.lin : t.cst;
            const bool neg = lead < 0.0;
            const double sgn = neg ? -1.0 : 1.0;
            coef_scale = std::max({coef_scale, std::abs(t.lin),
                                   std::abs(t.cst)});
            std::string numer;
            if (t.lin == 0.0) {
              numer = fmt(sgn * t.cst);
            } else {
              numer = fmt(sgn * t.lin) + mul + "t";
              numer = signed_append(numer, sgn * t.cst, "1", latex);
            }
            const std::string den =
                pow_sym("(" + quad_str(t.b, t.c, latex) + ")", t.power, latex);
            if (latex) {
              items.push_back({neg, "\\frac{" + numer + "}{" + den + "}"});
            } else {
              items.push_back({neg, "(" + numer + ")/" + den});
            }
          } else {  // MonomialTerm
            scalar_item(t.coef, pow_sym("t", t.power, latex));
          }
        },
        term);
  }

  if (std::abs(const_shift) > 1e-12 * (1.0 + coef_scale)) {
    items.push_back({const_shift < 0.0, fmt(std::abs(const_shift))});
  }

  if (items.empty()) return "0";

  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i == 0) {
      if (items[i].negative) out += "-";
    } else {
      out += items[i].negative ? " - " : " + ";
    }
    out += items[i].body;
  }
  return out;
}

}  // namespace putzer
