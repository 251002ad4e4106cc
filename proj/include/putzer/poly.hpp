#ifndef PUTZER_POLY_HPP
#define PUTZER_POLY_HPP

// Small helpers for real polynomials stored as ascending coefficient
// vectors: p[0] + p[1] s + p[2] s^2 + ...

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace putzer::poly {

inline double eval(std::span<const double> p, double s) {
  double acc = 0.0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * s + p[i];
  return acc;
}

inline int degree(std::span<const double> p) {
  for (std::size_t i = p.size(); i-- > 0;)
    if (p[i] != 0.0) return static_cast<int>(i);
  return 0;
}

// Drops trailing coefficients below rel_tol * max|p_i|.
inline std::vector<double> trimmed(std::span<const double> p,
                                   double rel_tol = 1e-12) {
  double scale = 0.0;
  for (double v : p) scale = std::max(scale, std::abs(v));
  std::vector<double> out(p.begin(), p.end());
  while (out.size() > 1 && std::abs(out.back()) <= rel_tol * scale)
    out.pop_back();
  if (out.empty()) out.push_back(0.0);
  return out;
}

inline std::vector<double> mul(std::span<const double> a,
                               std::span<const double> b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// Divides p by the monic linear factor (s - r); returns the quotient and
// stores p(r) in remainder.
inline std::vector<double> div_linear(std::span<const double> p, double r,
                                      double* remainder) {
  const std::size_t deg = p.size() - 1;
  std::vector<double> q(deg, 0.0);
  double carry = p[deg];
  for (std::size_t i = deg; i-- > 0;) {
    q[i] = carry;
    carry = p[i] + r * carry;
  }
  if (remainder) *remainder = carry;
  if (q.empty()) q.push_back(0.0);
  return q;
}

// Divides p by the monic quadratic s^2 + b s + c; remainder is
// rem[0] + rem[1] s.
inline std::vector<double> div_quadratic(std::span<const double> p, double b,
                                         double c, double rem[2]) {
  std::vector<double> work(p.begin(), p.end());
  const int deg = static_cast<int>(p.size()) - 1;
  std::vector<double> q(deg >= 2 ? deg - 1 : 1, 0.0);
  for (int i = deg; i >= 2; --i) {
    const double f = work[i];
    q[i - 2] = f;
    work[i] = 0.0;
    work[i - 1] -= f * b;
    work[i - 2] -= f * c;
  }
  rem[0] = work[0];
  rem[1] = p.size() >= 2 ? work[1] : 0.0;
  return q;
}

// General long division: num = quo * den + rem with deg rem < deg den.
inline void div(std::span<const double> num, std::span<const double> den,
                std::vector<double>* quo, std::vector<double>* rem) {
  const int dn = degree(num);
  const int dd = degree(den);
  std::vector<double> r(num.begin(), num.end());
  r.resize(dn + 1);
  std::vector<double> q(dn >= dd ? dn - dd + 1 : 1, 0.0);
  const double lead = den[dd];
  for (int i = dn; i >= dd; --i) {
    const double f = r[i] / lead;
    q[i - dd] = f;
    if (f == 0.0) continue;
    for (int j = 0; j <= dd; ++j) r[i - dd + j] -= f * den[j];
    r[i] = 0.0;
  }
  if (quo) *quo = std::move(q);
  if (rem) {
    r.resize(std::max(dd, 1));
    *rem = std::move(r);
  }
}

inline std::vector<double> derivative(std::span<const double> p) {
  if (p.size() <= 1) return {0.0};
  std::vector<double> d(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = i * p[i];
  return d;
}

}  // namespace putzer::poly

#endif
