#include "putzer/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "putzer/poly.hpp"

namespace putzer {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double trace(const DenseMatrix& a) {
  double t = 0.0;
  for (int i = 0; i < a.dim(); ++i) t += a(i, i);
  return t;
}

double residual_scale(double anorm, int k) {
  return std::max(1.0, std::pow(anorm, k));
}

// Householder QR least squares: minimizes ||A x - rhs||_2 where A is
// given as a list of columns. Rank-deficient columns get x_j = 0.
std::vector<double> least_squares(std::vector<std::vector<double>> cols,
                                  std::vector<double> rhs) {
  const std::size_t m = rhs.size();
  const std::size_t k = cols.size();
  std::vector<double> diag(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    double sigma = 0.0;
    for (std::size_t i = j; i < m; ++i) sigma += cols[j][i] * cols[j][i];
    sigma = std::sqrt(sigma);
    if (sigma == 0.0) {
      diag[j] = 0.0;
      continue;
    }
    const double x0 = cols[j][j];
    const double alpha = -std::copysign(sigma, x0);
    cols[j][j] = x0 - alpha;
    const double beta = 1.0 / (sigma * (sigma + std::abs(x0)));
    for (std::size_t jj = j + 1; jj < k; ++jj) {
      double s = 0.0;
      for (std::size_t i = j; i < m; ++i) s += cols[j][i] * cols[jj][i];
      s *= beta;
      for (std::size_t i = j; i < m; ++i) cols[jj][i] -= s * cols[j][i];
    }
    double s = 0.0;
    for (std::size_t i = j; i < m; ++i) s += cols[j][i] * rhs[i];
    s *= beta;
    for (std::size_t i = j; i < m; ++i) rhs[i] -= s * cols[j][i];
    diag[j] = alpha;
  }
  double rmax = 0.0;
  for (double d : diag) rmax = std::max(rmax, std::abs(d));
  const double rank_tol =
      rmax * static_cast<double>(m) * std::numeric_limits<double>::epsilon();
  std::vector<double> x(k, 0.0);
  for (std::size_t jj = k; jj-- > 0;) {
    if (std::abs(diag[jj]) <= rank_tol) {
      x[jj] = 0.0;
      continue;
    }
    double s = rhs[jj];
    for (std::size_t c = jj + 1; c < k; ++c) {
      // R(jj, c) lives in cols[c][jj] only above the reflector; after the
      // in-place sweep the strict upper part of column c is untouched
      s -= cols[c][jj] * x[c];
    }
    x[jj] = s / diag[jj];
  }
  return x;
}

DenseMatrix hessenberg_reduce(DenseMatrix a) {
  const int n = a.dim();
  std::vector<double> v(n, 0.0);
  for (int k = 0; k + 2 < n; ++k) {
    double sigma = 0.0;
    for (int i = k + 1; i < n; ++i) sigma += a(i, k) * a(i, k);
    sigma = std::sqrt(sigma);
    if (sigma == 0.0) continue;
    const double x0 = a(k + 1, k);
    const double alpha = -std::copysign(sigma, x0);
    v[k + 1] = x0 - alpha;
    for (int i = k + 2; i < n; ++i) v[i] = a(i, k);
    const double beta = 1.0 / (sigma * (sigma + std::abs(x0)));
    // A <- P A with P = I - beta v v^T
    for (int j = k; j < n; ++j) {
      double s = 0.0;
      for (int i = k + 1; i < n; ++i) s += v[i] * a(i, j);
      s *= beta;
      for (int i = k + 1; i < n; ++i) a(i, j) -= s * v[i];
    }
    // A <- A P
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = k + 1; j < n; ++j) s += v[j] * a(i, j);
      s *= beta;
      for (int j = k + 1; j < n; ++j) a(i, j) -= s * v[j];
    }
    a(k + 1, k) = alpha;
    for (int i = k + 2; i < n; ++i) a(i, k) = 0.0;
  }
  return a;
}

// Francis double-shift QR on an upper Hessenberg matrix; eigenvalues only.
std::vector<std::complex<double>> hessenberg_eigenvalues(DenseMatrix h) {
  const int n = h.dim();
  std::vector<std::complex<double>> eig;
  eig.reserve(n);

  double anorm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(h(i, j));
  if (anorm == 0.0) {
    eig.assign(n, {0.0, 0.0});
    return eig;
  }

  const double eps = std::numeric_limits<double>::epsilon();
  int budget = 40 * n;
  int en = n - 1;
  double shift_acc = 0.0;

  while (en >= 0) {
    int its = 0;
    for (;;) {
      int l;
      for (l = en; l >= 1; --l) {
        double s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
        if (s == 0.0) s = anorm;
        if (std::abs(h(l, l - 1)) <= eps * s) {
          h(l, l - 1) = 0.0;
          break;
        }
      }
      if (l < 0) l = 0;

      double x = h(en, en);
      if (l == en) {
        eig.push_back({x + shift_acc, 0.0});
        --en;
        break;
      }
      double y = h(en - 1, en - 1);
      double w = h(en, en - 1) * h(en - 1, en);
      if (l == en - 1) {
        const double p = 0.5 * (y - x);
        const double q = p * p + w;
        double z = std::sqrt(std::abs(q));
        x += shift_acc;
        if (q >= 0.0) {
          z = p + std::copysign(z, p);
          eig.push_back({x + z, 0.0});
          eig.push_back({z != 0.0 ? x - w / z : x + z, 0.0});
        } else {
          eig.push_back({x + p, z});
          eig.push_back({x + p, -z});
        }
        en -= 2;
        break;
      }

      if (budget == 0) {
        throw ConvergenceError(
            "QR iteration stalled: subdiagonal entry (" + std::to_string(en) +
            ", " + std::to_string(en - 1) + ") failed to deflate");
      }
      if (its == 10 || its == 20) {
        // exceptional shift to break symmetric cycling
        shift_acc += x;
        for (int i = 0; i <= en; ++i) h(i, i) -= x;
        const double s = std::abs(h(en, en - 1)) + std::abs(h(en - 1, en - 2));
        x = y = 0.75 * s;
        w = -0.4375 * s * s;
      }
      ++its;
      --budget;

      int m;
      double p = 0.0, q = 0.0, r = 0.0;
      for (m = en - 2; m >= l; --m) {
        const double z = h(m, m);
        const double rr = x - z;
        const double ss = y - z;
        p = (rr * ss - w) / h(m + 1, m) + h(m, m + 1);
        q = h(m + 1, m + 1) - z - rr - ss;
        r = h(m + 2, m + 1);
        const double sc = std::abs(p) + std::abs(q) + std::abs(r);
        p /= sc;
        q /= sc;
        r /= sc;
        if (m == l) break;
        const double u = std::abs(h(m, m - 1)) * (std::abs(q) + std::abs(r));
        const double v =
            std::abs(p) *
            (std::abs(h(m - 1, m - 1)) + std::abs(z) + std::abs(h(m + 1, m + 1)));
        if (u <= eps * v) break;
      }
      for (int i = m + 2; i <= en; ++i) {
        h(i, i - 2) = 0.0;
        if (i != m + 2) h(i, i - 3) = 0.0;
      }

      for (int k = m; k <= en - 1; ++k) {
        const bool notlast = (k != en - 1);
        if (k != m) {
          p = h(k, k - 1);
          q = h(k + 1, k - 1);
          r = notlast ? h(k + 2, k - 1) : 0.0;
          x = std::abs(p) + std::abs(q) + std::abs(r);
          if (x == 0.0) continue;
          p /= x;
          q /= x;
          r /= x;
        }
        const double s = std::copysign(std::sqrt(p * p + q * q + r * r), p);
        if (k == m) {
          if (l != m) h(k, k - 1) = -h(k, k - 1);
        } else {
          h(k, k - 1) = -s * x;
        }
        p += s;
        x = p / s;
        y = q / s;
        const double z = r / s;
        q /= p;
        r /= p;

        for (int j = k; j <= en; ++j) {
          double pp = h(k, j) + q * h(k + 1, j);
          if (notlast) pp += r * h(k + 2, j);
          h(k, j) -= pp * x;
          h(k + 1, j) -= pp * y;
          if (notlast) h(k + 2, j) -= pp * z;
        }
        const int upper = std::min(en, k + 3);
        for (int i = l; i <= upper; ++i) {
          double pp = x * h(i, k) + y * h(i, k + 1);
          if (notlast) pp += z * h(i, k + 2);
          h(i, k) -= pp;
          h(i, k + 1) -= pp * q;
          if (notlast) h(i, k + 2) -= pp * r;
        }
      }
    }
  }
  return eig;
}

}  // namespace

int Spectrum::degree() const {
  int d = 0;
  for (const auto& e : real_eigs) d += e.multiplicity;
  for (const auto& p : complex_pairs) d += 2 * p.multiplicity;
  return d;
}

std::vector<std::complex<double>> Spectrum::flatten() const {
  std::vector<std::complex<double>> out;
  for (const auto& e : real_eigs)
    for (int i = 0; i < e.multiplicity; ++i) out.emplace_back(e.value, 0.0);
  for (const auto& p : complex_pairs)
    for (int i = 0; i < p.multiplicity; ++i) {
      out.emplace_back(p.re, p.im);
      out.emplace_back(p.re, -p.im);
    }
  return out;
}

int RealFactorization::degree() const {
  int d = 0;
  for (const auto& f : linear) d += f.multiplicity;
  for (const auto& f : quadratics) d += 2 * f.multiplicity;
  return d;
}

std::vector<double> RealFactorization::expand() const {
  std::vector<double> acc{constant};
  for (const auto& f : linear) {
    const std::vector<double> factor{-f.root, 1.0};
    for (int i = 0; i < f.multiplicity; ++i) acc = poly::mul(acc, factor);
  }
  for (const auto& f : quadratics) {
    const std::vector<double> factor{f.c, f.b, 1.0};
    for (int i = 0; i < f.multiplicity; ++i) acc = poly::mul(acc, factor);
  }
  return acc;
}

DomainInterval::DomainInterval() : lo(-kInf), hi(kInf) {}
DomainInterval::DomainInterval(double lo_, double hi_) : lo(lo_), hi(hi_) {}
bool DomainInterval::bounded_below() const { return std::isfinite(lo); }
bool DomainInterval::bounded_above() const { return std::isfinite(hi); }

AnnihilatingPolynomial characteristic_polynomial(const DenseMatrix& a) {
  const int n = a.dim();
  AnnihilatingPolynomial p;
  p.k = n;
  p.kind = PolyKind::characteristic;
  p.coeffs.resize(n);

  DenseMatrix m = a;
  p.coeffs[0] = -trace(m);
  for (int j = 2; j <= n; ++j) {
    DenseMatrix shifted = m;
    for (int i = 0; i < n; ++i) shifted(i, i) += p.coeffs[j - 2];
    m = mat_mul(a, shifted);
    p.coeffs[j - 1] = -trace(m) / j;
  }
  p.residual = inf_norm(mat_poly_eval(p.coeffs, a)) /
               residual_scale(inf_norm(a), n);
  return p;
}

AnnihilatingPolynomial minimal_polynomial(const DenseMatrix& a, double tol) {
  if (tol <= 0.0) throw PreconditionError("minimal_polynomial: tol must be positive");
  const int n = a.dim();
  const double anorm = inf_norm(a);

  std::vector<DenseMatrix> powers;
  powers.push_back(DenseMatrix::identity(n));
  for (int j = 1; j <= n; ++j) powers.push_back(mat_mul(powers.back(), a));

  for (int k = 1; k <= n; ++k) {
    // columns for c_1..c_k are vec(A^{k-1}), ..., vec(I)
    std::vector<std::vector<double>> cols(k);
    std::vector<double> scales(k, 1.0);
    for (int j = 1; j <= k; ++j) {
      cols[j - 1] = powers[k - j].entries();
      double norm2 = 0.0;
      for (double v : cols[j - 1]) norm2 += v * v;
      norm2 = std::sqrt(norm2);
      if (norm2 > 0.0) {
        for (double& v : cols[j - 1]) v /= norm2;
        scales[j - 1] = norm2;
      }
    }
    std::vector<double> rhs = powers[k].entries();
    for (double& v : rhs) v = -v;

    std::vector<double> c = least_squares(std::move(cols), std::move(rhs));
    for (int j = 0; j < k; ++j) c[j] /= scales[j];

    const double res = inf_norm(mat_poly_eval(c, a));
    if (res <= tol * std::pow(anorm, k)) {
      AnnihilatingPolynomial p;
      p.k = k;
      p.coeffs = std::move(c);
      p.kind = PolyKind::minimal;
      p.residual = res / residual_scale(anorm, k);
      return p;
    }
  }

  AnnihilatingPolynomial p = characteristic_polynomial(a);
  p.minimal_fell_back = true;
  return p;
}

DenseMatrix companion_matrix(const AnnihilatingPolynomial& p) {
  const int k = p.k;
  if (k < 1 || static_cast<int>(p.coeffs.size()) != k) {
    throw DimensionError("companion_matrix: polynomial degree must be >= 1");
  }
  DenseMatrix c(k);
  for (int i = 1; i < k; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < k; ++i) c(i, k - 1) = -p.coeffs[k - i - 1];
  return c;
}

Spectrum eigenvalues(const DenseMatrix& a, double tol) {
  const auto raw = hessenberg_eigenvalues(hessenberg_reduce(a));
  const double thr = tol * inf_norm(a);

  std::vector<double> reals;
  std::vector<std::complex<double>> upper;
  for (const auto& z : raw) {
    if (std::abs(z.imag()) <= thr) {
      reals.push_back(z.real());
    } else if (z.imag() > 0.0) {
      upper.push_back(z);
    }
  }
  if (reals.size() + 2 * upper.size() != raw.size()) {
    throw InconsistencyError("eigenvalues: conjugate pairing failed");
  }

  Spectrum spec;
  std::sort(reals.begin(), reals.end());
  for (std::size_t i = 0; i < reals.size();) {
    std::size_t j = i + 1;
    double sum = reals[i];
    while (j < reals.size() && reals[j] - reals[j - 1] <= thr) {
      sum += reals[j];
      ++j;
    }
    spec.real_eigs.push_back(
        {sum / static_cast<double>(j - i), static_cast<int>(j - i)});
    i = j;
  }

  std::sort(upper.begin(), upper.end(), [](const auto& x, const auto& y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  for (std::size_t i = 0; i < upper.size();) {
    std::size_t j = i + 1;
    std::complex<double> sum = upper[i];
    while (j < upper.size() &&
           std::abs(upper[j].real() - upper[j - 1].real()) <= thr &&
           std::abs(upper[j].imag() - upper[j - 1].imag()) <= thr) {
      sum += upper[j];
      ++j;
    }
    const double inv = 1.0 / static_cast<double>(j - i);
    spec.complex_pairs.push_back(
        {sum.real() * inv, sum.imag() * inv, static_cast<int>(j - i)});
    i = j;
  }
  return spec;
}

DomainInterval domain_interval(const Spectrum& spec) {
  double lo = -kInf;
  double hi = kInf;
  for (const auto& e : spec.real_eigs) {
    if (e.value > 0.0) hi = std::min(hi, 1.0 / e.value);
    if (e.value < 0.0) lo = std::max(lo, 1.0 / e.value);
  }
  return {lo, hi};
}

std::vector<double> reciprocal_polynomial(const AnnihilatingPolynomial& p) {
  std::vector<double> q(p.k + 1);
  q[0] = 1.0;
  for (int j = 1; j <= p.k; ++j) q[j] = p.coeffs[j - 1];
  return poly::trimmed(q);
}

RealFactorization factor_reciprocal(std::span<const double> q,
                                    const Spectrum& spec) {
  constexpr double kDeflateTol = 1e-6;
  const std::vector<double> qt = poly::trimmed(q);
  double qmax = 0.0;
  for (double v : qt) qmax = std::max(qmax, std::abs(v));

  RealFactorization fact;
  std::vector<double> rest = qt;

  if (poly::degree(qt) > 0) {
    // candidate factors sorted by eigenvalue magnitude descending, so the
    // smallest reciprocal roots deflate first
    struct Candidate {
      bool is_pair;
      double a, b;  // value / (re, im)
      int cap;
      double mag;
    };
    std::vector<Candidate> cands;
    for (const auto& e : spec.real_eigs) {
      if (e.value != 0.0 && std::abs(e.value) > 1e-100)
        cands.push_back({false, e.value, 0.0, e.multiplicity,
                         std::abs(e.value)});
    }
    for (const auto& pr : spec.complex_pairs) {
      const double mod = std::hypot(pr.re, pr.im);
      if (mod > 1e-100)
        cands.push_back({true, pr.re, pr.im, pr.multiplicity, mod});
    }
    std::sort(cands.begin(), cands.end(), [](const auto& x, const auto& y) {
      return x.mag != y.mag ? x.mag > y.mag
                            : (x.a != y.a ? x.a < y.a : x.b < y.b);
    });

    for (const auto& cand : cands) {
      if (!cand.is_pair) {
        const double root = 1.0 / cand.a;
        int mult = 0;
        for (int rep = 0; rep < cand.cap; ++rep) {
          if (poly::degree(rest) < 1) break;
          double scale = 0.0, pw = 1.0;
          for (double v : rest) {
            scale += std::abs(v) * pw;
            pw *= std::abs(root);
          }
          double rem = 0.0;
          const std::vector<double> quo = poly::div_linear(rest, root, &rem);
          if (std::abs(rem) > kDeflateTol * scale) break;
          rest = quo;
          ++mult;
        }
        if (mult > 0) fact.linear.push_back({root, mult});
      } else {
        const double mod2 = cand.a * cand.a + cand.b * cand.b;
        const double qb = -2.0 * cand.a / mod2;
        const double qc = 1.0 / mod2;
        const double rho = std::sqrt(qc);
        int mult = 0;
        for (int rep = 0; rep < cand.cap; ++rep) {
          if (poly::degree(rest) < 2) break;
          double scale = 0.0, pw = 1.0;
          for (double v : rest) {
            scale += std::abs(v) * pw;
            pw *= rho;
          }
          double rem[2];
          const std::vector<double> quo =
              poly::div_quadratic(rest, qb, qc, rem);
          if (std::abs(rem[0]) + std::abs(rem[1]) * rho > kDeflateTol * scale)
            break;
          rest = quo;
          ++mult;
        }
        if (mult > 0) fact.quadratics.push_back({qb, qc, mult});
      }
    }
  }

  if (poly::degree(rest) > 0) {
    throw InconsistencyError(
        "factor_reciprocal: spectrum does not account for degree " +
        std::to_string(poly::degree(rest)) + " of the reciprocal polynomial");
  }
  fact.constant = rest[0];

  std::sort(fact.linear.begin(), fact.linear.end(),
            [](const LinearFactor& x, const LinearFactor& y) {
              return x.root < y.root;
            });
  std::sort(fact.quadratics.begin(), fact.quadratics.end(),
            [](const QuadraticFactor& x, const QuadraticFactor& y) {
              return x.b != y.b ? x.b < y.b : x.c < y.c;
            });

  std::vector<double> rebuilt = fact.expand();
  rebuilt.resize(std::max(rebuilt.size(), qt.size()), 0.0);
  std::vector<double> target = qt;
  target.resize(rebuilt.size(), 0.0);
  for (std::size_t i = 0; i < rebuilt.size(); ++i) {
    if (std::abs(rebuilt[i] - target[i]) > 1e-6 * qmax) {
      throw InconsistencyError(
          "factor_reciprocal: expanded factors disagree with q at degree " +
          std::to_string(i));
    }
  }
  return fact;
}

}  // namespace putzer
