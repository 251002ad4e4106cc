#include "putzer/matrix.hpp"

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

namespace putzer {

namespace {

void check_finite(const std::vector<double>& entries) {
  for (double v : entries) {
    if (!std::isfinite(v)) {
      throw DimensionError("matrix entry is not finite");
    }
  }
}

void check_same_dim(const DenseMatrix& a, const DenseMatrix& b,
                    const char* op) {
  if (a.dim() != b.dim()) {
    throw DimensionError(std::string(op) + ": dimension mismatch (" +
                         std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()) + ")");
  }
}

}  // namespace

DenseMatrix::DenseMatrix(int n) : n_(n) {
  if (n <= 0) throw DimensionError("matrix dimension must be positive");
  entries_.assign(static_cast<std::size_t>(n) * n, 0.0);
}

DenseMatrix::DenseMatrix(int n, std::vector<double> entries)
    : n_(n), entries_(std::move(entries)) {
  if (n <= 0) throw DimensionError("matrix dimension must be positive");
  if (entries_.size() != static_cast<std::size_t>(n) * n) {
    throw DimensionError("entry count " + std::to_string(entries_.size()) +
                         " does not match dimension " + std::to_string(n));
  }
  check_finite(entries_);
}

DenseMatrix::DenseMatrix(
    std::initializer_list<std::initializer_list<double>> rows)
    : n_(static_cast<int>(rows.size())) {
  if (n_ <= 0) throw DimensionError("matrix dimension must be positive");
  entries_.reserve(static_cast<std::size_t>(n_) * n_);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n_) {
      throw DimensionError("row length does not match dimension");
    }
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
  check_finite(entries_);
}

DenseMatrix DenseMatrix::identity(int n) {
  DenseMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

DenseMatrix mat_add(const DenseMatrix& a, const DenseMatrix& b) {
  check_same_dim(a, b, "mat_add");
  const int n = a.dim();
  DenseMatrix c(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

DenseMatrix mat_sub(const DenseMatrix& a, const DenseMatrix& b) {
  check_same_dim(a, b, "mat_sub");
  const int n = a.dim();
  DenseMatrix c(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

DenseMatrix mat_mul(const DenseMatrix& a, const DenseMatrix& b) {
  check_same_dim(a, b, "mat_mul");
  const int n = a.dim();
  DenseMatrix c(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

DenseMatrix mat_scale(double s, const DenseMatrix& a) {
  const int n = a.dim();
  DenseMatrix c(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c(i, j) = s * a(i, j);
  return c;
}

double inf_norm(const DenseMatrix& a) {
  double best = 0.0;
  for (int i = 0; i < a.dim(); ++i) {
    double row = 0.0;
    for (int j = 0; j < a.dim(); ++j) row += std::abs(a(i, j));
    if (row > best) best = row;
  }
  return best;
}

double max_abs(const DenseMatrix& a) {
  double best = 0.0;
  for (double v : a.entries()) best = std::max(best, std::abs(v));
  return best;
}

DenseMatrix mat_poly_eval(std::span<const double> coeffs,
                          const DenseMatrix& a) {
  const int n = a.dim();
  DenseMatrix result = DenseMatrix::identity(n);
  for (double c : coeffs) {
    result = mat_mul(result, a);
    for (int i = 0; i < n; ++i) result(i, i) += c;
  }
  return result;
}

DenseMatrix linear_combination(std::span<const double> scalars,
                               std::span<const DenseMatrix> powers) {
  if (scalars.empty() || scalars.size() != powers.size()) {
    throw DimensionError("linear_combination: length mismatch");
  }
  const int n = powers[0].dim();
  DenseMatrix acc(n);
  for (std::size_t i = 0; i < scalars.size(); ++i) {
    check_same_dim(acc, powers[i], "linear_combination");
    const double f = scalars[i];
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) acc(r, c) += f * powers[i](r, c);
  }
  return acc;
}

LuFactorization LuFactorization::factor(const DenseMatrix& a) {
  const int n = a.dim();
  DenseMatrix lu = a;
  std::vector<int> perm(n);
  const double pivot_tol = 1e-13 * max_abs(a);

  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(lu(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double v = std::abs(lu(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best <= pivot_tol) {
      throw SingularMatrixError(
          "singular matrix: pivot " + std::to_string(k) + " has magnitude " +
              std::to_string(best),
          k);
    }
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
      std::swap(perm[k], perm[piv]);
    }
    const double inv = 1.0 / lu(k, k);
    for (int i = k + 1; i < n; ++i) {
      const double m = lu(i, k) * inv;
      lu(i, k) = m;
      if (m == 0.0) continue;
      for (int j = k + 1; j < n; ++j) lu(i, j) -= m * lu(k, j);
    }
  }
  return LuFactorization(std::move(lu), std::move(perm));
}

std::vector<double> LuFactorization::solve(std::vector<double> rhs) const {
  const int n = lu_.dim();
  if (static_cast<int>(rhs.size()) != n) {
    throw DimensionError("mat_solve: right-hand side length mismatch");
  }
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = rhs[perm_[i]];
  // forward substitution, unit lower triangle
  for (int i = 1; i < n; ++i) {
    double s = x[i];
    for (int j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
    x[i] = s;
  }
  // back substitution
  for (int i = n - 1; i >= 0; --i) {
    double s = x[i];
    for (int j = i + 1; j < n; ++j) s -= lu_(i, j) * x[j];
    x[i] = s / lu_(i, i);
  }
  return x;
}

DenseMatrix LuFactorization::solve(const DenseMatrix& b) const {
  check_same_dim(lu_, b, "mat_solve");
  const int n = b.dim();
  DenseMatrix x(n);
  std::vector<double> col(n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) col[i] = b(i, j);
    const std::vector<double> sol = solve(col);
    for (int i = 0; i < n; ++i) x(i, j) = sol[i];
  }
  return x;
}

DenseMatrix mat_solve(const DenseMatrix& a, const DenseMatrix& b) {
  return LuFactorization::factor(a).solve(b);
}

std::vector<double> mat_solve(const DenseMatrix& a, std::vector<double> b) {
  return LuFactorization::factor(a).solve(std::move(b));
}

}  // namespace putzer
