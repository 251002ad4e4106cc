#ifndef PUTZER_MATRIX_HPP
#define PUTZER_MATRIX_HPP

#include <initializer_list>
#include <span>
#include <vector>

#include "putzer/errors.hpp"

namespace putzer {

// Square dense real matrix, row-major storage. Entries must be finite;
// construction rejects NaN/Inf.
class DenseMatrix {
 public:
  explicit DenseMatrix(int n);  // zero matrix
  DenseMatrix(int n, std::vector<double> entries);
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix identity(int n);

  int dim() const { return n_; }

  double& operator()(int row, int col) {
    return entries_[static_cast<std::size_t>(row) * n_ + col];
  }
  double operator()(int row, int col) const {
    return entries_[static_cast<std::size_t>(row) * n_ + col];
  }

  const std::vector<double>& entries() const { return entries_; }

  DenseMatrix transposed() const;

 private:
  int n_;
  std::vector<double> entries_;
};

DenseMatrix mat_add(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix mat_sub(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix mat_mul(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix mat_scale(double s, const DenseMatrix& a);

inline DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
  return mat_add(a, b);
}
inline DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
  return mat_sub(a, b);
}
inline DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  return mat_mul(a, b);
}
inline DenseMatrix operator*(double s, const DenseMatrix& a) {
  return mat_scale(s, a);
}

// max absolute row sum
double inf_norm(const DenseMatrix& a);
// largest entry magnitude
double max_abs(const DenseMatrix& a);

// Evaluates A^k + c_1 A^{k-1} + ... + c_{k-1} A + c_k I by Horner's
// scheme in the matrix argument; coeffs holds c_1..c_k.
DenseMatrix mat_poly_eval(std::span<const double> coeffs, const DenseMatrix& a);

// Sum of scalars[i] * powers[i]; lengths and dimensions must agree.
DenseMatrix linear_combination(std::span<const double> scalars,
                               std::span<const DenseMatrix> powers);

// LU factorization with partial pivoting. A pivot whose magnitude falls
// below 1e-13 * max|a_ij| of the input declares the matrix singular.
class LuFactorization {
 public:
  static LuFactorization factor(const DenseMatrix& a);

  std::vector<double> solve(std::vector<double> rhs) const;
  DenseMatrix solve(const DenseMatrix& b) const;

 private:
  LuFactorization(DenseMatrix lu, std::vector<int> perm)
      : lu_(std::move(lu)), perm_(std::move(perm)) {}

  DenseMatrix lu_;
  std::vector<int> perm_;
};

// Solves a X = b; throws SingularMatrixError with the failing pivot index.
DenseMatrix mat_solve(const DenseMatrix& a, const DenseMatrix& b);
std::vector<double> mat_solve(const DenseMatrix& a, std::vector<double> b);

}  // namespace putzer

#endif
