#ifndef PUTZER_ORACLES_HPP
#define PUTZER_ORACLES_HPP

// Independent verification paths for the closed-form pipeline: direct
// numerical integration of the coefficient IVP, the truncated series
// logarithm, a matrix exponential, and adaptive quadrature of the
// rational integrands. None of these share code with the symbolic route
// they are checked against.

#include <vector>

#include "putzer/closed_form.hpp"
#include "putzer/matrix.hpp"
#include "putzer/spectral.hpp"

namespace putzer::oracles {

struct OdeGridPoint {
  double t;
  std::vector<double> x;
};

struct OdeSolution {
  std::vector<OdeGridPoint> grid;  // accepted steps, starts at (0, 0)
  double tolerance_achieved = 0.0;

  const std::vector<double>& final_state() const { return grid.back().x; }
};

// Integrates (I - Ct) x'(t) = -e_2, x(0) = 0 with an adaptive
// Dormand-Prince 4(5) pair, C the companion matrix of p. For k = 1 the
// right-hand side degenerates to x' = c_1 / (1 + c_1 t). t_end may be
// negative; [0, t_end] must stay inside the admissible interval.
OdeSolution solve_putzer_ivp(const AnnihilatingPolynomial& p, double t_end,
                             double rtol = 1e-10);

// Truncated series -sum_{m>=1} (At)^m / m; requires ||At||_inf < 0.9.
DenseMatrix series_log(const DenseMatrix& a, double t, int terms_cap = 10000);

// Scaling and squaring with a degree-13 truncated Taylor core.
DenseMatrix expm(const DenseMatrix& x);

// Adaptive Gauss-Kronrod 7/15 value of the definite integral of r over
// [0, t].
double quad_integrand(const RationalIntegrand& r, double t,
                      double rtol = 1e-10);

}  // namespace putzer::oracles

#endif
