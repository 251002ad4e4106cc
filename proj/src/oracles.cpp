#include "putzer/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

namespace putzer::oracles {

namespace {

std::vector<double> ivp_rhs(const AnnihilatingPolynomial& p,
                            const DenseMatrix& companion, double t) {
  const int k = p.k;
  if (k == 1) {
    const double c1 = p.coeffs[0];
    return {c1 / (1.0 + c1 * t)};
  }
  DenseMatrix m = DenseMatrix::identity(k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) m(i, j) -= companion(i, j) * t;
  std::vector<double> rhs(k, 0.0);
  rhs[1] = -1.0;
  return mat_solve(m, std::move(rhs));
}

}  // namespace

OdeSolution solve_putzer_ivp(const AnnihilatingPolynomial& p, double t_end,
                             double rtol) {
  const int k = p.k;
  if (k < 1) throw PreconditionError("solve_putzer_ivp: degree must be >= 1");

  OdeSolution sol;
  sol.grid.push_back({0.0, std::vector<double>(k, 0.0)});
  if (t_end == 0.0) return sol;

  const DenseMatrix companion =
      k >= 2 ? companion_matrix(p) : DenseMatrix(1);

  // Dormand-Prince 5(4). The right-hand side depends on t alone, so only
  // the stage abscissae and the two weight rows matter.
  static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                      b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double e1 = 35.0 / 384 - 5179.0 / 57600,
                      e3 = 500.0 / 1113 - 7571.0 / 16695,
                      e4 = 125.0 / 192 - 393.0 / 640,
                      e5 = -2187.0 / 6784 + 92097.0 / 339200,
                      e6 = 11.0 / 84 - 187.0 / 2100 - 1.0 / 40;

  const double atol = 1e-14;
  double t = 0.0;
  std::vector<double> x(k, 0.0);
  double h = t_end / 16.0;
  double worst_accepted = 0.0;

  auto rhs_at = [&](double tt) -> std::vector<double> {
    try {
      return ivp_rhs(p, companion, tt);
    } catch (const SingularMatrixError&) {
      std::ostringstream msg;
      msg << "solve_putzer_ivp: I - Ct became singular near t = " << tt
          << " (reached t = " << t << ")";
      throw ConvergenceError(msg.str());
    }
  };

  for (long step = 0; step < 1000000; ++step) {
    if ((t_end > 0.0 && t >= t_end) || (t_end < 0.0 && t <= t_end)) break;
    if ((t_end > 0.0 && t + h > t_end) || (t_end < 0.0 && t + h < t_end)) {
      h = t_end - t;
    }

    const std::vector<double> k1 = rhs_at(t);
    const std::vector<double> k3 = rhs_at(t + c3 * h);
    const std::vector<double> k4 = rhs_at(t + c4 * h);
    const std::vector<double> k5 = rhs_at(t + c5 * h);
    const std::vector<double> k6 = rhs_at(t + h);
    (void)c2;  // stage 2 carries zero weight in both rows

    std::vector<double> xnew = x;
    double err_ratio = 0.0;
    double err_abs = 0.0;
    for (int i = 0; i < k; ++i) {
      xnew[i] += h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                      b6 * k6[i]);
      const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                            e5 * k5[i] + e6 * k6[i]);
      const double sc =
          atol + rtol * std::max(std::abs(x[i]), std::abs(xnew[i]));
      err_ratio = std::max(err_ratio, std::abs(e) / sc);
      err_abs = std::max(err_abs, std::abs(e));
    }

    if (err_ratio <= 1.0) {
      t += h;
      x = xnew;
      sol.grid.push_back({t, x});
      worst_accepted = std::max(worst_accepted, err_abs);
    }

    const double factor =
        std::clamp(0.9 * std::pow(std::max(err_ratio, 1e-10), -0.2), 0.2, 5.0);
    h *= factor;
    if (std::abs(h) < 16.0 * std::numeric_limits<double>::epsilon() *
                          std::max(1.0, std::abs(t))) {
      std::ostringstream msg;
      msg << "solve_putzer_ivp: step size underflow, reached t = " << t;
      throw ConvergenceError(msg.str());
    }
  }
  sol.tolerance_achieved = worst_accepted;
  return sol;
}

DenseMatrix series_log(const DenseMatrix& a, double t, int terms_cap) {
  const int n = a.dim();
  const DenseMatrix m = mat_scale(t, a);
  const double mnorm = inf_norm(m);
  if (mnorm >= 0.9) {
    std::ostringstream msg;
    msg << "series_log: ||At||_inf = " << mnorm << " >= 0.9";
    throw PreconditionError(msg.str());
  }

  DenseMatrix sum(n);
  DenseMatrix power = m;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) sum(i, j) = -power(i, j);

  double last_term = inf_norm(power);
  for (int term = 2; term <= terms_cap; ++term) {
    power = mat_mul(power, m);
    const double inv = 1.0 / term;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) sum(i, j) -= inv * power(i, j);
    last_term = inf_norm(power) * inv;
    if (last_term <= 1e-14 * std::max(inf_norm(sum),
                                      std::numeric_limits<double>::min())) {
      return sum;
    }
  }
  std::ostringstream msg;
  msg << "series_log: cap of " << terms_cap
      << " terms hit, last term norm = " << last_term;
  throw ConvergenceError(msg.str());
}

DenseMatrix expm(const DenseMatrix& x) {
  const int n = x.dim();
  const double norm = inf_norm(x);

  int squarings = 0;
  if (norm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    if (squarings > 200) {
      throw ConvergenceError("expm: norm too large for scaling");
    }
  }
  const DenseMatrix y = mat_scale(std::ldexp(1.0, -squarings), x);

  DenseMatrix acc = DenseMatrix::identity(n);
  for (int j = 13; j >= 1; --j) {
    acc = mat_scale(1.0 / j, mat_mul(y, acc));
    for (int i = 0; i < n; ++i) acc(i, i) += 1.0;
  }
  for (int s = 0; s < squarings; ++s) acc = mat_mul(acc, acc);

  for (double v : acc.entries()) {
    if (!std::isfinite(v)) {
      throw ConvergenceError("expm: overflow during squaring");
    }
  }
  return acc;
}

namespace {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1], positive half
constexpr double kGkNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr double kGkWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kGaussWeights[4] = {0.129484966168870, 0.279705391489277,
                                     0.381830050505119, 0.417959183673469};

struct GkEstimate {
  double kronrod;
  double error;
};

GkEstimate gk15(const RationalIntegrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double kron = kGkWeights[7] * f.value(center);
  double gauss = kGaussWeights[3] * f.value(center);
  for (int i = 0; i < 7; ++i) {
    const double off = half * kGkNodes[i];
    const double fsum = f.value(center - off) + f.value(center + off);
    kron += kGkWeights[i] * fsum;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * fsum;
  }
  kron *= half;
  gauss *= half;
  return {kron, std::abs(kron - gauss)};
}

double adapt_gk(const RationalIntegrand& f, double a, double b, double tol,
                int depth) {
  const GkEstimate est = gk15(f, a, b);
  if (est.error <= tol) return est.kronrod;
  if (depth >= 48) {
    std::ostringstream msg;
    msg << "quad_integrand: subdivision limit on [" << a << ", " << b
        << "], error estimate " << est.error;
    throw ConvergenceError(msg.str());
  }
  const double mid = 0.5 * (a + b);
  return adapt_gk(f, a, mid, 0.5 * tol, depth + 1) +
         adapt_gk(f, mid, b, 0.5 * tol, depth + 1);
}

}  // namespace

double quad_integrand(const RationalIntegrand& r, double t, double rtol) {
  if (t == 0.0) return 0.0;
  const GkEstimate first = gk15(r, 0.0, t);
  const double tol = rtol * std::abs(first.kronrod) + 1e-14;
  return adapt_gk(r, 0.0, t, tol, 0);
}

}  // namespace putzer::oracles
