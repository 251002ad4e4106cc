#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "putzer/poly.hpp"
#include "putzer/spectral.hpp"
#include "test_helpers.hpp"

using namespace putzer;
using testutil::identity_minus;
using testutil::sample_744;

TEST_CASE("characteristic polynomial by trace recurrence") {
  const AnnihilatingPolynomial p1 =
      characteristic_polynomial(DenseMatrix::identity(2));
  CHECK(p1.k == 2);
  CHECK(p1.coeffs[0] == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(p1.coeffs[1] == doctest::Approx(1.0).epsilon(1e-14));

  // spectrum of the fixture is {12, 3, 3}; expand the product of roots
  const std::vector<double> expect =
      testutil::monic_from_roots({12.0, 3.0, 3.0});
  const AnnihilatingPolynomial p2 = characteristic_polynomial(sample_744());
  REQUIRE(p2.k == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(p2.coeffs[i] == doctest::Approx(expect[i]).epsilon(1e-12));
  }
  CHECK(p2.coeffs[0] == doctest::Approx(-18.0));
  CHECK(p2.coeffs[1] == doctest::Approx(81.0));
  CHECK(p2.coeffs[2] == doctest::Approx(-108.0));

  const AnnihilatingPolynomial p3 =
      characteristic_polynomial(DenseMatrix{{5.0}});
  CHECK(p3.k == 1);
  CHECK(p3.coeffs[0] == doctest::Approx(-5.0));
}

TEST_CASE("minimal polynomial by least squares") {
  const AnnihilatingPolynomial p = minimal_polynomial(identity_minus(sample_744()));
  REQUIRE(p.k == 2);
  CHECK(p.kind == PolyKind::minimal);
  CHECK(p.coeffs[0] == doctest::Approx(13.0).epsilon(1e-9));
  CHECK(p.coeffs[1] == doctest::Approx(22.0).epsilon(1e-9));
  CHECK_FALSE(p.minimal_fell_back);

  const AnnihilatingPolynomial pi = minimal_polynomial(DenseMatrix::identity(3));
  REQUIRE(pi.k == 1);
  CHECK(pi.coeffs[0] == doctest::Approx(-1.0).epsilon(1e-12));

  const AnnihilatingPolynomial pd =
      minimal_polynomial(DenseMatrix{{2, 0}, {0, 3}});
  REQUIRE(pd.k == 2);
  CHECK(pd.coeffs[0] == doctest::Approx(-5.0).epsilon(1e-10));
  CHECK(pd.coeffs[1] == doctest::Approx(6.0).epsilon(1e-10));
}

TEST_CASE("minimal polynomial of the zero matrix is lambda") {
  const AnnihilatingPolynomial p = minimal_polynomial(DenseMatrix(3));
  REQUIRE(p.k == 1);
  CHECK(p.coeffs[0] == 0.0);
}

TEST_CASE("minimal falls back to characteristic under impossible tolerance") {
  std::mt19937_64 rng(5150);
  const DenseMatrix a = testutil::fixture_with_spectrum(
      {{{1.5, 1}, {2.5, 1}, {4.0, 1}}, {}}, rng);
  const AnnihilatingPolynomial p = minimal_polynomial(a, 1e-30);
  CHECK(p.minimal_fell_back);
  CHECK(p.kind == PolyKind::characteristic);
  CHECK(p.k == 3);
}

TEST_CASE("companion matrix layout") {
  AnnihilatingPolynomial p;
  p.k = 2;
  p.coeffs = {13.0, 22.0};
  const DenseMatrix c = companion_matrix(p);
  CHECK(c(0, 0) == 0.0);
  CHECK(c(0, 1) == -22.0);
  CHECK(c(1, 0) == 1.0);
  CHECK(c(1, 1) == -13.0);

  AnnihilatingPolynomial lin;
  lin.k = 1;
  lin.coeffs = {-5.0};
  const DenseMatrix c1 = companion_matrix(lin);
  CHECK(c1(0, 0) == 5.0);
}

TEST_CASE("characteristic of companion recovers the polynomial") {
  std::mt19937_64 rng(8844);
  std::uniform_real_distribution<double> uni(-3.0, 3.0);
  for (int rep = 0; rep < 25; ++rep) {
    const int k = 1 + static_cast<int>(rng() % 6);
    std::vector<double> roots(k);
    for (double& r : roots) r = uni(rng);
    AnnihilatingPolynomial p;
    p.k = k;
    p.coeffs = testutil::monic_from_roots(roots);
    const AnnihilatingPolynomial back =
        characteristic_polynomial(companion_matrix(p));
    REQUIRE(back.k == k);
    double scale = 1.0;
    for (double c : p.coeffs) scale = std::max(scale, std::abs(c));
    for (int i = 0; i < k; ++i) {
      CHECK(std::abs(back.coeffs[i] - p.coeffs[i]) <= 1e-8 * scale);
    }
  }
}

TEST_CASE("eigenvalues of the shifted fixture") {
  const Spectrum s = eigenvalues(identity_minus(sample_744()));
  REQUIRE(s.real_eigs.size() == 2);
  CHECK(s.complex_pairs.empty());
  CHECK(s.real_eigs[0].value == doctest::Approx(-11.0).epsilon(1e-8));
  CHECK(s.real_eigs[0].multiplicity == 1);
  CHECK(s.real_eigs[1].value == doctest::Approx(-2.0).epsilon(1e-8));
  CHECK(s.real_eigs[1].multiplicity == 2);
}

TEST_CASE("eigenvalues of simple fixtures") {
  const Spectrum d = eigenvalues(DenseMatrix{{1, 0, 0}, {0, 2, 0}, {0, 0, 3}});
  REQUIRE(d.real_eigs.size() == 3);
  CHECK(d.real_eigs[0].value == doctest::Approx(1.0));
  CHECK(d.real_eigs[1].value == doctest::Approx(2.0));
  CHECK(d.real_eigs[2].value == doctest::Approx(3.0));

  const Spectrum r = eigenvalues(DenseMatrix{{0, -1}, {1, 0}});
  CHECK(r.real_eigs.empty());
  REQUIRE(r.complex_pairs.size() == 1);
  CHECK(r.complex_pairs[0].re == doctest::Approx(0.0));
  CHECK(r.complex_pairs[0].im == doctest::Approx(1.0));
  CHECK(r.complex_pairs[0].multiplicity == 1);

  const Spectrum j = eigenvalues(DenseMatrix{{2, 1}, {0, 2}});
  REQUIRE(j.real_eigs.size() == 1);
  CHECK(j.real_eigs[0].value == doctest::Approx(2.0));
  CHECK(j.real_eigs[0].multiplicity == 2);

  const Spectrum z = eigenvalues(DenseMatrix(3));
  REQUIRE(z.real_eigs.size() == 1);
  CHECK(z.real_eigs[0].value == 0.0);
  CHECK(z.real_eigs[0].multiplicity == 3);
}

TEST_CASE("eigenvalues of random non-normal fixtures") {
  std::mt19937_64 rng(424242);
  for (int rep = 0; rep < 15; ++rep) {
    testutil::SpectrumRequest req;
    req.reals = {{0.5 + 0.1 * rep, 1}, {3.0, 2}};
    req.pairs = {{1.0, 2.0, 1}};
    const DenseMatrix a = testutil::fixture_with_spectrum(req, rng);
    const Spectrum s = eigenvalues(a);
    REQUIRE(s.real_eigs.size() == 2);
    REQUIRE(s.complex_pairs.size() == 1);
    CHECK(s.real_eigs[0].value ==
          doctest::Approx(0.5 + 0.1 * rep).epsilon(1e-8));
    CHECK(s.real_eigs[1].value == doctest::Approx(3.0).epsilon(1e-8));
    CHECK(s.real_eigs[1].multiplicity == 2);
    CHECK(s.complex_pairs[0].re == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(s.complex_pairs[0].im == doctest::Approx(2.0).epsilon(1e-8));
  }
}

namespace {

// brute-force check of the defining inequality of the interval
void grid_check(const Spectrum& spec, const DomainInterval& d) {
  const double lo = d.bounded_below() ? d.lo : -10.0;
  const double hi = d.bounded_above() ? d.hi : 10.0;
  for (int i = 1; i < 100; ++i) {
    const double t = lo + (hi - lo) * i / 100.0;
    for (const auto& e : spec.real_eigs) {
      CHECK(1.0 - e.value * t > 0.0);
    }
  }
  auto violated = [&spec](double t) {
    for (const auto& e : spec.real_eigs) {
      if (1.0 - e.value * t <= 0.0) return true;
    }
    return false;
  };
  if (d.bounded_above()) CHECK(violated(d.hi + 1e-6));
  if (d.bounded_below()) CHECK(violated(d.lo - 1e-6));
}

}  // namespace

TEST_CASE("domain interval from spectra") {
  Spectrum pos;  // {12, 3, 3}
  pos.real_eigs = {{3.0, 2}, {12.0, 1}};
  const DomainInterval d1 = domain_interval(pos);
  CHECK_FALSE(d1.bounded_below());
  CHECK(d1.hi == doctest::Approx(1.0 / 12.0));
  grid_check(pos, d1);

  Spectrum neg;
  neg.real_eigs = {{-1.0, 1}};
  const DomainInterval d2 = domain_interval(neg);
  CHECK(d2.lo == doctest::Approx(-1.0));
  CHECK_FALSE(d2.bounded_above());
  grid_check(neg, d2);

  Spectrum mixed;
  mixed.real_eigs = {{-2.0, 1}, {5.0, 1}};
  const DomainInterval d3 = domain_interval(mixed);
  CHECK(d3.lo == doctest::Approx(-0.5));
  CHECK(d3.hi == doctest::Approx(0.2));
  grid_check(mixed, d3);

  Spectrum rot;  // no real eigenvalues: no constraint
  rot.complex_pairs = {{0.0, 1.0, 1}};
  const DomainInterval d4 = domain_interval(rot);
  CHECK_FALSE(d4.bounded_below());
  CHECK_FALSE(d4.bounded_above());

  Spectrum with_zero;
  with_zero.real_eigs = {{0.0, 2}, {4.0, 1}};
  const DomainInterval d5 = domain_interval(with_zero);
  CHECK_FALSE(d5.bounded_below());
  CHECK(d5.hi == doctest::Approx(0.25));

  CHECK(d1.contains(0.0));
  CHECK(d2.contains(0.0));
  CHECK(d3.contains(0.0));
}

TEST_CASE("reciprocal polynomial reverses coefficients") {
  AnnihilatingPolynomial p;
  p.k = 2;
  p.coeffs = {13.0, 22.0};
  const std::vector<double> q = reciprocal_polynomial(p);
  REQUIRE(q.size() == 3);
  CHECK(q[0] == 1.0);
  CHECK(q[1] == 13.0);
  CHECK(q[2] == 22.0);

  AnnihilatingPolynomial lin;
  lin.k = 1;
  lin.coeffs = {-1.0};
  const std::vector<double> ql = reciprocal_polynomial(lin);
  REQUIRE(ql.size() == 2);
  CHECK(ql[0] == 1.0);
  CHECK(ql[1] == -1.0);

  AnnihilatingPolynomial nil;  // lambda^2: degree collapses
  nil.k = 2;
  nil.coeffs = {0.0, 0.0};
  const std::vector<double> qn = reciprocal_polynomial(nil);
  REQUIRE(qn.size() == 1);
  CHECK(qn[0] == 1.0);
}

TEST_CASE("factor_reciprocal on the worked fixture") {
  Spectrum spec;
  spec.real_eigs = {{-11.0, 1}, {-2.0, 2}};
  const std::vector<double> q{1.0, 13.0, 22.0};
  const RealFactorization f = factor_reciprocal(q, spec);
  CHECK(f.constant == doctest::Approx(22.0).epsilon(1e-12));
  REQUIRE(f.linear.size() == 2);
  CHECK(f.quadratics.empty());
  CHECK(f.linear[0].root == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(f.linear[0].multiplicity == 1);
  CHECK(f.linear[1].root == doctest::Approx(-1.0 / 11.0).epsilon(1e-12));
  CHECK(f.linear[1].multiplicity == 1);

  const std::vector<double> back = f.expand();
  REQUIRE(back.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(back[i] == doctest::Approx(q[i]).epsilon(1e-12));
  }
}

TEST_CASE("factor_reciprocal simple cases") {
  Spectrum one;
  one.real_eigs = {{1.0, 1}};
  const RealFactorization f1 = factor_reciprocal(std::vector<double>{1.0, -1.0}, one);
  CHECK(f1.constant == doctest::Approx(-1.0));
  REQUIRE(f1.linear.size() == 1);
  CHECK(f1.linear[0].root == doctest::Approx(1.0));

  Spectrum rot;
  rot.complex_pairs = {{0.0, 1.0, 1}};
  const RealFactorization f2 =
      factor_reciprocal(std::vector<double>{1.0, 0.0, 1.0}, rot);
  CHECK(f2.constant == doctest::Approx(1.0));
  REQUIRE(f2.quadratics.size() == 1);
  CHECK(f2.quadratics[0].b == doctest::Approx(0.0));
  CHECK(f2.quadratics[0].c == doctest::Approx(1.0));

  Spectrum nil;
  nil.real_eigs = {{0.0, 2}};
  const RealFactorization f3 =
      factor_reciprocal(std::vector<double>{1.0}, nil);
  CHECK(f3.constant == doctest::Approx(1.0));
  CHECK(f3.linear.empty());
  CHECK(f3.quadratics.empty());
}

TEST_CASE("factor_reciprocal rejects an inconsistent spectrum") {
  Spectrum wrong;
  wrong.real_eigs = {{-3.0, 1}, {-5.0, 1}};
  CHECK_THROWS_AS(
      factor_reciprocal(std::vector<double>{1.0, 13.0, 22.0}, wrong),
      InconsistencyError);
}

TEST_CASE("factor_reciprocal reconstruction property") {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> uni(0.3, 4.0);
  for (int rep = 0; rep < 25; ++rep) {
    Spectrum spec;
    std::vector<double> q{1.0};
    const int nreal = 1 + static_cast<int>(rng() % 3);
    double last = 0.0;
    for (int i = 0; i < nreal; ++i) {
      last += uni(rng) * (rng() % 2 ? 1.0 : -1.0) + (i + 1);
      const int mult = 1 + static_cast<int>(rng() % 2);
      if (last == 0.0) last = 1.0;
      spec.real_eigs.push_back({last, mult});
      for (int m = 0; m < mult; ++m)
        q = putzer::poly::mul(q, std::vector<double>{1.0, -last});
    }
    if (rng() % 2) {
      const double re = uni(rng), im = uni(rng);
      spec.complex_pairs.push_back({re, im, 1});
      q = putzer::poly::mul(
          q, std::vector<double>{1.0, -2.0 * re, re * re + im * im});
    }
    const RealFactorization f = factor_reciprocal(q, spec);
    const std::vector<double> back = f.expand();
    REQUIRE(back.size() == q.size());
    double qmax = 0.0;
    for (double v : q) qmax = std::max(qmax, std::abs(v));
    for (std::size_t i = 0; i < q.size(); ++i) {
      CHECK(std::abs(back[i] - q[i]) <= 1e-8 * qmax);
    }
  }
}

TEST_CASE("minimal equals characteristic for distinct spectra") {
  std::mt19937_64 rng(1618);
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 3 + static_cast<int>(rng() % 4);
    testutil::SpectrumRequest req;
    for (int i = 0; i < n; ++i) {
      req.reals.push_back({0.5 + i + 0.3 * ((rep + i) % 3), 1});
    }
    const DenseMatrix a = testutil::fixture_with_spectrum(req, rng);
    const AnnihilatingPolynomial mi = minimal_polynomial(a);
    const AnnihilatingPolynomial ch = characteristic_polynomial(a);
    REQUIRE(mi.k == n);
    double scale = 1.0;
    for (double c : ch.coeffs) scale = std::max(scale, std::abs(c));
    for (int i = 0; i < n; ++i) {
      CHECK(std::abs(mi.coeffs[i] - ch.coeffs[i]) <= 1e-7 * scale);
    }
  }
}
