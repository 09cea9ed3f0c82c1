#include <random>

#include "doctest.h"
#include "garnier/error.hpp"
#include "garnier/series.hpp"

using namespace garnier;

namespace {

BiSeries random_series(std::mt19937_64& rng, int order, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  BiSeries s(order);
  for (int d = 0; d <= order; ++d)
    for (int k = 0; k <= d; ++k) s.at(d - k, k) = cplx(u(rng), u(rng));
  return s;
}

double max_diff(const BiSeries& a, const BiSeries& b) { return (a - b).max_abs(); }

}  // namespace

TEST_CASE("polynomial product and identities") {
  const int N = 3;
  const BiSeries one = BiSeries::constant(1.0, N);
  const BiSeries t1 = BiSeries::monomial(1, 0, 1.0, N);
  const BiSeries s2 = BiSeries::monomial(0, 1, 1.0, N);
  const BiSeries prod = (one + t1) * (one + s2);
  CHECK(prod.coeff(0, 0) == cplx(1.0));
  CHECK(prod.coeff(1, 0) == cplx(1.0));
  CHECK(prod.coeff(0, 1) == cplx(1.0));
  CHECK(prod.coeff(1, 1) == cplx(1.0));
  CHECK(prod.coeff(2, 0) == cplx(0.0));

  std::mt19937_64 rng(1);
  const BiSeries a = random_series(rng, 5);
  CHECK(approx_equal(a + BiSeries(5), a, 0.0));

  const BiSeries ts = BiSeries::monomial(1, 1, 1.0, 4);
  const BiSeries two = 2.0 * ts;
  CHECK(two.coeff(1, 1) == cplx(2.0));
  CHECK(two.max_abs() == doctest::Approx(2.0));
}

TEST_CASE("mixed orders truncate to the smaller") {
  std::mt19937_64 rng(2);
  const BiSeries a = random_series(rng, 6), b = random_series(rng, 3);
  CHECK((a + b).order() == 3);
  CHECK((a * b).order() == 3);
  CHECK(multiply(a, b, 8).order() == 8);
}

TEST_CASE("inverse") {
  CHECK(approx_equal(inverse(BiSeries::constant(1.0, 4)), BiSeries::constant(1.0, 4), 0.0));

  BiSeries a = BiSeries::constant(1.0, 2);
  a.at(1, 0) = 1.0;
  const BiSeries b = inverse(a);
  CHECK(b.coeff(0, 0) == cplx(1.0));
  CHECK(b.coeff(1, 0) == cplx(-1.0));
  CHECK(b.coeff(2, 0) == cplx(1.0));
  CHECK(b.coeff(0, 1) == cplx(0.0));

  const BiSeries t1 = BiSeries::monomial(1, 0, 1.0, 3);
  try {
    inverse(t1);
    FAIL("expected ZeroConstantTerm");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroConstantTerm);
  }
}

TEST_CASE("ring laws and inverse round trip on random series") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const int N = 1 + trial % 8;
    const BiSeries a = random_series(rng, N), b = random_series(rng, N), c = random_series(rng, N);
    CHECK(max_diff((a * b) * c, a * (b * c)) < 1e-12);
    CHECK(max_diff(a * (b + c), a * b + a * c) < 1e-12);

    BiSeries d = random_series(rng, N, 0.5);
    d.at(0, 0) = cplx(1.0, 0.3);
    const BiSeries r = d * inverse(d) - BiSeries::constant(1.0, N);
    CHECK(r.max_abs() < 1e-12);
  }
  BiSeries tiny = BiSeries::constant(1e-3, 6);
  tiny.at(2, 1) = 1e-3;
  tiny.at(0, 1) = 2e-3;
  CHECK((tiny * inverse(tiny) - BiSeries::constant(1.0, 6)).max_abs() < 1e-12);
}

TEST_CASE("partial derivatives") {
  const BiSeries p = BiSeries::monomial(2, 1, 1.0, 4);
  const BiSeries d = partial(p, Var::T1);
  CHECK(d.order() == 3);
  CHECK(d.coeff(1, 1) == cplx(2.0));
  CHECK(d.max_abs() == doctest::Approx(2.0));
  CHECK(partial(BiSeries::constant(3.0, 4), Var::S2).max_abs() == 0.0);

  std::mt19937_64 rng(4);
  const BiSeries a = random_series(rng, 7);
  CHECK(approx_equal(partial(partial(a, Var::T1), Var::S2), partial(partial(a, Var::S2), Var::T1), 0.0));

  const BiSeries e = euler(p, Var::T1);
  CHECK(e.coeff(2, 1) == cplx(2.0));
}

TEST_CASE("evaluation") {
  BiSeries a = BiSeries::constant(1.0, 2);
  a.at(1, 1) = 1.0;
  CHECK(std::abs(evaluate(a, 0.1, 0.2) - 1.02) < 1e-15);

  PoleSeries p{BiSeries::constant(1.0, 0), true, false, false};
  CHECK(std::abs(evaluate(p, 0.5, 0.3) - 2.0) < 1e-15);
  CHECK_THROWS_AS(evaluate(p, 0.0, 0.3), Error);
  try {
    evaluate(p, 0.0, 0.3);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EvalAtPole);
  }
  PoleSeries f{BiSeries::constant(2.0, 0), false, false, true};
  CHECK(std::abs(evaluate(f, 0.5, 0.25) - 0.5) < 1e-15);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const BiSeries x = random_series(rng, 6), y = random_series(rng, 6);
    const cplx t(0.007, -0.003), s(-0.004, 0.009);
    CHECK(std::abs(evaluate(x * y, t, s) - evaluate(x, t, s) * evaluate(y, t, s)) < 1e-10);
  }
}

TEST_CASE("laurent arithmetic tracks precision") {
  // (1/t1 + 1 + t1 + O(t1^2)) * t1 = 1 + t1 + t1^2 + O(t1^3)
  BiSeries b(2);
  b.at(0, 0) = 1.0;
  b.at(1, 0) = 1.0;
  b.at(2, 0) = 1.0;
  const LaurentSeries q = LaurentSeries::truncated(b, -1, 0);
  CHECK(q.prec() == 1);
  const LaurentSeries r = q * LaurentSeries::monomial(1, 0);
  CHECK(r.prec() == 2);
  CHECK(r.coeff(0, 0) == cplx(1.0));
  CHECK(r.coeff(2, 0) == cplx(1.0));

  // squaring a pole series loses one order of precision
  const LaurentSeries sq = q * q;
  CHECK(sq.vt() == -2);
  CHECK(sq.prec() == 0);
  CHECK(sq.coeff(-2, 0) == cplx(1.0));
  CHECK(sq.coeff(-1, 0) == cplx(2.0));
  CHECK(sq.coeff(0, 0) == cplx(3.0));

  const LaurentSeries th = q.euler(Var::T1);
  CHECK(th.coeff(-1, 0) == cplx(-1.0));
  CHECK(th.coeff(0, 0) == cplx(0.0));
  CHECK(th.coeff(1, 0) == cplx(1.0));

  const LaurentSeries sum = q + LaurentSeries::constant(2.0);
  CHECK(sum.coeff(0, 0) == cplx(3.0));
  CHECK(sum.prec() == 1);
}
