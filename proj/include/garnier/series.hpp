#pragma once

#include <complex>
#include <vector>

namespace garnier {

using cplx = std::complex<double>;

enum class Var { T1, S2 };

/// Truncated power series in (t1, s2), cut off at total degree `order`.
///
/// Coefficients are stored graded by total degree, so the table holds exactly
/// the entries c[j][k] with j + k <= order.
class BiSeries {
 public:
  BiSeries() : BiSeries(0) {}
  explicit BiSeries(int order);

  static BiSeries constant(cplx c, int order);
  static BiSeries monomial(int j, int k, cplx c, int order);

  int order() const { return order_; }

  /// Zero for (j, k) outside the table.
  cplx coeff(int j, int k) const;
  cplx& at(int j, int k);
  void set(int j, int k, cplx v) { at(j, k) = v; }

  /// Re-truncate to `order`; raising the order zero-fills.
  BiSeries truncated(int order) const;

  double max_abs() const;
  double max_abs_at_degree(int degree) const;
  bool all_finite() const;

  BiSeries operator-() const;
  BiSeries& operator+=(const BiSeries& rhs);
  BiSeries& operator-=(const BiSeries& rhs);
  BiSeries& operator*=(cplx s);

  static std::size_t index(int j, int k) {
    const auto d = static_cast<std::size_t>(j + k);
    return d * (d + 1) / 2 + static_cast<std::size_t>(k);
  }
  static std::size_t table_size(int order) { return index(0, order) + 1; }

 private:
  int order_;
  std::vector<cplx> c_;
};

BiSeries operator+(BiSeries a, const BiSeries& b);
BiSeries operator-(BiSeries a, const BiSeries& b);
BiSeries operator*(const BiSeries& a, const BiSeries& b);
BiSeries operator*(cplx s, BiSeries a);
BiSeries operator*(BiSeries a, cplx s);

/// Cauchy product truncated at total degree `order` (which may exceed the
/// orders of the inputs; missing input coefficients count as zero).
BiSeries multiply(const BiSeries& a, const BiSeries& b, int order);

/// Multiplicative inverse; throws ZeroConstantTerm when |c00| < tol.
BiSeries inverse(const BiSeries& a, double tol = 1e-14);

/// Formal partial derivative; the order drops by one (floored at zero).
BiSeries partial(const BiSeries& a, Var v);

/// Euler operator t1 d/dt1 or s2 d/ds2. Keeps the order.
BiSeries euler(const BiSeries& a, Var v);

cplx evaluate(const BiSeries& a, cplx t1, cplx s2);

bool approx_equal(const BiSeries& a, const BiSeries& b, double tol = 1e-10);

/// A BiSeries carrying an optional simple pole in t1 or s2, or an overall
/// t1 or s2 factor:
///   value = base * t1^{factor_t1} * s2^{factor_s2} / (t1^{pole_t1} * s2^{pole_s2}).
struct PoleSeries {
  BiSeries base;
  bool pole_t1 = false;
  bool pole_s2 = false;
  bool factor_s2 = false;
  bool factor_t1 = false;

  int t1_shift() const { return (factor_t1 ? 1 : 0) - (pole_t1 ? 1 : 0); }
  int s2_shift() const { return (factor_s2 ? 1 : 0) - (pole_s2 ? 1 : 0); }
};

/// Throws EvalAtPole when a pole variable is zero.
cplx evaluate(const PoleSeries& a, cplx t1, cplx s2);

/// Partial derivative of the represented function at a point.
cplx evaluate_partial(const PoleSeries& a, Var v, cplx t1, cplx s2);

/// Laurent-shifted truncated series with explicit precision tracking.
///
/// Represents t1^vt * s2^vs * base, where only coefficients of total absolute
/// degree <= prec are meaningful. Exact polynomials carry prec == kExact.
/// Products and sums propagate precision conservatively, which is what makes
/// it safe to push series with poles through the polynomial Hamiltonians.
class LaurentSeries {
 public:
  static constexpr int kExact = 1 << 28;

  LaurentSeries() : LaurentSeries(BiSeries(0), 0, 0, kExact) {}
  LaurentSeries(BiSeries base, int vt, int vs, int prec);

  /// Truncated series: known through the stored table.
  static LaurentSeries truncated(BiSeries base, int vt = 0, int vs = 0);
  static LaurentSeries exact(BiSeries poly, int vt = 0, int vs = 0);
  static LaurentSeries constant(cplx c);
  static LaurentSeries monomial(int j, int k, cplx c = 1.0);

  const BiSeries& base() const { return base_; }
  int vt() const { return vt_; }
  int vs() const { return vs_; }
  int prec() const { return prec_; }

  /// Coefficient of t1^j s2^k (absolute exponents).
  cplx coeff(int j, int k) const;
  bool known(int j, int k) const { return j + k <= prec_; }

  /// Multiply by the exact monomial t1^dt s2^ds.
  LaurentSeries shifted(int dt, int ds) const;
  LaurentSeries euler(Var v) const;

  LaurentSeries operator-() const;
  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator*(cplx s, const LaurentSeries& a);
  friend LaurentSeries operator*(const LaurentSeries& a, cplx s) { return s * a; }
  friend LaurentSeries operator+(const LaurentSeries& a, cplx c) { return a + constant(c); }
  friend LaurentSeries operator+(cplx c, const LaurentSeries& a) { return constant(c) + a; }
  friend LaurentSeries operator-(const LaurentSeries& a, cplx c) { return a - constant(c); }
  friend LaurentSeries operator-(cplx c, const LaurentSeries& a) { return constant(c) - a; }

 private:
  int top() const { return vt_ + vs_ + base_.order(); }

  BiSeries base_;
  int vt_;
  int vs_;
  int prec_;
};

}  // namespace garnier
