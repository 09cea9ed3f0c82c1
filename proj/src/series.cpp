#include "garnier/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "garnier/error.hpp"

namespace garnier {

namespace {

void require_finite(const BiSeries& s, const char* op) {
  if (!s.all_finite()) {
    throw Error(ErrorKind::NumericOverflow, std::string("non-finite coefficient in ") + op);
  }
}

int sat_add(int a, int b) {
  const long long r = static_cast<long long>(a) + b;
  return static_cast<int>(std::clamp<long long>(r, -LaurentSeries::kExact, LaurentSeries::kExact));
}

}  // namespace

BiSeries::BiSeries(int order) : order_(order) {
  if (order < 0) throw Error(ErrorKind::InvalidArgument, "series order must be non-negative");
  c_.assign(table_size(order), cplx(0.0, 0.0));
}

BiSeries BiSeries::constant(cplx c, int order) {
  BiSeries s(order);
  s.c_[0] = c;
  return s;
}

BiSeries BiSeries::monomial(int j, int k, cplx c, int order) {
  BiSeries s(order);
  if (j + k <= order) s.at(j, k) = c;
  return s;
}

cplx BiSeries::coeff(int j, int k) const {
  if (j < 0 || k < 0 || j + k > order_) return {0.0, 0.0};
  return c_[index(j, k)];
}

cplx& BiSeries::at(int j, int k) {
  if (j < 0 || k < 0 || j + k > order_) {
    throw Error(ErrorKind::InvalidArgument,
                "coefficient (" + std::to_string(j) + "," + std::to_string(k) +
                    ") outside order " + std::to_string(order_));
  }
  return c_[index(j, k)];
}

BiSeries BiSeries::truncated(int order) const {
  BiSeries r(order);
  const auto n = std::min(r.c_.size(), c_.size());
  std::copy_n(c_.begin(), n, r.c_.begin());
  return r;
}

double BiSeries::max_abs() const {
  double m = 0.0;
  for (const auto& v : c_) m = std::max(m, std::abs(v));
  return m;
}

double BiSeries::max_abs_at_degree(int degree) const {
  double m = 0.0;
  if (degree < 0 || degree > order_) return m;
  for (int k = 0; k <= degree; ++k) m = std::max(m, std::abs(c_[index(degree - k, k)]));
  return m;
}

bool BiSeries::all_finite() const {
  return std::all_of(c_.begin(), c_.end(),
                     [](const cplx& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
}

BiSeries BiSeries::operator-() const {
  BiSeries r(*this);
  for (auto& v : r.c_) v = -v;
  return r;
}

BiSeries& BiSeries::operator+=(const BiSeries& rhs) {
  if (rhs.order_ < order_) *this = truncated(rhs.order_);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += rhs.c_[i];
  return *this;
}

BiSeries& BiSeries::operator-=(const BiSeries& rhs) {
  if (rhs.order_ < order_) *this = truncated(rhs.order_);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= rhs.c_[i];
  return *this;
}

BiSeries& BiSeries::operator*=(cplx s) {
  for (auto& v : c_) v *= s;
  return *this;
}

BiSeries operator+(BiSeries a, const BiSeries& b) { return a += b; }
BiSeries operator-(BiSeries a, const BiSeries& b) { return a -= b; }
BiSeries operator*(cplx s, BiSeries a) { return a *= s; }
BiSeries operator*(BiSeries a, cplx s) { return a *= s; }

BiSeries operator*(const BiSeries& a, const BiSeries& b) {
  return multiply(a, b, std::min(a.order(), b.order()));
}

BiSeries multiply(const BiSeries& a, const BiSeries& b, int order) {
  BiSeries r(order);
  const int na = std::min(a.order(), order);
  for (int da = 0; da <= na; ++da) {
    const int nb = std::min(b.order(), order - da);
    for (int ka = 0; ka <= da; ++ka) {
      const cplx ca = a.coeff(da - ka, ka);
      if (ca == cplx(0.0, 0.0)) continue;
      for (int db = 0; db <= nb; ++db) {
        for (int kb = 0; kb <= db; ++kb) {
          r.at(da - ka + db - kb, ka + kb) += ca * b.coeff(db - kb, kb);
        }
      }
    }
  }
  require_finite(r, "multiply");
  return r;
}

BiSeries inverse(const BiSeries& a, double tol) {
  const cplx c00 = a.coeff(0, 0);
  if (std::abs(c00) < tol) {
    throw Error(ErrorKind::ZeroConstantTerm, "series inverse needs a nonzero constant term");
  }
  // b = (1/c00) * sum_n (-(a/c00 - 1))^n, built degree by degree:
  // b_jk = -(1/c00) * sum_{(p,q) != (0,0)} a_pq b_{j-p,k-q}.
  const int n = a.order();
  BiSeries b(n);
  b.at(0, 0) = 1.0 / c00;
  for (int d = 1; d <= n; ++d) {
    for (int k = 0; k <= d; ++k) {
      const int j = d - k;
      cplx acc = 0.0;
      for (int p = 0; p <= j; ++p) {
        for (int q = 0; q <= k; ++q) {
          if (p == 0 && q == 0) continue;
          acc += a.coeff(p, q) * b.coeff(j - p, k - q);
        }
      }
      b.at(j, k) = -acc / c00;
    }
  }
  require_finite(b, "inverse");
  return b;
}

BiSeries partial(const BiSeries& a, Var v) {
  BiSeries r(std::max(0, a.order() - 1));
  for (int d = 1; d <= a.order(); ++d) {
    for (int k = 0; k <= d; ++k) {
      const int j = d - k;
      if (v == Var::T1 && j > 0) r.at(j - 1, k) = static_cast<double>(j) * a.coeff(j, k);
      if (v == Var::S2 && k > 0) r.at(j, k - 1) = static_cast<double>(k) * a.coeff(j, k);
    }
  }
  return r;
}

BiSeries euler(const BiSeries& a, Var v) {
  BiSeries r(a.order());
  for (int d = 0; d <= a.order(); ++d) {
    for (int k = 0; k <= d; ++k) {
      const int j = d - k;
      r.at(j, k) = static_cast<double>(v == Var::T1 ? j : k) * a.coeff(j, k);
    }
  }
  return r;
}

cplx evaluate(const BiSeries& a, cplx t1, cplx s2) {
  // Horner in t1 over rows that are themselves Horner polynomials in s2.
  const int n = a.order();
  cplx acc = 0.0;
  for (int j = n; j >= 0; --j) {
    cplx row = 0.0;
    for (int k = n - j; k >= 0; --k) row = row * s2 + a.coeff(j, k);
    acc = acc * t1 + row;
  }
  return acc;
}

bool approx_equal(const BiSeries& a, const BiSeries& b, double tol) {
  if (a.order() != b.order()) return false;
  for (int d = 0; d <= a.order(); ++d) {
    for (int k = 0; k <= d; ++k) {
      if (std::abs(a.coeff(d - k, k) - b.coeff(d - k, k)) > tol) return false;
    }
  }
  return true;
}

cplx evaluate(const PoleSeries& a, cplx t1, cplx s2) {
  if (a.pole_t1 && t1 == cplx(0.0, 0.0)) throw Error(ErrorKind::EvalAtPole, "t1 = 0 at a t1 pole");
  if (a.pole_s2 && s2 == cplx(0.0, 0.0)) throw Error(ErrorKind::EvalAtPole, "s2 = 0 at an s2 pole");
  cplx v = evaluate(a.base, t1, s2);
  if (a.pole_t1) v /= t1;
  if (a.pole_s2) v /= s2;
  if (a.factor_s2) v *= s2;
  if (a.factor_t1) v *= t1;
  return v;
}

cplx evaluate_partial(const PoleSeries& a, Var v, cplx t1, cplx s2) {
  if (a.pole_t1 && t1 == cplx(0.0, 0.0)) throw Error(ErrorKind::EvalAtPole, "t1 = 0 at a t1 pole");
  if (a.pole_s2 && s2 == cplx(0.0, 0.0)) throw Error(ErrorKind::EvalAtPole, "s2 = 0 at an s2 pole");
  // value = base * t1^m * s2^n
  const int m = a.t1_shift(), n = a.s2_shift();
  const cplx b = evaluate(a.base, t1, s2);
  const cplx db = evaluate(partial(a.base, v), t1, s2);
  auto ipow = [](cplx x, int e) { return e == 0 ? cplx(1.0) : e > 0 ? x : 1.0 / x; };
  const cplx mono = ipow(t1, m) * ipow(s2, n);
  if (v == Var::T1) return (db + (m != 0 ? double(m) * b / t1 : 0.0)) * mono;
  return (db + (n != 0 ? double(n) * b / s2 : 0.0)) * mono;
}

// ---------------------------------------------------------------------------

LaurentSeries::LaurentSeries(BiSeries base, int vt, int vs, int prec)
    : base_(std::move(base)), vt_(vt), vs_(vs), prec_(prec) {}

LaurentSeries LaurentSeries::truncated(BiSeries base, int vt, int vs) {
  const int prec = vt + vs + base.order();
  return {std::move(base), vt, vs, prec};
}

LaurentSeries LaurentSeries::exact(BiSeries poly, int vt, int vs) {
  return {std::move(poly), vt, vs, kExact};
}

LaurentSeries LaurentSeries::constant(cplx c) { return exact(BiSeries::constant(c, 0)); }

LaurentSeries LaurentSeries::monomial(int j, int k, cplx c) {
  return exact(BiSeries::constant(c, 0), j, k);
}

cplx LaurentSeries::coeff(int j, int k) const { return base_.coeff(j - vt_, k - vs_); }

LaurentSeries LaurentSeries::shifted(int dt, int ds) const {
  return {base_, vt_ + dt, vs_ + ds, sat_add(prec_, dt + ds)};
}

LaurentSeries LaurentSeries::euler(Var v) const {
  BiSeries r = garnier::euler(base_, v);
  r += static_cast<double>(v == Var::T1 ? vt_ : vs_) * base_;
  return {std::move(r), vt_, vs_, prec_};
}

LaurentSeries LaurentSeries::operator-() const { return {-base_, vt_, vs_, prec_}; }

LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
  const int vt = std::min(a.vt_, b.vt_);
  const int vs = std::min(a.vs_, b.vs_);
  const int prec = std::min(a.prec_, b.prec_);
  const int top = std::min(prec, std::max(a.top(), b.top()));
  const int order = std::max(0, top - vt - vs);
  BiSeries r(order);
  for (const LaurentSeries* s : {&a, &b}) {
    const int dt = s->vt_ - vt;
    const int ds = s->vs_ - vs;
    for (int d = 0; d <= s->base_.order(); ++d) {
      if (d + dt + ds > order) break;
      for (int k = 0; k <= d; ++k) r.at(d - k + dt, k + ds) += s->base_.coeff(d - k, k);
    }
  }
  return {std::move(r), vt, vs, prec};
}

LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a + (-b); }

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
  const int vt = a.vt_ + b.vt_;
  const int vs = a.vs_ + b.vs_;
  const int prec = std::min(sat_add(a.prec_, b.vt_ + b.vs_), sat_add(b.prec_, a.vt_ + a.vs_));
  const int top = std::min(prec, a.top() + b.top());
  const int order = std::max(0, top - vt - vs);
  return {multiply(a.base_, b.base_, order), vt, vs, prec};
}

LaurentSeries operator*(cplx s, const LaurentSeries& a) {
  return {s * a.base_, a.vt_, a.vs_, a.prec_};
}

}  // namespace garnier
