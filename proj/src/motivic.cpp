#include "localdt/motivic.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace localdt {

void MotivicWeight::set(int half, mpz_class c) {
  if (c == 0) {
    t_.erase(half);
  } else {
    t_[half] = std::move(c);
  }
}

MotivicWeight MotivicWeight::half_power(int half, mpz_class c) {
  MotivicWeight w;
  w.set(half, std::move(c));
  return w;
}

MotivicWeight MotivicWeight::constant(mpz_class c) { return half_power(0, std::move(c)); }

bool MotivicWeight::is_one() const {
  return t_.size() == 1 && t_.begin()->first == 0 && t_.begin()->second == 1;
}

mpz_class MotivicWeight::coeff(int half) const {
  auto it = t_.find(half);
  return it == t_.end() ? mpz_class(0) : it->second;
}

int MotivicWeight::min_half() const {
  if (t_.empty()) throw OutOfRange("min_half of zero weight");
  return t_.begin()->first;
}

int MotivicWeight::max_half() const {
  if (t_.empty()) throw OutOfRange("max_half of zero weight");
  return t_.rbegin()->first;
}

MotivicWeight& MotivicWeight::operator+=(const MotivicWeight& o) {
  for (const auto& [a, c] : o.t_) {
    auto it = t_.find(a);
    if (it == t_.end()) {
      t_.emplace(a, c);
    } else {
      it->second += c;
      if (it->second == 0) t_.erase(it);
    }
  }
  return *this;
}

MotivicWeight& MotivicWeight::operator-=(const MotivicWeight& o) { return *this += -o; }

MotivicWeight MotivicWeight::operator-() const {
  MotivicWeight r;
  for (const auto& [a, c] : t_) r.t_.emplace(a, -c);
  return r;
}

MotivicWeight operator*(const MotivicWeight& a, const MotivicWeight& b) {
  MotivicWeight r;
  for (const auto& [ha, ca] : a.t_)
    for (const auto& [hb, cb] : b.t_) r += MotivicWeight::half_power(ha + hb, ca * cb);
  return r;
}

MotivicWeight& MotivicWeight::operator*=(const MotivicWeight& o) { return *this = *this * o; }

MotivicWeight operator*(const mpz_class& c, const MotivicWeight& w) {
  MotivicWeight r;
  for (const auto& [a, v] : w.t_) r += MotivicWeight::half_power(a, c * v);
  return r;
}

MotivicWeight MotivicWeight::adams(int k) const {
  if (k < 1) throw std::invalid_argument("adams: k must be >= 1");
  MotivicWeight r;
  for (const auto& [a, c] : t_) r.t_.emplace(a * k, c);
  return r;
}

mpq_class MotivicWeight::specialize(const mpq_class& v) const {
  const mpz_class& num = v.get_num();
  const mpz_class& den = v.get_den();  // canonical: den > 0
  mpq_class acc = 0;
  for (const auto& [a, c] : t_) {
    mpz_class pn, pd;
    if (a >= 0) {
      mpz_pow_ui(pn.get_mpz_t(), num.get_mpz_t(), a);
      mpz_pow_ui(pd.get_mpz_t(), den.get_mpz_t(), a);
    } else {
      if (num == 0) throw DivisionByZero("specialize at 0 with negative exponent");
      mpz_pow_ui(pn.get_mpz_t(), den.get_mpz_t(), -a);
      mpz_pow_ui(pd.get_mpz_t(), num.get_mpz_t(), -a);
    }
    mpq_class p(pn, pd);
    p.canonicalize();
    acc += c * p;
  }
  return acc;
}

namespace {

// single monomial c L^{half/2}, half even or with braces for fractions and
// negatives; omits the coefficient 1
std::string monomial_str(int half, const mpz_class& c) {
  assert(c != 0);
  std::string coeff;
  if (c == -1) {
    coeff = "-";
  } else if (c != 1) {
    coeff = c.get_str();
  }
  if (half == 0) return c.get_str();
  std::string var;
  if (half == 2) {
    var = "L";
  } else if (half % 2 == 0) {
    int e = half / 2;
    var = e > 1 ? "L^" + std::to_string(e) : "L^{" + std::to_string(e) + "}";
  } else {
    var = "L^{" + std::to_string(half) + "/2}";
  }
  return coeff + var;
}

std::string joined_descending(const std::map<int, mpz_class>& terms) {
  std::string out;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    std::string m = monomial_str(it->first, it->second);
    if (out.empty()) {
      out = m;
    } else if (m[0] == '-') {
      out += "-" + m.substr(1);
    } else {
      out += "+" + m;
    }
  }
  return out;
}

}  // namespace

std::string MotivicWeight::str() const {
  if (t_.empty()) return "0";
  if (t_.size() == 1) return monomial_str(t_.begin()->first, t_.begin()->second);
  bool all_even = true, all_odd = true;
  for (const auto& [a, c] : t_) {
    (void)c;
    (a % 2 == 0 ? all_odd : all_even) = false;
  }
  if (all_even) return joined_descending(t_);
  if (all_odd) {
    // factor out the lowest half power; the rest is a Laurent polynomial in L
    int a0 = t_.begin()->first;
    std::map<int, mpz_class> shifted;
    for (const auto& [a, c] : t_) shifted.emplace(a - a0, c);
    return monomial_str(a0, 1) + "(" + joined_descending(shifted) + ")";
  }
  return joined_descending(t_);
}

MotivicSeries::MotivicSeries(int order) : order_(order) {
  if (order < 0) throw std::invalid_argument("series order must be >= 0");
  c_.resize(order + 1);
}

MotivicSeries MotivicSeries::unit(int order) {
  MotivicSeries s(order);
  s.c_[0] = MotivicWeight::one();
  return s;
}

MotivicSeries MotivicSeries::monomial(const MotivicWeight& w, int n, int order) {
  MotivicSeries s(order);
  s.set(n, w);
  return s;
}

const MotivicWeight& MotivicSeries::operator[](int n) const {
  if (n < 0 || n > order_) throw OutOfRange("series coefficient index " + std::to_string(n));
  return c_[n];
}

void MotivicSeries::set(int n, MotivicWeight w) {
  if (n < 0 || n > order_) throw OutOfRange("series coefficient index " + std::to_string(n));
  c_[n] = std::move(w);
}

bool MotivicSeries::is_unital() const { return c_[0].is_one(); }

bool MotivicSeries::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const MotivicWeight& w) { return w.is_zero(); });
}

MotivicSeries& MotivicSeries::operator+=(const MotivicSeries& o) {
  if (o.order_ < order_) {
    order_ = o.order_;
    c_.resize(order_ + 1);
  }
  for (int n = 0; n <= order_; ++n) c_[n] += o.c_[n];
  return *this;
}

MotivicSeries& MotivicSeries::operator-=(const MotivicSeries& o) {
  if (o.order_ < order_) {
    order_ = o.order_;
    c_.resize(order_ + 1);
  }
  for (int n = 0; n <= order_; ++n) c_[n] -= o.c_[n];
  return *this;
}

MotivicSeries operator*(const MotivicSeries& a, const MotivicSeries& b) {
  MotivicSeries r(std::min(a.order_, b.order_));
  for (int i = 0; i <= r.order_ && i <= a.order_; ++i) {
    if (a.c_[i].is_zero()) continue;
    for (int j = 0; i + j <= r.order_ && j <= b.order_; ++j) {
      if (b.c_[j].is_zero()) continue;
      r.c_[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return r;
}

MotivicSeries operator*(const MotivicWeight& w, const MotivicSeries& f) {
  MotivicSeries r(f.order_);
  for (int n = 0; n <= f.order_; ++n) r.c_[n] = w * f.c_[n];
  return r;
}

bool operator==(const MotivicSeries& a, const MotivicSeries& b) {
  return a.order_ == b.order_ && a.c_ == b.c_;
}

MotivicSeries MotivicSeries::truncate(int order) const {
  MotivicSeries r(order);
  for (int n = 0; n <= std::min(order, order_); ++n) r.c_[n] = c_[n];
  return r;
}

std::string MotivicSeries::str(const std::string& var) const {
  std::string out;
  for (int n = 0; n <= order_; ++n) {
    if (c_[n].is_zero()) continue;
    std::string w = c_[n].str();
    // parenthesize sums that are not already factored into a single product
    bool needs_paren = false;
    for (size_t i = 1; i < w.size(); ++i) {
      if ((w[i] == '+' || w[i] == '-') && w[i - 1] != '^' && w[i - 1] != '{') {
        needs_paren = true;
        break;
      }
    }
    if (w.find('(') != std::string::npos) needs_paren = false;
    if (needs_paren) w = "(" + w + ")";
    std::string term = w;
    if (n == 1) {
      term += " " + var;
    } else if (n > 1) {
      term += " " + var + "^" + std::to_string(n);
    }
    if (n > 0 && w == "1") term = term.substr(2);  // drop the unit coefficient
    out += out.empty() ? term : " + " + term;
  }
  return out.empty() ? "0" : out;
}

MotivicSeries adams(int k, const MotivicSeries& f) {
  if (k < 1) throw std::invalid_argument("adams: k must be >= 1");
  MotivicSeries r(f.order());
  for (int n = 0; n * k <= f.order(); ++n) r.set(n * k, f[n].adams(k));
  return r;
}

MotivicSeries series_inverse(const MotivicSeries& g) {
  if (!g.is_unital()) throw NotUnital("series_inverse requires constant coefficient 1");
  const int N = g.order();
  MotivicSeries r = MotivicSeries::unit(N);
  for (int n = 1; n <= N; ++n) {
    MotivicWeight acc;
    for (int k = 1; k <= n; ++k) acc += g[k] * r[n - k];
    r.set(n, -acc);
  }
  return r;
}

namespace {

mpz_class binom_mpz(const mpz_class& n, unsigned long k) {
  mpz_class r;
  mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
  return r;
}

// (1 - L^{a/2} t^deg)^{-c} truncated at order N
MotivicSeries geometric_factor(int a, int deg, const mpz_class& c, int N) {
  MotivicSeries fac = MotivicSeries::unit(N);
  if (c > 0) {
    for (int j = 1; j * deg <= N; ++j)
      fac.set(j * deg, MotivicWeight::half_power(a * j, binom_mpz(c - 1 + j, j)));
  } else {
    mpz_class m = -c;
    for (int j = 1; j * deg <= N && j <= m; ++j) {
      mpz_class b = binom_mpz(m, j);
      if (j % 2 == 1) b = -b;
      fac.set(j * deg, MotivicWeight::half_power(a * j, b));
    }
  }
  return fac;
}

}  // namespace

MotivicSeries plethystic_exp(const MotivicSeries& f) {
  if (!f[0].is_zero()) throw NonzeroConstantTerm("Exp needs a zero constant term");
  const int N = f.order();
  MotivicSeries res = MotivicSeries::unit(N);
  for (int n = 1; n <= N; ++n)
    for (const auto& [a, c] : f[n].terms()) res = res * geometric_factor(a, n, c, N);
  return res;
}

MotivicSeries plethystic_log(const MotivicSeries& g) {
  if (!g.is_unital()) throw NotUnital("Log requires constant coefficient 1");
  const int N = g.order();
  MotivicSeries res(N);
  MotivicSeries work = g;
  for (int n = 1; n <= N; ++n) {
    const MotivicWeight layer = work[n];  // copy: the loop below edits work
    if (layer.is_zero()) continue;
    res.set(n, layer);
    for (const auto& [a, c] : layer.terms())
      work = work * geometric_factor(a, n, -c, N);  // divide the factor out
  }
  assert(work == MotivicSeries::unit(N));
  return res;
}

MotivicSeries power_pow(const MotivicSeries& a, const MotivicWeight& x) {
  return plethystic_exp(x * plethystic_log(a));
}

std::vector<mpq_class> specialize(const MotivicSeries& f, const mpq_class& v) {
  std::vector<mpq_class> out(f.order() + 1);
  for (int n = 0; n <= f.order(); ++n) out[n] = f[n].specialize(v);
  return out;
}

}  // namespace localdt
