#include "localdt/multiseries.hpp"

#include <cassert>

namespace localdt {

namespace {

void trim(ExpVec& g) {
  while (!g.empty() && g.back() == 0) g.pop_back();
}

ExpVec trimmed(ExpVec g) {
  trim(g);
  return g;
}

ExpVec sum(const ExpVec& a, const ExpVec& b) {
  ExpVec r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

ExpVec scaled(const ExpVec& a, int k) {
  ExpVec r = a;
  for (int& x : r) x *= k;
  return r;
}

mpz_class binom_mpz(const mpz_class& n, unsigned long k) {
  mpz_class r;
  mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
  return r;
}

}  // namespace

int weighted_degree(const ExpVec& g) {
  int d = 0;
  for (size_t i = 0; i < g.size(); ++i) d += static_cast<int>(i + 1) * g[i];
  return d;
}

bool ExpVecLess::operator()(const ExpVec& a, const ExpVec& b) const {
  int da = weighted_degree(a), db = weighted_degree(b);
  if (da != db) return da < db;
  return a < b;
}

MultiSeries::MultiSeries(int bound) : bound_(bound) {
  if (bound < 0) throw std::invalid_argument("multiseries bound must be >= 0");
}

MultiSeries MultiSeries::unit(int bound) {
  MultiSeries s(bound);
  s.c_.emplace(ExpVec{}, MotivicWeight::one());
  return s;
}

MotivicWeight MultiSeries::coeff(const ExpVec& g) const {
  auto it = c_.find(trimmed(g));
  return it == c_.end() ? MotivicWeight::zero() : it->second;
}

void MultiSeries::set(const ExpVec& g, MotivicWeight w) {
  ExpVec key = trimmed(g);
  for (int x : key)
    if (x < 0) throw std::invalid_argument("negative exponent in multiseries monomial");
  if (weighted_degree(key) > bound_) throw OutOfRange("monomial beyond multiseries bound");
  if (w.is_zero()) {
    c_.erase(key);
  } else {
    c_[key] = std::move(w);
  }
}

bool MultiSeries::is_unital() const {
  auto it = c_.find(ExpVec{});
  return it != c_.end() && it->second.is_one();
}

MultiSeries& MultiSeries::operator+=(const MultiSeries& o) {
  bound_ = std::min(bound_, o.bound_);
  std::erase_if(c_, [&](const auto& kv) { return weighted_degree(kv.first) > bound_; });
  for (const auto& [g, w] : o.c_) {
    if (weighted_degree(g) > bound_) continue;
    auto it = c_.find(g);
    if (it == c_.end()) {
      c_.emplace(g, w);
    } else {
      it->second += w;
      if (it->second.is_zero()) c_.erase(it);
    }
  }
  return *this;
}

MultiSeries& MultiSeries::operator-=(const MultiSeries& o) {
  MultiSeries neg = MotivicWeight::constant(-1) * o;
  return *this += neg;
}

MultiSeries operator*(const MultiSeries& a, const MultiSeries& b) {
  MultiSeries r(std::min(a.bound_, b.bound_));
  for (const auto& [ga, wa] : a.c_) {
    int da = weighted_degree(ga);
    if (da > r.bound_) continue;
    for (const auto& [gb, wb] : b.c_) {
      if (da + weighted_degree(gb) > r.bound_) continue;
      ExpVec g = sum(ga, gb);
      MotivicWeight w = wa * wb;
      auto it = r.c_.find(g);
      if (it == r.c_.end()) {
        if (!w.is_zero()) r.c_.emplace(std::move(g), std::move(w));
      } else {
        it->second += w;
        if (it->second.is_zero()) r.c_.erase(it);
      }
    }
  }
  return r;
}

MultiSeries operator*(const MotivicWeight& w, const MultiSeries& f) {
  MultiSeries r(f.bound_);
  for (const auto& [g, v] : f.c_) {
    MotivicWeight p = w * v;
    if (!p.is_zero()) r.c_.emplace(g, std::move(p));
  }
  return r;
}

bool operator==(const MultiSeries& a, const MultiSeries& b) {
  return a.bound_ == b.bound_ && a.c_ == b.c_;
}

namespace {

// (1 - L^{a/2} s^g)^{-c} truncated by the weighted bound
MultiSeries geometric_factor(const ExpVec& g, int a, const mpz_class& c, int bound) {
  MultiSeries fac = MultiSeries::unit(bound);
  int d = weighted_degree(g);
  assert(d > 0);
  if (c > 0) {
    for (int j = 1; j * d <= bound; ++j)
      fac.set(scaled(g, j), MotivicWeight::half_power(a * j, binom_mpz(c - 1 + j, j)));
  } else {
    mpz_class m = -c;
    for (int j = 1; j * d <= bound && j <= m; ++j) {
      mpz_class b = binom_mpz(m, j);
      if (j % 2 == 1) b = -b;
      fac.set(scaled(g, j), MotivicWeight::half_power(a * j, b));
    }
  }
  return fac;
}

}  // namespace

MultiSeries multi_exp(const MultiSeries& f) {
  if (!f.coeff(ExpVec{}).is_zero()) throw NonzeroConstantTerm("multi_exp needs zero constant term");
  const int B = f.bound();
  MultiSeries res = MultiSeries::unit(B);
  for (const auto& [g, w] : f.terms())
    for (const auto& [a, c] : w.terms()) res = res * geometric_factor(g, a, c, B);
  return res;
}

MultiSeries multi_log(const MultiSeries& g) {
  if (!g.is_unital()) throw NotUnital("multi_log requires constant coefficient 1");
  const int B = g.bound();
  MultiSeries res(B);
  MultiSeries work = g;
  for (int d = 1; d <= B; ++d) {
    // monomials of weighted degree exactly d; copied since work changes below
    std::vector<std::pair<ExpVec, MotivicWeight>> layer;
    for (const auto& [gv, w] : work.terms())
      if (weighted_degree(gv) == d) layer.emplace_back(gv, w);
    for (const auto& [gv, w] : layer) {
      res.set(gv, w);
      for (const auto& [a, c] : w.terms()) work = work * geometric_factor(gv, a, -c, B);
    }
  }
  assert(work == MultiSeries::unit(B));
  return res;
}

MotivicSeries collapse_to_t(const MultiSeries& f) {
  MotivicSeries out(f.bound());
  for (const auto& [g, w] : f.terms()) {
    int d = weighted_degree(g);
    out.set(d, out[d] + w);
  }
  return out;
}

}  // namespace localdt
