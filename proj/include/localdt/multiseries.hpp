#pragma once

// Multivariate carrier for stratification generating functions: series in
// s_1, s_2, ... with MotivicWeight coefficients, truncated by the weighted
// degree sum(i * gamma_i) <= bound.  The variable s_i tracks punctual
// clusters of length i, so a monomial exponent vector is a partition written
// multiplicatively.
//
// The plethystic Exp/Log here are implemented independently of the
// univariate ones in motivic.hpp; the two routes are compared in tests.

#include "localdt/motivic.hpp"

#include <map>
#include <string>
#include <vector>

namespace localdt {

// exponent vector (gamma_1, gamma_2, ...), trailing zeros trimmed
using ExpVec = std::vector<int>;

int weighted_degree(const ExpVec& g);

// orders by weighted degree, then lexicographically
struct ExpVecLess {
  bool operator()(const ExpVec& a, const ExpVec& b) const;
};

class MultiSeries {
public:
  explicit MultiSeries(int bound);
  static MultiSeries unit(int bound);

  int bound() const { return bound_; }
  MotivicWeight coeff(const ExpVec& g) const;
  void set(const ExpVec& g, MotivicWeight w);  // OutOfRange past the bound
  const std::map<ExpVec, MotivicWeight, ExpVecLess>& terms() const { return c_; }
  bool is_unital() const;

  MultiSeries& operator+=(const MultiSeries& o);
  MultiSeries& operator-=(const MultiSeries& o);
  friend MultiSeries operator+(MultiSeries a, const MultiSeries& b) { return a += b; }
  friend MultiSeries operator-(MultiSeries a, const MultiSeries& b) { return a -= b; }
  friend MultiSeries operator*(const MultiSeries& a, const MultiSeries& b);
  friend MultiSeries operator*(const MotivicWeight& w, const MultiSeries& f);
  friend bool operator==(const MultiSeries& a, const MultiSeries& b);
  friend bool operator!=(const MultiSeries& a, const MultiSeries& b) { return !(a == b); }

private:
  int bound_;
  std::map<ExpVec, MotivicWeight, ExpVecLess> c_;
};

MultiSeries multi_exp(const MultiSeries& f);  // NonzeroConstantTerm
MultiSeries multi_log(const MultiSeries& g);  // NotUnital

// substitute s_i := t^i
MotivicSeries collapse_to_t(const MultiSeries& f);

}  // namespace localdt
