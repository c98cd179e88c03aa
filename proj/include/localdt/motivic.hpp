#pragma once

// Ring Z[L^{1/2}, L^{-1/2}] of motivic weights and truncated power series
// over it, with the plethystic operations (Adams, Exp, Log, powers).
//
// A weight is stored as a map half-exponent -> coefficient, where the key a
// stands for L^{a/2}.  Canonical form: no zero coefficients.  All arithmetic
// is exact (GMP integers / rationals).

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace localdt {

struct NotUnital : std::domain_error {
  explicit NotUnital(const std::string& what) : std::domain_error(what) {}
};
struct NonzeroConstantTerm : std::domain_error {
  explicit NonzeroConstantTerm(const std::string& what) : std::domain_error(what) {}
};
struct DivisionByZero : std::domain_error {
  explicit DivisionByZero(const std::string& what) : std::domain_error(what) {}
};
struct OutOfRange : std::out_of_range {
  explicit OutOfRange(const std::string& what) : std::out_of_range(what) {}
};

class MotivicWeight {
public:
  MotivicWeight() = default;

  // c * L^{half/2}
  static MotivicWeight half_power(int half, mpz_class c = 1);
  // c * L^0
  static MotivicWeight constant(mpz_class c);
  static MotivicWeight zero() { return MotivicWeight{}; }
  static MotivicWeight one() { return constant(1); }

  bool is_zero() const { return t_.empty(); }
  bool is_one() const;
  // half-exponent -> coefficient, ascending, no zero entries
  const std::map<int, mpz_class>& terms() const { return t_; }
  mpz_class coeff(int half) const;
  int min_half() const;  // OutOfRange on zero weight
  int max_half() const;

  MotivicWeight& operator+=(const MotivicWeight& o);
  MotivicWeight& operator-=(const MotivicWeight& o);
  MotivicWeight& operator*=(const MotivicWeight& o);
  MotivicWeight operator-() const;

  friend MotivicWeight operator+(MotivicWeight a, const MotivicWeight& b) { return a += b; }
  friend MotivicWeight operator-(MotivicWeight a, const MotivicWeight& b) { return a -= b; }
  friend MotivicWeight operator*(const MotivicWeight& a, const MotivicWeight& b);
  friend MotivicWeight operator*(const mpz_class& c, const MotivicWeight& w);
  friend bool operator==(const MotivicWeight& a, const MotivicWeight& b) { return a.t_ == b.t_; }
  friend bool operator!=(const MotivicWeight& a, const MotivicWeight& b) { return !(a == b); }
  friend bool operator<(const MotivicWeight& a, const MotivicWeight& b) { return a.t_ < b.t_; }

  // L^{a/2} -> L^{k a/2}
  MotivicWeight adams(int k) const;
  // evaluate at L^{1/2} = v; DivisionByZero if v == 0 meets a negative exponent
  mpq_class specialize(const mpq_class& v) const;

  // Plain rendering.  Integer powers print as a Laurent polynomial in L,
  // descending.  If every half-exponent is odd the lowest half power is
  // factored out: L^{-1/2}(L^2+L+1).  Mixed parity falls back to a flat sum
  // of L^{a/2} monomials.
  std::string str() const;

private:
  std::map<int, mpz_class> t_;
  void set(int half, mpz_class c);
};

// Truncated power series in t with MotivicWeight coefficients.  The
// truncation order N (degrees 0..N kept) is explicit everywhere; binary
// operations truncate to the smaller order.
class MotivicSeries {
public:
  explicit MotivicSeries(int order);
  static MotivicSeries unit(int order);  // 1
  static MotivicSeries monomial(const MotivicWeight& w, int n, int order);

  int order() const { return order_; }
  const MotivicWeight& operator[](int n) const;
  void set(int n, MotivicWeight w);  // OutOfRange past the truncation order
  bool is_unital() const;            // constant coefficient == 1
  bool is_zero() const;

  MotivicSeries& operator+=(const MotivicSeries& o);
  MotivicSeries& operator-=(const MotivicSeries& o);
  friend MotivicSeries operator+(MotivicSeries a, const MotivicSeries& b) { return a += b; }
  friend MotivicSeries operator-(MotivicSeries a, const MotivicSeries& b) { return a -= b; }
  friend MotivicSeries operator*(const MotivicSeries& a, const MotivicSeries& b);
  friend MotivicSeries operator*(const MotivicWeight& w, const MotivicSeries& f);
  friend bool operator==(const MotivicSeries& a, const MotivicSeries& b);
  friend bool operator!=(const MotivicSeries& a, const MotivicSeries& b) { return !(a == b); }

  MotivicSeries truncate(int order) const;

  std::string str(const std::string& var = "t") const;

private:
  int order_;
  std::vector<MotivicWeight> c_;
};

// psi_k: t^n -> t^{kn}, L^{a/2} -> L^{ka/2}; requires k >= 1
MotivicSeries adams(int k, const MotivicSeries& f);

// multiplicative inverse of a unital series; NotUnital otherwise
MotivicSeries series_inverse(const MotivicSeries& g);

// Exp(f) = prod over monomials c L^{a/2} t^n of (1 - L^{a/2} t^n)^{-c}.
// Requires f to have zero constant term (NonzeroConstantTerm).  Coefficients
// stay integral by construction; no rational arithmetic is involved.
MotivicSeries plethystic_exp(const MotivicSeries& f);

// Inverse of plethystic_exp: strips factors off a unital series degree by
// degree.  NotUnital if the constant term is not 1.
MotivicSeries plethystic_log(const MotivicSeries& g);

// A^x := Exp(x * Log(A)) for unital A and any weight x
MotivicSeries power_pow(const MotivicSeries& a, const MotivicWeight& x);

// evaluate every coefficient at L^{1/2} = v
std::vector<mpq_class> specialize(const MotivicSeries& f, const mpq_class& v);

}  // namespace localdt
