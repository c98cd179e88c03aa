#pragma once

// Cyclic words and trace polynomials in the noncommutative variables
// X, Y, Z, P, X1, X2 (only X carries a formal inverse), the superpotential
// tr([X,Y]Z) and its pullbacks under the chart transitions, and certificates
// writing pullback differences as explicit sums of
//   coeff * tr(w0 [a,b] w1 [c,d] w2),
// i.e. exhibiting membership in the square of the commutator ideal.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace localdt {

struct NegativePower : std::domain_error {
  explicit NegativePower(const std::string& what) : std::domain_error(what) {}
};
struct ReductionNotNeeded : std::domain_error {
  explicit ReductionNotNeeded(const std::string& what) : std::domain_error(what) {}
};
struct TraceParseError : std::runtime_error {
  explicit TraceParseError(const std::string& what) : std::runtime_error(what) {}
};

enum class Sym : std::uint8_t { X, Y, Z, P, X1, X2 };
bool invertible(Sym s);  // only X
const char* sym_name(Sym s);

struct Factor {
  Sym s;
  int e;
  friend bool operator==(const Factor& a, const Factor& b) { return a.s == b.s && a.e == b.e; }
  friend auto operator<=>(const Factor& a, const Factor& b) = default;
};

// product of symbol powers, adjacent equal symbols merged, exponents nonzero;
// the empty word is the identity
class Word {
public:
  Word() = default;
  Word(std::initializer_list<Factor> fs);

  // NegativePower if e < 0 and s is not invertible; e == 0 gives the identity
  static Word pow(Sym s, int e);

  bool empty() const { return f_.empty(); }
  const std::vector<Factor>& factors() const { return f_; }
  int letter_length() const;  // sum |e|

  Word& operator*=(const Word& o);
  friend Word operator*(Word a, const Word& b) { return a *= b; }
  // reverses and negates; NegativePower if a non-invertible symbol occurs
  Word inverse() const;

  friend bool operator==(const Word& a, const Word& b) { return a.f_ == b.f_; }
  friend bool operator<(const Word& a, const Word& b) { return a.f_ < b.f_; }

  std::string str() const;  // "X^-1YX^2Z", identity prints "1"

private:
  std::vector<Factor> f_;
};

// lexicographically minimal rotation at the letter level, then re-merged;
// representative of the cyclic equivalence class
Word cyclic_canon(const Word& w);

// integer linear combination of traces of cyclic words; keys are canonical
class TracePoly {
public:
  TracePoly() = default;
  static TracePoly trace(const Word& w);  // tr(w), coefficient 1

  bool is_zero() const { return t_.empty(); }
  const std::map<Word, mpz_class>& terms() const { return t_; }
  void add(const Word& w, const mpz_class& c);  // canonicalizes, drops zeros

  TracePoly& operator+=(const TracePoly& o);
  TracePoly& operator-=(const TracePoly& o);
  TracePoly operator-() const;
  friend TracePoly operator+(TracePoly a, const TracePoly& b) { return a += b; }
  friend TracePoly operator-(TracePoly a, const TracePoly& b) { return a -= b; }
  friend TracePoly operator*(const mpz_class& c, const TracePoly& p);
  friend bool operator==(const TracePoly& a, const TracePoly& b) { return a.t_ == b.t_; }
  friend bool operator!=(const TracePoly& a, const TracePoly& b) { return !(a == b); }

  std::string str() const;  // "tr(XYZ) - tr(XZY)"

private:
  std::map<Word, mpz_class> t_;
};

// tr([X,Y]Z) = tr(XYZ) - tr(YXZ)
TracePoly potential();

// the potential pulled back through the shared-ray-f transition:
// tr(X^-f Y X^{f+1} Z) - tr(X^-(f+1) Y X^{f+2} Z); f = -1 reproduces
// potential()
TracePoly transition_potential(long long f);

// for f < -1: exchanging Y and Z and flipping the sign turns the pullback
// into the one for -f-2, reducing every case to f >= -1.  Returns the
// transformed polynomial and the new exponent.  ReductionNotNeeded if
// f >= -1.
std::pair<TracePoly, long long> swap_reduce(long long f);

using SubstRule = std::map<Sym, Word>;  // symbols absent from the map are fixed
Word substitute(const Word& w, const SubstRule& rule);
TracePoly substitute(const TracePoly& p, const SubstRule& rule);

// coeff * tr(w0 [a,b] w1 [c,d] w2)
struct CertTerm {
  mpz_class coeff;
  Word w0, a, b, w1, c, d, w2;
};
using I2Certificate = std::vector<CertTerm>;

// certificate for transition_potential(f) - potential(); empty at f = -1
I2Certificate build_certificate(long long f);

// distributes both commutators; exact
TracePoly expand_certificate(const I2Certificate& cert);

// grammar: ['-'] [<uint>] tr(<word>) { ('+'|'-') [<uint>] tr(<word>) }
// word atoms X, Y, Z, P, Xinv with optional ^<int>; whitespace-insensitive;
// negative exponents only on X / Xinv
TracePoly parse_trace_poly(const std::string& text);

}  // namespace localdt
