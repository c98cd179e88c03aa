#include "localdt/traces.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <stdexcept>

namespace localdt {

bool invertible(Sym s) { return s == Sym::X; }

const char* sym_name(Sym s) {
  switch (s) {
    case Sym::X: return "X";
    case Sym::Y: return "Y";
    case Sym::Z: return "Z";
    case Sym::P: return "P";
    case Sym::X1: return "X1";
    case Sym::X2: return "X2";
  }
  return "?";
}

namespace {

void append_factor(std::vector<Factor>& f, Factor g) {
  if (g.e == 0) return;
  while (!f.empty() && f.back().s == g.s) {
    g.e += f.back().e;
    f.pop_back();
    if (g.e == 0) return;
  }
  if (g.e < 0 && !invertible(g.s))
    throw NegativePower(std::string("negative power of ") + sym_name(g.s));
  f.push_back(g);
}

}  // namespace

Word::Word(std::initializer_list<Factor> fs) {
  for (const Factor& g : fs) append_factor(f_, g);
}

Word Word::pow(Sym s, int e) {
  Word w;
  append_factor(w.f_, Factor{s, e});
  return w;
}

int Word::letter_length() const {
  int n = 0;
  for (const Factor& g : f_) n += std::abs(g.e);
  return n;
}

Word& Word::operator*=(const Word& o) {
  for (const Factor& g : o.f_) append_factor(f_, g);
  return *this;
}

Word Word::inverse() const {
  Word r;
  for (auto it = f_.rbegin(); it != f_.rend(); ++it) append_factor(r.f_, Factor{it->s, -it->e});
  return r;
}

std::string Word::str() const {
  if (f_.empty()) return "1";
  std::string out;
  for (const Factor& g : f_) {
    out += sym_name(g.s);
    if (g.e != 1) out += "^" + std::to_string(g.e);
  }
  return out;
}

namespace {

struct Letter {
  Sym s;
  bool neg;
  friend bool operator==(const Letter& a, const Letter& b) = default;
};

int letter_code(const Letter& l) { return static_cast<int>(l.s) * 2 + (l.neg ? 1 : 0); }

std::vector<Letter> expand_letters(const Word& w) {
  std::vector<Letter> out;
  for (const Factor& g : w.factors()) {
    Letter l{g.s, g.e < 0};
    for (int i = 0; i < std::abs(g.e); ++i) out.push_back(l);
  }
  return out;
}

Word merge_letters(const std::vector<Letter>& ls) {
  Word w;
  for (const Letter& l : ls) w *= Word::pow(l.s, l.neg ? -1 : 1);
  return w;
}

}  // namespace

Word cyclic_canon(const Word& w) {
  std::deque<Letter> ls;
  for (const Letter& l : expand_letters(w)) ls.push_back(l);
  // conjugation across the seam: leading and trailing inverse letters cancel
  while (ls.size() >= 2 && ls.front().s == ls.back().s && ls.front().neg != ls.back().neg) {
    ls.pop_front();
    ls.pop_back();
  }
  const int m = static_cast<int>(ls.size());
  if (m == 0) return Word();
  std::vector<Letter> v(ls.begin(), ls.end());
  int best = 0;
  for (int cand = 1; cand < m; ++cand) {
    for (int k = 0; k < m; ++k) {
      int a = letter_code(v[(cand + k) % m]);
      int b = letter_code(v[(best + k) % m]);
      if (a != b) {
        if (a < b) best = cand;
        break;
      }
    }
  }
  std::vector<Letter> rot;
  rot.reserve(m);
  for (int k = 0; k < m; ++k) rot.push_back(v[(best + k) % m]);
  return merge_letters(rot);
}

TracePoly TracePoly::trace(const Word& w) {
  TracePoly p;
  p.add(w, 1);
  return p;
}

void TracePoly::add(const Word& w, const mpz_class& c) {
  if (c == 0) return;
  Word key = cyclic_canon(w);
  auto it = t_.find(key);
  if (it == t_.end()) {
    t_.emplace(std::move(key), c);
  } else {
    it->second += c;
    if (it->second == 0) t_.erase(it);
  }
}

TracePoly& TracePoly::operator+=(const TracePoly& o) {
  for (const auto& [w, c] : o.t_) add(w, c);
  return *this;
}

TracePoly& TracePoly::operator-=(const TracePoly& o) {
  for (const auto& [w, c] : o.t_) add(w, -c);
  return *this;
}

TracePoly TracePoly::operator-() const {
  TracePoly r;
  for (const auto& [w, c] : t_) r.t_.emplace(w, -c);
  return r;
}

TracePoly operator*(const mpz_class& c, const TracePoly& p) {
  TracePoly r;
  if (c == 0) return r;
  for (const auto& [w, k] : p.t_) r.t_.emplace(w, c * k);
  return r;
}

std::string TracePoly::str() const {
  if (t_.empty()) return "0";
  std::string out;
  for (const auto& [w, c] : t_) {
    mpz_class a = abs(c);
    std::string body = (a == 1 ? "" : a.get_str()) + "tr(" + w.str() + ")";
    if (out.empty()) {
      out = (c < 0 ? "-" : "") + body;
    } else {
      out += (c < 0 ? " - " : " + ") + body;
    }
  }
  return out;
}

TracePoly potential() {
  return TracePoly::trace(Word{{Sym::X, 1}, {Sym::Y, 1}, {Sym::Z, 1}}) -
         TracePoly::trace(Word{{Sym::Y, 1}, {Sym::X, 1}, {Sym::Z, 1}});
}

namespace {

int checked_exp(long long f) {
  if (f > 1000000 || f < -1000000) throw std::invalid_argument("transition exponent out of range");
  return static_cast<int>(f);
}

// tr(X^{-k} Y X^{k+1} Z)
Word pullback_word(long long k) {
  return Word::pow(Sym::X, -checked_exp(k)) * Word::pow(Sym::Y, 1) *
         Word::pow(Sym::X, checked_exp(k) + 1) * Word::pow(Sym::Z, 1);
}

}  // namespace

TracePoly transition_potential(long long f) {
  return TracePoly::trace(pullback_word(f)) - TracePoly::trace(pullback_word(f + 1));
}

Word substitute(const Word& w, const SubstRule& rule) {
  Word out;
  for (const Factor& g : w.factors()) {
    auto it = rule.find(g.s);
    Word img = it == rule.end() ? Word::pow(g.s, 1) : it->second;
    if (g.e < 0) img = img.inverse();
    for (int i = 0; i < std::abs(g.e); ++i) out *= img;
  }
  return out;
}

TracePoly substitute(const TracePoly& p, const SubstRule& rule) {
  TracePoly r;
  for (const auto& [w, c] : p.terms()) r.add(substitute(w, rule), c);
  return r;
}

std::pair<TracePoly, long long> swap_reduce(long long f) {
  if (f >= -1) throw ReductionNotNeeded("swap_reduce applies only below f = -1");
  SubstRule yz{{Sym::Y, Word::pow(Sym::Z, 1)}, {Sym::Z, Word::pow(Sym::Y, 1)}};
  return {-substitute(transition_potential(f), yz), -f - 2};
}

I2Certificate build_certificate(long long f) {
  if (f == -1) return {};
  if (f == 0) {
    CertTerm base;
    base.coeff = -1;
    base.w0 = Word::pow(Sym::X, -1);
    base.a = Word::pow(Sym::X, 1);
    base.b = Word::pow(Sym::Y, 1);
    base.c = Word::pow(Sym::Z, 1);
    base.d = Word::pow(Sym::X, 1);
    return {base};
  }
  if (f > 0) {
    // pulling one more step back multiplies Y by X and conjugates the prefix
    I2Certificate cert = build_certificate(f - 1);
    SubstRule grow{{Sym::Y, Word{{Sym::Y, 1}, {Sym::X, 1}}}};
    for (CertTerm& t : cert) {
      t.w0 = Word::pow(Sym::X, -1) * substitute(t.w0, grow);
      t.a = substitute(t.a, grow);
      t.b = substitute(t.b, grow);
      t.w1 = substitute(t.w1, grow);
      t.c = substitute(t.c, grow);
      t.d = substitute(t.d, grow);
      t.w2 = substitute(t.w2, grow);
    }
    I2Certificate base = build_certificate(0);
    cert.insert(cert.end(), base.begin(), base.end());
    return cert;
  }
  // f <= -2: reflect the mirror certificate through Y <-> Z, flipping signs
  I2Certificate cert = build_certificate(-f - 2);
  SubstRule yz{{Sym::Y, Word::pow(Sym::Z, 1)}, {Sym::Z, Word::pow(Sym::Y, 1)}};
  for (CertTerm& t : cert) {
    t.coeff = -t.coeff;
    t.w0 = substitute(t.w0, yz);
    t.a = substitute(t.a, yz);
    t.b = substitute(t.b, yz);
    t.w1 = substitute(t.w1, yz);
    t.c = substitute(t.c, yz);
    t.d = substitute(t.d, yz);
    t.w2 = substitute(t.w2, yz);
  }
  return cert;
}

TracePoly expand_certificate(const I2Certificate& cert) {
  TracePoly out;
  for (const CertTerm& t : cert) {
    for (int i = 0; i < 2; ++i) {
      Word u = i == 0 ? t.a * t.b : t.b * t.a;
      for (int j = 0; j < 2; ++j) {
        Word v = j == 0 ? t.c * t.d : t.d * t.c;
        mpz_class sign = ((i + j) % 2 == 0) ? t.coeff : -t.coeff;
        out.add(t.w0 * u * t.w1 * v * t.w2, sign);
      }
    }
  }
  return out;
}

namespace {

struct Parser {
  std::string s;
  size_t i = 0;

  explicit Parser(const std::string& text) {
    for (char c : text)
      if (!isspace(static_cast<unsigned char>(c))) s += c;
  }

  bool eof() const { return i >= s.size(); }
  char peek() const { return s[i]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw TraceParseError(msg + " at position " + std::to_string(i));
  }

  mpz_class parse_uint() {
    size_t start = i;
    while (!eof() && isdigit(static_cast<unsigned char>(peek()))) ++i;
    if (i == start) fail("expected digits");
    return mpz_class(s.substr(start, i - start), 10);
  }

  int parse_int() {
    int sign = 1;
    if (!eof() && (peek() == '-' || peek() == '+')) {
      if (peek() == '-') sign = -1;
      ++i;
    }
    mpz_class mag = parse_uint();
    if (mag > 1000) fail("exponent too large");
    return sign * static_cast<int>(mag.get_si());
  }

  Word parse_word() {
    Word w;
    bool any = false;
    if (!eof() && peek() == '1') {  // the identity, as printed for the empty word
      ++i;
      return w;
    }
    while (!eof() && peek() != ')') {
      Sym sym;
      bool inv = false;
      switch (peek()) {
        case 'X': sym = Sym::X; break;
        case 'Y': sym = Sym::Y; break;
        case 'Z': sym = Sym::Z; break;
        case 'P': sym = Sym::P; break;
        default: fail("expected word atom X, Y, Z, P, Xinv or 1");
      }
      ++i;
      if (sym == Sym::X && s.compare(i, 3, "inv") == 0) {
        inv = true;
        i += 3;
      }
      int e = 1;
      if (!eof() && peek() == '^') {
        ++i;
        e = parse_int();
      }
      if (inv) e = -e;
      if (e < 0 && !invertible(sym)) fail("negative exponent on a non-invertible symbol");
      w *= Word::pow(sym, e);
      any = true;
    }
    if (!any) fail("empty trace word");
    return w;
  }

  TracePoly parse() {
    TracePoly out;
    bool first = true;
    while (true) {
      if (eof()) {
        if (first) fail("empty expression");
        break;
      }
      mpz_class sign = 1;
      if (peek() == '+' || peek() == '-') {
        if (peek() == '-') sign = -1;
        ++i;
      } else if (!first) {
        fail("expected + or - between terms");
      }
      mpz_class coeff = 1;
      if (!eof() && isdigit(static_cast<unsigned char>(peek()))) coeff = parse_uint();
      if (s.compare(i, 3, "tr(") != 0) fail("expected tr(");
      i += 3;
      Word w = parse_word();
      if (eof() || peek() != ')') fail("expected )");
      ++i;
      out.add(w, sign * coeff);
      first = false;
    }
    return out;
  }
};

}  // namespace

TracePoly parse_trace_poly(const std::string& text) { return Parser(text).parse(); }

}  // namespace localdt
