#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "localdt/motivic.hpp"
#include "localdt/multiseries.hpp"
#include "localdt/series_json.hpp"
#include "oracle_pleth.hpp"
#include "test_util.hpp"

#include <random>

using namespace localdt;
using testutil::random_no_const;
using testutil::random_unital;
using testutil::random_weight;

namespace {

MotivicWeight L(int half, mpz_class c = 1) { return MotivicWeight::half_power(half, c); }

MotivicSeries geometric(const MotivicWeight& m, int order) {
  // 1 / (1 - m t)
  MotivicSeries g = MotivicSeries::unit(order);
  MotivicWeight p = MotivicWeight::one();
  for (int n = 1; n <= order; ++n) {
    p *= m;
    g.set(n, p);
  }
  return g;
}

}  // namespace

TEST_CASE("weight arithmetic and canonical form") {
  MotivicWeight a = L(1) + MotivicWeight::one();          // L^{1/2} + 1
  MotivicWeight sq = a * a;
  CHECK(sq == L(2) + L(1, 2) + MotivicWeight::one());     // L + 2 L^{1/2} + 1
  CHECK(L(1) * L(-1) == MotivicWeight::one());
  CHECK((a - a).is_zero());
  CHECK((a - a).terms().empty());                         // no zero entries survive
  CHECK(L(0, 0).is_zero());
  CHECK(MotivicWeight::zero() * a == MotivicWeight::zero());
}

TEST_CASE("weight Adams operations scale half-exponents") {
  MotivicWeight w = L(1) + L(-2);
  CHECK(w.adams(2) == L(2) + L(-4));
  CHECK(w.adams(1) == w);
  CHECK(w.adams(3) == L(3) + L(-6));
}

TEST_CASE("weight specialization at rational points") {
  MotivicWeight p2 = L(4) + L(2) + MotivicWeight::one();  // L^2 + L + 1
  CHECK(p2.specialize(mpq_class(-1)) == 3);
  CHECK(p2.specialize(mpq_class(2)) == 21);
  CHECK(L(-3).specialize(mpq_class(-1)) == -1);
  CHECK(L(-3).specialize(mpq_class(1, 2)) == 8);
  CHECK_THROWS_AS(L(-1).specialize(mpq_class(0)), DivisionByZero);
  CHECK(L(2).specialize(mpq_class(0)) == 0);
}

TEST_CASE("weight plain rendering") {
  CHECK((L(4) + L(2) + MotivicWeight::one()).str() == "L^2+L+1");
  CHECK((L(3) + L(1) + L(-1)).str() == "L^{-1/2}(L^2+L+1)");
  CHECK(L(3).str() == "L^{3/2}");
  CHECK(L(-2).str() == "L^{-1}");
  CHECK((L(2) + L(1)).str() == "L+L^{1/2}");
  CHECK((L(2) - MotivicWeight::one()).str() == "L-1");
  CHECK((L(2) + L(-4)).str() == "L+L^{-2}");
  CHECK(MotivicWeight::zero().str() == "0");
  CHECK(MotivicWeight::constant(-3).str() == "-3");
  CHECK(L(1, -1).str() == "-L^{1/2}");
  CHECK((L(-2) + L(-4)).str() == "L^{-1}+L^{-2}");
  CHECK((L(-2) - L(-4)).str() == "L^{-1}-L^{-2}");
}

TEST_CASE("series ring operations truncate explicitly") {
  MotivicSeries one_plus_t = MotivicSeries::unit(4) + MotivicSeries::monomial(MotivicWeight::one(), 1, 4);
  MotivicSeries one_minus_t = MotivicSeries::unit(4) - MotivicSeries::monomial(MotivicWeight::one(), 1, 4);
  MotivicSeries prod = one_plus_t * one_minus_t;
  CHECK(prod[0].is_one());
  CHECK(prod[1].is_zero());
  CHECK(prod[2] == -MotivicWeight::one());
  CHECK(prod[3].is_zero());
  CHECK(prod[4].is_zero());
  CHECK_THROWS_AS(prod[5], OutOfRange);
  CHECK(prod.truncate(2).order() == 2);
}

TEST_CASE("series inverse of unital series") {
  MotivicSeries one_minus_t = MotivicSeries::unit(6) - MotivicSeries::monomial(MotivicWeight::one(), 1, 6);
  MotivicSeries inv = series_inverse(one_minus_t);
  for (int n = 0; n <= 6; ++n) CHECK(inv[n].is_one());

  MotivicSeries g = MotivicSeries::unit(5) - MotivicSeries::monomial(L(1), 1, 5);
  MotivicSeries ginv = series_inverse(g);
  for (int n = 0; n <= 5; ++n) CHECK(ginv[n] == L(n));

  CHECK_THROWS_AS(series_inverse(MotivicSeries(3)), NotUnital);
  MotivicSeries two = MotivicSeries::unit(3) + MotivicSeries::unit(3);
  CHECK_THROWS_AS(series_inverse(two), NotUnital);

  std::mt19937_64 rng(11);
  for (int it = 0; it < 50; ++it) {
    MotivicSeries f = random_unital(rng, 6);
    CHECK(f * series_inverse(f) == MotivicSeries::unit(6));
  }
}

TEST_CASE("Adams on series relabels monomials") {
  MotivicSeries f(4);
  f.set(1, MotivicWeight::one());
  f.set(2, L(2));
  MotivicSeries a2 = adams(2, f);
  CHECK(a2[1].is_zero());
  CHECK(a2[2].is_one());
  CHECK(a2[4] == L(4));
  CHECK_THROWS_AS(adams(0, f), std::invalid_argument);
}

TEST_CASE("plethystic Exp on single monomials gives geometric factors") {
  MotivicSeries t_only(5);
  t_only.set(1, MotivicWeight::one());
  CHECK(plethystic_exp(t_only) == geometric(MotivicWeight::one(), 5));

  MotivicSeries lt(5);
  lt.set(1, L(1));
  CHECK(plethystic_exp(lt) == geometric(L(1), 5));

  MotivicSeries neg(4);
  neg.set(1, MotivicWeight::constant(-1));
  MotivicSeries e = plethystic_exp(neg);  // (1 - t)^{+1}
  CHECK(e[0].is_one());
  CHECK(e[1] == MotivicWeight::constant(-1));
  CHECK(e[2].is_zero());
  CHECK(e[3].is_zero());

  MotivicSeries bad = MotivicSeries::unit(3);
  CHECK_THROWS_AS(plethystic_exp(bad), NonzeroConstantTerm);
}

TEST_CASE("plethystic Exp matches the rational Adams-sum reference") {
  std::mt19937_64 rng(2026);
  for (int it = 0; it < 60; ++it) {
    MotivicSeries f = random_no_const(rng, 6);
    CHECK(plethystic_exp(f) == oracle::exp_reference(f));
  }
}

TEST_CASE("plethystic Log inverts Exp") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 60; ++it) {
    MotivicSeries f = random_no_const(rng, 6);
    CHECK(plethystic_log(plethystic_exp(f)) == f);
  }
  for (int it = 0; it < 30; ++it) {
    MotivicSeries g = random_unital(rng, 5);
    CHECK(plethystic_exp(plethystic_log(g)) == g);
  }
  CHECK_THROWS_AS(plethystic_log(MotivicSeries(3)), NotUnital);
}

TEST_CASE("Exp turns sums into products") {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 60; ++it) {
    MotivicSeries f = random_no_const(rng, 6);
    MotivicSeries g = random_no_const(rng, 6);
    CHECK(plethystic_exp(f + g) == plethystic_exp(f) * plethystic_exp(g));
  }
}

TEST_CASE("power structure: frozen example") {
  // (1/(1-t))^L = 1/(1-Lt)
  MotivicSeries base = geometric(MotivicWeight::one(), 6);
  MotivicSeries powered = power_pow(base, L(2));
  CHECK(powered == geometric(L(2), 6));
}

TEST_CASE("power structure laws") {
  std::mt19937_64 rng(42);
  for (int it = 0; it < 40; ++it) {
    MotivicSeries a = random_unital(rng, 5);
    MotivicWeight x = random_weight(rng);
    MotivicWeight y = random_weight(rng);
    CHECK(power_pow(a, x + y) == power_pow(a, x) * power_pow(a, y));
  }
  for (int it = 0; it < 20; ++it) {
    MotivicSeries a = random_unital(rng, 5);
    MotivicSeries m = MotivicSeries::unit(5);
    for (int k = 0; k <= 3; ++k) {
      CHECK(power_pow(a, MotivicWeight::constant(k)) == m);
      m = m * a;
    }
  }
  CHECK_THROWS_AS(power_pow(MotivicSeries(3), L(2)), NotUnital);
}

TEST_CASE("series specialization is a ring homomorphism") {
  std::mt19937_64 rng(99);
  mpq_class v(3, 2);
  for (int it = 0; it < 40; ++it) {
    MotivicSeries f = random_unital(rng, 5);
    MotivicSeries g = random_unital(rng, 5);
    auto sf = specialize(f, v);
    auto sg = specialize(g, v);
    auto sp = specialize(f * g, v);
    for (int n = 0; n <= 5; ++n) {
      mpq_class conv = 0;
      for (int k = 0; k <= n; ++k) conv += sf[k] * sg[n - k];
      CHECK(sp[n] == conv);
    }
  }
}

TEST_CASE("series plain rendering") {
  MotivicSeries s(1);
  s.set(0, MotivicWeight::one());
  s.set(1, L(3) + L(1) + L(-1));
  CHECK(s.str() == "1 + L^{-1/2}(L^2+L+1) t");

  MotivicSeries z(2);
  CHECK(z.str() == "0");
  z.set(2, L(-2) + L(-4));
  CHECK(z.str() == "(L^{-1}+L^{-2}) t^2");
}

TEST_CASE("series JSON round trip and frozen shape") {
  MotivicSeries k1(1);
  k1.set(1, L(-3));
  nlohmann::ordered_json j = series_to_json(k1);
  CHECK(j.dump() ==
        R"({"var":"t","order":1,"coefficients":[{"n":0,"terms":[]},)"
        R"({"n":1,"terms":[{"halfL":-3,"coeff":"1"}]}]})");

  std::mt19937_64 rng(5);
  for (int it = 0; it < 20; ++it) {
    MotivicSeries f = random_unital(rng, 6);
    CHECK(series_from_json(nlohmann::json::parse(series_to_json(f).dump())) == f);
  }

  CHECK_THROWS_AS(series_from_json(nlohmann::json::parse(R"({"order":1})")), BadSeriesJson);
  CHECK_THROWS_AS(series_from_json(nlohmann::json::parse(
                      R"({"var":"t","order":0,"coefficients":[{"n":0,"terms":[{"halfL":0,"coeff":"x"}]}]})")),
                  BadSeriesJson);
}

TEST_CASE("multivariate series: arithmetic respects the weighted bound") {
  MultiSeries f(4);
  f.set({1}, MotivicWeight::one());        // s1
  f.set({0, 1}, L(2));                     // L s2
  MultiSeries p = f * f;
  CHECK(p.coeff({2}) == MotivicWeight::one());
  CHECK(p.coeff({1, 1}) == L(2, 2));
  CHECK(p.coeff({0, 2}) == L(4));          // weight 4, kept
  MultiSeries g(3);
  g.set({1}, MotivicWeight::one());
  g.set({0, 1}, L(2));
  MultiSeries q = g * g;
  CHECK(q.coeff({0, 2}).is_zero());        // weight 4 > bound 3, dropped
  CHECK_THROWS_AS(g.set({0, 0, 1, 1}, L(0)), OutOfRange);
}

TEST_CASE("multivariate Exp and Log invert each other") {
  std::mt19937_64 rng(31);
  for (int it = 0; it < 25; ++it) {
    MultiSeries f(5);
    for (int i = 1; i <= 5; ++i) {
      ExpVec g(i, 0);
      g[i - 1] = 1;
      f.set(g, random_weight(rng));
    }
    ExpVec mixed{1, 1};  // s1 s2 term, weight 3
    f.set(mixed, random_weight(rng));
    CHECK(multi_log(multi_exp(f)) == f);
  }
  CHECK_THROWS_AS(multi_exp(MultiSeries::unit(2)), NonzeroConstantTerm);
  CHECK_THROWS_AS(multi_log(MultiSeries(2)), NotUnital);
}

TEST_CASE("multivariate route collapses to the univariate one") {
  std::mt19937_64 rng(77);
  for (int it = 0; it < 25; ++it) {
    const int order = 6;
    MotivicSeries f = random_no_const(rng, order);
    MultiSeries emb(order);
    for (int i = 1; i <= order; ++i) {
      ExpVec g(i, 0);
      g[i - 1] = 1;
      emb.set(g, f[i]);
    }
    CHECK(collapse_to_t(multi_exp(emb)) == plethystic_exp(f));
  }
}
