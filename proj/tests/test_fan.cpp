#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "localdt/fan.hpp"

using namespace localdt;

namespace {

long long det3(const Vec3& a, const Vec3& b, const Vec3& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
         a[2] * (b[0] * c[1] - b[1] * c[0]);
}

using M3 = std::array<std::array<long long, 3>, 3>;

M3 matmul(const M3& a, const M3& b) {
  M3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

long long det3m(const M3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

bool is_identity(const M3& m) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (m[i][j] != (i == j ? 1 : 0)) return false;
  return true;
}

}  // namespace

TEST_CASE("fan validation accepts the standard fans") {
  CHECK(Fan2D::p2().size() == 3);
  for (long long n = 0; n <= 3; ++n) CHECK(Fan2D::hirzebruch(n).size() == 4);
  // any cyclic rotation of the ray list is the same fan
  CHECK_NOTHROW(Fan2D::from_rays({{0, 1}, {-1, -1}, {1, 0}}));
  // del Pezzo style hexagon
  CHECK_NOTHROW(Fan2D::from_rays({{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}}));
}

TEST_CASE("fan validation rejects bad input") {
  CHECK_THROWS_AS(Fan2D::from_rays({{2, 0}, {0, 1}, {-1, -1}}), NotPrimitive);
  CHECK_THROWS_AS(Fan2D::from_rays({{0, 0}, {0, 1}, {-1, -1}}), NotPrimitive);
  // non-unimodular consecutive pair
  CHECK_THROWS_AS(Fan2D::from_rays({{1, 0}, {1, 2}, {-1, -1}}), NotSmooth);
  // clockwise ordering
  CHECK_THROWS_AS(Fan2D::from_rays({{0, 1}, {1, 0}, {-1, -1}}), NotSmooth);
  // too few rays to surround the origin
  CHECK_THROWS_AS(Fan2D::from_rays({{1, 0}, {0, 1}}), NotComplete);
  // every consecutive det is +1 but the rays wind three times
  CHECK_THROWS_AS(Fan2D::from_rays({{1, 0}, {-1, 1}, {0, -1}, {1, 1}, {-1, 0}, {1, -1}, {0, 1}, {-1, -1}}),
                  NotComplete);
}

TEST_CASE("self-intersection numbers") {
  Fan2D p2 = Fan2D::p2();
  for (int i = 0; i < 3; ++i) CHECK(self_intersection(p2, i) == 1);
  for (long long n = 0; n <= 3; ++n) {
    Fan2D fn = Fan2D::hirzebruch(n);
    CHECK(self_intersection(fn, 0) == 0);   // fiber
    CHECK(self_intersection(fn, 1) == -n);  // negative section
    CHECK(self_intersection(fn, 2) == 0);   // fiber
    CHECK(self_intersection(fn, 3) == n);   // positive section
  }
}

TEST_CASE("lift appends height-one rays and the vertical ray") {
  LocalFan lf = LocalFan::lift(Fan2D::p2());
  REQUIRE(lf.num_rays() == 4);
  CHECK(lf.ray(0) == Vec3{1, 0, 1});
  CHECK(lf.ray(1) == Vec3{0, 1, 1});
  CHECK(lf.ray(2) == Vec3{-1, -1, 1});
  CHECK(lf.ray(3) == Vec3{0, 0, 1});
  CHECK(lf.vertical() == 3);
  REQUIRE(lf.num_cones() == 3);
  CHECK(lf.cone(0) == std::array<int, 3>{0, 1, 3});
  CHECK(lf.cone(1) == std::array<int, 3>{1, 2, 3});
  CHECK(lf.cone(2) == std::array<int, 3>{2, 0, 3});
}

TEST_CASE("relation lattice in Hermite normal form") {
  LocalFan p2 = LocalFan::lift(Fan2D::p2());
  RelationBasis rb = relation_lattice(p2);
  REQUIRE(rb.size() == 1);
  CHECK(rb[0] == std::vector<long long>{1, 1, 1, -3});

  for (long long n = 0; n <= 3; ++n) {
    LocalFan fn = LocalFan::lift(Fan2D::hirzebruch(n));
    RelationBasis rbn = relation_lattice(fn);
    REQUIRE(rbn.size() == 2);
    CHECK(rbn[0] == std::vector<long long>{1, 0, 1, n, -(n + 2)});
    CHECK(rbn[1] == std::vector<long long>{0, 1, 0, 1, -2});
  }

  // rows annihilate the ray matrix
  for (const auto& lf : {p2, LocalFan::lift(Fan2D::hirzebruch(2))}) {
    for (const auto& row : relation_lattice(lf)) {
      for (int c = 0; c < 3; ++c) {
        long long s = 0;
        for (int i = 0; i < lf.num_rays(); ++i) s += row[i] * lf.ray(i)[c];
        CHECK(s == 0);
      }
    }
  }
}

TEST_CASE("chart frames put the vertical ray last with determinant +1") {
  LocalFan p2 = LocalFan::lift(Fan2D::p2());
  CHECK(chart_frame(p2, 1).order == std::array<int, 3>{1, 2, 3});  // (x2, x3, p)
  CHECK(chart_frame(p2, 2).order == std::array<int, 3>{2, 0, 3});  // (x3, x1, p)

  for (long long n = 0; n <= 3; ++n) {
    LocalFan fn = LocalFan::lift(Fan2D::hirzebruch(n));
    for (int c = 0; c < fn.num_cones(); ++c) {
      ChartFrame fr = chart_frame(fn, c);
      CHECK(fr.order[2] == fn.vertical());
      CHECK(det3(fn.ray(fr.order[0]), fn.ray(fr.order[1]), fn.ray(fr.order[2])) == 1);
    }
  }
}

TEST_CASE("transition matrices: frozen values") {
  LocalFan p2 = LocalFan::lift(Fan2D::p2());
  MonomialMap m = transition(p2, 1, 2);
  CHECK(m.f == 1);
  CHECK(m.exp == M3{{{-1, 1, 0}, {-1, 0, 0}, {3, 0, 1}}});

  // f = 0: fiber of a Hirzebruch surface, (x,y,z) -> (y, x^-1, x^2 z)
  LocalFan f2 = LocalFan::lift(Fan2D::hirzebruch(2));
  MonomialMap m0 = transition(f2, 3, 0);  // shared ray 0, self-intersection 0
  CHECK(m0.f == 0);
  CHECK(m0.exp == M3{{{0, 1, 0}, {-1, 0, 0}, {2, 0, 1}}});

  // f = -1: blow-up exceptional style, (x,y,z) -> (xy, x^-1, xz)
  LocalFan dp = LocalFan::lift(
      Fan2D::from_rays({{1, 0}, {1, 1}, {0, 1}, {-1, -1}}));  // ray 1 has f = -1
  REQUIRE(self_intersection(dp.base(), 1) == -1);
  MonomialMap m1 = transition(dp, 0, 1);
  CHECK(m1.f == -1);
  CHECK(m1.exp == M3{{{1, 1, 0}, {-1, 0, 0}, {1, 0, 1}}});
}

TEST_CASE("transition invariants across whole fans") {
  std::vector<LocalFan> fans;
  fans.push_back(LocalFan::lift(Fan2D::p2()));
  for (long long n = 0; n <= 3; ++n) fans.push_back(LocalFan::lift(Fan2D::hirzebruch(n)));
  for (const auto& lf : fans) {
    const int k = lf.num_cones();
    M3 total{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    for (int c = 0; c < k; ++c) {
      MonomialMap fwd = transition(lf, c, (c + 1) % k);
      MonomialMap bwd = transition(lf, (c + 1) % k, c);
      CHECK(det3m(fwd.exp) == 1);
      CHECK(det3m(bwd.exp) == 1);
      CHECK(is_identity(matmul(fwd.exp, bwd.exp)));
      // vertical coordinate stays in the last slot with exponent one
      CHECK(fwd.exp[0][2] == 0);
      CHECK(fwd.exp[1][2] == 0);
      CHECK(fwd.exp[2][2] == 1);
      total = matmul(transition(lf, c, (c + 1) % k).exp, total);
    }
    CHECK(is_identity(total));
  }

  LocalFan f1 = LocalFan::lift(Fan2D::hirzebruch(1));
  CHECK_THROWS_AS(transition(f1, 0, 2), NotAdjacent);
  CHECK_THROWS_AS(transition(f1, 1, 1), NotAdjacent);
}

TEST_CASE("fan JSON parsing") {
  Fan2D f = fan_from_json(nlohmann::json::parse(R"({"rays2d":[[1,0],[0,1],[-1,-1]]})"));
  CHECK(f.rays() == Fan2D::p2().rays());
  CHECK(fan_to_json(f).dump() == R"({"rays2d":[[1,0],[0,1],[-1,-1]]})");

  CHECK_THROWS_AS(fan_from_json(nlohmann::json::parse(R"({"rays":[[1,0]]})")), BadFanJson);
  CHECK_THROWS_AS(fan_from_json(nlohmann::json::parse(R"({"rays2d":[[1,0],[0,1],[-1]]})")), BadFanJson);
  CHECK_THROWS_AS(fan_from_json(nlohmann::json::parse(R"({"rays2d":"x"})")), BadFanJson);
  CHECK_THROWS_AS(fan_from_json(nlohmann::json::parse(R"({"rays2d":[[1,0],[0,1],[-1,-1.5]]})")),
                  BadFanJson);
  // validation still applies
  CHECK_THROWS_AS(fan_from_json(nlohmann::json::parse(R"({"rays2d":[[1,0],[1,2],[-1,-1]]})")),
                  NotSmooth);
}
