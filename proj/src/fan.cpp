#include "localdt/fan.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>

namespace localdt {

namespace {

long long det2(const Vec2& a, const Vec2& b) { return a[0] * b[1] - a[1] * b[0]; }

long long det3(const Vec3& a, const Vec3& b, const Vec3& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
         a[2] * (b[0] * c[1] - b[1] * c[0]);
}

// upper half plane first, positive x-axis included; used for the exact
// winding count
int angular_half(const Vec2& v) {
  if (v[1] > 0 || (v[1] == 0 && v[0] > 0)) return 0;
  return 1;
}

// strict counterclockwise angular order on nonzero lattice vectors
bool angle_less(const Vec2& a, const Vec2& b) {
  int ha = angular_half(a), hb = angular_half(b);
  if (ha != hb) return ha < hb;
  return det2(a, b) > 0;
}

}  // namespace

Fan2D Fan2D::from_rays(std::vector<Vec2> rays) {
  for (const auto& v : rays) {
    if (v[0] == 0 && v[1] == 0) throw NotPrimitive("zero ray");
    if (std::gcd(std::abs(v[0]), std::abs(v[1])) != 1)
      throw NotPrimitive("ray (" + std::to_string(v[0]) + "," + std::to_string(v[1]) +
                         ") is not primitive");
  }
  const int r = static_cast<int>(rays.size());
  if (r < 3) throw NotComplete("fewer than 3 rays cannot surround the origin");
  for (int i = 0; i < r; ++i) {
    long long d = det2(rays[i], rays[(i + 1) % r]);
    if (d != 1)
      throw NotSmooth("consecutive rays " + std::to_string(i) + "," +
                      std::to_string((i + 1) % r) + " have determinant " + std::to_string(d));
  }
  // each consecutive arc is counterclockwise and shorter than a half turn, so
  // the winding number equals the number of wrap-arounds in angular order
  int wraps = 0;
  for (int i = 0; i < r; ++i)
    if (!angle_less(rays[i], rays[(i + 1) % r])) ++wraps;
  if (wraps != 1)
    throw NotComplete("rays wind " + std::to_string(wraps) + " times around the origin");
  Fan2D f;
  f.rays_ = std::move(rays);
  return f;
}

Fan2D Fan2D::p2() { return from_rays({{1, 0}, {0, 1}, {-1, -1}}); }

Fan2D Fan2D::hirzebruch(long long n) { return from_rays({{1, 0}, {0, 1}, {-1, n}, {0, -1}}); }

long long self_intersection(const Fan2D& fan, int i) {
  const int r = fan.size();
  if (i < 0 || i >= r) throw std::out_of_range("ray index");
  const Vec2& prev = fan.ray((i + r - 1) % r);
  const Vec2& cur = fan.ray(i);
  const Vec2& next = fan.ray((i + 1) % r);
  Vec2 s{prev[0] + next[0], prev[1] + next[1]};
  // s is parallel to cur (the two incident determinants cancel); solve
  // s = a * cur exactly
  if (det2(s, cur) != 0) throw NoIntegerSolution("neighbor sum not parallel to the ray");
  long long a;
  if (cur[0] != 0) {
    if (s[0] % cur[0] != 0) throw NoIntegerSolution("neighbor sum not an integer multiple");
    a = s[0] / cur[0];
  } else {
    if (s[1] % cur[1] != 0) throw NoIntegerSolution("neighbor sum not an integer multiple");
    a = s[1] / cur[1];
  }
  return -a;
}

LocalFan LocalFan::lift(const Fan2D& base) {
  LocalFan lf;
  lf.base_ = base;
  const int r = base.size();
  for (int i = 0; i < r; ++i) lf.rays_.push_back({base.ray(i)[0], base.ray(i)[1], 1});
  lf.rays_.push_back({0, 0, 1});
  for (int i = 0; i < r; ++i) lf.cones_.push_back({i, (i + 1) % r, r});
  return lf;
}

namespace {

using Row = std::vector<long long>;

// in-place row Hermite normal form; returns the rank.  If U is non-null it
// receives the unimodular transform with U * input = output.
int hnf_rows(std::vector<Row>& m, std::vector<Row>* u) {
  const int nr = static_cast<int>(m.size());
  const int nc = nr == 0 ? 0 : static_cast<int>(m[0].size());
  if (u) {
    u->assign(nr, Row(nr, 0));
    for (int i = 0; i < nr; ++i) (*u)[i][i] = 1;
  }
  auto row_axpy = [&](int dst, int src, long long q) {  // row[dst] -= q * row[src]
    for (int c = 0; c < nc; ++c) m[dst][c] -= q * m[src][c];
    if (u)
      for (int c = 0; c < nr; ++c) (*u)[dst][c] -= q * (*u)[src][c];
  };
  auto row_swap = [&](int i, int j) {
    std::swap(m[i], m[j]);
    if (u) std::swap((*u)[i], (*u)[j]);
  };
  auto row_neg = [&](int i) {
    for (auto& x : m[i]) x = -x;
    if (u)
      for (auto& x : (*u)[i]) x = -x;
  };

  int rank = 0;
  for (int col = 0; col < nc && rank < nr; ++col) {
    int p = -1;
    for (int r = rank; r < nr; ++r)
      if (m[r][col] != 0) {
        p = r;
        break;
      }
    if (p == -1) continue;
    row_swap(rank, p);
    for (int r = rank + 1; r < nr; ++r) {
      while (m[r][col] != 0) {
        long long q = m[rank][col] / m[r][col];
        row_axpy(rank, r, q);
        row_swap(rank, r);
      }
    }
    if (m[rank][col] < 0) row_neg(rank);
    ++rank;
  }
  // reduce entries above each pivot into [0, pivot)
  for (int r = rank - 1; r >= 0; --r) {
    int col = 0;
    while (col < nc && m[r][col] == 0) ++col;
    assert(col < nc && m[r][col] > 0);
    for (int above = 0; above < r; ++above) {
      long long q = m[above][col] / m[r][col];
      if (m[above][col] % m[r][col] < 0) --q;  // floor division
      if (q != 0) row_axpy(above, r, q);
    }
  }
  return rank;
}

}  // namespace

RelationBasis relation_lattice(const LocalFan& lf) {
  const int r = lf.num_rays();
  std::vector<Row> m(r, Row(3));
  for (int i = 0; i < r; ++i)
    for (int c = 0; c < 3; ++c) m[i][c] = lf.ray(i)[c];
  std::vector<Row> u;
  int rank = hnf_rows(m, &u);
  assert(rank == 3);
  std::vector<Row> kernel(u.begin() + rank, u.end());
  hnf_rows(kernel, nullptr);
  return kernel;
}

namespace {

// the volume form dx_0 ^ ... ^ dx_{r-1} contracted with the relation vector
// fields, coefficients evaluated at the chart point (all coordinates 1);
// terms keyed by the sorted index set of the surviving differentials
using FormTerms = std::map<std::vector<int>, long long>;

FormTerms contract(const FormTerms& form, const Row& chi) {
  FormTerms out;
  for (const auto& [idx, c] : form) {
    for (size_t k = 0; k < idx.size(); ++k) {
      long long w = chi[idx[k]];
      if (w == 0) continue;
      std::vector<int> rest;
      rest.reserve(idx.size() - 1);
      for (size_t j = 0; j < idx.size(); ++j)
        if (j != k) rest.push_back(idx[j]);
      long long add = (k % 2 == 0 ? c : -c) * w;
      auto [it, fresh] = out.emplace(std::move(rest), add);
      if (!fresh) {
        it->second += add;
        if (it->second == 0) out.erase(it);
      }
    }
  }
  return out;
}

int perm_sign3(const std::array<int, 3>& order) {
  int inv = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (order[i] > order[j]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

// sign of the global 3-form on the cone triple taken in the given order
int omega_sign(const FormTerms& omega, const std::array<int, 3>& order) {
  std::vector<int> sorted{order[0], order[1], order[2]};
  std::sort(sorted.begin(), sorted.end());
  auto it = omega.find(sorted);
  long long c = it == omega.end() ? 0 : it->second;
  if (c != 1 && c != -1)
    throw std::logic_error("volume form coefficient " + std::to_string(c) +
                           " on a maximal cone; expected a unit");
  return static_cast<int>(c) * perm_sign3(order);
}

// contract the lifted volume form with every relation generator; normalized
// so that the first cone in its natural order gets sign +1
FormTerms reduced_volume_form(const LocalFan& lf) {
  const int r = lf.num_rays();
  std::vector<int> all(r);
  std::iota(all.begin(), all.end(), 0);
  FormTerms form{{all, 1}};
  RelationBasis rel = relation_lattice(lf);
  for (auto it = rel.rbegin(); it != rel.rend(); ++it) form = contract(form, *it);
  std::array<int, 3> first = lf.cone(0);
  if (omega_sign(form, first) < 0)
    for (auto& [idx, c] : form) c = -c;
  return form;
}

}  // namespace

ChartFrame chart_frame(const LocalFan& lf, int cone) {
  const std::array<int, 3>& c = lf.cone(cone);
  FormTerms omega = reduced_volume_form(lf);
  // canonical candidate: surface rays counterclockwise, vertical ray last
  std::array<int, 3> order = c;
  if (omega_sign(omega, order) != 1) std::swap(order[0], order[1]);
  int sgn = omega_sign(omega, order);
  long long d = det3(lf.ray(order[0]), lf.ray(order[1]), lf.ray(order[2]));
  // orientation by volume-form restriction must agree with the lattice
  // determinant criterion
  if (sgn != 1 || d != 1)
    throw std::logic_error("chart frame orientation mismatch: form sign " +
                           std::to_string(sgn) + ", det " + std::to_string(d));
  return ChartFrame{cone, order};
}

namespace {

using M3 = std::array<std::array<long long, 3>, 3>;

M3 frame_columns(const LocalFan& lf, const ChartFrame& fr) {
  M3 b{};
  for (int j = 0; j < 3; ++j) {
    Vec3 v = lf.ray(fr.order[j]);
    for (int i = 0; i < 3; ++i) b[i][j] = v[i];
  }
  return b;
}

long long det3m(const M3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

M3 adjugate(const M3& m) {
  M3 a{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      long long sub[2][2];
      int rr = 0;
      for (int r = 0; r < 3; ++r) {
        if (r == j) continue;
        int cc = 0;
        for (int c = 0; c < 3; ++c) {
          if (c == i) continue;
          sub[rr][cc] = m[r][c];
          ++cc;
        }
        ++rr;
      }
      long long minor = sub[0][0] * sub[1][1] - sub[0][1] * sub[1][0];
      a[i][j] = ((i + j) % 2 == 0 ? minor : -minor);
    }
  return a;
}

M3 matmul(const M3& a, const M3& b) {
  M3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

}  // namespace

MonomialMap transition(const LocalFan& lf, int from, int to) {
  if (from == to) throw NotAdjacent("a chart is not glued to itself");
  const std::array<int, 3>& ca = lf.cone(from);
  const std::array<int, 3>& cb = lf.cone(to);
  // surface rays of cone i are {i, i+1 mod r}; adjacency means sharing one
  int shared = -1;
  for (int i = 0; i < 2 && shared == -1; ++i)
    for (int j = 0; j < 2; ++j)
      if (ca[i] == cb[j]) {
        shared = ca[i];
        break;
      }
  if (shared == -1) throw NotAdjacent("cones share no surface ray");

  ChartFrame fa = chart_frame(lf, from);
  ChartFrame fb = chart_frame(lf, to);
  M3 ba = frame_columns(lf, fa);
  M3 bb = frame_columns(lf, fb);
  assert(det3m(bb) == 1);
  M3 e = matmul(adjugate(bb), ba);  // bb^{-1} * ba since det(bb) = 1

  MonomialMap mm;
  mm.from = from;
  mm.to = to;
  mm.f = self_intersection(lf.base(), shared);
  mm.exp = e;
  if (det3m(e) != 1) throw std::logic_error("transition determinant is not 1");
  return mm;
}

Fan2D fan_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("rays2d") || !j["rays2d"].is_array())
    throw BadFanJson("expected {\"rays2d\": [[x,y], ...]}");
  std::vector<Vec2> rays;
  for (const auto& e : j["rays2d"]) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      throw BadFanJson("each ray must be a pair of integers");
    long long x = e[0].get<long long>(), y = e[1].get<long long>();
    if (std::abs(x) > 1000000 || std::abs(y) > 1000000) throw BadFanJson("ray coordinate out of range");
    rays.push_back({x, y});
  }
  return Fan2D::from_rays(std::move(rays));
}

nlohmann::ordered_json fan_to_json(const Fan2D& fan) {
  nlohmann::ordered_json j;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& v : fan.rays()) arr.push_back({v[0], v[1]});
  j["rays2d"] = std::move(arr);
  return j;
}

}  // namespace localdt
