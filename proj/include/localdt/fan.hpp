#pragma once

// Smooth complete toric surface fans, their lifts to local threefold fans,
// and the chart combinatorics: relation lattices, oriented chart frames,
// self-intersection numbers and monomial transition maps between adjacent
// charts.
//
// Conventions: 2d rays are listed counterclockwise with consecutive
// determinant +1.  The lift appends the third coordinate 1 to every ray and
// adds the vertical ray (0,0,1) last; maximal cones are the lifted triples
// (v_i, v_{i+1}, vertical).

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace localdt {

struct NotPrimitive : std::domain_error {
  explicit NotPrimitive(const std::string& what) : std::domain_error(what) {}
};
struct NotSmooth : std::domain_error {
  explicit NotSmooth(const std::string& what) : std::domain_error(what) {}
};
struct NotComplete : std::domain_error {
  explicit NotComplete(const std::string& what) : std::domain_error(what) {}
};
struct NoIntegerSolution : std::domain_error {
  explicit NoIntegerSolution(const std::string& what) : std::domain_error(what) {}
};
struct NotAdjacent : std::domain_error {
  explicit NotAdjacent(const std::string& what) : std::domain_error(what) {}
};
struct BadFanJson : std::runtime_error {
  explicit BadFanJson(const std::string& what) : std::runtime_error(what) {}
};

using Vec2 = std::array<long long, 2>;
using Vec3 = std::array<long long, 3>;

class Fan2D {
public:
  // validates: >= 3 primitive rays, consecutive det +1 (cyclically), winding
  // number exactly 1.  Throws NotPrimitive / NotSmooth / NotComplete.
  static Fan2D from_rays(std::vector<Vec2> rays);

  static Fan2D p2();                      // (1,0), (0,1), (-1,-1)
  static Fan2D hirzebruch(long long n);   // (1,0), (0,1), (-1,n), (0,-1)

  int size() const { return static_cast<int>(rays_.size()); }
  const Vec2& ray(int i) const { return rays_.at(i); }
  const std::vector<Vec2>& rays() const { return rays_; }

private:
  std::vector<Vec2> rays_;
};

// f with v_{i-1} + v_{i+1} = -f * v_i; the self-intersection of the divisor
// of ray i.  NoIntegerSolution if the system has no integer solution (cannot
// happen for a validated fan, kept as a guard).
long long self_intersection(const Fan2D& fan, int i);

class LocalFan {
public:
  static LocalFan lift(const Fan2D& base);

  const Fan2D& base() const { return base_; }
  int num_rays() const { return static_cast<int>(rays_.size()); }
  const Vec3& ray(int i) const { return rays_.at(i); }
  int vertical() const { return num_rays() - 1; }
  int num_cones() const { return static_cast<int>(cones_.size()); }
  // cone i = (i, i+1 mod r, vertical), indices into ray list
  const std::array<int, 3>& cone(int i) const { return cones_.at(i); }

private:
  Fan2D base_{Fan2D::p2()};
  std::vector<Vec3> rays_;
  std::vector<std::array<int, 3>> cones_;
};

// Basis of the lattice of integer relations sum(a_i v_i) = 0 among the
// lifted rays, rows in Hermite normal form (canonical, deterministic).
using RelationBasis = std::vector<std::vector<long long>>;
RelationBasis relation_lattice(const LocalFan& lf);

// An ordered coordinate frame for a maximal cone: the ray triple ordered so
// that the global volume form restricts with sign +1, equivalently
// det(rays in this order) = +1.  Canonical choice: vertical ray last, the
// two surface rays counterclockwise.
struct ChartFrame {
  int cone;                   // cone index
  std::array<int, 3> order;   // ray indices in frame order
};
ChartFrame chart_frame(const LocalFan& lf, int cone);

// Monomial coordinate change between the charts of two adjacent maximal
// cones: new coordinate k is prod_j old_j^{exp[k][j]}, both charts in their
// canonical frame order.  det = +1 always; NotAdjacent if the cones do not
// share a 2-face.
struct MonomialMap {
  int from = 0, to = 0;
  long long f = 0;  // self-intersection of the shared surface ray
  std::array<std::array<long long, 3>, 3> exp{};
};
MonomialMap transition(const LocalFan& lf, int from, int to);

// {"rays2d":[[1,0],[0,1],[-1,-1]]}
Fan2D fan_from_json(const nlohmann::json& j);  // BadFanJson on malformed input
nlohmann::ordered_json fan_to_json(const Fan2D& fan);

}  // namespace localdt
