#include "localdt/series_json.hpp"

#include <cctype>
#include <set>

namespace localdt {

namespace {

mpz_class parse_mpz(const std::string& s) {
  if (s.empty()) throw BadSeriesJson("empty integer string");
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw BadSeriesJson("bad integer string '" + s + "'");
  for (; i < s.size(); ++i)
    if (!isdigit(static_cast<unsigned char>(s[i])))
      throw BadSeriesJson("bad integer string '" + s + "'");
  return mpz_class(s, 10);
}

}  // namespace

nlohmann::ordered_json weight_to_json(const MotivicWeight& w) {
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const auto& [a, c] : w.terms()) {
    nlohmann::ordered_json t;
    t["halfL"] = a;
    t["coeff"] = c.get_str();
    terms.push_back(std::move(t));
  }
  return terms;
}

MotivicWeight weight_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw BadSeriesJson("terms must be an array");
  MotivicWeight w;
  std::set<int> seen;
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("halfL") || !t.contains("coeff") ||
        !t["halfL"].is_number_integer() || !t["coeff"].is_string())
      throw BadSeriesJson("term must be {halfL:int, coeff:string}");
    int a = t["halfL"].get<int>();
    if (!seen.insert(a).second) throw BadSeriesJson("duplicate halfL " + std::to_string(a));
    w += MotivicWeight::half_power(a, parse_mpz(t["coeff"].get<std::string>()));
  }
  return w;
}

nlohmann::ordered_json series_to_json(const MotivicSeries& f, const std::string& var) {
  nlohmann::ordered_json j;
  j["var"] = var;
  j["order"] = f.order();
  nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
  for (int n = 0; n <= f.order(); ++n) {
    nlohmann::ordered_json c;
    c["n"] = n;
    c["terms"] = weight_to_json(f[n]);
    coeffs.push_back(std::move(c));
  }
  j["coefficients"] = std::move(coeffs);
  return j;
}

MotivicSeries series_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("var") || !j.contains("order") || !j.contains("coefficients"))
    throw BadSeriesJson("series object needs var, order, coefficients");
  if (!j["order"].is_number_integer()) throw BadSeriesJson("order must be an integer");
  int order = j["order"].get<int>();
  if (order < 0 || order > 1000) throw BadSeriesJson("order out of range");
  const auto& coeffs = j["coefficients"];
  if (!coeffs.is_array() || static_cast<int>(coeffs.size()) != order + 1)
    throw BadSeriesJson("coefficients must list every degree 0..order");
  MotivicSeries f(order);
  for (int n = 0; n <= order; ++n) {
    const auto& c = coeffs[n];
    if (!c.is_object() || !c.contains("n") || !c.contains("terms") ||
        !c["n"].is_number_integer() || c["n"].get<int>() != n)
      throw BadSeriesJson("coefficient entries must be {n, terms} in degree order");
    f.set(n, weight_from_json(c["terms"]));
  }
  return f;
}

}  // namespace localdt
