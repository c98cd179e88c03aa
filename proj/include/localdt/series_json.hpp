#pragma once

// JSON wire format for motivic series:
//   {"var":"t","order":N,"coefficients":[
//     {"n":0,"terms":[{"halfL":0,"coeff":"1"}]}, ...]}
// Every degree 0..N is listed; terms are sorted by halfL and coefficients are
// decimal strings so arbitrary-precision values survive the round trip.

#include "localdt/motivic.hpp"

#include <string>

// vendored single header, defines nlohmann::json / ordered_json
#include "json.hpp"

namespace localdt {

struct BadSeriesJson : std::runtime_error {
  explicit BadSeriesJson(const std::string& what) : std::runtime_error(what) {}
};

nlohmann::ordered_json weight_to_json(const MotivicWeight& w);
MotivicWeight weight_from_json(const nlohmann::json& j);

nlohmann::ordered_json series_to_json(const MotivicSeries& f, const std::string& var = "t");
MotivicSeries series_from_json(const nlohmann::json& j);

}  // namespace localdt
