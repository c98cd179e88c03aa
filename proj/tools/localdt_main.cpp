// localdt: motivic Donaldson-Thomas series of Hilbert schemes of points on
// local toric surfaces, plus the chart-gluing verification tools.
//
// Exit codes: 0 success, 2 usage error, 3 internal invariant violation,
// 4 verification failure.

#include "CLI11.hpp"

#include "localdt/cache.hpp"
#include "localdt/dtseries.hpp"
#include "localdt/fan.hpp"
#include "localdt/numcheck.hpp"
#include "localdt/series_json.hpp"
#include "localdt/traces.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace localdt;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;
constexpr int kExitVerify = 4;

constexpr std::uint64_t kDefaultSeed = 20240801;

int usage_error(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return kExitUsage;
}

struct Target {
  enum Kind { P2, FN, C3 } kind = P2;
  long long k = 0;  // Hirzebruch degree
};

bool parse_target(const std::string& s, Target& t) {
  if (s == "p2") {
    t = {Target::P2, 0};
    return true;
  }
  if (s == "c3") {
    t = {Target::C3, 0};
    return true;
  }
  if (s.rfind("fn:", 0) == 0) {
    try {
      size_t used = 0;
      long long k = std::stoll(s.substr(3), &used);
      if (used != s.size() - 3 || k < 0) return false;
      t = {Target::FN, k};
      return true;
    } catch (const std::exception&) {
      return false;
    }
  }
  return false;
}

const char* target_id(const Target& t) {
  switch (t.kind) {
    case Target::P2: return "p2";
    case Target::FN: return "fn";
    case Target::C3: return "c3";
  }
  return "?";
}

// the exponent class: [omega_S] for surfaces, L^3 for the affine space
MotivicWeight target_class(const Target& t) {
  switch (t.kind) {
    case Target::P2: return omega_class(Surface::p2());
    case Target::FN: return omega_class(Surface::fn(t.k));
    case Target::C3: return MotivicWeight::half_power(6);
  }
  return MotivicWeight::zero();
}

MotivicSeries compute_series(const Target& t, int order) {
  switch (t.kind) {
    case Target::P2: return hilb_series_closed(Surface::p2(), order);
    case Target::FN: return hilb_series_closed(Surface::fn(t.k), order);
    case Target::C3: return hilb_series_power(MotivicWeight::half_power(6), order);
  }
  throw std::logic_error("unreachable target kind");
}

MotivicSeries cached_series(const std::string& kind, int order, bool no_cache,
                            const std::function<MotivicSeries()>& compute) {
  if (!no_cache) {
    if (auto hit = cache_lookup(kind, order)) return *hit;
  }
  MotivicSeries s = compute();
  if (!no_cache) cache_store(kind, s);
  return s;
}

std::string join_mpz(const std::vector<mpz_class>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i].get_str();
  }
  return out;
}

int print_series(const MotivicSeries& s, const std::string& format,
                 const std::string& specialize) {
  if (specialize == "euler") {
    std::vector<mpz_class> e = euler_specialize_series(s);
    if (format == "json") {
      nlohmann::ordered_json j;
      j["order"] = s.order();
      auto& arr = j["euler"] = nlohmann::ordered_json::array();
      for (const mpz_class& v : e) arr.push_back(v.get_str());
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << join_mpz(e) << "\n";
    }
    return kExitOk;
  }
  if (format == "json")
    std::cout << series_to_json(s).dump(2) << "\n";
  else
    std::cout << s.str("t") << "\n";
  return kExitOk;
}

std::string gamma_plain(const PartitionMults& gamma) {
  if (gamma.empty()) return "empty";
  std::string out;
  for (auto it = gamma.rbegin(); it != gamma.rend(); ++it)
    for (int m = 0; m < it->second; ++m) {
      if (!out.empty()) out += "+";
      out += std::to_string(it->first);
    }
  return out;
}

int run_strata(const Target& t, int n, const std::string& format) {
  MotivicWeight x = target_class(t);
  MotivicSeries route = hilb_series_power(x, n);
  std::vector<PartitionMults> parts = partitions_of(n);

  MotivicWeight total;
  std::vector<MotivicWeight> classes;
  classes.reserve(parts.size());
  for (const PartitionMults& g : parts) {
    classes.push_back(strata_class(x, g, n));
    total += classes.back();
  }
  MotivicWeight residual = total - route[n];

  if (format == "json") {
    nlohmann::ordered_json j;
    j["surface"] = target_id(t);
    j["n"] = n;
    auto& arr = j["strata"] = nlohmann::ordered_json::array();
    for (size_t i = 0; i < parts.size(); ++i) {
      nlohmann::ordered_json rec;
      auto& gj = rec["gamma"] = nlohmann::ordered_json::object();
      for (auto [part, mult] : parts[i]) gj[std::to_string(part)] = mult;
      rec["class"] = weight_to_json(classes[i]);
      arr.push_back(std::move(rec));
    }
    j["total"] = weight_to_json(total);
    j["residual"] = weight_to_json(residual);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "strata of n = " << n << " on " << target_id(t) << "\n";
    for (size_t i = 0; i < parts.size(); ++i)
      std::cout << "  gamma " << gamma_plain(parts[i]) << ": " << classes[i].str() << "\n";
    std::cout << "total: " << total.str() << "\n";
    std::cout << "series coefficient: " << route[n].str() << "\n";
    std::cout << "residual: " << residual.str() << "\n";
  }
  return residual.is_zero() ? kExitOk : kExitInternal;
}

std::string vec2_str(const Vec2& v) {
  return "(" + std::to_string(v[0]) + "," + std::to_string(v[1]) + ")";
}
std::string vec3_str(const Vec3& v) {
  return "(" + std::to_string(v[0]) + "," + std::to_string(v[1]) + "," + std::to_string(v[2]) +
         ")";
}

int run_fan(const Fan2D& fan, const std::string& format) {
  LocalFan lf = LocalFan::lift(fan);
  RelationBasis rel = relation_lattice(lf);
  const int r = fan.size();

  std::vector<long long> self(r);
  for (int i = 0; i < r; ++i) self[i] = self_intersection(fan, i);
  std::vector<ChartFrame> frames;
  std::vector<MonomialMap> trans;
  for (int i = 0; i < lf.num_cones(); ++i) {
    frames.push_back(chart_frame(lf, i));
    trans.push_back(transition(lf, i, (i + 1) % lf.num_cones()));
  }

  if (format == "json") {
    nlohmann::ordered_json j = fan_to_json(fan);
    auto& lifted = j["lifted_rays"] = nlohmann::ordered_json::array();
    for (int i = 0; i < lf.num_rays(); ++i) {
      const Vec3& v = lf.ray(i);
      lifted.push_back({v[0], v[1], v[2]});
    }
    j["relation_basis"] = rel;
    j["self_intersections"] = self;
    auto& fr = j["frames"] = nlohmann::ordered_json::array();
    for (const ChartFrame& f : frames)
      fr.push_back({{"cone", f.cone}, {"order", f.order}});
    auto& tr = j["transitions"] = nlohmann::ordered_json::array();
    for (const MonomialMap& m : trans) {
      nlohmann::ordered_json rec;
      rec["from"] = m.from;
      rec["to"] = m.to;
      rec["f"] = m.f;
      rec["exponents"] = m.exp;
      tr.push_back(std::move(rec));
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "rays:";
    for (const Vec2& v : fan.rays()) std::cout << " " << vec2_str(v);
    std::cout << "\nlifted rays:";
    for (int i = 0; i < lf.num_rays(); ++i) std::cout << " " << vec3_str(lf.ray(i));
    std::cout << "\nrelation basis:";
    for (const auto& row : rel) {
      std::cout << " [";
      for (size_t i = 0; i < row.size(); ++i) std::cout << (i ? " " : "") << row[i];
      std::cout << "]";
    }
    std::cout << "\nself-intersections:";
    for (long long s : self) std::cout << " " << s;
    std::cout << "\n";
    for (const ChartFrame& f : frames)
      std::cout << "frame cone " << f.cone << ": rays " << f.order[0] << " " << f.order[1]
                << " " << f.order[2] << "\n";
    for (const MonomialMap& m : trans) {
      std::cout << "transition " << m.from << " -> " << m.to << ": f " << m.f << ", exponents [";
      for (int row = 0; row < 3; ++row) {
        std::cout << (row ? ",[" : "[") << m.exp[row][0] << "," << m.exp[row][1] << ","
                  << m.exp[row][2] << "]";
      }
      std::cout << "]\n";
    }
  }
  return kExitOk;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

int run_verify_gluing(long long fmin, long long fmax, int size, int trials, std::uint64_t seed,
                      double tol, bool serial) {
  RunPolicy policy{!serial};
  bool all_pass = true;

  std::cout << "   f  terms  exact  value-resid  grad-resid  result\n";
  for (long long f = fmin; f <= fmax; ++f) {
    I2Certificate cert = build_certificate(f);
    TracePoly delta = transition_potential(f) - potential();
    bool exact = expand_certificate(cert) == delta;
    std::uint64_t row_seed = seed + static_cast<std::uint64_t>(f - fmin) * 1000003ull;
    CheckReport rep = second_order_check(delta, size, trials, tol, row_seed, policy);
    bool ok = exact && rep.pass;
    all_pass = all_pass && ok;
    std::printf("%4lld  %5zu  %-5s  %11s  %10s  %s\n", f, cert.size(), exact ? "yes" : "NO",
                sci(rep.max_value_residual).c_str(), sci(rep.max_grad_residual).c_str(),
                ok ? "pass" : "FAIL");
    if (!rep.pass)
      std::printf("      first failing seed: %llu\n",
                  static_cast<unsigned long long>(rep.first_failing_seed));
  }

  for (double eps : {0.25, 0.5, 1.0}) {
    std::uint64_t row_seed = seed + 777777ull + static_cast<std::uint64_t>(eps * 8.0);
    CheckReport rep = fn_gluing_check(size, eps, trials, tol, row_seed, policy);
    all_pass = all_pass && rep.pass;
    std::printf("fn-gluing eps %-5g value %s grad %s resamples %d  %s\n", eps,
                sci(rep.max_value_residual).c_str(), sci(rep.max_grad_residual).c_str(),
                rep.resamples, rep.pass ? "pass" : "FAIL");
    if (!rep.pass)
      std::printf("      first failing seed: %llu\n",
                  static_cast<unsigned long long>(rep.first_failing_seed));
  }
  return all_pass ? kExitOk : kExitVerify;
}

int run_verify_poly(const std::string& expr, int size, int trials, std::uint64_t seed, double tol,
                    bool serial) {
  TracePoly p;
  try {
    p = parse_trace_poly(expr);
  } catch (const TraceParseError& e) {
    return usage_error(std::string("cannot parse --poly: ") + e.what());
  }
  CheckReport rep = second_order_check(p, size, trials, tol, seed, RunPolicy{!serial});
  std::cout << "poly: " << p.str() << "\n";
  std::printf("value-resid %s (failures %d/%d)  grad-resid %s (failures %d/%d)  %s\n",
              sci(rep.max_value_residual).c_str(), rep.value_failures, rep.trials,
              sci(rep.max_grad_residual).c_str(), rep.grad_failures, rep.trials,
              rep.pass ? "pass" : "FAIL");
  if (!rep.pass)
    std::printf("first failing seed: %llu\n",
                static_cast<unsigned long long>(rep.first_failing_seed));
  return rep.pass ? kExitOk : kExitVerify;
}

int run_euler_check(const Target& t, int order) {
  MotivicSeries s = compute_series(t, order);
  std::vector<mpz_class> euler = euler_specialize_series(s);
  int chi = t.kind == Target::P2 ? 3 : t.kind == Target::FN ? 4 : 1;
  std::vector<mpz_class> mac = macmahon_power(chi, order);

  bool alternating = true, plain_conv = true;
  for (int n = 0; n <= order; ++n) {
    mpz_class signed_mac = n % 2 == 0 ? mac[n] : -mac[n];
    if (euler[n] != signed_mac) alternating = false;
    if (euler[n] != mac[n]) plain_conv = false;
  }

  std::cout << "surface " << target_id(t) << ", chi " << chi << "\n";
  std::cout << "   n  euler  (-1)^n M^chi\n";
  for (int n = 0; n <= order; ++n) {
    mpz_class signed_mac = n % 2 == 0 ? mac[n] : -mac[n];
    std::printf("%4d  %s  %s\n", n, euler[n].get_str().c_str(), signed_mac.get_str().c_str());
  }
  if (alternating)
    std::cout << "sign convention: alternating (matches (-1)^n M(t)^chi)\n";
  else if (plain_conv)
    std::cout << "sign convention: plain (matches M(t)^chi without signs)\n";
  else {
    std::cout << "MISMATCH: no uniform sign convention\n";
    return kExitVerify;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"motivic DT series of Hilbert schemes on local toric surfaces"};
  app.require_subcommand(1);

  std::string surface = "p2";
  int order = 8;
  std::string format = "plain";
  std::string specialize = "none";
  bool no_cache = false;

  auto add_surface = [&](CLI::App* cmd) {
    cmd->add_option("--surface", surface, "p2, fn:<k>, or c3")->capture_default_str();
  };
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"plain", "json"}))
        ->capture_default_str();
  };

  CLI::App* series = app.add_subcommand("series", "print a local-surface DT series");
  add_surface(series);
  series->add_option("--order", order, "truncation order")->check(CLI::Range(0, 16))
      ->capture_default_str();
  add_format(series);
  series->add_option("--specialize", specialize, "none or euler")
      ->check(CLI::IsMember({"none", "euler"}))
      ->capture_default_str();
  series->add_flag("--no-cache", no_cache, "bypass the series cache");

  CLI::App* punctual = app.add_subcommand("punctual", "print the punctual series over C^3");
  punctual->add_option("--order", order, "truncation order")->check(CLI::Range(0, 16))
      ->capture_default_str();
  add_format(punctual);
  punctual->add_option("--specialize", specialize, "none or euler")
      ->check(CLI::IsMember({"none", "euler"}))
      ->capture_default_str();
  punctual->add_flag("--no-cache", no_cache, "bypass the series cache");

  int npoints = 2;
  CLI::App* strata = app.add_subcommand("strata", "per-partition stratum classes");
  add_surface(strata);
  strata->add_option("-n,--points", npoints, "number of points")->check(CLI::Range(0, 8))
      ->capture_default_str();
  add_format(strata);

  std::string fan_file;
  CLI::App* fan = app.add_subcommand("fan", "toric atlas report");
  add_surface(fan);
  fan->add_option("--file", fan_file, "fan JSON file ({\"rays2d\": ...})");
  add_format(fan);

  std::string frange = "-3..3";
  int size = 3;
  int trials = 50;
  std::uint64_t seed = kDefaultSeed;
  double tol = 1e-8;
  bool serial = false;
  std::string poly;
  CLI::App* verify = app.add_subcommand("verify-gluing", "chart-gluing trace identities");
  verify->add_option("--f", frange, "inclusive range a..b of transition exponents")
      ->capture_default_str();
  verify->add_option("--size", size, "matrix size")->check(CLI::Range(1, 16))
      ->capture_default_str();
  verify->add_option("--trials", trials, "random trials per check")->check(CLI::Range(1, 100000))
      ->capture_default_str();
  verify->add_option("--seed", seed, "base seed")->capture_default_str();
  verify->add_option("--tol", tol, "relative tolerance")->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify->add_flag("--serial", serial, "disable parallel trials");
  verify->add_option("--poly", poly, "check a trace polynomial instead, e.g. 'tr(XYZ)-tr(YXZ)'");

  CLI::App* euler = app.add_subcommand("euler-check", "Euler specialization vs. MacMahon powers");
  add_surface(euler);
  euler->add_option("--order", order, "truncation order")->check(CLI::Range(0, 10))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Target t;
    if (!parse_target(surface, t)) return usage_error("unknown surface '" + surface + "'");

    if (app.got_subcommand(series)) {
      MotivicSeries s = cached_series(target_id(t), order, no_cache,
                                      [&] { return compute_series(t, order); });
      return print_series(s, format, specialize);
    }
    if (app.got_subcommand(punctual)) {
      MotivicSeries s =
          cached_series("punctual", order, no_cache, [&] { return punctual_series(order); });
      return print_series(s, format, specialize);
    }
    if (app.got_subcommand(strata)) return run_strata(t, npoints, format);
    if (app.got_subcommand(fan)) {
      if (!fan_file.empty()) {
        std::ifstream in(fan_file);
        if (!in) return usage_error("cannot open " + fan_file);
        nlohmann::json j;
        try {
          in >> j;
        } catch (const nlohmann::json::exception& e) {
          return usage_error(std::string("bad fan JSON: ") + e.what());
        }
        try {
          return run_fan(fan_from_json(j), format);
        } catch (const std::domain_error& e) {  // NotPrimitive, NotSmooth, NotComplete
          return usage_error(std::string("invalid fan: ") + e.what());
        } catch (const BadFanJson& e) {
          return usage_error(std::string("bad fan JSON: ") + e.what());
        }
      }
      if (t.kind == Target::C3) return usage_error("fan requires a surface (p2 or fn:<k>)");
      return run_fan(t.kind == Target::P2 ? Fan2D::p2() : Fan2D::hirzebruch(t.k), format);
    }
    if (app.got_subcommand(verify)) {
      if (!poly.empty()) return run_verify_poly(poly, size, trials, seed, tol, serial);
      size_t dots = frange.find("..");
      if (dots == std::string::npos)
        return usage_error("--f expects a range a..b, got '" + frange + "'");
      long long fmin = 0, fmax = 0;
      try {
        size_t used = 0;
        fmin = std::stoll(frange.substr(0, dots), &used);
        if (used != dots) throw std::invalid_argument(frange);
        std::string tail = frange.substr(dots + 2);
        fmax = std::stoll(tail, &used);
        if (used != tail.size()) throw std::invalid_argument(frange);
      } catch (const std::exception&) {
        return usage_error("--f expects a range a..b, got '" + frange + "'");
      }
      if (fmin > fmax) return usage_error("empty --f range");
      if (fmax - fmin > 100) return usage_error("--f range too wide (limit 100)");
      return run_verify_gluing(fmin, fmax, size, trials, seed, tol, serial);
    }
    if (app.got_subcommand(euler)) return run_euler_check(t, order);
    return usage_error("no subcommand");
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
