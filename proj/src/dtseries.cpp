#include "localdt/dtseries.hpp"

#include <algorithm>
#include <mutex>

namespace localdt {

MotivicWeight surface_class(const Surface& s) {
  MotivicWeight w = MotivicWeight::half_power(4);
  w += MotivicWeight::half_power(2, s.kind == SurfaceKind::P2 ? 1 : 2);
  w += MotivicWeight::one();
  return w;
}

MotivicWeight omega_class(const Surface& s) {
  return MotivicWeight::half_power(2) * surface_class(s);
}

MotivicSeries punctual_kernel(int order) {
  if (order < 1) throw OutOfRange("punctual kernel needs order >= 1");
  MotivicSeries k(order);
  for (int n = 1; n <= order; ++n) {
    MotivicWeight w;
    for (int j = 0; j < n; ++j) w += MotivicWeight::half_power(2 * j - n - 2);
    k.set(n, std::move(w));
  }
  return k;
}

MotivicSeries punctual_series(int order) {
  static std::mutex mu;
  static std::map<int, MotivicSeries> cache;
  std::scoped_lock lock(mu);
  auto it = cache.find(order);
  if (it == cache.end())
    it = cache.emplace(order, plethystic_exp(punctual_kernel(std::max(order, 1)).truncate(order)))
             .first;
  return it->second;
}

MotivicSeries hilb_series_closed(const Surface& s, int order) {
  if (order == 0) return MotivicSeries::unit(0);
  return plethystic_exp(omega_class(s) * punctual_kernel(order));
}

MotivicSeries hilb_series_power(const MotivicWeight& x, int order) {
  return power_pow(punctual_series(order), x);
}

namespace {

void enumerate_partitions(int remaining, int max_part, PartitionMults& cur,
                          std::vector<PartitionMults>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    ++cur[part];
    enumerate_partitions(remaining - part, part, cur, out);
    if (--cur[part] == 0) cur.erase(part);
  }
}

}  // namespace

std::vector<PartitionMults> partitions_of(int n) {
  if (n < 0) throw OutOfRange("partitions of a negative integer");
  std::vector<PartitionMults> out;
  PartitionMults cur;
  enumerate_partitions(n, n == 0 ? 1 : n, cur, out);
  return out;
}

MotivicWeight strata_class(const MotivicWeight& x, const PartitionMults& gamma, int order) {
  int weight = 0;
  int top = 0;
  for (auto [i, m] : gamma) {
    if (i < 1 || m < 1) throw OutOfRange("partition entries must be positive");
    weight += i * m;
    top = std::max(top, i);
  }
  if (weight > order) throw OutOfRange("partition weight exceeds the series order");

  // coefficient of prod s_i^{gamma_i} in Exp(x Log(1 + sum F_i s_i)); the
  // bound only needs to reach the weight of gamma itself
  const int bound = weight;
  MotivicSeries z = punctual_series(bound);
  MultiSeries f = MultiSeries::unit(bound);
  for (int i = 1; i <= bound; ++i) {
    ExpVec g(i, 0);
    g[i - 1] = 1;
    f.set(g, z[i]);
  }
  MultiSeries expanded = multi_exp(x * multi_log(f));

  ExpVec key(top, 0);
  for (auto [i, m] : gamma) key[i - 1] = m;
  return expanded.coeff(key);
}

MotivicWeight strata_sum(const MotivicWeight& x, int n, int order) {
  if (n > order) throw OutOfRange("degree exceeds the series order");
  MotivicWeight total;
  for (const PartitionMults& gamma : partitions_of(n)) total += strata_class(x, gamma, order);
  return total;
}

namespace {

// heights h(r, c) weakly decreasing along rows and columns; rows are built
// top-down, each row a partition dominated pointwise by the previous one
void count_rows(int remaining, const std::vector<int>& prev, mpz_class& acc) {
  if (remaining == 0) {
    ++acc;
    return;
  }
  if (prev.empty()) return;
  // enumerate the next row directly: nonincreasing, row[c] <= prev[c]
  std::vector<int> row;
  auto rec = [&](auto&& self, int c, int used, int cap) -> void {
    if (used > remaining) return;
    if (used > 0) {
      std::vector<int> nrow(row.begin(), row.begin() + c);
      count_rows(remaining - used, nrow, acc);
    }
    if (c >= static_cast<int>(prev.size())) return;
    int hmax = std::min(cap, prev[c]);
    for (int h = 1; h <= hmax; ++h) {
      row.resize(c + 1);
      row[c] = h;
      self(self, c + 1, used + h, h);
    }
  };
  rec(rec, 0, 0, remaining);
}

}  // namespace

mpz_class plane_partitions(int n) {
  if (n < 0 || n > 12) throw OutOfRange("plane partition count supported for 0 <= n <= 12");
  if (n == 0) return 1;
  mpz_class acc = 0;
  std::vector<int> unbounded(n, n);  // first row unconstrained from above
  count_rows(n, unbounded, acc);
  return acc;
}

std::vector<mpz_class> macmahon_power(int chi, int order) {
  if (chi < 1) throw OutOfRange("chi must be positive");
  if (order < 0 || order > 10) throw OutOfRange("MacMahon powers supported to order 10");
  std::vector<mpz_class> base(order + 1);
  for (int n = 0; n <= order; ++n) base[n] = plane_partitions(n);
  std::vector<mpz_class> acc(order + 1);
  acc[0] = 1;
  for (int rep = 0; rep < chi; ++rep) {
    std::vector<mpz_class> next(order + 1);
    for (int i = 0; i <= order; ++i)
      for (int j = 0; i + j <= order; ++j) next[i + j] += acc[i] * base[j];
    acc = std::move(next);
  }
  return acc;
}

std::vector<mpz_class> euler_specialize_series(const MotivicSeries& f) {
  std::vector<mpz_class> out;
  out.reserve(f.order() + 1);
  for (int n = 0; n <= f.order(); ++n) {
    mpq_class v = f[n].specialize(mpq_class(-1));
    if (v.get_den() != 1) throw NonIntegral("specialized coefficient is not an integer");
    out.push_back(v.get_num());
  }
  return out;
}

}  // namespace localdt
