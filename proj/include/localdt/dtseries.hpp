#pragma once

// Motivic partition functions of Hilbert schemes of points on the local
// surfaces omega_S (S = P2 or a Hirzebruch surface F_n), assembled from the
// punctual kernel over C^3, plus the stratification route and the Euler
// characteristic oracles used to cross-check them.

#include "localdt/motivic.hpp"
#include "localdt/multiseries.hpp"

#include <map>
#include <vector>

namespace localdt {

struct NonIntegral : std::domain_error {
  explicit NonIntegral(const std::string& what) : std::domain_error(what) {}
};

enum class SurfaceKind { P2, Hirzebruch };
struct Surface {
  SurfaceKind kind = SurfaceKind::P2;
  long long n = 0;  // Hirzebruch degree, ignored for P2
  static Surface p2() { return {SurfaceKind::P2, 0}; }
  static Surface fn(long long n) { return {SurfaceKind::Hirzebruch, n}; }
};

// [P2] = L^2 + L + 1, [F_n] = L^2 + 2L + 1 (independent of n)
MotivicWeight surface_class(const Surface& s);
// class of the total space of the canonical bundle: L * [S]
MotivicWeight omega_class(const Surface& s);

// K(t) = L^{-3/2} t / ((1 - L^{1/2} t)(1 - L^{-1/2} t)); the n-th coefficient
// is sum_{j=0}^{n-1} L^{(2j - n - 2)/2}
MotivicSeries punctual_kernel(int order);

// Z_0(t) = Exp(K), the punctual series over C^3 (memoized per order)
MotivicSeries punctual_series(int order);

// Exp([omega_S] K): closed form for the local-surface partition function
MotivicSeries hilb_series_closed(const Surface& s, int order);

// Z_0(t)^x via Exp(x Log Z_0): the power-structure route, valid for any
// effective class x (x = L^3 recovers C^3)
MotivicSeries hilb_series_power(const MotivicWeight& x, int order);

// partitions of n as multiplicity maps {part -> count}, deterministic order
using PartitionMults = std::map<int, int>;
std::vector<PartitionMults> partitions_of(int n);

// class of the stratum of configurations with gamma_i clusters of length i:
// the coefficient of prod s_i^{gamma_i} in Exp(x Log(1 + sum F_i s_i)),
// F_i = [t^i] Z_0.  Multivariate route, independent of the univariate one.
// OutOfRange if the partition weight exceeds the order.
MotivicWeight strata_class(const MotivicWeight& x, const PartitionMults& gamma, int order);

// sum over partitions of n; equals the t^n coefficient of hilb_series_power
MotivicWeight strata_sum(const MotivicWeight& x, int n, int order);

// number of plane partitions of n by direct enumeration of monotone height
// functions; OutOfRange unless 0 <= n <= 12
mpz_class plane_partitions(int n);

// coefficients 0..order of M(t)^chi, the chi-fold convolution of the
// enumerated plane-partition sequence; OutOfRange unless chi >= 1 and
// order <= 10.  Deliberately independent of the motivic pipeline.
std::vector<mpz_class> macmahon_power(int chi, int order);

// coefficients at L^{1/2} = -1; NonIntegral if a denominator survives
std::vector<mpz_class> euler_specialize_series(const MotivicSeries& f);

}  // namespace localdt
