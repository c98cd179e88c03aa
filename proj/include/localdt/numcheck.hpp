#pragma once

// Numeric verification layer: trace polynomials are evaluated at random
// tuples of commuting matrices together with analytic gradients, and a
// polynomial lying in the square of the commutator ideal must vanish to
// second order there (value and all matrix gradients within tolerance).
//
// Trials are independent and deterministic per seed; the loop over trials
// runs either serially or OpenMP-parallel with bit-identical reports.

#include "localdt/traces.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

namespace localdt {

struct IllConditioned : std::runtime_error {
  explicit IllConditioned(const std::string& what) : std::runtime_error(what) {}
};

using Mat = Eigen::MatrixXcd;

struct MatrixPoint {
  int n = 0;
  std::map<Sym, Mat> m;
};

// Simultaneously diagonalizable tuple G diag(d) G^-1 for the given symbols:
// shared well-conditioned conjugator, per-symbol diagonals with distinct
// nonzero entries.  Every matrix is invertible and all pairs commute.
MatrixPoint random_commuting_tuple(int n, std::uint64_t seed, const std::vector<Sym>& symbols);
MatrixPoint random_commuting_triple(int n, std::uint64_t seed);  // X, Y, Z

struct EvalResult {
  std::complex<double> value{};
  std::map<Sym, Mat> grad;  // d value / d entries, one matrix per symbol present
  double scale = 1.0;       // largest monomial magnitude |c| * prod ||powers||_F
  double grad_norm = 0.0;   // max over symbols of Frobenius norm
};
EvalResult eval_and_gradient(const TracePoly& p, const MatrixPoint& pt);

struct RunPolicy {
  bool parallel = true;
};

struct CheckReport {
  bool pass = false;
  int trials = 0;
  double tol = 0.0;
  double max_value_residual = 0.0;  // max over trials of |value| / scale
  double max_grad_residual = 0.0;   // max over trials of grad_norm / scale
  int value_failures = 0;
  int grad_failures = 0;
  std::uint64_t first_failing_seed = 0;  // valid when pass == false
  int resamples = 0;                     // ill-conditioned draws discarded
};

// Draws `trials` random commuting triples (seed0, seed0+1, ...) at size n and
// requires |value| <= tol*scale and grad_norm <= tol*scale on every one.
CheckReport second_order_check(const TracePoly& p, int n, int trials, double tol,
                               std::uint64_t seed0, RunPolicy policy = {});

// Gluing discrepancy for the Hirzebruch-side chart change
// (X1, X2, P) -> (X1, X2 A^-1, A^2 P) with A = 1 + eps X2:
//   tr([X1, X2 A^-1] A^2 P) - tr([X1, X2] P)
//     = eps tr(X1 X2^2 P) + tr(X2 X1 P) - tr(X2 A^-1 X1 A^2 P),
// evaluated with analytic gradients at random commuting (X1, X2, P).
// Draws with nearly singular A are resampled (counted; IllConditioned after
// a bounded number of retries).  eps = 0 short-circuits to an exact zero.
CheckReport fn_gluing_check(int n, double eps, int trials, double tol,
                            std::uint64_t seed0, RunPolicy policy = {});

}  // namespace localdt
