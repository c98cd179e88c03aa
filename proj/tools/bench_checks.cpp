// Times the numeric verification loops serially and OpenMP-parallel on
// identical seeds, and insists the two reports agree bit for bit.

#include "localdt/numcheck.hpp"

#include <chrono>
#include <cstdio>

using namespace localdt;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool same_report(const CheckReport& a, const CheckReport& b) {
  return a.pass == b.pass && a.max_value_residual == b.max_value_residual &&
         a.max_grad_residual == b.max_grad_residual && a.value_failures == b.value_failures &&
         a.grad_failures == b.grad_failures && a.resamples == b.resamples;
}

}  // namespace

int main() {
  TracePoly delta = transition_potential(2) - potential();
  int exit_code = 0;

  std::printf("second_order_check on the f=2 pullback discrepancy\n");
  for (int n : {4, 8, 12}) {
    const int trials = 400;
    auto t0 = std::chrono::steady_clock::now();
    CheckReport ser = second_order_check(delta, n, trials, 1e-8, 99, RunPolicy{false});
    double ts = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    CheckReport par = second_order_check(delta, n, trials, 1e-8, 99, RunPolicy{true});
    double tp = seconds_since(t0);
    bool same = same_report(ser, par);
    if (!same || !ser.pass) exit_code = 1;
    std::printf("  n=%2d trials=%d  serial %7.3fs  parallel %7.3fs  speedup %5.2fx  %s\n", n,
                trials, ts, tp, ts / tp, same ? (ser.pass ? "ok" : "CHECK FAILED") : "MISMATCH");
  }

  std::printf("fn_gluing_check at eps = 1/2\n");
  for (int n : {4, 8}) {
    const int trials = 400;
    auto t0 = std::chrono::steady_clock::now();
    CheckReport ser = fn_gluing_check(n, 0.5, trials, 1e-8, 123, RunPolicy{false});
    double ts = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    CheckReport par = fn_gluing_check(n, 0.5, trials, 1e-8, 123, RunPolicy{true});
    double tp = seconds_since(t0);
    bool same = same_report(ser, par);
    if (!same || !ser.pass) exit_code = 1;
    std::printf("  n=%2d trials=%d  serial %7.3fs  parallel %7.3fs  speedup %5.2fx  %s\n", n,
                trials, ts, tp, ts / tp, same ? (ser.pass ? "ok" : "CHECK FAILED") : "MISMATCH");
  }
  return exit_code;
}
