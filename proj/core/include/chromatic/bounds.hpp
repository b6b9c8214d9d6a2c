#pragma once

namespace chromatic::color {

// ln of (1+gamma)^n * [n ln n + n ln ln n + 2 ln k + 2 n (1 + ln(2 gamma))],
// evaluated in the log domain so astronomically large bounds stay exact to
// double precision. k enters only through ln k and may be huge.
struct Theorem1Bound {
  double ln_value = 0.0;
  double bracket = 0.0;        // the [...] factor, in linear scale
  bool small_n_warning = false;  // n = 2: ln ln n < 0, formula outside its regime
};

Theorem1Bound theorem1_bound(int n, double k, double gamma);

// [vol_ratio * n^(log2(ln n) + c)]^(1/n); vol_ratio = vol(difference body)/vol(K),
// which is 2^n for centrally symmetric K. Computed in the log domain.
double butler_bound(int n, double vol_ratio, double c);
// Same with ln(vol_ratio) supplied directly, for ratios past double range.
double butler_bound_ln(int n, double ln_vol_ratio, double c);

// (1 + ln max_set_size) * tau_star: the guarantee the greedy cover satisfies
// against any fractional cover value of the same instance.
double finite_run_bound(int max_set_size, double tau_star);

// Collected bound formulas evaluated for one pipeline run.
struct BoundReport {
  int n = 0;
  int k = 0;
  double gamma = 0.0;
  double delta = 0.0;
  double theorem1_ln = 0.0;       // log-domain value
  bool theorem1_small_n = false;
  double tau_star = 0.0;          // finite-instance LP value, or the measure bound
  bool tau_exact = false;         // true if tau_star came from the exact LP
  double finite_run_bound = 0.0;  // (1 + ln max_set_size) * tau_star
  double measure_bound = 0.0;
  int max_set_size = 0;
  double butler_value = 0.0;      // 0 when n < 3 (formula needs n >= 3)
  int color_count = 0;
};

}  // namespace chromatic::color
