#pragma once

#include <string>
#include <vector>

namespace dcw {

// F_m(x, p, z) = log(1 - p + p e^{xz - m(1-2p) z^2/2}), the central function
// of the series toolbox, evaluated via log1p of the p-scaled expm1 term.
// Throws if the log argument is not positive (real evaluation domain).
double f_central(int m, double x, double p, double z);

// e^x/(1-p+pe^x) - 1 - (1-p)x. Quadratic in x near 0; note the quadratic
// coefficient (1-p)(1-2p)/2 vanishes at p = 1/2 and p = 1, where the residual
// is cubic.
double expan_exp_residual(double x, double p);

// Probabilists' Hermite polynomial He_n by the stable three-term recurrence
// He_{n+1} = x He_n - n He_{n-1}, He_0 = 1, He_1 = x.
double hermite(int n, double x, int max_n = 30);

// n-th Hermite coefficient of f(xi) = e^{a + b xi}, xi standard normal:
// (1/n!) E[f(xi) He_n(xi)] = b^n/n! e^{a + b^2/2}.
double hermite_coeff_exponential(double a, double b, int n, int max_n = 30);

// --- series-order verification ----------------------------------------------

enum class ClaimId { f1a, f1b, f2a, f2b, f2c, expan_exp };

const char* claim_name(ClaimId id);

struct Monomial {
  int p_pow;
  int z_pow;
  double coeff;
};

struct ResidualOrder {
  int p_pow;
  int z_pow;
};

struct FitWindow {
  double fixed;  // the frozen variable's value
  double lo, hi; // geometric scan range of the other variable
  int points;
};

struct OrderFit {
  ResidualOrder claimed;
  FitWindow z_window; // z scanned at fixed p
  double fitted_z_slope;
  bool has_p_fit; // the O(x^2) claim of expan_exp has no p-order to fit
  FitWindow p_window; // p scanned at fixed z
  double fitted_p_slope;
  bool pass;
};

struct SeriesClaim {
  ClaimId id;
  std::vector<Monomial> leading;     // stated leading terms (coeff p^i z^j)
  std::vector<ResidualOrder> orders; // claimed O(p^i z^j) residual pairs
};

// The claim's exact left side. For expan_exp the z argument is the x of the
// residual. f2a/f2b/f2c combine F_2 at arguments {+2, 0, -2}: the same
// combinations the pair-moment expansion decomposes into (b0, b12, b1).
double claim_lhs(ClaimId id, double p, double z);

// lhs minus the stated leading terms.
double claim_residual(ClaimId id, double p, double z);

SeriesClaim claim_spec(ClaimId id);

struct ClaimReport {
  ClaimId id;
  std::vector<OrderFit> fits;
  double slope_tolerance = 0.25;
  bool pass = false;
  // f2c only: its right side pz + O(pz^3) matches the odd combination
  // (F(2) - F(-2))/4, which is what `pass` certifies. The even combination
  // (F(2) + F(-2))/4 expands as (p/2) z^2 + ..., recorded here.
  bool has_alt_reading = false;
  double alt_reading_z_slope = 0;
  std::string note;
};

// Verifies one claim in its default dominance windows (slope tolerance 0.25,
// each window at least a decade wide).
ClaimReport series_order_check(ClaimId id);

std::vector<ClaimReport> verify_all_claims();

} // namespace dcw
