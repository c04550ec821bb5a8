#include "dcw/expansions.hpp"

#include <cmath>
#include <stdexcept>

#include "dcw/stats.hpp"

namespace dcw {

double f_central(int m, double x, double p, double z) {
  const double expo = x * z - m * (1.0 - 2.0 * p) * z * z / 2.0;
  const double arg = p * std::expm1(expo);
  if (arg <= -1.0)
    throw std::domain_error("f_central: nonpositive log argument");
  return std::log1p(arg);
}

double expan_exp_residual(double x, double p) {
  const double denom = 1.0 - p + p * std::exp(x);
  if (denom == 0.0) throw std::domain_error("expan_exp: vanishing denominator");
  // e^x/denom - 1 = (1-p) expm1(x) / denom, exact rearrangement.
  return (1.0 - p) * std::expm1(x) / denom - (1.0 - p) * x;
}

double hermite(int n, double x, int max_n) {
  if (n < 0) throw std::invalid_argument("hermite: n must be >= 0");
  if (n > max_n) throw std::length_error("hermite: n exceeds configured max");
  if (n == 0) return 1.0;
  double prev = 1.0, cur = x;
  for (int j = 1; j < n; ++j) {
    const double next = x * cur - j * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double hermite_coeff_exponential(double a, double b, int n, int max_n) {
  if (n < 0) throw std::invalid_argument("hermite_coeff: n must be >= 0");
  if (n > max_n)
    throw std::length_error("hermite_coeff: n exceeds configured max");
  const double envelope = a + b * b / 2.0;
  if (n == 0) return std::exp(envelope);
  if (b == 0.0) return 0.0;
  const double mag =
      std::exp(n * std::log(std::abs(b)) - std::lgamma(n + 1.0) + envelope);
  return (b < 0.0 && (n % 2)) ? -mag : mag;
}

// --- claims ------------------------------------------------------------------

const char* claim_name(ClaimId id) {
  switch (id) {
    case ClaimId::f1a: return "f1a";
    case ClaimId::f1b: return "f1b";
    case ClaimId::f2a: return "f2a";
    case ClaimId::f2b: return "f2b";
    case ClaimId::f2c: return "f2c";
    case ClaimId::expan_exp: return "expan_exp";
  }
  return "?";
}

double claim_lhs(ClaimId id, double p, double z) {
  switch (id) {
    case ClaimId::f1a:
      return (f_central(1, 1, p, z) + f_central(1, -1, p, z)) / 2.0;
    case ClaimId::f1b:
      return (f_central(1, 1, p, z) - f_central(1, -1, p, z)) / 2.0;
    case ClaimId::f2a:
      return (f_central(2, 2, p, z) + f_central(2, -2, p, z) +
              2.0 * f_central(2, 0, p, z)) /
             4.0;
    case ClaimId::f2b:
      return (f_central(2, 2, p, z) + f_central(2, -2, p, z) -
              2.0 * f_central(2, 0, p, z)) /
             4.0;
    case ClaimId::f2c:
      return (f_central(2, 2, p, z) - f_central(2, -2, p, z)) / 4.0;
    case ClaimId::expan_exp: {
      const double denom = 1.0 - p + p * std::exp(z);
      return (1.0 - p) * std::expm1(z) / denom;
    }
  }
  throw std::invalid_argument("unknown claim");
}

SeriesClaim claim_spec(ClaimId id) {
  switch (id) {
    case ClaimId::f1a:
      return {id,
              {{2, 2, 0.5}, {1, 4, -1.0 / 12.0}},
              {{2, 4}, {1, 6}}};
    case ClaimId::f1b:
      return {id, {{1, 1, 1.0}}, {{1, 3}}};
    case ClaimId::f2a:
      return {id,
              {{2, 2, 1.0}, {1, 4, -1.0 / 6.0}},
              {{2, 4}, {1, 6}}};
    case ClaimId::f2b:
      // p(1-p) z^2 = p z^2 - p^2 z^2
      return {id,
              {{1, 2, 1.0}, {2, 2, -1.0}, {1, 4, -2.0 / 3.0}},
              {{2, 4}, {1, 6}}};
    case ClaimId::f2c:
      return {id, {{1, 1, 1.0}}, {{1, 3}}};
    case ClaimId::expan_exp:
      // (1-p) x = x - p x; residual order written as O(z^2) with no p order.
      return {id, {{0, 1, 1.0}, {1, 1, -1.0}}, {{0, 2}}};
  }
  throw std::invalid_argument("unknown claim");
}

double claim_residual(ClaimId id, double p, double z) {
  double r = claim_lhs(id, p, z);
  for (const auto& mono : claim_spec(id).leading)
    r -= mono.coeff * std::pow(p, mono.p_pow) * std::pow(z, mono.z_pow);
  return r;
}

namespace {

double fit_slope_in_z(ClaimId id, const FitWindow& w) {
  const auto grid = geometric_grid(w.lo, w.hi, w.points);
  std::vector<double> ys(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    ys[i] = claim_residual(id, w.fixed, grid[i]);
  return fit_loglog_slope(grid, ys);
}

double fit_slope_in_p(ClaimId id, const FitWindow& w) {
  const auto grid = geometric_grid(w.lo, w.hi, w.points);
  std::vector<double> ys(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    ys[i] = claim_residual(id, grid[i], w.fixed);
  return fit_loglog_slope(grid, ys);
}

// Dominance windows per claimed residual pair. Each window spans at least a
// decade and sits where the target term dominates the other O() term by a
// comfortable factor (checked numerically when the windows were frozen).
std::vector<OrderFit> default_fits(ClaimId id) {
  const FitWindow z_mid{0.3, 0.01, 0.1, 9};    // z-scan, moderate p
  const FitWindow p_mid{0.02, 0.01, 0.1, 9};   // p-scan, small z
  const FitWindow p_tiny{0.25, 1e-7, 1e-5, 9}; // p-scan, z where pz^6 leads
  switch (id) {
    case ClaimId::f1a:
      return {OrderFit{{2, 4}, z_mid, 0, true, p_mid, 0, false},
              OrderFit{{1, 6}, FitWindow{1e-5, 0.03, 0.3, 9}, 0, true, p_tiny,
                       0, false}};
    case ClaimId::f1b:
      return {OrderFit{{1, 3}, FitWindow{1e-3, 0.03, 0.3, 9}, 0, true,
                       FitWindow{0.1, 1e-5, 1e-3, 9}, 0, false}};
    case ClaimId::f2a:
      return {OrderFit{{2, 4}, z_mid, 0, true, p_mid, 0, false},
              OrderFit{{1, 6}, FitWindow{1e-5, 0.03, 0.3, 9}, 0, true, p_tiny,
                       0, false}};
    case ClaimId::f2b:
      return {OrderFit{{2, 4}, z_mid, 0, true, p_mid, 0, false},
              OrderFit{{1, 6}, FitWindow{3e-6, 0.03, 0.3, 9}, 0, true, p_tiny,
                       0, false}};
    case ClaimId::f2c:
      return {OrderFit{{1, 3}, FitWindow{1e-3, 0.03, 0.3, 9}, 0, true,
                       FitWindow{0.1, 1e-5, 1e-3, 9}, 0, false}};
    case ClaimId::expan_exp:
      // Quadratic coefficient (1-p)(1-2p)/2: fit away from its p=1/2 zero.
      return {OrderFit{{0, 2}, FitWindow{0.3, 1e-3, 1e-1, 9}, 0, false,
                       FitWindow{}, 0, false}};
  }
  throw std::invalid_argument("unknown claim");
}

} // namespace

ClaimReport series_order_check(ClaimId id) {
  ClaimReport rep;
  rep.id = id;
  rep.fits = default_fits(id);
  bool all = true;
  for (auto& fit : rep.fits) {
    fit.fitted_z_slope = fit_slope_in_z(id, fit.z_window);
    bool ok = std::abs(fit.fitted_z_slope - fit.claimed.z_pow) <=
              rep.slope_tolerance;
    if (fit.has_p_fit) {
      fit.fitted_p_slope = fit_slope_in_p(id, fit.p_window);
      ok = ok && std::abs(fit.fitted_p_slope - fit.claimed.p_pow) <=
                     rep.slope_tolerance;
    }
    fit.pass = ok;
    all = all && ok;
  }
  rep.pass = all;
  if (id == ClaimId::f2c) {
    // The even combination (F(2)+F(-2))/4 starts at (p/2) z^2, which cannot
    // equal pz + O(pz^3); the odd combination above is the reading that does.
    rep.has_alt_reading = true;
    const auto grid = geometric_grid(0.03, 0.3, 9);
    std::vector<double> ys(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
      ys[i] = (f_central(2, 2, 1e-3, grid[i]) +
               f_central(2, -2, 1e-3, grid[i])) /
              4.0;
    rep.alt_reading_z_slope = fit_loglog_slope(grid, ys);
    rep.note =
        "verified the odd combination (F(2)-F(-2))/4; the even combination "
        "(F(2)+F(-2))/4 is an even series starting at (p/2) z^2 and is "
        "reported here as a suspected misprint of the claim's left side";
  }
  return rep;
}

std::vector<ClaimReport> verify_all_claims() {
  std::vector<ClaimReport> out;
  for (ClaimId id : {ClaimId::f1a, ClaimId::f1b, ClaimId::f2a, ClaimId::f2b,
                     ClaimId::f2c, ClaimId::expan_exp})
    out.push_back(series_order_check(id));
  return out;
}

} // namespace dcw
