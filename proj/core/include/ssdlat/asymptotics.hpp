#pragma once

// Two-sided bounds for C = lim N(n) / 2^n.
//
// With r(m) = N(m)/2^m and p_n = r(n)/r(m) = prod_{j=m+1}^{n} kappa_j/2, the
// tail s_n = -ln p_n is bounded by nu * (F(inf) - F(m-1)), where F is the
// primitive of x -> alpha^sqrt(x) vanishing at infinity. Hence
//   r(m) * exp(nu * F(m-1)) <= C <= r(m).

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ssdlat/counting.hpp"
#include "ssdlat/report.hpp"

namespace ssdlat {

inline constexpr double kAlpha = 0.8;
/// -ln(alpha) = ln(5/4)
inline constexpr double kDelta = 0.22314355131420976;

struct AnalysisParams {
  std::size_t m = 0;
  double z0 = 0.0;
  double mu = 0.0;
  double nu = 0.0;
  /// mu / alpha^2: the factor that makes every link of the tail chain hold termwise.
  double nu_strict = 0.0;
  double alpha = kAlpha;
  double delta = kDelta;
};

/// z0 = min(3/8, 3 alpha^(ceil(sqrt(m-1)) - 2)), mu = 3/(1-z0), nu = mu/alpha.
/// Throws BadAnchor for m < 5.
AnalysisParams analysis_params(std::size_t m);

/// alpha^sqrt(x)
double decay(double x);
/// F(x) = -2 delta^-2 (1 + delta sqrt(x)) alpha^sqrt(x); F' = decay, F(inf) = 0.
/// Throws DomainError for x <= 0.
double primitive(double x);
/// |central difference of F at x - decay(x)|
double primitive_derivative_residual(double x, double step);

/// Exact kappa_n = N(n)/N(n-1). Throws MissingRow.
mpq_class kappa(const std::vector<CountRow>& rows, std::size_t n);

/// 5/4 <= kappa_n <= 2 for n >= 4 and
/// max(5/8, 1 - 3 alpha^(ceil(sqrt(n-1)) - 2)) <= kappa_n / 2 <= 1 for n >= 5.
CheckReport check_kappa_bounds(const std::vector<CountRow>& rows);

enum class BoundVariant {
  Remark,  // exponent nu F(m)
  Proof,   // exponent nu F(m - 1); the integral starts at m - 1
};

std::string to_string(BoundVariant variant);
BoundVariant parse_variant(std::string_view text);

struct ConstantInterval {
  double lo = 0.0;
  double hi = 0.0;
  AnalysisParams params;
  std::size_t source_n = 0;
  BoundVariant variant = BoundVariant::Proof;
};

/// lo = exp(nu F(.)) N_m / 2^m, hi = N_m / 2^m, both rounded outward.
/// Throws BadAnchor for m < 5 and DomainError for N_m <= 0.
ConstantInterval remark_bounds(std::size_t m, const BigInt& count_m, BoundVariant variant = BoundVariant::Proof);

/// Anchored at m = n. Throws MissingRow.
ConstantInterval estimate_constant(const std::vector<CountRow>& rows, std::size_t n);
/// Float rows: the interval is widened by the row's error bound.
ConstantInterval estimate_constant(const std::vector<NormalizedRow>& rows, std::size_t n);

/// `C_lower,<lo> C_upper,<hi> m,<m> variant,<remark|proof>`
std::string format_interval(const ConstantInterval& interval);

/// -ln(1-z) <= z/(1-z) <= z/(1-z0) at every grid point in (0, z0].
CheckReport log_lemma_check(std::span<const double> z_grid, double z0);

/// One report per link of the tail chain, for m < n <= last row:
///   tail-positive          0 <= s_n, p_n in (0,1] and nonincreasing (s_n = 0 when every W(j) = 0)
///   log-link               s_n <= sum t_j/(1-z0), t_j = 1 - kappa_j/2
///   envelope-link          ... <= mu sum alpha^(ceil(sqrt(j-1))-2) =: B_n
///   ceiling-link           B_n <= mu sum alpha^(sqrt(j-1)-1)
///   integral-link          nu sum_{k=m}^{n-1} alpha^sqrt(k) <= nu (F(n-1) - F(m-1))
///   tail-link              nu (F(n-1) - F(m-1)) <= -nu F(m-1)
///   corrected-ceiling-link B_n <= nu_strict (F(n-1) - F(m-1))
///   end-to-end             s_n <= nu (F(n-1) - F(m-1))
/// The ceiling link is false for every n: ceil(x) - 2 < x - 1, so each
/// envelope term exceeds alpha^(x-1). The corrected link replaces nu by
/// nu_strict.
std::vector<CheckReport> proof_chain_check(const std::vector<CountRow>& rows, std::size_t m);

}  // namespace ssdlat
