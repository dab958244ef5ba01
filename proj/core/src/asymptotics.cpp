#include "ssdlat/asymptotics.hpp"

#include <charconv>
#include <cmath>
#include <limits>

namespace ssdlat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double nudge_down(double x, int ulps) {
  for (int i = 0; i < ulps; ++i) x = std::nextafter(x, -kInf);
  return x;
}

double nudge_up(double x, int ulps) {
  for (int i = 0; i < ulps; ++i) x = std::nextafter(x, kInf);
  return x;
}

// Correctly bracketing conversions of a positive rational.
double rational_down(const mpq_class& q) { return q.get_d(); }  // get_d truncates

double rational_up(const mpq_class& q) {
  const double d = q.get_d();
  return mpq_class(d) == q ? d : std::nextafter(d, kInf);
}

mpq_class normalized(const BigInt& count, std::size_t n) {
  mpq_class q(count);
  q /= mpq_class(BigInt(1) << static_cast<mp_bitcnt_t>(n));
  return q;
}

const CountRow& row_at(const std::vector<CountRow>& rows, std::size_t n) {
  for (const auto& r : rows)
    if (r.n == n) return r;
  throw Error(ErrorKind::MissingRow, "no count row for n=" + std::to_string(n));
}

bool within(double a, double b) { return a <= b * (1.0 + 1e-12) + 1e-300; }

std::string shortest(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

}  // namespace

AnalysisParams analysis_params(std::size_t m) {
  if (m < 5) throw Error(ErrorKind::BadAnchor, "anchor m must be at least 5, got " + std::to_string(m));
  AnalysisParams p;
  p.m = m;
  const auto e = static_cast<double>(ceil_sqrt(m - 1)) - 2.0;
  p.z0 = std::min(3.0 / 8.0, 3.0 * std::pow(kAlpha, e));
  p.mu = 3.0 / (1.0 - p.z0);
  p.nu = p.mu / kAlpha;
  p.nu_strict = p.nu / kAlpha;
  return p;
}

double decay(double x) { return std::pow(kAlpha, std::sqrt(x)); }

double primitive(double x) {
  if (!(x > 0.0)) throw Error(ErrorKind::DomainError, "F is evaluated on x > 0 only");
  const double root = std::sqrt(x);
  return -2.0 / (kDelta * kDelta) * (1.0 + kDelta * root) * std::pow(kAlpha, root);
}

double primitive_derivative_residual(double x, double step) {
  if (!(step > 0.0) || !(x - step > 0.0)) throw Error(ErrorKind::DomainError, "need 0 < step < x");
  const double central = (primitive(x + step) - primitive(x - step)) / (2.0 * step);
  return std::abs(central - decay(x));
}

mpq_class kappa(const std::vector<CountRow>& rows, std::size_t n) {
  if (n < 2) throw Error(ErrorKind::MissingRow, "kappa needs n >= 2");
  const auto& prev = row_at(rows, n - 1);
  if (prev.N <= 0) throw Error(ErrorKind::MissingRow, "N(n-1) must be positive");
  mpq_class q(row_at(rows, n).N, prev.N);
  q.canonicalize();
  return q;
}

CheckReport check_kappa_bounds(const std::vector<CountRow>& rows) {
  CheckReport report{"ratio-bounds", 4, 0, 0, std::nullopt};
  for (const auto& row : rows) {
    const std::size_t n = row.n;
    if (n < 4) continue;
    report.n_max = std::max(report.n_max, n);
    const BigInt& cur = row.N;
    const BigInt& prev = row_at(rows, n - 1).N;
    ++report.checked;
    if (4 * cur < 5 * prev || cur > 2 * prev) report.fail("", "5/4 <= kappa <= 2 fails at n=" + std::to_string(n));
    if (n < 5) continue;
    // kappa/2 >= 1 - 3 (4/5)^e  <=>  5^e N(n) >= 2 N(n-1) (5^e - 3 4^e)
    const auto e = static_cast<unsigned long>(ceil_sqrt(n - 1) - 2);
    BigInt p4, p5;
    mpz_ui_pow_ui(p4.get_mpz_t(), 4, e);
    mpz_ui_pow_ui(p5.get_mpz_t(), 5, e);
    if (8 * cur < 10 * prev || p5 * cur < 2 * prev * (p5 - 3 * p4))
      report.fail("", "kappa/2 envelope fails at n=" + std::to_string(n));
  }
  return report;
}

std::string to_string(BoundVariant variant) { return variant == BoundVariant::Remark ? "remark" : "proof"; }

BoundVariant parse_variant(std::string_view text) {
  if (text == "remark") return BoundVariant::Remark;
  if (text == "proof") return BoundVariant::Proof;
  throw Error(ErrorKind::DomainError, "unknown variant '" + std::string(text) + "'");
}

namespace {

// exp(nu F(x)) rounded down; each of the dozen floating operations on the way
// may cost one ulp, so the exponent is pushed down by that many.
double tail_factor_down(const AnalysisParams& p, double x) {
  const double exponent = nudge_down(p.nu * primitive(x), 16);
  return nudge_down(std::exp(exponent), 2);
}

}  // namespace

ConstantInterval remark_bounds(std::size_t m, const BigInt& count_m, BoundVariant variant) {
  const AnalysisParams p = analysis_params(m);
  if (count_m <= 0) throw Error(ErrorKind::DomainError, "N(m) must be positive");
  const mpq_class r = normalized(count_m, m);
  const double anchor = variant == BoundVariant::Remark ? static_cast<double>(m) : static_cast<double>(m - 1);
  ConstantInterval out;
  out.params = p;
  out.source_n = m;
  out.variant = variant;
  out.hi = rational_up(r);
  out.lo = nudge_down(rational_down(r) * tail_factor_down(p, anchor), 1);
  return out;
}

ConstantInterval estimate_constant(const std::vector<CountRow>& rows, std::size_t n) {
  return remark_bounds(n, row_at(rows, n).N, BoundVariant::Proof);
}

ConstantInterval estimate_constant(const std::vector<NormalizedRow>& rows, std::size_t n) {
  const NormalizedRow* row = nullptr;
  for (const auto& r : rows)
    if (r.n == n) row = &r;
  if (!row) throw Error(ErrorKind::MissingRow, "no normalized row for n=" + std::to_string(n));
  const AnalysisParams p = analysis_params(n);
  ConstantInterval out;
  out.params = p;
  out.source_n = n;
  out.variant = BoundVariant::Proof;
  out.hi = nudge_up(row->r + row->err, 1);
  out.lo = nudge_down(nudge_down(row->r - row->err, 1) * tail_factor_down(p, static_cast<double>(n - 1)), 1);
  return out;
}

std::string format_interval(const ConstantInterval& interval) {
  return "C_lower," + shortest(interval.lo) + " C_upper," + shortest(interval.hi) + " m," +
         std::to_string(interval.params.m) + " variant," + to_string(interval.variant);
}

CheckReport log_lemma_check(std::span<const double> z_grid, double z0) {
  CheckReport report{"log-lemma", 0, 0, 0, std::nullopt};
  for (double z : z_grid) {
    if (!(z > 0.0 && z <= z0)) throw Error(ErrorKind::DomainError, "grid point outside (0, z0]");
    ++report.checked;
    const double lhs = -std::log1p(-z);
    const double mid = z / (1.0 - z);
    const double rhs = z / (1.0 - z0);
    if (!(lhs <= mid && mid <= rhs)) report.fail("", "z=" + shortest(z));
  }
  return report;
}

std::vector<CheckReport> proof_chain_check(const std::vector<CountRow>& rows, std::size_t m) {
  const AnalysisParams p = analysis_params(m);
  std::vector<CheckReport> reports;
  for (const char* name : {"tail-positive", "log-link", "envelope-link", "ceiling-link", "integral-link", "tail-link",
                           "corrected-ceiling-link", "end-to-end"})
    reports.push_back(CheckReport{name, m + 1, m, 0, std::nullopt});
  enum { kPositive, kLog, kEnvelope, kCeiling, kIntegral, kTail, kCorrected, kEndToEnd };

  double s = 0.0;             // -ln p_n
  double ratio_sum = 0.0;     // sum t_j
  double envelope_sum = 0.0;  // sum alpha^(ceil(sqrt(j-1)) - 2)
  double smooth_sum = 0.0;    // sum alpha^(sqrt(j-1) - 1)
  double prev_p = 1.0;
  const double f_anchor = primitive(static_cast<double>(m - 1));
  for (std::size_t n = m + 1;; ++n) {
    const CountRow* row = nullptr;
    for (const auto& r : rows)
      if (r.n == n) row = &r;
    if (!row) break;
    // t_n = 1 - kappa_n/2 = W(n) / (2 N(n-1)) exactly
    mpq_class deficit(row->W, 2 * row_at(rows, n - 1).N);
    deficit.canonicalize();
    const double t = deficit.get_d();
    const double root = std::sqrt(static_cast<double>(n - 1));
    s += -std::log1p(-t);
    ratio_sum += t;
    envelope_sum += std::pow(kAlpha, static_cast<double>(ceil_sqrt(n - 1)) - 2.0);
    smooth_sum += std::pow(kAlpha, root - 1.0);

    const double p_n = std::exp(-s);
    const double log_bound = ratio_sum / (1.0 - p.z0);
    const double envelope = p.mu * envelope_sum;
    const double smooth = p.mu * smooth_sum;  // = nu sum_{k=m}^{n-1} alpha^sqrt(k)
    const double integral = primitive(static_cast<double>(n - 1)) - f_anchor;
    const double tail = -f_anchor;

    const std::string at = "n=" + std::to_string(n);
    auto link = [&](int which, bool ok) {
      auto& r = reports[static_cast<std::size_t>(which)];
      r.n_max = n;
      ++r.checked;
      if (!ok) r.fail("", at);
    };
    link(kPositive, s >= 0.0 && p_n > 0.0 && p_n <= 1.0 && p_n <= prev_p);
    link(kLog, within(s, log_bound));
    link(kEnvelope, within(log_bound, envelope));
    link(kCeiling, within(envelope, smooth));
    link(kIntegral, within(smooth, p.nu * integral));
    link(kTail, within(p.nu * integral, p.nu * tail));
    link(kCorrected, within(envelope, p.nu_strict * integral));
    link(kEndToEnd, within(s, p.nu * integral));
    prev_p = p_n;
  }
  return reports;
}

}  // namespace ssdlat
