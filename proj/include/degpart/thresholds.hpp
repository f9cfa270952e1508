#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace degpart {

enum class Mode { internal, external };

inline const char* to_string(Mode m) { return m == Mode::internal ? "int" : "ext"; }

/// Default series constant: 1000/eps^2 (internal), 1000/(sqrt(1-c) eps^2) (external).
inline double default_d_constant(double c, double eps, Mode mode) {
  if (!(eps > 0.0)) throw std::domain_error("eps must be positive");
  if (!(c >= 0.0 && c < 1.0)) throw std::domain_error("c must lie in [0,1)");
  double base = 1000.0 / (eps * eps);
  return mode == Mode::internal ? base : base / std::sqrt(1.0 - c);
}

struct ParamSet {
  double c = 0.0;
  double eps = 0.25;
  std::optional<double> d_override;  ///< empty means the default constant
  Mode mode = Mode::internal;
  bool relaxed = false;  ///< skip the eps <= (1-c)/4 or (1-c)/10 hypothesis

  double d() const { return d_override ? *d_override : default_d_constant(c, eps, mode); }
  bool uses_default_d() const { return !d_override.has_value(); }

  /// Upper bound on eps required by the mode's tripartition theorem.
  double eps_limit() const { return mode == Mode::internal ? (1.0 - c) / 4.0 : (1.0 - c) / 10.0; }
  bool within_hypothesis() const { return eps <= eps_limit() + 1e-15; }

  void validate() const {
    if (!(c >= 0.0 && c < 1.0)) throw std::invalid_argument("c must lie in [0,1)");
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0,1)");
    if (d_override && !(*d_override >= 0.0)) throw std::invalid_argument("d constant must be non-negative");
    if (!d_override && !(d() > 0.0)) throw std::invalid_argument("d constant must be positive");
    if (!relaxed && !within_hypothesis()) {
      std::ostringstream msg;
      msg << "eps=" << eps << " exceeds " << (mode == Mode::internal ? "(1-c)/4" : "(1-c)/10") << " = " << eps_limit();
      throw std::invalid_argument(msg.str());
    }
  }
};

// ---------------------------------------------------------------------------
// Series bound: sum_{i>=1} i exp(-d^2 i^eps) <= eps^2 / 1e5.

struct SeriesCheck {
  bool holds = false;
  double partial_sum = 0.0;  ///< may underflow to 0; log_partial_sum is authoritative
  double tail_bound = 0.0;
  double log_partial_sum = -std::numeric_limits<double>::infinity();
  double log_tail_bound = -std::numeric_limits<double>::infinity();
  double log_target = 0.0;
  std::size_t terms = 0;
};

namespace detail {

inline double log_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

// log of an upper bound on int_N^inf x exp(-d2 x^eps) dx.
// Substituting t = d2 x^eps gives Gamma(a, d2 N^eps) / (eps d2^a) with a = 2/eps.
// For x0 = d2 N^eps > a-1 (a >= 1): Gamma(a, x0) <= x0^(a-1) e^(-x0) / (1 - (a-1)/x0).
// The complete integral Gamma(a)/(eps d2^a) is always an upper bound.
inline double log_tail_integral(double d2, double eps, double N) {
  double a = 2.0 / eps;
  double log_full = std::lgamma(a) - std::log(eps) - a * std::log(d2);
  double x0 = d2 * std::pow(N, eps);
  if (N > 0.0 && x0 > a - 1.0) {
    double ratio = (a - 1.0) / x0;
    double log_inc = (a - 1.0) * std::log(x0) - x0 - std::log1p(-ratio);
    return std::min(log_full, log_inc - std::log(eps) - a * std::log(d2));
  }
  return log_full;
}

}  // namespace detail

/// Truncated sum over i = 1..budget plus a rigorous integral bound on the tail.
/// The comparison runs in log space so underflowing terms cannot fake a pass.
inline SeriesCheck verify_series_bound(double d, double eps, std::size_t budget) {
  if (budget == 0) throw std::domain_error("term budget must be positive");
  if (!(d > 0.0)) throw std::domain_error("d must be positive");
  if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("eps must lie in (0,1)");
  SeriesCheck out;
  out.terms = budget;
  const double d2 = d * d;
  for (std::size_t i = 1; i <= budget; ++i) {
    double x = static_cast<double>(i);
    out.log_partial_sum = detail::log_add(out.log_partial_sum, std::log(x) - d2 * std::pow(x, eps));
  }
  // f(x) = x exp(-d2 x^eps) rises up to x* = (1/(eps d2))^(1/eps) and decreases after.
  // For a decreasing tail, sum_{i>N} f(i) <= int_N^inf f; otherwise add the peak value.
  const double N = static_cast<double>(budget);
  const double log_peak_x = -std::log(eps * d2) / eps;
  double log_tail = detail::log_tail_integral(d2, eps, N);
  if (std::log(N) < log_peak_x) {
    double log_peak = log_peak_x - 1.0 / eps;  // log f(x*) = log x* - d2 x*^eps and d2 x*^eps = 1/eps
    log_tail = detail::log_add(log_tail, log_peak);
  }
  out.log_tail_bound = log_tail;
  out.partial_sum = std::exp(out.log_partial_sum);
  out.tail_bound = std::exp(out.log_tail_bound);
  out.log_target = std::log(eps * eps / 1e5);
  double log_total = detail::log_add(out.log_partial_sum, out.log_tail_bound);
  // 1e-12 relative margin absorbs libm rounding in the log-space sum.
  out.holds = log_total + 1e-12 * std::max(1.0, std::abs(log_total)) <= out.log_target;
  return out;
}

// ---------------------------------------------------------------------------
// Threshold table.

struct ThresholdRow {
  int degree = 0;
  double phi = 0, phi_direct = 0, psi = 0, psi_star = 0, mu = 0, lambda = 0, eta = 0;
  double thr_int = 0, thr_ext = 0;
  bool active_int = false, active_ext = false;
};

class ThresholdTable {
 public:
  ThresholdTable() = default;

  /// Rows for degrees 0..max_degree from the closed-form threshold functions.
  static ThresholdTable build(const ParamSet& p, int max_degree) {
    p.validate();
    ThresholdTable t;
    t.params_ = p;
    t.d_ = p.d();
    t.rows_.resize(static_cast<std::size_t>(std::max(0, max_degree)) + 1);
    for (int i = 0; i <= max_degree; ++i) t.rows_[static_cast<std::size_t>(i)] = t.compute_row(i, std::nullopt);
    return t;
  }

  /// Rows where the per-degree floors phi and psi are replaced by the constant
  /// level k; mu, lambda, psi*, eta and goodness follow from it as usual.
  static ThresholdTable at_level(const ParamSet& p, int k, int max_degree) {
    p.validate();
    if (k < 0) throw std::invalid_argument("level k must be non-negative");
    ThresholdTable t;
    t.params_ = p;
    t.d_ = p.d();
    t.level_ = k;
    t.rows_.resize(static_cast<std::size_t>(std::max(0, max_degree)) + 1);
    for (int i = 0; i <= max_degree; ++i) t.rows_[static_cast<std::size_t>(i)] = t.compute_row(i, k);
    return t;
  }

  const ParamSet& params() const noexcept { return params_; }
  double d_constant() const noexcept { return d_; }
  std::optional<int> level() const noexcept { return level_; }
  int max_degree() const noexcept { return static_cast<int>(rows_.size()) - 1; }
  const std::vector<ThresholdRow>& rows() const noexcept { return rows_; }

  const ThresholdRow& row(int i) const {
    if (i < 0 || i > max_degree()) throw std::out_of_range("degree " + std::to_string(i) + " not in threshold table");
    return rows_[static_cast<std::size_t>(i)];
  }

  bool active(int i, Mode m) const { return m == Mode::internal ? row(i).active_int : row(i).active_ext; }
  bool active(int i) const { return active(i, params_.mode); }

  /// phi or psi.
  double target(int i, Mode m) const { return m == Mode::internal ? row(i).phi : row(i).psi; }

  /// floor(phi) or floor(psi); 0 for inactive degrees (unconstrained).
  long long target_floor(int i, Mode m) const { return active(i, m) ? static_cast<long long>(std::floor(target(i, m))) : 0; }
  long long target_floor(int i) const { return target_floor(i, params_.mode); }

  /// floor of psi* (extraction targets in external mode).
  long long psi_star_floor(int i) const { return active(i, Mode::external) ? static_cast<long long>(std::floor(row(i).psi_star)) : 0; }

  /// floor of the S-goodness threshold; 0 for inactive degrees.
  long long good_floor(int i, Mode m) const {
    if (!active(i, m)) return 0;
    return static_cast<long long>(std::floor(m == Mode::internal ? row(i).thr_int : row(i).thr_ext));
  }
  long long good_floor(int i) const { return good_floor(i, params_.mode); }

  std::string to_csv() const {
    std::ostringstream out;
    out.precision(17);
    out << "i,phi,psi,psi_star,mu,lambda,eta,thr_int,thr_ext,active\n";
    for (const auto& r : rows_) {
      out << r.degree << ',' << r.phi << ',' << r.psi << ',' << r.psi_star << ',' << r.mu << ',' << r.lambda << ','
          << r.eta << ',' << r.thr_int << ',' << r.thr_ext << ',' << (active(r.degree) ? 1 : 0) << '\n';
    }
    return out.str();
  }

 private:
  ThresholdRow compute_row(int i, std::optional<int> level) const {
    const double c = params_.c, eps = params_.eps, d = d_;
    const double x = static_cast<double>(i);
    ThresholdRow r;
    r.degree = i;
    if (i == 0) return r;
    const double quarter = (1.0 - c) / 4.0;
    r.mu = 4.0 * d * std::pow(x, 0.5 * (eps - 1.0)) + 2.0 * eps;
    r.lambda = 4.0 * d / (1.0 - c) * std::pow(x, 0.5 * (eps - 1.0));
    if (level) {
      r.phi = r.phi_direct = r.psi = static_cast<double>(*level);
    } else {
      r.phi_direct = quarter * x - (2.0 * d * std::pow(x, 0.5 * (1.0 + eps)) + eps * x);
      r.phi = (quarter - r.mu / 2.0) * x;
      r.psi = r.phi_direct;
    }
    const double eighth = (1.0 - c) / 8.0 * x;
    r.psi_star = std::max(r.psi, eighth);
    r.eta = r.psi >= eighth ? r.mu : 4.0 * eps * r.lambda / (1.0 - c);
    r.thr_int = 2.0 * (1.0 + r.mu) * r.phi;
    r.thr_ext = 2.0 * (1.0 + r.eta) * r.psi_star;
    r.active_int = r.phi > 0.0;
    r.active_ext = r.psi > 0.0;
    return r;
  }

  ParamSet params_;
  double d_ = 0.0;
  std::optional<int> level_;
  std::vector<ThresholdRow> rows_;
};

struct GoodnessThreshold {
  double value = 0.0;
  bool active = false;
};

/// 2(1+mu_i) phi(i) (internal) or 2(1+eta_i) psi*(i) (external); 0 and inactive otherwise.
inline GoodnessThreshold goodness_threshold(const ThresholdTable& t, int i, Mode m) {
  if (!t.active(i, m)) return {0.0, false};
  return {m == Mode::internal ? t.row(i).thr_int : t.row(i).thr_ext, true};
}

/// Scale used for the cross-check of the two phi forms: the magnitude of the
/// terms that cancel in the direct form.
inline double phi_term_scale(const ParamSet& p, double d, int i) {
  double x = static_cast<double>(i);
  return (1.0 - p.c) / 4.0 * x + 2.0 * d * std::pow(x, 0.5 * (1.0 + p.eps)) + p.eps * x;
}

}  // namespace degpart
