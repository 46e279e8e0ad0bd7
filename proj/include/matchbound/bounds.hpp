#pragma once

#include <boost/rational.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "matchbound/error.hpp"

namespace matchbound {

using Rational = boost::rational<long long>;

inline std::string to_string(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Accepts "p/q", an integer, or a finite decimal such as "44.5".
inline Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  auto to_ll = [&](std::string_view s) -> long long {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw UsageError("rational out of range: " + std::string(text));
    return v;
  };
  bool negative = false;
  std::string_view body = text;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  Rational r;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    const auto p = body.substr(0, slash), q = body.substr(slash + 1);
    if (!digits(p) || !digits(q)) throw UsageError("malformed rational: " + std::string(text));
    const long long den = to_ll(q);
    if (den == 0) throw UsageError("rational with zero denominator: " + std::string(text));
    r = Rational(to_ll(p), den);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    const auto ip = body.substr(0, dot), fp = body.substr(dot + 1);
    if (!digits(ip) || !digits(fp) || fp.size() > 15) throw UsageError("malformed rational: " + std::string(text));
    long long scale = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
    r = Rational(to_ll(ip)) + Rational(to_ll(fp), scale);
  } else {
    if (!digits(body)) throw UsageError("malformed rational: " + std::string(text));
    r = Rational(to_ll(body));
  }
  return negative ? -r : r;
}

/// Constants probed by the verifier. The k-notation is used throughout:
/// k4 means the sum of (4 - i) * h_i, k5 the sum of (5 - i) * h_i.
struct BoundSet {
  Rational c4_classic{24};
  Rational c5_classic{48};
  Rational c4_improved{68, 3};
  Rational c5_improved{89, 2};
  Rational one_sided_k3{6};
  Rational one_sided_k4_isolated{10};
  Rational one_sided_k5_isolated{17};
  Rational good_k4{22};
  Rational good_k5{41};
  Rational l3_matched_threshold{11};
  Rational r4_two_good_threshold{21};
};

inline const BoundSet& bounds() {
  static const BoundSet b;
  return b;
}

/// k |-> slope * k + offset.
struct Affine {
  long long slope = 0;
  long long offset = 0;
  long long at(long long k) const { return slope * k + offset; }
};

/// Supremum over integers k >= 1 of the weighted average
///   (high * H(k) + good * G(k)) / (H(k) + G(k)).
/// The sequence is monotone in k, so the supremum is either the value at
/// k = 1 or the limit (high * H.slope + good * G.slope) / (H.slope + G.slope).
inline Rational charging_average(const Rational& high, const Rational& good, Affine high_per_k, Affine good_per_k) {
  if (high_per_k.slope < 0 || high_per_k.offset < 0 || good_per_k.slope < 0 || good_per_k.offset < 0) {
    throw UsageError("charging_average: coefficients must be nonnegative");
  }
  const long long h1 = high_per_k.at(1), g1 = good_per_k.at(1);
  if (h1 + g1 == 0) throw UsageError("charging_average: zero denominator");
  Rational best = (high * h1 + good * g1) / Rational(h1 + g1);
  const long long slopes = high_per_k.slope + good_per_k.slope;
  if (slopes > 0) {
    const Rational limit = (high * high_per_k.slope + good * good_per_k.slope) / Rational(slopes);
    if (limit > best) best = limit;
  }
  return best;
}

/// Smallest available ratio bound Ma_m / Ma_{m-1} with s = n - 2m:
///   c4 (s + 2) / (2n - 6s)  when 2n - 6s > 0,
///   c5 (s + 2) / (3n - 7s)  when 3n - 7s > 0.
/// nullopt when neither denominator is positive.
inline std::optional<Rational> recurrence_step_bound(long long n, long long m, const Rational& c4,
                                                      const Rational& c5) {
  if (n < 2 || m < 1 || 2 * m > n) throw UsageError("recurrence_step_bound: need 1 <= m <= n/2");
  if (c4 <= 0 || c5 <= 0) throw UsageError("recurrence_step_bound: constants must be positive");
  const long long s = n - 2 * m;
  std::optional<Rational> best;
  if (2 * n - 6 * s > 0) best = c4 * (s + 2) / Rational(2 * n - 6 * s);
  if (3 * n - 7 * s > 0) {
    const Rational r = c5 * (s + 2) / Rational(3 * n - 7 * s);
    if (!best || r < *best) best = r;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Growth-base estimator.
//
// Strategy "pm-fixpoint-v1". B is a candidate base with pm(Q) <= B^|Q| for
// every point set Q (pm = crossing-free perfect matchings). For any level j
// whose later steps are all bounded,
//   Ma_{n/2}(P) <= Ma_j(P) * prod_{i=j+1}^{n/2} step_i
//             <= C(n, 2j) * B^{2j} * prod_{i=j+1}^{n/2} step_i,
// so B' = exp(min_j [...] / n) is again a valid base. Iterating from the
// crossing-ignoring base B0 = ((n-1)!!)^{1/n} decreases monotonically to the
// largest fixpoint below B0, which also has the closed form
//   log B* = min(log B0, min_j a_j / (n - 2j)),  a_j = log C(n, 2j) + sum log step_i.
// The closed form is the reported value; the iteration is run alongside and
// must agree, otherwise the estimate is flagged as non-convergent.

inline constexpr const char* kGrowthStrategy = "pm-fixpoint-v1";
inline constexpr std::size_t kGrowthMaxIterations = 1000;

struct GrowthEstimate {
  double base = 0.0;           // closed-form fixpoint
  double iterated_base = 0.0;  // value reached by the iteration
  std::size_t iterations = 0;
  bool converged = false;
  long long first_bounded_level = 0;  // smallest m with a bounded step
  long long best_start_level = 0;     // j attaining the minimum
};

namespace detail {

inline double log_choose(long long n, long long k) {
  return std::lgamma(static_cast<double>(n) + 1) - std::lgamma(static_cast<double>(k) + 1) -
         std::lgamma(static_cast<double>(n - k) + 1);
}

inline double log_ratio(const Rational& r) {
  return std::log(static_cast<double>(r.numerator())) - std::log(static_cast<double>(r.denominator()));
}

}  // namespace detail

inline GrowthEstimate growth_base_estimate(const Rational& c4, const Rational& c5, long long n) {
  if (n < 1000 || n % 2 != 0) throw UsageError("growth_base_estimate: n must be even and at least 1000");
  if (c4 <= 0 || c5 <= 0) throw UsageError("growth_base_estimate: constants must be positive");
  const long long half = n / 2;

  // suffix[j] = sum_{i=j+1}^{half} log step_i, or nullopt if some step is unbounded.
  std::vector<std::optional<double>> suffix(static_cast<std::size_t>(half) + 1);
  suffix[static_cast<std::size_t>(half)] = 0.0;
  GrowthEstimate est;
  est.first_bounded_level = half + 1;
  for (long long j = half - 1; j >= 0; --j) {
    const auto step = recurrence_step_bound(n, j + 1, c4, c5);
    const auto& next = suffix[static_cast<std::size_t>(j + 1)];
    if (step && next) {
      suffix[static_cast<std::size_t>(j)] = *next + detail::log_ratio(*step);
      est.first_bounded_level = j + 1;
    }
  }

  struct Term {
    double intercept;  // a_j
    double slope;      // 2j / n
  };
  std::vector<std::pair<long long, Term>> terms;
  for (long long j = 0; j < half; ++j) {
    const auto& suf = suffix[static_cast<std::size_t>(j)];
    if (!suf) continue;
    terms.push_back({j, {detail::log_choose(n, 2 * j) + *suf, 2.0 * static_cast<double>(j) / static_cast<double>(n)}});
  }

  double log_star = std::numeric_limits<double>::infinity();
  for (const auto& [j, t] : terms) {
    const double v = t.intercept / (static_cast<double>(n) * (1.0 - t.slope));
    if (v < log_star) {
      log_star = v;
      est.best_start_level = j;
    }
  }
  // Crossing-ignoring start: (n - 1)!! perfect matchings at most.
  const double log_start = (std::lgamma(static_cast<double>(n) + 1) - static_cast<double>(half) * std::log(2.0) -
                            std::lgamma(static_cast<double>(half) + 1)) /
                           static_cast<double>(n);
  if (log_start <= log_star) {
    log_star = log_start;
    est.best_start_level = half;
  }
  est.base = std::exp(log_star);

  double log_b = log_start;
  for (est.iterations = 1; est.iterations <= kGrowthMaxIterations; ++est.iterations) {
    double next = log_b;  // j = n/2 term contributes exactly log B
    for (const auto& [j, t] : terms) next = std::min(next, t.intercept / static_cast<double>(n) + t.slope * log_b);
    const bool done = log_b - next <= 1e-13 * std::max(1.0, std::abs(log_b));
    log_b = next;
    if (done) break;
  }
  est.iterated_base = std::exp(log_b);
  est.converged = est.iterations <= kGrowthMaxIterations && std::abs(est.iterated_base - est.base) <= 1e-6 * est.base;
  return est;
}

}  // namespace matchbound
