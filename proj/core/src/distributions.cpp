#include "sentinel/distributions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <utility>

#include "detail/saddle_point.hpp"
#include "sentinel/errors.hpp"

namespace sentinel {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Relative size below which a further tail term cannot change the sum.
constexpr double kTailEpsilon = 1e-17;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// P(X <= k) and P(X > k) for an integer k >= 0. Exactly one of the two is
// summed directly (the side away from the mode); the other is its complement.
struct Tails {
  double lower;
  double upper;
};

Tails poisson_tails(double k, double mean) {
  if (k < mean) {
    double term = detail::poisson_pmf(k, mean);
    double sum = term;
    for (double j = k; j > 0.0; j -= 1.0) {
      term *= j / mean;
      sum += term;
      if (term <= sum * kTailEpsilon) break;
    }
    sum = std::min(sum, 1.0);
    return {sum, 1.0 - sum};
  }
  double term = detail::poisson_pmf(k + 1.0, mean);
  double sum = term;
  for (double j = k + 1.0; term > sum * kTailEpsilon; j += 1.0) {
    term *= mean / (j + 1.0);
    sum += term;
  }
  sum = std::min(sum, 1.0);
  return {1.0 - sum, sum};
}

Tails binomial_tails(double k, double n, double p) {
  if (k >= n) return {1.0, 0.0};
  const double q = 1.0 - p;
  if (p == 0.0) return {1.0, 0.0};
  if (q == 0.0) return {0.0, 1.0};
  if (k < n * p) {
    double term = detail::binomial_pmf(k, n, p);
    double sum = term;
    for (double j = k; j > 0.0; j -= 1.0) {
      term *= j / (n - j + 1.0) * (q / p);
      sum += term;
      if (term <= sum * kTailEpsilon) break;
    }
    sum = std::min(sum, 1.0);
    return {sum, 1.0 - sum};
  }
  double term = detail::binomial_pmf(k + 1.0, n, p);
  double sum = term;
  for (double j = k + 1.0; j < n && term > sum * kTailEpsilon; j += 1.0) {
    term *= (n - j) / (j + 1.0) * (p / q);
    sum += term;
  }
  sum = std::min(sum, 1.0);
  return {1.0 - sum, sum};
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

void require_number(double x, const char* what) {
  if (std::isnan(x)) throw DomainError(std::string(what) + ": argument is NaN");
}

// Largest support point for integer-supported kinds (infinity for Poisson).
double integer_upper_limit(const NullDistribution& dist) {
  if (const auto* b = std::get_if<Binomial>(&dist.kind())) {
    return static_cast<double>(b->trials);
  }
  return kInf;
}

double integer_pmf(const NullDistribution& dist, double k) {
  if (const auto* p = std::get_if<Poisson>(&dist.kind())) return detail::poisson_pmf(k, p->mean);
  const auto& b = std::get<Binomial>(dist.kind());
  return detail::binomial_pmf(k, static_cast<double>(b.trials), b.success_prob);
}

Tails integer_tails(const NullDistribution& dist, double k) {
  if (const auto* p = std::get_if<Poisson>(&dist.kind())) return poisson_tails(k, p->mean);
  const auto& b = std::get<Binomial>(dist.kind());
  return binomial_tails(k, static_cast<double>(b.trials), b.success_prob);
}

double integer_center(const NullDistribution& dist) {
  if (const auto* p = std::get_if<Poisson>(&dist.kind())) return p->mean;
  const auto& b = std::get<Binomial>(dist.kind());
  return static_cast<double>(b.trials) * b.success_prob;
}

// Tails at an arbitrary real x for integer-supported kinds.
Tails integer_tails_at(const NullDistribution& dist, double x) {
  if (x < 0.0) return {0.0, 1.0};
  if (x == kInf) return {1.0, 0.0};
  return integer_tails(dist, std::floor(x));
}

// Smallest integer k with F(k) >= omega. A cheap incremental walk from the
// centre gets close; the final polish uses the exact cdf so the result is
// consistent with cdf() to the last bit.
double integer_quantile(const NullDistribution& dist, double omega) {
  const double upper_limit = integer_upper_limit(dist);
  const double center = integer_center(dist);
  double k = std::clamp(std::floor(center), 0.0, upper_limit);
  const Tails start = integer_tails(dist, k);

  if (omega <= 0.5) {
    double c = start.lower;
    if (c < omega) {
      while (c < omega && k < upper_limit) {
        k += 1.0;
        const double p = integer_pmf(dist, k);
        c += p;
        if (p == 0.0 && k > center) break;
      }
    } else {
      while (k > 0.0) {
        const double p = integer_pmf(dist, k);
        if (c - p >= omega) {
          c -= p;
          k -= 1.0;
        } else {
          break;
        }
      }
    }
  } else {
    const double target_tail = 1.0 - omega;  // exact for omega >= 0.5
    double s = start.upper;
    if (s > target_tail) {
      while (s > target_tail && k < upper_limit) {
        k += 1.0;
        const double p = integer_pmf(dist, k);
        s -= p;
        if (p == 0.0 && k > center) break;
      }
    } else {
      while (k > 0.0) {
        const double p = integer_pmf(dist, k);
        if (s + p <= target_tail) {
          s += p;
          k -= 1.0;
        } else {
          break;
        }
      }
    }
  }

  while (k > 0.0 && integer_tails(dist, k - 1.0).lower >= omega) k -= 1.0;
  while (k < upper_limit && integer_tails(dist, k).lower < omega) k += 1.0;
  return k;
}

double continuous_quantile(const std::function<double(double)>& f, double omega) {
  double lo = -1.0;
  double hi = 1.0;
  int guard = 0;
  while (clamp01(f(lo)) >= omega) {
    lo *= 2.0;
    if (++guard > 1100 || !std::isfinite(lo)) throw ContractError("cdf never falls below omega");
  }
  guard = 0;
  while (clamp01(f(hi)) < omega) {
    hi *= 2.0;
    if (++guard > 1100 || !std::isfinite(hi)) throw ContractError("cdf never reaches omega");
  }
  // Invariant: F(lo) < omega <= F(hi).
  for (int it = 0; it < 400; ++it) {
    const double scale = std::max({1.0, std::fabs(lo), std::fabs(hi)});
    if (hi - lo <= 1e-12 * scale) break;
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (clamp01(f(mid)) < omega) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return hi;
}

void validate_continuous_cdf(const std::function<double(double)>& f) {
  if (!f) throw ParameterError("continuous distribution needs a cdf handle");
  std::vector<double> probes;
  probes.push_back(-1e300);
  for (int e = 12; e >= -6; --e) probes.push_back(-std::pow(10.0, e));
  probes.push_back(0.0);
  for (int e = -6; e <= 12; ++e) probes.push_back(std::pow(10.0, e));
  probes.push_back(1e300);

  double previous = -kInf;
  for (const double x : probes) {
    const double v = f(x);
    if (std::isnan(v) || v < -1e-12 || v > 1.0 + 1e-12) {
      throw ParameterError("cdf value outside [0,1] at probe point");
    }
    if (v < previous - 1e-12) throw ParameterError("cdf is decreasing on the probe grid");
    previous = v;
  }
  if (f(-1e300) > 1e-9) throw ParameterError("cdf does not tend to 0 at -infinity");
  if (f(1e300) < 1.0 - 1e-9) throw ParameterError("cdf does not tend to 1 at +infinity");
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

NullDistribution::NullDistribution(Kind kind) : kind_(std::move(kind)) {
  std::visit(
      overloaded{
          [](const Poisson& p) {
            if (!(p.mean > 0.0) || !std::isfinite(p.mean)) {
              throw ParameterError("Poisson mean must be positive and finite, got " +
                                   format_number(p.mean));
            }
          },
          [](const Binomial& b) {
            if (!(b.success_prob >= 0.0 && b.success_prob <= 1.0)) {
              throw ParameterError("binomial success probability must lie in [0,1], got " +
                                   format_number(b.success_prob));
            }
          },
          [](const Uniform01&) {},
          [this](TabulatedDiscrete& t) {
            if (t.support.empty()) throw ParameterError("tabulated distribution needs support");
            if (t.support.size() != t.masses.size()) {
              throw ParameterError("tabulated support and masses differ in length");
            }
            for (std::size_t i = 0; i < t.support.size(); ++i) {
              if (!std::isfinite(t.support[i])) throw ParameterError("support must be finite");
              if (i > 0 && !(t.support[i] > t.support[i - 1])) {
                throw ParameterError("tabulated support must be strictly increasing");
              }
              if (!(t.masses[i] > 0.0) || !std::isfinite(t.masses[i])) {
                throw ParameterError("tabulated masses must be positive");
              }
            }
            const double total = std::accumulate(t.masses.begin(), t.masses.end(), 0.0);
            if (std::fabs(total - 1.0) > 1e-12) {
              throw ParameterError("tabulated masses sum to " + format_number(total) +
                                   ", expected 1");
            }
            for (auto& m : t.masses) m /= total;
            const std::size_t n = t.masses.size();
            prefix_.resize(n);
            suffix_.resize(n);
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
              acc += t.masses[i];
              prefix_[i] = std::min(acc, 1.0);
            }
            acc = 0.0;
            for (std::size_t i = n; i-- > 0;) {
              acc += t.masses[i];
              suffix_[i] = std::min(acc, 1.0);
            }
            prefix_[n - 1] = 1.0;
            suffix_[0] = 1.0;
          },
          [](const ContinuousByCdf& c) { validate_continuous_cdf(c.cdf); },
      },
      kind_);
}

NullDistribution NullDistribution::poisson(double mean) { return NullDistribution(Poisson{mean}); }

NullDistribution NullDistribution::binomial(std::uint64_t trials, double success_prob) {
  return NullDistribution(Binomial{trials, success_prob});
}

NullDistribution NullDistribution::uniform01() { return NullDistribution(Uniform01{}); }

NullDistribution NullDistribution::tabulated(std::vector<double> support,
                                             std::vector<double> masses) {
  return NullDistribution(TabulatedDiscrete{std::move(support), std::move(masses)});
}

NullDistribution NullDistribution::continuous(std::function<double(double)> cdf,
                                              std::function<double(double)> density) {
  return NullDistribution(ContinuousByCdf{std::move(cdf), std::move(density)});
}

bool NullDistribution::is_discrete() const noexcept {
  return std::holds_alternative<Poisson>(kind_) || std::holds_alternative<Binomial>(kind_) ||
         std::holds_alternative<TabulatedDiscrete>(kind_);
}

bool NullDistribution::is_integer_supported() const noexcept {
  return std::holds_alternative<Poisson>(kind_) || std::holds_alternative<Binomial>(kind_);
}

std::string NullDistribution::describe() const {
  return std::visit(
      overloaded{
          [](const Poisson& p) { return "Poisson(mean=" + format_number(p.mean) + ")"; },
          [](const Binomial& b) {
            return "Binomial(trials=" + std::to_string(b.trials) +
                   ", p=" + format_number(b.success_prob) + ")";
          },
          [](const Uniform01&) { return std::string("Uniform01"); },
          [](const TabulatedDiscrete& t) {
            return "TabulatedDiscrete(" + std::to_string(t.support.size()) + " points)";
          },
          [](const ContinuousByCdf&) { return std::string("ContinuousByCdf"); },
      },
      kind_);
}

double cdf(const NullDistribution& dist, double x) {
  require_number(x, "cdf");
  if (dist.is_integer_supported()) return integer_tails_at(dist, x).lower;
  return std::visit(
      overloaded{
          [&](const TabulatedDiscrete& t) {
            const auto idx = static_cast<std::size_t>(
                std::upper_bound(t.support.begin(), t.support.end(), x) - t.support.begin());
            return idx == 0 ? 0.0 : dist.tabulated_prefix()[idx - 1];
          },
          [&](const Uniform01&) { return clamp01(x); },
          [&](const ContinuousByCdf& c) { return clamp01(c.cdf(x)); },
          [](const auto&) { return 0.0; },
      },
      dist.kind());
}

double survival(const NullDistribution& dist, double x) {
  require_number(x, "survival");
  if (dist.is_integer_supported()) return integer_tails_at(dist, x).upper;
  return std::visit(
      overloaded{
          [&](const TabulatedDiscrete& t) {
            const auto idx = static_cast<std::size_t>(
                std::upper_bound(t.support.begin(), t.support.end(), x) - t.support.begin());
            return idx == t.support.size() ? 0.0 : dist.tabulated_suffix()[idx];
          },
          [&](const Uniform01&) { return 1.0 - clamp01(x); },
          [&](const ContinuousByCdf& c) { return 1.0 - clamp01(c.cdf(x)); },
          [](const auto&) { return 0.0; },
      },
      dist.kind());
}

double cdf_left(const NullDistribution& dist, double x) {
  require_number(x, "cdf_left");
  if (dist.is_integer_supported()) {
    if (x <= 0.0) return 0.0;
    if (x == kInf) return 1.0;
    return integer_tails(dist, std::ceil(x) - 1.0).lower;
  }
  if (const auto* t = std::get_if<TabulatedDiscrete>(&dist.kind())) {
    const auto idx = static_cast<std::size_t>(
        std::lower_bound(t->support.begin(), t->support.end(), x) - t->support.begin());
    return idx == 0 ? 0.0 : dist.tabulated_prefix()[idx - 1];
  }
  return cdf(dist, x);
}

double survival_left(const NullDistribution& dist, double x) {
  require_number(x, "survival_left");
  if (dist.is_integer_supported()) {
    if (x <= 0.0) return 1.0;
    if (x == kInf) return 0.0;
    return integer_tails(dist, std::ceil(x) - 1.0).upper;
  }
  if (const auto* t = std::get_if<TabulatedDiscrete>(&dist.kind())) {
    const auto idx = static_cast<std::size_t>(
        std::lower_bound(t->support.begin(), t->support.end(), x) - t->support.begin());
    return idx == t->support.size() ? 0.0 : dist.tabulated_suffix()[idx];
  }
  return survival(dist, x);
}

double mass(const NullDistribution& dist, double x) {
  require_number(x, "mass");
  if (dist.is_integer_supported()) {
    if (x < 0.0 || x != std::floor(x) || x > integer_upper_limit(dist)) return 0.0;
    return integer_pmf(dist, x);
  }
  if (const auto* t = std::get_if<TabulatedDiscrete>(&dist.kind())) {
    const auto it = std::lower_bound(t->support.begin(), t->support.end(), x);
    if (it == t->support.end() || *it != x) return 0.0;
    return t->masses[static_cast<std::size_t>(it - t->support.begin())];
  }
  return 0.0;
}

double density(const NullDistribution& dist, double x) {
  require_number(x, "density");
  if (dist.is_discrete()) throw ContractError("density requested for a discrete distribution");
  if (std::holds_alternative<Uniform01>(dist.kind())) return (x >= 0.0 && x <= 1.0) ? 1.0 : 0.0;
  const auto& c = std::get<ContinuousByCdf>(dist.kind());
  if (c.density) return c.density(x);
  const double h = 1e-5 * std::max(1.0, std::fabs(x));
  return (clamp01(c.cdf(x + h)) - clamp01(c.cdf(x - h))) / (2.0 * h);
}

double skorokhod_quantile(const NullDistribution& dist, double omega) {
  if (!(omega > 0.0 && omega < 1.0)) {
    throw DomainError("quantile level must lie in (0,1), got " + format_number(omega));
  }
  if (dist.is_integer_supported()) return integer_quantile(dist, omega);
  return std::visit(
      overloaded{
          [&](const TabulatedDiscrete& t) {
            const auto& prefix = dist.tabulated_prefix();
            const auto idx = static_cast<std::size_t>(
                std::lower_bound(prefix.begin(), prefix.end(), omega) - prefix.begin());
            return t.support[std::min(idx, t.support.size() - 1)];
          },
          [&](const Uniform01&) { return omega; },
          [&](const ContinuousByCdf& c) { return continuous_quantile(c.cdf, omega); },
          [](const auto&) { return 0.0; },
      },
      dist.kind());
}

double sample(const NullDistribution& dist, UniformSource& source) {
  return skorokhod_quantile(dist, source.next_uniform());
}

std::vector<double> truncated_support(const NullDistribution& dist, double tail_mass) {
  if (!dist.is_discrete()) throw ContractError("truncated_support needs a discrete distribution");
  if (const auto* t = std::get_if<TabulatedDiscrete>(&dist.kind())) {
    std::vector<double> points;
    for (std::size_t i = 0; i < t->support.size(); ++i) {
      points.push_back(t->support[i]);
      if (i + 1 < t->support.size() && dist.tabulated_suffix()[i + 1] < tail_mass) break;
    }
    return points;
  }
  const double upper_limit = integer_upper_limit(dist);
  std::vector<double> points;
  for (double k = 0.0;; k += 1.0) {
    points.push_back(k);
    if (k >= upper_limit || integer_tails(dist, k).upper < tail_mass) break;
  }
  return points;
}

}  // namespace sentinel
