#include "bootperc/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "bootperc/errors.hpp"
#include "bootperc/format.hpp"

namespace bootperc {

double rate_h(double x) {
  if (!(x >= 0.0)) throw param_error("rate_h: x must be >= 0");
  if (x == 0.0) return 1.0;  // limit of x ln x - x + 1
  return x * std::log(x) - x + 1.0;
}

double rate_j(double x) {
  if (!(x > 0.0)) throw param_error("rate_j: x must be > 0");
  return std::log(x) - 1.0 + 1.0 / x;
}

double rate_i(double alpha) {
  if (!(alpha > -1.0)) throw param_error("rate_i: alpha must be > -1");
  if (alpha < 0.0)
    std::fprintf(stderr, "rate_i: alpha=%g is below the stated domain [0,inf)\n",
                 alpha);
  return (1.0 + alpha) * std::log1p(alpha) - alpha;
}

namespace {

double eval(RateFn fn, double x) {
  return fn == RateFn::H ? rate_h(x) : rate_j(x);
}

constexpr double kInvertTol = 1e-12;
constexpr int kMaxBisect = 300;
constexpr int kMaxExpand = 200;

// Bisection on [lo, hi] where eval is monotone and y is bracketed.
double bisect(RateFn fn, double lo, double hi, double y, bool increasing) {
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < kMaxBisect; ++it) {
    mid = 0.5 * (lo + hi);
    const double f = eval(fn, mid);
    if (std::abs(f - y) <= kInvertTol) return mid;
    if ((f < y) == increasing)
      lo = mid;
    else
      hi = mid;
  }
  return mid;
}

}  // namespace

double invert(RateFn fn, Branch branch, double y) {
  if (fn == RateFn::H && branch == Branch::Left) {
    if (!(y >= 0.0 && y <= 1.0))
      throw param_error("invert: H left branch needs y in [0,1]");
    return bisect(fn, 0.0, 1.0, y, false);  // H decreases from 1 to 0 on [0,1]
  }
  if (!(y >= 0.0)) throw param_error("invert: y must be >= 0");

  if (branch == Branch::Right) {
    // Increasing from 0 at x=1 on both functions; grow hi until bracketed.
    // J(x) ~ ln(x) - 1 for large x, so seed its bracket near exp(y+1) rather
    // than doubling up from 2; exp(y+1) may exceed double range, hence the
    // clamp and the in-loop overflow guard.
    double hi = 2.0;
    if (fn == RateFn::J && y > rate_j(2.0))
      hi = y + 1.0 < 709.0 ? std::exp(y + 1.0)
                           : std::numeric_limits<double>::max();
    int expansions = 0;
    while (eval(fn, hi) < y) {
      if (!(hi < std::numeric_limits<double>::max() / 2.0))
        throw numeric_error("invert: right bracket exceeds double range");
      hi *= 2.0;
      if (++expansions > kMaxExpand)
        throw numeric_error("invert: right bracket not found");
    }
    return bisect(fn, 1.0, hi, y, true);
  }

  // J left branch: decreasing to 0 at x=1, diverging at 0+; halve until
  // bracketed.
  double lo = 0.5;
  int expansions = 0;
  while (eval(fn, lo) < y) {
    lo *= 0.5;
    if (++expansions > kMaxExpand)
      throw numeric_error("invert: left bracket not found");
  }
  return bisect(fn, lo, 1.0, y, false);
}

double p_prime(double a, double gamma) {
  if (!(a > 1.0)) throw param_error("p_prime: a must be > 1");
  if (!(gamma > 0.0 && gamma < 1.0))
    throw param_error("p_prime: gamma must be in (0,1)");
  return gamma / invert(RateFn::J, Branch::Right, 1.0 / (a * gamma));
}

double ln_p_prime(double a, double gamma) {
  if (!(a > 1.0)) throw param_error("ln_p_prime: a must be > 1");
  if (!(gamma > 0.0 && gamma < 1.0))
    throw param_error("ln_p_prime: gamma must be in (0,1)");
  return std::log(gamma) -
         std::log(invert(RateFn::J, Branch::Right, 1.0 / (a * gamma)));
}

ThresholdBounds threshold_bounds(double a, double gamma) {
  if (!(a > 1.0)) throw param_error("threshold_bounds: a must be > 1");
  if (!(gamma > 0.0 && gamma < 1.0 / kFivePi))
    throw param_error("threshold_bounds: gamma must be in (0, 1/(5*pi))");

  ThresholdBounds b;
  b.a = a;
  b.gamma = gamma;
  b.p_prime = p_prime(a, gamma);
  b.p_scaled = kFivePi * b.p_prime;
  b.p_double_prime = b.p_scaled < gamma ? b.p_scaled : gamma;
  b.feasible = a * rate_h(kFivePi * gamma) >= kFivePi;
  b.nontrivial = a * gamma <= 1.0 / rate_j(kFivePi);
  return b;
}

void write_bounds_header(std::ostream& os) {
  os << "a,gamma,p_prime,p_scaled,p_double_prime,feasible,nontrivial\n";
}

void write_bounds_row(std::ostream& os, const ThresholdBounds& b) {
  os << fmt_sig10(b.a) << ',' << fmt_sig10(b.gamma) << ','
     << fmt_sig10(b.p_prime) << ',' << fmt_sig10(b.p_scaled) << ','
     << fmt_sig10(b.p_double_prime) << ',' << (b.feasible ? 1 : 0) << ','
     << (b.nontrivial ? 1 : 0) << '\n';
}

GammaRange feasible_gamma_range(double a) {
  if (!(a > 1.0)) throw param_error("feasible_gamma_range: a must be > 1");

  GammaRange range;
  range.cap = 1.0 / (a * rate_j(kFivePi));
  if (a < kFivePi) return range;  // rate_h < 1 on (0,1): condition unsatisfiable

  range.empty = false;
  range.lo = 0.0;
  range.hi = invert(RateFn::H, Branch::Left, kFivePi / a) / kFivePi;
  return range;
}

TailBound poisson_tail(double lambda, double k, TailSide side) {
  if (!(lambda > 0.0)) throw param_error("poisson_tail: lambda must be > 0");
  if (side == TailSide::Upper && !(k >= lambda))
    throw param_error("poisson_tail: upper tail needs k >= lambda");
  if (side == TailSide::Lower && !(k <= lambda))
    throw param_error("poisson_tail: lower tail needs k <= lambda");
  if (!(k >= 0.0)) throw param_error("poisson_tail: k must be >= 0");

  TailBound b;
  b.lambda = lambda;
  b.k = k;
  b.side = side;
  b.bound = std::exp(-lambda * rate_h(k / lambda));
  return b;
}

double bahadur_rao_poisson_tail(double N, double alpha) {
  if (!(N > 0.0)) throw param_error("bahadur_rao_poisson_tail: N must be > 0");
  if (!(alpha > 0.0))
    throw param_error("bahadur_rao_poisson_tail: alpha must be > 0");
  const double prefactor =
      std::sqrt(1.0 + alpha) / (alpha * std::sqrt(2.0 * std::numbers::pi));
  return prefactor / std::sqrt(N) * std::exp(-N * rate_i(alpha));
}

double stable_config_bound(double n, double a, double gamma, double p) {
  if (!(n >= 2.0)) throw param_error("stable_config_bound: n must be >= 2");
  if (!(a > 0.0)) throw param_error("stable_config_bound: a must be > 0");
  if (!(gamma > 0.0 && gamma < 1.0))
    throw param_error("stable_config_bound: gamma must be in (0,1)");
  if (!(p > 0.0 && p < gamma))
    throw param_error(
        "stable_config_bound: requires 0 < p < gamma (p >= gamma is the "
        "trivially active regime, where the bound says nothing)");

  const double log_n = std::log(n);
  const double exponent = log_n - p * a * log_n * rate_h(gamma / p);
  const double bound = 1.0 - std::exp(exponent);
  if (bound < 0.0) return 0.0;
  if (bound > 1.0) return 1.0;
  return bound;
}

double poisson_upper_tail_exact(double lambda, std::uint64_t k) {
  if (!(lambda > 0.0))
    throw param_error("poisson_upper_tail_exact: lambda must be > 0");
  if (k == 0) return 1.0;

  // P(Po >= k) = pmf(k) * sum_{m>=0} prod_{i=1..m} lambda/(k+i); the ratios
  // shrink below 1 once k+i > lambda, so the series converges for any k.
  const double kd = static_cast<double>(k);
  const double log_lead =
      -lambda + kd * std::log(lambda) - std::lgamma(kd + 1.0);
  double term = 1.0;
  double sum = 1.0;
  for (std::uint64_t i = 1;; ++i) {
    term *= lambda / (kd + static_cast<double>(i));
    sum += term;
    if (term < sum * 1e-18) break;
  }
  return std::exp(log_lead + std::log(sum));
}

double poisson_lower_tail_exact(double lambda, std::uint64_t k) {
  if (!(lambda > 0.0))
    throw param_error("poisson_lower_tail_exact: lambda must be > 0");

  // P(Po <= k) = pmf(k) * (1 + k/lambda + k(k-1)/lambda^2 + ...), finitely
  // many terms.
  const double kd = static_cast<double>(k);
  const double log_lead =
      -lambda + kd * std::log(lambda) - std::lgamma(kd + 1.0);
  double term = 1.0;
  double sum = 1.0;
  for (std::uint64_t j = k; j >= 1; --j) {
    term *= static_cast<double>(j) / lambda;
    sum += term;
    if (term < sum * 1e-18) break;
  }
  return std::exp(log_lead + std::log(sum));
}

int theta_for(double a, double n, double gamma) {
  if (!(a > 0.0)) throw param_error("theta_for: a must be > 0");
  if (!(n >= 2.0)) throw param_error("theta_for: n must be >= 2");
  if (!(gamma > 0.0)) throw param_error("theta_for: gamma must be > 0");
  return static_cast<int>(std::ceil(gamma * a * std::log(n)));
}

}  // namespace bootperc
