#pragma once

#include <cstdint>
#include <iosfwd>
#include <numbers>

namespace bootperc {

inline constexpr double kFivePi = 5.0 * std::numbers::pi;

// Large-deviation rate functions for the Poisson family.
// rate_h(x) = x ln x - x + 1 on x >= 0 (value 1 at x = 0 by the limit);
// convex, minimized at x = 1 with value 0.
double rate_h(double x);

// rate_j(x) = rate_h(x)/x = ln x - 1 + 1/x on x > 0; decreasing on (0,1),
// increasing on (1,inf), zero at x = 1.
double rate_j(double x);

// rate_i(alpha) = (1+alpha) ln(1+alpha) - alpha; equals rate_h(1+alpha).
// Stated domain alpha >= 0; values in (-1,0) are accepted with a stderr
// warning.
double rate_i(double alpha);

enum class RateFn { H, J };
enum class Branch { Left, Right };

// Inverse of rate_h/rate_j restricted to one monotone branch (Left: x <= 1,
// Right: x >= 1). Bracketing bisection, tolerance 1e-12 in function value;
// right-branch brackets grow by doubling.
double invert(RateFn fn, Branch branch, double y);

// gamma / invert(J, Right, 1/(a*gamma)).
double p_prime(double a, double gamma);

// Log form of the same quantity: ln gamma - ln J_R^{-1}(1/(a*gamma)).
double ln_p_prime(double a, double gamma);

struct ThresholdBounds {
  double a = 0.0;
  double gamma = 0.0;
  double p_prime = 0.0;
  double p_scaled = 0.0;        // 5*pi * p_prime, uncapped
  double p_double_prime = 0.0;  // min(gamma, p_scaled)
  bool feasible = false;        // density condition a*rate_h(5*pi*gamma) >= 5*pi
  bool nontrivial = false;      // a*gamma <= 1/rate_j(5*pi)
};

// pre: a > 1, gamma in (0, 1/(5*pi)).
ThresholdBounds threshold_bounds(double a, double gamma);

// CSV: a,gamma,p_prime,p_scaled,p_double_prime,feasible,nontrivial
// (floats with 10 significant digits, booleans as 0/1).
void write_bounds_header(std::ostream& os);
void write_bounds_row(std::ostream& os, const ThresholdBounds& b);

// Gamma values satisfying the density condition for a given a, within the
// bounds' gamma domain (0, 1/(5*pi)); empty when a < 5*pi. `cap` is the
// nontriviality bound 1/(a*rate_j(5*pi)) that tightens the upper end for
// large a.
struct GammaRange {
  double lo = 0.0;
  double hi = 0.0;
  double cap = 0.0;
  bool empty = true;

  double upper() const { return hi < cap ? hi : cap; }
  bool contains(double gamma) const {
    return !empty && gamma >= lo && gamma <= upper();
  }
};
GammaRange feasible_gamma_range(double a);

enum class TailSide { Upper, Lower };

struct TailBound {
  double lambda = 0.0;
  double k = 0.0;
  double bound = 1.0;
  TailSide side = TailSide::Upper;
};

// Chernoff-type bound exp(-lambda * rate_h(k/lambda)) on the Poisson tail
// P(Po(lambda) >= k) (Upper, requires k >= lambda) or P(Po(lambda) <= k)
// (Lower, requires k <= lambda).
TailBound poisson_tail(double lambda, double k, TailSide side);

// Sharp-order approximation of P(Po(N) >= N(1+alpha)):
// (sqrt(1+alpha)/(alpha*sqrt(2*pi))) * N^(-1/2) * exp(-N*rate_i(alpha)).
// pre: N > 0, alpha > 0 (the prefactor diverges at alpha = 0).
double bahadur_rao_poisson_tail(double N, double alpha);

// Finite-n evaluation of the stable-initial-configuration probability bound
// 1 - exp(ln n - p*a*ln n*rate_h(gamma/p)), clamped to [0,1]. Heuristic
// diagnostic; the asymptotic correction terms are dropped.
// pre: 0 < p < gamma.
double stable_config_bound(double n, double a, double gamma, double p);

// Exact tails by direct pmf summation scaled to the leading term (the
// leading pmf is evaluated in log space, so no underflow until the result
// itself leaves double range). Never computed as 1 - CDF.
double poisson_upper_tail_exact(double lambda, std::uint64_t k);
double poisson_lower_tail_exact(double lambda, std::uint64_t k);

// theta = ceil(gamma * a * ln n), the integerized activation threshold.
int theta_for(double a, double n, double gamma);

}  // namespace bootperc
