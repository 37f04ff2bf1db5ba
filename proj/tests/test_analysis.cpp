#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "bootperc/analysis.hpp"
#include "bootperc/errors.hpp"
#include "bootperc/rng.hpp"

using namespace bootperc;

namespace {

// independent tail evaluation: lgamma-based log pmf, summed small to large
double lgamma_tail(double lambda, std::uint64_t k, TailSide side) {
  std::vector<double> terms;
  if (side == TailSide::Upper) {
    for (std::uint64_t j = k;; ++j) {
      const double lt = -lambda + static_cast<double>(j) * std::log(lambda) -
                        std::lgamma(static_cast<double>(j) + 1.0);
      terms.push_back(std::exp(lt));
      if (j > k + 10 && (terms.back() == 0.0 ||
                         terms.back() < terms.front() * 1e-18))
        break;
    }
  } else {
    for (std::uint64_t j = 0; j <= k; ++j) {
      const double lt = -lambda + static_cast<double>(j) * std::log(lambda) -
                        std::lgamma(static_cast<double>(j) + 1.0);
      terms.push_back(std::exp(lt));
    }
  }
  double sum = 0.0;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) sum += *it;
  return sum;
}

}  // namespace

TEST_CASE("rate function identities") {
  CHECK(rate_h(1.0) == 0.0);
  CHECK(rate_h(0.0) == 1.0);
  CHECK(rate_h(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rate_j(1.0) == 0.0);
  CHECK(rate_j(std::exp(1.0)) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(rate_i(0.0) == 0.0);
  CHECK(rate_i(1.0) == doctest::Approx(0.386294361119891).epsilon(1e-14));

  CHECK(rate_j(5 * std::numbers::pi) ==
        doctest::Approx(1.81782977552026).epsilon(1e-13));
  CHECK(1.0 / rate_j(kFivePi) ==
        doctest::Approx(0.55010651352864).epsilon(1e-13));

  CHECK_THROWS_AS(rate_h(-0.5), param_error);
  CHECK_THROWS_AS(rate_j(0.0), param_error);
  CHECK_THROWS_AS(rate_j(-1.0), param_error);
  CHECK_THROWS_AS(rate_i(-1.0), param_error);
  CHECK_THROWS_AS(rate_i(-2.0), param_error);
}

TEST_CASE("rate_i in (-1,0) warns but evaluates") {
  CHECK(rate_i(-0.5) ==
        doctest::Approx(0.5 * std::log(0.5) + 0.5).epsilon(1e-14));
}

TEST_CASE("rate_i equals rate_h shifted by one") {
  for (int i = 0; i <= 100; ++i) {
    const double alpha = 0.1 * i;
    CHECK(rate_i(alpha) ==
          doctest::Approx(rate_h(1.0 + alpha)).epsilon(1e-12));
  }
}

TEST_CASE("rate functions are convex where claimed") {
  for (double x : {0.1, 0.5, 0.9, 1.5, 3.0, 10.0}) {
    const double h = 1e-4;
    CHECK(rate_h(x - h) + rate_h(x + h) >= 2 * rate_h(x));
  }
  // rate_j decreases left of 1 and increases right of 1
  CHECK(rate_j(0.2) > rate_j(0.5));
  CHECK(rate_j(2.0) < rate_j(5.0));
}

TEST_CASE("branch inverses land on the requested side") {
  CHECK(invert(RateFn::J, Branch::Right, 10.0 / 3.0) ==
        doctest::Approx(75.1911772792061).epsilon(1e-10));
  CHECK(invert(RateFn::J, Branch::Left, 10.0 / 3.0) <= 1.0);
  CHECK(invert(RateFn::H, Branch::Left, 0.5) <= 1.0);
  CHECK(invert(RateFn::H, Branch::Right, 0.5) >= 1.0);
  CHECK(invert(RateFn::H, Branch::Left, 1.0) ==
        doctest::Approx(0.0).epsilon(1e-9));
  // both functions are quadratically flat at x = 1, so the 1e-12 function
  // tolerance pins x only to ~1.4e-6 there
  CHECK(invert(RateFn::H, Branch::Left, 0.0) ==
        doctest::Approx(1.0).epsilon(1e-5));
  CHECK(invert(RateFn::J, Branch::Right, 0.0) ==
        doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("inverses round-trip across dense grids") {
  for (int i = 0; i <= 1000; ++i) {
    const double yj = 1e-6 + (20.0 - 1e-6) * i / 1000.0;
    const double xr = invert(RateFn::J, Branch::Right, yj);
    REQUIRE(xr >= 1.0);
    REQUIRE(std::abs(rate_j(xr) - yj) <= 1e-10);

    const double xl = invert(RateFn::J, Branch::Left, yj);
    REQUIRE(xl <= 1.0);
    REQUIRE(std::abs(rate_j(xl) - yj) <= 1e-10);
  }
  for (int i = 0; i <= 1000; ++i) {
    const double yh = static_cast<double>(i) / 1000.0;
    const double xl = invert(RateFn::H, Branch::Left, yh);
    REQUIRE(xl <= 1.0);
    REQUIRE(std::abs(rate_h(xl) - yh) <= 1e-10);

    const double yr = 50.0 * i / 1000.0;
    const double xr = invert(RateFn::H, Branch::Right, yr);
    REQUIRE(xr >= 1.0);
    REQUIRE(std::abs(rate_h(xr) - yr) <= 1e-10);
  }
}

TEST_CASE("inverse domain violations throw") {
  CHECK_THROWS_AS(invert(RateFn::H, Branch::Left, 1.5), param_error);
  CHECK_THROWS_AS(invert(RateFn::H, Branch::Left, -0.1), param_error);
  CHECK_THROWS_AS(invert(RateFn::J, Branch::Right, -1.0), param_error);
}

TEST_CASE("p_prime frozen values") {
  // ratio form keeps the tolerance relative for small magnitudes
  CHECK(p_prime(30, 0.01) / 1.329943267528e-4 ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(p_prime(35, 1.0 / 75.0) / 6.020364775356e-4 ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(p_prime(3, 0.05) / 2.341975771499e-5 ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(p_prime(100, 0.05) / 0.02466197118876 ==
        doctest::Approx(1.0).epsilon(1e-9));

  CHECK_THROWS_AS(p_prime(1.0, 0.01), param_error);
  CHECK_THROWS_AS(p_prime(30, 0.0), param_error);
  CHECK_THROWS_AS(p_prime(30, 1.0), param_error);
}

TEST_CASE("ln_p_prime agrees with the direct form") {
  // a=2, gamma=0.001 puts the inverse near exp(501), so this grid also
  // exercises the deep right tail; ratio form keeps the comparison relative
  // at magnitudes like 1e-221.
  for (double a : {2.0, 5.0, 30.0, 100.0, 1000.0})
    for (double gamma : {0.001, 0.01, 0.05, 0.3})
      CHECK(std::exp(ln_p_prime(a, gamma)) / p_prime(a, gamma) ==
            doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("p_prime beyond double range reports a numeric error") {
  // 1/(a*gamma) = 1250: the inverse would sit near exp(1251), past the top
  // of double range.
  CHECK(p_prime(2.0, 0.001) / 2.620985187095e-221 ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(p_prime(2.0, 0.0004), numeric_error);
  CHECK_THROWS_AS(ln_p_prime(2.0, 0.0004), numeric_error);
}

TEST_CASE("p_prime grows with a and with gamma") {
  double prev = 0.0;
  for (double a : {3.0, 10.0, 30.0, 100.0, 300.0}) {
    const double p = p_prime(a, 0.02);
    CHECK(p > prev);
    prev = p;
  }
  prev = 0.0;
  for (double g : {0.001, 0.005, 0.02, 0.05}) {
    const double p = p_prime(20, g);
    CHECK(p > prev);
    prev = p;
  }
}

TEST_CASE("threshold_bounds assembles the frozen pair") {
  const ThresholdBounds b = threshold_bounds(30, 0.01);
  CHECK(b.a == 30.0);
  CHECK(b.gamma == 0.01);
  CHECK(b.p_prime / 1.329943267528e-4 == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(b.p_scaled == kFivePi * b.p_prime);  // literal multiplication
  CHECK(b.p_scaled / 2.089069999479e-3 == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(b.p_double_prime == b.p_scaled);  // below gamma, the min is inactive
  CHECK(b.feasible);
  CHECK(b.nontrivial);

  const ThresholdBounds c = threshold_bounds(35, 1.0 / 75.0);
  CHECK(c.p_prime / 6.020364775356e-4 == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(c.p_double_prime / 9.456766875094e-3 ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(c.feasible);
}

TEST_CASE("threshold_bounds flags") {
  // density condition a*rate_h(5 pi gamma) >= 5 pi
  CHECK(!threshold_bounds(100, 0.05).feasible);
  CHECK(threshold_bounds(700, 0.05).feasible);

  // nontriviality a*gamma <= 1/rate_j(5 pi) = 0.5501
  CHECK(threshold_bounds(11.0, 0.05).nontrivial);    // 0.55 just inside
  CHECK(!threshold_bounds(11.01, 0.05).nontrivial);  // 0.5505 just outside

  CHECK_THROWS_AS(threshold_bounds(30, 0.0637), param_error);  // 1/(5pi) = 0.06366
  CHECK_THROWS_AS(threshold_bounds(30, 0.0), param_error);
  CHECK_THROWS_AS(threshold_bounds(0.5, 0.01), param_error);
}

TEST_CASE("bound ordering holds across the domain") {
  for (double a : {2.0, 10.0, 30.0, 200.0})
    for (double gamma : {0.001, 0.01, 0.03, 0.06}) {
      const ThresholdBounds b = threshold_bounds(a, gamma);
      CHECK(b.p_prime > 0.0);
      CHECK(b.p_prime <= gamma);
      CHECK(b.p_prime < b.p_scaled);
      CHECK(b.p_double_prime <= gamma);
      CHECK(b.p_double_prime <= b.p_scaled);
    }
}

TEST_CASE("bounds CSV uses 10 significant digits") {
  std::ostringstream os;
  write_bounds_header(os);
  write_bounds_row(os, threshold_bounds(30, 0.01));
  CHECK(os.str() ==
        "a,gamma,p_prime,p_scaled,p_double_prime,feasible,nontrivial\n"
        "30,0.01,0.0001329943268,0.002089069999,0.002089069999,1,1\n");
}

TEST_CASE("feasible_gamma_range matches the density condition") {
  CHECK(feasible_gamma_range(10).empty);
  CHECK(feasible_gamma_range(15.7).empty);  // 5 pi = 15.708

  const GammaRange r30 = feasible_gamma_range(30);
  REQUIRE(!r30.empty);
  CHECK(r30.lo == 0.0);
  CHECK(r30.hi / 0.0110091322421 == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r30.cap / 0.0183368837843 == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r30.upper() == r30.hi);
  CHECK(r30.contains(0.01));
  CHECK(!r30.contains(0.0111));

  const GammaRange r35 = feasible_gamma_range(35);
  CHECK(r35.hi / 0.0139256037082 == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r35.contains(1.0 / 75.0));

  // for large a the nontriviality cap tightens the upper end
  const GammaRange r100 = feasible_gamma_range(100);
  CHECK(r100.hi / 0.0314979808883 == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r100.cap / 0.00550106513529 == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r100.upper() == r100.cap);

  // endpoints actually satisfy / violate a*rate_h(5 pi gamma) >= 5 pi
  CHECK(30 * rate_h(kFivePi * (r30.hi - 1e-9)) >= kFivePi);
  CHECK(30 * rate_h(kFivePi * (r30.hi + 1e-6)) < kFivePi);
}

TEST_CASE("poisson_tail evaluates the Chernoff form") {
  const TailBound up = poisson_tail(10, 20, TailSide::Upper);
  CHECK(up.bound == doctest::Approx(0.0210060747097).epsilon(1e-10));
  CHECK(up.lambda == 10.0);
  CHECK(up.k == 20.0);

  const TailBound lo = poisson_tail(10, 5, TailSide::Lower);
  CHECK(lo.bound == doctest::Approx(0.215614303971).epsilon(1e-10));

  CHECK(poisson_tail(7, 7, TailSide::Upper).bound == 1.0);
  CHECK(poisson_tail(7, 7, TailSide::Lower).bound == 1.0);

  CHECK_THROWS_AS(poisson_tail(10, 5, TailSide::Upper), param_error);
  CHECK_THROWS_AS(poisson_tail(10, 20, TailSide::Lower), param_error);
  CHECK_THROWS_AS(poisson_tail(0.0, 1, TailSide::Upper), param_error);
  CHECK_THROWS_AS(poisson_tail(10, -1, TailSide::Lower), param_error);
}

TEST_CASE("exact tails match high-precision references") {
  CHECK(poisson_upper_tail_exact(10, 20) / 0.00345434197586 ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(poisson_lower_tail_exact(10, 5) / 0.067085962879 ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(poisson_upper_tail_exact(1, 3) / 0.0803013970714 ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(poisson_lower_tail_exact(2, 2) / 0.676676416183 ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(poisson_upper_tail_exact(0.5, 0) == 1.0);
  CHECK(poisson_upper_tail_exact(123.4, 0) == 1.0);
  CHECK_THROWS_AS(poisson_upper_tail_exact(0.0, 3), param_error);
}

TEST_CASE("upper and lower exact tails partition the mass") {
  for (const auto& [lambda, k] : std::vector<std::pair<double, std::uint64_t>>{
           {2.0, 3}, {10.0, 11}, {33.7, 40}, {100.0, 90}, {0.3, 1}}) {
    CHECK(poisson_upper_tail_exact(lambda, k) +
              poisson_lower_tail_exact(lambda, k - 1) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("exact tails agree with an lgamma-based recomputation") {
  Xoshiro256pp rng(13579);
  for (int rep = 0; rep < 200; ++rep) {
    const double lambda = 0.1 + 49.9 * rng.next_unit();
    const auto k_up = static_cast<std::uint64_t>(
        std::ceil(lambda * (1.0 + 2.0 * rng.next_unit())));
    CAPTURE(lambda);
    CAPTURE(k_up);
    // ratio form: the tails range over many orders of magnitude
    REQUIRE(poisson_upper_tail_exact(lambda, k_up) /
                lgamma_tail(lambda, k_up, TailSide::Upper) ==
            doctest::Approx(1.0).epsilon(1e-9));

    const auto k_lo =
        static_cast<std::uint64_t>(std::floor(lambda * rng.next_unit()));
    REQUIRE(poisson_lower_tail_exact(lambda, k_lo) /
                lgamma_tail(lambda, k_lo, TailSide::Lower) ==
            doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("Chernoff bounds dominate the exact tails") {
  Xoshiro256pp rng(24680);
  for (int rep = 0; rep < 200; ++rep) {
    const double lambda = 0.1 + 49.9 * rng.next_unit();
    const auto k_up = static_cast<std::uint64_t>(
        std::ceil(lambda * (1.0 + 2.0 * rng.next_unit())));
    const double chernoff_up =
        poisson_tail(lambda, static_cast<double>(k_up), TailSide::Upper).bound;
    REQUIRE(chernoff_up >=
            poisson_upper_tail_exact(lambda, k_up) * (1 - 1e-12));

    const auto k_lo =
        static_cast<std::uint64_t>(std::floor(lambda * rng.next_unit()));
    const double chernoff_lo =
        poisson_tail(lambda, static_cast<double>(k_lo), TailSide::Lower).bound;
    REQUIRE(chernoff_lo >=
            poisson_lower_tail_exact(lambda, k_lo) * (1 - 1e-12));
  }
}

TEST_CASE("bahadur_rao ratio to the exact tail shrinks toward 1") {
  CHECK(bahadur_rao_poisson_tail(100, 0.5) / 1.95443363394e-6 ==
        doctest::Approx(1.0).epsilon(1e-10));

  const double frozen[][2] = {{50, 1.06973190951},  {100, 1.03726928024},
                              {200, 1.01938118261}, {400, 1.00990341511},
                              {500, 1.00795883026}, {800, 1.0050089996}};
  double prev = 2.0;
  for (const auto& [N, expected] : frozen) {
    const auto k = static_cast<std::uint64_t>(N * 1.5);
    const double ratio =
        bahadur_rao_poisson_tail(N, 0.5) / poisson_upper_tail_exact(N, k);
    CHECK(ratio == doctest::Approx(expected).epsilon(1e-6));
    CHECK(ratio > 1.0);
    CHECK(ratio < prev);
    prev = ratio;
  }

  const double r100 =
      bahadur_rao_poisson_tail(100, 1.0) / poisson_upper_tail_exact(100, 200);
  CHECK(r100 == doctest::Approx(1.01013820354).epsilon(1e-6));
  CHECK(r100 > 0.5);
  CHECK(r100 < 2.0);

  CHECK_THROWS_AS(bahadur_rao_poisson_tail(100, 0.0), param_error);
  CHECK_THROWS_AS(bahadur_rao_poisson_tail(100, -0.5), param_error);
  CHECK_THROWS_AS(bahadur_rao_poisson_tail(0.0, 0.5), param_error);
}

TEST_CASE("stable_config_bound frozen value and clamps") {
  const double pp = p_prime(30, 0.01);
  CHECK(stable_config_bound(15000, 30, 0.01, pp / 2) ==
        doctest::Approx(0.8619815384686).epsilon(1e-9));

  // at p_prime the exponent crosses zero by construction
  CHECK(stable_config_bound(15000, 30, 0.01, pp) <= 1e-9);

  // above p_prime the raw bound is negative and clamps to zero
  CHECK(stable_config_bound(15000, 30, 0.01, 0.009) == 0.0);

  // deep below p_prime it saturates toward one
  CHECK(stable_config_bound(15000, 30, 0.01, pp / 100) > 0.999);

  CHECK_THROWS_AS(stable_config_bound(15000, 30, 0.01, 0.01), param_error);
  CHECK_THROWS_AS(stable_config_bound(15000, 30, 0.01, 0.02), param_error);
  CHECK_THROWS_AS(stable_config_bound(15000, 30, 0.01, 0.0), param_error);
  CHECK_THROWS_AS(stable_config_bound(1.0, 30, 0.01, 0.005), param_error);
}

TEST_CASE("theta_for integerizes gamma a ln n upward") {
  CHECK(theta_for(30, 15000, 0.01) == 3);
  CHECK(theta_for(30, 25000, 0.01) == 4);
  CHECK(theta_for(35, 15000, 1.0 / 75.0) == 5);
  CHECK(theta_for(35, 25000, 1.0 / 75.0) == 5);
  CHECK_THROWS_AS(theta_for(30, 15000, 0.0), param_error);
  CHECK_THROWS_AS(theta_for(0.0, 15000, 0.01), param_error);
  CHECK_THROWS_AS(theta_for(30, 1.0, 0.01), param_error);
}
