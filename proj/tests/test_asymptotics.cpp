#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "nomapair/asymptotics.hpp"
#include "nomapair/channel.hpp"
#include "nomapair/errors.hpp"
#include "nomapair/quadrature.hpp"
#include "nomapair/rates.hpp"
#include "nomapair/rng.hpp"

using namespace nomapair;

TEST_CASE("adaptive quadrature nails smooth and spiky integrands") {
  const auto sq = integrate_adaptive([](double x) { return x * x; }, 0.0, 1.0, 1e-12);
  CHECK(sq.value == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  const double pi = std::acos(-1.0);
  const auto s = integrate_adaptive([](double x) { return std::sin(x); }, 0.0, pi, 1e-12);
  CHECK(s.value == doctest::Approx(2.0).epsilon(1e-11));

  // reversed endpoints flip the sign
  const auto rev = integrate_adaptive([](double x) { return std::sin(x); }, pi, 0.0, 1e-12);
  CHECK(rev.value == doctest::Approx(-2.0).epsilon(1e-11));

  // needle of width 1e-3 inside a unit interval
  const double sigma = 1e-3;
  const auto g = integrate_adaptive(
      [&](double x) {
        const double d = (x - 0.5) / sigma;
        return std::exp(-0.5 * d * d);
      },
      0.0, 1.0, 1e-10);
  CHECK(g.value == doctest::Approx(sigma * std::sqrt(2.0 * pi)).epsilon(1e-9));

  CHECK(integrate_adaptive([](double x) { return x; }, 2.0, 2.0, 1e-6).value == 0.0);
}

TEST_CASE("quadrature rejects bad tolerances, endpoints, and integrands") {
  CHECK_THROWS_AS(integrate_adaptive([](double x) { return x; }, 0.0, 1.0, 0.0), ArgumentError);
  CHECK_THROWS_AS(integrate_adaptive([](double x) { return x; }, 0.0, 1.0, -1e-6), ArgumentError);
  CHECK_THROWS_AS(
      integrate_adaptive([](double x) { return x; }, 0.0,
                         std::numeric_limits<double>::infinity(), 1e-6),
      ArgumentError);
  CHECK_THROWS_AS(integrate_adaptive([](double x) { return 1.0 / x; }, -1.0, 1.0, 1e-6),
                  NumericError);
}

TEST_CASE("point-mass distribution has exponential closed forms") {
  const double g = 5.0;
  const SnrDistribution d = SnrDistribution::point_mass(g);
  CHECK(d.cdf(0.0) == 0.0);
  CHECK(d.survival(0.0) == 1.0);
  for (double z : {0.01, 1.0, 7.0, 40.0}) {
    CHECK(d.cdf(z) == doctest::Approx(1.0 - std::exp(-z / g)).epsilon(1e-14));
    CHECK(d.survival(z) == doctest::Approx(std::exp(-z / g)).epsilon(1e-14));
    CHECK(d.density(z) == doctest::Approx(std::exp(-z / g) / g).epsilon(1e-14));
    CHECK(d.cdf(z) + d.survival(z) == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(d.quantile(0.0) == 0.0);
  CHECK(d.quantile(0.5) == doctest::Approx(g * std::log(2.0)).epsilon(1e-13));
  CHECK(d.upper_quantile(1.0) == 0.0);
  // deep tail stays accurate through the log parameterization
  CHECK(d.upper_quantile(1e-200) == doctest::Approx(200.0 * g * std::log(10.0)).epsilon(1e-12));

  CHECK_THROWS_AS(d.cdf(-0.1), ArgumentError);
  CHECK_THROWS_AS(d.quantile(1.0), ArgumentError);
  CHECK_THROWS_AS(d.quantile(-0.01), ArgumentError);
  CHECK_THROWS_AS(d.upper_quantile(0.0), ArgumentError);
  CHECK_THROWS_AS(d.upper_quantile(1.5), ArgumentError);
  CHECK_THROWS_AS(SnrDistribution::point_mass(-1.0), ArgumentError);
  CHECK_THROWS_AS(SnrDistribution::empirical({}), ArgumentError);
}

TEST_CASE("disc equal-power distribution matches its closed forms") {
  const double R = 100.0, r0 = 1.0, P = 2000.0, n0 = 1.0;
  const SnrDistribution d = SnrDistribution::disc_ep(R, r0, P, n0);
  const double a = n0 * r0 * r0 / P;
  const double h = n0 * R * R / P;
  const double b = a + h;

  for (double z : {1e-8, 1e-4, 0.05, 0.7, 3.0, 25.0}) {
    const double surv = std::exp(-z * a) * -std::expm1(-z * h) / (z * h);
    CHECK(d.survival(z) == doctest::Approx(surv).epsilon(1e-9));
    CHECK(d.cdf(z) == doctest::Approx(1.0 - surv).epsilon(1e-9));
    if (z * b >= 1e-3) {
      // below this the subtraction in the closed form loses too many digits;
      // the quadrature check covers small z
      const double dens =
          (std::exp(-z * a) * (1.0 + z * a) - std::exp(-z * b) * (1.0 + z * b)) / (z * z * h);
      CHECK(d.density(z) == doctest::Approx(dens).epsilon(1e-8));
    }

    // density is the mixture of exponentials over the uniform squared radius
    const auto mix = integrate_adaptive(
        [&](double u) {
          const double inv = a + h * u;
          return inv * std::exp(-z * inv);
        },
        0.0, 1.0, 1e-12);
    CHECK(d.density(z) == doctest::Approx(mix.value).epsilon(1e-8));
  }
  CHECK(d.density(0.0) == doctest::Approx(a + 0.5 * h).epsilon(1e-10));
  CHECK(d.survival(0.0) == 1.0);
}

TEST_CASE("quantiles invert the cdf for every distribution kind") {
  RngStream rng(51, 0);
  std::vector<SnrDistribution> dists;
  dists.push_back(SnrDistribution::point_mass(3.0));
  dists.push_back(SnrDistribution::empirical({0.5, 2.0, 9.0, 31.0}));
  dists.push_back(SnrDistribution::disc_ep(100.0, 1.0, 5000.0, 1.0));
  for (const SnrDistribution& d : dists) {
    for (int i = 0; i < 300; ++i) {
      const double t = rng.uniform();
      const double z = d.quantile(t);
      CHECK(d.cdf(z) == doctest::Approx(t).epsilon(5e-9));
      const double s = 1e-6 + (1.0 - 1e-6) * rng.uniform();
      const double zu = d.upper_quantile(s);
      CHECK(d.survival(zu) == doctest::Approx(s).epsilon(5e-9));
    }
    // the two parameterizations agree where they overlap
    CHECK(d.quantile(0.75) == doctest::Approx(d.upper_quantile(0.25)).epsilon(1e-8));
  }
}

TEST_CASE("flat limits reproduce the independently integrated references") {
  const SnrDistribution pm = SnrDistribution::point_mass(std::pow(10.0, 1.5));
  CHECK(flat_optimal_avg_rate(pm) == doctest::Approx(2.959291126936213).epsilon(2e-6));
  CHECK(flat_random_avg_rate(pm) == doctest::Approx(2.8179812087361564).epsilon(5e-5));
}

TEST_CASE("matched extremes beat random pairing in the limit for every kind") {
  std::vector<SnrDistribution> dists;
  dists.push_back(SnrDistribution::point_mass(10.0));
  dists.push_back(SnrDistribution::empirical({0.5, 2.0, 9.0, 31.0}));
  dists.push_back(SnrDistribution::disc_ep(100.0, 1.0, 5000.0, 1.0));
  for (const SnrDistribution& d : dists) {
    const double opt = flat_optimal_avg_rate(d, 1e-5);
    const double rnd = flat_random_avg_rate(d, 1e-4);
    CHECK(opt > rnd);
    CHECK(rnd > 0.0);
  }
}

TEST_CASE("random-pairing limit agrees with straight Monte Carlo") {
  const double g = 10.0;
  const SnrDistribution pm = SnrDistribution::point_mass(g);
  const double lim = flat_random_avg_rate(pm, 1e-6);
  RngStream rng(52, 7);
  double acc = 0.0;
  const int n = 4000000;
  for (int i = 0; i < n; ++i) {
    const double t1 = -g * std::log(rng.uniform_pos());
    const double t2 = -g * std::log(rng.uniform_pos());
    acc += 0.5 * std::log2(1.0 + t1 + t2);
  }
  CHECK(acc / n == doctest::Approx(lim).epsilon(0.005));
}

TEST_CASE("scaling-law normalizers and the Stirling ratio") {
  const auto [first, second] = theorem1_normalizers(10, 1.0);
  CHECK(first == doctest::Approx(12.03254472699722).epsilon(1e-12));
  CHECK(second == doctest::Approx(24.867581772686385).epsilon(1e-12));
  CHECK_THROWS_AS(theorem1_normalizers(1, 1.0), ArgumentError);

  CHECK(stirling_ratio(2, 0.3) == 0.5);
  CHECK(stirling_ratio(2, 7.0) == 0.5);
  const double r100 = stirling_ratio(100, 1.0);
  const double r1000 = stirling_ratio(1000, 1.0);
  const double r10000 = stirling_ratio(10000, 1.0);
  CHECK(r1000 == doctest::Approx(0.9402446147212179).epsilon(1e-12));
  CHECK(r100 < r1000);
  CHECK(r1000 < r10000);
  CHECK(r10000 < 1.0);
}

TEST_CASE("large-system eigenvalue limit and its Stieltjes transform") {
  CHECK(mbass_limit_eigenvalue(1.0, 4.0) == doctest::Approx(1.5615528128088303).epsilon(1e-14));
  CHECK(mbass_limit_eigenvalue(2.0, 10.0) == doctest::Approx(0.8442887702247601).epsilon(1e-14));
  CHECK(mbass_limit_rate_per_user(2.0, 10.0) ==
        doctest::Approx(0.8830645639854101).epsilon(1e-13));

  // G(-1/gamma) recovers the eigenvalue limit
  RngStream rng(53, 0);
  for (int i = 0; i < 1000; ++i) {
    const double alpha = 0.2 + 4.0 * rng.uniform();
    const double gamma = 0.05 + 30.0 * rng.uniform();
    CHECK(stieltjes_G(-1.0 / gamma, alpha) ==
          doctest::Approx(mbass_limit_eigenvalue(alpha, gamma)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(stieltjes_G(0.0, 2.0), ArgumentError);
  CHECK_THROWS_AS(stieltjes_G(1.0, 2.0), ArgumentError);
  CHECK(stieltjes_G(-1e9, 2.0) == doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("finite random matrices already sit near the eigenvalue limit") {
  const int n = 50;
  const int k = 2 * n;
  const double gamma = 10.0;
  RngStream rng(54, 0);
  MimoSystem sys;
  sys.channel = sample_fading_mbass(n, k, 1.0 / n, rng).matrix;
  sys.tx_powers = Eigen::VectorXd::Constant(k, gamma);
  sys.noise_variance = 1.0;
  const Eigen::MatrixXcd s_inv = receive_covariance_inverse(sys);
  std::vector<double> eigs;
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      const PairEigenvalues e = pair_eigenvalues_from_downdate(sys, s_inv, a, b);
      eigs.push_back(e.lambda1);
      eigs.push_back(e.lambda2);
    }
  }
  std::sort(eigs.begin(), eigs.end());
  const double median = eigs[eigs.size() / 2];
  CHECK(median == doctest::Approx(mbass_limit_eigenvalue(2.0, gamma)).epsilon(0.10));
}

TEST_CASE("full-cancellation ergodic benchmark") {
  CHECK(ergodic_capacity_per_user(std::pow(10.0, 1.5)) ==
        doctest::Approx(3.002762347799536).epsilon(1e-14));
  CHECK(ergodic_capacity_per_user(0.0) == 0.0);
  CHECK_THROWS_AS(ergodic_capacity_per_user(-0.5), ArgumentError);
}
