#include "nomapair/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nomapair/errors.hpp"
#include "nomapair/quadrature.hpp"
#include "nomapair/rates.hpp"

namespace nomapair {

namespace {

constexpr double kCdfQuadRel = 1e-10;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    std::ostringstream os;
    os << what << " must be positive and finite, got " << v;
    throw ArgumentError(os.str());
  }
}

}  // namespace

SnrDistribution SnrDistribution::point_mass(double avg_snr) {
  require_positive(avg_snr, "point_mass avg_snr");
  SnrDistribution d;
  d.kind_ = Kind::PointMass;
  d.avg_snr_ = avg_snr;
  return d;
}

SnrDistribution SnrDistribution::empirical(std::vector<double> avg_snrs) {
  if (avg_snrs.empty()) throw ArgumentError("empirical distribution needs at least one sample");
  for (double g : avg_snrs) require_positive(g, "empirical avg_snr sample");
  SnrDistribution d;
  d.kind_ = Kind::Empirical;
  d.samples_ = std::move(avg_snrs);
  return d;
}

SnrDistribution SnrDistribution::disc_ep(double disc_radius, double r0, double tx_power,
                                         double noise_variance) {
  require_positive(disc_radius, "disc_radius");
  require_positive(r0, "r0");
  require_positive(tx_power, "tx_power");
  require_positive(noise_variance, "noise_variance");
  SnrDistribution d;
  d.kind_ = Kind::DiscEp;
  const double beta = noise_variance / tx_power;
  d.beta_a_ = beta * r0 * r0;
  d.beta_h_ = beta * disc_radius * disc_radius;
  return d;
}

double SnrDistribution::survival(double z) const {
  if (!(z >= 0.0)) throw ArgumentError("survival needs z >= 0");
  if (z == 0.0) return 1.0;
  switch (kind_) {
    case Kind::PointMass:
      return std::exp(-z / avg_snr_);
    case Kind::Empirical: {
      double acc = 0.0;
      for (double g : samples_) acc += std::exp(-z / g);
      return acc / static_cast<double>(samples_.size());
    }
    case Kind::DiscEp: {
      const double a = beta_a_;
      const double h = beta_h_;
      auto f = [&](double v) { return std::exp(-z * (a + h * v)); };
      return integrate_adaptive(f, 0.0, 1.0, kCdfQuadRel).value;
    }
  }
  throw NumericError("unreachable distribution kind");
}

double SnrDistribution::cdf(double z) const {
  if (!(z >= 0.0)) throw ArgumentError("cdf needs z >= 0");
  if (z == 0.0) return 0.0;
  switch (kind_) {
    case Kind::PointMass:
      return -std::expm1(-z / avg_snr_);
    case Kind::Empirical: {
      double acc = 0.0;
      for (double g : samples_) acc += -std::expm1(-z / g);
      return acc / static_cast<double>(samples_.size());
    }
    case Kind::DiscEp: {
      const double a = beta_a_;
      const double h = beta_h_;
      auto f = [&](double v) { return -std::expm1(-z * (a + h * v)); };
      return integrate_adaptive(f, 0.0, 1.0, kCdfQuadRel).value;
    }
  }
  throw NumericError("unreachable distribution kind");
}

double SnrDistribution::density(double z) const {
  if (!(z >= 0.0)) throw ArgumentError("density needs z >= 0");
  switch (kind_) {
    case Kind::PointMass:
      return std::exp(-z / avg_snr_) / avg_snr_;
    case Kind::Empirical: {
      double acc = 0.0;
      for (double g : samples_) acc += std::exp(-z / g) / g;
      return acc / static_cast<double>(samples_.size());
    }
    case Kind::DiscEp: {
      const double a = beta_a_;
      const double h = beta_h_;
      const double b = a + h;
      if (z * b < 1e-3) {
        // series for (1/h) * int_a^b u exp(-z u) du; avoids the cancellation
        // of the closed form near z = 0
        auto pw = [](double x, int k) { return std::pow(x, k); };
        double s = (pw(b, 2) - pw(a, 2)) / 2.0;
        s -= z * (pw(b, 3) - pw(a, 3)) / 3.0;
        s += z * z * (pw(b, 4) - pw(a, 4)) / 8.0;
        s -= z * z * z * (pw(b, 5) - pw(a, 5)) / 30.0;
        s += z * z * z * z * (pw(b, 6) - pw(a, 6)) / 144.0;
        return s / h;
      }
      const double num = std::exp(-z * a) * (1.0 + z * a) - std::exp(-z * b) * (1.0 + z * b);
      return num / (z * z * h);
    }
  }
  throw NumericError("unreachable distribution kind");
}

double SnrDistribution::scale_hint() const {
  switch (kind_) {
    case Kind::PointMass:
      return avg_snr_;
    case Kind::Empirical:
      return *std::max_element(samples_.begin(), samples_.end());
    case Kind::DiscEp:
      return 1.0 / beta_a_;
  }
  return 1.0;
}

double SnrDistribution::quantile(double t) const {
  if (!(t >= 0.0) || t >= 1.0) throw ArgumentError("quantile needs t in [0, 1)");
  if (t == 0.0) return 0.0;
  if (kind_ == Kind::PointMass) return -avg_snr_ * std::log1p(-t);
  if (t > 0.5) return upper_quantile(1.0 - t);

  double lo = 0.0;
  double hi = scale_hint();
  while (cdf(hi) < t) {
    hi *= 2.0;
    if (hi > 1e300) throw NumericError("quantile bracket ran away");
  }
  double best = hi;
  double best_gap = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double gap = std::abs(cdf(mid) - t);
    if (gap < best_gap) {
      best_gap = gap;
      best = mid;
    }
    if (gap < 1e-12) return mid;
    if (cdf(mid) < t) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-15 * std::max(1.0, hi)) break;
  }
  return best;
}

double SnrDistribution::upper_quantile(double s) const {
  if (!(s > 0.0) || s > 1.0) throw ArgumentError("upper_quantile needs survival in (0, 1]");
  if (s == 1.0) return 0.0;
  if (kind_ == Kind::PointMass) return -avg_snr_ * std::log(s);

  double lo = 0.0;
  double hi = scale_hint();
  while (survival(hi) > s) {
    hi *= 2.0;
    if (hi > 1e300) throw NumericError("upper_quantile bracket ran away");
  }
  double best = hi;
  double best_gap = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double sv = survival(mid);
    const double gap = std::abs(sv - s) / s;
    if (gap < best_gap) {
      best_gap = gap;
      best = mid;
    }
    if (gap < 1e-9) return mid;
    if (sv > s) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-15 * std::max(1.0, hi)) break;
  }
  return best;
}

double flat_optimal_avg_rate(const SnrDistribution& dist, double rel_tol) {
  require_positive(rel_tol, "rel_tol");
  // After t = exp(-u) the pairing integrand is smooth on [0, U] and the
  // remainder beyond U shrinks like exp(-U) times a slowly growing level.
  auto level = [&](double u) {
    const double p = 0.5 * std::exp(-u);
    return 0.5 * log2_1p(dist.quantile(p) + dist.upper_quantile(p));
  };
  double upper = 46.0;
  for (int attempt = 0; attempt < 4; ++attempt) {
    auto integrand = [&](double u) { return std::exp(-u) * level(u); };
    const QuadratureResult r = integrate_adaptive(integrand, 0.0, upper, rel_tol);
    const double edge = level(upper);
    const double slope = std::max(0.0, (level(upper + 5.0) - edge) / 5.0);
    const double tail = std::exp(-upper) * (edge + slope);
    if (tail <= 1e-9 * std::max(std::abs(r.value), 1e-12)) return r.value;
    upper += 20.0;
  }
  throw NumericError("flat_optimal_avg_rate: truncation tail stayed above budget");
}

double flat_random_avg_rate(const SnrDistribution& dist, double rel_tol) {
  require_positive(rel_tol, "rel_tol");
  const double cut = dist.upper_quantile(1e-10);
  auto inner = [&](double t1) {
    auto f = [&](double t2) { return log2_1p(t1 + t2) * dist.density(t2); };
    return integrate_adaptive(f, 0.0, cut, 1e-7).value;
  };
  auto outer = [&](double t1) { return dist.density(t1) * inner(t1); };
  return 0.5 * integrate_adaptive(outer, 0.0, cut, rel_tol).value;
}

std::pair<double, double> theorem1_normalizers(long M, double c) {
  if (M < 2) throw ArgumentError("theorem1_normalizers needs M >= 2");
  require_positive(c, "normalizer snr c");
  const double m = static_cast<double>(M);
  const double lnm = std::log(m);
  return {m * std::log2(lnm), m * log2_1p(2.0 * c * lnm)};
}

double stirling_ratio(long M, double c) {
  if (M < 2) throw ArgumentError("stirling_ratio needs M >= 2");
  require_positive(c, "stirling_ratio snr c");
  double acc = 0.0;
  for (long m = 2; m <= M; ++m) acc += log2_1p(2.0 * c * std::log(static_cast<double>(m)));
  return acc / (static_cast<double>(M) * log2_1p(2.0 * c * std::log(static_cast<double>(M))));
}

double mbass_limit_eigenvalue(double alpha, double gamma) {
  require_positive(alpha, "alpha");
  require_positive(gamma, "gamma");
  const double q = 0.5 * (1.0 - alpha) * gamma;
  return std::sqrt(q * q + 0.5 * (1.0 + alpha) * gamma + 0.25) - 0.5 + q;
}

double stieltjes_G(double w, double alpha) {
  require_positive(alpha, "alpha");
  if (!(w < 0.0)) throw ArgumentError("stieltjes_G is evaluated on the negative real axis");
  const double p = (1.0 - alpha) / (2.0 * w);
  return std::sqrt(p * p - (1.0 + alpha) / (2.0 * w) + 0.25) - 0.5 - p;
}

double mbass_limit_rate_per_user(double alpha, double gamma) {
  return (2.0 / alpha) * log2_1p(mbass_limit_eigenvalue(alpha, gamma));
}

double ergodic_capacity_per_user(double avg_snr) {
  if (!(avg_snr >= 0.0) || !std::isfinite(avg_snr)) {
    throw ArgumentError("ergodic_capacity_per_user needs avg_snr >= 0");
  }
  return 0.5 * log2_1p(2.0 * avg_snr);
}

}  // namespace nomapair
