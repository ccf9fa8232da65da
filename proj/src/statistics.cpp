#include "fskellam/statistics.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <map>
#include <vector>

#include "fskellam/errors.hpp"

namespace fskellam::stats {

namespace {

void require_nonempty(std::span<const double> xs) {
  if (xs.empty()) throw DomainError("statistic of an empty sample");
}

std::vector<double> sorted_copy(std::span<const double> xs) {
  std::vector<double> v(xs.begin(), xs.end());
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

Estimate mean(std::span<const double> xs) {
  require_nonempty(xs);
  const double n = static_cast<double>(xs.size());
  double m = 0.0;
  for (double x : xs) m += x;
  m /= n;
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  const double sd = xs.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  return {m, sd / std::sqrt(n)};
}

Estimate empirical_mgf(std::span<const double> xs, double theta) {
  std::vector<double> e(xs.size());
  std::transform(xs.begin(), xs.end(), e.begin(), [theta](double x) { return std::exp(theta * x); });
  return mean(e);
}

Estimate variance(std::span<const double> xs) {
  require_nonempty(xs);
  const double n = static_cast<double>(xs.size());
  const double m = mean(xs).value;
  double m2 = 0.0;
  double m4 = 0.0;
  for (double x : xs) {
    const double d2 = (x - m) * (x - m);
    m2 += d2;
    m4 += d2 * d2;
  }
  const double var = m2 / (n - 1.0);
  m2 /= n;
  m4 /= n;
  return {var, std::sqrt(std::max(m4 - m2 * m2, 0.0) / n)};
}

std::size_t tail_hits(std::span<const double> xs, double threshold) {
  return static_cast<std::size_t>(
      std::count_if(xs.begin(), xs.end(), [threshold](double x) { return std::abs(x) > threshold; }));
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  require_nonempty(a);
  require_nonempty(b);
  const auto sa = sorted_copy(a);
  const auto sb = sorted_copy(b);
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < sa.size() || j < sb.size()) {
    double v;
    if (j == sb.size() || (i < sa.size() && sa[i] <= sb[j])) {
      v = sa[i];
    } else {
      v = sb[j];
    }
    while (i < sa.size() && sa[i] <= v) ++i;
    while (j < sb.size() && sb[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_one_sample(std::span<const double> xs, const std::function<double(double)>& cdf) {
  require_nonempty(xs);
  const auto s = sorted_copy(xs);
  const double n = static_cast<double>(s.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < s.size()) {
    const double v = s[i];
    const double before = static_cast<double>(i) / n;
    while (i < s.size() && s[i] == v) ++i;
    const double after = static_cast<double>(i) / n;
    const double f = cdf(v);
    d = std::max({d, std::abs(after - f), std::abs(f - before)});
  }
  return d;
}

ChiSquareResult chi_square_two_sample(std::span<const double> a, std::span<const double> b,
                                      double min_bin_count) {
  require_nonempty(a);
  require_nonempty(b);
  std::map<double, std::pair<double, double>> counts;
  for (double x : a) counts[x].first += 1.0;
  for (double x : b) counts[x].second += 1.0;

  std::vector<std::pair<double, double>> bins;
  std::pair<double, double> open{0.0, 0.0};
  for (const auto& [value, c] : counts) {
    open.first += c.first;
    open.second += c.second;
    if (open.first + open.second >= min_bin_count) {
      bins.push_back(open);
      open = {0.0, 0.0};
    }
  }
  if (open.first + open.second > 0.0) {
    if (bins.empty()) {
      bins.push_back(open);
    } else {
      bins.back().first += open.first;
      bins.back().second += open.second;
    }
  }

  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double ka = std::sqrt(nb / na);
  const double kb = std::sqrt(na / nb);
  double stat = 0.0;
  for (const auto& [ca, cb] : bins) {
    const double diff = ka * ca - kb * cb;
    stat += diff * diff / (ca + cb);
  }
  const int dof = static_cast<int>(bins.size()) - 1;
  const double p = dof > 0 ? boost::math::gamma_q(dof / 2.0, stat / 2.0) : 1.0;
  return {stat, dof, p};
}

double chi_square_critical(int degrees_of_freedom, double significance) {
  if (degrees_of_freedom < 1) return 0.0;
  boost::math::chi_squared_distribution<double> dist(degrees_of_freedom);
  return boost::math::quantile(boost::math::complement(dist, significance));
}

LineFit weighted_line_fit(std::span<const double> xs, std::span<const double> ys,
                          std::span<const double> weights) {
  if (xs.size() != ys.size() || xs.size() != weights.size() || xs.size() < 2) {
    throw DomainError("weighted_line_fit: need >= 2 points with matching weights");
  }
  double sw = 0.0;
  double swx = 0.0;
  double swy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sw += weights[i];
    swx += weights[i] * xs[i];
    swy += weights[i] * ys[i];
  }
  const double xbar = swx / sw;
  const double ybar = swy / sw;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += weights[i] * (xs[i] - xbar) * (xs[i] - xbar);
    sxy += weights[i] * (xs[i] - xbar) * (ys[i] - ybar);
  }
  const double slope = sxy / sxx;
  return {slope, ybar - slope * xbar, std::sqrt(1.0 / sxx)};
}

}  // namespace fskellam::stats
