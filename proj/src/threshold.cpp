#include "glee/threshold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "glee/rng.hpp"

namespace glee {

std::string theta_method_name(ThetaMethod m) {
  switch (m) {
    case ThetaMethod::constant: return "constant";
    case ThetaMethod::kde: return "kde";
    case ThetaMethod::gmm: return "gmm";
    case ThetaMethod::oracle: return "oracle";
  }
  throw std::logic_error("unreachable");
}

ThetaMethod theta_method_from_name(const std::string& name) {
  if (name == "constant") return ThetaMethod::constant;
  if (name == "kde") return ThetaMethod::kde;
  if (name == "gmm") return ThetaMethod::gmm;
  if (name == "oracle") return ThetaMethod::oracle;
  throw std::invalid_argument("unknown estimator: '" + name + "'");
}

std::uint64_t pair_count(int n) {
  const std::uint64_t un = static_cast<std::uint64_t>(n);
  return un * (un - 1) / 2;
}

std::pair<int, int> unrank_pair(std::uint64_t k, int n) {
  const auto row_start = [n](std::uint64_t i) {
    return i * (2 * static_cast<std::uint64_t>(n) - i - 1) / 2;
  };
  std::uint64_t i = static_cast<std::uint64_t>(
      std::floor((2.0 * n - 1.0 -
                  std::sqrt((2.0 * n - 1.0) * (2.0 * n - 1.0) - 8.0 * static_cast<double>(k))) /
                 2.0));
  if (i >= static_cast<std::uint64_t>(n)) i = static_cast<std::uint64_t>(n) - 1;
  while (i + 1 < static_cast<std::uint64_t>(n) && row_start(i + 1) <= k) ++i;
  while (i > 0 && row_start(i) > k) --i;
  const std::uint64_t j = k - row_start(i) + i + 1;
  return {static_cast<int>(i), static_cast<int>(j)};
}

namespace {

constexpr double kThetaConstant = -0.5;

int gram_block_rows(int n) {
  return std::max(1, std::min(n, (1 << 22) / std::max(1, n)));
}

}  // namespace

DotProductSample collect_dot_products(const Embedding& e,
                                      std::uint64_t max_pairs,
                                      std::uint64_t seed) {
  if (max_pairs < 1)
    throw std::invalid_argument("collect_dot_products: max_pairs must be >= 1");
  const int n = e.node_count();
  DotProductSample out;
  out.pair_count = pair_count(n);

  if (out.pair_count <= max_pairs) {
    out.values.reserve(static_cast<std::size_t>(out.pair_count));
    const int block = gram_block_rows(n);
    for (int i0 = 0; i0 < n; i0 += block) {
      const int rows = std::min(block, n - i0);
      const Eigen::MatrixXd m =
          e.coords.middleRows(i0, rows) * e.coords.transpose();
      for (int r = 0; r < rows; ++r)
        for (int j = i0 + r + 1; j < n; ++j) out.values.push_back(m(r, j));
    }
    return out;
  }

  out.sampled = true;
  Rng rng(derive_seed(seed, stream::pair_sample));
  const auto picks = rng.sample_indices(out.pair_count, max_pairs);
  out.values.reserve(picks.size());
  for (const std::uint64_t k : picks) {
    const auto [i, j] = unrank_pair(k, n);
    out.values.push_back(e.coords.row(i).dot(e.coords.row(j)));
  }
  return out;
}

ThresholdEstimate theta_constant() {
  ThresholdEstimate t;
  t.theta = kThetaConstant;
  t.method = ThetaMethod::constant;
  return t;
}

namespace {

ThresholdEstimate fallback_estimate(ThetaMethod method,
                                    std::vector<std::pair<std::string, double>> diag) {
  ThresholdEstimate t;
  t.theta = kThetaConstant;
  t.method = method;
  t.fallback = true;
  t.diagnostics = std::move(diag);
  return t;
}

// Number of sample values strictly inside (x - half, x + half).
std::size_t window_count(const std::vector<double>& sorted, double x,
                         double half) {
  const auto lo = std::upper_bound(sorted.begin(), sorted.end(), x - half);
  const auto hi = std::lower_bound(sorted.begin(), sorted.end(), x + half);
  return static_cast<std::size_t>(hi - lo);
}

}  // namespace

ThresholdEstimate theta_kde(const DotProductSample& sample, double h) {
  if (sample.values.empty())
    throw std::invalid_argument("theta_kde: empty sample");
  if (!(h > 0.0) || !(h < 1.0))
    throw std::invalid_argument("theta_kde: bandwidth must lie in (0, 1)");

  std::vector<double> sorted = sample.values;
  std::sort(sorted.begin(), sorted.end());
  const double half = h / 2.0;

  constexpr int kGrid = 401;
  const auto grid_x = [](int t) { return -1.0 + static_cast<double>(t) / (kGrid - 1); };
  std::vector<std::size_t> counts(kGrid);
  for (int t = 0; t < kGrid; ++t) counts[static_cast<std::size_t>(t)] = window_count(sorted, grid_x(t), half);

  // Modes on either side of the constant heuristic; first index wins ties.
  int left_mode = 0;
  int right_mode = kGrid - 1;
  {
    std::size_t best = 0;
    for (int t = 0; t < kGrid && grid_x(t) <= kThetaConstant; ++t)
      if (counts[static_cast<std::size_t>(t)] > best) {
        best = counts[static_cast<std::size_t>(t)];
        left_mode = t;
      }
    best = 0;
    bool found = false;
    for (int t = 0; t < kGrid; ++t) {
      if (grid_x(t) < kThetaConstant) continue;
      if (!found || counts[static_cast<std::size_t>(t)] > best) {
        best = counts[static_cast<std::size_t>(t)];
        right_mode = t;
        found = true;
      }
    }
  }

  auto diag = [&](double theta_min_count) {
    return std::vector<std::pair<std::string, double>>{
        {"bandwidth", h},
        {"left_mode", grid_x(left_mode)},
        {"right_mode", grid_x(right_mode)},
        {"min_density_count", theta_min_count},
    };
  };

  if (right_mode - left_mode < 2)
    return fallback_estimate(ThetaMethod::kde, diag(-1.0));

  std::size_t min_count = std::numeric_limits<std::size_t>::max();
  int best_t = -1;
  for (int t = left_mode + 1; t < right_mode; ++t) {
    const std::size_t c = counts[static_cast<std::size_t>(t)];
    if (c < min_count ||
        (c == min_count &&
         std::abs(grid_x(t) - kThetaConstant) <
             std::abs(grid_x(best_t) - kThetaConstant))) {
      min_count = c;
      best_t = t;
    }
  }
  const std::size_t left_peak = counts[static_cast<std::size_t>(left_mode)];
  const std::size_t right_peak = counts[static_cast<std::size_t>(right_mode)];
  if (min_count >= left_peak || min_count >= right_peak)
    return fallback_estimate(ThetaMethod::kde,
                             diag(static_cast<double>(min_count)));

  // Refine on a fine grid across the two neighboring coarse cells; the count
  // is piecewise constant, so this pins the minimizing plateau.
  const double lo = std::max(-1.0, grid_x(best_t - 1));
  const double hi = std::min(0.0, grid_x(best_t + 1));
  double theta = grid_x(best_t);
  std::size_t refined = min_count;
  for (int t = 0; t < kGrid; ++t) {
    const double x = lo + (hi - lo) * static_cast<double>(t) / (kGrid - 1);
    const std::size_t c = window_count(sorted, x, half);
    if (c < refined || (c == refined && std::abs(x - kThetaConstant) <
                                            std::abs(theta - kThetaConstant))) {
      refined = c;
      theta = x;
    }
  }

  ThresholdEstimate t;
  t.theta = std::clamp(theta, -1.0, 0.0);
  t.method = ThetaMethod::kde;
  t.diagnostics = diag(static_cast<double>(refined));
  return t;
}

namespace {

struct GmmFit {
  double w1, mu1, var1, mu2, var2;
  int iterations;
  bool floored;
};

constexpr double kVarianceFloor = 1e-6;

GmmFit fit_two_gaussians(const std::vector<double>& data, double mu_prior_1,
                         double mu_prior_2) {
  constexpr double kPriorStrength = 10.0;  // pseudo-observations on each mean
  constexpr int kMaxIter = 500;
  constexpr double kTol = 1e-8;
  const std::size_t n = data.size();

  GmmFit fit{0.5, mu_prior_1, 0.0, mu_prior_2, 0.0, 0, false};
  // Start variances from the spread of each prior's half of the data.
  double s1 = 0.0, s2 = 0.0;
  std::size_t c1 = 0, c2 = 0;
  for (const double x : data) {
    const double d1 = x - mu_prior_1;
    const double d2 = x - mu_prior_2;
    if (d1 * d1 < d2 * d2) {
      s1 += d1 * d1;
      ++c1;
    } else {
      s2 += d2 * d2;
      ++c2;
    }
  }
  fit.var1 = std::max(kVarianceFloor, c1 ? s1 / static_cast<double>(c1) : 0.01);
  fit.var2 = std::max(kVarianceFloor, c2 ? s2 / static_cast<double>(c2) : 0.01);

  std::vector<double> resp(n);  // responsibility of component 1
  double prev_ll = -std::numeric_limits<double>::infinity();
  for (int iter = 1; iter <= kMaxIter; ++iter) {
    fit.iterations = iter;
    // E-step in log space.
    const double lw1 = std::log(fit.w1), lw2 = std::log1p(-fit.w1);
    const double l1c = -0.5 * std::log(2.0 * M_PI * fit.var1);
    const double l2c = -0.5 * std::log(2.0 * M_PI * fit.var2);
    double ll = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = data[i];
      const double a = lw1 + l1c - (x - fit.mu1) * (x - fit.mu1) / (2.0 * fit.var1);
      const double b = lw2 + l2c - (x - fit.mu2) * (x - fit.mu2) / (2.0 * fit.var2);
      const double m = std::max(a, b);
      const double lse = m + std::log(std::exp(a - m) + std::exp(b - m));
      resp[i] = std::exp(a - lse);
      ll += lse;
    }
    // M-step with mean priors.
    double r1 = 0.0, sx1 = 0.0, sx2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      r1 += resp[i];
      sx1 += resp[i] * data[i];
      sx2 += (1.0 - resp[i]) * data[i];
    }
    const double r2 = static_cast<double>(n) - r1;
    fit.mu1 = (sx1 + kPriorStrength * mu_prior_1) / (r1 + kPriorStrength);
    fit.mu2 = (sx2 + kPriorStrength * mu_prior_2) / (r2 + kPriorStrength);
    double v1 = 0.0, v2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d1 = data[i] - fit.mu1;
      const double d2 = data[i] - fit.mu2;
      v1 += resp[i] * d1 * d1;
      v2 += (1.0 - resp[i]) * d2 * d2;
    }
    fit.var1 = r1 > 0.0 ? v1 / r1 : kVarianceFloor;
    fit.var2 = r2 > 0.0 ? v2 / r2 : kVarianceFloor;
    if (fit.var1 < kVarianceFloor) {
      fit.var1 = kVarianceFloor;
      fit.floored = true;
    }
    if (fit.var2 < kVarianceFloor) {
      fit.var2 = kVarianceFloor;
      fit.floored = true;
    }
    fit.w1 = std::clamp(r1 / static_cast<double>(n), 1e-12, 1.0 - 1e-12);
    if (std::abs(ll - prev_ll) < kTol * static_cast<double>(n)) break;
    prev_ll = ll;
  }
  return fit;
}

}  // namespace

ThresholdEstimate theta_gmm(const DotProductSample& sample, std::uint64_t m_hat,
                            std::uint64_t seed) {
  std::vector<double> left, right_pool;
  for (const double v : sample.values)
    (v < kThetaConstant ? left : right_pool).push_back(v);
  const std::size_t left_size = left.size();
  const std::size_t right_size = right_pool.size();

  auto base_diag = [&](const GmmFit* fit, double w1_hat) {
    std::vector<std::pair<std::string, double>> d{
        {"m_hat", static_cast<double>(m_hat)},
        {"left_size", static_cast<double>(left_size)},
        {"right_size", static_cast<double>(right_size)},
    };
    if (fit) {
      d.emplace_back("mu1", fit->mu1);
      d.emplace_back("mu2", fit->mu2);
      d.emplace_back("var1", fit->var1);
      d.emplace_back("var2", fit->var2);
      d.emplace_back("em_w1", fit->w1);
      d.emplace_back("w1_hat", w1_hat);
      d.emplace_back("iterations", static_cast<double>(fit->iterations));
    }
    return d;
  };

  if (left_size < 2 || right_size < 2 || m_hat == 0 ||
      sample.pair_count == 0 || m_hat >= sample.pair_count)
    return fallback_estimate(ThetaMethod::gmm, base_diag(nullptr, 0.0));

  // Balance the clusters: keep all left values, subsample the right pool to
  // the same size.
  std::vector<double> data = std::move(left);
  if (right_size > left_size) {
    Rng rng(derive_seed(seed, stream::gmm_subsample));
    const auto idx = rng.sample_indices(right_size, left_size);
    for (const std::uint64_t k : idx)
      data.push_back(right_pool[static_cast<std::size_t>(k)]);
  } else {
    data.insert(data.end(), right_pool.begin(), right_pool.end());
  }

  const GmmFit fit = fit_two_gaussians(data, -1.0, 0.0);
  const double w1 =
      static_cast<double>(m_hat) / static_cast<double>(sample.pair_count);
  const double w2 = 1.0 - w1;

  // w1 f1(t) = w2 f2(t) in log form is a quadratic a t^2 + b t + c = 0.
  const double a = 1.0 / (2.0 * fit.var2) - 1.0 / (2.0 * fit.var1);
  const double b = fit.mu1 / fit.var1 - fit.mu2 / fit.var2;
  const double c = fit.mu2 * fit.mu2 / (2.0 * fit.var2) -
                   fit.mu1 * fit.mu1 / (2.0 * fit.var1) + std::log(w1 / w2) +
                   0.5 * std::log(fit.var2 / fit.var1);

  std::vector<double> roots;
  if (std::abs(a) < 1e-14) {
    if (std::abs(b) > 1e-14) roots.push_back(-c / b);
  } else {
    const double disc = b * b - 4.0 * a * c;
    if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      roots.push_back((-b + sq) / (2.0 * a));
      roots.push_back((-b - sq) / (2.0 * a));
    }
  }

  const double lo_mu = std::min(fit.mu1, fit.mu2);
  const double hi_mu = std::max(fit.mu1, fit.mu2);
  std::vector<double> in_range;
  for (const double r : roots)
    if (r > -1.0 && r < 0.0) in_range.push_back(r);
  if (in_range.empty())
    return fallback_estimate(ThetaMethod::gmm, base_diag(&fit, w1));

  double theta = in_range.front();
  bool theta_between = theta > lo_mu && theta < hi_mu;
  for (std::size_t i = 1; i < in_range.size(); ++i) {
    const double cand = in_range[i];
    const bool between = cand > lo_mu && cand < hi_mu;
    if ((between && !theta_between) ||
        (between == theta_between &&
         std::abs(cand - kThetaConstant) < std::abs(theta - kThetaConstant))) {
      theta = cand;
      theta_between = between;
    }
  }

  ThresholdEstimate t;
  t.theta = std::clamp(theta, -1.0, 0.0);
  t.method = ThetaMethod::gmm;
  t.diagnostics = base_diag(&fit, w1);
  return t;
}

ThresholdEstimate theta_oracle(const Embedding& e, const Graph& g) {
  if (e.node_count() != g.node_count())
    throw std::invalid_argument("theta_oracle: embedding/graph size mismatch");
  const int n = g.node_count();

  std::vector<double> edge_dots, non_edge_dots;
  edge_dots.reserve(g.edge_count());
  non_edge_dots.reserve(static_cast<std::size_t>(pair_count(n) - g.edge_count()));
  const int block = gram_block_rows(n);
  for (int i0 = 0; i0 < n; i0 += block) {
    const int rows = std::min(block, n - i0);
    const Eigen::MatrixXd m =
        e.coords.middleRows(i0, rows) * e.coords.transpose();
    for (int r = 0; r < rows; ++r) {
      const int i = i0 + r;
      for (int j = i + 1; j < n; ++j)
        (g.has_edge(i, j) ? edge_dots : non_edge_dots).push_back(m(r, j));
    }
  }
  std::sort(edge_dots.begin(), edge_dots.end());
  std::sort(non_edge_dots.begin(), non_edge_dots.end());

  const auto loss_at = [&](double theta) {
    const auto below = [theta](const std::vector<double>& v) {
      return static_cast<std::uint64_t>(
          std::lower_bound(v.begin(), v.end(), theta) - v.begin());
    };
    const std::uint64_t missed_edges =
        static_cast<std::uint64_t>(edge_dots.size()) - below(edge_dots);
    const std::uint64_t false_edges = below(non_edge_dots);
    return 2.0 * static_cast<double>(missed_edges + false_edges);
  };

  std::vector<double> all_dots;
  all_dots.reserve(edge_dots.size() + non_edge_dots.size());
  std::merge(edge_dots.begin(), edge_dots.end(), non_edge_dots.begin(),
             non_edge_dots.end(), std::back_inserter(all_dots));

  std::vector<double> candidates{-1.0, 0.0};
  for (std::size_t t = 0; t + 1 < all_dots.size(); ++t) {
    if (all_dots[t] == all_dots[t + 1]) continue;
    const double mid = 0.5 * (all_dots[t] + all_dots[t + 1]);
    if (mid >= -1.0 && mid <= 0.0) candidates.push_back(mid);
  }

  double best_theta = candidates.front();
  double best_loss = loss_at(best_theta);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double theta = candidates[i];
    const double loss = loss_at(theta);
    const bool better =
        loss < best_loss ||
        (loss == best_loss &&
         (std::abs(theta - kThetaConstant) < std::abs(best_theta - kThetaConstant) ||
          (std::abs(theta - kThetaConstant) == std::abs(best_theta - kThetaConstant) &&
           theta < best_theta)));
    if (better) {
      best_theta = theta;
      best_loss = loss;
    }
  }

  ThresholdEstimate t;
  t.theta = best_theta;
  t.method = ThetaMethod::oracle;
  t.diagnostics = {{"loss", best_loss}};
  return t;
}

std::uint64_t m_hat_default(const DotProductSample& sample) {
  std::uint64_t below = 0;
  for (const double v : sample.values)
    if (v < kThetaConstant) ++below;
  if (!sample.sampled || sample.values.empty()) return below;
  const double scale = static_cast<double>(sample.pair_count) /
                       static_cast<double>(sample.values.size());
  return static_cast<std::uint64_t>(
      std::llround(static_cast<double>(below) * scale));
}

std::uint64_t m_hat_nlogn(int n) {
  if (n < 2) return 0;
  return static_cast<std::uint64_t>(
      std::llround(static_cast<double>(n) * std::log(static_cast<double>(n))));
}

}  // namespace glee
