#include "glee/bench.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "glee/parallel.hpp"
#include "glee/reconstruction.hpp"
#include "glee/rng.hpp"
#include "glee/spectral.hpp"
#include "glee/textio.hpp"

namespace glee {

namespace {
constexpr ThetaMethod kEstimators[] = {ThetaMethod::constant, ThetaMethod::kde,
                                       ThetaMethod::gmm};
constexpr std::size_t kEstimatorCount = 3;
}  // namespace

std::vector<EvalReport> estimator_benchmark(
    const std::vector<GeneratorSpec>& models, const std::vector<int>& dims,
    int trials, std::uint64_t seed, const BenchOptions& options) {
  if (trials < 1) throw std::invalid_argument("estimator_benchmark: trials < 1");
  if (models.empty() || dims.empty())
    throw std::invalid_argument("estimator_benchmark: no models or dims");

  const std::size_t n_models = models.size();
  const std::size_t n_dims = dims.size();
  const std::size_t n_trials = static_cast<std::size_t>(trials);

  // errors[((model * n_dims + dim) * kEstimatorCount + est) * trials + trial]
  std::vector<double> errors(n_models * n_dims * kEstimatorCount * n_trials);
  const auto slot = [&](std::size_t mo, std::size_t di, std::size_t es,
                        std::size_t tr) -> double& {
    return errors[((mo * n_dims + di) * kEstimatorCount + es) * n_trials + tr];
  };

  parallel_for(n_models * n_trials, [&](std::size_t cell) {
    const std::size_t mo = cell / n_trials;
    const std::size_t tr = cell % n_trials;
    const std::uint64_t cell_seed = derive_seed(seed, stream::trial, cell);

    GeneratorSpec spec = models[mo];
    spec.seed = cell_seed;
    const Graph g = generate(spec);

    for (std::size_t di = 0; di < n_dims; ++di) {
      const int d = dims[di];
      const Embedding emb =
          glee_embed(g, d, derive_seed(cell_seed, stream::eigensolver, di));
      const auto sample = collect_dot_products(emb, options.max_pairs,
                                               derive_seed(cell_seed, stream::pair_sample, di));
      for (std::size_t es = 0; es < kEstimatorCount; ++es) {
        ThresholdEstimate theta;
        switch (kEstimators[es]) {
          case ThetaMethod::constant:
            theta = theta_constant();
            break;
          case ThetaMethod::kde:
            theta = theta_kde(sample, options.bandwidth);
            break;
          case ThetaMethod::gmm:
            theta = theta_gmm(sample, m_hat_default(sample),
                              derive_seed(cell_seed, stream::gmm_subsample, di));
            break;
          default:
            throw std::logic_error("unreachable");
        }
        slot(mo, di, es, tr) = std::sqrt(reconstruction_loss(emb, g, theta));
      }
    }
  });

  std::vector<EvalReport> reports;
  reports.reserve(n_models * kEstimatorCount);
  for (std::size_t mo = 0; mo < n_models; ++mo) {
    for (std::size_t es = 0; es < kEstimatorCount; ++es) {
      EvalReport r;
      r.experiment = "estimator-benchmark";
      const GeneratorSpec& spec = models[mo];
      r.params = {
          {"model", graph_model_name(spec.model)},
          {"n", std::to_string(spec.n)},
          {"mean_degree", format_double(spec.target_mean_degree)},
          {"estimator", theta_method_name(kEstimators[es])},
          {"trials", std::to_string(trials)},
          {"seed", format_u64(seed)},
      };
      if (spec.model == GraphModel::hg)
        r.params.emplace_back("gamma", format_double(spec.gamma));

      for (std::size_t di = 0; di < n_dims; ++di) {
        std::vector<double> raw(n_trials);
        for (std::size_t tr = 0; tr < n_trials; ++tr)
          raw[tr] = slot(mo, di, es, tr);
        SeriesPoint p = make_series_point(static_cast<double>(dims[di]), std::move(raw));

        double means[kEstimatorCount];
        for (std::size_t e2 = 0; e2 < kEstimatorCount; ++e2) {
          double sum = 0.0;
          for (std::size_t tr = 0; tr < n_trials; ++tr) sum += slot(mo, di, e2, tr);
          means[e2] = sum / static_cast<double>(n_trials);
        }
        const double lo = *std::min_element(means, means + kEstimatorCount);
        const double hi = *std::max_element(means, means + kEstimatorCount);
        p.has_normalized = true;
        p.normalized = hi > lo ? (p.mean - lo) / (hi - lo) : 0.0;
        r.series.push_back(std::move(p));
      }
      reports.push_back(std::move(r));
    }
  }
  return reports;
}

}  // namespace glee
