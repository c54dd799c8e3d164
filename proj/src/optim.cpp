#include "qmac/optim.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>
#include <vector>

#include "qmac/rand.hpp"

namespace qmac {

int num_workers() {
  if (const char* env = std::getenv("QMAC_NUM_WORKERS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

namespace {

// Additive-recurrence (Kronecker) sequence on [-2, 2]^dim; fixed, seed-free.
Eigen::VectorXd low_discrepancy_point(int index, int dim) {
  Eigen::VectorXd x(dim);
  for (int k = 0; k < dim; ++k) {
    const double alpha = std::sqrt(static_cast<double>(k + 2));  // sqrt of 2, 3, 4, ...
    double frac = std::fmod((index + 1) * alpha, 1.0);
    x(k) = 4.0 * frac - 2.0;
  }
  return x;
}

OptimResult pattern_search(const std::function<double(const Eigen::VectorXd&)>& fn,
                           Eigen::VectorXd x, int max_evals) {
  OptimResult best;
  best.x = x;
  best.value = fn(x);
  int evals = 1;
  double step = 0.5;
  const int dim = static_cast<int>(x.size());
  while (evals < max_evals && step > 1e-5) {
    bool improved = false;
    for (int k = 0; k < dim && evals < max_evals; ++k) {
      for (double sign : {+1.0, -1.0}) {
        if (evals >= max_evals) break;
        Eigen::VectorXd cand = best.x;
        cand(k) += sign * step;
        double v = fn(cand);
        ++evals;
        if (v > best.value) {
          best.value = v;
          best.x = cand;
          improved = true;
          break;  // keep moving along improving directions before shrinking
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

}  // namespace

OptimResult multistart_maximize(const std::function<double(const Eigen::VectorXd&)>& fn, int dim,
                                const OptimBudget& budget, std::uint64_t seed) {
  const int restarts = std::max(budget.restarts, 1);
  const int ld_count = (restarts + 1) / 2;  // first half low-discrepancy, rest random
  std::vector<OptimResult> results(restarts);

  auto run_restart = [&](int r) {
    Eigen::VectorXd x0;
    if (r < ld_count) {
      x0 = low_discrepancy_point(r, dim);
    } else {
      Rng rng(split_seed(seed, static_cast<std::uint64_t>(r)));
      x0 = Eigen::VectorXd(dim);
      for (int k = 0; k < dim; ++k) x0(k) = rand_normal(rng);
    }
    results[r] = pattern_search(fn, x0, std::max(budget.evals, 2));
  };

  const int workers = std::min(num_workers(), restarts);
  if (workers <= 1) {
    for (int r = 0; r < restarts; ++r) run_restart(r);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (int r = next.fetch_add(1); r < restarts; r = next.fetch_add(1)) run_restart(r);
      });
    for (auto& t : pool) t.join();
  }

  // Reduce in restart order so the outcome ignores scheduling.
  OptimResult best = results[0];
  for (int r = 1; r < restarts; ++r)
    if (results[r].value > best.value) best = results[r];
  return best;
}

}  // namespace qmac
