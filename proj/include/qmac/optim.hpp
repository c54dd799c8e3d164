#pragma once

#include <cstdint>
#include <functional>

#include <Eigen/Dense>

namespace qmac {

struct OptimBudget {
  int restarts = 32;
  int evals = 2000;  // per restart
};

struct OptimResult {
  Eigen::VectorXd x;
  double value = -std::numeric_limits<double>::infinity();
};

// Number of worker threads: QMAC_NUM_WORKERS when set, else 1. Results are
// independent of the worker count; every restart draws from its own stream.
int num_workers();

// Maximizes fn by multi-start coordinate pattern search with step halving.
// Restart starting points come from a fixed low-discrepancy sequence first,
// then from seeded Gaussian draws; ties between restarts break toward the
// lower restart index.
OptimResult multistart_maximize(const std::function<double(const Eigen::VectorXd&)>& fn, int dim,
                                const OptimBudget& budget, std::uint64_t seed);

}  // namespace qmac
