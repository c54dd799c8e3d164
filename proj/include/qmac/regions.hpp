#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qmac/channels.hpp"
#include "qmac/info.hpp"
#include "qmac/optim.hpp"

namespace qmac {

// Total input/output dimension cap for region computations.
inline constexpr int kMaxRegionDim = 64;

struct DimOverflowError : std::runtime_error {
  explicit DimOverflowError(const std::string& what) : std::runtime_error(what) {}
};

struct RatePoint {
  double x = 0.0;  // R (cq regions) or Q_a (qq regions)
  double y = 0.0;  // Q or Q_b
};

// Rate set cut out by x <= a_cap, y <= b_cap, x + y <= sum_cap on the
// nonnegative orthant. Degenerates to the rectangle when the sum cap is
// slack.
struct Pentagon {
  double a_cap = 0.0;
  double b_cap = 0.0;
  double sum_cap = 0.0;

  bool degenerate_rectangle() const { return sum_cap >= a_cap + b_cap - 1e-12; }
  std::vector<RatePoint> vertices() const;  // counterclockwise from the origin
  bool contains(const RatePoint& p, double slack = 1e-9) const;
};

struct Region2D {
  std::array<std::string, 2> axes{{"R", "Q"}};
  std::vector<RatePoint> points;  // extreme-point cloud (clamped nonnegative)
  std::vector<RatePoint> hull;    // convex, counterclockwise
};

// Clamps points to the nonnegative orthant, adds the origin and axis
// projections, and rebuilds the hull.
Region2D make_region(const std::array<std::string, 2>& axes, std::vector<RatePoint> points);
Region2D region_union(const std::vector<Region2D>& rs);
bool region_contains(const Region2D& r, const RatePoint& p, double slack = 1e-9);
RatePoint timeshare(const RatePoint& p1, const RatePoint& p2, double lambda);
// Symmetric Hausdorff distance between the hull boundaries.
double region_hausdorff(const Region2D& a, const Region2D& b);

// Theorem-style channel inputs. The ensemble lives on the A'^k factors, the
// senders' reference systems purify their channel inputs.
struct CQInput {
  PureEnsemble ensemble;   // pure states on A'^k
  PureState bob_state;     // on B (x) B'^k
};

struct QQInput {
  PureState alice_state;  // on A (x) A'^k
  PureState bob_state;    // on B (x) B'^k
};

struct RawRates {
  RatePoint clamped;
  RatePoint raw;  // before clamping, for diagnostics
};

// N^{(x)k} for a two-sender channel, with Alice's (Bob's) factors grouped and
// the output collapsed to a single C factor.
Channel mac_tensor_power(const Channel& ch, int k);

// Rates ((1/k) I(X;C^k), (1/k) I_c(B>C^k X)) on the state
// sum_x p(x)|x><x| (x) N^{(x)k}(phi_x (x) Psi). `ch` is the already-powered
// channel; k only rescales.
RawRates cq_rates_raw(const Channel& ch, const CQInput& input, int k);
RatePoint cq_rates(const Channel& ch, const CQInput& input, int k);

// Pentagon caps ((1/k) I_c(A>BC^k), (1/k) I_c(B>AC^k), (1/k) I_c(AB>C^k)) on
// N^{(x)k}(Psi1 (x) Psi2).
Pentagon qq_rates(const Channel& ch, const QQInput& input, int k);

// Convenience wrappers taking the base channel: power it, then evaluate.
RatePoint tensor_power_cq_rates(const Channel& base, const CQInput& input, int k);
Pentagon tensor_power_qq_rates(const Channel& base, const QQInput& input, int k);

// Weighted-sum scalarization sweep over CQInput / QQInput parameterizations,
// multi-start pattern search per weight. Deterministic for a fixed seed.
Region2D optimize_cq_region(const Channel& ch, const OptimBudget& budget, std::uint64_t seed,
                            int lambda_samples = 33);
Region2D optimize_qq_region(const Channel& ch, const OptimBudget& budget, std::uint64_t seed,
                            int lambda_samples = 33);

// Decoders from unconstrained optimizer parameters; exposed for tests.
CQInput decode_cq_input(const Channel& ch, const Eigen::VectorXd& params, int ensemble_size);
QQInput decode_qq_input(const Channel& ch, const Eigen::VectorXd& params);
int cq_param_count(const Channel& ch, int ensemble_size);
int qq_param_count(const Channel& ch);
// Appendix support bound min{|A'|,|C|}^2 + 1 used at k = 1.
int cq_ensemble_size(const Channel& ch);

}  // namespace qmac
