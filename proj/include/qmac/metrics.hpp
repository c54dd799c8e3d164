#pragma once

#include "qmac/states.hpp"

namespace qmac {

// One side of a lemma, evaluated: satisfied iff lhs >= rhs - slack.
struct BoundMargin {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 1e-9;

  double margin() const { return lhs - rhs; }
  bool satisfied() const { return lhs >= rhs - slack; }
};

// |rho - sigma|_1, in [0, 2]; 2 exactly on orthogonal supports.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// Squared-overlap convention: (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);
double fidelity(const PureState& phi, const DensityMatrix& sigma);  // <phi|sigma|phi>

// The four inequalities 1-sqrt(F) <= T/2 <= sqrt(1-F) and
// 1-T <= F <= 1-T^2/4, each as a margin.
struct SandwichMargins {
  double t = 0.0, f = 0.0;
  BoundMargin t_lower;  // T/2 >= 1 - sqrt(F)
  BoundMargin t_upper;  // sqrt(1-F) >= T/2
  BoundMargin f_lower;  // F >= 1 - T
  BoundMargin f_upper;  // 1 - T^2/4 >= F

  bool all_satisfied() const {
    return t_lower.satisfied() && t_upper.satisfied() && f_lower.satisfied() &&
           f_upper.satisfied();
  }
};
SandwichMargins fid_trace_sandwich(const DensityMatrix& rho, const DensityMatrix& sigma);

// F(phi, sigma) >= F(phi, rho) - |rho - sigma|_1.
BoundMargin special_triangle(const PureState& phi, const DensityMatrix& rho,
                             const DensityMatrix& sigma);

// F(phi (x) rho, Omega) >= 1 - |rho - Omega^B|_1 - 3(1 - F(phi, Omega^A)),
// for phi on the A factors of Omega and rho on the B factors.
BoundMargin transitivity_bound(const PureState& phi, const DensityMatrix& rho,
                               const DensityMatrix& omega);

// tr(rho L) >= 1 - eps implies |sqrt(L) rho sqrt(L) - rho|_1 <= sqrt(8 eps).
struct GentleResult {
  double eps = 0.0;
  double disturbance = 0.0;
  double cap = 0.0;  // sqrt(8 eps)
  BoundMargin margin;
};
GentleResult gentle_measurement(const DensityMatrix& rho, const CMatrix& lam);

// |I_c(A>B)_rho - I_c(A>B)_sigma| <= 2 H(eps) + 4 log|A| eps with
// eps = |rho - sigma|_1 clamped to [0, 1].
struct ContinuityResult {
  double eps = 0.0;
  double delta_ic = 0.0;
  double bound = 0.0;
  BoundMargin margin;
};
ContinuityResult continuity_bound(const DensityMatrix& rho, const DensityMatrix& sigma,
                                  const std::vector<std::string>& a,
                                  const std::vector<std::string>& b);

}  // namespace qmac
