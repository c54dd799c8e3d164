#include "qmac/metrics.hpp"

#include <cmath>

#include "qmac/info.hpp"

namespace qmac {

namespace {

void check_same_dim(const DensityMatrix& rho, const DensityMatrix& sigma, const char* who) {
  if (rho.dim() != sigma.dim())
    throw std::invalid_argument(std::string(who) + ": states on different dimensions");
}

}  // namespace

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  check_same_dim(rho, sigma, "trace_distance");
  HermEig eig = herm_eig(rho.mat() - sigma.mat());
  return eig.eigenvalues.cwiseAbs().sum();
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  check_same_dim(rho, sigma, "fidelity");
  CMatrix root = mat_fn(rho.mat(), MatFn::sqrt);
  HermEig eig = herm_eig(root * sigma.mat() * root);
  double s = 0.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i)
    s += std::sqrt(std::max(eig.eigenvalues(i), 0.0));
  return s * s;
}

double fidelity(const PureState& phi, const DensityMatrix& sigma) {
  if (phi.dim() != sigma.dim())
    throw std::invalid_argument("fidelity: pure state/state dimension mismatch");
  return (phi.vec().adjoint() * sigma.mat() * phi.vec())(0).real();
}

SandwichMargins fid_trace_sandwich(const DensityMatrix& rho, const DensityMatrix& sigma) {
  SandwichMargins out;
  out.t = trace_distance(rho, sigma);
  out.f = fidelity(rho, sigma);
  const double fc = std::min(std::max(out.f, 0.0), 1.0);
  out.t_lower = {out.t / 2.0, 1.0 - std::sqrt(fc)};
  out.t_upper = {std::sqrt(1.0 - fc), out.t / 2.0};
  out.f_lower = {out.f, 1.0 - out.t};
  out.f_upper = {1.0 - out.t * out.t / 4.0, out.f};
  return out;
}

BoundMargin special_triangle(const PureState& phi, const DensityMatrix& rho,
                             const DensityMatrix& sigma) {
  check_same_dim(rho, sigma, "special_triangle");
  return {fidelity(phi, sigma), fidelity(phi, rho) - trace_distance(rho, sigma)};
}

BoundMargin transitivity_bound(const PureState& phi, const DensityMatrix& rho,
                               const DensityMatrix& omega) {
  if (phi.dim() * rho.dim() != omega.dim())
    throw std::invalid_argument("transitivity_bound: phi (x) rho must match omega's dimension");
  std::vector<std::string> a_labels = phi.shape().labels();
  std::vector<std::string> b_labels = rho.shape().labels();
  DensityMatrix omega_ab = omega.relabelled(phi.shape().concat(rho.shape()));
  DensityMatrix omega_a = omega_ab.reduced(a_labels);
  DensityMatrix omega_b = omega_ab.reduced(b_labels);

  DensityMatrix joint =
      DensityMatrix::trusted(kron(phi.density().mat(), rho.mat()), omega_ab.shape());
  const double lhs = fidelity(joint, omega_ab);
  const double rhs =
      1.0 - trace_distance(rho, omega_b) - 3.0 * (1.0 - fidelity(phi, omega_a));
  return {lhs, rhs};
}

GentleResult gentle_measurement(const DensityMatrix& rho, const CMatrix& lam) {
  if (lam.rows() != rho.dim() || lam.cols() != rho.dim())
    throw std::invalid_argument("gentle_measurement: operator dimension mismatch");
  HermEig eig = herm_eig(lam);
  if (eig.eigenvalues.minCoeff() < kPsdClip || eig.eigenvalues.maxCoeff() > 1.0 - kPsdClip)
    throw std::invalid_argument("gentle_measurement: operator spectrum outside [0, 1]");

  CMatrix root = mat_fn(lam, MatFn::sqrt);
  GentleResult out;
  out.eps = std::max(1.0 - (lam * rho.mat()).trace().real(), 0.0);
  out.disturbance = trace_norm(root * rho.mat() * root - rho.mat());
  out.cap = std::sqrt(8.0 * out.eps);
  out.margin = {out.cap, out.disturbance};
  return out;
}

ContinuityResult continuity_bound(const DensityMatrix& rho, const DensityMatrix& sigma,
                                  const std::vector<std::string>& a,
                                  const std::vector<std::string>& b) {
  check_same_dim(rho, sigma, "continuity_bound");
  if (rho.shape() != sigma.shape())
    throw std::invalid_argument("continuity_bound: states on different shapes");
  ContinuityResult out;
  out.eps = std::min(trace_distance(rho, sigma), 1.0);  // H is only defined on [0, 1]
  out.delta_ic = std::abs(coherent_info_state(rho, a, b) - coherent_info_state(sigma, a, b));
  const double log_a = std::log2(static_cast<double>(rho.shape().dim_of(a)));
  out.bound = 2.0 * binary_entropy(out.eps) + 4.0 * log_a * out.eps;
  out.margin = {out.bound, out.delta_ic};
  return out;
}

}  // namespace qmac
