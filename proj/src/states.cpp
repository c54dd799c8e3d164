#include "qmac/states.hpp"

#include <algorithm>
#include <cmath>

namespace qmac {

namespace {

void canonical_phase(CVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > kNullPostTol) {
      v *= std::conj(v(i)) / a;
      return;
    }
  }
}

}  // namespace

DensityMatrix::DensityMatrix(CMatrix mat, SystemShape shape) {
  mat_ = std::move(mat);
  shape_ = std::move(shape);
  if (mat_.rows() != mat_.cols() || mat_.rows() != shape_.dim())
    throw std::invalid_argument("DensityMatrix: matrix/shape dimension mismatch");
  validate();
}

DensityMatrix DensityMatrix::trusted(CMatrix mat, SystemShape shape) {
  DensityMatrix out;
  out.mat_ = std::move(mat);
  out.shape_ = std::move(shape);
  if (out.mat_.rows() != out.mat_.cols() || out.mat_.rows() != out.shape_.dim())
    throw std::invalid_argument("DensityMatrix: matrix/shape dimension mismatch");
  return out;
}

void DensityMatrix::validate() const {
  if (!all_finite(mat_)) throw std::invalid_argument("DensityMatrix: non-finite entries");
  const double herm_dev = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > kHermTol)
    throw std::invalid_argument("DensityMatrix: Hermiticity deviation " + std::to_string(herm_dev));
  const double tr_dev = std::abs(mat_.trace().real() - 1.0) + std::abs(mat_.trace().imag());
  if (tr_dev > kTraceTol)
    throw std::invalid_argument("DensityMatrix: trace deviates from 1 by " + std::to_string(tr_dev));
  HermEig eig = herm_eig(mat_);
  if (eig.eigenvalues.minCoeff() < kPsdClip)
    throw std::invalid_argument("DensityMatrix: eigenvalue " +
                                std::to_string(eig.eigenvalues.minCoeff()) + " below PSD clip band");
}

DensityMatrix DensityMatrix::partial_trace_out(const std::vector<std::string>& traced) const {
  auto [m, s] = partial_trace(mat_, shape_, traced);
  return DensityMatrix::trusted(std::move(m), std::move(s));
}

DensityMatrix DensityMatrix::reduced(const std::vector<std::string>& kept) const {
  std::vector<std::string> traced;
  for (const auto& l : shape_.labels())
    if (std::find(kept.begin(), kept.end(), l) == kept.end()) traced.push_back(l);
  return partial_trace_out(traced);
}

DensityMatrix DensityMatrix::permuted(const std::vector<std::string>& new_order) const {
  auto [m, s] = permute_systems(mat_, shape_, new_order);
  return DensityMatrix::trusted(std::move(m), std::move(s));
}

DensityMatrix DensityMatrix::relabelled(const SystemShape& shape) const {
  if (shape.dim() != dim()) throw std::invalid_argument("relabelled: dimension mismatch");
  return DensityMatrix::trusted(mat_, shape);
}

PureState::PureState(CVector vec, SystemShape shape)
    : vec_(std::move(vec)), shape_(std::move(shape)) {
  if (vec_.size() != shape_.dim())
    throw std::invalid_argument("PureState: vector/shape dimension mismatch");
  if (!vec_.allFinite()) throw std::invalid_argument("PureState: non-finite entries");
  const double n = vec_.norm();
  if (std::abs(n - 1.0) > kUnitNormTol)
    throw std::invalid_argument("PureState: norm deviates from 1 by " + std::to_string(n - 1.0));
  canonical_phase(vec_);
}

PureState PureState::normalized(CVector vec, SystemShape shape) {
  const double n = vec.norm();
  if (n < kNullPostTol) throw std::invalid_argument("PureState: cannot normalize the zero vector");
  return PureState(vec / n, std::move(shape));
}

PureState PureState::basis(int index, SystemShape shape) {
  CVector v = CVector::Zero(shape.dim());
  if (index < 0 || index >= shape.dim()) throw std::invalid_argument("PureState::basis: index out of range");
  v(index) = 1.0;
  return PureState(std::move(v), std::move(shape));
}

DensityMatrix PureState::density() const {
  return DensityMatrix::trusted(vec_ * vec_.adjoint(), shape_);
}

PureState PureState::tensor(const PureState& rhs) const {
  return PureState(kron_vec(vec_, rhs.vec_), shape_.concat(rhs.shape_));
}

PureState PureState::permuted(const std::vector<std::string>& new_order) const {
  auto [v, s] = permute_systems_vec(vec_, shape_, new_order);
  return PureState(std::move(v), std::move(s));
}

PureState PureState::relabelled(const SystemShape& shape) const {
  if (shape.dim() != dim()) throw std::invalid_argument("relabelled: dimension mismatch");
  return PureState(vec_, shape);
}

void Ensemble::validate() const {
  if (probs.size() != states.size() || probs.empty())
    throw std::invalid_argument("Ensemble: probs/states size mismatch");
  double sum = 0;
  for (double p : probs) {
    if (p < -kProbSumTol) throw std::invalid_argument("Ensemble: negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kProbSumTol)
    throw std::invalid_argument("Ensemble: probabilities sum to " + std::to_string(sum));
  for (const auto& s : states)
    if (s.shape() != states.front().shape())
      throw std::invalid_argument("Ensemble: states on different shapes");
}

DensityMatrix Ensemble::average() const {
  validate();
  CMatrix avg = CMatrix::Zero(states.front().dim(), states.front().dim());
  for (size_t i = 0; i < probs.size(); ++i) avg += probs[i] * states[i].mat();
  return DensityMatrix::trusted(std::move(avg), states.front().shape());
}

Ensemble PureEnsemble::to_ensemble() const {
  Ensemble e;
  e.probs = probs;
  for (const auto& s : states) e.states.push_back(s.density());
  return e;
}

DensityMatrix cq_assemble(const Ensemble& e, const std::string& classical_label) {
  e.validate();
  const int n = static_cast<int>(e.probs.size());
  const int d = e.states.front().dim();
  CMatrix out = CMatrix::Zero(n * d, n * d);
  for (int x = 0; x < n; ++x)
    out.block(x * d, x * d, d, d) = e.probs[x] * e.states[x].mat();
  SystemShape shape =
      SystemShape::single(classical_label, n).concat(e.states.front().shape());
  return DensityMatrix::trusted(std::move(out), std::move(shape));
}

DensityMatrix CQState::assemble() const { return cq_assemble(ensemble, classical_label); }

CQState CQState::decompose(const DensityMatrix& dm, const std::string& classical_label) {
  const SystemShape& shape = dm.shape();
  if (shape.index_of(classical_label) != 0)
    throw std::invalid_argument("CQState: classical label must be the leftmost factor");
  const int n = shape.dim_of(classical_label);
  SystemShape qshape = shape.erased({classical_label});
  const int d = qshape.dim();

  CQState out;
  out.classical_label = classical_label;
  out.quantum_shape = qshape;
  for (int x = 0; x < n; ++x) {
    CMatrix block = dm.mat().block(x * d, x * d, d, d);
    double p = block.trace().real();
    out.ensemble.probs.push_back(p);
    if (p > kNullPostTol)
      out.ensemble.states.push_back(DensityMatrix::trusted(block / p, qshape));
    else
      out.ensemble.states.push_back(max_mixed(d, "null").relabelled(qshape));
  }
  return out;
}

PureState purify(const DensityMatrix& rho, const std::string& ref_label) {
  if (rho.shape().has(ref_label))
    throw std::invalid_argument("purify: reference label collides with state labels");
  HermEig eig = herm_eig(rho.mat());
  const int d = rho.dim();
  int rank = 0;
  for (int i = 0; i < d; ++i)
    if (eig.eigenvalues(i) > kNullPostTol) rank = i + 1;
  if (rank == 0) throw std::invalid_argument("purify: zero state");

  CVector psi = CVector::Zero(rank * d);
  for (int i = 0; i < rank; ++i)
    psi.segment(i * d, d) = std::sqrt(std::max(eig.eigenvalues(i), 0.0)) * eig.eigenvectors.col(i);
  SystemShape shape = SystemShape::single(ref_label, rank).concat(rho.shape());
  return PureState::normalized(std::move(psi), std::move(shape));
}

SchmidtDecomp schmidt(const PureState& psi, const std::vector<std::string>& cut) {
  const SystemShape& shape = psi.shape();
  SystemShape left = shape.subshape(cut);
  if (left.num_factors() != static_cast<int>(cut.size()))
    throw std::invalid_argument("schmidt: cut labels not found");
  SystemShape right = shape.erased(cut);
  if (left.num_factors() == 0 || right.num_factors() == 0)
    throw std::invalid_argument("schmidt: cut must be a nontrivial bipartition");

  std::vector<std::string> order = left.labels();
  for (const auto& l : right.labels()) order.push_back(l);
  PureState p = psi.permuted(order);

  const int dl = left.dim(), dr = right.dim();
  CMatrix coeff(dl, dr);
  for (int i = 0; i < dl; ++i)
    for (int j = 0; j < dr; ++j) coeff(i, j) = p.vec()(i * dr + j);

  Eigen::JacobiSVD<CMatrix> svd(coeff, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtDecomp out;
  const auto& sv = svd.singularValues();
  for (Eigen::Index i = 0; i < sv.size(); ++i) out.coeffs.push_back(sv(i));
  out.left_basis = svd.matrixU();
  out.right_basis = svd.matrixV().conjugate();
  out.left_labels = left.labels();
  out.right_labels = right.labels();
  return out;
}

std::vector<MeasureOutcome> measure_povm(const DensityMatrix& rho,
                                         const std::vector<CMatrix>& povm) {
  if (povm.empty()) throw std::invalid_argument("measure_povm: empty POVM");
  const int d = rho.dim();
  CMatrix sum = CMatrix::Zero(d, d);
  for (const auto& lam : povm) {
    if (lam.rows() != d || lam.cols() != d)
      throw std::invalid_argument("measure_povm: element dimension mismatch");
    sum += lam;
  }
  if ((sum - CMatrix::Identity(d, d)).cwiseAbs().maxCoeff() > kHermTol)
    throw std::invalid_argument("measure_povm: POVM does not sum to the identity");

  std::vector<MeasureOutcome> out;
  for (const auto& lam : povm) {
    CMatrix root = mat_fn(lam, MatFn::sqrt);  // rejects non-PSD elements
    const double p = (lam * rho.mat()).trace().real();
    MeasureOutcome o;
    o.prob = std::max(p, 0.0);
    if (o.prob > kNullPostTol) {
      CMatrix post = root * rho.mat() * root / o.prob;
      o.post = DensityMatrix::trusted(std::move(post), rho.shape());
    }
    out.push_back(std::move(o));
  }
  return out;
}

PureState max_entangled(int k, const std::string& a, const std::string& b) {
  if (k < 1) throw std::invalid_argument("max_entangled: k must be positive");
  CVector v = CVector::Zero(k * k);
  for (int i = 0; i < k; ++i) v(i * k + i) = 1.0 / std::sqrt(static_cast<double>(k));
  return PureState(std::move(v), SystemShape({{a, k}, {b, k}}));
}

DensityMatrix max_mixed(int d, const std::string& label) {
  if (d < 1) throw std::invalid_argument("max_mixed: d must be positive");
  return DensityMatrix::trusted(CMatrix::Identity(d, d) / static_cast<double>(d),
                                SystemShape::single(label, d));
}

}  // namespace qmac
