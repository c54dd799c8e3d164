#include "qmac/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qmac {

SystemShape::SystemShape(std::initializer_list<std::pair<std::string, int>> factors)
    : factors_(factors) {
  validate();
}

SystemShape::SystemShape(std::vector<std::pair<std::string, int>> factors)
    : factors_(std::move(factors)) {
  validate();
}

SystemShape SystemShape::single(const std::string& label, int dim) {
  return SystemShape({{label, dim}});
}

void SystemShape::validate() const {
  std::set<std::string> seen;
  for (const auto& [label, dim] : factors_) {
    if (dim <= 0) throw std::invalid_argument("SystemShape: nonpositive dimension for " + label);
    if (!seen.insert(label).second)
      throw std::invalid_argument("SystemShape: duplicate label " + label);
  }
}

int SystemShape::dim() const {
  int d = 1;
  for (const auto& f : factors_) d *= f.second;
  return d;
}

bool SystemShape::has(const std::string& label) const {
  return std::any_of(factors_.begin(), factors_.end(),
                     [&](const auto& f) { return f.first == label; });
}

int SystemShape::index_of(const std::string& label) const {
  for (int i = 0; i < num_factors(); ++i)
    if (factors_[i].first == label) return i;
  throw std::invalid_argument("SystemShape: unknown label " + label);
}

int SystemShape::dim_of(const std::string& label) const {
  return factors_[index_of(label)].second;
}

int SystemShape::dim_of(const std::vector<std::string>& labels) const {
  int d = 1;
  for (const auto& l : labels) d *= dim_of(l);
  return d;
}

std::vector<std::string> SystemShape::labels() const {
  std::vector<std::string> out;
  out.reserve(factors_.size());
  for (const auto& f : factors_) out.push_back(f.first);
  return out;
}

SystemShape SystemShape::subshape(const std::vector<std::string>& keep) const {
  for (const auto& l : keep) (void)index_of(l);
  std::vector<std::pair<std::string, int>> out;
  for (const auto& f : factors_)
    if (std::find(keep.begin(), keep.end(), f.first) != keep.end()) out.push_back(f);
  return SystemShape(out);
}

SystemShape SystemShape::erased(const std::vector<std::string>& drop) const {
  for (const auto& l : drop) (void)index_of(l);
  std::vector<std::pair<std::string, int>> out;
  for (const auto& f : factors_)
    if (std::find(drop.begin(), drop.end(), f.first) == drop.end()) out.push_back(f);
  return SystemShape(out);
}

SystemShape SystemShape::concat(const SystemShape& rhs) const {
  std::vector<std::pair<std::string, int>> out = factors_;
  out.insert(out.end(), rhs.factors_.begin(), rhs.factors_.end());
  return SystemShape(out);  // ctor rejects collisions
}

SystemShape SystemShape::collapsed(const std::string& label) const {
  return SystemShape::single(label, dim());
}

std::string SystemShape::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < num_factors(); ++i) {
    if (i) os << ",";
    os << factors_[i].first << ":" << factors_[i].second;
  }
  os << "]";
  return os.str();
}

double op_norm(const CMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

bool all_finite(const CMatrix& m) {
  return m.allFinite();
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CVector kron_vec(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

namespace {

// Strides of each factor under the slowest-leftmost layout.
std::vector<int> factor_strides(const SystemShape& shape) {
  const int n = shape.num_factors();
  std::vector<int> strides(n, 1);
  for (int i = n - 2; i >= 0; --i) strides[i] = strides[i + 1] * shape.dim_at(i + 1);
  return strides;
}

// Flat-index map realizing the permutation of factors: out[new flat] = old flat.
std::vector<int> permutation_index_map(const SystemShape& shape,
                                       const std::vector<std::string>& new_order) {
  const int n = shape.num_factors();
  if (static_cast<int>(new_order.size()) != n)
    throw std::invalid_argument("permute_systems: new_order must list every label exactly once");
  std::vector<int> perm(n);  // perm[k] = position in old shape of the k-th new factor
  std::vector<bool> used(n, false);
  for (int k = 0; k < n; ++k) {
    int idx = shape.index_of(new_order[k]);
    if (used[idx]) throw std::invalid_argument("permute_systems: repeated label " + new_order[k]);
    used[idx] = true;
    perm[k] = idx;
  }
  const auto old_strides = factor_strides(shape);
  std::vector<int> new_dims(n);
  for (int k = 0; k < n; ++k) new_dims[k] = shape.dim_at(perm[k]);
  std::vector<int> new_strides(n, 1);
  for (int k = n - 2; k >= 0; --k) new_strides[k] = new_strides[k + 1] * new_dims[k + 1];

  const int d = shape.dim();
  std::vector<int> map(d);
  std::vector<int> digits(n, 0);
  for (int flat = 0; flat < d; ++flat) {
    int old_flat = 0;
    for (int k = 0; k < n; ++k) old_flat += digits[k] * old_strides[perm[k]];
    map[flat] = old_flat;
    for (int k = n - 1; k >= 0; --k) {
      if (++digits[k] < new_dims[k]) break;
      digits[k] = 0;
    }
  }
  return map;
}

SystemShape permuted_shape(const SystemShape& shape, const std::vector<std::string>& new_order) {
  std::vector<std::pair<std::string, int>> out;
  out.reserve(new_order.size());
  for (const auto& l : new_order) out.emplace_back(l, shape.dim_of(l));
  return SystemShape(out);
}

}  // namespace

std::pair<CMatrix, SystemShape> permute_systems(const CMatrix& m, const SystemShape& shape,
                                                const std::vector<std::string>& new_order) {
  const int d = shape.dim();
  if (m.rows() != d || m.cols() != d)
    throw std::invalid_argument("permute_systems: matrix is " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()) + ", shape dim is " + std::to_string(d));
  const auto map = permutation_index_map(shape, new_order);
  CMatrix out(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out(i, j) = m(map[i], map[j]);
  return {out, permuted_shape(shape, new_order)};
}

std::pair<CVector, SystemShape> permute_systems_vec(const CVector& v, const SystemShape& shape,
                                                    const std::vector<std::string>& new_order) {
  const int d = shape.dim();
  if (v.size() != d) throw std::invalid_argument("permute_systems_vec: dimension mismatch");
  const auto map = permutation_index_map(shape, new_order);
  CVector out(d);
  for (int i = 0; i < d; ++i) out(i) = v(map[i]);
  return {out, permuted_shape(shape, new_order)};
}

std::pair<CMatrix, SystemShape> partial_trace(const CMatrix& m, const SystemShape& shape,
                                              const std::vector<std::string>& traced) {
  const int d = shape.dim();
  if (m.rows() != d || m.cols() != d)
    throw std::invalid_argument("partial_trace: matrix/shape dimension mismatch");
  if (traced.empty()) return {m, shape};

  // Move traced factors to the right, then sum over the trailing block index.
  SystemShape kept_shape = shape.erased(traced);
  std::vector<std::string> order = kept_shape.labels();
  SystemShape traced_shape = shape.subshape(traced);
  for (const auto& l : traced_shape.labels()) order.push_back(l);
  auto [perm, pshape] = permute_systems(m, shape, order);

  const int dk = kept_shape.dim();
  const int dt = traced_shape.dim();
  CMatrix out = CMatrix::Zero(dk, dk);
  for (int i = 0; i < dk; ++i)
    for (int j = 0; j < dk; ++j) {
      complexd s = 0;
      for (int t = 0; t < dt; ++t) s += perm(i * dt + t, j * dt + t);
      out(i, j) = s;
    }
  return {out, kept_shape};
}

HermEig herm_eig(const CMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("herm_eig: non-square input");
  const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (dev > kHermTol)
    throw std::invalid_argument("herm_eig: Hermiticity deviation " + std::to_string(dev));
  CMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  if (solver.info() != Eigen::Success) throw std::runtime_error("herm_eig: eigensolver failed");

  const int d = static_cast<int>(m.rows());
  HermEig out;
  out.eigenvalues = RVector(d);
  out.eigenvectors = CMatrix(d, d);
  // Eigen returns ascending order; flip to descending.
  for (int i = 0; i < d; ++i) {
    out.eigenvalues(i) = solver.eigenvalues()(d - 1 - i);
    out.eigenvectors.col(i) = solver.eigenvectors().col(d - 1 - i);
  }
  return out;
}

CMatrix mat_fn(const CMatrix& m, MatFn fn) {
  HermEig eig = herm_eig(m);
  const int d = static_cast<int>(eig.eigenvalues.size());
  RVector vals(d);
  for (int i = 0; i < d; ++i) {
    double v = eig.eigenvalues(i);
    if (v < kPsdClip)
      throw std::invalid_argument("mat_fn: eigenvalue " + std::to_string(v) + " below PSD clip band");
    if (v < 0) v = 0;
    switch (fn) {
      case MatFn::sqrt:
        vals(i) = std::sqrt(v);
        break;
      case MatFn::log2:
        vals(i) = (v > 0) ? std::log2(v) : 0.0;  // zero subspace projected out
        break;
      case MatFn::xlog2x:
        vals(i) = (v > 0) ? v * std::log2(v) : 0.0;
        break;
    }
  }
  return eig.eigenvectors * vals.asDiagonal() * eig.eigenvectors.adjoint();
}

double trace_norm(const CMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues().sum();
}

double shannon_entropy(const RVector& probs) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    double p = probs(i);
    if (p < kPsdClip)
      throw std::invalid_argument("shannon_entropy: probability below PSD clip band");
    if (p > 0) h -= p * std::log2(p);
  }
  return h;
}

}  // namespace qmac
