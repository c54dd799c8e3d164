#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace qmac {

using complexd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Tolerance bands shared across the library.
inline constexpr double kHermTol = 1e-8;      // allowed ||M - M'|| before a matrix fails Hermiticity
inline constexpr double kPsdClip = -1e-7;     // eigenvalues in [kPsdClip, 0) are rounding noise, clipped to 0
inline constexpr double kTraceTol = 1e-8;     // |tr rho - 1| for valid states
inline constexpr double kUnitNormTol = 1e-10; // pure state norm deviation
inline constexpr double kProbSumTol = 1e-9;   // ensemble probability normalization
inline constexpr double kNullPostTol = 1e-12; // measurement probability below which no post-state is formed
inline constexpr double kActionTol = 1e-10;   // channel action equality

// Ordered, labelled tensor factorization of a vector/matrix index.
// The leftmost factor varies slowest, matching the global row-major flatten
// convention: kron(a, b) places a's index on the outside.
class SystemShape {
 public:
  SystemShape() = default;
  SystemShape(std::initializer_list<std::pair<std::string, int>> factors);
  explicit SystemShape(std::vector<std::pair<std::string, int>> factors);

  static SystemShape single(const std::string& label, int dim);

  int dim() const;
  int num_factors() const { return static_cast<int>(factors_.size()); }
  const std::vector<std::pair<std::string, int>>& factors() const { return factors_; }
  const std::string& label(int i) const { return factors_[i].first; }
  int dim_at(int i) const { return factors_[i].second; }

  bool has(const std::string& label) const;
  int index_of(const std::string& label) const;  // throws on unknown label
  int dim_of(const std::string& label) const;
  int dim_of(const std::vector<std::string>& labels) const;

  std::vector<std::string> labels() const;
  // Factors with the given labels, in this shape's order.
  SystemShape subshape(const std::vector<std::string>& keep) const;
  // Shape with the given labels removed.
  SystemShape erased(const std::vector<std::string>& drop) const;
  // Concatenation [this, rhs]; label collisions are an error.
  SystemShape concat(const SystemShape& rhs) const;
  // Same factors merged into a single labelled factor of the full dimension.
  SystemShape collapsed(const std::string& label) const;

  bool operator==(const SystemShape& rhs) const { return factors_ == rhs.factors_; }
  bool operator!=(const SystemShape& rhs) const { return !(*this == rhs); }

  std::string str() const;

 private:
  std::vector<std::pair<std::string, int>> factors_;
  void validate() const;
};

struct HermEig {
  RVector eigenvalues;   // descending
  CMatrix eigenvectors;  // columns, matching order
};

enum class MatFn { sqrt, log2, xlog2x };

// Largest singular value.
double op_norm(const CMatrix& m);
bool all_finite(const CMatrix& m);

// Block tensor product: (i,j) block of the result is a(i,j) * b.
CMatrix kron(const CMatrix& a, const CMatrix& b);
CVector kron_vec(const CVector& a, const CVector& b);

// Simultaneous row/column relabelling of the tensor factors. new_order must be
// a permutation of shape's labels.
std::pair<CMatrix, SystemShape> permute_systems(const CMatrix& m, const SystemShape& shape,
                                                const std::vector<std::string>& new_order);
std::pair<CVector, SystemShape> permute_systems_vec(const CVector& v, const SystemShape& shape,
                                                    const std::vector<std::string>& new_order);

// Partial trace over the given labels. Satisfies tr[M tr_B(W)] = tr[(M x 1)W]
// for every test operator M on the kept factors.
std::pair<CMatrix, SystemShape> partial_trace(const CMatrix& m, const SystemShape& shape,
                                              const std::vector<std::string>& traced);

// Eigendecomposition of (m + m')/2; throws if ||m - m'|| exceeds kHermTol.
HermEig herm_eig(const CMatrix& m);

// fn applied to the clipped spectrum in the eigenbasis. Eigenvalues below
// kPsdClip signal a genuinely non-PSD input and throw; the zero-eigenvalue
// subspace is projected out for log2 and contributes 0 for xlog2x.
CMatrix mat_fn(const CMatrix& m, MatFn fn);

// Sum of singular values.
double trace_norm(const CMatrix& m);

// -sum p log2 p over a clipped spectrum; shared by the entropy functionals.
double shannon_entropy(const RVector& probs);

}  // namespace qmac
