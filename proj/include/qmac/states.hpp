#pragma once

#include <optional>
#include <vector>

#include "qmac/tensor.hpp"

namespace qmac {

// Validated density matrix tagged with its subsystem factorization.
class DensityMatrix {
 public:
  DensityMatrix(CMatrix mat, SystemShape shape);

  // Skips the spectral check for matrices produced by operations that
  // preserve validity (partial traces, channel outputs, cq assembly).
  static DensityMatrix trusted(CMatrix mat, SystemShape shape);

  const CMatrix& mat() const { return mat_; }
  const SystemShape& shape() const { return shape_; }
  int dim() const { return static_cast<int>(mat_.rows()); }

  DensityMatrix partial_trace_out(const std::vector<std::string>& traced) const;
  DensityMatrix reduced(const std::vector<std::string>& kept) const;
  DensityMatrix permuted(const std::vector<std::string>& new_order) const;
  DensityMatrix relabelled(const SystemShape& shape) const;  // same dim, new factorization

  // Throws if any invariant (Hermiticity, PSD clip band, unit trace) fails.
  void validate() const;

 private:
  DensityMatrix() = default;
  CMatrix mat_;
  SystemShape shape_;
};

// Unit vector with canonical global phase: the first component larger than
// kNullPostTol in magnitude is made real and nonnegative.
class PureState {
 public:
  PureState(CVector vec, SystemShape shape);
  static PureState normalized(CVector vec, SystemShape shape);
  static PureState basis(int index, SystemShape shape);

  const CVector& vec() const { return vec_; }
  const SystemShape& shape() const { return shape_; }
  int dim() const { return static_cast<int>(vec_.size()); }

  DensityMatrix density() const;
  PureState tensor(const PureState& rhs) const;
  PureState permuted(const std::vector<std::string>& new_order) const;
  PureState relabelled(const SystemShape& shape) const;

 private:
  CVector vec_;
  SystemShape shape_;
};

struct Ensemble {
  std::vector<double> probs;
  std::vector<DensityMatrix> states;  // common shape

  void validate() const;  // probs nonnegative and normalized, shapes equal
  DensityMatrix average() const;
};

struct PureEnsemble {
  std::vector<double> probs;
  std::vector<PureState> states;

  Ensemble to_ensemble() const;
};

// Block-diagonal joint state of a classical label and a quantum system.
struct CQState {
  Ensemble ensemble;
  std::string classical_label;
  SystemShape quantum_shape;

  DensityMatrix assemble() const;
  // Extracts (p(x), rho_x) blocks back out of an assembled cq state.
  static CQState decompose(const DensityMatrix& dm, const std::string& classical_label);
};

// sum_x p(x) |x><x| (x) rho_x on X (x) A.
DensityMatrix cq_assemble(const Ensemble& e, const std::string& classical_label = "X");

// Pure state on R (x) B whose reduction to B is rho; reference dimension is
// rank(rho), built from the eigen-ensemble.
PureState purify(const DensityMatrix& rho, const std::string& ref_label = "R");

struct SchmidtDecomp {
  std::vector<double> coeffs;  // nonnegative, descending, sum of squares 1
  CMatrix left_basis;          // columns on the cut side
  CMatrix right_basis;         // columns on the complement
  std::vector<std::string> left_labels, right_labels;
};

// Schmidt decomposition across the bipartition (cut, rest).
SchmidtDecomp schmidt(const PureState& psi, const std::vector<std::string>& cut);

struct MeasureOutcome {
  double prob;
  std::optional<DensityMatrix> post;  // empty when prob <= kNullPostTol
};

// POVM measurement with post-states sqrt(L) rho sqrt(L) / p.
std::vector<MeasureOutcome> measure_povm(const DensityMatrix& rho,
                                         const std::vector<CMatrix>& povm);

// Rank-k maximally entangled pure state on a (x) b, each of dimension k.
PureState max_entangled(int k, const std::string& a = "A", const std::string& b = "B");
DensityMatrix max_mixed(int d, const std::string& label = "A");

}  // namespace qmac
