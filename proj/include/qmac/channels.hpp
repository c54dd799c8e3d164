#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qmac/states.hpp"
#include "qmac/tensor.hpp"

namespace qmac {

enum class Arity { single, mac2 };

// Isometric extension V: A -> E (x) B stored as the stacked block matrix
// (N_1; N_2; ...; N_k); the environment index is the Kraus list index and
// varies slowest.
struct Isometry {
  CMatrix mat;
  SystemShape in_shape;
  SystemShape out_shape;  // the B part
  SystemShape env_shape;  // single factor of dimension = Kraus count

  int env_dim() const { return env_shape.dim(); }
  // Throws unless V'V = 1 within kHermTol.
  void validate() const;
};

// Completely positive map in operator-sum form. Trace preserving unless
// explicitly flagged trace-reducing (sum K'K <= 1).
class Channel {
 public:
  Channel(std::vector<CMatrix> kraus, SystemShape in_shape, SystemShape out_shape);
  static Channel trace_reducing(std::vector<CMatrix> kraus, SystemShape in_shape,
                                SystemShape out_shape);
  static Channel identity(const SystemShape& shape);
  static Channel mac2(std::vector<CMatrix> kraus, SystemShape in_shape, SystemShape out_shape,
                      std::vector<std::string> alice_labels, std::vector<std::string> bob_labels);

  const std::vector<CMatrix>& kraus() const { return kraus_; }
  const SystemShape& in_shape() const { return in_; }
  const SystemShape& out_shape() const { return out_; }
  int in_dim() const { return in_.dim(); }
  int out_dim() const { return out_.dim(); }
  Arity arity() const { return arity_; }
  bool is_trace_reducing() const { return trace_reducing_; }
  const std::vector<std::string>& alice_labels() const { return alice_labels_; }
  const std::vector<std::string>& bob_labels() const { return bob_labels_; }

  // ||sum K'K - 1|| (operator norm); <= kHermTol for valid TP channels.
  double cptp_margin() const;
  // Largest pairwise commutator norm; ~0 flags a generalized dephasing channel.
  double kraus_commutator_norm() const;
  // c such that sum K'K = c*1 within kHermTol, if the map is proportional to a
  // trace preserving one.
  std::optional<double> proportional_weight() const;
  // Same Kraus entries,raised on the given factorizations.
  Channel relabelled(const SystemShape& in_shape, const SystemShape& out_shape) const;
  Channel as_mac2(std::vector<std::string> alice_labels, std::vector<std::string> bob_labels) const;

  const Isometry& isometric_extension() const;  // cached stacked-block form

 private:
  Channel() = default;
  std::vector<CMatrix> kraus_;
  SystemShape in_, out_;
  Arity arity_ = Arity::single;
  std::vector<std::string> alice_labels_, bob_labels_;
  bool trace_reducing_ = false;
  std::optional<Isometry> iso_;
  void init(bool reducing);
};

// Labelled family of trace-reducing maps summing to a channel; applied as a
// whole it produces the cq state sum_x |x><x| (x) M_x(rho).
class Instrument {
 public:
  Instrument(std::vector<std::pair<std::string, Channel>> components,
             std::string classical_label = "X");

  const std::vector<std::pair<std::string, Channel>>& components() const { return components_; }
  const std::string& classical_label() const { return classical_label_; }
  int size() const { return static_cast<int>(components_.size()); }

  // The instrument as one channel A -> X (x) B, Kraus |x> (x) K_{x,i}.
  Channel total() const;
  DensityMatrix apply_cq(const DensityMatrix& rho) const;

 private:
  std::vector<std::pair<std::string, Channel>> components_;
  std::string classical_label_;
};

// Channel action on the factors of rho named by `on` (ordered to match the
// channel's input factors); untouched factors pass through and keep their
// order, with the channel's output labels appended.
DensityMatrix apply(const Channel& ch, const DensityMatrix& rho,
                    const std::vector<std::string>& on);
DensityMatrix apply(const Channel& ch, const DensityMatrix& rho);
// Same action on a pure input, returning sum_i (1 (x) K_i)|psi><psi|(...)'.
DensityMatrix apply_pure(const Channel& ch, const PureState& psi,
                         const std::vector<std::string>& on);

Isometry kraus_to_isometry(const Channel& ch, const std::string& env_label = "E");
Channel isometry_to_kraus(const Isometry& v);

// The map to the environment, tr_B V rho V'.
Channel complement(const Channel& ch, const std::string& env_label = "E");

// Component-wise complement; the full complement of the instrument channel is
// block-diagonal over a classical copy with these components on the blocks.
Instrument instrument_complement(const Instrument& ins);

// compose(first, then) applies `first`, then `then_`.
Channel compose(const Channel& first, const Channel& then_);
// Parallel product; factor labels must not collide.
Channel tensor(const Channel& a, const Channel& b);

// Action-table distance ||T(complement(n)) - T(compose(n, d))||_1; small
// margin certifies that d degrades n's output onto its environment.
double verify_degrading(const Channel& n, const Channel& d);

// Transfer matrix sum_i K_i (x) conj(K_i); channel equality is always tested
// on this fingerprint, never on Kraus lists.
CMatrix transfer_matrix(const Channel& ch);
double channel_distance(const Channel& a, const Channel& b);

// Per-x channels of a channel on X (x) B that is only used on cq inputs.
std::vector<Channel> cq_channel_decompose(const Channel& ch, const std::string& x_label);

}  // namespace qmac
