#pragma once

#include <optional>
#include <string>

#include "qmac/regions.hpp"

namespace qmac {

enum class ChannelFamily { erasure, phaseflip, dephasing, custom };

// Channel constructor output bundled with whatever closed forms the family
// admits, so the optimizer and the lemma suites have oracles to check against.
struct NamedChannel {
  NamedChannel(std::string id_, ChannelFamily family_, Channel channel_)
      : id(std::move(id_)), family(family_), channel(std::move(channel_)) {}

  std::string id;
  ChannelFamily family = ChannelFamily::custom;
  Channel channel;
  std::optional<Channel> degrading_candidate;
  // Family parameters.
  int erasure_d = 0;
  double flip_p = 0.0;
  std::vector<PureState> dephasing_vectors;

  // Single-letter maximum coherent information, when the family has one.
  std::optional<double> closed_form_capacity() const;
};

// Two-sender erasure channel: Alice's qubit gates whether Bob's d-level input
// reaches Charlie (|1>) or is replaced by the erasure flag |0> (|0>).
NamedChannel erasure_mac(int d);

// Closed-form boundary (H(q), (1-2q) log d) for q in [0, 1/2].
Region2D erasure_cq_curve(int d, const std::vector<double>& q_grid);

// Collective phase flip on two qubits: rho -> (1-p) rho + p (Z(x)Z) rho (Z(x)Z).
NamedChannel phase_flip_mac(double p);

// Closed-form qq region caps (1, 1, 2 - H(p)).
Pentagon phase_flip_pentagon(double p);

// Basis-preserving channel with environment vectors phis; the complement is
// its own degrading map.
NamedChannel dephasing_channel(const std::vector<PureState>& phis);

// max over p(x) of H(X) - H(sum_x p(x) phi_x), by multi-start search over the
// simplex.
double dephasing_capacity(const NamedChannel& nc, const OptimBudget& budget, std::uint64_t seed);

struct SumRateReport {
  int trials = 0;
  double cap = 0.0;           // certified single-letter maximum per use
  double degrading_margin = 0.0;
  double worst_excess = -std::numeric_limits<double>::infinity();
  bool ok = false;            // no trial exceeded cap + 1e-6
  std::vector<double> per_use_rates;
};

// Samples random k = 2 product inputs and checks the per-use sum coherent
// information against the single-letter maximum. Requires a certified
// degrading candidate.
SumRateReport degradable_sum_rate_check(const NamedChannel& nc, int trials, std::uint64_t seed);

// "erasure:d=2", "phaseflip:p=0.1", "dephasing:file=PATH".
NamedChannel parse_channel_id(const std::string& id);

}  // namespace qmac
