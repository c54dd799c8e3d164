#include "qmac/models.hpp"

#include <cmath>

#include "qmac/rand.hpp"

namespace qmac {

std::optional<double> NamedChannel::closed_form_capacity() const {
  if (family == ChannelFamily::phaseflip) return 2.0 - binary_entropy(flip_p);
  return std::nullopt;
}

NamedChannel erasure_mac(int d) {
  if (d < 2) throw std::invalid_argument("erasure_mac: d must be at least 2");
  const SystemShape in({{"A'", 2}, {"B'", d}});
  const SystemShape out = SystemShape::single("C", d + 1);

  // d erase elements |0><0|<j| plus one coherent transmit element
  // sum_i |i><1|<i|; d+1 elements in total.
  std::vector<CMatrix> kraus;
  for (int j = 0; j < d; ++j) {
    CMatrix e = CMatrix::Zero(d + 1, 2 * d);
    e(0, j) = 1.0;  // Alice index 0 block occupies columns [0, d)
    kraus.push_back(std::move(e));
  }
  CMatrix t = CMatrix::Zero(d + 1, 2 * d);
  for (int i = 0; i < d; ++i) t(i + 1, d + i) = 1.0;
  kraus.push_back(std::move(t));

  NamedChannel nc("erasure:d=" + std::to_string(d), ChannelFamily::erasure,
                  Channel::mac2(std::move(kraus), in, out, {"A'"}, {"B'"}));
  nc.erasure_d = d;
  return nc;
}

Region2D erasure_cq_curve(int d, const std::vector<double>& q_grid) {
  if (d < 2) throw std::invalid_argument("erasure_cq_curve: d must be at least 2");
  const double logd = std::log2(static_cast<double>(d));
  std::vector<RatePoint> pts;
  for (double q : q_grid) {
    if (q < -kProbSumTol || q > 0.5 + kProbSumTol)
      throw std::invalid_argument("erasure_cq_curve: q must lie in [0, 1/2]");
    q = std::min(std::max(q, 0.0), 0.5);
    pts.push_back({binary_entropy(q), (1.0 - 2.0 * q) * logd});
  }
  return make_region({{"R", "Q"}}, std::move(pts));
}

NamedChannel phase_flip_mac(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("phase_flip_mac: p must lie in [0, 1]");
  const SystemShape in({{"A'", 2}, {"B'", 2}});
  const SystemShape out = SystemShape::single("C", 4);

  CMatrix zz = CMatrix::Zero(4, 4);
  zz.diagonal() << 1, -1, -1, 1;
  std::vector<CMatrix> kraus{std::sqrt(1.0 - p) * CMatrix::Identity(4, 4), std::sqrt(p) * zz};

  NamedChannel nc("phaseflip:p=" + std::to_string(p), ChannelFamily::phaseflip,
                  Channel::mac2(std::move(kraus), in, out, {"A'"}, {"B'"}));
  nc.flip_p = p;
  nc.degrading_candidate =
      complement(nc.channel).relabelled(out, SystemShape::single("E", 2));

  // Environment vectors per dephasing basis state 00, 01, 10, 11.
  const SystemShape e2 = SystemShape::single("E'", 2);
  CVector plus(2), minus(2);
  plus << std::sqrt(1.0 - p), std::sqrt(p);
  minus << std::sqrt(1.0 - p), -std::sqrt(p);
  PureState phi_plus(plus, e2), phi_minus(minus, e2);
  nc.dephasing_vectors = {phi_plus, phi_minus, phi_minus, phi_plus};

  if (nc.channel.kraus_commutator_norm() > 1e-12)
    throw std::runtime_error("phase_flip_mac: Kraus operators fail to commute");
  return nc;
}

Pentagon phase_flip_pentagon(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("phase_flip_pentagon: p out of range");
  return {1.0, 1.0, 2.0 - binary_entropy(p)};
}

NamedChannel dephasing_channel(const std::vector<PureState>& phis) {
  const int d = static_cast<int>(phis.size());
  if (d < 2) throw std::invalid_argument("dephasing_channel: need at least two basis vectors");
  const int de = phis.front().dim();
  for (const auto& phi : phis)
    if (phi.dim() != de)
      throw std::invalid_argument("dephasing_channel: environment vectors of unequal dimension");

  // N_e = sum_x <e|phi_x> |x><x|; all diagonal, hence commuting.
  std::vector<CMatrix> kraus;
  for (int e = 0; e < de; ++e) {
    CMatrix k = CMatrix::Zero(d, d);
    for (int x = 0; x < d; ++x) k(x, x) = phis[x].vec()(e);
    kraus.push_back(std::move(k));
  }

  NamedChannel nc("dephasing:d=" + std::to_string(d), ChannelFamily::dephasing,
                  Channel(std::move(kraus), SystemShape::single("A", d),
                          SystemShape::single("B", d)));
  nc.dephasing_vectors = phis;
  nc.degrading_candidate = complement(nc.channel)
                               .relabelled(SystemShape::single("B", d),
                                           SystemShape::single("E", de));
  return nc;
}

double dephasing_capacity(const NamedChannel& nc, const OptimBudget& budget, std::uint64_t seed) {
  if (nc.dephasing_vectors.empty())
    throw std::invalid_argument("dephasing_capacity: channel is not dephasing-constructed");
  const auto& phis = nc.dephasing_vectors;
  const int d = static_cast<int>(phis.size());
  const int de = phis.front().dim();

  auto objective = [&](const Eigen::VectorXd& params) {
    double mx = params.maxCoeff();
    Eigen::VectorXd w = (params.array() - mx).exp();
    w /= w.sum();
    double hx = 0.0;
    CMatrix env = CMatrix::Zero(de, de);
    for (int x = 0; x < d; ++x) {
      if (w(x) > 0) hx -= w(x) * std::log2(w(x));
      env += w(x) * (phis[x].vec() * phis[x].vec().adjoint());
    }
    HermEig eig = herm_eig(env);
    double he = 0.0;
    for (int i = 0; i < de; ++i)
      if (eig.eigenvalues(i) > 0) he -= eig.eigenvalues(i) * std::log2(eig.eigenvalues(i));
    return hx - he;
  };
  return multistart_maximize(objective, d, budget, seed).value;
}

SumRateReport degradable_sum_rate_check(const NamedChannel& nc, int trials, std::uint64_t seed) {
  if (!nc.degrading_candidate)
    throw std::invalid_argument("degradable_sum_rate_check: no degrading candidate");
  SumRateReport report;
  report.trials = trials;
  report.degrading_margin = verify_degrading(nc.channel, *nc.degrading_candidate);
  if (report.degrading_margin > 1e-6)
    throw std::invalid_argument("degradable_sum_rate_check: degradability not certified, margin " +
                                std::to_string(report.degrading_margin));

  double tol = 1e-6;
  if (auto cap = nc.closed_form_capacity()) {
    report.cap = *cap;
  } else {
    report.cap = dephasing_capacity(nc, OptimBudget{16, 800}, split_seed(seed, 0));
    tol = 1e-4;  // cap itself comes from a numeric maximization
  }

  const Channel& ch = nc.channel;
  Channel squared = (ch.arity() == Arity::mac2)
                        ? mac_tensor_power(ch, 2)
                        : tensor(ch.relabelled(SystemShape::single("A1", ch.in_dim()),
                                               SystemShape::single("B1", ch.out_dim())),
                                 ch.relabelled(SystemShape::single("A2", ch.in_dim()),
                                               SystemShape::single("B2", ch.out_dim())));

  for (int t = 0; t < trials; ++t) {
    Rng rng(split_seed(seed, static_cast<std::uint64_t>(t) + 1));
    CMatrix joint;
    if (ch.arity() == Arity::mac2) {
      const int da = ch.in_shape().dim_of(ch.alice_labels());
      const int db = ch.in_shape().dim_of(ch.bob_labels());
      DensityMatrix rho = rand_density(SystemShape::single("a", da * da), rng);
      DensityMatrix sig = rand_density(SystemShape::single("b", db * db), rng);
      joint = kron(rho.mat(), sig.mat());
    } else {
      joint = rand_density(SystemShape::single("a", ch.in_dim() * ch.in_dim()), rng).mat();
    }
    DensityMatrix input = DensityMatrix::trusted(std::move(joint), squared.in_shape());
    const double per_use = coherent_info_channel(input, squared) / 2.0;
    report.per_use_rates.push_back(per_use);
    report.worst_excess = std::max(report.worst_excess, per_use - report.cap);
  }
  report.ok = report.worst_excess <= tol;
  return report;
}

}  // namespace qmac
