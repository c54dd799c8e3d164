#include "qmac/fuzz.hpp"

#include <cmath>
#include <functional>

#include "qmac/metrics.hpp"
#include "qmac/rand.hpp"

namespace qmac {

namespace {

using TrialFn = std::function<void(int, Rng&, FuzzReport&)>;

void record(FuzzReport& report, int trial, const std::string& check, double margin) {
  report.worst_margin = std::min(report.worst_margin, margin);
  if (margin < -kFuzzSlack) report.failures.push_back({trial, check, margin});
}

const SystemShape kABCD({{"A", 2}, {"B", 2}, {"C", 2}, {"D", 2}});

void trial_ssa(int t, Rng& rng, FuzzReport& report) {
  DensityMatrix abc = rand_pure(kABCD, rng).density().reduced({"A", "B", "C"});
  record(report, t, "I(A;B|C) >= 0", cond_mutual_info(abc, {"A"}, {"B"}, {"C"}));
}

void trial_dataproc(int t, Rng& rng, FuzzReport& report) {
  DensityMatrix rho = rand_density(SystemShape({{"A", 2}, {"B", 2}}), rng);
  const int kraus_count = 1 + (t % 4);
  Channel n = rand_channel(SystemShape::single("B", 2), SystemShape::single("C", 2),
                           kraus_count, rng);
  DensityMatrix out = apply(n, rho, {"B"});
  record(report, t, "Ic(A>B) >= Ic(A>C)",
         coherent_info_state(rho, {"A"}, {"B"}) - coherent_info_state(out, {"A"}, {"C"}));
}

void trial_holevo(int t, Rng& rng, FuzzReport& report) {
  const int n = 3;
  Ensemble e;
  double sum = 0;
  for (int x = 0; x < n; ++x) {
    e.states.push_back(rand_density(SystemShape::single("B", 2), rng));
    e.probs.push_back(rand_uniform(rng, 0.05, 1.0));
    sum += e.probs.back();
  }
  for (double& p : e.probs) p /= sum;

  auto povm = rand_povm(2, 3, rng);
  // Classical mutual information of the induced joint distribution.
  std::vector<std::vector<double>> pxy(n, std::vector<double>(povm.size()));
  std::vector<double> py(povm.size(), 0.0);
  for (int x = 0; x < n; ++x)
    for (size_t y = 0; y < povm.size(); ++y) {
      pxy[x][y] = e.probs[x] * std::max((povm[y] * e.states[x].mat()).trace().real(), 0.0);
      py[y] += pxy[x][y];
    }
  double ixy = 0;
  for (int x = 0; x < n; ++x)
    for (size_t y = 0; y < povm.size(); ++y)
      if (pxy[x][y] > 0) ixy += pxy[x][y] * std::log2(pxy[x][y] / (e.probs[x] * py[y]));

  record(report, t, "I(X;B) >= I(X;Y)", holevo(e) - ixy);
}

void trial_jointsub(int t, Rng& rng, FuzzReport& report) {
  DensityMatrix rho = rand_density(kABCD, rng);
  record(report, t, "H(A|C)+H(B|D) >= H(AB|CD)",
         cond_entropy(rho, {"A"}, {"C"}) + cond_entropy(rho, {"B"}, {"D"}) -
             cond_entropy(rho, {"A", "B"}, {"C", "D"}));
}

void trial_superadd(int t, Rng& rng, FuzzReport& report) {
  DensityMatrix rho = rand_density(kABCD, rng);
  record(report, t, "Ic(AB>CD) >= Ic(A>C)+Ic(B>D)",
         coherent_info_state(rho, {"A", "B"}, {"C", "D"}) -
             coherent_info_state(rho, {"A"}, {"C"}) - coherent_info_state(rho, {"B"}, {"D"}));
}

void trial_metrics(int t, Rng& rng, FuzzReport& report) {
  const SystemShape q1 = SystemShape::single("A", 2);
  DensityMatrix rho = rand_density(q1, rng);
  DensityMatrix sig = rand_density(q1, rng);

  SandwichMargins sw = fid_trace_sandwich(rho, sig);
  record(report, t, "T/2 >= 1-sqrt(F)", sw.t_lower.margin());
  record(report, t, "sqrt(1-F) >= T/2", sw.t_upper.margin());
  record(report, t, "F >= 1-T", sw.f_lower.margin());
  record(report, t, "1-T^2/4 >= F", sw.f_upper.margin());

  PureState phi = rand_pure(q1, rng);
  record(report, t, "special triangle", special_triangle(phi, rho, sig).margin());

  DensityMatrix rho_b = rand_density(SystemShape::single("B", 2), rng);
  DensityMatrix omega = rand_density(SystemShape({{"A", 2}, {"B", 2}}), rng);
  record(report, t, "transitivity", transitivity_bound(phi, rho_b, omega).margin());

  DensityMatrix rho3 = rand_density(SystemShape::single("A", 3), rng);
  CMatrix m = rand_hermitian(3, rng);
  HermEig eig = herm_eig(m);
  CMatrix shifted = m - eig.eigenvalues.minCoeff() * CMatrix::Identity(3, 3);
  const double spread = eig.eigenvalues.maxCoeff() - eig.eigenvalues.minCoeff();
  const double u = rand_uniform(rng, 0.0, 1.0);
  CMatrix lam = CMatrix::Identity(3, 3);
  if (spread > 1e-12) lam -= (u / spread) * shifted;
  record(report, t, "gentle measurement", gentle_measurement(rho3, lam).margin.margin());

  const SystemShape ab({{"A", 2}, {"B", 2}});
  DensityMatrix r1 = rand_density(ab, rng);
  DensityMatrix r2 = rand_density(ab, rng);
  const double delta = rand_uniform(rng, 0.0, 0.3);
  CMatrix mix = (1 - delta) * r1.mat() + delta * r2.mat();
  DensityMatrix nearby = DensityMatrix::trusted(std::move(mix), ab);
  record(report, t, "continuity of Ic", continuity_bound(r1, nearby, {"A"}, {"B"}).margin.margin());
}

void trial_degradable(int t, Rng& rng, FuzzReport& report) {
  const SystemShape e2 = SystemShape::single("E", 2);
  NamedChannel nc = dephasing_channel({rand_pure(e2, rng), rand_pure(e2, rng)});
  record(report, t, "dephasing degraded by complement",
         1e-8 - verify_degrading(nc.channel, *nc.degrading_candidate));

  // Complete dephasing never lowers entropy.
  NamedChannel delta = dephasing_channel({PureState::basis(0, e2), PureState::basis(1, e2)});
  DensityMatrix rho = rand_density(SystemShape::single("A", 2), rng);
  record(report, t, "H(D(rho)) >= H(rho)",
         entropy(apply(delta.channel, rho.relabelled(delta.channel.in_shape()))) - entropy(rho));

  // Two-copy additivity for degradable channels, arbitrary correlated input.
  Channel two = tensor(
      nc.channel.relabelled(SystemShape::single("A1", 2), SystemShape::single("B1", 2)),
      nc.channel.relabelled(SystemShape::single("A2", 2), SystemShape::single("B2", 2)));
  DensityMatrix tau = rand_density(SystemShape({{"A1", 2}, {"A2", 2}}), rng);
  const double lhs = coherent_info_channel(tau.reduced({"A1"}), nc.channel) +
                     coherent_info_channel(tau.reduced({"A2"}), nc.channel);
  record(report, t, "degradable 2-copy additivity",
         lhs - coherent_info_channel(tau, two));
}

}  // namespace

std::vector<std::string> fuzz_suites() {
  return {"ssa", "dataproc", "holevo", "jointsub", "superadd", "metrics", "degradable"};
}

FuzzReport run_fuzz(const std::string& suite, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("run_fuzz: trials must be at least 1");
  TrialFn fn;
  if (suite == "ssa") fn = trial_ssa;
  else if (suite == "dataproc") fn = trial_dataproc;
  else if (suite == "holevo") fn = trial_holevo;
  else if (suite == "jointsub") fn = trial_jointsub;
  else if (suite == "superadd") fn = trial_superadd;
  else if (suite == "metrics") fn = trial_metrics;
  else if (suite == "degradable") fn = trial_degradable;
  else throw std::invalid_argument("run_fuzz: unknown suite " + suite);

  FuzzReport report;
  report.suite = suite;
  report.trials = trials;
  report.seed = seed;
  for (int t = 0; t < trials; ++t) {
    Rng rng(split_seed(seed, static_cast<std::uint64_t>(t)));
    fn(t, rng, report);
  }
  return report;
}

}  // namespace qmac
