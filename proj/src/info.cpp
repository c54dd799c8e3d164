#include "qmac/info.hpp"

#include <cmath>

namespace qmac {

EntropyReport entropy_report(const DensityMatrix& rho) {
  HermEig eig = herm_eig(rho.mat());
  EntropyReport out;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    double v = eig.eigenvalues(i);
    if (v < kPsdClip)
      throw std::invalid_argument("entropy: eigenvalue below PSD clip band");
    if (v < 0) {
      v = 0;
      out.eigenvalue_floor_applied = true;
    }
    if (v > 0) out.value -= v * std::log2(v);
  }
  if (out.value < 0 && out.value > -1e-12) out.value = 0;  // kill -0.0 noise
  return out;
}

double entropy(const DensityMatrix& rho) { return entropy_report(rho).value; }

double entropy_of(const DensityMatrix& rho, const std::vector<std::string>& labels) {
  return entropy(rho.reduced(labels));
}

namespace {

std::vector<std::string> joined(const std::vector<std::string>& a,
                                const std::vector<std::string>& b) {
  std::vector<std::string> out = a;
  for (const auto& l : b) {
    if (std::find(a.begin(), a.end(), l) != a.end())
      throw std::invalid_argument("info measure: overlapping label sets (" + l + ")");
    out.push_back(l);
  }
  return out;
}

}  // namespace

double cond_entropy(const DensityMatrix& rho, const std::vector<std::string>& a,
                    const std::vector<std::string>& b) {
  return entropy_of(rho, joined(a, b)) - entropy_of(rho, b);
}

double mutual_info(const DensityMatrix& rho, const std::vector<std::string>& a,
                   const std::vector<std::string>& b) {
  return entropy_of(rho, a) + entropy_of(rho, b) - entropy_of(rho, joined(a, b));
}

double cond_mutual_info(const DensityMatrix& rho, const std::vector<std::string>& a,
                        const std::vector<std::string>& b, const std::vector<std::string>& c) {
  (void)joined(a, b);
  return entropy_of(rho, joined(a, c)) + entropy_of(rho, joined(b, c)) - entropy_of(rho, c) -
         entropy_of(rho, joined(joined(a, b), c));
}

double coherent_info_state(const DensityMatrix& rho, const std::vector<std::string>& a,
                           const std::vector<std::string>& b) {
  return -cond_entropy(rho, a, b);
}

double coherent_info_channel(const DensityMatrix& rho, const Channel& ch) {
  if (rho.dim() != ch.in_dim())
    throw std::invalid_argument("coherent_info_channel: state/channel dimension mismatch");
  DensityMatrix in = rho.relabelled(ch.in_shape());
  return entropy(apply(ch, in)) - entropy(apply(complement(ch), in));
}

double coherent_info_instrument(const DensityMatrix& rho, const Instrument& ins) {
  DensityMatrix in = rho.relabelled(ins.components().front().second.in_shape());
  return entropy(ins.apply_cq(in)) - entropy(instrument_complement(ins).apply_cq(in));
}

double coherent_info_instrument_avg(const DensityMatrix& rho, const Instrument& ins) {
  double acc = 0.0;
  for (const auto& [label, comp] : ins.components()) {
    auto w = comp.proportional_weight();
    if (!w)
      throw std::invalid_argument(
          "coherent_info_instrument_avg: component " + label +
          " is not proportional to a trace-preserving channel");
    if (*w <= kNullPostTol) continue;
    std::vector<CMatrix> kraus = comp.kraus();
    for (auto& k : kraus) k /= std::sqrt(*w);
    Channel normalized(std::move(kraus), comp.in_shape(), comp.out_shape());
    acc += *w * coherent_info_channel(rho, normalized);
  }
  return acc;
}

double holevo(const Ensemble& e) {
  e.validate();
  double avg_entropy = 0.0;
  for (size_t i = 0; i < e.probs.size(); ++i) avg_entropy += e.probs[i] * entropy(e.states[i]);
  return entropy(e.average()) - avg_entropy;
}

double binary_entropy(double p) {
  if (p < -kProbSumTol || p > 1.0 + kProbSumTol)
    throw std::invalid_argument("binary_entropy: probability out of [0, 1]");
  p = std::min(std::max(p, 0.0), 1.0);
  double h = 0.0;
  if (p > 0) h -= p * std::log2(p);
  if (p < 1) h -= (1 - p) * std::log2(1 - p);
  return h;
}

double fano_bound(double pe, int m) {
  if (m < 1) throw std::invalid_argument("fano_bound: m must be at least 1");
  return binary_entropy(pe) + pe * std::log2(static_cast<double>(m));
}

}  // namespace qmac
