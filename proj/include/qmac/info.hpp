#pragma once

#include "qmac/channels.hpp"
#include "qmac/states.hpp"

namespace qmac {

struct EntropyReport {
  double value = 0.0;              // bits
  bool eigenvalue_floor_applied = false;
};

// von Neumann entropy -tr rho log2 rho, with 0 log 0 = 0.
double entropy(const DensityMatrix& rho);
EntropyReport entropy_report(const DensityMatrix& rho);
// Entropy of the reduction onto the given labels.
double entropy_of(const DensityMatrix& rho, const std::vector<std::string>& labels);

// H(A|B) = H(AB) - H(B); can be negative.
double cond_entropy(const DensityMatrix& rho, const std::vector<std::string>& a,
                    const std::vector<std::string>& b);

// I(A;B) = H(A) + H(B) - H(AB).
double mutual_info(const DensityMatrix& rho, const std::vector<std::string>& a,
                   const std::vector<std::string>& b);

// I(A;B|C) = H(AC) + H(BC) - H(C) - H(ABC); nonnegative by strong
// subadditivity.
double cond_mutual_info(const DensityMatrix& rho, const std::vector<std::string>& a,
                        const std::vector<std::string>& b, const std::vector<std::string>& c);

// I_c(A>B) = -H(A|B).
double coherent_info_state(const DensityMatrix& rho, const std::vector<std::string>& a,
                           const std::vector<std::string>& b);

// I_c(rho, N) = H(N(rho)) - H(N^c(rho)); the subtrahend is the entropy
// exchange.
double coherent_info_channel(const DensityMatrix& rho, const Channel& ch);

// Direct evaluation H(N(rho)) - H(N^c(rho)) over the instrument.
double coherent_info_instrument(const DensityMatrix& rho, const Instrument& ins);
// Weighted average sum_x p(x) I_c(rho, N_x); requires every component to be
// proportional to a trace-preserving channel.
double coherent_info_instrument_avg(const DensityMatrix& rho, const Instrument& ins);

// Holevo quantity of an ensemble: H(avg) - sum p(x) H(rho_x).
double holevo(const Ensemble& e);

double binary_entropy(double p);
// H(pe) + pe log2(m).
double fano_bound(double pe, int m);

}  // namespace qmac
