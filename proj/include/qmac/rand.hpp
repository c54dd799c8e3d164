#pragma once

#include <cstdint>
#include <random>

#include "qmac/channels.hpp"
#include "qmac/states.hpp"

namespace qmac {

// splitmix64 step; used to derive independent per-task seeds from one master
// seed so results do not depend on scheduling.
std::uint64_t split_seed(std::uint64_t master, std::uint64_t index);

using Rng = std::mt19937_64;

double rand_uniform(Rng& rng, double lo = 0.0, double hi = 1.0);
double rand_normal(Rng& rng);

CVector rand_complex_vector(int dim, Rng& rng);  // iid standard complex Gaussian
CMatrix rand_ginibre(int rows, int cols, Rng& rng);
CMatrix rand_hermitian(int dim, Rng& rng);
CMatrix rand_unitary(int dim, Rng& rng);

PureState rand_pure(const SystemShape& shape, Rng& rng);
// Reduction of a random pure state on dim * rank; rank defaults to dim.
DensityMatrix rand_density(const SystemShape& shape, Rng& rng, int rank = 0);
// Random channel from a Haar-ish isometry with the given Kraus count.
Channel rand_channel(const SystemShape& in_shape, const SystemShape& out_shape, int kraus_count,
                     Rng& rng);
// Random POVM with n elements: M'M normalized columns of a random isometry.
std::vector<CMatrix> rand_povm(int dim, int n, Rng& rng);

}  // namespace qmac
