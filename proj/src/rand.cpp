#include "qmac/rand.hpp"

#include <cmath>

#include <Eigen/QR>

namespace qmac {

std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double rand_uniform(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  return dist(rng);
}

double rand_normal(Rng& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  return dist(rng);
}

CVector rand_complex_vector(int dim, Rng& rng) {
  CVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = complexd(rand_normal(rng), rand_normal(rng));
  return v;
}

CMatrix rand_ginibre(int rows, int cols, Rng& rng) {
  CMatrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = complexd(rand_normal(rng), rand_normal(rng));
  return m;
}

CMatrix rand_hermitian(int dim, Rng& rng) {
  CMatrix g = rand_ginibre(dim, dim, rng);
  return 0.5 * (g + g.adjoint());
}

CMatrix rand_unitary(int dim, Rng& rng) {
  CMatrix g = rand_ginibre(dim, dim, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(dim, dim);
  CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase convention so the distribution is Haar.
  for (int i = 0; i < dim; ++i) {
    complexd d = r(i, i);
    q.col(i) *= (std::abs(d) > 0) ? d / std::abs(d) : complexd(1, 0);
  }
  return q;
}

PureState rand_pure(const SystemShape& shape, Rng& rng) {
  return PureState::normalized(rand_complex_vector(shape.dim(), rng), shape);
}

DensityMatrix rand_density(const SystemShape& shape, Rng& rng, int rank) {
  const int d = shape.dim();
  if (rank <= 0) rank = d;
  CMatrix g = rand_ginibre(d, rank, rng);
  CMatrix w = g * g.adjoint();
  w /= w.trace().real();
  return DensityMatrix::trusted(0.5 * (w + w.adjoint()), shape);
}

Channel rand_channel(const SystemShape& in_shape, const SystemShape& out_shape, int kraus_count,
                     Rng& rng) {
  const int din = in_shape.dim();
  const int dout = out_shape.dim();
  if (kraus_count * dout < din)
    throw std::invalid_argument("rand_channel: environment too small for an isometry");
  // Left factor of the QR of a tall Ginibre matrix is a random isometry.
  CMatrix g = rand_ginibre(kraus_count * dout, din, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix v = qr.householderQ() * CMatrix::Identity(kraus_count * dout, din);
  std::vector<CMatrix> kraus;
  kraus.reserve(kraus_count);
  for (int i = 0; i < kraus_count; ++i) kraus.push_back(v.block(i * dout, 0, dout, din));
  return Channel(std::move(kraus), in_shape, out_shape);
}

std::vector<CMatrix> rand_povm(int dim, int n, Rng& rng) {
  // Columns of a random isometry dim*n <- dim give M_y with sum M'M = 1.
  CMatrix g = rand_ginibre(dim * n, dim, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix v = qr.householderQ() * CMatrix::Identity(dim * n, dim);
  std::vector<CMatrix> povm;
  povm.reserve(n);
  for (int y = 0; y < n; ++y) {
    CMatrix m = v.block(y * dim, 0, dim, dim);
    CMatrix lam = m.adjoint() * m;
    povm.push_back(0.5 * (lam + lam.adjoint()));
  }
  return povm;
}

}  // namespace qmac
