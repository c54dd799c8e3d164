#include <doctest.h>

#include <cmath>

#include "qmac/info.hpp"
#include "qmac/metrics.hpp"
#include "qmac/rand.hpp"

using namespace qmac;

namespace {

PureState plus_state(const std::string& label = "A") {
  CVector v(2);
  v << 1, 1;
  return PureState::normalized(v, SystemShape::single(label, 2));
}

// Purification with the reference padded to the full dimension, so vectors
// for different states live in one space.
PureState purify_full(const DensityMatrix& rho, const std::string& ref) {
  HermEig eig = herm_eig(rho.mat());
  const int d = rho.dim();
  CVector psi = CVector::Zero(d * d);
  for (int i = 0; i < d; ++i)
    psi.segment(i * d, d) +=
        std::sqrt(std::max(eig.eigenvalues(i), 0.0)) * eig.eigenvectors.col(i);
  return PureState::normalized(psi, SystemShape::single(ref, d).concat(rho.shape()));
}

}  // namespace

TEST_CASE("trace distance values") {
  Rng rng(3);
  DensityMatrix rho = rand_density(SystemShape::single("A", 2), rng);
  CHECK(trace_distance(rho, rho) == doctest::Approx(0.0));

  const SystemShape q = SystemShape::single("A", 2);
  DensityMatrix e0 = PureState::basis(0, q).density();
  DensityMatrix e1 = PureState::basis(1, q).density();
  CHECK(trace_distance(e0, e1) == doctest::Approx(2.0).epsilon(1e-12));

  CMatrix a(2, 2), b(2, 2);
  a << 0.5, 0, 0, 0.5;
  b << 0.75, 0, 0, 0.25;
  CHECK(trace_distance(DensityMatrix(a, q), DensityMatrix(b, q)) ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("trace distance variational characterization") {
  Rng rng(5);
  const SystemShape q = SystemShape::single("A", 3);
  for (int t = 0; t < 30; ++t) {
    DensityMatrix rho = rand_density(q, rng);
    DensityMatrix sig = rand_density(q, rng);
    // Projector onto the positive part of rho - sigma attains the maximum.
    HermEig eig = herm_eig(rho.mat() - sig.mat());
    CMatrix proj = CMatrix::Zero(3, 3);
    for (int i = 0; i < 3; ++i)
      if (eig.eigenvalues(i) > 0)
        proj += eig.eigenvectors.col(i) * eig.eigenvectors.col(i).adjoint();
    const double attained = 2.0 * (proj * (rho.mat() - sig.mat())).trace().real();
    CHECK(trace_distance(rho, sig) == doctest::Approx(attained).epsilon(1e-8));
  }
}

TEST_CASE("fidelity values and properties") {
  Rng rng(7);
  const SystemShape q = SystemShape::single("A", 2);
  DensityMatrix rho = rand_density(q, rng);
  CHECK(fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-10));

  DensityMatrix zero = PureState::basis(0, q).density();
  CHECK(fidelity(zero, plus_state().density()) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(fidelity(PureState::basis(0, q), max_mixed(2)) == doctest::Approx(0.5).epsilon(1e-12));

  // Symmetry and multiplicativity on tensor products.
  for (int t = 0; t < 20; ++t) {
    DensityMatrix r1 = rand_density(q, rng);
    DensityMatrix s1 = rand_density(q, rng);
    CHECK(fidelity(r1, s1) == doctest::Approx(fidelity(s1, r1)).epsilon(1e-9));

    DensityMatrix r2 = rand_density(SystemShape::single("B", 2), rng);
    DensityMatrix s2 = rand_density(SystemShape::single("B", 2), rng);
    DensityMatrix rr = DensityMatrix::trusted(kron(r1.mat(), r2.mat()),
                                              r1.shape().concat(r2.shape()));
    DensityMatrix ss = DensityMatrix::trusted(kron(s1.mat(), s2.mat()),
                                              s1.shape().concat(s2.shape()));
    CHECK(fidelity(rr, ss) ==
          doctest::Approx(fidelity(r1, s1) * fidelity(r2, s2)).epsilon(1e-9));
  }

  // Pure-state fidelity is linear in the mixed argument.
  PureState phi = rand_pure(q, rng);
  DensityMatrix s1 = rand_density(q, rng);
  DensityMatrix s2 = rand_density(q, rng);
  CMatrix mix = 0.3 * s1.mat() + 0.7 * s2.mat();
  CHECK(fidelity(phi, DensityMatrix::trusted(mix, q)) ==
        doctest::Approx(0.3 * fidelity(phi, s1) + 0.7 * fidelity(phi, s2)).epsilon(1e-12));
}

TEST_CASE("fidelity/trace-distance sandwich") {
  Rng rng(11);
  const SystemShape q = SystemShape::single("A", 2);

  SandwichMargins same = fid_trace_sandwich(max_mixed(2), max_mixed(2));
  CHECK(same.t == doctest::Approx(0.0));
  CHECK(same.f == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(same.all_satisfied());

  SandwichMargins ortho = fid_trace_sandwich(PureState::basis(0, q).density(),
                                             PureState::basis(1, q).density());
  CHECK(ortho.t == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(ortho.f == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(ortho.all_satisfied());

  for (int t = 0; t < 200; ++t) {
    SandwichMargins sw = fid_trace_sandwich(rand_density(q, rng), rand_density(q, rng));
    CHECK(sw.t_lower.margin() >= -1e-9);
    CHECK(sw.t_upper.margin() >= -1e-9);
    CHECK(sw.f_lower.margin() >= -1e-9);
    CHECK(sw.f_upper.margin() >= -1e-9);
  }
}

TEST_CASE("special triangle inequality") {
  Rng rng(13);
  const SystemShape q = SystemShape::single("A", 2);
  PureState phi = rand_pure(q, rng);
  DensityMatrix rho = rand_density(q, rng);
  CHECK(special_triangle(phi, rho, rho).margin() == doctest::Approx(0.0).epsilon(1e-12));

  // phi = rho against an orthogonal pure state: 0 >= 1 - 2.
  DensityMatrix e0 = PureState::basis(0, q).density();
  DensityMatrix e1 = PureState::basis(1, q).density();
  BoundMargin extreme = special_triangle(PureState::basis(0, q), e0, e1);
  CHECK(extreme.lhs == doctest::Approx(0.0));
  CHECK(extreme.rhs == doctest::Approx(-1.0).epsilon(1e-10));

  for (int t = 0; t < 200; ++t) {
    BoundMargin m = special_triangle(rand_pure(q, rng), rand_density(q, rng),
                                     rand_density(q, rng));
    CHECK(m.margin() >= -1e-9);
  }
}

TEST_CASE("transitivity bound") {
  Rng rng(17);
  const SystemShape qa = SystemShape::single("A", 2);
  const SystemShape qb = SystemShape::single("B", 2);
  PureState phi = rand_pure(qa, rng);
  DensityMatrix rho = rand_density(qb, rng);

  DensityMatrix omega =
      DensityMatrix::trusted(kron(phi.density().mat(), rho.mat()), qa.concat(qb));
  BoundMargin exact = transitivity_bound(phi, rho, omega);
  CHECK(exact.lhs == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(exact.margin() >= -1e-12);

  // Omega = phi (x) sigma degrades only through the trace-distance term.
  DensityMatrix sig = rand_density(qb, rng);
  DensityMatrix omega2 =
      DensityMatrix::trusted(kron(phi.density().mat(), sig.mat()), qa.concat(qb));
  BoundMargin shifted = transitivity_bound(phi, rho, omega2);
  CHECK(shifted.lhs == doctest::Approx(fidelity(rho, sig)).epsilon(1e-6));
  CHECK(shifted.rhs == doctest::Approx(1.0 - trace_distance(rho, sig)).epsilon(1e-9));
  CHECK(shifted.margin() >= -1e-9);

  for (int t = 0; t < 200; ++t) {
    BoundMargin m = transitivity_bound(rand_pure(qa, rng), rand_density(qb, rng),
                                       rand_density(qa.concat(qb), rng));
    CHECK(m.margin() >= -1e-9);
  }
}

TEST_CASE("gentle measurement") {
  Rng rng(19);
  const SystemShape q = SystemShape::single("A", 3);
  DensityMatrix rho = rand_density(q, rng);

  GentleResult ident = gentle_measurement(rho, CMatrix::Identity(3, 3));
  CHECK(ident.eps == doctest::Approx(0.0));
  CHECK(ident.disturbance == doctest::Approx(0.0).epsilon(1e-10));

  // Projector onto the support of a pure state leaves it untouched.
  PureState phi = rand_pure(q, rng);
  GentleResult proj = gentle_measurement(phi.density(), phi.density().mat());
  CHECK(proj.disturbance == doctest::Approx(0.0).epsilon(1e-9));

  for (int t = 0; t < 200; ++t) {
    CMatrix m = rand_hermitian(3, rng);
    HermEig eig = herm_eig(m);
    const double spread = eig.eigenvalues.maxCoeff() - eig.eigenvalues.minCoeff();
    CMatrix lam = CMatrix::Identity(3, 3);
    if (spread > 1e-12)
      lam -= (rand_uniform(rng, 0.0, 1.0) / spread) *
             (m - eig.eigenvalues.minCoeff() * CMatrix::Identity(3, 3));
    GentleResult g = gentle_measurement(rand_density(q, rng), lam);
    CHECK(g.margin.margin() >= -1e-9);
  }

  CMatrix too_big = 2.0 * CMatrix::Identity(3, 3);
  CHECK_THROWS_AS(gentle_measurement(rho, too_big), std::invalid_argument);
}

TEST_CASE("continuity of coherent information") {
  Rng rng(23);
  const SystemShape ab({{"A", 2}, {"B", 2}});
  DensityMatrix rho = rand_density(ab, rng);
  ContinuityResult same = continuity_bound(rho, rho, {"A"}, {"B"});
  CHECK(same.eps == doctest::Approx(0.0));
  CHECK(same.delta_ic == doctest::Approx(0.0).epsilon(1e-10));

  // Maximally entangled state against a slightly depolarized version.
  DensityMatrix phi = max_entangled(2).density();
  const double delta = 0.01;
  CMatrix mix = (1 - delta) * phi.mat() + delta * kron(CMatrix::Identity(2, 2) / 2,
                                                       CMatrix::Identity(2, 2) / 2);
  DensityMatrix nearby = DensityMatrix::trusted(mix, phi.shape());
  ContinuityResult near = continuity_bound(phi, nearby, {"A"}, {"B"});
  CHECK(near.margin.margin() >= 0.0);
  CHECK(near.bound < 1.0);  // small perturbation, visibly slack bound

  for (int t = 0; t < 200; ++t) {
    DensityMatrix r1 = rand_density(ab, rng);
    DensityMatrix r2 = rand_density(ab, rng);
    const double d = rand_uniform(rng, 0.0, 0.3);
    DensityMatrix r3 = DensityMatrix::trusted((1 - d) * r1.mat() + d * r2.mat(), ab);
    CHECK(continuity_bound(r1, r3, {"A"}, {"B"}).margin.margin() >= -1e-9);
  }
}

TEST_CASE("distance measures are monotone under channels") {
  Rng rng(29);
  const SystemShape q = SystemShape::single("A", 2);
  for (int t = 0; t < 30; ++t) {
    DensityMatrix rho = rand_density(q, rng);
    DensityMatrix sig = rand_density(q, rng);
    Channel n = rand_channel(q, SystemShape::single("B", 2), 2, rng);
    DensityMatrix nr = apply(n, rho);
    DensityMatrix ns = apply(n, sig);
    CHECK(fidelity(nr, ns) >= fidelity(rho, sig) - 1e-9);
    CHECK(trace_distance(nr, ns) <= trace_distance(rho, sig) + 1e-9);
  }
}

TEST_CASE("purification overlaps never exceed the fidelity") {
  Rng rng(31);
  const SystemShape q = SystemShape::single("A", 2);
  for (int t = 0; t < 20; ++t) {
    DensityMatrix rho = rand_density(q, rng);
    DensityMatrix sig = rand_density(q, rng);
    PureState pr = purify_full(rho, "R");
    PureState ps = purify_full(sig, "R");
    const double f = fidelity(rho, sig);

    CMatrix k = rand_hermitian(2, rng);
    for (int step = 0; step <= 20; ++step) {
      const double tt = -2.0 + 0.2 * step;
      // exp(i t K) on the reference factor.
      HermEig eig = herm_eig(k);
      CMatrix u = CMatrix::Zero(2, 2);
      for (int i = 0; i < 2; ++i)
        u += std::exp(complexd(0, tt * eig.eigenvalues(i))) * eig.eigenvectors.col(i) *
             eig.eigenvectors.col(i).adjoint();
      CVector rotated = kron(u, CMatrix::Identity(2, 2)) * pr.vec();
      const double overlap = std::norm((rotated.adjoint() * ps.vec())(0));
      CHECK(overlap <= f + 1e-9);
    }
  }
}
