#include <doctest.h>

#include <cmath>

#include "qmac/info.hpp"
#include "qmac/models.hpp"
#include "qmac/rand.hpp"

using namespace qmac;

namespace {

PureState plus_state(const std::string& label = "A") {
  CVector v(2);
  v << 1, 1;
  return PureState::normalized(v, SystemShape::single(label, 2));
}

}  // namespace

TEST_CASE("entropy of pure, mixed and cq states") {
  CHECK(entropy(PureState::basis(0, SystemShape::single("A", 2)).density()) ==
        doctest::Approx(0.0));
  CHECK(entropy(max_mixed(4)) == doctest::Approx(2.0).epsilon(1e-12));

  // cq state with one pure and one maximally mixed branch: eigenvalues are
  // {1/2, 1/4, 1/4}, so H = 1.5 bits.
  Ensemble e{{0.5, 0.5},
             {PureState::basis(0, SystemShape::single("A", 2)).density(), max_mixed(2)}};
  DensityMatrix cq = cq_assemble(e);
  HermEig eig = herm_eig(cq.mat());
  double by_eig = 0;
  for (int i = 0; i < 4; ++i)
    if (eig.eigenvalues(i) > 0) by_eig -= eig.eigenvalues(i) * std::log2(eig.eigenvalues(i));
  CHECK(entropy(cq) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(entropy(cq) == doctest::Approx(by_eig).epsilon(1e-12));
}

TEST_CASE("conditional entropy can go negative") {
  Rng rng(3);
  DensityMatrix rho = rand_density(SystemShape::single("A", 2), rng);
  DensityMatrix sig = rand_density(SystemShape::single("B", 2), rng);
  DensityMatrix prod =
      DensityMatrix::trusted(kron(rho.mat(), sig.mat()), rho.shape().concat(sig.shape()));
  CHECK(cond_entropy(prod, {"A"}, {"B"}) == doctest::Approx(entropy(rho)).epsilon(1e-10));

  CHECK(cond_entropy(max_entangled(2).density(), {"A"}, {"B"}) ==
        doctest::Approx(-1.0).epsilon(1e-12));

  // On cq states the conditional entropy is the branch average.
  Ensemble e{{0.3, 0.7}, {rand_density(SystemShape::single("A", 2), rng),
                          rand_density(SystemShape::single("A", 2), rng)}};
  DensityMatrix cq = cq_assemble(e);
  const double avg = 0.3 * entropy(e.states[0]) + 0.7 * entropy(e.states[1]);
  CHECK(cond_entropy(cq, {"A"}, {"X"}) == doctest::Approx(avg).epsilon(1e-9));
}

TEST_CASE("mutual information") {
  Rng rng(5);
  DensityMatrix rho = rand_density(SystemShape::single("A", 2), rng);
  DensityMatrix sig = rand_density(SystemShape::single("B", 2), rng);
  DensityMatrix prod =
      DensityMatrix::trusted(kron(rho.mat(), sig.mat()), rho.shape().concat(sig.shape()));
  CHECK(mutual_info(prod, {"A"}, {"B"}) == doctest::Approx(0.0).epsilon(1e-10));

  CHECK(mutual_info(max_entangled(2).density(), {"A"}, {"B"}) ==
        doctest::Approx(2.0).epsilon(1e-12));

  // Perfectly correlated uniform classical pair.
  CMatrix corr = CMatrix::Zero(4, 4);
  corr(0, 0) = 0.5;
  corr(3, 3) = 0.5;
  DensityMatrix cl(corr, SystemShape({{"X", 2}, {"Y", 2}}));
  CHECK(mutual_info(cl, {"X"}, {"Y"}) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(mutual_info(cl, {"X"}, {"X"}), std::invalid_argument);

  // Strong subadditivity on a few random tripartite states.
  for (int t = 0; t < 20; ++t) {
    DensityMatrix abc =
        rand_pure(SystemShape({{"A", 2}, {"B", 2}, {"C", 2}, {"D", 2}}), rng)
            .density()
            .reduced({"A", "B", "C"});
    CHECK(cond_mutual_info(abc, {"A"}, {"B"}, {"C"}) >= -1e-9);
  }
}

TEST_CASE("coherent information of states") {
  CHECK(coherent_info_state(max_entangled(4).density(), {"A"}, {"B"}) ==
        doctest::Approx(2.0).epsilon(1e-12));

  PureState prod = PureState::basis(0, SystemShape::single("A", 2)).tensor(plus_state("B"));
  CHECK(coherent_info_state(prod.density(), {"A"}, {"B"}) == doctest::Approx(0.0));

  Rng rng(7);
  DensityMatrix rho = rand_density(SystemShape({{"A", 2}, {"B", 2}}), rng);
  CHECK(coherent_info_state(rho, {"A"}, {"B"}) ==
        doctest::Approx(-cond_entropy(rho, {"A"}, {"B"})).epsilon(1e-12));
  CHECK(coherent_info_state(rho, {"A"}, {"B"}) <=
        std::min(entropy_of(rho, {"A"}), entropy_of(rho, {"B"})) + 1e-9);
}

TEST_CASE("coherent information of channels") {
  Rng rng(11);
  Channel id = Channel::identity(SystemShape::single("A", 2));
  CHECK(coherent_info_channel(max_mixed(2), id) == doctest::Approx(1.0).epsilon(1e-12));

  // Pure inputs carry no coherent information through any channel.
  Channel n = rand_channel(SystemShape::single("A", 2), SystemShape::single("B", 3), 2, rng);
  PureState phi = rand_pure(SystemShape::single("A", 2), rng);
  CHECK(coherent_info_channel(phi.density(), n) == doctest::Approx(0.0).epsilon(1e-10));

  // Collective phase flip at the maximally mixed input: 2 - H(p).
  NamedChannel pf = phase_flip_mac(0.1);
  CHECK(coherent_info_channel(max_mixed(4), pf.channel) ==
        doctest::Approx(2.0 - binary_entropy(0.1)).epsilon(1e-12));

  // Equivalence with the reference-system form on N(Psi).
  for (int t = 0; t < 10; ++t) {
    DensityMatrix rho = rand_density(SystemShape::single("A", 2), rng);
    Channel ch = rand_channel(SystemShape::single("A", 2), SystemShape::single("B", 2), 2, rng);
    PureState psi = purify(rho);
    DensityMatrix out = apply_pure(ch, psi, {"A"});
    CHECK(coherent_info_channel(rho, ch) ==
          doctest::Approx(coherent_info_state(out, {"R"}, {"B"})).epsilon(1e-9));
    CHECK(coherent_info_channel(rho, ch) <= 1.0 + 1e-9);  // log|A'|
  }
}

TEST_CASE("coherent information over instruments") {
  Rng rng(13);
  const SystemShape in = SystemShape::single("A", 2);
  const SystemShape out = SystemShape::single("B", 2);
  DensityMatrix rho = rand_density(in, rng);

  Channel n = rand_channel(in, out, 2, rng);
  Instrument single({{"0", n}});
  CHECK(coherent_info_instrument(rho, single) ==
        doctest::Approx(coherent_info_channel(rho, n)).epsilon(1e-9));

  auto scale = [](const Channel& c, double w) {
    std::vector<CMatrix> ks = c.kraus();
    for (auto& k : ks) k *= std::sqrt(w);
    return Channel::trace_reducing(std::move(ks), c.in_shape(), c.out_shape());
  };

  // Two equal components average to the single-channel value.
  Instrument halves({{"0", scale(n, 0.5)}, {"1", scale(n, 0.5)}});
  CHECK(coherent_info_instrument(rho, halves) ==
        doctest::Approx(coherent_info_channel(rho, n)).epsilon(1e-9));

  // Random two-component instrument: direct and averaged paths agree.
  for (int t = 0; t < 10; ++t) {
    const double p = rand_uniform(rng, 0.1, 0.9);
    Channel n0 = rand_channel(in, out, 2, rng);
    Channel n1 = rand_channel(in, out, 2, rng);
    Instrument ins({{"0", scale(n0, p)}, {"1", scale(n1, 1 - p)}});
    DensityMatrix tau = rand_density(in, rng);
    CHECK(coherent_info_instrument(tau, ins) ==
          doctest::Approx(coherent_info_instrument_avg(tau, ins)).epsilon(1e-9));
  }
}

TEST_CASE("holevo quantity") {
  Rng rng(17);
  DensityMatrix rho = rand_density(SystemShape::single("B", 2), rng);
  CHECK(holevo(Ensemble{{0.5, 0.5}, {rho, rho}}) == doctest::Approx(0.0).epsilon(1e-10));

  const SystemShape q = SystemShape::single("B", 2);
  Ensemble basis{{0.5, 0.5},
                 {PureState::basis(0, q).density(), PureState::basis(1, q).density()}};
  CHECK(holevo(basis) == doctest::Approx(1.0).epsilon(1e-12));

  // {|0>, |+>} at equal weight: eigenvalues cos^2(pi/8), sin^2(pi/8).
  Ensemble mixed{{0.5, 0.5}, {PureState::basis(0, q).density(), plus_state("B").density()}};
  const double c2 = std::cos(M_PI / 8) * std::cos(M_PI / 8);
  const double expect = -(c2 * std::log2(c2) + (1 - c2) * std::log2(1 - c2));
  CHECK(holevo(mixed) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(holevo(mixed) == doctest::Approx(0.60088).epsilon(1e-5));
}

TEST_CASE("binary entropy and the Fano bound") {
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(binary_entropy(0.0) == doctest::Approx(0.0));
  CHECK(binary_entropy(1.0) == doctest::Approx(0.0));
  CHECK(binary_entropy(0.25) == doctest::Approx(0.8112781244591328).epsilon(1e-12));
  CHECK_THROWS_AS(binary_entropy(1.5), std::invalid_argument);

  CHECK(fano_bound(0.0, 16) == doctest::Approx(0.0));
  CHECK(fano_bound(0.1, 16) ==
        doctest::Approx(binary_entropy(0.1) + 0.1 * 4.0).epsilon(1e-12));
  CHECK_THROWS_AS(fano_bound(0.1, 0), std::invalid_argument);
}

TEST_CASE("entropy inequalities on random states") {
  Rng rng(19);
  for (int t = 0; t < 50; ++t) {
    DensityMatrix rho = rand_density(SystemShape({{"A", 2}, {"B", 2}}), rng);
    const double ha = entropy_of(rho, {"A"});
    const double hb = entropy_of(rho, {"B"});
    const double hab = entropy(rho);
    CHECK(hab <= ha + hb + 1e-9);             // subadditivity
    CHECK(std::abs(ha - hb) <= hab + 1e-9);   // Lieb
  }

  // Concavity of entropy.
  for (int t = 0; t < 20; ++t) {
    DensityMatrix a = rand_density(SystemShape::single("A", 3), rng);
    DensityMatrix b = rand_density(SystemShape::single("A", 3), rng);
    Ensemble e{{0.4, 0.6}, {a, b}};
    CHECK(entropy(e.average()) >= 0.4 * entropy(a) + 0.6 * entropy(b) - 1e-9);
  }

  // Isometric invariance.
  for (int t = 0; t < 10; ++t) {
    DensityMatrix rho = rand_density(SystemShape::single("A", 3), rng);
    CMatrix u = rand_unitary(3, rng);
    DensityMatrix rotated =
        DensityMatrix::trusted(u * rho.mat() * u.adjoint(), rho.shape());
    CHECK(entropy(rotated) == doctest::Approx(entropy(rho)).epsilon(1e-10));
  }
}
