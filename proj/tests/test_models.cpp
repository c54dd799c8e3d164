#include <doctest.h>

#include <cmath>

#include "qmac/io.hpp"
#include "qmac/models.hpp"
#include "qmac/rand.hpp"

using namespace qmac;

namespace {

// Independent direct-action map for the erasure channel: measure Alice's
// block, prepare the flag or embed Bob's block shifted by one.
CMatrix erasure_oracle(const CMatrix& omega, int d) {
  CMatrix out = CMatrix::Zero(d + 1, d + 1);
  complexd erased = 0;
  for (int j = 0; j < d; ++j) erased += omega(j, j);  // tr of the (0,0) Alice block
  out(0, 0) = erased;
  for (int b = 0; b < d; ++b)
    for (int bp = 0; bp < d; ++bp) out(b + 1, bp + 1) = omega(d + b, d + bp);
  return out;
}

}  // namespace

TEST_CASE("erasure MAC construction and action") {
  NamedChannel er = erasure_mac(2);
  CHECK(er.channel.kraus().size() == 3);  // d + 1 operation elements
  CHECK(er.channel.cptp_margin() < 1e-12);
  CHECK(er.channel.arity() == Arity::mac2);

  Rng rng(3);
  DensityMatrix bob = rand_density(SystemShape::single("B'", 2), rng);

  // Alice |1>: transmit into span{|1>, |2>}.
  DensityMatrix one = PureState::basis(1, SystemShape::single("A'", 2)).density();
  CMatrix in1 = kron(one.mat(), bob.mat());
  DensityMatrix out1 = apply(er.channel, DensityMatrix::trusted(in1, er.channel.in_shape()));
  CHECK((out1.mat().block(1, 1, 2, 2) - bob.mat()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(out1.mat()(0, 0)) < 1e-12);

  // Alice |0>: pure erasure flag.
  DensityMatrix zero = PureState::basis(0, SystemShape::single("A'", 2)).density();
  DensityMatrix out0 = apply(
      er.channel, DensityMatrix::trusted(kron(zero.mat(), bob.mat()), er.channel.in_shape()));
  CHECK(out0.mat()(0, 0).real() == doctest::Approx(1.0).epsilon(1e-12));

  // Mixed gate: tau00 |0><0| + tau11 (embedded rho).
  DensityMatrix mix = apply(
      er.channel,
      DensityMatrix::trusted(kron(max_mixed(2).mat(), bob.mat()), er.channel.in_shape()));
  CHECK(mix.mat()(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK((mix.mat().block(1, 1, 2, 2) - 0.5 * bob.mat()).cwiseAbs().maxCoeff() < 1e-12);

  // Full action table against the independent oracle.
  for (int d : {2, 3}) {
    NamedChannel nc = erasure_mac(d);
    const int din = 2 * d;
    for (int i = 0; i < din; ++i)
      for (int j = 0; j < din; ++j) {
        CMatrix unit = CMatrix::Zero(din, din);
        unit(i, j) = 1;
        CMatrix got = CMatrix::Zero(d + 1, d + 1);
        for (const auto& k : nc.channel.kraus()) got += k * unit * k.adjoint();
        CHECK((got - erasure_oracle(unit, d)).cwiseAbs().maxCoeff() < 1e-12);
      }
  }

  CHECK_THROWS_AS(erasure_mac(1), std::invalid_argument);
}

TEST_CASE("erasure closed-form curve") {
  std::vector<double> grid;
  for (int i = 0; i <= 100; ++i) grid.push_back(0.5 * i / 100);
  Region2D curve = erasure_cq_curve(2, grid);
  CHECK(region_contains(curve, {0.0, 1.0}, 1e-9));
  CHECK(region_contains(curve, {1.0, 0.0}, 1e-9));
  CHECK(region_contains(curve, {binary_entropy(0.25), 0.5}, 1e-9));
  CHECK(!region_contains(curve, {0.9, 0.9}));
  CHECK_THROWS_AS(erasure_cq_curve(2, {0.7}), std::invalid_argument);
}

TEST_CASE("phase flip MAC") {
  NamedChannel id = phase_flip_mac(0.0);
  Rng rng(5);
  DensityMatrix rho = rand_density(id.channel.in_shape(), rng);
  CHECK((apply(id.channel, rho).mat() - rho.mat()).cwiseAbs().maxCoeff() < 1e-12);

  NamedChannel pf = phase_flip_mac(0.1);
  CHECK(pf.channel.kraus_commutator_norm() < 1e-12);
  CHECK(verify_degrading(pf.channel, *pf.degrading_candidate) < 1e-8);

  // Output of Bell-pair inputs is the expected mixture of collective Bells.
  PureState bell_a = max_entangled(2, "A", "A'");
  PureState bell_b = max_entangled(2, "B", "B'");
  DensityMatrix omega = apply_pure(pf.channel, bell_a.tensor(bell_b), {"A'", "B'"});

  CVector plus(4), minus(4);
  plus << 1, 0, 0, 1;
  minus << 1, 0, 0, -1;
  plus /= std::sqrt(2.0);
  minus /= std::sqrt(2.0);
  // psi_+- on (A, Ahat) and (B, Bhat), reordered to (A, B, Ahat, Bhat).
  SystemShape split({{"A", 2}, {"Ah", 2}, {"B", 2}, {"Bh", 2}});
  CMatrix pp = kron(plus * plus.adjoint(), plus * plus.adjoint());
  CMatrix mm = kron(minus * minus.adjoint(), minus * minus.adjoint());
  auto [expected, eshape] =
      permute_systems(0.9 * pp + 0.1 * mm, split, {"A", "B", "Ah", "Bh"});
  CHECK((omega.mat() - expected).cwiseAbs().maxCoeff() < 1e-12);

  // Dephasing leaves the maximally mixed input with full output entropy.
  CHECK(entropy(apply(pf.channel, max_mixed(4).relabelled(pf.channel.in_shape()))) ==
        doctest::Approx(2.0).epsilon(1e-12));

  CHECK_THROWS_AS(phase_flip_mac(1.5), std::invalid_argument);
}

TEST_CASE("phase flip pentagon closed form") {
  Pentagon p0 = phase_flip_pentagon(0.0);
  CHECK(p0.sum_cap == doctest::Approx(2.0));
  Pentagon ph = phase_flip_pentagon(0.5);
  CHECK(ph.sum_cap == doctest::Approx(1.0).epsilon(1e-12));
  Pentagon p1 = phase_flip_pentagon(0.1);
  CHECK(p1.a_cap == doctest::Approx(1.0));
  CHECK(p1.b_cap == doctest::Approx(1.0));
  CHECK(p1.sum_cap == doctest::Approx(1.5310044064107188).epsilon(1e-12));
}

TEST_CASE("generalized dephasing constructors") {
  Rng rng(7);
  const SystemShape e2 = SystemShape::single("E", 2);

  // Orthogonal environment vectors give the completely dephasing channel.
  NamedChannel delta = dephasing_channel({PureState::basis(0, e2), PureState::basis(1, e2)});
  CVector plus(2);
  plus << 1, 1;
  DensityMatrix p = PureState::normalized(plus, SystemShape::single("A", 2)).density();
  CHECK((apply(delta.channel, p).mat() - CMatrix::Identity(2, 2) / 2).cwiseAbs().maxCoeff() <
        1e-12);

  // Identical vectors leak nothing: the channel acts as the identity.
  PureState phi = rand_pure(e2, rng);
  NamedChannel ident = dephasing_channel({phi, phi});
  DensityMatrix rho = rand_density(SystemShape::single("A", 2), rng);
  CHECK((apply(ident.channel, rho).mat() - rho.mat()).cwiseAbs().maxCoeff() < 1e-12);

  // Basis states are fixed points; the complement is the degrading map.
  NamedChannel nc = dephasing_channel({rand_pure(e2, rng), rand_pure(e2, rng)});
  for (int x = 0; x < 2; ++x) {
    DensityMatrix basis = PureState::basis(x, SystemShape::single("A", 2)).density();
    CHECK((apply(nc.channel, basis).mat() - basis.mat()).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK(verify_degrading(nc.channel, *nc.degrading_candidate) < 1e-8);
  // N^c = N^c o N in action.
  Channel ncomp = complement(nc.channel);
  CHECK(channel_distance(ncomp, compose(nc.channel, ncomp.relabelled(
                                                        nc.channel.out_shape(),
                                                        ncomp.out_shape()))) < 1e-8);

  CHECK_THROWS_AS(dephasing_channel({phi}), std::invalid_argument);
}

TEST_CASE("dephasing capacity closed forms") {
  const SystemShape e2 = SystemShape::single("E", 2);
  const OptimBudget budget{12, 600};

  NamedChannel delta = dephasing_channel({PureState::basis(0, e2), PureState::basis(1, e2)});
  CHECK(dephasing_capacity(delta, budget, 3) == doctest::Approx(0.0).epsilon(1e-9));

  Rng rng(11);
  PureState phi = rand_pure(e2, rng);
  NamedChannel ident = dephasing_channel({phi, phi});
  CHECK(dephasing_capacity(ident, budget, 3) == doctest::Approx(1.0).epsilon(1e-9));

  // Overlap 1 - 2p reproduces the single-user phase-flip capacity 1 - H(p).
  const double p = 0.15;
  CVector v0(2), v1(2);
  v0 << std::sqrt(1 - p), std::sqrt(p);
  v1 << std::sqrt(1 - p), -std::sqrt(p);
  NamedChannel flip = dephasing_channel({PureState(v0, e2), PureState(v1, e2)});
  CHECK(dephasing_capacity(flip, budget, 3) ==
        doctest::Approx(1.0 - binary_entropy(p)).epsilon(1e-6));

  // The collective phase flip carries its dephasing vectors: 2 - H(p).
  NamedChannel pf = phase_flip_mac(0.1);
  CHECK(dephasing_capacity(pf, OptimBudget{16, 900}, 5) ==
        doctest::Approx(2.0 - binary_entropy(0.1)).epsilon(1e-6));

  NamedChannel er = erasure_mac(2);
  CHECK_THROWS_AS(dephasing_capacity(er, budget, 3), std::invalid_argument);
}

TEST_CASE("degradable sum-rate additivity check") {
  SumRateReport pf = degradable_sum_rate_check(phase_flip_mac(0.1), 10, 17);
  CHECK(pf.ok);
  CHECK(pf.cap == doctest::Approx(2.0 - binary_entropy(0.1)).epsilon(1e-12));
  CHECK(pf.worst_excess <= 1e-6);
  CHECK(pf.degrading_margin < 1e-8);

  // Noiseless limit: trivial cap of 2 qubits per use.
  SumRateReport id = degradable_sum_rate_check(phase_flip_mac(0.0), 5, 19);
  CHECK(id.cap == doctest::Approx(2.0));
  CHECK(id.ok);

  // Random dephasing channel against its optimized capacity.
  Rng rng(23);
  NamedChannel deph = dephasing_channel(
      {rand_pure(SystemShape::single("E", 2), rng), rand_pure(SystemShape::single("E", 2), rng)});
  SumRateReport dr = degradable_sum_rate_check(deph, 10, 29);
  CHECK(dr.ok);

  NamedChannel no_candidate = erasure_mac(2);
  CHECK_THROWS_AS(degradable_sum_rate_check(no_candidate, 5, 3), std::invalid_argument);
}

TEST_CASE("channel ids resolve") {
  NamedChannel er = resolve_channel("erasure:d=2");
  CHECK(er.family == ChannelFamily::erasure);
  CHECK(er.channel.out_dim() == 3);

  NamedChannel pf = resolve_channel("phaseflip:p=0.25");
  CHECK(pf.family == ChannelFamily::phaseflip);
  CHECK(pf.flip_p == doctest::Approx(0.25));

  CHECK_THROWS_AS(resolve_channel("erasure:d=oops"), InputError);
  CHECK_THROWS_AS(resolve_channel("no-such-file.json"), InputError);
}
