#include "qmac/channels.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qmac {

namespace {

CMatrix kraus_gram(const std::vector<CMatrix>& kraus) {
  CMatrix g = CMatrix::Zero(kraus.front().cols(), kraus.front().cols());
  for (const auto& k : kraus) g += k.adjoint() * k;
  return g;
}

std::string fresh_label(const std::string& wanted, const std::vector<std::string>& taken) {
  std::string l = wanted;
  while (std::find(taken.begin(), taken.end(), l) != taken.end()) l += "'";
  return l;
}

}  // namespace

void Isometry::validate() const {
  if (mat.rows() != env_shape.dim() * out_shape.dim() || mat.cols() != in_shape.dim())
    throw std::invalid_argument("Isometry: matrix/shape dimension mismatch");
  CMatrix g = mat.adjoint() * mat;
  const double dev = (g - CMatrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
  if (dev > kHermTol)
    throw std::invalid_argument("Isometry: V'V deviates from identity by " + std::to_string(dev));
}

void Channel::init(bool reducing) {
  if (kraus_.empty()) throw std::invalid_argument("Channel: empty Kraus list");
  for (const auto& k : kraus_) {
    if (k.rows() != out_.dim() || k.cols() != in_.dim())
      throw std::invalid_argument("Channel: Kraus operator dimension mismatch");
    if (!all_finite(k)) throw std::invalid_argument("Channel: non-finite Kraus entries");
  }
  trace_reducing_ = reducing;
  const CMatrix g = kraus_gram(kraus_);
  if (!reducing) {
    const double margin = op_norm(g - CMatrix::Identity(g.rows(), g.cols()));
    if (margin > kHermTol)
      throw std::invalid_argument("Channel: not trace preserving, margin " + std::to_string(margin));
  } else {
    HermEig eig = herm_eig(g);
    if (eig.eigenvalues.maxCoeff() > 1.0 + kHermTol || eig.eigenvalues.minCoeff() < kPsdClip)
      throw std::invalid_argument("Channel: trace-reducing map with sum K'K not within [0, 1]");
  }

  // Cache the stacked-block isometric extension.
  const int k = static_cast<int>(kraus_.size());
  Isometry iso;
  iso.in_shape = in_;
  iso.out_shape = out_;
  iso.env_shape = SystemShape::single(fresh_label("E", out_.labels()), k);
  iso.mat = CMatrix(k * out_.dim(), in_.dim());
  for (int i = 0; i < k; ++i) iso.mat.block(i * out_.dim(), 0, out_.dim(), in_.dim()) = kraus_[i];
  iso_ = std::move(iso);
}

Channel::Channel(std::vector<CMatrix> kraus, SystemShape in_shape, SystemShape out_shape)
    : kraus_(std::move(kraus)), in_(std::move(in_shape)), out_(std::move(out_shape)) {
  init(false);
}

Channel Channel::trace_reducing(std::vector<CMatrix> kraus, SystemShape in_shape,
                                SystemShape out_shape) {
  Channel ch;
  ch.kraus_ = std::move(kraus);
  ch.in_ = std::move(in_shape);
  ch.out_ = std::move(out_shape);
  ch.init(true);
  return ch;
}

Channel Channel::identity(const SystemShape& shape) {
  return Channel({CMatrix::Identity(shape.dim(), shape.dim())}, shape, shape);
}

Channel Channel::mac2(std::vector<CMatrix> kraus, SystemShape in_shape, SystemShape out_shape,
                      std::vector<std::string> alice_labels, std::vector<std::string> bob_labels) {
  Channel ch(std::move(kraus), std::move(in_shape), std::move(out_shape));
  return ch.as_mac2(std::move(alice_labels), std::move(bob_labels));
}

Channel Channel::as_mac2(std::vector<std::string> alice_labels,
                         std::vector<std::string> bob_labels) const {
  Channel ch = *this;
  std::set<std::string> seen;
  for (const auto& l : alice_labels) {
    (void)in_.index_of(l);
    seen.insert(l);
  }
  for (const auto& l : bob_labels) {
    (void)in_.index_of(l);
    if (!seen.insert(l).second)
      throw std::invalid_argument("mac2: label owned by both senders: " + l);
  }
  if (static_cast<int>(seen.size()) != in_.num_factors())
    throw std::invalid_argument("mac2: sender labels must partition the input factors");
  ch.arity_ = Arity::mac2;
  ch.alice_labels_ = std::move(alice_labels);
  ch.bob_labels_ = std::move(bob_labels);
  return ch;
}

double Channel::cptp_margin() const {
  const CMatrix g = kraus_gram(kraus_);
  return op_norm(g - CMatrix::Identity(g.rows(), g.cols()));
}

double Channel::kraus_commutator_norm() const {
  if (in_.dim() != out_.dim()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (size_t i = 0; i < kraus_.size(); ++i)
    for (size_t j = i + 1; j < kraus_.size(); ++j)
      worst = std::max(worst, op_norm(kraus_[i] * kraus_[j] - kraus_[j] * kraus_[i]));
  return worst;
}

std::optional<double> Channel::proportional_weight() const {
  const CMatrix g = kraus_gram(kraus_);
  const double c = g.trace().real() / static_cast<double>(g.rows());
  if (op_norm(g - c * CMatrix::Identity(g.rows(), g.cols())) > kHermTol) return std::nullopt;
  return c;
}

Channel Channel::relabelled(const SystemShape& in_shape, const SystemShape& out_shape) const {
  if (in_shape.dim() != in_.dim() || out_shape.dim() != out_.dim())
    throw std::invalid_argument("Channel::relabelled: dimension mismatch");
  Channel ch;
  ch.kraus_ = kraus_;
  ch.in_ = in_shape;
  ch.out_ = out_shape;
  ch.init(trace_reducing_);
  return ch;
}

const Isometry& Channel::isometric_extension() const { return *iso_; }

Instrument::Instrument(std::vector<std::pair<std::string, Channel>> components,
                       std::string classical_label)
    : components_(std::move(components)), classical_label_(std::move(classical_label)) {
  if (components_.empty()) throw std::invalid_argument("Instrument: no components");
  std::vector<CMatrix> all;
  for (const auto& [label, ch] : components_) {
    if (ch.in_shape() != components_.front().second.in_shape() ||
        ch.out_shape() != components_.front().second.out_shape())
      throw std::invalid_argument("Instrument: components on different shapes");
    for (const auto& k : ch.kraus()) all.push_back(k);
  }
  const CMatrix g = kraus_gram(all);
  if (op_norm(g - CMatrix::Identity(g.rows(), g.cols())) > kHermTol)
    throw std::invalid_argument("Instrument: components do not sum to a trace-preserving map");
}

Channel Instrument::total() const {
  const int n = size();
  const SystemShape& out = components_.front().second.out_shape();
  std::vector<CMatrix> kraus;
  for (int x = 0; x < n; ++x) {
    CVector ex = CVector::Zero(n);
    ex(x) = 1.0;
    for (const auto& k : components_[x].second.kraus()) {
      CMatrix lifted = CMatrix::Zero(n * out.dim(), k.cols());
      lifted.block(x * out.dim(), 0, out.dim(), k.cols()) = k;
      kraus.push_back(std::move(lifted));
    }
  }
  SystemShape out_shape = SystemShape::single(classical_label_, n).concat(out);
  return Channel(std::move(kraus), components_.front().second.in_shape(), out_shape);
}

DensityMatrix Instrument::apply_cq(const DensityMatrix& rho) const {
  const int n = size();
  const SystemShape& out = components_.front().second.out_shape();
  const int d = out.dim();
  CMatrix block = CMatrix::Zero(n * d, n * d);
  for (int x = 0; x < n; ++x) {
    CMatrix acc = CMatrix::Zero(d, d);
    for (const auto& k : components_[x].second.kraus()) acc += k * rho.mat() * k.adjoint();
    block.block(x * d, x * d, d, d) = acc;
  }
  SystemShape shape = SystemShape::single(classical_label_, n).concat(out);
  return DensityMatrix::trusted(std::move(block), std::move(shape));
}

namespace {

// Shared bookkeeping for apply/apply_pure: reorder so kept labels (original
// order) come before the channel's input labels (channel factor order).
struct ApplyPlan {
  std::vector<std::string> order;
  SystemShape kept;
  SystemShape result_shape;
};

ApplyPlan plan_apply(const Channel& ch, const SystemShape& shape,
                     const std::vector<std::string>& on) {
  if (static_cast<int>(on.size()) != ch.in_shape().num_factors())
    throw std::invalid_argument("apply: `on` must name one label per channel input factor");
  for (size_t i = 0; i < on.size(); ++i)
    if (shape.dim_of(on[i]) != ch.in_shape().dim_at(static_cast<int>(i)))
      throw std::invalid_argument("apply: dimension mismatch on label " + on[i]);

  ApplyPlan plan;
  plan.kept = shape.erased(on);
  plan.order = plan.kept.labels();
  for (const auto& l : on) plan.order.push_back(l);
  plan.result_shape = plan.kept.concat(ch.out_shape());
  return plan;
}

}  // namespace

DensityMatrix apply(const Channel& ch, const DensityMatrix& rho,
                    const std::vector<std::string>& on) {
  ApplyPlan plan = plan_apply(ch, rho.shape(), on);
  auto [m, pshape] = permute_systems(rho.mat(), rho.shape(), plan.order);

  const int dk = plan.kept.dim();
  const int din = ch.in_dim();
  const int dout = ch.out_dim();
  CMatrix out = CMatrix::Zero(dk * dout, dk * dout);
  for (int a = 0; a < dk; ++a)
    for (int b = 0; b < dk; ++b) {
      const CMatrix blk = m.block(a * din, b * din, din, din);
      CMatrix acc = CMatrix::Zero(dout, dout);
      for (const auto& k : ch.kraus()) acc += k * blk * k.adjoint();
      out.block(a * dout, b * dout, dout, dout) = acc;
    }
  return DensityMatrix::trusted(std::move(out), plan.result_shape);
}

DensityMatrix apply(const Channel& ch, const DensityMatrix& rho) {
  return apply(ch, rho, ch.in_shape().labels());
}

DensityMatrix apply_pure(const Channel& ch, const PureState& psi,
                         const std::vector<std::string>& on) {
  ApplyPlan plan = plan_apply(ch, psi.shape(), on);
  auto [v, pshape] = permute_systems_vec(psi.vec(), psi.shape(), plan.order);

  const int dk = plan.kept.dim();
  const int din = ch.in_dim();
  const int dout = ch.out_dim();
  CMatrix out = CMatrix::Zero(dk * dout, dk * dout);
  CVector w(dk * dout);
  for (const auto& k : ch.kraus()) {
    for (int a = 0; a < dk; ++a) w.segment(a * dout, dout) = k * v.segment(a * din, din);
    out += w * w.adjoint();
  }
  return DensityMatrix::trusted(std::move(out), plan.result_shape);
}

Isometry kraus_to_isometry(const Channel& ch, const std::string& env_label) {
  if (ch.is_trace_reducing())
    throw std::invalid_argument("kraus_to_isometry: channel must be trace preserving");
  Isometry iso = ch.isometric_extension();
  iso.env_shape = SystemShape::single(fresh_label(env_label, ch.out_shape().labels()),
                                      iso.env_shape.dim());
  iso.validate();
  return iso;
}

Channel isometry_to_kraus(const Isometry& v) {
  v.validate();
  const int k = v.env_dim();
  const int dout = v.out_shape.dim();
  std::vector<CMatrix> kraus;
  kraus.reserve(k);
  for (int i = 0; i < k; ++i) kraus.push_back(v.mat.block(i * dout, 0, dout, v.in_shape.dim()));
  return Channel(std::move(kraus), v.in_shape, v.out_shape);
}

Channel complement(const Channel& ch, const std::string& env_label) {
  // Rows of the stacked extension regrouped by the B index: the blocks of the
  // map to B (x) E are the complement's Kraus operators.
  const Isometry& iso = ch.isometric_extension();
  const int k = static_cast<int>(ch.kraus().size());
  const int dout = ch.out_dim();
  const int din = ch.in_dim();
  SystemShape env = SystemShape::single(fresh_label(env_label, ch.in_shape().labels()), k);

  std::vector<CMatrix> kraus;
  kraus.reserve(dout);
  for (int b = 0; b < dout; ++b) {
    CMatrix kb(k, din);
    for (int e = 0; e < k; ++e) kb.row(e) = iso.mat.row(e * dout + b);
    kraus.push_back(std::move(kb));
  }
  if (ch.is_trace_reducing()) return Channel::trace_reducing(std::move(kraus), ch.in_shape(), env);
  return Channel(std::move(kraus), ch.in_shape(), env);
}

Instrument instrument_complement(const Instrument& ins) {
  // Pad component Kraus lists to a common count so every complement shares one
  // environment dimension; the classical copy lives in the block index.
  size_t m = 0;
  for (const auto& [label, ch] : ins.components()) m = std::max(m, ch.kraus().size());
  std::vector<std::pair<std::string, Channel>> comps;
  for (const auto& [label, ch] : ins.components()) {
    std::vector<CMatrix> padded = ch.kraus();
    while (padded.size() < m)
      padded.push_back(CMatrix::Zero(ch.out_dim(), ch.in_dim()));
    Channel lifted = Channel::trace_reducing(std::move(padded), ch.in_shape(), ch.out_shape());
    comps.emplace_back(label, complement(lifted));
  }
  return Instrument(std::move(comps), ins.classical_label() + "'");
}

Channel compose(const Channel& first, const Channel& then_) {
  if (then_.in_dim() != first.out_dim())
    throw std::invalid_argument("compose: interface dimension mismatch");
  std::vector<CMatrix> kraus;
  kraus.reserve(first.kraus().size() * then_.kraus().size());
  for (const auto& t : then_.kraus())
    for (const auto& f : first.kraus()) kraus.push_back(t * f);
  const bool reducing = first.is_trace_reducing() || then_.is_trace_reducing();
  Channel out = reducing
                    ? Channel::trace_reducing(std::move(kraus), first.in_shape(), then_.out_shape())
                    : Channel(std::move(kraus), first.in_shape(), then_.out_shape());
  if (first.arity() == Arity::mac2)
    return out.as_mac2(first.alice_labels(), first.bob_labels());
  return out;
}

Channel tensor(const Channel& a, const Channel& b) {
  std::vector<CMatrix> kraus;
  kraus.reserve(a.kraus().size() * b.kraus().size());
  for (const auto& ka : a.kraus())
    for (const auto& kb : b.kraus()) kraus.push_back(kron(ka, kb));
  SystemShape in = a.in_shape().concat(b.in_shape());
  SystemShape out = a.out_shape().concat(b.out_shape());
  const bool reducing = a.is_trace_reducing() || b.is_trace_reducing();
  if (reducing) return Channel::trace_reducing(std::move(kraus), in, out);
  return Channel(std::move(kraus), in, out);
}

CMatrix transfer_matrix(const Channel& ch) {
  const int din = ch.in_dim();
  const int dout = ch.out_dim();
  CMatrix t = CMatrix::Zero(dout * dout, din * din);
  for (const auto& k : ch.kraus()) t += kron(k, k.conjugate());
  return t;
}

double channel_distance(const Channel& a, const Channel& b) {
  if (a.in_dim() != b.in_dim() || a.out_dim() != b.out_dim())
    throw std::invalid_argument("channel_distance: dimension mismatch");
  return trace_norm(transfer_matrix(a) - transfer_matrix(b));
}

double verify_degrading(const Channel& n, const Channel& d) {
  if (d.in_dim() != n.out_dim())
    throw std::invalid_argument("verify_degrading: degrading map input must match channel output");
  Channel nc = complement(n);
  if (d.out_dim() != nc.out_dim())
    throw std::invalid_argument("verify_degrading: degrading map output must match environment");
  return channel_distance(nc, compose(n, d));
}

std::vector<Channel> cq_channel_decompose(const Channel& ch, const std::string& x_label) {
  const SystemShape& in = ch.in_shape();
  const int nx = in.dim_of(x_label);
  SystemShape rest = in.erased({x_label});
  const int db = rest.dim();

  // Reorder the input so x varies slowest, transforming Kraus as K S'.
  std::vector<std::string> order{x_label};
  for (const auto& l : rest.labels()) order.push_back(l);
  CMatrix s = CMatrix::Zero(in.dim(), in.dim());
  for (int j = 0; j < in.dim(); ++j) {
    CVector e = CVector::Zero(in.dim());
    e(j) = 1.0;
    auto [pe, ps] = permute_systems_vec(e, in, order);
    s.col(j) = pe;
  }

  std::vector<Channel> out;
  out.reserve(nx);
  for (int x = 0; x < nx; ++x) {
    std::vector<CMatrix> kraus;
    kraus.reserve(ch.kraus().size());
    for (const auto& k : ch.kraus()) {
      CMatrix kp = k * s.adjoint();
      kraus.push_back(kp.block(0, x * db, ch.out_dim(), db));
    }
    out.push_back(Channel(std::move(kraus), rest.num_factors() ? rest : SystemShape::single("I", 1),
                          ch.out_shape()));
  }
  return out;
}

}  // namespace qmac
