#include "qmac/regions.hpp"

#include <algorithm>
#include <cmath>

#include "qmac/rand.hpp"

namespace qmac {

namespace {

RatePoint clamp_point(const RatePoint& p) {
  return {std::max(p.x, 0.0), std::max(p.y, 0.0)};
}

double cross(const RatePoint& o, const RatePoint& a, const RatePoint& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double point_dist(const RatePoint& a, const RatePoint& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

double segment_dist(const RatePoint& p, const RatePoint& a, const RatePoint& b) {
  const double vx = b.x - a.x, vy = b.y - a.y;
  const double len2 = vx * vx + vy * vy;
  if (len2 <= 0) return point_dist(p, a);
  double t = ((p.x - a.x) * vx + (p.y - a.y) * vy) / len2;
  t = std::min(std::max(t, 0.0), 1.0);
  return point_dist(p, {a.x + t * vx, a.y + t * vy});
}

// Andrew's monotone chain; counterclockwise, no duplicate endpoint.
std::vector<RatePoint> convex_hull(std::vector<RatePoint> pts) {
  std::sort(pts.begin(), pts.end(), [](const RatePoint& a, const RatePoint& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const RatePoint& a, const RatePoint& b) {
                          return point_dist(a, b) < 1e-12;
                        }),
            pts.end());
  const int n = static_cast<int>(pts.size());
  if (n <= 2) return pts;
  std::vector<RatePoint> hull(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 1e-14) --k;
    hull[k++] = pts[i];
  }
  const int lower = k + 1;
  for (int i = n - 2; i >= 0; --i) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 1e-14) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace

std::vector<RatePoint> Pentagon::vertices() const {
  const double a = std::max(a_cap, 0.0);
  const double b = std::max(b_cap, 0.0);
  const double s = std::max(sum_cap, 0.0);
  const double xmax = std::min(a, s);
  const double ymax = std::min(b, s);
  std::vector<RatePoint> raw{{0, 0},
                             {xmax, 0},
                             {xmax, std::min(b, s - xmax)},
                             {std::min(a, s - ymax), ymax},
                             {0, ymax}};
  std::vector<RatePoint> out;
  for (const auto& v : raw) {
    RatePoint c = clamp_point(v);
    if (out.empty() || point_dist(out.back(), c) > 1e-12) out.push_back(c);
  }
  if (out.size() > 1 && point_dist(out.front(), out.back()) <= 1e-12) out.pop_back();
  return out;
}

bool Pentagon::contains(const RatePoint& p, double slack) const {
  return p.x >= -slack && p.y >= -slack && p.x <= a_cap + slack && p.y <= b_cap + slack &&
         p.x + p.y <= sum_cap + slack;
}

Region2D make_region(const std::array<std::string, 2>& axes, std::vector<RatePoint> points) {
  Region2D out;
  out.axes = axes;
  std::vector<RatePoint> cloud;
  cloud.push_back({0, 0});
  for (const auto& p : points) {
    RatePoint c = clamp_point(p);
    cloud.push_back(c);
    cloud.push_back({c.x, 0});
    cloud.push_back({0, c.y});
  }
  out.points = cloud;
  out.hull = convex_hull(cloud);
  return out;
}

Region2D region_union(const std::vector<Region2D>& rs) {
  if (rs.empty()) return make_region({{"R", "Q"}}, {});
  std::vector<RatePoint> cloud;
  for (const auto& r : rs) {
    cloud.insert(cloud.end(), r.points.begin(), r.points.end());
    cloud.insert(cloud.end(), r.hull.begin(), r.hull.end());
  }
  return make_region(rs.front().axes, std::move(cloud));
}

bool region_contains(const Region2D& r, const RatePoint& p, double slack) {
  const auto& h = r.hull;
  if (h.empty()) return false;
  if (h.size() == 1) return point_dist(p, h[0]) <= slack;
  if (h.size() == 2) return segment_dist(p, h[0], h[1]) <= slack;
  for (size_t i = 0; i < h.size(); ++i) {
    const RatePoint& a = h[i];
    const RatePoint& b = h[(i + 1) % h.size()];
    const double len = point_dist(a, b);
    if (len < 1e-15) continue;
    if (cross(a, b, p) < -slack * len) return false;  // signed distance below -slack
  }
  return true;
}

RatePoint timeshare(const RatePoint& p1, const RatePoint& p2, double lambda) {
  return {lambda * p1.x + (1 - lambda) * p2.x, lambda * p1.y + (1 - lambda) * p2.y};
}

namespace {

double directed_hausdorff(const Region2D& from, const Region2D& to) {
  double worst = 0.0;
  for (const auto& v : from.hull) {
    if (region_contains(to, v, 0.0)) continue;
    double best = std::numeric_limits<double>::infinity();
    const auto& h = to.hull;
    if (h.size() == 1) best = point_dist(v, h[0]);
    for (size_t i = 0; i + 1 < h.size() || (h.size() > 2 && i < h.size()); ++i)
      best = std::min(best, segment_dist(v, h[i], h[(i + 1) % h.size()]));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

double region_hausdorff(const Region2D& a, const Region2D& b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

namespace {

Channel permute_channel_input(const Channel& ch, const std::vector<std::string>& new_order) {
  const SystemShape& in = ch.in_shape();
  CMatrix s = CMatrix::Zero(in.dim(), in.dim());
  for (int j = 0; j < in.dim(); ++j) {
    CVector e = CVector::Zero(in.dim());
    e(j) = 1.0;
    auto [pe, ps] = permute_systems_vec(e, in, new_order);
    s.col(j) = pe;
  }
  std::vector<CMatrix> kraus;
  kraus.reserve(ch.kraus().size());
  for (const auto& k : ch.kraus()) kraus.push_back(k * s.adjoint());
  SystemShape new_in = in.subshape(new_order);
  std::vector<std::pair<std::string, int>> ordered;
  for (const auto& l : new_order) ordered.emplace_back(l, in.dim_of(l));
  return Channel(std::move(kraus), SystemShape(ordered), ch.out_shape());
}

SystemShape suffixed(const SystemShape& shape, const std::string& suffix) {
  std::vector<std::pair<std::string, int>> out;
  for (const auto& [l, d] : shape.factors()) out.emplace_back(l + suffix, d);
  return SystemShape(out);
}

std::vector<std::string> suffixed(const std::vector<std::string>& labels,
                                  const std::string& suffix) {
  std::vector<std::string> out;
  for (const auto& l : labels) out.push_back(l + suffix);
  return out;
}

void check_region_dims(const Channel& ch) {
  if (ch.in_dim() > kMaxRegionDim || ch.out_dim() > kMaxRegionDim)
    throw DimOverflowError("channel dimensions exceed the supported total of " +
                           std::to_string(kMaxRegionDim));
}

}  // namespace

Channel mac_tensor_power(const Channel& ch, int k) {
  if (ch.arity() != Arity::mac2)
    throw std::invalid_argument("mac_tensor_power: channel must be mac2");
  if (k < 1) throw std::invalid_argument("mac_tensor_power: k must be positive");
  if (k == 1) return ch;

  Channel cur = ch.relabelled(suffixed(ch.in_shape(), "#1"), suffixed(ch.out_shape(), "#1"));
  std::vector<std::string> alice = suffixed(ch.alice_labels(), "#1");
  std::vector<std::string> bob = suffixed(ch.bob_labels(), "#1");
  for (int i = 2; i <= k; ++i) {
    const std::string suffix = "#" + std::to_string(i);
    Channel copy = ch.relabelled(suffixed(ch.in_shape(), suffix), suffixed(ch.out_shape(), suffix));
    cur = tensor(cur, copy);
    for (const auto& l : suffixed(ch.alice_labels(), suffix)) alice.push_back(l);
    for (const auto& l : suffixed(ch.bob_labels(), suffix)) bob.push_back(l);
  }
  std::vector<std::string> order = alice;
  for (const auto& l : bob) order.push_back(l);
  Channel grouped = permute_channel_input(cur, order);
  Channel collapsed = grouped.relabelled(grouped.in_shape(), grouped.out_shape().collapsed("C"));
  check_region_dims(collapsed);
  return collapsed.as_mac2(alice, bob);
}

namespace {

// Splits a sender state's shape into (reference prefix, channel input factors)
// and returns it relabelled to [ref_label, channel labels...].
PureState relabel_sender_state(const PureState& st, const SystemShape& chan_in,
                               const std::vector<std::string>& chan_labels,
                               const std::string& ref_label) {
  SystemShape chan_part = chan_in.subshape(chan_labels);
  const int n_chan = chan_part.num_factors();
  const int n_total = st.shape().num_factors();
  if (n_total < n_chan)
    throw std::invalid_argument("region input: sender state has too few factors");
  std::vector<std::pair<std::string, int>> factors;
  int ref_dim = 1;
  for (int i = 0; i < n_total - n_chan; ++i) ref_dim *= st.shape().dim_at(i);
  factors.emplace_back(ref_label, ref_dim);
  for (int i = 0; i < n_chan; ++i) {
    const int have = st.shape().dim_at(n_total - n_chan + i);
    if (have != chan_part.dim_at(i))
      throw std::invalid_argument("region input: sender factor dimension mismatch");
    factors.emplace_back(chan_labels[i], chan_part.dim_at(i));
  }
  return st.relabelled(SystemShape(factors));
}

}  // namespace

RawRates cq_rates_raw(const Channel& ch, const CQInput& input, int k) {
  if (ch.arity() != Arity::mac2) throw std::invalid_argument("cq_rates: channel must be mac2");
  if (k < 1 || k > 2) throw std::invalid_argument("cq_rates: k must be 1 or 2");
  check_region_dims(ch);
  if (input.ensemble.probs.size() != input.ensemble.states.size() ||
      input.ensemble.probs.empty())
    throw std::invalid_argument("cq_rates: malformed ensemble");

  const SystemShape alice_shape = ch.in_shape().subshape(ch.alice_labels());
  PureState bob = relabel_sender_state(input.bob_state, ch.in_shape(), ch.bob_labels(), "B");

  std::vector<std::string> on = ch.alice_labels();
  for (const auto& l : ch.bob_labels()) on.push_back(l);

  Ensemble blocks;
  blocks.probs = input.ensemble.probs;
  for (const auto& phi : input.ensemble.states) {
    if (phi.dim() != alice_shape.dim())
      throw std::invalid_argument("cq_rates: ensemble state dimension mismatch");
    PureState joint = phi.relabelled(alice_shape).tensor(bob);
    blocks.states.push_back(apply_pure(ch, joint, on));
  }
  DensityMatrix omega = cq_assemble(blocks, "X");

  const std::vector<std::string> c_labels = ch.out_shape().labels();
  std::vector<std::string> cx = c_labels;
  cx.push_back("X");

  RawRates out;
  out.raw.x = mutual_info(omega, {"X"}, c_labels) / k;
  out.raw.y = coherent_info_state(omega, {"B"}, cx) / k;
  out.clamped = clamp_point(out.raw);
  return out;
}

RatePoint cq_rates(const Channel& ch, const CQInput& input, int k) {
  return cq_rates_raw(ch, input, k).clamped;
}

Pentagon qq_rates(const Channel& ch, const QQInput& input, int k) {
  if (ch.arity() != Arity::mac2) throw std::invalid_argument("qq_rates: channel must be mac2");
  if (k < 1 || k > 2) throw std::invalid_argument("qq_rates: k must be 1 or 2");
  check_region_dims(ch);

  PureState alice = relabel_sender_state(input.alice_state, ch.in_shape(), ch.alice_labels(), "A");
  PureState bob = relabel_sender_state(input.bob_state, ch.in_shape(), ch.bob_labels(), "B");
  std::vector<std::string> on = ch.alice_labels();
  for (const auto& l : ch.bob_labels()) on.push_back(l);

  DensityMatrix omega = apply_pure(ch, alice.tensor(bob), on);

  const std::vector<std::string> c = ch.out_shape().labels();
  std::vector<std::string> bc = c, ac = c, ab{"A", "B"};
  bc.insert(bc.begin(), "B");
  ac.insert(ac.begin(), "A");

  Pentagon pent;
  pent.a_cap = coherent_info_state(omega, {"A"}, bc) / k;
  pent.b_cap = coherent_info_state(omega, {"B"}, ac) / k;
  pent.sum_cap = coherent_info_state(omega, ab, c) / k;
  return pent;
}

RatePoint tensor_power_cq_rates(const Channel& base, const CQInput& input, int k) {
  return cq_rates(mac_tensor_power(base, k), input, k);
}

Pentagon tensor_power_qq_rates(const Channel& base, const QQInput& input, int k) {
  return qq_rates(mac_tensor_power(base, k), input, k);
}

int cq_ensemble_size(const Channel& ch) {
  const int da = ch.in_shape().dim_of(ch.alice_labels());
  const int dc = ch.out_dim();
  const int m = std::min(da, dc);
  return m * m + 1;
}

namespace {

PureState decode_state(const Eigen::VectorXd& params, int offset, const SystemShape& shape) {
  const int d = shape.dim();
  CVector v(d);
  for (int i = 0; i < d; ++i) v(i) = complexd(params(offset + 2 * i), params(offset + 2 * i + 1));
  if (v.norm() < 1e-9) return PureState::basis(0, shape);
  return PureState::normalized(v, shape);
}

std::vector<double> softmax(const Eigen::VectorXd& params, int offset, int n) {
  double mx = params(offset);
  for (int i = 1; i < n; ++i) mx = std::max(mx, params(offset + i));
  std::vector<double> out(n);
  double sum = 0;
  for (int i = 0; i < n; ++i) {
    out[i] = std::exp(params(offset + i) - mx);
    sum += out[i];
  }
  for (double& p : out) p /= sum;
  return out;
}

SystemShape sender_input_shape(const Channel& ch, bool alice) {
  return ch.in_shape().subshape(alice ? ch.alice_labels() : ch.bob_labels());
}

SystemShape sender_with_ref(const Channel& ch, bool alice, const std::string& ref) {
  SystemShape in = sender_input_shape(ch, alice);
  return SystemShape::single(ref, in.dim()).concat(in);
}

}  // namespace

int cq_param_count(const Channel& ch, int ensemble_size) {
  const int da = sender_input_shape(ch, true).dim();
  const int db = sender_input_shape(ch, false).dim();
  return ensemble_size * (2 * da + 1) + 2 * db * db;
}

CQInput decode_cq_input(const Channel& ch, const Eigen::VectorXd& params, int ensemble_size) {
  const SystemShape alice_shape = sender_input_shape(ch, true);
  const int da = alice_shape.dim();
  PureEnsemble ensemble;
  int offset = 0;
  for (int x = 0; x < ensemble_size; ++x) {
    ensemble.states.push_back(decode_state(params, offset, alice_shape));
    offset += 2 * da;
  }
  ensemble.probs = softmax(params, offset, ensemble_size);
  offset += ensemble_size;
  PureState bob = decode_state(params, offset, sender_with_ref(ch, false, "B"));
  return CQInput{std::move(ensemble), std::move(bob)};
}

int qq_param_count(const Channel& ch) {
  const int da = sender_input_shape(ch, true).dim();
  const int db = sender_input_shape(ch, false).dim();
  return 2 * da * da + 2 * db * db;
}

QQInput decode_qq_input(const Channel& ch, const Eigen::VectorXd& params) {
  const int da = sender_input_shape(ch, true).dim();
  QQInput input{decode_state(params, 0, sender_with_ref(ch, true, "A")),
                decode_state(params, 2 * da * da, sender_with_ref(ch, false, "B"))};
  return input;
}

Region2D optimize_cq_region(const Channel& ch, const OptimBudget& budget, std::uint64_t seed,
                            int lambda_samples) {
  if (ch.arity() != Arity::mac2)
    throw std::invalid_argument("optimize_cq_region: channel must be mac2");
  check_region_dims(ch);
  const int ensemble_size = cq_ensemble_size(ch);
  const int dim = cq_param_count(ch, ensemble_size);
  lambda_samples = std::max(lambda_samples, 2);

  std::vector<RatePoint> cloud;
  for (int s = 0; s < lambda_samples; ++s) {
    const double lambda = static_cast<double>(s) / (lambda_samples - 1);
    auto objective = [&](const Eigen::VectorXd& p) {
      RatePoint r = cq_rates(ch, decode_cq_input(ch, p, ensemble_size), 1);
      return lambda * r.x + (1 - lambda) * r.y;
    };
    OptimResult best =
        multistart_maximize(objective, dim, budget, split_seed(seed, static_cast<std::uint64_t>(s)));
    RatePoint r = cq_rates(ch, decode_cq_input(ch, best.x, ensemble_size), 1);
    cloud.push_back(r);
  }
  return make_region({{"R", "Q"}}, std::move(cloud));
}

Region2D optimize_qq_region(const Channel& ch, const OptimBudget& budget, std::uint64_t seed,
                            int lambda_samples) {
  if (ch.arity() != Arity::mac2)
    throw std::invalid_argument("optimize_qq_region: channel must be mac2");
  check_region_dims(ch);
  const int dim = qq_param_count(ch);
  lambda_samples = std::max(lambda_samples, 2);

  std::vector<RatePoint> cloud;
  for (int s = 0; s < lambda_samples; ++s) {
    const double lambda = static_cast<double>(s) / (lambda_samples - 1);
    auto scalarized = [&](const Pentagon& pent) {
      double best = 0;
      for (const auto& v : pent.vertices())
        best = std::max(best, lambda * v.x + (1 - lambda) * v.y);
      return best;
    };
    auto objective = [&](const Eigen::VectorXd& p) {
      return scalarized(qq_rates(ch, decode_qq_input(ch, p), 1));
    };
    OptimResult best =
        multistart_maximize(objective, dim, budget, split_seed(seed, static_cast<std::uint64_t>(s)));
    Pentagon pent = qq_rates(ch, decode_qq_input(ch, best.x), 1);
    for (const auto& v : pent.vertices()) cloud.push_back(v);
  }
  return make_region({{"Qa", "Qb"}}, std::move(cloud));
}

}  // namespace qmac
