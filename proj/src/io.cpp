#include "qmac/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace qmac {

json shape_to_json(const SystemShape& shape) {
  json j = json::array();
  for (const auto& [label, dim] : shape.factors()) j.push_back(json::array({label, dim}));
  return j;
}

SystemShape shape_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw InputError("shape: expected a nonempty array");
  std::vector<std::pair<std::string, int>> factors;
  for (const auto& f : j) {
    if (!f.is_array() || f.size() != 2 || !f[0].is_string() || !f[1].is_number_integer())
      throw InputError("shape: each factor must be [label, dim]");
    factors.emplace_back(f[0].get<std::string>(), f[1].get<int>());
  }
  try {
    return SystemShape(factors);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("shape: ") + e.what());
  }
}

namespace {

json complex_data(const CMatrix& m) {
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      data.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
  return data;
}

json complex_data(const CVector& v) {
  json data = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    data.push_back(json::array({v(i).real(), v(i).imag()}));
  return data;
}

CMatrix matrix_from_data(const json& data, int rows, int cols, const char* who) {
  if (!data.is_array() || static_cast<int>(data.size()) != rows * cols)
    throw InputError(std::string(who) + ": data must hold rows*cols [re,im] pairs");
  CMatrix m(rows, cols);
  int idx = 0;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j, ++idx) {
      const json& e = data[idx];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw InputError(std::string(who) + ": entry " + std::to_string(idx) +
                         " is not an [re,im] pair");
      m(i, j) = complexd(e[0].get<double>(), e[1].get<double>());
    }
  return m;
}

}  // namespace

json density_to_json(const DensityMatrix& rho) {
  return json{{"shape", shape_to_json(rho.shape())},
              {"kind", "density"},
              {"data", complex_data(rho.mat())}};
}

json pure_to_json(const PureState& psi) {
  return json{{"shape", shape_to_json(psi.shape())},
              {"kind", "pure"},
              {"data", complex_data(psi.vec())}};
}

DensityMatrix density_from_json(const json& j) {
  if (j.value("kind", "") != "density") throw InputError("state: kind must be \"density\"");
  SystemShape shape = shape_from_json(j.at("shape"));
  CMatrix m = matrix_from_data(j.at("data"), shape.dim(), shape.dim(), "state");
  try {
    return DensityMatrix(std::move(m), std::move(shape));
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("state: ") + e.what());
  }
}

PureState pure_from_json(const json& j) {
  if (j.value("kind", "") != "pure") throw InputError("state: kind must be \"pure\"");
  SystemShape shape = shape_from_json(j.at("shape"));
  CMatrix col = matrix_from_data(j.at("data"), shape.dim(), 1, "state");
  try {
    return PureState(col.col(0), std::move(shape));
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("state: ") + e.what());
  }
}

json channel_to_json(const Channel& ch, const std::string& name) {
  json j;
  j["name"] = name;
  j["arity"] = ch.arity() == Arity::mac2 ? "mac2" : "single";
  j["in_shape"] = shape_to_json(ch.in_shape());
  j["out_shape"] = shape_to_json(ch.out_shape());
  if (ch.arity() == Arity::mac2) j["alice_labels"] = ch.alice_labels();
  json kraus = json::array();
  for (const auto& k : ch.kraus()) kraus.push_back(complex_data(k));
  j["kraus"] = kraus;
  return j;
}

Channel channel_from_json(const json& j) {
  SystemShape in = shape_from_json(j.at("in_shape"));
  SystemShape out = shape_from_json(j.at("out_shape"));
  const json& kj = j.at("kraus");
  if (!kj.is_array() || kj.empty()) throw InputError("channel: kraus must be a nonempty array");
  std::vector<CMatrix> kraus;
  for (const auto& km : kj) kraus.push_back(matrix_from_data(km, out.dim(), in.dim(), "channel"));

  const std::string arity = j.value("arity", "single");
  try {
    if (arity == "single") return Channel(std::move(kraus), in, out);
    if (arity != "mac2") throw InputError("channel: arity must be \"single\" or \"mac2\"");
    std::vector<std::string> alice;
    if (j.contains("alice_labels"))
      alice = j.at("alice_labels").get<std::vector<std::string>>();
    else
      alice = {in.label(0)};
    std::vector<std::string> bob;
    for (const auto& l : in.labels())
      if (std::find(alice.begin(), alice.end(), l) == alice.end()) bob.push_back(l);
    return Channel::mac2(std::move(kraus), in, out, alice, bob);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("channel: ") + e.what());
  }
}

std::string format_sig12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

json region_to_json(const Region2D& r, const json& meta) {
  json j;
  j["axes"] = json::array({r.axes[0], r.axes[1]});
  json hull = json::array();
  for (const auto& p : r.hull) hull.push_back(json::array({p.x, p.y}));
  j["hull"] = hull;
  json points = json::array();
  for (const auto& p : r.points) points.push_back(json::array({p.x, p.y}));
  j["points"] = points;
  j["meta"] = meta;
  return j;
}

std::string region_to_csv(const Region2D& r) {
  std::ostringstream os;
  os << r.axes[0] << "," << r.axes[1] << ",hull\n";
  for (const auto& p : r.points)
    os << format_sig12(p.x) << "," << format_sig12(p.y) << ",0\n";
  for (const auto& p : r.hull)
    os << format_sig12(p.x) << "," << format_sig12(p.y) << ",1\n";
  return os.str();
}

namespace {

double parse_double(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (...) {
    throw InputError("channel spec: cannot parse " + what + " value '" + s + "'");
  }
}

int parse_int(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (...) {
    throw InputError("channel spec: cannot parse " + what + " value '" + s + "'");
  }
}

NamedChannel channel_from_file(const std::string& path) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw InputError("channel file " + path + ": " + e.what());
  }
  return NamedChannel("file:" + path, ChannelFamily::custom, channel_from_json(j));
}

}  // namespace

NamedChannel resolve_channel(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);

  try {
    if (head == "erasure") {
      if (rest.rfind("d=", 0) != 0) throw InputError("channel spec: expected erasure:d=<int>");
      return erasure_mac(parse_int(rest.substr(2), "d"));
    }
    if (head == "phaseflip") {
      if (rest.rfind("p=", 0) != 0) throw InputError("channel spec: expected phaseflip:p=<real>");
      return phase_flip_mac(parse_double(rest.substr(2), "p"));
    }
    if (head == "dephasing") {
      if (rest.rfind("file=", 0) != 0)
        throw InputError("channel spec: expected dephasing:file=<path>");
      json j;
      try {
        j = json::parse(read_file(rest.substr(5)));
      } catch (const json::parse_error& e) {
        throw InputError(std::string("dephasing file: ") + e.what());
      }
      if (!j.is_array()) throw InputError("dephasing file: expected an array of pure states");
      std::vector<PureState> phis;
      for (const auto& s : j) phis.push_back(pure_from_json(s));
      return dephasing_channel(phis);
    }
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("channel spec: ") + e.what());
  }
  return channel_from_file(spec);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open " + path + " for writing");
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace qmac
