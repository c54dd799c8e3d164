#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qmac/fuzz.hpp"
#include "qmac/io.hpp"
#include "qmac/metrics.hpp"

namespace py = pybind11;
using namespace qmac;

namespace {

using Factors = std::vector<std::pair<std::string, int>>;

SystemShape shape_of(const Factors& f) { return SystemShape(f); }

py::dict report_to_dict(const FuzzReport& r) {
  py::dict d;
  d["suite"] = r.suite;
  d["trials"] = r.trials;
  d["seed"] = r.seed;
  d["worst_margin"] = r.worst_margin;
  py::list fails;
  for (const auto& f : r.failures) {
    py::dict fd;
    fd["trial"] = f.trial;
    fd["check"] = f.check;
    fd["margin"] = f.margin;
    fails.append(fd);
  }
  d["failures"] = fails;
  return d;
}

}  // namespace

PYBIND11_MODULE(_qmac, m) {
  m.doc() = "Entropic calculus and single-letter rate regions for two-sender quantum channels";

  py::register_exception<DimOverflowError>(m, "DimOverflowError");

  py::class_<SystemShape>(m, "SystemShape")
      .def(py::init(&shape_of), py::arg("factors"))
      .def("dim", &SystemShape::dim)
      .def("labels", &SystemShape::labels)
      .def("__repr__", &SystemShape::str);

  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def(py::init([](const CMatrix& mat, const Factors& f) {
             return DensityMatrix(mat, shape_of(f));
           }),
           py::arg("matrix"), py::arg("shape"))
      .def_property_readonly("matrix", &DensityMatrix::mat)
      .def_property_readonly("shape", &DensityMatrix::shape)
      .def("reduced", &DensityMatrix::reduced, py::arg("kept"))
      .def("partial_trace", &DensityMatrix::partial_trace_out, py::arg("traced"))
      .def("permuted", &DensityMatrix::permuted, py::arg("order"))
      .def("validate", &DensityMatrix::validate);

  py::class_<PureState>(m, "PureState")
      .def(py::init([](const CVector& vec, const Factors& f) {
             return PureState(vec, shape_of(f));
           }),
           py::arg("vector"), py::arg("shape"))
      .def_static("normalized",
                  [](const CVector& vec, const Factors& f) {
                    return PureState::normalized(vec, shape_of(f));
                  })
      .def_property_readonly("vector", &PureState::vec)
      .def_property_readonly("shape", &PureState::shape)
      .def("density", &PureState::density);

  py::class_<Isometry>(m, "Isometry")
      .def_readonly("matrix", &Isometry::mat)
      .def_property_readonly("env_dim", &Isometry::env_dim);

  py::class_<Channel>(m, "Channel")
      .def(py::init([](const std::vector<CMatrix>& kraus, const Factors& in_f,
                       const Factors& out_f) {
             return Channel(kraus, shape_of(in_f), shape_of(out_f));
           }),
           py::arg("kraus"), py::arg("in_shape"), py::arg("out_shape"))
      .def_property_readonly("kraus", &Channel::kraus)
      .def_property_readonly("in_shape", &Channel::in_shape)
      .def_property_readonly("out_shape", &Channel::out_shape)
      .def("cptp_margin", &Channel::cptp_margin)
      .def("kraus_commutator_norm", &Channel::kraus_commutator_norm)
      .def_static("identity",
                  [](const Factors& f) { return Channel::identity(shape_of(f)); });

  py::class_<NamedChannel>(m, "NamedChannel")
      .def_readonly("id", &NamedChannel::id)
      .def_readonly("channel", &NamedChannel::channel)
      .def_readonly("degrading_candidate", &NamedChannel::degrading_candidate)
      .def("closed_form_capacity", &NamedChannel::closed_form_capacity);

  py::class_<RatePoint>(m, "RatePoint")
      .def_readonly("x", &RatePoint::x)
      .def_readonly("y", &RatePoint::y)
      .def("__repr__", [](const RatePoint& p) {
        return "(" + format_sig12(p.x) + ", " + format_sig12(p.y) + ")";
      });

  py::class_<Pentagon>(m, "Pentagon")
      .def_readonly("a_cap", &Pentagon::a_cap)
      .def_readonly("b_cap", &Pentagon::b_cap)
      .def_readonly("sum_cap", &Pentagon::sum_cap)
      .def("vertices", &Pentagon::vertices)
      .def("contains", &Pentagon::contains, py::arg("p"), py::arg("slack") = 1e-9);

  py::class_<Region2D>(m, "Region2D")
      .def_readonly("axes", &Region2D::axes)
      .def_readonly("points", &Region2D::points)
      .def_readonly("hull", &Region2D::hull);

  // States and measurement.
  m.def("max_mixed", &max_mixed, py::arg("d"), py::arg("label") = "A");
  m.def("max_entangled", &max_entangled, py::arg("k"), py::arg("a") = "A", py::arg("b") = "B");
  m.def("purify", &purify, py::arg("rho"), py::arg("ref_label") = "R");
  m.def(
      "measure_povm",
      [](const DensityMatrix& rho, const std::vector<CMatrix>& povm) {
        std::vector<std::pair<double, std::optional<DensityMatrix>>> out;
        for (auto& o : measure_povm(rho, povm)) out.emplace_back(o.prob, o.post);
        return out;
      },
      py::arg("rho"), py::arg("povm"));

  // Channel calculus.
  m.def("apply_channel",
        py::overload_cast<const Channel&, const DensityMatrix&, const std::vector<std::string>&>(
            &apply),
        py::arg("channel"), py::arg("rho"), py::arg("on"));
  m.def("apply_channel", py::overload_cast<const Channel&, const DensityMatrix&>(&apply),
        py::arg("channel"), py::arg("rho"));
  m.def("kraus_to_isometry", &kraus_to_isometry, py::arg("channel"), py::arg("env_label") = "E");
  m.def("complement", &complement, py::arg("channel"), py::arg("env_label") = "E");
  m.def("compose", &compose, py::arg("first"), py::arg("then"));
  m.def("tensor", &tensor, py::arg("a"), py::arg("b"));
  m.def("verify_degrading", &verify_degrading, py::arg("channel"), py::arg("degrading"));
  m.def("channel_distance", &channel_distance, py::arg("a"), py::arg("b"));

  // Entropic functionals.
  m.def("entropy", &entropy, py::arg("rho"));
  m.def("cond_entropy", &cond_entropy, py::arg("rho"), py::arg("a"), py::arg("b"));
  m.def("mutual_info", &mutual_info, py::arg("rho"), py::arg("a"), py::arg("b"));
  m.def("cond_mutual_info", &cond_mutual_info, py::arg("rho"), py::arg("a"), py::arg("b"),
        py::arg("c"));
  m.def("coherent_info_state", &coherent_info_state, py::arg("rho"), py::arg("a"), py::arg("b"));
  m.def("coherent_info_channel", &coherent_info_channel, py::arg("rho"), py::arg("channel"));
  m.def(
      "holevo",
      [](const std::vector<double>& probs, const std::vector<DensityMatrix>& states) {
        return holevo(Ensemble{probs, states});
      },
      py::arg("probs"), py::arg("states"));
  m.def("binary_entropy", &binary_entropy, py::arg("p"));
  m.def("fano_bound", &fano_bound, py::arg("pe"), py::arg("m"));

  // Distance measures.
  m.def("trace_distance", &trace_distance, py::arg("rho"), py::arg("sigma"));
  m.def("fidelity",
        py::overload_cast<const DensityMatrix&, const DensityMatrix&>(&fidelity),
        py::arg("rho"), py::arg("sigma"));

  // Model zoo and regions.
  m.def("channel_by_id", &resolve_channel, py::arg("spec"));
  m.def("erasure_mac", &erasure_mac, py::arg("d"));
  m.def("phase_flip_mac", &phase_flip_mac, py::arg("p"));
  m.def("phase_flip_pentagon", &phase_flip_pentagon, py::arg("p"));
  m.def("dephasing_channel", &dephasing_channel, py::arg("phis"));
  m.def(
      "dephasing_capacity",
      [](const NamedChannel& nc, int restarts, int evals, std::uint64_t seed) {
        return dephasing_capacity(nc, OptimBudget{restarts, evals}, seed);
      },
      py::arg("channel"), py::arg("restarts") = 16, py::arg("evals") = 800, py::arg("seed") = 1);
  m.def(
      "cq_rates",
      [](const Channel& ch, const std::vector<double>& probs,
         const std::vector<PureState>& ensemble, const PureState& bob, int k) {
        return cq_rates(ch, CQInput{PureEnsemble{probs, ensemble}, bob}, k);
      },
      py::arg("channel"), py::arg("probs"), py::arg("ensemble"), py::arg("bob_state"),
      py::arg("k") = 1);
  m.def(
      "qq_rates",
      [](const Channel& ch, const PureState& alice, const PureState& bob, int k) {
        return qq_rates(ch, QQInput{alice, bob}, k);
      },
      py::arg("channel"), py::arg("alice_state"), py::arg("bob_state"), py::arg("k") = 1);
  m.def("mac_tensor_power", &mac_tensor_power, py::arg("channel"), py::arg("k"));
  m.def(
      "optimize_cq_region",
      [](const Channel& ch, int restarts, int evals, std::uint64_t seed, int samples) {
        return optimize_cq_region(ch, OptimBudget{restarts, evals}, seed, samples);
      },
      py::arg("channel"), py::arg("restarts") = 32, py::arg("evals") = 2000, py::arg("seed") = 1,
      py::arg("samples") = 33);
  m.def(
      "optimize_qq_region",
      [](const Channel& ch, int restarts, int evals, std::uint64_t seed, int samples) {
        return optimize_qq_region(ch, OptimBudget{restarts, evals}, seed, samples);
      },
      py::arg("channel"), py::arg("restarts") = 32, py::arg("evals") = 2000, py::arg("seed") = 1,
      py::arg("samples") = 33);
  m.def("region_hausdorff", &region_hausdorff, py::arg("a"), py::arg("b"));
  m.def("erasure_cq_curve", &erasure_cq_curve, py::arg("d"), py::arg("q_grid"));

  // Fuzz suites.
  m.def(
      "run_fuzz",
      [](const std::string& suite, int trials, std::uint64_t seed) {
        return report_to_dict(run_fuzz(suite, trials, seed));
      },
      py::arg("suite"), py::arg("trials"), py::arg("seed"));
  m.def("fuzz_suites", &fuzz_suites);
}
