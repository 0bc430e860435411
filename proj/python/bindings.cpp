#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "episis/commands.hpp"
#include "episis/dynamics.hpp"
#include "episis/graph.hpp"
#include "episis/integrator.hpp"
#include "episis/manifest.hpp"
#include "episis/network.hpp"
#include "episis/scenario.hpp"
#include "episis/selection.hpp"
#include "episis/spectral.hpp"
#include "episis/verify.hpp"

namespace py = pybind11;
using namespace episis;

PYBIND11_MODULE(_episis, m) {
  m.doc() = "Adaptive-gain SIS epidemic control on directed networks";

  py::class_<EpidemicNetwork>(m, "EpidemicNetwork")
      .def(py::init<Eigen::VectorXd, Eigen::MatrixXd, std::vector<std::string>>(), py::arg("d"),
           py::arg("b"), py::arg("labels") = std::vector<std::string>{})
      .def_readonly("d", &EpidemicNetwork::d)
      .def_readonly("b", &EpidemicNetwork::b)
      .def_readonly("labels", &EpidemicNetwork::labels)
      .def_readonly("strongly_connected", &EpidemicNetwork::strongly_connected)
      .def_property_readonly("n", &EpidemicNetwork::size)
      .def("label_of", &EpidemicNetwork::label_of)
      .def("index_of", &EpidemicNetwork::index_of)
      .def("__repr__", [](const EpidemicNetwork& net) {
        return "<EpidemicNetwork n=" + std::to_string(net.size()) + ">";
      });

  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("strongly_connected", &ValidationReport::strongly_connected)
      .def_readonly("r0", &ValidationReport::r0)
      .def_readonly("r0_above_one", &ValidationReport::r0_above_one)
      .def_readonly("self_stable_nodes", &ValidationReport::self_stable_nodes);
  m.def("validate", &validate);

  m.def(
      "load_network",
      [](const std::string& path, bool require_sc) { return load_network(path, require_sc); },
      py::arg("path"), py::arg("require_strong_connectivity") = false);
  m.def(
      "save_network",
      [](const EpidemicNetwork& net, const std::string& path, const std::string& format) {
        save_network(net, path,
                     format == "csv" ? NetworkFormat::edge_csv : NetworkFormat::json);
      },
      py::arg("net"), py::arg("path"), py::arg("format") = "json");
  m.def("normalize_and_threshold", &normalize_and_threshold, py::arg("raw"), py::arg("kappa"),
        py::arg("target_row_sum"));

  m.def("toy6_network", &toy6_network);
  m.def("italy_like_network", &italy_like_network, py::arg("seed"));
  m.def("random_sc_network", &random_sc_network, py::arg("n"), py::arg("density"),
        py::arg("seed"));

  py::class_<SpectralResult>(m, "SpectralResult")
      .def_readonly("value", &SpectralResult::value)
      .def_readonly("right_vector", &SpectralResult::right_vector)
      .def_readonly("iterations", &SpectralResult::iterations)
      .def_readonly("residual", &SpectralResult::residual);
  m.def("spectral_radius", [](const Eigen::MatrixXd& mat) { return spectral_radius(mat); });
  m.def("spectral_abscissa", [](const Eigen::MatrixXd& mat) { return spectral_abscissa(mat); });
  m.def("is_hurwitz", &is_hurwitz);
  m.def("classify_m_matrix",
        [](const Eigen::MatrixXd& a) { return to_string(classify_m_matrix(a)); });
  m.def(
      "reproduction_number",
      [](const EpidemicNetwork& net, const Eigen::VectorXd& gains, const std::string& mode) {
        return reproduction_number(net, gains, control_mode_from_string(mode));
      },
      py::arg("net"), py::arg("gains"), py::arg("mode") = "infection");

  m.def("strongly_connected_components", [](const Eigen::MatrixXd& adjacency) {
    return strongly_connected_components(adjacency);
  });
  m.def(
      "simple_cycles",
      [](const Eigen::MatrixXd& adjacency, std::size_t max_cycles) {
        return simple_cycles(Digraph::from_matrix(adjacency, true), max_cycles);
      },
      py::arg("adjacency"), py::arg("max_cycles") = 1000000);

  py::class_<CycleReport>(m, "CycleReport")
      .def_readonly("cycles", &CycleReport::cycles)
      .def_readonly("gains", &CycleReport::gains)
      .def_readonly("total_gain", &CycleReport::total_gain)
      .def_readonly("max_index", &CycleReport::max_index)
      .def_readonly("max_gain", &CycleReport::max_gain);
  m.def(
      "cycle_gains",
      [](const Eigen::VectorXd& d, const Eigen::MatrixXd& b) { return cycle_gains(d, b); },
      py::arg("d_block"), py::arg("b_block"));

  py::class_<ControlConfig>(m, "ControlConfig")
      .def(py::init([](const std::string& mode, Eigen::VectorXd alpha, int p,
                       std::optional<double> period, Eigen::VectorXd g0) {
             ControlConfig cfg;
             cfg.mode = control_mode_from_string(mode);
             cfg.alpha = std::move(alpha);
             cfg.p = p;
             cfg.period = period;
             cfg.g0 = std::move(g0);
             return cfg;
           }),
           py::arg("mode"), py::arg("alpha") = Eigen::VectorXd(), py::arg("p") = 1,
           py::arg("period") = std::nullopt, py::arg("g0") = Eigen::VectorXd())
      .def_property_readonly("mode", [](const ControlConfig& c) { return to_string(c.mode); })
      .def_readonly("alpha", &ControlConfig::alpha)
      .def_readonly("p", &ControlConfig::p)
      .def_readonly("period", &ControlConfig::period);

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("times", &Trajectory::times)
      .def_readonly("x", &Trajectory::x)
      .def_readonly("g", &Trajectory::g)
      .def_readonly("r_times", &Trajectory::r_times)
      .def_readonly("r_values", &Trajectory::r_values)
      .def_readonly("r0", &Trajectory::r0)
      .def_readonly("peak_avg_infection", &Trajectory::peak_avg_infection)
      .def_property_readonly("terminal",
                             [](const Trajectory& t) { return to_string(t.terminal); })
      .def_readonly("final_gains", &Trajectory::final_gains)
      .def_readonly("extinction_time", &Trajectory::extinction_time)
      .def_readonly("max_clamp", &Trajectory::max_clamp);

  m.def(
      "integrate",
      [](const EpidemicNetwork& net, const ControlConfig& cfg, const Eigen::VectorXd& x0,
         double horizon, double step) { return integrate(net, cfg, x0, horizon, step); },
      py::arg("net"), py::arg("cfg"), py::arg("x0"), py::arg("horizon"),
      py::arg("step") = 1e-2);

  py::class_<LimitReport>(m, "LimitReport")
      .def_readonly("x_limit", &LimitReport::x_limit)
      .def_readonly("g_limit", &LimitReport::g_limit)
      .def_readonly("converged", &LimitReport::converged)
      .def_readonly("max_drift", &LimitReport::max_drift);
  m.def("detect_limits", &detect_limits, py::arg("trajectory"), py::arg("eps_conv") = 1e-6);

  py::class_<Stage2Step>(m, "Stage2Step")
      .def_readonly("component", &Stage2Step::component)
      .def_readonly("component_nodes", &Stage2Step::component_nodes)
      .def_readonly("removed", &Stage2Step::removed)
      .def_readonly("broken_cycle", &Stage2Step::broken_cycle)
      .def_readonly("total_before", &Stage2Step::total_before)
      .def_readonly("total_after", &Stage2Step::total_after);
  py::class_<SelectionResult>(m, "SelectionResult")
      .def_readonly("controlled", &SelectionResult::controlled)
      .def_readonly("uncontrolled", &SelectionResult::uncontrolled)
      .def_readonly("feasible", &SelectionResult::feasible)
      .def_readonly("certificate", &SelectionResult::certificate)
      .def_readonly("trace", &SelectionResult::trace);
  m.def("exists_partial_solution", &exists_partial_solution);
  m.def("selection_stage1", &selection_stage1);
  m.def(
      "select_control_nodes",
      [](const EpidemicNetwork& net, std::optional<std::uint64_t> seed) {
        TieBreak tb;
        if (seed) {
          tb.seeded = true;
          tb.seed = *seed;
        }
        return select_control_nodes(net, tb);
      },
      py::arg("net"), py::arg("seed") = std::nullopt);
  py::class_<PartitionCertificate>(m, "PartitionCertificate")
      .def_readonly("hurwitz", &PartitionCertificate::hurwitz)
      .def_readonly("abscissa", &PartitionCertificate::abscissa);
  m.def("verify_partition", &verify_partition, py::arg("net"), py::arg("controlled"));

  py::class_<BoundEntry>(m, "BoundEntry")
      .def_readonly("node", &BoundEntry::node)
      .def_readonly("bound", &BoundEntry::bound)
      .def_readonly("observed", &BoundEntry::observed)
      .def_readonly("satisfied", &BoundEntry::satisfied)
      .def_readonly("margin", &BoundEntry::margin);
  py::class_<BoundReport>(m, "BoundReport")
      .def_readonly("check", &BoundReport::check)
      .def_readonly("passed", &BoundReport::passed)
      .def_readonly("applicable", &BoundReport::applicable)
      .def_readonly("note", &BoundReport::note)
      .def_readonly("entries", &BoundReport::entries);
  m.def("check_gain_upper_bound", &check_gain_upper_bound);
  m.def("check_gain_lower_bound", &check_gain_lower_bound);
  m.def("check_r_infinity", &check_r_infinity);
  m.def("check_escape_bound", &check_escape_bound);
  m.def("check_finite_time_positivity", &check_finite_time_positivity);
  m.def("log_decay_slope", &log_decay_slope);

  m.def(
      "gain_closed_form",
      [](const std::vector<double>& times, const std::vector<double>& x_node, double alpha,
         int p, double g0, const std::string& mode) {
        return gain_closed_form(times, x_node, alpha, p, g0, control_mode_from_string(mode));
      },
      py::arg("times"), py::arg("x_node"), py::arg("alpha"), py::arg("p"), py::arg("g0"),
      py::arg("mode"));

  m.def(
      "simulate_manifest",
      [](const std::string& manifest_json) {
        const RunManifest manifest =
            RunManifest::from_json(nlohmann::json::parse(manifest_json));
        std::ostringstream out, err;
        const int code = cmd_simulate(manifest, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("manifest_json"),
      "Run a JSON manifest exactly like the command line simulate subcommand");
}
