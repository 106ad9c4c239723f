#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "hhgq/config.hpp"
#include "hhgq/errors.hpp"
#include "hhgq/io.hpp"
#include "hhgq/parallel.hpp"
#include "hhgq/run.hpp"

namespace py = pybind11;
using namespace hhgq;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

py::array_t<std::complex<double>> to_array(const std::vector<std::complex<double>>& v) {
  return py::array_t<std::complex<double>>(v.size(), v.data());
}

py::array_t<double> times(const TimeGrid& grid) {
  std::vector<double> t(grid.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = grid.at(i);
  return to_array(t);
}

py::object json_to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

}  // namespace

PYBIND11_MODULE(_hhgq, m) {
  m.doc() = "Quantum-optical high-harmonic generation toolkit";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<ResolutionError>(m, "ResolutionError", base.ptr());
  py::register_exception<TruncationError>(m, "TruncationError", base.ptr());
  py::register_exception<AliasingError>(m, "AliasingError", base.ptr());
  py::register_exception<UnsupportedEnvelope>(m, "UnsupportedEnvelope", base.ptr());
  py::register_exception<QuadratureError>(m, "QuadratureError", base.ptr());
  py::register_exception<ScanError>(m, "ScanError", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());

  m.def("set_thread_limit", &set_thread_limit, py::arg("n"));
  m.def("thread_limit", &thread_limit);

  // field
  py::class_<Envelope>(m, "Envelope")
      .def_static("flat", &Envelope::flat)
      .def_static("sin_squared", &Envelope::sin_squared, py::arg("cycles"))
      .def_static("gaussian", &Envelope::gaussian, py::arg("fwhm_cycles"))
      .def_property_readonly("kind", [](const Envelope& e) { return std::string(to_string(e.kind)); })
      .def_readonly("cycles", &Envelope::cycles)
      .def_readonly("fwhm_cycles", &Envelope::fwhm_cycles);

  py::class_<FieldConfig>(m, "FieldConfig")
      .def(py::init([](double kappa, double omega, double alpha_abs, double phase, Envelope envelope, int n_cycles) {
             FieldConfig f{kappa, omega, alpha_abs, phase, envelope, n_cycles};
             f.validate();
             return f;
           }),
           py::kw_only(), py::arg("kappa"), py::arg("omega"), py::arg("alpha_abs"), py::arg("phase") = 0.0,
           py::arg("envelope") = Envelope::flat(), py::arg("n_cycles") = 8)
      .def_readwrite("kappa", &FieldConfig::kappa)
      .def_readwrite("omega", &FieldConfig::omega)
      .def_readwrite("alpha_abs", &FieldConfig::alpha_abs)
      .def_readwrite("phase", &FieldConfig::phase)
      .def_readwrite("envelope", &FieldConfig::envelope)
      .def_readwrite("n_cycles", &FieldConfig::n_cycles)
      .def_property_readonly("period", &FieldConfig::period)
      .def_property_readonly("duration", &FieldConfig::duration)
      .def_property_readonly("amplitude", &FieldConfig::amplitude)
      .def("with_alpha", &FieldConfig::with_alpha, py::arg("alpha"))
      .def("validate", &FieldConfig::validate);

  py::class_<TimeGrid>(m, "TimeGrid")
      .def(py::init<double, double, std::size_t>(), py::arg("t0"), py::arg("dt"), py::arg("n"))
      .def_static("cycles", &TimeGrid::cycles, py::arg("omega"), py::arg("n_cycles"), py::arg("samples_per_cycle"),
                  py::arg("t0") = 0.0)
      .def_static("for_field", &TimeGrid::for_field, py::arg("config"), py::arg("samples_per_cycle"))
      .def_property_readonly("t0", &TimeGrid::t0)
      .def_property_readonly("dt", &TimeGrid::dt)
      .def_property_readonly("size", &TimeGrid::size)
      .def_property_readonly("times", &times)
      .def("__len__", &TimeGrid::size);

  m.def("classical_field", [](const FieldConfig& c, const TimeGrid& g) { return to_array(classical_field(c, g).values); },
        py::arg("config"), py::arg("grid"));

  py::class_<Coherent>(m, "Coherent")
      .def(py::init([](std::complex<double> a) { return Coherent{a}; }), py::arg("alpha"))
      .def_readonly("alpha", &Coherent::alpha);
  py::class_<PhaseAveraged>(m, "PhaseAveraged")
      .def(py::init([](double a, int n) { return PhaseAveraged{a, n}; }), py::arg("alpha_abs"), py::arg("n_phi") = 256)
      .def_readonly("alpha_abs", &PhaseAveraged::alpha_abs)
      .def_readonly("n_phi", &PhaseAveraged::n_phi);
  py::class_<Fock>(m, "Fock")
      .def(py::init([](int n) { return Fock{n}; }), py::arg("n"))
      .def_readonly("n", &Fock::n);

  m.def("mean_driving_field", &mean_driving_field, py::arg("drive"), py::arg("config"), py::arg("t"));

  // dipole
  py::class_<AtomParams>(m, "AtomParams")
      .def(py::init([](double ip, double epsilon, double history_cycles, double taper_fraction) {
             AtomParams a{ip, epsilon, history_cycles, taper_fraction};
             a.validate();
             return a;
           }),
           py::kw_only(), py::arg("ip") = 0.5, py::arg("epsilon") = 1e-6, py::arg("history_cycles") = 1.0,
           py::arg("taper_fraction") = 0.2)
      .def_readonly("ip", &AtomParams::ip)
      .def_readonly("epsilon", &AtomParams::epsilon)
      .def_readonly("history_cycles", &AtomParams::history_cycles)
      .def_readonly("taper_fraction", &AtomParams::taper_fraction);

  py::class_<ToyTerm>(m, "ToyTerm")
      .def(py::init([](int q, double c, int p) { return ToyTerm{q, c, p}; }), py::arg("q"), py::arg("c"), py::arg("p"))
      .def_readonly("q", &ToyTerm::q)
      .def_readonly("c", &ToyTerm::c)
      .def_readonly("p", &ToyTerm::p);

  py::class_<ToyDipoleParams>(m, "ToyDipoleParams")
      .def(py::init([](std::vector<ToyTerm> terms, double e_ref) {
             ToyDipoleParams p{std::move(terms), e_ref};
             p.validate();
             return p;
           }),
           py::arg("terms"), py::arg("e_ref") = 1.0)
      .def_static("monomial", &ToyDipoleParams::monomial, py::arg("orders"), py::arg("c"), py::arg("e_ref") = 1.0)
      .def_readonly("terms", &ToyDipoleParams::terms)
      .def_readonly("e_ref", &ToyDipoleParams::e_ref);

  py::class_<DipoleEngine>(m, "DipoleEngine")
      .def_static("sfa", &DipoleEngine::sfa, py::arg("atom") = AtomParams{})
      .def_static("toy", &DipoleEngine::toy, py::arg("params"))
      .def_property_readonly("name", &DipoleEngine::name)
      .def("evaluate",
           [](const DipoleEngine& e, const FieldConfig& c, const TimeGrid& g) {
             return to_array(e.evaluate(c, g).values);
           },
           py::arg("config"), py::arg("grid"));

  m.def("covariance_check", &covariance_check, py::arg("engine"), py::arg("config"), py::arg("grid"),
        py::arg("delta_phi"));
  m.def("cutoff_order", &cutoff_order, py::arg("ip"), py::arg("amplitude"), py::arg("omega"));

  // harmonics
  py::enum_<Window>(m, "Window").value("NONE", Window::None).value("HANN", Window::Hann);

  py::class_<SpectrumResult>(m, "SpectrumResult")
      .def_property_readonly("q",
                             [](const SpectrumResult& s) {
                               std::vector<double> q;
                               for (const SpectrumLine& l : s.lines) q.push_back(l.q);
                               return to_array(q);
                             })
      .def_property_readonly("values", [](const SpectrumResult& s) { return to_array(s.values()); })
      .def_readonly("drive", &SpectrumResult::drive)
      .def_readonly("engine", &SpectrumResult::engine)
      .def("at", &SpectrumResult::at, py::arg("q"))
      .def("to_json", [](const SpectrumResult& s) { return json_to_py(to_json(s)); });

  m.def("harmonic_amplitude",
        [](const DipoleEngine& e, const FieldConfig& c, const TimeGrid& g, int q, Window w) {
          return harmonic_amplitude(e.evaluate(c, g), q, c.omega, w).value;
        },
        py::arg("engine"), py::arg("config"), py::arg("grid"), py::arg("q"), py::arg("window") = Window::None);

  m.def("spectrum_coherent",
        [](const DipoleEngine& e, const FieldConfig& c, const TimeGrid& g, int q_min, int q_max, Window w) {
          return spectrum_coherent(e, c, g, QRange{q_min, q_max}, w);
        },
        py::arg("engine"), py::arg("config"), py::arg("grid"), py::arg("q_min"), py::arg("q_max"),
        py::arg("window") = Window::None);

  py::enum_<DriveLimit>(m, "DriveLimit").value("QUANTUM", DriveLimit::Quantum).value("CLASSICAL", DriveLimit::Classical);

  py::class_<QuadratureSpec>(m, "QuadratureSpec")
      .def(py::init([](int r, int a, DriveLimit l) { return QuadratureSpec{r, a, l}; }), py::arg("radial_nodes") = 40,
           py::arg("angular_nodes") = 64, py::arg("limit") = DriveLimit::Quantum)
      .def_readonly("radial_nodes", &QuadratureSpec::radial_nodes)
      .def_readonly("angular_nodes", &QuadratureSpec::angular_nodes)
      .def_readonly("limit", &QuadratureSpec::limit);

  py::class_<HusimiSampler>(m, "HusimiSampler")
      .def(py::init<DrivingState, QuadratureSpec>(), py::arg("drive"), py::arg("spec") = QuadratureSpec{})
      .def("__call__", &HusimiSampler::operator(), py::arg("alpha"))
      .def("log_q", &HusimiSampler::log_q, py::arg("alpha"))
      .def("nodes", [](const HusimiSampler& s) {
        std::vector<std::complex<double>> alpha;
        std::vector<double> weight;
        for (const QuadratureNode& n : s.nodes()) {
          alpha.push_back(n.alpha);
          weight.push_back(n.weight);
        }
        return py::make_tuple(to_array(alpha), to_array(weight));
      });

  m.def("spectrum_ensemble",
        [](const HusimiSampler& s, const DipoleEngine& e, const FieldConfig& c, const TimeGrid& g, int q_min,
           int q_max, Window w) { return spectrum_ensemble(s, e, c, g, QRange{q_min, q_max}, w); },
        py::arg("sampler"), py::arg("engine"), py::arg("base"), py::arg("grid"), py::arg("q_min"), py::arg("q_max"),
        py::arg("window") = Window::None);

  py::class_<PlateauAnalysis>(m, "PlateauAnalysis")
      .def_readonly("cutoff_order", &PlateauAnalysis::cutoff_order)
      .def_readonly("plateau_level", &PlateauAnalysis::plateau_level)
      .def_readonly("drop_decades", &PlateauAnalysis::drop_decades)
      .def_readonly("odd_even_contrast", &PlateauAnalysis::odd_even_contrast);
  m.def("analyze_plateau", &analyze_plateau, py::arg("spectrum"), py::arg("plateau_start") = 5,
        py::arg("plateau_decades") = 1.5);

  // phase space
  m.def("generalized_p",
        [](const DrivingState& d, std::complex<double> alpha, std::complex<double> beta_conj) {
          return generalized_p(d)(alpha, beta_conj);
        },
        py::arg("drive"), py::arg("alpha"), py::arg("beta_conj"));
  m.def("delta_limit_probe",
        [](const std::vector<double>& kappas, const std::function<double(std::complex<double>)>& f,
           std::complex<double> center) {
          std::vector<double> value, error;
          for (const DeltaProbePoint& p : delta_limit_probe(kappas, f, center)) {
            value.push_back(p.value);
            error.push_back(p.error);
          }
          return py::make_tuple(to_array(value), to_array(error));
        },
        py::arg("kappas"), py::arg("f"), py::arg("center") = std::complex<double>{});
  m.def("fock_moment", &fock_moment, py::arg("n"), py::arg("q"));

  // quantum state
  py::class_<ModeDensityMatrix>(m, "ModeDensityMatrix")
      .def_property_readonly("q", &ModeDensityMatrix::q)
      .def_property_readonly("n_max", &ModeDensityMatrix::n_max)
      .def_property_readonly("is_diagonal_storage", &ModeDensityMatrix::is_diagonal_storage)
      .def("__call__", &ModeDensityMatrix::operator(), py::arg("n"), py::arg("m"))
      .def("population", &ModeDensityMatrix::population, py::arg("n"))
      .def("trace", &ModeDensityMatrix::trace)
      .def("to_dense", &ModeDensityMatrix::to_dense);

  m.def("poisson_cutoff", &poisson_cutoff, py::arg("mean"));
  m.def("coherent_mode_state", &coherent_mode_state, py::arg("chi"), py::arg("n_max"),
        py::arg("max_tail") = kPoissonTailTolerance, py::arg("q") = 0);
  m.def("phase_averaged_mode_state", &phase_averaged_mode_state, py::arg("chi_abs"), py::arg("q"), py::arg("n_phi"),
        py::arg("n_max"), py::arg("max_tail") = kPoissonTailTolerance);
  m.def("poisson_mode_state", &poisson_mode_state, py::arg("mean"), py::arg("n_max"),
        py::arg("max_tail") = kPoissonTailTolerance, py::arg("q") = 0);
  m.def("l1_coherence", &l1_coherence, py::arg("rho"));
  m.def("mean_photon", &mean_photon, py::arg("rho"));
  m.def("photon_distribution", [](const ModeDensityMatrix& r) { return to_array(photon_distribution(r)); },
        py::arg("rho"));
  m.def("mean_field_amplitude", &mean_field_amplitude, py::arg("rho"));
  m.def("purity", &purity, py::arg("rho"));
  m.def("min_eigenvalue", &min_eigenvalue, py::arg("rho"));
  m.def("write_density_csv", &write_density_csv, py::arg("path"), py::arg("rho"));
  m.def("read_density_csv", &read_density_csv, py::arg("path"), py::arg("q") = 0);

  // configs and scenarios
  py::class_<ProjectConfig>(m, "ProjectConfig")
      .def_readonly("source", &ProjectConfig::source)
      .def_readonly("field", &ProjectConfig::field)
      .def_readonly("samples_per_cycle", &ProjectConfig::samples_per_cycle)
      .def_readonly("engine", &ProjectConfig::engine);
  m.def("load_config", &load_config, py::arg("path"));
  m.def("parse_config", &parse_config, py::arg("text"), py::arg("source") = "<string>");
  m.def("compute_dipole", [](const ProjectConfig& c) { return to_array(compute_dipole(c).values); }, py::arg("config"));
  m.def("compute_spectrum", &compute_spectrum, py::arg("config"));
  m.def("compute_state", &compute_state, py::arg("config"));

  py::class_<ScenarioResult>(m, "ScenarioResult")
      .def_property_readonly("scenario", [](const ScenarioResult& r) { return std::string(to_string(r.id)); })
      .def_property_readonly("all_passed", &ScenarioResult::all_passed)
      .def_property_readonly("evidence", [](const ScenarioResult& r) { return json_to_py(evidence_json(r.id, r.records)); })
      .def_readonly("spectrum", &ScenarioResult::spectrum)
      .def_readonly("states", &ScenarioResult::states);

  m.def("run_scenario",
        [](const ProjectConfig& c) {
          py::gil_scoped_release release;
          return run_scenario(c.require_scenario());
        },
        py::arg("config"));
  m.def("emit_report", &emit_report, py::arg("result"), py::arg("out_root"));
}
