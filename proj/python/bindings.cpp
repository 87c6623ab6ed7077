#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "supersplit/cavity.hpp"
#include "supersplit/collective.hpp"
#include "supersplit/io.hpp"
#include "supersplit/oracle.hpp"
#include "supersplit/spectrum.hpp"

namespace py = pybind11;
using namespace supersplit;

PYBIND11_MODULE(_supersplit, m) {
    m.doc() = "Collective two-pole emission spectra of magnetically split "
              "superradiant ensembles, with a thin-film cavity mapping.";
    m.attr("__version__") = kToolVersion;
    m.attr("DEGENERACY_TOL") = kDegeneracyTol;
    m.attr("DEFAULT_POINTS") = kDefaultPoints;

    py::class_<CollectiveParams>(m, "CollectiveParams")
        .def(py::init([](double gamma, double big_gamma, double lamb_shift,
                         double phi) {
                 return CollectiveParams::make(gamma, big_gamma, lamb_shift, phi);
             }),
             py::arg("gamma") = 1.0, py::arg("big_gamma") = 1.0,
             py::arg("lamb_shift") = 0.0, py::arg("phi") = 0.0)
        .def_readonly("gamma", &CollectiveParams::gamma)
        .def_readonly("big_gamma", &CollectiveParams::big_gamma)
        .def_readonly("lamb_shift", &CollectiveParams::lamb_shift)
        .def_readonly("phi", &CollectiveParams::phi)
        .def("__repr__", [](const CollectiveParams& p) {
            std::ostringstream s;
            s << "CollectiveParams(gamma=" << p.gamma << ", big_gamma=" << p.big_gamma
              << ", lamb_shift=" << p.lamb_shift << ", phi=" << p.phi << ")";
            return s.str();
        });

    py::class_<EigenSystem>(m, "EigenSystem")
        .def_readonly("lambda_plus", &EigenSystem::lambda_plus)
        .def_readonly("lambda_minus", &EigenSystem::lambda_minus)
        .def_readonly("a_plus", &EigenSystem::a_plus)
        .def_readonly("a_minus", &EigenSystem::a_minus)
        .def_readonly("delta_plus", &EigenSystem::delta_plus)
        .def_readonly("delta_minus", &EigenSystem::delta_minus)
        .def_readonly("x_param", &EigenSystem::x_param)
        .def_readonly("y_param", &EigenSystem::y_param)
        .def_readonly("x_defined", &EigenSystem::x_defined)
        .def_readonly("degenerate", &EigenSystem::degenerate)
        .def("pole_splitting", &EigenSystem::pole_splitting);

    m.def("collective_eigenvalues", &collective_eigenvalues, py::arg("params"));
    m.def(
        "regime_parameters",
        [](const CollectiveParams& p) {
            const RegimeParams r = regime_parameters(p);
            return py::make_tuple(r.x ? py::cast(*r.x) : py::none(), r.y);
        },
        py::arg("params"));

    py::enum_<ExtremumKind>(m, "ExtremumKind")
        .value("maximum", ExtremumKind::maximum)
        .value("minimum", ExtremumKind::minimum);

    py::class_<Extremum>(m, "Extremum")
        .def_readonly("position", &Extremum::position)
        .def_readonly("value", &Extremum::value)
        .def_readonly("kind", &Extremum::kind);

    py::class_<SpectrumGrid>(m, "SpectrumGrid")
        .def_readonly("delta_values", &SpectrumGrid::delta_values)
        .def_readonly("intensity", &SpectrumGrid::intensity)
        .def_readonly("extrema", &SpectrumGrid::extrema)
        .def_readonly("normalized", &SpectrumGrid::normalized);

    m.def("spectral_amplitude", &spectral_amplitude, py::arg("eig"), py::arg("delta"));
    m.def("spectral_amplitude_fraction", &spectral_amplitude_fraction,
          py::arg("eig"), py::arg("delta"));
    m.def("degenerate_amplitude", &degenerate_amplitude, py::arg("params"),
          py::arg("delta"));
    m.def("default_span", &default_span, py::arg("params"));
    m.def("radiation_spectrum", &radiation_spectrum, py::arg("params"),
          py::arg("span"), py::arg("n_points") = kDefaultPoints,
          py::arg("normalize") = false);

    py::class_<SplittingReport>(m, "SplittingReport")
        .def_readonly("splitting", &SplittingReport::splitting)
        .def_readonly("midpoint", &SplittingReport::midpoint)
        .def_readonly("height_ratio", &SplittingReport::height_ratio)
        .def_readonly("n_maxima", &SplittingReport::n_maxima);

    m.def("measure_splitting", &measure_splitting, py::arg("grid"));

    py::enum_<AsymptoticRegime>(m, "AsymptoticRegime")
        .value("BROAD_NARROW", AsymptoticRegime::broad_narrow)
        .value("ZEEMAN_LIKE", AsymptoticRegime::zeeman_like)
        .value("LARGE_L", AsymptoticRegime::large_lamb_shift);

    py::class_<AsymptoticPoles>(m, "AsymptoticPoles")
        .def_readonly("delta_plus", &AsymptoticPoles::delta_plus)
        .def_readonly("delta_minus", &AsymptoticPoles::delta_minus)
        .def_readonly("a_plus", &AsymptoticPoles::a_plus)
        .def_readonly("a_minus", &AsymptoticPoles::a_minus)
        .def_readonly("in_range", &AsymptoticPoles::in_range);

    m.def("asymptotic_poles", &asymptotic_poles, py::arg("params"), py::arg("regime"));

    py::enum_<RegimeLabel>(m, "RegimeLabel")
        .value("EIT_LIKE", RegimeLabel::eit_like)
        .value("ZEEMAN_LIKE", RegimeLabel::zeeman_like)
        .value("ANOMALOUS_COLLECTIVE", RegimeLabel::anomalous_collective)
        .value("DEGENERATE", RegimeLabel::degenerate)
        .value("UNCLASSIFIED", RegimeLabel::unclassified);

    py::class_<RegimeReport>(m, "RegimeReport")
        .def_readonly("label", &RegimeReport::label)
        .def_property_readonly(
            "x", [](const RegimeReport& r) {
                return r.x ? py::cast(*r.x) : py::none();
            })
        .def_readonly("y", &RegimeReport::y)
        .def_readonly("eit_lower", &RegimeReport::eit_lower)
        .def_readonly("eit_upper", &RegimeReport::eit_upper)
        .def_readonly("measured_splitting", &RegimeReport::measured_splitting)
        .def_readonly("predicted_splitting", &RegimeReport::predicted_splitting);

    m.def(
        "classify_regime",
        [](const CollectiveParams& p) { return classify_regime(p); },
        py::arg("params"));

    // Oracle (dense matrix validation).
    auto oracle_mod = m.def_submodule("oracle", "dense N-emitter matrix oracle");
    py::class_<oracle::EnsembleMatrix>(oracle_mod, "EnsembleMatrix")
        .def_readonly("n1", &oracle::EnsembleMatrix::n1)
        .def_readonly("n2", &oracle::EnsembleMatrix::n2)
        .def_readonly("coupling", &oracle::EnsembleMatrix::coupling)
        .def_property_readonly("entries", [](const oracle::EnsembleMatrix& mat) {
            std::vector<std::vector<Complex>> rows;
            rows.reserve(mat.entries.rows());
            for (Eigen::Index j = 0; j < mat.entries.rows(); ++j) {
                std::vector<Complex> row;
                row.reserve(mat.entries.cols());
                for (Eigen::Index k = 0; k < mat.entries.cols(); ++k)
                    row.push_back(mat.entries(j, k));
                rows.push_back(std::move(row));
            }
            return rows;
        });
    oracle_mod.def("build_matrix", &oracle::build_matrix, py::arg("params"),
                   py::arg("n1"), py::arg("n2"), py::arg("cross_sign") = 1);
    oracle_mod.def("symmetric_subspace_eigenvalues",
                   &oracle::symmetric_subspace_eigenvalues, py::arg("matrix"));
    oracle_mod.def("dense_eigenvalues", &oracle::dense_eigenvalues, py::arg("matrix"));
    py::class_<oracle::OracleEvolution>(oracle_mod, "OracleEvolution")
        .def_readonly("grid", &oracle::OracleEvolution::grid)
        .def_readonly("times", &oracle::OracleEvolution::times)
        .def_readonly("population", &oracle::OracleEvolution::population)
        .def_readonly("modes", &oracle::OracleEvolution::modes)
        .def_readonly("weights", &oracle::OracleEvolution::weights)
        .def_readonly("condition_estimate",
                      &oracle::OracleEvolution::condition_estimate)
        .def_readonly("ill_conditioned", &oracle::OracleEvolution::ill_conditioned);
    oracle_mod.def("evolve_and_spectrum", &oracle::evolve_and_spectrum,
                   py::arg("matrix"), py::arg("t_max"), py::arg("deltas"));

    // Cavity mapping.
    auto cav = m.def_submodule("cavity", "thin-film cavity mapping");
    py::register_exception<cavity::ConfigError>(cav, "ConfigError");
    py::register_exception<cavity::CalibrationError>(cav, "CalibrationError");
    py::class_<cavity::CavityConfig>(cav, "CavityConfig")
        .def(py::init<>())
        .def_readwrite("phi0", &cavity::CavityConfig::phi0)
        .def_readwrite("omega_over_gamma", &cavity::CavityConfig::omega_over_gamma)
        .def_readwrite("kappa", &cavity::CavityConfig::kappa)
        .def_readwrite("coupling_C", &cavity::CavityConfig::coupling_C)
        .def_readwrite("b_to_phi", &cavity::CavityConfig::b_to_phi)
        .def_readwrite("r_el_mag", &cavity::CavityConfig::r_el_mag)
        .def_readwrite("r_el_phase", &cavity::CavityConfig::r_el_phase)
        .def_readwrite("q_mag", &cavity::CavityConfig::q_mag)
        .def_readwrite("q_phase", &cavity::CavityConfig::q_phase)
        .def("field_coefficient", &cavity::CavityConfig::field_coefficient)
        .def("channel_weight", &cavity::CavityConfig::channel_weight);
    cav.def("default_b_pairs", [] { return cavity::default_b_pairs(); });
    cav.def("fit_b_coefficient", &cavity::fit_b_coefficient, py::arg("pairs"));
    cav.def("detuning_from_angle", &cavity::detuning_from_angle, py::arg("config"),
            py::arg("delta_phi_rad"));
    cav.def("r_electronic", &cavity::r_electronic, py::arg("config"),
            py::arg("delta_phi_rad"));
    cav.def("collective_params_from_cavity", &cavity::collective_params_from_cavity,
            py::arg("config"), py::arg("delta_phi_rad"), py::arg("b_tesla"));
    cav.def("calibrate", &cavity::calibrate, py::arg("config"), py::arg("target_L"),
            py::arg("at_delta_phi_rad"));
    cav.def("reflectivity_spectrum", &cavity::reflectivity_spectrum,
            py::arg("config"), py::arg("delta_phi_rad"), py::arg("b_tesla"),
            py::arg("span"), py::arg("n_points") = kDefaultPoints,
            py::arg("normalize") = false);
    py::class_<cavity::DipReport>(cav, "DipReport")
        .def_readonly("n_dips", &cavity::DipReport::n_dips)
        .def_readonly("separation", &cavity::DipReport::separation)
        .def_readonly("position_lo", &cavity::DipReport::position_lo)
        .def_readonly("position_hi", &cavity::DipReport::position_hi)
        .def_readonly("depth_lo", &cavity::DipReport::depth_lo)
        .def_readonly("depth_hi", &cavity::DipReport::depth_hi)
        .def_readonly("baseline", &cavity::DipReport::baseline);
    cav.def("measure_dips", &cavity::measure_dips, py::arg("grid"),
            py::arg("baseline"));
    cav.def("load_config", &cavity::load_config, py::arg("path"));
    cav.def("default_config_text", &cavity::default_config_text);
}
