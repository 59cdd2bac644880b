#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gi/detection.hpp"
#include "gi/interferometer.hpp"
#include "gi/io.hpp"
#include "gi/optimize.hpp"
#include "gi/qfi.hpp"

namespace py = pybind11;
using namespace gi;

PYBIND11_MODULE(_gaussint, m) {
    m.doc() = "Gaussian two-mode interferometry: states, QFI, photocurrents, sweeps";

    py::register_exception<gi::error>(m, "GiError");

    py::class_<GaussianState>(m, "GaussianState")
        .def_readonly("n_modes", &GaussianState::n_modes)
        .def_readonly("mean", &GaussianState::mean)
        .def_readonly("cov", &GaussianState::cov);

    py::class_<SymplecticMap>(m, "SymplecticMap")
        .def_readonly("matrix", &SymplecticMap::matrix)
        .def_readonly("displacement", &SymplecticMap::displacement);

    py::class_<NumberMoments>(m, "NumberMoments")
        .def_readonly("na", &NumberMoments::na)
        .def_readonly("nb", &NumberMoments::nb)
        .def_readonly("var_na", &NumberMoments::var_na)
        .def_readonly("var_nb", &NumberMoments::var_nb)
        .def_readonly("cov_nab", &NumberMoments::cov_nab)
        .def_readonly("X", &NumberMoments::X)
        .def_readonly("cov_NX", &NumberMoments::cov_NX)
        .def_readonly("var_X", &NumberMoments::var_X);

    py::class_<PhotocurrentStats>(m, "PhotocurrentStats")
        .def_readonly("mean", &PhotocurrentStats::mean)
        .def_readonly("variance", &PhotocurrentStats::variance);

    m.def("vacuum", &vacuum, py::arg("n_modes"));
    m.def("displaced_squeezed", &displaced_squeezed, py::arg("alpha"), py::arg("xi"));
    m.def("tensor", &tensor);
    m.def("beam_splitter", &beam_splitter, py::arg("nu"), py::arg("n_modes") = 2,
          py::arg("modes") = std::pair<int, int>{0, 1});
    m.def("two_mode_squeezer", &two_mode_squeezer, py::arg("zeta"), py::arg("n_modes") = 2,
          py::arg("modes") = std::pair<int, int>{0, 1});
    m.def("phase_shift", &phase_shift, py::arg("phi"), py::arg("n_modes") = 2,
          py::arg("mode") = 0);
    m.def("apply", &apply);
    m.def("loss_channel", &loss_channel, py::arg("eta"), py::arg("mode"), py::arg("state"));
    m.def("number_moments", &number_moments, py::arg("state"), py::arg("mode_a") = 0,
          py::arg("mode_b") = 1);
    m.def("mean_total_photons", &mean_total_photons);
    m.def("is_pure", &is_pure, py::arg("state"), py::arg("tol") = 1e-9);
    m.def("omega", &omega);

    m.def("williamson", [](const Mat& cov) {
        const SymplecticSpectrum ws = williamson(cov);
        return py::make_tuple(ws.lambdas, ws.S.matrix);
    });
    m.def(
        "qfi",
        [](const GaussianState& s, const Mat& dcov, const Vec& dmean) {
            return qfi(s, StateDerivative{dcov, dmean});
        },
        py::arg("state"), py::arg("dcov"), py::arg("dmean"));
    m.def("qfi_phase", [](const GaussianState& s, int mode) {
        const auto builder = [&](double) { return s; };
        return qfi(s, phase_family_derivative(builder, 0.0, DerivMode::analytic, 1e-5, mode));
    }, py::arg("state"), py::arg("mode") = 0);
    m.def("qfi_passive_closed", &qfi_passive_closed);
    m.def("qfi_active_closed", &qfi_active_closed);
    m.def("qfi_passive_max", &qfi_passive_max);
    m.def("cramer_rao", &cramer_rao);

    m.def("difference_current", &difference_current);
    m.def("sum_current", &sum_current);
    m.def("sum_current_after_opa", &sum_current_after_opa);
    m.def("loss_compensation_factor", &loss_compensation_factor);

    py::class_<PassiveInputParams>(m, "PassiveInputParams")
        .def(py::init<double, double, double, double, double>(), py::arg("n_tot"),
             py::arg("delta"), py::arg("beta_tot"), py::arg("beta"), py::arg("theta"))
        .def_readwrite("n_tot", &PassiveInputParams::n_tot)
        .def_readwrite("delta", &PassiveInputParams::delta)
        .def_readwrite("beta_tot", &PassiveInputParams::beta_tot)
        .def_readwrite("beta", &PassiveInputParams::beta)
        .def_readwrite("theta", &PassiveInputParams::theta);
    py::class_<ActiveInputParams>(m, "ActiveInputParams")
        .def(py::init<double, double, double, double>(), py::arg("n_tot"), py::arg("delta"),
             py::arg("beta"), py::arg("theta"))
        .def_readwrite("n_tot", &ActiveInputParams::n_tot)
        .def_readwrite("delta", &ActiveInputParams::delta)
        .def_readwrite("beta", &ActiveInputParams::beta)
        .def_readwrite("theta", &ActiveInputParams::theta);
    py::class_<Configuration>(m, "Configuration");

    m.def("make_pp", &make_pp, py::arg("params"), py::arg("eta") = 1.0);
    m.def("make_pa", &make_pa, py::arg("params"), py::arg("r2"), py::arg("eta") = 1.0);
    m.def("make_ap", &make_ap, py::arg("params"), py::arg("eta") = 1.0);
    m.def("make_aa", &make_aa, py::arg("params"), py::arg("r2"), py::arg("eta") = 1.0);
    m.def("build_output_state", &build_output_state);
    m.def("build_pre_phase_state", &build_pre_phase_state);
    m.def("sensitivity_of", &sensitivity_of, py::arg("config"), py::arg("phi"),
          py::arg("eta") = 1.0);
    m.def("s1_pp_closed", &s1_pp_closed, py::arg("n_tot"), py::arg("beta_tot"),
          py::arg("beta"));
    m.def("s_eta_pp_low_energy", &s_eta_pp_low_energy);
    m.def("s_eta_pp_high_energy", [](double n, double eta) {
        const HighEnergySensitivity h = s_eta_pp_high_energy(n, eta);
        return py::make_tuple(h.value, h.expansion_breakdown);
    });
    m.def("s_eta_ap_closed", &s_eta_ap_closed);
    m.def("s1_aa_closed", &s1_aa_closed);
    m.def("s1_aa_optimal", &s1_aa_optimal);

    m.def(
        "minimize",
        [](const std::function<double(const Vec&)>& f,
           const std::vector<std::pair<std::string, std::pair<double, double>>>& box_spec) {
            SearchBox box;
            for (const auto& [name, b] : box_spec) box.add(name, b.first, b.second);
            const MinimizeResult r = minimize(f, box);
            return py::make_tuple(r.x, r.value);
        },
        py::arg("objective"), py::arg("box"));
}
