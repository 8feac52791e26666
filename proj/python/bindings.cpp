#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "accordion/analysis.hpp"
#include "accordion/config.hpp"
#include "accordion/design.hpp"
#include "accordion/errors.hpp"
#include "accordion/field.hpp"
#include "accordion/grating.hpp"
#include "accordion/relay.hpp"

namespace py = pybind11;
using namespace accordion;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Binary-phase-grating accordion lattice simulation and analysis";

    // exception translators run newest-first, so register the base first
    py::register_exception<Error>(m, "AccordionError", PyExc_RuntimeError);
    py::register_exception<DesignError>(m, "DesignError", PyExc_RuntimeError);
    py::register_exception<FitError>(m, "FitError", PyExc_RuntimeError);

    py::class_<BinaryPhaseGrating>(m, "BinaryPhaseGrating")
        .def(py::init<>())
        .def_readwrite("period_um", &BinaryPhaseGrating::period_um)
        .def_readwrite("duty", &BinaryPhaseGrating::duty)
        .def_readwrite("relief_nm", &BinaryPhaseGrating::relief_nm)
        .def_readwrite("index_n0", &BinaryPhaseGrating::index_n0);

    py::class_<GaussianIllumination>(m, "GaussianIllumination")
        .def(py::init<>())
        .def_readwrite("waist_mm", &GaussianIllumination::waist_mm)
        .def_readwrite("peak_amplitude", &GaussianIllumination::peak_amplitude)
        .def_readwrite("wavelength_nm", &GaussianIllumination::wavelength_nm);

    py::class_<Grid1D>(m, "Grid1D")
        .def(py::init<>())
        .def_readwrite("x0_um", &Grid1D::x0_um)
        .def_readwrite("dx_um", &Grid1D::dx_um)
        .def_readwrite("count", &Grid1D::count);

    py::class_<SampledField1D>(m, "SampledField1D")
        .def(py::init<>())
        .def_readwrite("x0_um", &SampledField1D::x0_um)
        .def_readwrite("dx_um", &SampledField1D::dx_um)
        .def_readwrite("wavelength_nm", &SampledField1D::wavelength_nm)
        .def_readwrite("amplitudes", &SampledField1D::amplitudes)
        .def("power", &SampledField1D::power)
        .def("x_at", &SampledField1D::x_at);

    py::class_<FourFRelay>(m, "FourFRelay")
        .def(py::init<>())
        .def_readwrite("f1_mm", &FourFRelay::f1_mm)
        .def_readwrite("f2_mm", &FourFRelay::f2_mm)
        .def_readwrite("kept_orders", &FourFRelay::kept_orders)
        .def_readwrite("pupil_halfwidth_mm", &FourFRelay::pupil_halfwidth_mm)
        .def_readwrite("pupil_phase", &FourFRelay::pupil_phase)
        .def("magnification", &FourFRelay::magnification);

    py::class_<LatticeProfile>(m, "LatticeProfile")
        .def(py::init<>())
        .def_readwrite("x0_um", &LatticeProfile::x0_um)
        .def_readwrite("dx_um", &LatticeProfile::dx_um)
        .def_readwrite("intensities", &LatticeProfile::intensities)
        .def("x_at", &LatticeProfile::x_at);

    py::class_<PlateDesign>(m, "PlateDesign")
        .def(py::init<>())
        .def_readwrite("d0_um", &PlateDesign::d0_um)
        .def_readwrite("delta_nm", &PlateDesign::delta_nm)
        .def_readwrite("j_min", &PlateDesign::j_min)
        .def_readwrite("j_max", &PlateDesign::j_max)
        .def_readwrite("row_width_um", &PlateDesign::row_width_um)
        .def_readwrite("row_length_mm", &PlateDesign::row_length_mm)
        .def("period_um", &PlateDesign::period_um);

    py::class_<TuningSolution>(m, "TuningSolution")
        .def_readonly("j", &TuningSolution::j)
        .def_readonly("kappa_rad", &TuningSolution::kappa_rad)
        .def_readonly("predicted_spacing_nm", &TuningSolution::predicted_spacing_nm)
        .def_readonly("efficiency_penalty", &TuningSolution::efficiency_penalty);

    py::class_<IntensityImage>(m, "IntensityImage")
        .def(py::init<>())
        .def_readwrite("width", &IntensityImage::width)
        .def_readwrite("height", &IntensityImage::height)
        .def_readwrite("pixel_pitch_um", &IntensityImage::pixel_pitch_um)
        .def_readwrite("pixels", &IntensityImage::pixels);

    py::class_<SinusoidFit>(m, "SinusoidFit")
        .def_readonly("offset", &SinusoidFit::offset)
        .def_readonly("amplitude", &SinusoidFit::amplitude)
        .def_readonly("spacing_nm", &SinusoidFit::spacing_nm)
        .def_readonly("phase_rad", &SinusoidFit::phase_rad)
        .def_readonly("rms_residual", &SinusoidFit::rms_residual)
        .def_readonly("iterations", &SinusoidFit::iterations);

    py::class_<ChirpFit>(m, "ChirpFit")
        .def_readonly("center_spacing_nm", &ChirpFit::center_spacing_nm)
        .def_readonly("chirp_nm_per_mm", &ChirpFit::chirp_nm_per_mm)
        .def_readonly("chirp_uncertainty_nm_per_mm", &ChirpFit::chirp_uncertainty_nm_per_mm);

    py::class_<LinearFit>(m, "LinearFit")
        .def_readonly("intercept_nm", &LinearFit::intercept_nm)
        .def_readonly("slope_nm", &LinearFit::slope_nm)
        .def_readonly("intercept_se_nm", &LinearFit::intercept_se_nm)
        .def_readonly("slope_se_nm", &LinearFit::slope_se_nm);

    py::class_<TiltSample>(m, "TiltSample")
        .def(py::init([](int j, double kappa_rad, double spacing_nm) {
                 TiltSample s;
                 s.j = j;
                 s.kappa_rad = kappa_rad;
                 s.spacing_nm = spacing_nm;
                 return s;
             }),
             py::arg("j"), py::arg("kappa_rad"), py::arg("spacing_nm"))
        .def_readwrite("j", &TiltSample::j)
        .def_readwrite("kappa_rad", &TiltSample::kappa_rad)
        .def_readwrite("spacing_nm", &TiltSample::spacing_nm);

    py::class_<TiltFit>(m, "TiltFit")
        .def_readonly("md0_over_2_nm", &TiltFit::md0_over_2_nm)
        .def_readonly("mdelta_over_2_nm", &TiltFit::mdelta_over_2_nm)
        .def_readonly("md0_se_nm", &TiltFit::md0_se_nm)
        .def_readonly("mdelta_se_nm", &TiltFit::mdelta_se_nm);

    m.def("phase_depth", &phase_depth, py::arg("grating"), py::arg("wavelength_nm"),
          py::arg("kappa_rad") = 0.0);
    m.def("fourier_coefficient", &fourier_coefficient, py::arg("grating"), py::arg("m"),
          py::arg("phase_phi"));
    m.def("diffraction_efficiency", &diffraction_efficiency, py::arg("grating"), py::arg("m"),
          py::arg("phase_phi"));
    m.def("diffraction_angle", &diffraction_angle, py::arg("grating"), py::arg("m"),
          py::arg("wavelength_nm"));
    m.def("fourier_coefficients_numeric", &fourier_coefficients_numeric, py::arg("grating"),
          py::arg("phase_phi"), py::arg("m_min"), py::arg("m_max"),
          py::arg("samples_per_period"));

    m.def("default_grid", &default_grid, py::arg("illumination"),
          py::arg("samples") = std::size_t{1} << 18, py::arg("span_waists") = 8.0);
    m.def("illuminate", &illuminate, py::arg("grating"), py::arg("illumination"),
          py::arg("phase_phi"), py::arg("grid"));
    m.def("far_field", &far_field, py::arg("field"), py::arg("z_mm"));
    m.def("relay_4f", &relay_4f, py::arg("field"), py::arg("relay"),
          py::arg("grating_period_um"));
    m.def("lattice_intensity_closed_form", &lattice_intensity_closed_form, py::arg("x_um"),
          py::arg("magnification"), py::arg("d_grt_um"), py::arg("peak_amplitude"));
    m.def("simulate_lattice",
          py::overload_cast<const BinaryPhaseGrating&, const GaussianIllumination&,
                            const FourFRelay&, double, const Grid1D&>(&simulate_lattice),
          py::arg("grating"), py::arg("illumination"), py::arg("relay"), py::arg("kappa_rad"),
          py::arg("grid"));
    m.def("simulate_lattice",
          py::overload_cast<const BinaryPhaseGrating&, const GaussianIllumination&,
                            const FourFRelay&, double>(&simulate_lattice),
          py::arg("grating"), py::arg("illumination"), py::arg("relay"),
          py::arg("kappa_rad") = 0.0);

    m.def("designed_spacing", &designed_spacing, py::arg("plate"), py::arg("j"),
          py::arg("magnification"), py::arg("kappa_rad"));
    m.def("select_grating", &select_grating, py::arg("plate"), py::arg("target_nm"),
          py::arg("magnification"), py::arg("kappa_max_rad"), py::arg("material"),
          py::arg("wavelength_nm"));
    m.def("coverage_report", &coverage_report, py::arg("plate"), py::arg("magnification"),
          py::arg("kappa_max_rad"));

    m.def(
        "integrate_columns",
        [](const IntensityImage& image, const IntensityImage* background) {
            return integrate_columns(image, background);
        },
        py::arg("image"), py::arg("background") = nullptr);
    m.def("fit_sinusoid", &fit_sinusoid, py::arg("profile"),
          py::arg("window_um") = std::nullopt);
    m.def("contrast", &contrast, py::arg("fit"));
    m.def("local_spacing", &local_spacing, py::arg("profile"), py::arg("window_width_um"),
          py::arg("stride_um"));
    m.def("chirp_fit", &chirp_fit, py::arg("spacing_by_x"));
    m.def("fit_spacing_vs_index", &fit_spacing_vs_index, py::arg("spacing_by_j"));
    m.def("fit_spacing_vs_tilt", &fit_spacing_vs_tilt, py::arg("samples"));

#ifdef VERSION_INFO
    m.attr("__version__") = VERSION_INFO;
#else
    m.attr("__version__") = "dev";
#endif
}
