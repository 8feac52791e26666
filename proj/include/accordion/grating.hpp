#ifndef ACCORDION_GRATING_HPP
#define ACCORDION_GRATING_HPP

#include <complex>
#include <optional>
#include <vector>

namespace accordion {

using cdouble = std::complex<double>;

// Binary phase transmission grating. Ridges of height relief_nm cover the
// fraction [0, duty) of each period and impose a phase step; grooves transmit
// unchanged.
struct BinaryPhaseGrating {
    double period_um = 3.0;
    double duty = 0.5;
    double relief_nm = 390.0;
    double index_n0 = 2.0;

    void validate() const;
};

// Phase step between ridge and groove for a plate tilted by kappa about the
// axis transverse to the grating vector. Plane-parallel-plate excess path with
// Snell refraction in the ridge material:
//   sin(kappa) = n0 sin(theta_t),  OPD = h (n0 cos(theta_t) - cos(kappa)),
// which reduces to 2 pi h (n0 - 1) / lambda at kappa = 0.
double phase_depth(const BinaryPhaseGrating& g, double wavelength_nm, double kappa_rad = 0.0);

// Complex transmission at position x; periodic, unit modulus.
cdouble structure_function(const BinaryPhaseGrating& g, double x_um, double phase_phi);

// Coefficient a_m of the expansion f(x) = sum_m a_m exp(-2 pi i m x / d).
cdouble fourier_coefficient(const BinaryPhaseGrating& g, int m, double phase_phi);

// eta_m = |a_m|^2 via the closed form.
double diffraction_efficiency(const BinaryPhaseGrating& g, int m, double phase_phi);

// Far-field angle of order m from sin(xi_m) = -m lambda / d; nullopt when the
// order is evanescent.
std::optional<double> diffraction_angle(const BinaryPhaseGrating& g, int m, double wavelength_nm);

// Midpoint-rule estimate of a_m for m in [m_min, m_max]. The phase step limits
// convergence to O(1/N), so expect ~1e-3 agreement at 4096 samples/period.
std::vector<cdouble> fourier_coefficients_numeric(const BinaryPhaseGrating& g, double phase_phi,
                                                  int m_min, int m_max, int samples_per_period);

struct OrderEntry {
    int m = 0;
    cdouble a;
    double eta = 0.0;
    std::optional<double> xi_rad;  // absent when evanescent
};

// Order-by-order summary at a wavelength and tilt. Coefficients use the tilted
// phase depth; angles use the projected period d cos(kappa).
struct DiffractionOrderSpectrum {
    double wavelength_nm = 0.0;
    double kappa_rad = 0.0;
    double phase_phi = 0.0;
    double effective_period_um = 0.0;
    std::vector<OrderEntry> entries;
};

DiffractionOrderSpectrum order_spectrum(const BinaryPhaseGrating& g, double wavelength_nm,
                                        double kappa_rad, int max_order);

}  // namespace accordion

#endif
