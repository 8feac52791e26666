#ifndef ACCORDION_RELAY_HPP
#define ACCORDION_RELAY_HPP

#include <vector>

#include "accordion/field.hpp"

namespace accordion {

// Two-lens relay: hard aperture and order-selection windows at the Fourier
// plane, polynomial wavefront error for the imaging side, magnification f2/f1.
struct FourFRelay {
    double f1_mm = 200.0;
    double f2_mm = 100.0;
    std::vector<int> kept_orders = {-1, 1};
    double pupil_halfwidth_mm = 60.0;
    std::vector<double> pupil_phase;  // c_k, phase = sum_k c_k rho^k, rho in [-1, 1]

    double magnification() const { return f2_mm / f1_mm; }
    void validate() const;
};

struct LatticeProfile {
    double x0_um = 0.0;
    double dx_um = 1.0;
    std::vector<double> intensities;

    double x_at(std::size_t i) const { return x0_um + dx_um * static_cast<double>(i); }
};

// Fraunhofer propagation over distance z: the Fourier transform of the input
// mapped to x = u*lambda*z, with the constant and quadratic phase prefactors
// applied (pure phases; power is conserved exactly).
SampledField1D far_field(const SampledField1D& field, double z_mm);

// Filtered, aberrated relay from object plane to image plane. The grating
// period locates the diffraction-order windows at the Fourier plane.
SampledField1D relay_4f(const SampledField1D& field, const FourFRelay& relay,
                        double grating_period_um);

// Two-beam lattice intensity 16 E0^2/(pi^2 M^2) sin^2(2 pi x/(M d)).
double lattice_intensity_closed_form(double x_um, double magnification, double d_grt_um,
                                     double peak_amplitude);

// End-to-end: illuminate the (tilt-projected) grating, relay, take |E|^2.
LatticeProfile simulate_lattice(const BinaryPhaseGrating& g, const GaussianIllumination& illum,
                                const FourFRelay& relay, double kappa_rad, const Grid1D& grid);
LatticeProfile simulate_lattice(const BinaryPhaseGrating& g, const GaussianIllumination& illum,
                                const FourFRelay& relay, double kappa_rad = 0.0);

}  // namespace accordion

#endif
