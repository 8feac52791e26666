#ifndef ACCORDION_DESIGN_HPP
#define ACCORDION_DESIGN_HPP

#include <utility>
#include <vector>

#include "accordion/grating.hpp"

namespace accordion {

// One plate, many grating rows: row j has period d0 + j*delta.
struct PlateDesign {
    double d0_um = 3.0;
    double delta_nm = 20.0;
    int j_min = 0;
    int j_max = 250;
    double row_width_um = 100.0;
    double row_length_mm = 10.0;

    void validate() const;
    double period_um(int j) const;
};

struct TuningSolution {
    int j = 0;
    double kappa_rad = 0.0;
    double predicted_spacing_nm = 0.0;
    double efficiency_penalty = 0.0;  // fractional first-order loss vs. untilted
};

// Lattice spacing (nm) produced by row j at tilt kappa: (M/2) cos(kappa) (d0 + j delta).
double designed_spacing(const PlateDesign& plate, int j, double magnification, double kappa_rad);

// Smallest row j whose untilted spacing reaches target_nm, tilted down onto the
// target. `material` supplies duty/relief/index for the efficiency penalty; its
// period field is ignored (each row sets its own).
TuningSolution select_grating(const PlateDesign& plate, double target_nm, double magnification,
                              double kappa_max_rad, const BinaryPhaseGrating& material,
                              double wavelength_nm);

// Sorted disjoint open intervals (nm) of spacings no row reaches with
// |kappa| <= kappa_max. Empty when the tilt range closes every inter-row gap.
std::vector<std::pair<double, double>> coverage_report(const PlateDesign& plate,
                                                       double magnification,
                                                       double kappa_max_rad);

}  // namespace accordion

#endif
