#ifndef ACCORDION_FIELD_HPP
#define ACCORDION_FIELD_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include "accordion/grating.hpp"

namespace accordion {

// Complex scalar field sampled on a uniform 1D grid. The sample count must be
// a power of two so transforms map frequencies unambiguously.
struct SampledField1D {
    double x0_um = 0.0;
    double dx_um = 1.0;
    double wavelength_nm = 775.0;
    std::vector<cdouble> amplitudes;

    double x_at(std::size_t i) const { return x0_um + dx_um * static_cast<double>(i); }
    double power() const;  // sum |a|^2 dx
    void validate() const;
};

struct GaussianIllumination {
    double waist_mm = 3.8;       // field 1/e radius w_x
    double peak_amplitude = 1.0;
    double wavelength_nm = 775.0;

    void validate() const;
};

struct Grid1D {
    double x0_um = 0.0;
    double dx_um = 1.0;
    std::size_t count = 0;
};

// Centered grid spanning span_waists Gaussian waists with a power-of-two
// sample count.
Grid1D default_grid(const GaussianIllumination& illum, std::size_t samples = std::size_t{1} << 18,
                    double span_waists = 8.0);

// Gaussian beam through the grating: peak * exp(-x^2/w^2) * structure_function(x).
SampledField1D illuminate(const BinaryPhaseGrating& g, const GaussianIllumination& illum,
                          double phase_phi, const Grid1D& grid);

}  // namespace accordion

#endif
