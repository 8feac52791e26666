#include "accordion/field.hpp"

#include <cmath>
#include <string>

#include "accordion/errors.hpp"
#include "accordion/fft.hpp"

namespace accordion {

double SampledField1D::power() const {
    double acc = 0.0;
    for (const auto& a : amplitudes) acc += std::norm(a);
    return acc * dx_um;
}

void SampledField1D::validate() const {
    if (!std::isfinite(dx_um) || dx_um <= 0.0)
        throw DomainError("field: dx must be positive");
    if (!std::isfinite(wavelength_nm) || wavelength_nm <= 0.0)
        throw DomainError("field: wavelength must be positive");
    if (amplitudes.size() < 2 || !is_pow2(amplitudes.size()))
        throw ParameterError("field: sample count must be a power of two >= 2, got " +
                             std::to_string(amplitudes.size()));
    if (!std::isfinite(power()))
        throw DomainError("field: power is not finite");
}

void GaussianIllumination::validate() const {
    if (!std::isfinite(waist_mm) || waist_mm <= 0.0)
        throw DomainError("illumination: waist must be positive");
    if (!std::isfinite(peak_amplitude) || peak_amplitude < 0.0)
        throw DomainError("illumination: peak amplitude must be >= 0");
    if (!std::isfinite(wavelength_nm) || wavelength_nm <= 0.0)
        throw DomainError("illumination: wavelength must be positive");
}

Grid1D default_grid(const GaussianIllumination& illum, std::size_t samples, double span_waists) {
    illum.validate();
    if (!is_pow2(samples) || samples < 2)
        throw ParameterError("default_grid: sample count must be a power of two >= 2");
    if (!std::isfinite(span_waists) || span_waists <= 0.0)
        throw ParameterError("default_grid: span must be positive");
    const double span_um = span_waists * illum.waist_mm * 1e3;
    Grid1D grid;
    grid.count = samples;
    grid.dx_um = span_um / static_cast<double>(samples);
    grid.x0_um = -0.5 * span_um;
    return grid;
}

SampledField1D illuminate(const BinaryPhaseGrating& g, const GaussianIllumination& illum,
                          double phase_phi, const Grid1D& grid) {
    g.validate();
    illum.validate();
    if (grid.count < 2 || !is_pow2(grid.count))
        throw ParameterError("illuminate: grid count must be a power of two >= 2");
    if (!std::isfinite(grid.dx_um) || grid.dx_um <= 0.0)
        throw ParameterError("illuminate: grid dx must be positive");

    const double required_dx = g.period_um / 16.0;
    if (grid.dx_um > required_dx)
        throw ParameterError("illuminate: grid undersamples the grating; need dx <= " +
                             std::to_string(required_dx) + " um, got " +
                             std::to_string(grid.dx_um) + " um");
    const double span_um = grid.dx_um * static_cast<double>(grid.count);
    const double min_span = std::max(6.0 * illum.waist_mm * 1e3, 64.0 * g.period_um);
    if (span_um < min_span)
        throw ParameterError("illuminate: grid span " + std::to_string(span_um) +
                             " um is below the required " + std::to_string(min_span) + " um");

    SampledField1D field;
    field.x0_um = grid.x0_um;
    field.dx_um = grid.dx_um;
    field.wavelength_nm = illum.wavelength_nm;
    field.amplitudes.resize(grid.count);
    const double w_um = illum.waist_mm * 1e3;
    for (std::size_t i = 0; i < grid.count; ++i) {
        const double x = field.x_at(i);
        const double env = illum.peak_amplitude * std::exp(-(x * x) / (w_um * w_um));
        field.amplitudes[i] = env * structure_function(g, x, phase_phi);
    }
    return field;
}

}  // namespace accordion
