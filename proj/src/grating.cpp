#include "accordion/grating.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "accordion/errors.hpp"

namespace accordion {

namespace {
constexpr double kPi = std::numbers::pi;
}

void BinaryPhaseGrating::validate() const {
    if (!std::isfinite(period_um) || period_um <= 0.0)
        throw DomainError("grating: period must be positive, got " + std::to_string(period_um) + " um");
    if (!std::isfinite(duty) || duty <= 0.0 || duty >= 1.0)
        throw DomainError("grating: duty must lie in (0, 1), got " + std::to_string(duty));
    if (!std::isfinite(relief_nm) || relief_nm <= 0.0)
        throw DomainError("grating: relief depth must be positive");
    if (!std::isfinite(index_n0) || index_n0 <= 1.0)
        throw DomainError("grating: refractive index must exceed 1");
}

double phase_depth(const BinaryPhaseGrating& g, double wavelength_nm, double kappa_rad) {
    if (!std::isfinite(wavelength_nm) || wavelength_nm <= 0.0)
        throw DomainError("phase_depth: wavelength must be positive and finite");
    if (!std::isfinite(kappa_rad) || std::abs(kappa_rad) >= kPi / 2.0)
        throw DomainError("phase_depth: |kappa| must be below pi/2");
    const double sin_t = std::sin(kappa_rad) / g.index_n0;
    const double cos_t = std::sqrt(1.0 - sin_t * sin_t);
    const double opd_nm = g.relief_nm * (g.index_n0 * cos_t - std::cos(kappa_rad));
    return 2.0 * kPi * opd_nm / wavelength_nm;
}

cdouble structure_function(const BinaryPhaseGrating& g, double x_um, double phase_phi) {
    if (!std::isfinite(phase_phi) || !std::isfinite(x_um))
        throw DomainError("structure_function: inputs must be finite");
    const double t = x_um / g.period_um;
    const double frac = t - std::floor(t);
    if (frac < g.duty) return std::polar(1.0, phase_phi);
    return {1.0, 0.0};
}

cdouble fourier_coefficient(const BinaryPhaseGrating& g, int m, double phase_phi) {
    const double D = g.duty;
    if (m == 0) return D * std::polar(1.0, phase_phi) + (1.0 - D);
    // factored form of (1/d) * integral of f(x) exp(2 pi i m x / d) over one period
    const cdouble ridge = std::polar(1.0, phase_phi) - 1.0;
    const cdouble step = std::polar(1.0, 2.0 * kPi * m * D) - 1.0;
    return ridge * step / cdouble(0.0, 2.0 * kPi * m);
}

double diffraction_efficiency(const BinaryPhaseGrating& g, int m, double phase_phi) {
    if (m == 0) return std::norm(fourier_coefficient(g, 0, phase_phi));
    const double sd = std::sin(kPi * m * g.duty);
    const double sp = std::sin(0.5 * phase_phi);
    return 4.0 / (kPi * kPi * m * m) * sd * sd * sp * sp;
}

std::optional<double> diffraction_angle(const BinaryPhaseGrating& g, int m, double wavelength_nm) {
    if (!std::isfinite(wavelength_nm) || wavelength_nm <= 0.0)
        throw DomainError("diffraction_angle: wavelength must be positive and finite");
    const double s = -m * wavelength_nm * 1e-3 / g.period_um;
    if (std::abs(s) > 1.0) return std::nullopt;
    return std::asin(s);
}

std::vector<cdouble> fourier_coefficients_numeric(const BinaryPhaseGrating& g, double phase_phi,
                                                  int m_min, int m_max, int samples_per_period) {
    if (m_min > m_max)
        throw ParameterError("fourier_coefficients_numeric: empty order range");
    const int mabs = std::max(std::abs(m_min), std::abs(m_max));
    const int required = std::max(64, 8 * mabs);
    if (samples_per_period < required)
        throw ParameterError("fourier_coefficients_numeric: need >= " + std::to_string(required) +
                             " samples/period for orders up to " + std::to_string(mabs));

    const int n = samples_per_period;
    std::vector<cdouble> samples(n);
    for (int i = 0; i < n; ++i) {
        const double x = (i + 0.5) / n;  // midpoint rule, fraction of a period
        samples[i] = structure_function(g, x * g.period_um, phase_phi);
    }
    std::vector<cdouble> out;
    out.reserve(static_cast<std::size_t>(m_max - m_min + 1));
    for (int m = m_min; m <= m_max; ++m) {
        cdouble acc = 0.0;
        for (int i = 0; i < n; ++i) {
            const double x = (i + 0.5) / n;
            acc += samples[i] * std::polar(1.0, 2.0 * kPi * m * x);
        }
        out.push_back(acc / static_cast<double>(n));
    }
    return out;
}

DiffractionOrderSpectrum order_spectrum(const BinaryPhaseGrating& g, double wavelength_nm,
                                        double kappa_rad, int max_order) {
    if (max_order < 0) throw ParameterError("order_spectrum: max_order must be >= 0");
    DiffractionOrderSpectrum sp;
    sp.wavelength_nm = wavelength_nm;
    sp.kappa_rad = kappa_rad;
    sp.phase_phi = phase_depth(g, wavelength_nm, kappa_rad);
    sp.effective_period_um = g.period_um * std::cos(kappa_rad);

    BinaryPhaseGrating projected = g;
    projected.period_um = sp.effective_period_um;

    sp.entries.reserve(static_cast<std::size_t>(2 * max_order + 1));
    for (int m = -max_order; m <= max_order; ++m) {
        OrderEntry e;
        e.m = m;
        e.a = fourier_coefficient(g, m, sp.phase_phi);
        e.eta = diffraction_efficiency(g, m, sp.phase_phi);
        e.xi_rad = diffraction_angle(projected, m, wavelength_nm);
        sp.entries.push_back(e);
    }
    return sp;
}

}  // namespace accordion
