#include "accordion/relay.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>

#include "accordion/errors.hpp"
#include "accordion/fft.hpp"
#include "accordion/grating.hpp"

namespace accordion {

namespace {

constexpr double kPi = std::numbers::pi;

std::string mm_str(double um) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", um * 1e-3);
    return buf;
}

// Continuous-frequency spectrum of the samples, relabeled to the spatial
// coordinate x = u * scale (scale = lambda * z, um^2). Output grid is centered
// at zero frequency; the amplitude scale dx/sqrt(scale) keeps sum|a|^2 dx
// invariant, so each transform conserves power exactly.
SampledField1D spectral_transform(const SampledField1D& in, double scale_um2) {
    const std::size_t n = in.amplitudes.size();
    std::vector<cdouble> spec = in.amplitudes;
    fft(spec);

    SampledField1D out;
    out.wavelength_nm = in.wavelength_nm;
    out.dx_um = scale_um2 / (static_cast<double>(n) * in.dx_um);
    out.x0_um = -0.5 * static_cast<double>(n) * out.dx_um;
    out.amplitudes.resize(n);

    const double amp = in.dx_um / std::sqrt(scale_um2);
    const double du = 1.0 / (static_cast<double>(n) * in.dx_um);
    const long half = static_cast<long>(n / 2);
    for (long k = 0; k < static_cast<long>(n); ++k) {
        const long sk = k >= half ? k - static_cast<long>(n) : k;
        // shift theorem: spectrum referenced to the input origin x0
        const double u = du * static_cast<double>(sk);
        out.amplitudes[static_cast<std::size_t>(sk + half)] =
            std::polar(amp, -2.0 * kPi * u * in.x0_um) * spec[static_cast<std::size_t>(k)];
    }
    return out;
}

}  // namespace

void FourFRelay::validate() const {
    if (!std::isfinite(f1_mm) || f1_mm <= 0.0 || !std::isfinite(f2_mm) || f2_mm <= 0.0)
        throw ConfigError("relay: focal lengths must be positive");
    if (kept_orders.empty()) throw ConfigError("relay: kept_orders must be non-empty");
    std::vector<int> sorted = kept_orders;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ConfigError("relay: kept_orders contains a duplicate entry");
    if (!std::isfinite(pupil_halfwidth_mm) || pupil_halfwidth_mm <= 0.0)
        throw ConfigError("relay: pupil halfwidth must be positive");
    if (pupil_phase.size() > 8)
        throw ConfigError("relay: pupil phase polynomial supports degree <= 7");
    for (double c : pupil_phase)
        if (!std::isfinite(c)) throw ConfigError("relay: pupil phase coefficients must be finite");
}

SampledField1D far_field(const SampledField1D& field, double z_mm) {
    field.validate();
    if (!std::isfinite(z_mm) || z_mm <= 0.0)
        throw ParameterError("far_field: propagation distance must be positive");

    const double lambda_um = field.wavelength_nm * 1e-3;
    const double z_um = z_mm * 1e3;
    const double scale = lambda_um * z_um;

    SampledField1D out = spectral_transform(field, scale);
    // e^{ikz}/sqrt(i) plus the quadratic output phase of the 1D Fraunhofer
    // integral; both drop out of the intensity
    const double const_phase = std::fmod(2.0 * kPi * z_um / lambda_um, 2.0 * kPi) - 0.25 * kPi;
    for (std::size_t i = 0; i < out.amplitudes.size(); ++i) {
        const double x = out.x_at(i);
        out.amplitudes[i] *= std::polar(1.0, const_phase + kPi * x * x / scale);
    }
    return out;
}

SampledField1D relay_4f(const SampledField1D& field, const FourFRelay& relay,
                        double grating_period_um) {
    field.validate();
    relay.validate();
    if (!std::isfinite(grating_period_um) || grating_period_um <= 0.0)
        throw ParameterError("relay_4f: grating period must be positive");

    const double lambda_um = field.wavelength_nm * 1e-3;
    const double f1_um = relay.f1_mm * 1e3;
    const double f2_um = relay.f2_mm * 1e3;
    const double pupil_um = relay.pupil_halfwidth_mm * 1e3;
    const double spacing_um = lambda_um * f1_um / grating_period_um;  // order separation
    const double halfwin_um = 0.5 * spacing_um;

    for (int m : relay.kept_orders) {
        const double pos = -static_cast<double>(m) * spacing_um;
        if (std::abs(pos) >= pupil_um)
            throw ConfigError("relay_4f: kept order " + std::to_string(m) + " falls at " +
                              mm_str(pos) + " mm, outside the pupil halfwidth " +
                              mm_str(pupil_um) + " mm");
    }

    SampledField1D fourier = spectral_transform(field, lambda_um * f1_um);
    const std::size_t n = fourier.amplitudes.size();

    // half-open windows of one order separation, cropped by the hard aperture
    auto window_of = [&](double x) -> std::optional<int> {
        if (std::abs(x) > pupil_um) return std::nullopt;
        for (int m : relay.kept_orders) {
            const double center = -static_cast<double>(m) * spacing_um;
            if (x >= center - halfwin_um && x < center + halfwin_um) return m;
        }
        return std::nullopt;
    };

    const bool aberrated = std::any_of(relay.pupil_phase.begin(), relay.pupil_phase.end(),
                                       [](double c) { return c != 0.0; });

    if (!aberrated) {
        for (std::size_t i = 0; i < n; ++i)
            if (!window_of(fourier.x_at(i))) fourier.amplitudes[i] = 0.0;
        return spectral_transform(fourier, lambda_um * f2_um);
    }

    // Each kept order forms its own bundle through the imaging side: the rays
    // that land at image coordinate x crossed the imaging optics at height
    // x + x_m (x_m = the order's Fourier-plane position), so the wavefront
    // error is sampled per order at rho = (x + x_m)/pupil_halfwidth. Odd
    // polynomial terms curve the two interfering bundles oppositely (fringe
    // chirp); even terms produce only a uniform spacing change.
    SampledField1D image;
    bool first = true;
    for (int m : relay.kept_orders) {
        SampledField1D component = fourier;
        for (std::size_t i = 0; i < n; ++i) {
            const auto w = window_of(component.x_at(i));
            if (!w || *w != m) component.amplitudes[i] = 0.0;
        }
        SampledField1D img = spectral_transform(component, lambda_um * f2_um);
        const double center = -static_cast<double>(m) * spacing_um;
        for (std::size_t i = 0; i < n; ++i) {
            const double rho = (img.x_at(i) + center) / pupil_um;
            double phase = 0.0;
            double p = 1.0;
            for (double c : relay.pupil_phase) {
                phase += c * p;
                p *= rho;
            }
            img.amplitudes[i] *= std::polar(1.0, phase);
        }
        if (first) {
            image = std::move(img);
            first = false;
        } else {
            for (std::size_t i = 0; i < n; ++i) image.amplitudes[i] += img.amplitudes[i];
        }
    }
    return image;
}

double lattice_intensity_closed_form(double x_um, double magnification, double d_grt_um,
                                     double peak_amplitude) {
    if (!std::isfinite(magnification) || magnification <= 0.0)
        throw DomainError("lattice_intensity_closed_form: magnification must be positive");
    if (!std::isfinite(d_grt_um) || d_grt_um <= 0.0)
        throw DomainError("lattice_intensity_closed_form: grating period must be positive");
    const double s = std::sin(2.0 * kPi * x_um / (magnification * d_grt_um));
    const double e0sq = peak_amplitude * peak_amplitude;
    return 16.0 * e0sq / (kPi * kPi * magnification * magnification) * s * s;
}

LatticeProfile simulate_lattice(const BinaryPhaseGrating& g, const GaussianIllumination& illum,
                                const FourFRelay& relay, double kappa_rad, const Grid1D& grid) {
    const double phi = phase_depth(g, illum.wavelength_nm, kappa_rad);
    BinaryPhaseGrating projected = g;
    projected.period_um = g.period_um * std::cos(kappa_rad);

    SampledField1D obj = illuminate(projected, illum, phi, grid);
    SampledField1D img = relay_4f(obj, relay, projected.period_um);

    LatticeProfile prof;
    prof.x0_um = img.x0_um;
    prof.dx_um = img.dx_um;
    prof.intensities.resize(img.amplitudes.size());
    for (std::size_t i = 0; i < img.amplitudes.size(); ++i)
        prof.intensities[i] = std::norm(img.amplitudes[i]);
    return prof;
}

LatticeProfile simulate_lattice(const BinaryPhaseGrating& g, const GaussianIllumination& illum,
                                const FourFRelay& relay, double kappa_rad) {
    return simulate_lattice(g, illum, relay, kappa_rad, default_grid(illum));
}

}  // namespace accordion
