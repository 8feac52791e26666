#ifndef ACCORDION_ANALYSIS_HPP
#define ACCORDION_ANALYSIS_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "accordion/errors.hpp"
#include "accordion/relay.hpp"

namespace accordion {

// Row-major camera frame; pixel_pitch_um is the pitch mapped back to the
// profile coordinate (i.e. camera pitch / any imaging scale already folded in).
struct IntensityImage {
    std::size_t width = 0;
    std::size_t height = 0;
    double pixel_pitch_um = 1.0;
    std::vector<double> pixels;

    double at(std::size_t row, std::size_t col) const { return pixels[row * width + col]; }
    void validate() const;
};

struct SinusoidFit {
    double offset = 0.0;
    double amplitude = 0.0;
    double spacing_nm = 0.0;
    double phase_rad = 0.0;   // model: offset + amplitude * cos(2 pi x / d + phase)
    double rms_residual = 0.0;
    int iterations = 0;
};

// Raised when the spacing refinement exhausts its iteration budget; the best
// iterate seen rides along for diagnostics.
class SinusoidFitError : public FitError {
public:
    SinusoidFitError(const std::string& msg, SinusoidFit best_seen)
        : FitError(msg), best(best_seen) {}
    SinusoidFit best;
};

struct ChirpFit {
    double center_spacing_nm = 0.0;
    double chirp_nm_per_mm = 0.0;
    double chirp_uncertainty_nm_per_mm = 0.0;  // 1-sigma standard error of the slope
};

struct LinearFit {
    double intercept_nm = 0.0;
    double slope_nm = 0.0;
    double intercept_se_nm = 0.0;
    double slope_se_nm = 0.0;
};

struct TiltSample {
    int j = 0;
    double kappa_rad = 0.0;
    double spacing_nm = 0.0;
};

// Spacing model d = (P0 + P1 j) cos(kappa); P0 = M d0 / 2, P1 = M delta / 2.
struct TiltFit {
    double md0_over_2_nm = 0.0;
    double mdelta_over_2_nm = 0.0;
    double md0_se_nm = 0.0;
    double mdelta_se_nm = 0.0;
};

// Column sums (background-subtracted when given, clamped at zero).
LatticeProfile integrate_columns(const IntensityImage& image,
                                 const IntensityImage* background = nullptr);

// Least-squares offset + amplitude cos(2 pi x/d + phase) over the window
// (whole profile when absent). Spacing seeded from the spectral peak, linear
// parameters by direct solve, spacing then refined by 1-D minimization.
SinusoidFit fit_sinusoid(const LatticeProfile& profile,
                         std::optional<std::pair<double, double>> window_um = std::nullopt);

double contrast(const SinusoidFit& fit);

// Windowed spacing estimates: (window center x_um, spacing_nm) per window.
std::vector<std::pair<double, double>> local_spacing(const LatticeProfile& profile,
                                                     double window_width_um, double stride_um);

// Straight-line fit of spacing vs. position; chirp is the slope in nm/mm.
ChirpFit chirp_fit(const std::vector<std::pair<double, double>>& spacing_by_x);

// Straight-line fit of spacing vs. row index j.
LinearFit fit_spacing_vs_index(const std::vector<std::pair<int, double>>& spacing_by_j);

// Joint fit over rows and tilts; needs >= 2 distinct j and >= 2 distinct kappa.
TiltFit fit_spacing_vs_tilt(const std::vector<TiltSample>& samples);

}  // namespace accordion

#endif
