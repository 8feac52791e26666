#ifndef ACCORDION_CONFIG_HPP
#define ACCORDION_CONFIG_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "accordion/design.hpp"
#include "accordion/field.hpp"
#include "accordion/grating.hpp"
#include "accordion/relay.hpp"

namespace accordion {

struct GridSettings {
    std::size_t samples = 1u << 18;
    double span_waists = 8.0;
};

struct DesignSettings {
    double kappa_max_rad = 0.1;
};

struct AnalysisSettings {
    double window_mm = 0.4;    // local-spacing window
    double stride_mm = 0.5;    // window step
    double fit_span_mm = 2.0;  // central region for the summary sinusoid fit
    double pixel_pitch_um = 0.0345;
    std::string background_path;
};

struct SweepSpec {
    std::vector<int> j_values;
    std::vector<double> kappa_values;
    int coeff_index = -1;  // pupil polynomial degree being swept; -1 = none
    std::vector<double> coeff_values;

    bool active() const {
        return !j_values.empty() || !kappa_values.empty() || coeff_index >= 0;
    }
};

// Parsed and fully validated run description. All lengths carry unit-suffixed
// keys in the JSON document; unknown keys are rejected outright.
struct RunConfig {
    double wavelength_nm = 775.0;
    double tilt_kappa_rad = 0.0;
    bool standalone_grating = false;  // explicit grating.period_um, no plate
    BinaryPhaseGrating material;      // duty/relief/index; period per plate row
    PlateDesign plate;
    int row_j = 0;
    GaussianIllumination illumination;
    FourFRelay relay;
    GridSettings grid;
    DesignSettings design;
    AnalysisSettings analysis;
    SweepSpec sweep;
    std::string digest;  // FNV-1a of the canonicalized JSON document

    static RunConfig defaults();
    static RunConfig from_json_text(const std::string& text);
    static RunConfig from_file(const std::string& path);

    BinaryPhaseGrating effective_grating(int j) const;  // plate row j
    BinaryPhaseGrating effective_grating() const;       // standalone or row_j
};

}  // namespace accordion

#endif
