#include "accordion/design.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "accordion/errors.hpp"

namespace accordion {

namespace {

std::string nm_str(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

void check_tuning_domain(double magnification, double kappa_max_rad) {
    if (!std::isfinite(magnification) || magnification <= 0.0)
        throw DomainError("design: magnification must be positive");
    if (!std::isfinite(kappa_max_rad) || kappa_max_rad < 0.0 || kappa_max_rad >= 0.5)
        throw DomainError("design: kappa_max must lie in [0, 0.5) rad");
}

}  // namespace

void PlateDesign::validate() const {
    if (!std::isfinite(d0_um) || d0_um <= 0.0)
        throw DomainError("plate: base period d0 must be positive");
    if (!std::isfinite(delta_nm) || delta_nm <= 0.0)
        throw DomainError("plate: period increment delta must be positive");
    if (j_min > j_max) throw DomainError("plate: j_min must not exceed j_max");
    if (!std::isfinite(row_width_um) || row_width_um <= 0.0 || !std::isfinite(row_length_mm) ||
        row_length_mm <= 0.0)
        throw DomainError("plate: row dimensions must be positive");
}

double PlateDesign::period_um(int j) const {
    if (j < j_min || j > j_max)
        throw ParameterError("plate: row index " + std::to_string(j) + " outside [" +
                             std::to_string(j_min) + ", " + std::to_string(j_max) + "]");
    return d0_um + static_cast<double>(j) * delta_nm * 1e-3;
}

double designed_spacing(const PlateDesign& plate, int j, double magnification, double kappa_rad) {
    plate.validate();
    if (j < plate.j_min || j > plate.j_max)
        throw ParameterError("designed_spacing: row index " + std::to_string(j) + " outside [" +
                             std::to_string(plate.j_min) + ", " + std::to_string(plate.j_max) +
                             "]");
    if (!std::isfinite(magnification) || magnification <= 0.0)
        throw DomainError("designed_spacing: magnification must be positive");
    if (!std::isfinite(kappa_rad) || std::abs(kappa_rad) >= 0.5 * std::numbers::pi)
        throw DomainError("designed_spacing: tilt must lie in (-pi/2, pi/2)");
    return 0.5 * magnification * std::cos(kappa_rad) *
           (plate.d0_um * 1e3 + static_cast<double>(j) * plate.delta_nm);
}

TuningSolution select_grating(const PlateDesign& plate, double target_nm, double magnification,
                              double kappa_max_rad, const BinaryPhaseGrating& material,
                              double wavelength_nm) {
    plate.validate();
    check_tuning_domain(magnification, kappa_max_rad);
    if (!std::isfinite(target_nm) || target_nm <= 0.0)
        throw DomainError("select_grating: target spacing must be positive");
    if (!std::isfinite(wavelength_nm) || wavelength_nm <= 0.0)
        throw DomainError("select_grating: wavelength must be positive");

    const double cmax = std::cos(kappa_max_rad);
    auto flat = [&](int j) { return designed_spacing(plate, j, magnification, 0.0); };

    const double reach_lo = flat(plate.j_min) * cmax;
    const double reach_hi = flat(plate.j_max);
    if (target_nm < reach_lo || target_nm > reach_hi)
        throw UnreachableError("select_grating: target " + nm_str(target_nm) +
                                   " nm outside the reachable range [" + nm_str(reach_lo) + ", " +
                                   nm_str(reach_hi) + "] nm",
                               reach_lo, reach_hi);

    // smallest j whose untilted spacing covers the target (flat() is increasing)
    int lo = plate.j_min;
    int hi = plate.j_max;
    while (lo < hi) {
        const int mid = lo + (hi - lo) / 2;
        if (flat(mid) >= target_nm)
            hi = mid;
        else
            lo = mid + 1;
    }
    const int j = lo;

    if (target_nm < flat(j) * cmax) {
        // target sits in the uncovered gap between rows j-1 and j
        const double below_hi = flat(j - 1);
        const double below_lo = below_hi * cmax;
        const double above_hi = flat(j);
        const double above_lo = above_hi * cmax;
        throw CoverageGapError("select_grating: target " + nm_str(target_nm) +
                                   " nm falls in the coverage gap (" + nm_str(below_hi) + ", " +
                                   nm_str(above_lo) + ") nm between rows " + std::to_string(j - 1) +
                                   " and " + std::to_string(j),
                               below_lo, below_hi, above_lo, above_hi);
    }

    TuningSolution sol;
    sol.j = j;
    sol.kappa_rad = std::acos(std::min(1.0, target_nm / flat(j)));
    sol.predicted_spacing_nm = designed_spacing(plate, j, magnification, sol.kappa_rad);

    BinaryPhaseGrating row = material;
    row.period_um = plate.period_um(j);
    row.validate();
    const double eta_flat = diffraction_efficiency(row, 1, phase_depth(row, wavelength_nm, 0.0));
    const double eta_tilt =
        diffraction_efficiency(row, 1, phase_depth(row, wavelength_nm, sol.kappa_rad));
    sol.efficiency_penalty = eta_flat > 0.0 ? std::max(0.0, 1.0 - eta_tilt / eta_flat) : 0.0;
    return sol;
}

std::vector<std::pair<double, double>> coverage_report(const PlateDesign& plate,
                                                       double magnification,
                                                       double kappa_max_rad) {
    plate.validate();
    check_tuning_domain(magnification, kappa_max_rad);

    const double cmax = std::cos(kappa_max_rad);
    std::vector<std::pair<double, double>> gaps;
    for (int j = plate.j_min; j < plate.j_max; ++j) {
        const double top = designed_spacing(plate, j, magnification, 0.0);
        const double next_lo = designed_spacing(plate, j + 1, magnification, 0.0) * cmax;
        if (next_lo > top) gaps.emplace_back(top, next_lo);
    }
    return gaps;
}

}  // namespace accordion
