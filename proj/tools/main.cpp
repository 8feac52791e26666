#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "accordion/analysis.hpp"
#include "accordion/config.hpp"
#include "accordion/design.hpp"
#include "accordion/errors.hpp"
#include "accordion/io.hpp"
#include "accordion/relay.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace accordion;

namespace {

std::string out_path(const std::string& dir, const std::string& name) {
    fs::create_directories(dir);
    return (fs::path(dir) / name).string();
}

Grid1D make_grid(const RunConfig& cfg) {
    return default_grid(cfg.illumination, cfg.grid.samples, cfg.grid.span_waists);
}

// central fit window, clamped to the profile extent
std::pair<double, double> central_window(const LatticeProfile& prof, double span_mm) {
    const double lo = prof.x0_um;
    const double hi = prof.x_at(prof.intensities.size() - 1);
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * std::min(span_mm * 1e3, hi - lo);
    return {mid - half, mid + half};
}

json fit_to_json(const SinusoidFit& fit) {
    return json{{"offset", fit.offset},
                {"amplitude", fit.amplitude},
                {"spacing_nm", fit.spacing_nm},
                {"phase_rad", fit.phase_rad},
                {"rms_residual", fit.rms_residual},
                {"iterations", fit.iterations}};
}

int cmd_efficiency(const RunConfig& cfg, const std::string& out_dir) {
    const BinaryPhaseGrating g = cfg.effective_grating();
    const DiffractionOrderSpectrum sp =
        order_spectrum(g, cfg.wavelength_nm, cfg.tilt_kappa_rad, 10);
    write_text_file(out_path(out_dir, "efficiency.csv"), spectrum_csv(sp, cfg.digest));
    return 0;
}

int cmd_simulate(const RunConfig& cfg, const std::string& out_dir) {
    const BinaryPhaseGrating g = cfg.effective_grating();
    const LatticeProfile prof =
        simulate_lattice(g, cfg.illumination, cfg.relay, cfg.tilt_kappa_rad, make_grid(cfg));
    write_text_file(out_path(out_dir, "profile.csv"), profile_csv(prof, cfg.digest));

    json doc;
    doc["config_digest"] = cfg.digest;
    doc["grating_period_um"] = g.period_um;
    doc["tilt_kappa_rad"] = cfg.tilt_kappa_rad;
    try {
        const SinusoidFit fit =
            fit_sinusoid(prof, central_window(prof, cfg.analysis.fit_span_mm));
        doc["fit"] = fit_to_json(fit);
        doc["contrast"] = contrast(fit);
    } catch (const FitError& e) {
        // no fringes (e.g. a single kept order): report zero contrast, keep the run
        doc["fit"] = nullptr;
        doc["fit_error"] = e.what();
        doc["contrast"] = 0.0;
    }
    write_text_file(out_path(out_dir, "summary.json"), doc.dump(2) + "\n");
    return 0;
}

int cmd_design(const RunConfig& cfg, const std::string& out_dir, double target_nm) {
    if (cfg.standalone_grating)
        throw ConfigError("design: needs a plate section (a standalone grating has no rows)");
    if (!std::isfinite(target_nm) || target_nm <= 0.0)
        throw ConfigError("design: --target-nm must be positive");

    json doc;
    doc["config_digest"] = cfg.digest;
    doc["target_nm"] = target_nm;
    const double mag = cfg.relay.magnification();
    try {
        const TuningSolution sol = select_grating(cfg.plate, target_nm, mag,
                                                  cfg.design.kappa_max_rad, cfg.material,
                                                  cfg.wavelength_nm);
        doc["status"] = "ok";
        doc["j"] = sol.j;
        doc["kappa_rad"] = sol.kappa_rad;
        doc["predicted_spacing_nm"] = sol.predicted_spacing_nm;
        doc["efficiency_penalty"] = sol.efficiency_penalty;
        write_text_file(out_path(out_dir, "design.json"), doc.dump(2) + "\n");
        return 0;
    } catch (const CoverageGapError& e) {
        doc["status"] = "coverage_gap";
        doc["message"] = e.what();
        doc["reachable_below_nm"] = {e.below_lo_nm, e.below_hi_nm};
        doc["reachable_above_nm"] = {e.above_lo_nm, e.above_hi_nm};
        write_text_file(out_path(out_dir, "design.json"), doc.dump(2) + "\n");
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const UnreachableError& e) {
        doc["status"] = "unreachable";
        doc["message"] = e.what();
        doc["reachable_nm"] = {e.reachable_lo_nm, e.reachable_hi_nm};
        write_text_file(out_path(out_dir, "design.json"), doc.dump(2) + "\n");
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

int cmd_coverage(const RunConfig& cfg, const std::string& out_dir) {
    if (cfg.standalone_grating)
        throw ConfigError("coverage: needs a plate section (a standalone grating has no rows)");
    const auto gaps =
        coverage_report(cfg.plate, cfg.relay.magnification(), cfg.design.kappa_max_rad);
    write_text_file(out_path(out_dir, "coverage.csv"), coverage_csv(gaps, cfg.digest));
    return 0;
}

int cmd_analyze(const RunConfig& cfg, const std::string& out_dir, const std::string& input) {
    LatticeProfile prof;
    const bool is_pgm = input.size() >= 4 && input.compare(input.size() - 4, 4, ".pgm") == 0;
    if (is_pgm) {
        const IntensityImage img = read_pgm16(input, cfg.analysis.pixel_pitch_um);
        if (!cfg.analysis.background_path.empty()) {
            const IntensityImage bg =
                read_pgm16(cfg.analysis.background_path, cfg.analysis.pixel_pitch_um);
            prof = integrate_columns(img, &bg);
        } else {
            prof = integrate_columns(img);
        }
    } else {
        prof = read_profile_csv(input);
    }

    const SinusoidFit fit = fit_sinusoid(prof);
    json doc;
    doc["config_digest"] = cfg.digest;
    doc["fit"] = fit_to_json(fit);
    doc["contrast"] = contrast(fit);
    try {
        const auto samples =
            local_spacing(prof, cfg.analysis.window_mm * 1e3, cfg.analysis.stride_mm * 1e3);
        const ChirpFit ch = chirp_fit(samples);
        doc["chirp"] = {{"center_spacing_nm", ch.center_spacing_nm},
                        {"chirp_nm_per_mm", ch.chirp_nm_per_mm},
                        {"chirp_uncertainty_nm_per_mm", ch.chirp_uncertainty_nm_per_mm},
                        {"windows", samples.size()}};
    } catch (const FitError&) {
        doc["chirp"] = nullptr;  // profile too short for windowed spacing analysis
    }
    write_text_file(out_path(out_dir, "analysis.json"), doc.dump(2) + "\n");
    return 0;
}

int cmd_sweep(const RunConfig& cfg, const std::string& out_dir, int threads) {
    if (!cfg.sweep.active())
        throw ConfigError("sweep: config has no sweep section");
    if (cfg.standalone_grating && !cfg.sweep.j_values.empty())
        throw ConfigError("sweep: sweeping j needs a plate section");

    const std::vector<int> js =
        cfg.sweep.j_values.empty() ? std::vector<int>{cfg.row_j} : cfg.sweep.j_values;
    const std::vector<double> kappas = cfg.sweep.kappa_values.empty()
                                           ? std::vector<double>{cfg.tilt_kappa_rad}
                                           : cfg.sweep.kappa_values;
    const bool sweep_coeff = cfg.sweep.coeff_index >= 0;
    const std::vector<double> coeffs =
        sweep_coeff ? cfg.sweep.coeff_values : std::vector<double>{0.0};

    struct Point {
        int j;
        double kappa;
        double coeff;
    };
    std::vector<Point> points;
    for (int j : js)
        for (double k : kappas)
            for (double c : coeffs) points.push_back({j, k, c});

    struct Row {
        double spacing_nm = 0.0;
        double contrast_val = 0.0;
        double eta1 = 0.0;
    };
    std::vector<Row> rows(points.size());
    std::atomic<std::size_t> cursor{0};
    std::exception_ptr failure;
    std::mutex failure_mx;

    auto worker = [&]() {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= points.size()) return;
            try {
                const Point& pt = points[i];
                const BinaryPhaseGrating g = cfg.standalone_grating
                                                 ? cfg.effective_grating()
                                                 : cfg.effective_grating(pt.j);
                FourFRelay relay = cfg.relay;
                if (sweep_coeff) {
                    const auto idx = static_cast<std::size_t>(cfg.sweep.coeff_index);
                    if (relay.pupil_phase.size() <= idx) relay.pupil_phase.resize(idx + 1, 0.0);
                    relay.pupil_phase[idx] = pt.coeff;
                }
                const LatticeProfile prof =
                    simulate_lattice(g, cfg.illumination, relay, pt.kappa, make_grid(cfg));
                const SinusoidFit fit =
                    fit_sinusoid(prof, central_window(prof, cfg.analysis.fit_span_mm));
                rows[i].spacing_nm = fit.spacing_nm;
                rows[i].contrast_val = contrast(fit);
                rows[i].eta1 =
                    diffraction_efficiency(g, 1, phase_depth(g, cfg.wavelength_nm, pt.kappa));
            } catch (...) {
                const std::lock_guard<std::mutex> lock(failure_mx);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };

    const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t want = threads <= 0 ? 1 : static_cast<std::size_t>(threads);
    const std::size_t nthreads = std::min({want, hw, points.size()});
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    std::string csv = "# config_digest " + cfg.digest + "\n";
    csv += sweep_coeff
               ? "j,kappa_rad,pupil_c" + std::to_string(cfg.sweep.coeff_index) +
                     ",fit_spacing_nm,contrast,eta1\n"
               : "j,kappa_rad,fit_spacing_nm,contrast,eta1\n";
    for (std::size_t i = 0; i < points.size(); ++i) {
        csv += std::to_string(points[i].j);
        csv += ',';
        csv += format_sig(points[i].kappa);
        if (sweep_coeff) {
            csv += ',';
            csv += format_sig(points[i].coeff);
        }
        csv += ',';
        csv += format_sig(rows[i].spacing_nm);
        csv += ',';
        csv += format_sig(rows[i].contrast_val);
        csv += ',';
        csv += format_sig(rows[i].eta1);
        csv += '\n';
    }
    write_text_file(out_path(out_dir, "sweep.csv"), csv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"binary-phase-grating accordion lattice toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::string input_path;
    double target_nm = 0.0;
    int threads = 1;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON run configuration");
        sub->add_option("--out", out_dir, "output directory (default: current)");
    };

    CLI::App* eff = app.add_subcommand("efficiency", "write the diffraction-order table");
    add_common(eff);
    CLI::App* sim = app.add_subcommand("simulate", "simulate a lattice profile and fit it");
    add_common(sim);
    CLI::App* des =
        app.add_subcommand("design", "pick the grating row and tilt for a target spacing");
    add_common(des);
    des->add_option("--target-nm", target_nm, "target lattice spacing in nm")->required();
    CLI::App* ana = app.add_subcommand("analyze", "fit an intensity image or saved profile");
    add_common(ana);
    ana->add_option("input", input_path, "16-bit PGM image or profile CSV")->required();
    CLI::App* swp = app.add_subcommand("sweep", "evaluate the configured parameter sweep");
    add_common(swp);
    swp->add_option("--threads", threads, "worker threads (default 1)");
    CLI::App* cov =
        app.add_subcommand("coverage", "report spacing gaps unreachable within the tilt limit");
    add_common(cov);

    CLI11_PARSE(app, argc, argv);

    try {
        const RunConfig cfg =
            config_path.empty() ? RunConfig::defaults() : RunConfig::from_file(config_path);
        if (eff->parsed()) return cmd_efficiency(cfg, out_dir);
        if (sim->parsed()) return cmd_simulate(cfg, out_dir);
        if (des->parsed()) return cmd_design(cfg, out_dir, target_nm);
        if (ana->parsed()) return cmd_analyze(cfg, out_dir, input_path);
        if (swp->parsed()) return cmd_sweep(cfg, out_dir, threads);
        if (cov->parsed()) return cmd_coverage(cfg, out_dir);
    } catch (const DesignError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const FitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
