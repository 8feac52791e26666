#include "accordion/config.hpp"

#include <cmath>
#include <initializer_list>

#include <json.hpp>

#include "accordion/errors.hpp"
#include "accordion/io.hpp"

namespace accordion {

namespace {

using nlohmann::json;

void require_object(const json& v, const std::string& where) {
    if (!v.is_object()) throw ConfigError("config: " + where + " must be a JSON object");
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                known = true;
                break;
            }
        if (!known)
            throw ConfigError("config: unknown key \"" + it.key() + "\" in " + where);
    }
}

double get_number(const json& obj, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(std::string("config: ") + key + " must be a number");
    return v.get<double>();
}

long get_integer(const json& obj, const char* key, long fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer())
        throw ConfigError(std::string("config: ") + key + " must be an integer");
    return v.get<long>();
}

std::string get_string(const json& obj, const char* key, const std::string& fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_string()) throw ConfigError(std::string("config: ") + key + " must be a string");
    return v.get<std::string>();
}

// A sweep axis is either an explicit array or an inclusive {from, to, step} range.
std::vector<double> parse_axis(const json& v, const std::string& name) {
    std::vector<double> out;
    if (v.is_array()) {
        for (const json& e : v) {
            if (!e.is_number())
                throw ConfigError("config: sweep." + name + " entries must be numbers");
            out.push_back(e.get<double>());
        }
    } else if (v.is_object()) {
        check_keys(v, "sweep." + name, {"from", "to", "step"});
        if (!v.contains("from") || !v.contains("to") || !v.contains("step"))
            throw ConfigError("config: sweep." + name + " range needs from, to and step");
        if (!v.at("from").is_number() || !v.at("to").is_number() || !v.at("step").is_number())
            throw ConfigError("config: sweep." + name + " range bounds must be numbers");
        const double from = v.at("from").get<double>();
        const double to = v.at("to").get<double>();
        const double step = v.at("step").get<double>();
        if (!std::isfinite(from) || !std::isfinite(to) || !std::isfinite(step) || step <= 0.0 ||
            to < from)
            throw ConfigError("config: sweep." + name + " range must satisfy from <= to, step > 0");
        const double count = std::floor((to - from) / step + 1e-9) + 1.0;
        if (count > 1e6) throw ConfigError("config: sweep." + name + " range has too many points");
        for (long i = 0; i < static_cast<long>(count); ++i)
            out.push_back(from + static_cast<double>(i) * step);
    } else {
        throw ConfigError("config: sweep." + name + " must be an array or a {from,to,step} range");
    }
    if (out.empty()) throw ConfigError("config: sweep." + name + " is empty");
    return out;
}

std::vector<int> parse_int_axis(const json& v, const std::string& name) {
    std::vector<int> out;
    for (double d : parse_axis(v, name)) {
        const double r = std::round(d);
        if (std::abs(d - r) > 1e-9)
            throw ConfigError("config: sweep." + name + " values must be integers");
        out.push_back(static_cast<int>(r));
    }
    return out;
}

}  // namespace

RunConfig RunConfig::defaults() {
    RunConfig cfg;
    cfg.illumination.wavelength_nm = cfg.wavelength_nm;
    cfg.digest = hex64(fnv1a64(json::object().dump()));
    return cfg;
}

RunConfig RunConfig::from_json_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    require_object(doc, "document root");

    check_keys(doc, "the top level",
               {"wavelength_nm", "tilt_kappa_rad", "grating", "plate", "j", "illumination",
                "relay", "grid", "design", "analysis", "sweep"});

    RunConfig cfg;
    cfg.digest = hex64(fnv1a64(doc.dump()));
    cfg.wavelength_nm = get_number(doc, "wavelength_nm", cfg.wavelength_nm);
    if (!std::isfinite(cfg.wavelength_nm) || cfg.wavelength_nm <= 0.0)
        throw ConfigError("config: wavelength_nm must be positive");
    cfg.tilt_kappa_rad = get_number(doc, "tilt_kappa_rad", 0.0);
    if (!std::isfinite(cfg.tilt_kappa_rad) || std::abs(cfg.tilt_kappa_rad) >= 1.0)
        throw ConfigError("config: tilt_kappa_rad must lie in (-1, 1)");

    bool grating_has_period = false;
    if (doc.contains("grating")) {
        const json& g = doc.at("grating");
        require_object(g, "grating");
        check_keys(g, "grating", {"period_um", "duty", "relief_nm", "index"});
        grating_has_period = g.contains("period_um");
        cfg.material.period_um = get_number(g, "period_um", cfg.material.period_um);
        cfg.material.duty = get_number(g, "duty", cfg.material.duty);
        cfg.material.relief_nm = get_number(g, "relief_nm", cfg.material.relief_nm);
        cfg.material.index_n0 = get_number(g, "index", cfg.material.index_n0);
    }

    if (doc.contains("plate")) {
        if (grating_has_period)
            throw ConfigError(
                "config: grating.period_um conflicts with a plate section; each plate row sets "
                "its own period");
        const json& p = doc.at("plate");
        require_object(p, "plate");
        check_keys(p, "plate",
                   {"d0_um", "delta_nm", "j_min", "j_max", "row_width_um", "row_length_mm"});
        cfg.plate.d0_um = get_number(p, "d0_um", cfg.plate.d0_um);
        cfg.plate.delta_nm = get_number(p, "delta_nm", cfg.plate.delta_nm);
        cfg.plate.j_min = static_cast<int>(get_integer(p, "j_min", cfg.plate.j_min));
        cfg.plate.j_max = static_cast<int>(get_integer(p, "j_max", cfg.plate.j_max));
        cfg.plate.row_width_um = get_number(p, "row_width_um", cfg.plate.row_width_um);
        cfg.plate.row_length_mm = get_number(p, "row_length_mm", cfg.plate.row_length_mm);
    }
    cfg.standalone_grating = grating_has_period && !doc.contains("plate");
    cfg.plate.validate();
    if (cfg.standalone_grating)
        cfg.material.validate();

    cfg.row_j = static_cast<int>(get_integer(doc, "j", 0));

    cfg.illumination.wavelength_nm = cfg.wavelength_nm;
    if (doc.contains("illumination")) {
        const json& il = doc.at("illumination");
        require_object(il, "illumination");
        check_keys(il, "illumination", {"waist_mm", "peak_amplitude"});
        cfg.illumination.waist_mm = get_number(il, "waist_mm", cfg.illumination.waist_mm);
        cfg.illumination.peak_amplitude =
            get_number(il, "peak_amplitude", cfg.illumination.peak_amplitude);
    }
    cfg.illumination.validate();

    if (doc.contains("relay")) {
        const json& r = doc.at("relay");
        require_object(r, "relay");
        check_keys(r, "relay",
                   {"f1_mm", "f2_mm", "kept_orders", "pupil_halfwidth_mm", "pupil_phase"});
        cfg.relay.f1_mm = get_number(r, "f1_mm", cfg.relay.f1_mm);
        cfg.relay.f2_mm = get_number(r, "f2_mm", cfg.relay.f2_mm);
        if (r.contains("kept_orders")) {
            const json& ko = r.at("kept_orders");
            if (!ko.is_array()) throw ConfigError("config: relay.kept_orders must be an array");
            cfg.relay.kept_orders.clear();
            for (const json& e : ko) {
                if (!e.is_number_integer())
                    throw ConfigError("config: relay.kept_orders entries must be integers");
                cfg.relay.kept_orders.push_back(e.get<int>());
            }
        }
        cfg.relay.pupil_halfwidth_mm =
            get_number(r, "pupil_halfwidth_mm", cfg.relay.pupil_halfwidth_mm);
        if (r.contains("pupil_phase")) {
            const json& pp = r.at("pupil_phase");
            if (!pp.is_array()) throw ConfigError("config: relay.pupil_phase must be an array");
            cfg.relay.pupil_phase.clear();
            for (const json& e : pp) {
                if (!e.is_number())
                    throw ConfigError("config: relay.pupil_phase entries must be numbers");
                cfg.relay.pupil_phase.push_back(e.get<double>());
            }
        }
    }
    cfg.relay.validate();

    if (doc.contains("grid")) {
        const json& gr = doc.at("grid");
        require_object(gr, "grid");
        check_keys(gr, "grid", {"samples", "span_waists"});
        const long samples = get_integer(gr, "samples", static_cast<long>(cfg.grid.samples));
        if (samples < 16) throw ConfigError("config: grid.samples must be at least 16");
        cfg.grid.samples = static_cast<std::size_t>(samples);
        cfg.grid.span_waists = get_number(gr, "span_waists", cfg.grid.span_waists);
        if (!std::isfinite(cfg.grid.span_waists) || cfg.grid.span_waists <= 0.0)
            throw ConfigError("config: grid.span_waists must be positive");
    }
    if ((cfg.grid.samples & (cfg.grid.samples - 1)) != 0)
        throw ConfigError("config: grid.samples must be a power of two");

    if (doc.contains("design")) {
        const json& d = doc.at("design");
        require_object(d, "design");
        check_keys(d, "design", {"kappa_max_rad"});
        cfg.design.kappa_max_rad = get_number(d, "kappa_max_rad", cfg.design.kappa_max_rad);
        if (!std::isfinite(cfg.design.kappa_max_rad) || cfg.design.kappa_max_rad < 0.0 ||
            cfg.design.kappa_max_rad >= 0.5)
            throw ConfigError("config: design.kappa_max_rad must lie in [0, 0.5)");
    }

    if (doc.contains("analysis")) {
        const json& a = doc.at("analysis");
        require_object(a, "analysis");
        check_keys(a, "analysis",
                   {"window_mm", "stride_mm", "fit_span_mm", "pixel_pitch_um", "background"});
        cfg.analysis.window_mm = get_number(a, "window_mm", cfg.analysis.window_mm);
        cfg.analysis.stride_mm = get_number(a, "stride_mm", cfg.analysis.stride_mm);
        cfg.analysis.fit_span_mm = get_number(a, "fit_span_mm", cfg.analysis.fit_span_mm);
        cfg.analysis.pixel_pitch_um = get_number(a, "pixel_pitch_um", cfg.analysis.pixel_pitch_um);
        cfg.analysis.background_path = get_string(a, "background", "");
        if (!(cfg.analysis.window_mm > 0.0) || !(cfg.analysis.stride_mm > 0.0) ||
            !(cfg.analysis.fit_span_mm > 0.0) || !(cfg.analysis.pixel_pitch_um > 0.0))
            throw ConfigError("config: analysis lengths must be positive");
    }

    if (doc.contains("sweep")) {
        const json& s = doc.at("sweep");
        require_object(s, "sweep");
        check_keys(s, "sweep", {"j", "kappa_rad", "pupil_coeff_index", "pupil_coeff_values"});
        if (s.contains("j")) cfg.sweep.j_values = parse_int_axis(s.at("j"), "j");
        if (s.contains("kappa_rad"))
            cfg.sweep.kappa_values = parse_axis(s.at("kappa_rad"), "kappa_rad");
        const bool has_idx = s.contains("pupil_coeff_index");
        const bool has_vals = s.contains("pupil_coeff_values");
        if (has_idx != has_vals)
            throw ConfigError(
                "config: sweep.pupil_coeff_index and sweep.pupil_coeff_values go together");
        if (has_idx) {
            const long idx = get_integer(s, "pupil_coeff_index", -1);
            if (idx < 0 || idx > 7)
                throw ConfigError("config: sweep.pupil_coeff_index must lie in [0, 7]");
            cfg.sweep.coeff_index = static_cast<int>(idx);
            cfg.sweep.coeff_values = parse_axis(s.at("pupil_coeff_values"), "pupil_coeff_values");
        }
        for (int j : cfg.sweep.j_values)
            if (j < cfg.plate.j_min || j > cfg.plate.j_max)
                throw ConfigError("config: sweep.j value " + std::to_string(j) +
                                  " outside the plate row range");
        for (double k : cfg.sweep.kappa_values)
            if (!std::isfinite(k) || std::abs(k) >= 1.0)
                throw ConfigError("config: sweep.kappa_rad values must lie in (-1, 1)");
    }

    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
    return from_json_text(read_text_file(path));
}

BinaryPhaseGrating RunConfig::effective_grating(int j) const {
    BinaryPhaseGrating g = material;
    g.period_um = plate.period_um(j);
    g.validate();
    return g;
}

BinaryPhaseGrating RunConfig::effective_grating() const {
    if (standalone_grating) {
        material.validate();
        return material;
    }
    return effective_grating(row_j);
}

}  // namespace accordion
