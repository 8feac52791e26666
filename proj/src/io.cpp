#include "accordion/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "accordion/errors.hpp"

namespace accordion {

std::string format_sig(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path);
    out << content;
    if (!out) throw ConfigError("write failed for " + path);
}

std::string spectrum_csv(const DiffractionOrderSpectrum& spectrum, const std::string& digest) {
    std::string out = "# config_digest " + digest + "\n";
    out += "m,re_a,im_a,eta,xi_rad\n";
    for (const OrderEntry& e : spectrum.entries) {
        out += std::to_string(e.m);
        out += ',';
        out += format_sig(e.a.real());
        out += ',';
        out += format_sig(e.a.imag());
        out += ',';
        out += format_sig(e.eta);
        out += ',';
        if (e.xi_rad) out += format_sig(*e.xi_rad);  // empty field for evanescent orders
        out += '\n';
    }
    return out;
}

std::string profile_csv(const LatticeProfile& profile, const std::string& digest) {
    std::string out = "# config_digest " + digest + "\n";
    out += "x_um,intensity\n";
    for (std::size_t i = 0; i < profile.intensities.size(); ++i) {
        out += format_sig(profile.x_at(i));
        out += ',';
        out += format_sig(profile.intensities[i]);
        out += '\n';
    }
    return out;
}

std::string coverage_csv(const std::vector<std::pair<double, double>>& gaps_nm,
                         const std::string& digest) {
    std::string out = "# config_digest " + digest + "\n";
    out += "gap_lo_nm,gap_hi_nm\n";
    for (const auto& [lo, hi] : gaps_nm) {
        out += format_sig(lo);
        out += ',';
        out += format_sig(hi);
        out += '\n';
    }
    return out;
}

LatticeProfile read_profile_csv(const std::string& path) {
    std::istringstream in(read_text_file(path));
    LatticeProfile prof;
    std::string line;
    std::vector<double> xs;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 'x_um,intensity'");
        char* endx = nullptr;
        char* endy = nullptr;
        const std::string xs_str = line.substr(0, comma);
        const std::string ys_str = line.substr(comma + 1);
        const double x = std::strtod(xs_str.c_str(), &endx);
        const double y = std::strtod(ys_str.c_str(), &endy);
        if (endx == xs_str.c_str() || endy == ys_str.c_str()) {
            if (lineno <= 2 && xs.empty()) continue;  // header row
            throw ConfigError(path + ":" + std::to_string(lineno) + ": malformed number");
        }
        xs.push_back(x);
        prof.intensities.push_back(y);
    }
    if (prof.intensities.size() < 2)
        throw ConfigError(path + ": profile needs at least 2 samples");
    prof.x0_um = xs.front();
    prof.dx_um = xs[1] - xs[0];
    if (!(prof.dx_um > 0.0)) throw ConfigError(path + ": x column must be strictly increasing");
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double expect = prof.x0_um + prof.dx_um * static_cast<double>(i);
        if (std::abs(xs[i] - expect) > 1e-6 * prof.dx_um * std::max<double>(1.0, i))
            throw ConfigError(path + ": non-uniform sample spacing near row " + std::to_string(i));
    }
    return prof;
}

IntensityImage read_pgm16(const std::string& path, double pixel_pitch_um) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + path);

    auto next_token = [&]() -> std::string {
        std::string tok;
        int c;
        while ((c = in.get()) != EOF) {
            if (c == '#') {
                while ((c = in.get()) != EOF && c != '\n') {
                }
                continue;
            }
            if (std::isspace(c)) {
                if (!tok.empty()) break;
                continue;
            }
            tok.push_back(static_cast<char>(c));
        }
        if (tok.empty()) throw ConfigError(path + ": truncated PGM header");
        return tok;
    };

    if (next_token() != "P5") throw ConfigError(path + ": not a binary PGM (P5) file");
    const long w = std::stol(next_token());
    const long h = std::stol(next_token());
    const long maxval = std::stol(next_token());
    if (w <= 0 || h <= 0) throw ConfigError(path + ": bad PGM dimensions");
    if (maxval != 65535)
        throw ConfigError(path + ": expected 16-bit PGM (maxval 65535), got maxval " +
                          std::to_string(maxval));

    IntensityImage img;
    img.width = static_cast<std::size_t>(w);
    img.height = static_cast<std::size_t>(h);
    img.pixel_pitch_um = pixel_pitch_um;
    img.pixels.resize(img.width * img.height);

    std::vector<unsigned char> raw(img.pixels.size() * 2);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size())
        throw ConfigError(path + ": truncated PGM pixel data");
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        img.pixels[i] = static_cast<double>((raw[2 * i] << 8) | raw[2 * i + 1]);
    img.validate();
    return img;
}

void write_pgm16(const std::string& path, const IntensityImage& image) {
    image.validate();
    for (double p : image.pixels)
        if (p > 65535.0)
            throw DomainError("write_pgm16: pixel value " + format_sig(p) + " exceeds 65535");

    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path);
    out << "P5\n" << image.width << " " << image.height << "\n65535\n";
    std::vector<unsigned char> raw(image.pixels.size() * 2);
    for (std::size_t i = 0; i < image.pixels.size(); ++i) {
        const auto v = static_cast<unsigned int>(std::lround(image.pixels[i]));
        raw[2 * i] = static_cast<unsigned char>((v >> 8) & 0xff);
        raw[2 * i + 1] = static_cast<unsigned char>(v & 0xff);
    }
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!out) throw ConfigError("write failed for " + path);
}

}  // namespace accordion
