#ifndef ACCORDION_IO_HPP
#define ACCORDION_IO_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "accordion/analysis.hpp"
#include "accordion/grating.hpp"

namespace accordion {

// 12 significant digits, '.' decimal, no separators.
std::string format_sig(double v);

std::uint64_t fnv1a64(const std::string& s);
std::string hex64(std::uint64_t v);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// CSV builders; every document starts with a "# config_digest <hex>" line.
std::string spectrum_csv(const DiffractionOrderSpectrum& spectrum, const std::string& digest);
std::string profile_csv(const LatticeProfile& profile, const std::string& digest);
std::string coverage_csv(const std::vector<std::pair<double, double>>& gaps_nm,
                         const std::string& digest);

LatticeProfile read_profile_csv(const std::string& path);

// 16-bit binary PGM (P5, maxval 65535, big-endian samples).
IntensityImage read_pgm16(const std::string& path, double pixel_pitch_um);
void write_pgm16(const std::string& path, const IntensityImage& image);

}  // namespace accordion

#endif
