#ifndef SUPERSPLIT_IO_HPP
#define SUPERSPLIT_IO_HPP

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "supersplit/spectrum.hpp"

namespace supersplit {

inline constexpr const char* kToolName = "supersplit";
inline constexpr const char* kToolVersion = "0.1.0";

/// Doubles are written with 17 significant digits so that parsing the text
/// recovers the exact binary value.
std::string format_double(double v);

/// Resolved description of one CLI invocation. Output files never embed the
/// timestamp; it appears only in the optional JSON manifest.
struct RunManifest {
    std::string command;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::string version = kToolVersion;
    std::string timestamp; // RFC 3339, filled when the manifest is written
    std::vector<std::string> outputs;
};

std::string manifest_json(const RunManifest& manifest);

namespace csv {

/// Writes the sampled grid:
///   # <tag> v1
///   # tool,... / # param,k,v / # derived,k,v comment block
///   # delta,<value_column>
///   <delta>,<value> rows (17 significant digits)
///   # extremum,<kind>,<position>,<value> trailer
void write_spectrum(std::ostream& out, const std::string& tag,
                    const SpectrumGrid& grid, const std::string& value_column,
                    const RunManifest& manifest,
                    const std::vector<std::pair<std::string, std::string>>& derived = {});

struct ParsedSpectrum {
    std::string tag;
    SpectrumGrid grid; // extrema as recorded in the comment trailer
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<std::pair<std::string, std::string>> derived;
};

ParsedSpectrum read_spectrum(std::istream& in);

/// Scan map rows: delta_phi_urad,b_tesla,phi,L,Gamma,splitting,deviation.
struct ScanRow {
    double delta_phi_urad = 0.0;
    double b_tesla = 0.0;
    double phi = 0.0;
    double lamb_shift = 0.0;
    double big_gamma = 0.0;
    double splitting = 0.0;
    double deviation = 0.0;
    bool single_line = false; // phi == 0: splitting reported as 0 and flagged
};

void write_scan(std::ostream& out, const std::vector<ScanRow>& rows,
                const RunManifest& manifest);

} // namespace csv

/// gnuplot script that plots a written CSV.
std::string plot_script(const std::string& csv_path, const std::string& value_column);

} // namespace supersplit

#endif
