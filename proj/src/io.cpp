#include "supersplit/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace supersplit {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string manifest_json(const RunManifest& manifest) {
    nlohmann::ordered_json j;
    j["tool"] = kToolName;
    j["version"] = manifest.version;
    j["command"] = manifest.command;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : manifest.parameters) params[k] = v;
    j["parameters"] = params;
    j["outputs"] = manifest.outputs;
    j["timestamp"] = manifest.timestamp;
    return j.dump(2) + "\n";
}

namespace csv {

namespace {

const char* kind_name(ExtremumKind kind) {
    return kind == ExtremumKind::maximum ? "maximum" : "minimum";
}

double parse_double(const std::string& s) {
    double v = 0.0;
    const char* b = s.data();
    const char* e = b + s.size();
    const auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc() || res.ptr != e)
        throw std::runtime_error("csv: bad number '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        if (pos == std::string::npos) {
            parts.push_back(line.substr(start));
            break;
        }
        parts.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return parts;
}

} // namespace

void write_spectrum(std::ostream& out, const std::string& tag,
                    const SpectrumGrid& grid, const std::string& value_column,
                    const RunManifest& manifest,
                    const std::vector<std::pair<std::string, std::string>>& derived) {
    out << "# " << tag << " v1\n";
    out << "# tool," << kToolName << "," << manifest.version << "\n";
    out << "# command," << manifest.command << "\n";
    for (const auto& [k, v] : manifest.parameters)
        out << "# param," << k << "," << v << "\n";
    for (const auto& [k, v] : derived) out << "# derived," << k << "," << v << "\n";
    out << "# delta," << value_column << "\n";
    for (std::size_t k = 0; k < grid.delta_values.size(); ++k)
        out << format_double(grid.delta_values[k]) << ","
            << format_double(grid.intensity[k]) << "\n";
    for (const Extremum& e : grid.extrema)
        out << "# extremum," << kind_name(e.kind) << "," << format_double(e.position)
            << "," << format_double(e.value) << "\n";
}

ParsedSpectrum read_spectrum(std::istream& in) {
    ParsedSpectrum parsed;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.rfind("# ", 0) == 0 || line.rfind("#", 0) == 0) {
            std::string body = line.substr(line.find('#') + 1);
            if (!body.empty() && body.front() == ' ') body.erase(0, 1);
            if (first) {
                const auto sp = body.find(' ');
                parsed.tag = body.substr(0, sp);
                first = false;
                continue;
            }
            const auto parts = split(body, ',');
            if (parts[0] == "extremum" && parts.size() == 4) {
                Extremum e;
                e.kind = parts[1] == "maximum" ? ExtremumKind::maximum
                                               : ExtremumKind::minimum;
                e.position = parse_double(parts[2]);
                e.value = parse_double(parts[3]);
                parsed.grid.extrema.push_back(e);
            } else if (parts[0] == "param" && parts.size() >= 3) {
                parsed.params.emplace_back(parts[1], parts[2]);
            } else if (parts[0] == "derived" && parts.size() >= 3) {
                parsed.derived.emplace_back(parts[1], parts[2]);
            }
            continue;
        }
        first = false;
        const auto parts = split(line, ',');
        if (parts.size() != 2) throw std::runtime_error("csv: expected two columns");
        parsed.grid.delta_values.push_back(parse_double(parts[0]));
        parsed.grid.intensity.push_back(parse_double(parts[1]));
    }
    if (parsed.grid.delta_values.empty())
        throw std::runtime_error("csv: no data rows");
    return parsed;
}

void write_scan(std::ostream& out, const std::vector<ScanRow>& rows,
                const RunManifest& manifest) {
    out << "# supersplit-scan v1\n";
    out << "# tool," << kToolName << "," << manifest.version << "\n";
    out << "# command," << manifest.command << "\n";
    for (const auto& [k, v] : manifest.parameters)
        out << "# param," << k << "," << v << "\n";
    out << "# delta_phi_urad,b_tesla,phi,L,Gamma,splitting,deviation\n";
    for (const csv::ScanRow& r : rows) {
        out << format_double(r.delta_phi_urad) << "," << format_double(r.b_tesla)
            << "," << format_double(r.phi) << "," << format_double(r.lamb_shift)
            << "," << format_double(r.big_gamma) << "," << format_double(r.splitting)
            << "," << format_double(r.deviation) << "\n";
    }
    for (const csv::ScanRow& r : rows)
        if (r.single_line)
            out << "# flag,single_line," << format_double(r.delta_phi_urad) << ","
                << format_double(r.b_tesla) << "\n";
}

} // namespace csv

std::string plot_script(const std::string& csv_path, const std::string& value_column) {
    std::ostringstream out;
    out << "set datafile separator ','\n"
        << "set datafile commentschars '#'\n"
        << "set xlabel 'detuning (gamma)'\n"
        << "set ylabel '" << value_column << "'\n"
        << "plot '" << csv_path << "' using 1:2 with lines title '" << value_column
        << "'\n"
        << "pause -1\n";
    return out.str();
}

} // namespace supersplit
