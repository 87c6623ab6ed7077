#include "supersplit/cavity.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace supersplit::cavity {

const std::vector<std::pair<double, double>>& default_b_pairs() {
    static const std::vector<std::pair<double, double>> pairs = {
        {8.0, 15.0}, {5.3, 10.0}, {33.0, 62.0}};
    return pairs;
}

double fit_b_coefficient(const std::vector<std::pair<double, double>>& pairs) {
    if (pairs.empty())
        throw std::invalid_argument("fit_b_coefficient: no pairs");
    double sbb = 0.0, sbp = 0.0;
    for (const auto& [b, p] : pairs) {
        sbb += b * b;
        sbp += b * p;
    }
    if (sbb <= 0.0)
        throw std::invalid_argument("fit_b_coefficient: all fields are zero");
    return sbp / sbb;
}

double CavityConfig::field_coefficient() const {
    return b_to_phi > 0.0 ? b_to_phi : fit_b_coefficient(default_b_pairs());
}

Complex CavityConfig::channel_weight() const {
    return std::polar(q_mag, q_phase);
}

void CavityConfig::validate() const {
    if (!(phi0 > 0.0)) throw ConfigError("cavity config: phi0 must be > 0");
    if (!(kappa > 0.0)) throw ConfigError("cavity config: kappa must be > 0");
    if (!(omega_over_gamma > 0.0))
        throw ConfigError("cavity config: omega_over_gamma must be > 0");
    if (!(gamma > 0.0)) throw ConfigError("cavity config: gamma must be > 0");
    if (b_to_phi < 0.0)
        throw ConfigError("cavity config: b_to_phi must be >= 0");
    if (q_mag < 0.0 || r_el_mag < 0.0)
        throw ConfigError("cavity config: channel magnitudes must be >= 0");
}

double detuning_from_angle(const CavityConfig& cfg, double delta_phi_rad) {
    if (!(std::abs(delta_phi_rad) < cfg.phi0))
        throw std::invalid_argument(
            "detuning_from_angle: |delta_phi| must stay below the mode angle");
    return -cfg.omega_over_gamma * cfg.phi0 * delta_phi_rad;
}

Complex r_electronic(const CavityConfig& cfg, double delta_phi_rad) {
    if (delta_phi_rad == 0.0) return Complex(0.0, 0.0);
    return std::polar(cfg.r_el_mag, cfg.r_el_phase);
}

CollectiveParams collective_params_from_cavity(const CavityConfig& cfg,
                                               double delta_phi_rad,
                                               double b_tesla) {
    cfg.validate();
    if (cfg.coupling_C < 0.0)
        throw CalibrationError(
            "collective_params_from_cavity: coupling_C not calibrated");
    const double dc = detuning_from_angle(cfg, delta_phi_rad);
    const double denom = cfg.kappa * cfg.kappa + dc * dc;
    const double lamb = -cfg.coupling_C * dc / denom;
    const double big_gamma = 1.0 + cfg.coupling_C * cfg.kappa / denom;
    const double phi = cfg.field_coefficient() * std::abs(b_tesla);
    return CollectiveParams::make(cfg.gamma, big_gamma, lamb, phi);
}

CavityConfig calibrate(const CavityConfig& cfg, double target_L,
                       double at_delta_phi_rad) {
    cfg.validate();
    if (target_L == 0.0)
        throw std::invalid_argument("calibrate: target_L must be nonzero");
    if (at_delta_phi_rad == 0.0)
        throw std::invalid_argument("calibrate: calibration angle must be nonzero");
    const double dc = detuning_from_angle(cfg, at_delta_phi_rad);
    const double denom = cfg.kappa * cfg.kappa + dc * dc;
    const double c = -target_L * denom / dc;
    if (c < 0.0)
        throw CalibrationError(
            "calibrate: target sign unreachable at this angle (positive offset "
            "gives positive shift)");
    CavityConfig out = cfg;
    out.coupling_C = c;
    return out;
}

SpectrumGrid reflectivity_spectrum(const CavityConfig& cfg, double delta_phi_rad,
                                   double b_tesla, double span, int n_points,
                                   bool normalize) {
    const CollectiveParams params =
        collective_params_from_cavity(cfg, delta_phi_rad, b_tesla);
    const EigenSystem eig = collective_eigenvalues(params);
    const Complex rel = r_electronic(cfg, delta_phi_rad);
    const Complex q = cfg.channel_weight();

    std::function<double(double)> f;
    if (eig.degenerate)
        f = [params, rel, q](double d) {
            return std::norm(rel + q * degenerate_amplitude(params, d));
        };
    else
        f = [eig, rel, q](double d) {
            return std::norm(rel + q * spectral_amplitude(eig, d));
        };
    return detail::sample_grid(f, span, n_points, normalize);
}

DipReport measure_dips(const SpectrumGrid& grid, double baseline) {
    std::vector<const Extremum*> dips;
    for (const Extremum& e : grid.extrema)
        if (e.kind == ExtremumKind::minimum && e.value < baseline)
            dips.push_back(&e);

    DipReport rep;
    rep.baseline = baseline;
    rep.n_dips = static_cast<int>(dips.size());
    if (dips.size() < 2) {
        if (dips.size() == 1) {
            rep.position_lo = rep.position_hi = dips.front()->position;
            rep.depth_lo = rep.depth_hi = dips.front()->value;
        }
        return rep;
    }
    std::stable_sort(dips.begin(), dips.end(),
                     [](const Extremum* a, const Extremum* b) {
                         if (a->value != b->value) return a->value < b->value;
                         return a->position < b->position;
                     });
    const Extremum* a = dips[0];
    const Extremum* b = dips[1];
    if (a->position > b->position) std::swap(a, b);
    rep.position_lo = a->position;
    rep.position_hi = b->position;
    rep.depth_lo = a->value;
    rep.depth_hi = b->value;
    rep.separation = b->position - a->position;
    return rep;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, int line_no) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ConfigError("cavity config line " + std::to_string(line_no) +
                          ": bad number '" + text + "'");
    }
    if (trim(text.substr(used)) != "")
        throw ConfigError("cavity config line " + std::to_string(line_no) +
                          ": trailing junk in '" + text + "'");
    return v;
}

} // namespace

CavityConfig parse_config(std::istream& in) {
    CavityConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto cut = line.find_first_of("#;");
        if (cut != std::string::npos) line = line.substr(0, cut);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("cavity config line " + std::to_string(line_no) +
                                  ": unterminated section header");
            continue; // section names are organizational only
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("cavity config line " + std::to_string(line_no) +
                              ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const double value = parse_number(trim(line.substr(eq + 1)), line_no);

        if (key == "phi0_mrad") cfg.phi0 = value * 1e-3;
        else if (key == "omega_over_gamma") cfg.omega_over_gamma = value;
        else if (key == "kappa_over_gamma") cfg.kappa = value;
        else if (key == "coupling_C") cfg.coupling_C = value;
        else if (key == "b_to_phi") cfg.b_to_phi = value;
        else if (key == "r_el_mag") cfg.r_el_mag = value;
        else if (key == "r_el_phase") cfg.r_el_phase = value;
        else if (key == "q_mag") cfg.q_mag = value;
        else if (key == "q_phase") cfg.q_phase = value;
        else
            throw ConfigError("cavity config line " + std::to_string(line_no) +
                              ": unknown key '" + key + "'");
    }
    cfg.validate();
    return cfg;
}

CavityConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cavity config: cannot open '" + path + "'");
    return parse_config(in);
}

std::string default_config_text() {
    const CavityConfig cfg;
    std::ostringstream out;
    out << "[cavity]\n"
        << "phi0_mrad = 3.5\n"
        << "omega_over_gamma = 3.06e12\n"
        << "kappa_over_gamma = 3e5\n"
        << "# coupling_C is usually set through calibration; a negative value\n"
        << "# means \"not calibrated\".\n"
        << "coupling_C = -1\n"
        << "# 0 selects the built-in least-squares field coefficient.\n"
        << "b_to_phi = 0\n"
        << "r_el_mag = " << cfg.r_el_mag << "\n"
        << "r_el_phase = " << cfg.r_el_phase << "\n"
        << "q_mag = " << cfg.q_mag << "\n"
        << "q_phase = " << cfg.q_phase << "\n";
    return out.str();
}

} // namespace supersplit::cavity
