#ifndef SUPERSPLIT_CAVITY_HPP
#define SUPERSPLIT_CAVITY_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "supersplit/collective.hpp"
#include "supersplit/spectrum.hpp"

namespace supersplit::cavity {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CalibrationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Hyperfine-field / splitting calibration pairs (tesla, splitting in gamma
/// units) used for the default field coefficient.
const std::vector<std::pair<double, double>>& default_b_pairs();

/// Least-squares slope through the origin of (B, phi) pairs, gamma per tesla.
/// Accepts a single pair (exact ratio); rejects empty input or all-zero B.
double fit_b_coefficient(const std::vector<std::pair<double, double>>& pairs);

/// Thin-film cavity operating constants mapping (angle offset, field) to
/// collective parameters and a two-channel reflectivity model.
///
/// kappa and phi0 defaults are placeholder scales for a grazing-incidence
/// keV-range cavity, not measured values; coupling_C is calibration-set.
/// The channel constants r_el and q are plumbing, not physics claims: q is
/// kept comparable to r_el (weak nuclear channel) and its phase is fixed so
/// that the interference dips sit on the pole positions.
struct CavityConfig {
    double phi0 = 3.5e-3;             // mode grazing angle, rad
    double omega_over_gamma = 3.06e12; // transition frequency in gamma units
    double kappa = 3e5;               // cavity decay rate, gamma units
    double coupling_C = -1.0;         // gamma^2; < 0 means "not calibrated"
    double b_to_phi = 0.0;            // gamma per tesla; 0 means "use default fit"
    double r_el_mag = 0.3;            // electronic channel away from resonance
    double r_el_phase = 3.14159265358979323846;
    double q_mag = 0.3;               // nuclear channel weight
    double q_phase = -1.2;            // rad
    double gamma = 1.0;

    double field_coefficient() const; // b_to_phi or the default fit
    Complex channel_weight() const;   // q
    void validate() const;            // throws ConfigError
};

/// Cavity detuning produced by a small angle offset from the mode angle:
/// Delta_C = -omega * phi0 * delta_phi, in units of gamma.
double detuning_from_angle(const CavityConfig& cfg, double delta_phi_rad);

/// Electronic (non-resonant) reflection amplitude: suppressed to 0 exactly on
/// resonance, a configured constant off resonance.
Complex r_electronic(const CavityConfig& cfg, double delta_phi_rad);

/// Collective parameters at an operating point. The level shift follows the
/// dispersive cavity response and the superradiant enhancement the absorptive
/// one, sharing one coupling constant:
///   L     = -C * Delta_C / (kappa^2 + Delta_C^2)   (positive offset -> positive L)
///   Gamma = gamma + C * kappa / (kappa^2 + Delta_C^2)
///   phi   = b_to_phi * B
CollectiveParams collective_params_from_cavity(const CavityConfig& cfg,
                                               double delta_phi_rad,
                                               double b_tesla);

/// Solves coupling_C from L(at_delta_phi) = target_L (exact inversion).
/// Throws CalibrationError when the sign convention makes the target
/// unreachable at that angle.
CavityConfig calibrate(const CavityConfig& cfg, double target_L,
                       double at_delta_phi_rad);

/// Two-channel reflectivity |r_electronic + q * amplitude(delta)|^2 sampled
/// like a radiation spectrum. On resonance (r_electronic = 0) it reduces to
/// |q|^2 |amplitude|^2.
SpectrumGrid reflectivity_spectrum(const CavityConfig& cfg, double delta_phi_rad,
                                   double b_tesla, double span, int n_points,
                                   bool normalize);

struct DipReport {
    int n_dips = 0;          // refined minima below the baseline
    double separation = 0.0; // between the two deepest dips
    double position_lo = 0.0;
    double position_hi = 0.0;
    double depth_lo = 0.0; // intensity at the dips
    double depth_hi = 0.0;
    double baseline = 0.0;
};

/// Locates interference dips: refined minima lying below the off-resonant
/// baseline |r_electronic|^2.
DipReport measure_dips(const SpectrumGrid& grid, double baseline);

/// key = value configuration with optional [sections]. Recognized keys:
/// phi0_mrad, omega_over_gamma, kappa_over_gamma, coupling_C, b_to_phi,
/// r_el_mag, r_el_phase, q_mag, q_phase. '#' and ';' start comments.
CavityConfig parse_config(std::istream& in);
CavityConfig load_config(const std::string& path);

/// Canonical text of the default configuration.
std::string default_config_text();

} // namespace supersplit::cavity

#endif
