#ifndef SUPERSPLIT_SPECTRUM_HPP
#define SUPERSPLIT_SPECTRUM_HPP

#include <functional>
#include <string>
#include <vector>

#include "supersplit/collective.hpp"

namespace supersplit {

enum class ExtremumKind { maximum, minimum };

struct Extremum {
    double position = 0.0; // units of gamma
    double value = 0.0;
    ExtremumKind kind = ExtremumKind::maximum;
};

/// Sampled intensity over a detuning axis with refined extrema.
struct SpectrumGrid {
    std::vector<double> delta_values; // strictly increasing
    std::vector<double> intensity;    // >= 0
    std::vector<Extremum> extrema;    // ordered by position, alternating kind
    bool normalized = false;
};

/// Two-pole spectral amplitude A+/(delta - i*lambda+) + A-/(delta - i*lambda-).
/// Throws std::domain_error for a degenerate eigensystem.
Complex spectral_amplitude(const EigenSystem& eig, double delta);

/// Same response written as a single fraction,
/// (delta - i*gamma)/((delta - i*lambda+)(delta - i*lambda-)); equal to
/// spectral_amplitude by the residue identities. Kept as an independent
/// evaluation route for consistency checks.
Complex spectral_amplitude_fraction(const EigenSystem& eig, double delta);

/// Second-order-pole amplitude (delta - i*gamma)/(delta - i*(Gamma+gamma)/2)^2
/// valid exactly at the degeneracy. Throws std::domain_error when params are
/// not degenerate within kDegeneracyTol.
Complex degenerate_amplitude(const CollectiveParams& params, double delta);

/// Default sampling half-width: max(4*phi, 8*(Gamma+gamma), 4*|L|, 20*gamma).
double default_span(const CollectiveParams& params);

inline constexpr int kDefaultPoints = 4001;

/// Position tolerance of the golden-section extremum refinement.
inline constexpr double kExtremumTol = 1e-6;

/// |amplitude|^2 sampled on a uniform grid over [-span, +span]; switches to
/// the second-order-pole form when the parameters are degenerate. Extrema are
/// located on the grid and refined to kExtremumTol. With `normalize`, the
/// intensity (and extrema values) are scaled to unit maximum.
SpectrumGrid radiation_spectrum(const CollectiveParams& params, double span,
                                int n_points, bool normalize);

struct SplittingReport {
    double splitting = 0.0;    // distance between the two tallest maxima
    double midpoint = 0.0;     // their average position
    double height_ratio = 1.0; // smaller/larger peak intensity, in (0, 1]
    int n_maxima = 0;
};

/// Peak statistics of a sampled spectrum. With fewer than two maxima the
/// report degrades to a single-line result: splitting 0, ratio 1, midpoint at
/// the lone maximum (0 if none).
SplittingReport measure_splitting(const SpectrumGrid& grid);

enum class AsymptoticRegime { broad_narrow, zeeman_like, large_lamb_shift };

struct AsymptoticPoles {
    Complex delta_plus, delta_minus;
    Complex a_plus, a_minus;
    bool in_range = true; // false = requested outside the regime's validity
};

/// Closed-form limiting expressions for the poles and amplitudes:
///   broad_narrow      x >> 1, L ~ 0: one broad and one narrow pole at zero
///   zeeman_like       x << 1, L ~ 0: two Lorentzians split by ~phi
///   large_lamb_shift  L, phi >> Gamma-gamma: split by sqrt(phi^2+L^2)
/// Intended for convergence testing against the exact eigenvalues. Out of
/// range the formulas are still evaluated and in_range is cleared.
AsymptoticPoles asymptotic_poles(const CollectiveParams& params,
                                 AsymptoticRegime regime);

enum class RegimeLabel {
    eit_like,
    zeeman_like,
    anomalous_collective,
    degenerate,
    unclassified,
};

const char* to_string(RegimeLabel label);

/// Classification thresholds. The qualitative conditions are sharp only in
/// the asymptotic sense; these constants make them testable and are reported
/// with every classification.
struct RegimeThresholds {
    double lamb_small = 0.1; // |L| <= lamb_small*(Gamma-gamma) counts as L ~ 0
    double x_small = 0.3;    // x <= x_small counts as x << 1
    double dominance = 3.0;  // L,phi >= dominance*(Gamma-gamma) counts as >>
};

struct RegimeReport {
    RegimeLabel label = RegimeLabel::unclassified;
    std::optional<double> x;
    double y = 0.0;
    std::optional<double> lamb_over_sr; // L/(Gamma-gamma), empty when Gamma=gamma
    std::optional<double> phi_over_sr;  // phi/(Gamma-gamma)
    bool eit_lower = false; // Gamma*gamma <= phi^2/4
    bool eit_upper = false; // phi^2/4 < (Gamma-gamma)^2
    double measured_splitting = 0.0;  // from a default-grid spectrum
    double predicted_splitting = 0.0; // pole splitting from the eigenvalues
    RegimeThresholds thresholds;
};

/// Deterministic regime label with the quantitative evidence behind it.
RegimeReport classify_regime(const CollectiveParams& params,
                             const RegimeThresholds& thresholds = {});

namespace detail {

/// Uniform sampling of an arbitrary non-negative response with extremum
/// detection and refinement; shared by the radiation and reflectivity paths.
SpectrumGrid sample_grid(const std::function<double(double)>& f, double span,
                         int n_points, bool normalize);

std::vector<Extremum> locate_extrema(const std::vector<double>& xs,
                                     const std::vector<double>& ys,
                                     const std::function<double(double)>& f);

} // namespace detail

} // namespace supersplit

#endif
