#include "supersplit/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace supersplit {

Complex spectral_amplitude(const EigenSystem& eig, double delta) {
    if (eig.degenerate)
        throw std::domain_error(
            "spectral_amplitude: degenerate eigensystem, use degenerate_amplitude");
    const Complex i(0.0, 1.0);
    return eig.a_plus / (delta - i * eig.lambda_plus) +
           eig.a_minus / (delta - i * eig.lambda_minus);
}

Complex spectral_amplitude_fraction(const EigenSystem& eig, double delta) {
    const Complex i(0.0, 1.0);
    return (delta - i) /
           ((delta - i * eig.lambda_plus) * (delta - i * eig.lambda_minus));
}

Complex degenerate_amplitude(const CollectiveParams& params, double delta) {
    const EigenSystem eig = collective_eigenvalues(params);
    if (!eig.degenerate)
        throw std::domain_error("degenerate_amplitude: params are not degenerate");
    const Complex i(0.0, 1.0);
    const Complex d = delta - i * 0.5 * (params.big_gamma + 1.0);
    return (delta - i) / (d * d);
}

double default_span(const CollectiveParams& params) {
    return std::max({4.0 * params.phi, 8.0 * (params.big_gamma + 1.0),
                     4.0 * std::abs(params.lamb_shift), 20.0});
}

namespace {

// Golden-section refinement of a bracketed extremum. `sign` is +1 for maxima,
// -1 for minima. The bracket [a, b] comes from the two grid neighbours.
Extremum refine_extremum(const std::function<double(double)>& f, double a,
                         double b, int sign, ExtremumKind kind) {
    static const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = sign * f(x1);
    double f2 = sign * f(x2);
    while (b - a > kExtremumTol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = sign * f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = sign * f(x1);
        }
    }
    const double pos = 0.5 * (a + b);
    return Extremum{pos, f(pos), kind};
}

} // namespace

namespace detail {

std::vector<Extremum> locate_extrema(const std::vector<double>& xs,
                                     const std::vector<double>& ys,
                                     const std::function<double(double)>& f) {
    // Runs of exactly equal samples (a symmetric grid straddling a stationary
    // point produces them) are treated as one candidate.
    std::vector<Extremum> out;
    const std::size_t n = xs.size();
    std::size_t k = 1;
    while (k + 1 < n) {
        std::size_t end = k;
        while (end + 1 < n && ys[end + 1] == ys[k]) ++end;
        if (end + 1 < n) {
            if (ys[k] > ys[k - 1] && ys[k] > ys[end + 1])
                out.push_back(refine_extremum(f, xs[k - 1], xs[end + 1], +1,
                                              ExtremumKind::maximum));
            else if (ys[k] < ys[k - 1] && ys[k] < ys[end + 1])
                out.push_back(refine_extremum(f, xs[k - 1], xs[end + 1], -1,
                                              ExtremumKind::minimum));
        }
        k = end + 1;
    }
    return out;
}

SpectrumGrid sample_grid(const std::function<double(double)>& f, double span,
                         int n_points, bool normalize) {
    if (!(span > 0.0)) throw std::invalid_argument("span must be > 0");
    if (n_points < 16) throw std::invalid_argument("n_points must be >= 16");

    SpectrumGrid grid;
    grid.delta_values.resize(static_cast<std::size_t>(n_points));
    grid.intensity.resize(static_cast<std::size_t>(n_points));
    const double step = 2.0 * span / (n_points - 1);
    for (int k = 0; k < n_points; ++k) {
        const double d = -span + step * k;
        grid.delta_values[static_cast<std::size_t>(k)] = d;
        grid.intensity[static_cast<std::size_t>(k)] = f(d);
    }
    grid.extrema = locate_extrema(grid.delta_values, grid.intensity, f);

    if (normalize) {
        double peak = 0.0;
        for (double v : grid.intensity) peak = std::max(peak, v);
        for (const Extremum& e : grid.extrema) peak = std::max(peak, e.value);
        if (peak > 0.0) {
            for (double& v : grid.intensity) v /= peak;
            for (Extremum& e : grid.extrema) e.value /= peak;
        }
        grid.normalized = true;
    }
    return grid;
}

} // namespace detail

SpectrumGrid radiation_spectrum(const CollectiveParams& params, double span,
                                int n_points, bool normalize) {
    const EigenSystem eig = collective_eigenvalues(params);
    std::function<double(double)> f;
    if (eig.degenerate)
        f = [params](double d) { return std::norm(degenerate_amplitude(params, d)); };
    else
        f = [eig](double d) { return std::norm(spectral_amplitude(eig, d)); };
    return detail::sample_grid(f, span, n_points, normalize);
}

SplittingReport measure_splitting(const SpectrumGrid& grid) {
    std::vector<const Extremum*> maxima;
    for (const Extremum& e : grid.extrema)
        if (e.kind == ExtremumKind::maximum) maxima.push_back(&e);

    SplittingReport rep;
    rep.n_maxima = static_cast<int>(maxima.size());
    if (maxima.size() < 2) {
        rep.splitting = 0.0;
        rep.height_ratio = 1.0;
        rep.midpoint = maxima.empty() ? 0.0 : maxima.front()->position;
        return rep;
    }
    std::stable_sort(maxima.begin(), maxima.end(),
                     [](const Extremum* a, const Extremum* b) {
                         if (a->value != b->value) return a->value > b->value;
                         return a->position < b->position;
                     });
    const Extremum& p = *maxima[0];
    const Extremum& q = *maxima[1];
    rep.splitting = std::abs(p.position - q.position);
    rep.midpoint = 0.5 * (p.position + q.position);
    const double lo = std::min(p.value, q.value);
    const double hi = std::max(p.value, q.value);
    rep.height_ratio = hi > 0.0 ? lo / hi : 1.0;
    return rep;
}

AsymptoticPoles asymptotic_poles(const CollectiveParams& params,
                                 AsymptoticRegime regime) {
    const double G = params.big_gamma;
    const double L = params.lamb_shift;
    const double ph = params.phi;
    const double sr = G - 1.0;
    const Complex i(0.0, 1.0);
    const RegimeThresholds th;

    AsymptoticPoles ap;
    switch (regime) {
    case AsymptoticRegime::broad_narrow: {
        // One broad pole near Gamma and one narrow near gamma, both centred.
        const double corr = ph * ph / (4.0 * sr);
        ap.delta_plus = i * (G - corr);
        ap.delta_minus = i * (1.0 + corr);
        const double x = sr / ph;
        const double t = x / (2.0 * std::sqrt(x * x - 1.0));
        ap.a_plus = 0.5 + t;
        ap.a_minus = 0.5 - t;
        ap.in_range = ph > 0.0 && sr / ph >= 1.0 / th.x_small &&
                      std::abs(L) <= th.lamb_small * sr;
        break;
    }
    case AsymptoticRegime::zeeman_like: {
        const double re = 0.5 * ph - sr * sr / (4.0 * ph);
        ap.delta_plus = Complex(re, 0.5 * (G + 1.0));
        ap.delta_minus = Complex(-re, 0.5 * (G + 1.0));
        ap.a_plus = 0.5 + sr / (2.0 * ph);
        ap.a_minus = 0.5 - sr / (2.0 * ph);
        ap.in_range = ph > 0.0 && sr / ph <= th.x_small &&
                      std::abs(L) <= th.lamb_small * ph;
        break;
    }
    case AsymptoticRegime::large_lamb_shift: {
        const double s = std::sqrt(ph * ph + L * L);
        ap.delta_plus = 0.5 * Complex(-L + s, G + 1.0 - L * sr / s);
        ap.delta_minus = 0.5 * Complex(-L - s, G + 1.0 + L * sr / s);
        ap.a_plus = (s - L) / (2.0 * s);
        ap.a_minus = (s + L) / (2.0 * s);
        ap.in_range = std::abs(L) >= th.dominance * sr && ph >= th.dominance * sr &&
                      s > 0.0;
        break;
    }
    }
    return ap;
}

const char* to_string(RegimeLabel label) {
    switch (label) {
    case RegimeLabel::eit_like: return "EIT_LIKE";
    case RegimeLabel::zeeman_like: return "ZEEMAN_LIKE";
    case RegimeLabel::anomalous_collective: return "ANOMALOUS_COLLECTIVE";
    case RegimeLabel::degenerate: return "DEGENERATE";
    case RegimeLabel::unclassified: return "UNCLASSIFIED";
    }
    return "UNCLASSIFIED";
}

RegimeReport classify_regime(const CollectiveParams& params,
                             const RegimeThresholds& th) {
    const EigenSystem eig = collective_eigenvalues(params);
    const double G = params.big_gamma;
    const double L = params.lamb_shift;
    const double ph = params.phi;
    const double sr = G - 1.0;

    RegimeReport rep;
    rep.thresholds = th;
    if (eig.x_defined) rep.x = eig.x_param;
    rep.y = eig.y_param;
    if (sr > 0.0) {
        rep.lamb_over_sr = L / sr;
        rep.phi_over_sr = ph / sr;
    }
    rep.eit_lower = G <= 0.25 * ph * ph; // Gamma*gamma <= phi^2/4, gamma units
    rep.eit_upper = 0.25 * ph * ph < sr * sr;
    rep.predicted_splitting = eig.pole_splitting();

    const SpectrumGrid grid =
        radiation_spectrum(params, default_span(params), kDefaultPoints, false);
    rep.measured_splitting = measure_splitting(grid).splitting;

    if (eig.degenerate)
        rep.label = RegimeLabel::degenerate;
    else if (std::abs(L) <= th.lamb_small * sr && rep.eit_lower && rep.eit_upper)
        rep.label = RegimeLabel::eit_like;
    else if (eig.x_defined && eig.x_param <= th.x_small &&
             std::abs(L) <= th.lamb_small * ph)
        rep.label = RegimeLabel::zeeman_like;
    else if (std::abs(L) >= th.dominance * sr && ph >= th.dominance * sr)
        rep.label = RegimeLabel::anomalous_collective;
    else
        rep.label = RegimeLabel::unclassified;
    return rep;
}

} // namespace supersplit
