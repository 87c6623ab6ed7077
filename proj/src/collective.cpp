#include "supersplit/collective.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace supersplit {

CollectiveParams CollectiveParams::make(double gamma, double big_gamma,
                                        double lamb_shift, double phi) {
    if (!std::isfinite(gamma) || !std::isfinite(big_gamma) ||
        !std::isfinite(lamb_shift) || !std::isfinite(phi))
        throw std::invalid_argument("CollectiveParams: non-finite field");
    if (gamma <= 0.0)
        throw std::invalid_argument("CollectiveParams: gamma must be > 0");
    if (big_gamma < 1.0)
        throw std::invalid_argument(
            "CollectiveParams: big_gamma must be >= gamma (>= 1 in gamma units)");
    CollectiveParams p;
    p.gamma = gamma;
    p.big_gamma = big_gamma;
    p.lamb_shift = lamb_shift;
    p.phi = std::abs(phi);
    return p;
}

double EigenSystem::pole_splitting() const {
    if (degenerate) return 0.0;
    return std::abs(delta_plus.real() - delta_minus.real());
}

EigenSystem collective_eigenvalues(const CollectiveParams& params) {
    const double g = params.gamma;
    // Work in absolute rates so that unit rescaling is exercised, then
    // convert back to units of gamma.
    const double G = params.big_gamma * g;
    const double L = params.lamb_shift * g;
    const double ph = params.phi * g;

    const Complex trace(G + g, L);
    const Complex z(L, -(G - g));
    const Complex root = std::sqrt(ph * ph + z * z);
    const Complex i(0.0, 1.0);

    EigenSystem eig;
    eig.lambda_plus = 0.5 * (trace - i * root) / g;
    eig.lambda_minus = 0.5 * (trace + i * root) / g;
    eig.delta_plus = i * eig.lambda_plus;
    eig.delta_minus = i * eig.lambda_minus;

    const Complex dl = eig.lambda_plus - eig.lambda_minus;
    eig.degenerate = std::abs(dl) < kDegeneracyTol;
    if (eig.degenerate) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        eig.a_plus = Complex(nan, nan);
        eig.a_minus = Complex(nan, nan);
    } else {
        eig.a_plus = (eig.lambda_plus - 1.0) / dl;
        eig.a_minus = -(eig.lambda_minus - 1.0) / dl;
    }

    eig.x_defined = params.phi > 0.0;
    if (eig.x_defined)
        eig.x_param = (params.big_gamma - 1.0) / params.phi;
    else
        eig.x_param = std::numeric_limits<double>::quiet_NaN();
    eig.y_param = std::sqrt(params.phi * params.phi + 4.0 * params.big_gamma) /
                  (params.big_gamma + 1.0);
    return eig;
}

RegimeParams regime_parameters(const CollectiveParams& params) {
    RegimeParams r;
    if (params.phi > 0.0) r.x = (params.big_gamma - 1.0) / params.phi;
    r.y = std::sqrt(params.phi * params.phi + 4.0 * params.big_gamma) /
          (params.big_gamma + 1.0);
    return r;
}

} // namespace supersplit
