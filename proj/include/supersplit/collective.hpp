#ifndef SUPERSPLIT_COLLECTIVE_HPP
#define SUPERSPLIT_COLLECTIVE_HPP

#include <complex>
#include <optional>

namespace supersplit {

using Complex = std::complex<double>;

/// Rate/energy parameters of a magnetically split superradiant ensemble.
/// All rate-like fields are expressed in units of `gamma`; `gamma` itself is
/// the single-emitter amplitude decay rate and serves as the unit.
struct CollectiveParams {
    double gamma = 1.0;      // unit of all rates, > 0
    double big_gamma = 1.0;  // superradiant decay rate, >= 1 (units of gamma)
    double lamb_shift = 0.0; // collective level shift, may be negative
    double phi = 0.0;        // single-emitter magnetic splitting, >= 0

    /// Validating constructor. Negative phi is folded to |phi| (the response
    /// is invariant up to relabeling of the two poles).
    static CollectiveParams make(double gamma, double big_gamma,
                                 double lamb_shift, double phi);
};

/// |lambda_plus - lambda_minus| below this (in units of gamma) is treated as
/// a degenerate second-order pole; the pole amplitudes are then undefined.
inline constexpr double kDegeneracyTol = 1e-12;

/// Complex eigenvalue pair of the two-transition ensemble, with derived pole
/// positions, pole amplitudes and the dimensionless shape parameters.
/// Everything is reported in units of gamma.
struct EigenSystem {
    Complex lambda_plus;  // branch carrying the -i*sqrt term
    Complex lambda_minus;
    Complex a_plus;       // pole amplitudes; NaN when degenerate
    Complex a_minus;
    Complex delta_plus;   // pole positions in detuning space, = i*lambda
    Complex delta_minus;
    double x_param = 0.0; // (Gamma-gamma)/phi, meaningful only if x_defined
    double y_param = 0.0; // sqrt(phi^2+4*gamma*Gamma)/(Gamma+gamma)
    bool x_defined = false; // false when phi == 0
    bool degenerate = false;

    /// Distance between the real parts of the two poles (the line splitting
    /// carried by the pole structure). Zero when degenerate.
    double pole_splitting() const;
};

/// Exact closed-form eigenvalues of the split ensemble.
///
/// lambda_pm = (Gamma + gamma + i*L -/+ i*sqrt(phi^2 + (L - i*(Gamma-gamma))^2))/2
///
/// with the principal branch of the square root; lambda_plus is the branch
/// with the "-i*sqrt" sign. Swapping the branch assignment only exchanges the
/// (lambda, A) pairs and leaves the spectral response unchanged.
EigenSystem collective_eigenvalues(const CollectiveParams& params);

struct RegimeParams {
    std::optional<double> x; // empty when phi == 0
    double y = 0.0;
};

/// Dimensionless regime parameters x = (Gamma-gamma)/phi and
/// y = sqrt(phi^2 + 4*gamma*Gamma)/(Gamma+gamma).
RegimeParams regime_parameters(const CollectiveParams& params);

} // namespace supersplit

#endif
