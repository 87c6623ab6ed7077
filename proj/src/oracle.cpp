#include "supersplit/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace supersplit::oracle {

EnsembleMatrix build_matrix(const CollectiveParams& params, int n1, int n2,
                            int cross_sign) {
    if (n1 != n2 || n1 < 1)
        throw std::invalid_argument("build_matrix: requires n1 == n2 >= 1");
    if (cross_sign != 1 && cross_sign != -1)
        throw std::invalid_argument("build_matrix: cross_sign must be +1 or -1");

    const int n = n1 + n2;
    EnsembleMatrix mat;
    mat.n1 = n1;
    mat.n2 = n2;
    mat.params = params;
    mat.coupling = Complex(params.big_gamma - 1.0, params.lamb_shift) /
                   static_cast<double>(n);

    mat.entries.resize(n, n);
    const Complex d1(1.0, +0.5 * params.phi);
    const Complex d2(1.0, -0.5 * params.phi);
    for (int j = 0; j < n; ++j) {
        const bool j1 = j < n1;
        for (int m = 0; m < n; ++m) {
            if (j == m) {
                mat.entries(j, m) = j1 ? d1 : d2;
            } else {
                const bool same_group = j1 == (m < n1);
                mat.entries(j, m) =
                    same_group ? mat.coupling
                               : static_cast<double>(cross_sign) * mat.coupling;
            }
        }
    }
    return mat;
}

std::pair<Complex, Complex> symmetric_subspace_eigenvalues(const EnsembleMatrix& mat) {
    const int n1 = mat.n1;
    const int n2 = mat.n2;
    const int n = n1 + n2;
    Eigen::VectorXcd u1 = Eigen::VectorXcd::Zero(n);
    Eigen::VectorXcd u2 = Eigen::VectorXcd::Zero(n);
    const double a1 = 1.0 / std::sqrt(static_cast<double>(n1));
    const double a2 = 1.0 / std::sqrt(static_cast<double>(n2));
    for (int j = 0; j < n1; ++j) u1(j) = a1;
    for (int j = n1; j < n; ++j) u2(j) = a2;

    // The group-uniform pair spans an invariant subspace, so the projected
    // 2x2 eigenvalues are exact eigenvalues of the full matrix.
    const Eigen::VectorXcd m1 = mat.entries * u1;
    const Eigen::VectorXcd m2 = mat.entries * u2;
    const Complex h11 = u1.dot(m1);
    const Complex h12 = u1.dot(m2);
    const Complex h21 = u2.dot(m1);
    const Complex h22 = u2.dot(m2);

    const Complex mean = 0.5 * (h11 + h22);
    const Complex disc = std::sqrt(0.25 * (h11 - h22) * (h11 - h22) + h12 * h21);
    return {mean + disc, mean - disc};
}

std::vector<Complex> dense_eigenvalues(const EnsembleMatrix& mat) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(mat.entries, false);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("dense_eigenvalues: eigensolver failed");
    const auto& ev = solver.eigenvalues();
    return std::vector<Complex>(ev.data(), ev.data() + ev.size());
}

OracleEvolution evolve_and_spectrum(const EnsembleMatrix& mat, double t_max,
                                    const std::vector<double>& deltas) {
    const int n = mat.n1 + mat.n2;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(mat.entries, true);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("evolve_and_spectrum: eigensolver failed");
    const Eigen::VectorXcd mu = solver.eigenvalues();
    const Eigen::MatrixXcd& V = solver.eigenvectors();

    double min_re = mu(0).real();
    for (int k = 1; k < n; ++k) min_re = std::min(min_re, mu(k).real());
    if (min_re <= 0.0)
        throw std::domain_error(
            "evolve_and_spectrum: non-dissipative mode (Re eigenvalue <= 0); "
            "increase N relative to Gamma/gamma");
    if (t_max < 10.0 / min_re)
        throw std::invalid_argument("evolve_and_spectrum: t_max too short");

    const double amp = 1.0 / std::sqrt(static_cast<double>(n));
    const Eigen::VectorXcd beta0 = Eigen::VectorXcd::Constant(n, amp);

    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(V);
    const Eigen::VectorXcd w = lu.solve(beta0);

    // Pole weights of the uniform-sum response; they add up to exactly 1 and
    // vanish for the dark modes.
    Eigen::VectorXcd c(n);
    for (int m = 0; m < n; ++m) c(m) = V.col(m).sum() * w(m) * amp;

    OracleEvolution out;

    int i0 = 0, i1 = 1;
    if (std::abs(c(1)) > std::abs(c(0))) std::swap(i0, i1);
    for (int m = 2; m < n; ++m) {
        if (std::abs(c(m)) > std::abs(c(i0))) {
            i1 = i0;
            i0 = m;
        } else if (std::abs(c(m)) > std::abs(c(i1))) {
            i1 = m;
        }
    }
    out.modes = {mu(i0), mu(i1)};
    out.weights = {c(i0), c(i1)};

    const Complex i(0.0, 1.0);
    auto response = [&](double d) {
        return std::norm(c(i0) / (d - i * mu(i0)) + c(i1) / (d - i * mu(i1)));
    };
    out.grid.delta_values = deltas;
    out.grid.intensity.reserve(deltas.size());
    for (double d : deltas) out.grid.intensity.push_back(response(d));
    out.grid.extrema = detail::locate_extrema(out.grid.delta_values,
                                              out.grid.intensity, response);

    const int n_samples = 129;
    out.times.reserve(n_samples);
    out.population.reserve(n_samples);
    for (int k = 0; k < n_samples; ++k) {
        const double t = t_max * k / (n_samples - 1);
        Eigen::VectorXcd phase(n);
        for (int m = 0; m < n; ++m) phase(m) = std::exp(-mu(m) * t) * w(m);
        const Eigen::VectorXcd beta = V * phase;
        out.times.push_back(t);
        out.population.push_back(beta.squaredNorm());
    }

    const Eigen::MatrixXcd Vinv = lu.inverse();
    const double norm_v = V.cwiseAbs().colwise().sum().maxCoeff();
    const double norm_vi = Vinv.cwiseAbs().colwise().sum().maxCoeff();
    out.condition_estimate = norm_v * norm_vi;
    out.ill_conditioned = out.condition_estimate > 1e8;
    return out;
}

} // namespace supersplit::oracle
