#ifndef SUPERSPLIT_ORACLE_HPP
#define SUPERSPLIT_ORACLE_HPP

#include <array>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "supersplit/collective.hpp"
#include "supersplit/spectrum.hpp"

namespace supersplit::oracle {

/// Dense all-to-all effective matrix of an N-emitter ensemble with two
/// magnetically split groups, in units of gamma. Diagonal entries are
/// 1 +/- i*phi/2 (group 1 carries the + sign); every off-diagonal entry is
/// the per-pair coupling (Gamma - gamma + i*L)/N, optionally with a flipped
/// sign on the inter-group block (the symmetric-subspace eigenvalues depend
/// on that block only through its square).
struct EnsembleMatrix {
    int n1 = 0;
    int n2 = 0;
    Complex coupling;         // (Gamma-gamma+i*L)/N
    Eigen::MatrixXcd entries; // N x N, N = n1+n2
    CollectiveParams params;
};

/// Builds the ensemble matrix. Requires equal group populations n1 == n2 >= 1
/// (the uniform-excitation treatment assumes balanced groups).
EnsembleMatrix build_matrix(const CollectiveParams& params, int n1, int n2,
                            int cross_sign = +1);

/// Eigenvalues of the 2x2 projection of the matrix onto the two group-uniform
/// vectors. The projected subspace is exactly invariant, and its eigenvalues
/// approach the closed-form pair with an O(1/N) defect.
std::pair<Complex, Complex> symmetric_subspace_eigenvalues(const EnsembleMatrix& mat);

/// Full-matrix eigenvalues (dense solver).
std::vector<Complex> dense_eigenvalues(const EnsembleMatrix& mat);

struct OracleEvolution {
    SpectrumGrid grid;               // |response|^2 over the requested detunings
    std::vector<double> times;       // evolution samples
    std::vector<double> population;  // total excited population at `times`
    std::array<Complex, 2> modes;    // the two dominant (symmetric) eigenvalues
    std::array<Complex, 2> weights;  // their pole weights; sum of all weights is 1
    double condition_estimate = 0.0; // ||V||_1 * ||V^-1||_1 of the eigenbasis
    bool ill_conditioned = false;    // condition_estimate > 1e8
};

/// Evolves the uniformly excited amplitude vector under d(beta)/dt = -M*beta
/// by eigendecomposition, and reconstructs the emitted amplitude spectrum as
/// sum_m c_m/(delta - i*mu_m) restricted to the two dominant-weight modes.
/// Requires t_max >= 10 / min(Re eigenvalues).
OracleEvolution evolve_and_spectrum(const EnsembleMatrix& mat, double t_max,
                                    const std::vector<double>& deltas);

} // namespace supersplit::oracle

#endif
