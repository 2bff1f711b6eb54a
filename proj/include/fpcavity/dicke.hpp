#pragma once

// Single-mode Dicke model
//
//   H = omega_a S_z + omega_c a^dag a + (y / sqrt(N)) (a + a^dag) S_x
//
// in the symmetric collective-spin sector (S = N/2) times a truncated Fock
// space. Basis index of |m> (x) |n> is (m + S)(fock_cutoff + 1) + n.

#include <Eigen/Dense>
#include <vector>

#include "fpcavity/errors.hpp"

namespace fpcav {

struct DickeParams {
    double omega_a = 1.0;
    double omega_c = 1.0;
    double y = 0.0;
    int n_atoms = 1;
    int fock_cutoff = 20;

    void validate() const;
    std::size_t dimension() const;
};

/// Largest Hilbert-space dimension build_hamiltonian accepts by default.
inline constexpr std::size_t kDefaultMaxDimension = 6000;

Eigen::MatrixXd build_hamiltonian(const DickeParams& p, std::size_t max_dimension = kDefaultMaxDimension);

/// Diagonal of the parity operator exp[i pi (a^dag a + S_z + N/2)]: (-1)^(n + m + N/2).
Eigen::VectorXd parity_diagonal(const DickeParams& p);

struct GroundStateResult {
    double energy = 0.0;
    double photon_number = 0.0;  // <a^dag a>
    double sz_expect = 0.0;      // <S_z>
    double parity = 1.0;         // <Pi>
    double gap = 0.0;            // first excitation energy (either parity)
    bool cutoff_converged = false;
    Eigen::VectorXd state;
};

/// Lowest eigenpair. The Hamiltonian conserves parity, so each parity sector
/// is diagonalised on its own and the lower ground energy wins (energies
/// equal to within 1e-12 relative go to even parity). Convergence in the Fock
/// cutoff is judged by re-solving at ceil(1.25 * fock_cutoff) and requiring
/// |delta <a^dag a>| <= max(1e-8, 1e-4 <a^dag a>).
GroundStateResult ground_state(const DickeParams& p);

struct MeanFieldResult {
    double y_c = 0.0;
    double order_parameter_sq_per_atom = 0.0;  // alpha^2 / N
    double energy_per_atom = 0.0;
    double theta = 0.0;                        // spin polar angle from -z
    double alpha_per_sqrt_n = 0.0;             // signed alpha / sqrt(N) at the minimum
};

/// Classical energy per atom of a coherent photon field alpha and a spin
/// coherent state of length N/2 tilted by theta:
///   omega_c a^2 - (omega_a / 2) cos(theta) + y a sin(theta),  a = alpha / sqrt(N).
double mean_field_energy(const DickeParams& p, double alpha_per_sqrt_n, double theta);

/// Minimises mean_field_energy numerically (nested Brent searches). For
/// y <= y_c = sqrt(omega_a omega_c) the normal branch (alpha = 0) is reported.
MeanFieldResult mean_field(const DickeParams& p);

struct ScanRow {
    double y = 0.0;
    double energy = 0.0;
    double photon_number = 0.0;
    double gap = 0.0;
    double parity = 1.0;
    bool cutoff_converged = false;
};

std::vector<ScanRow> spectrum_scan(const DickeParams& p, const std::vector<double>& y_grid);

}  // namespace fpcav
