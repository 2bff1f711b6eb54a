#include "fpcavity/dicke.hpp"

#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fpcavity/errors.hpp"

namespace fpcav {

void DickeParams::validate() const {
    if (!(omega_a > 0.0) || !(omega_c > 0.0) || !std::isfinite(omega_a) || !std::isfinite(omega_c))
        throw DomainError("dicke: omega_a and omega_c must be > 0");
    if (!(y >= 0.0) || !std::isfinite(y)) throw DomainError("dicke: coupling y must be >= 0");
    if (n_atoms < 1) throw DomainError("dicke: n_atoms must be >= 1");
    if (fock_cutoff < 1) throw DomainError("dicke: fock_cutoff must be >= 1");
}

std::size_t DickeParams::dimension() const {
    return static_cast<std::size_t>(n_atoms + 1) * static_cast<std::size_t>(fock_cutoff + 1);
}

Eigen::MatrixXd build_hamiltonian(const DickeParams& p, std::size_t max_dimension) {
    p.validate();
    const std::size_t dim = p.dimension();
    if (dim > max_dimension)
        throw DomainError("dicke: Hilbert-space dimension " + std::to_string(dim) + " exceeds the limit " +
                          std::to_string(max_dimension));
    const int nb = p.fock_cutoff + 1;
    const double S = 0.5 * p.n_atoms;
    const double g = p.y / std::sqrt(static_cast<double>(p.n_atoms));
    auto index = [nb](int j, int n) { return static_cast<Eigen::Index>(j) * nb + n; };

    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (int j = 0; j <= p.n_atoms; ++j) {
        const double m = j - S;
        for (int n = 0; n < nb; ++n) H(index(j, n), index(j, n)) = p.omega_a * m + p.omega_c * n;
    }
    if (g == 0.0) return H;
    for (int j = 0; j < p.n_atoms; ++j) {
        const double m = j - S;
        const double sx = 0.5 * std::sqrt(S * (S + 1.0) - m * (m + 1.0));  // <m+1|S_x|m>
        for (int n = 0; n + 1 < nb; ++n) {
            const double elem = g * sx * std::sqrt(static_cast<double>(n + 1));  // x <n+1|a^dag|n>
            // (m, n) <-> (m+1, n+1) and (m, n+1) <-> (m+1, n)
            H(index(j, n), index(j + 1, n + 1)) = elem;
            H(index(j + 1, n + 1), index(j, n)) = elem;
            H(index(j, n + 1), index(j + 1, n)) = elem;
            H(index(j + 1, n), index(j, n + 1)) = elem;
        }
    }
    return H;
}

Eigen::VectorXd parity_diagonal(const DickeParams& p) {
    p.validate();
    const int nb = p.fock_cutoff + 1;
    Eigen::VectorXd d(static_cast<Eigen::Index>(p.dimension()));
    // n + m + N/2 = n + j with j = m + N/2.
    for (int j = 0; j <= p.n_atoms; ++j)
        for (int n = 0; n < nb; ++n) d(static_cast<Eigen::Index>(j) * nb + n) = ((n + j) % 2 == 0) ? 1.0 : -1.0;
    return d;
}

namespace {

struct SectorSolution {
    double e0 = std::numeric_limits<double>::infinity();
    double e1 = std::numeric_limits<double>::infinity();
    Eigen::VectorXd ground;  // embedded in the full space
};

SectorSolution solve_sector(const Eigen::MatrixXd& H, const Eigen::VectorXd& parity, double sign) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index i = 0; i < parity.size(); ++i)
        if (parity(i) == sign) idx.push_back(i);
    SectorSolution out;
    if (idx.empty()) return out;
    const auto k = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXd block(k, k);
    for (Eigen::Index a = 0; a < k; ++a)
        for (Eigen::Index b = 0; b < k; ++b) block(a, b) = H(idx[a], idx[b]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block);
    if (es.info() != Eigen::Success) throw ConvergenceError("dicke: eigensolver failed", 0.0, 0.0);
    out.e0 = es.eigenvalues()(0);
    if (k > 1) out.e1 = es.eigenvalues()(1);
    out.ground = Eigen::VectorXd::Zero(H.rows());
    for (Eigen::Index a = 0; a < k; ++a) out.ground(idx[a]) = es.eigenvectors()(a, 0);
    return out;
}

GroundStateResult solve(const DickeParams& p) {
    const Eigen::MatrixXd H = build_hamiltonian(p);
    const Eigen::VectorXd parity = parity_diagonal(p);
    const SectorSolution even = solve_sector(H, parity, 1.0);
    const SectorSolution odd = solve_sector(H, parity, -1.0);
    // Deep in the superradiant phase the two parity ground states are
    // degenerate to rounding; prefer even parity inside that band.
    const bool even_wins = even.e0 <= odd.e0 + 1e-12 * std::max(1.0, std::abs(odd.e0));
    const SectorSolution& g = even_wins ? even : odd;
    const SectorSolution& other = even_wins ? odd : even;

    GroundStateResult r;
    r.energy = g.e0;
    r.gap = std::min(g.e1, other.e0) - g.e0;
    r.state = g.ground;

    const int nb = p.fock_cutoff + 1;
    const double S = 0.5 * p.n_atoms;
    double photons = 0.0, sz = 0.0, par = 0.0;
    for (int j = 0; j <= p.n_atoms; ++j) {
        for (int n = 0; n < nb; ++n) {
            const Eigen::Index i = static_cast<Eigen::Index>(j) * nb + n;
            const double w = r.state(i) * r.state(i);
            photons += w * n;
            sz += w * (j - S);
            par += w * parity(i);
        }
    }
    r.photon_number = photons;
    r.sz_expect = sz;
    r.parity = par;
    return r;
}

}  // namespace

GroundStateResult ground_state(const DickeParams& p) {
    p.validate();
    GroundStateResult r = solve(p);
    DickeParams bigger = p;
    bigger.fock_cutoff = static_cast<int>(std::ceil(1.25 * p.fock_cutoff));
    if (bigger.fock_cutoff == p.fock_cutoff) ++bigger.fock_cutoff;
    try {
        const GroundStateResult check = solve(bigger);
        r.cutoff_converged =
            std::abs(check.photon_number - r.photon_number) <= std::max(1e-8, 1e-4 * r.photon_number);
    } catch (const DomainError&) {
        r.cutoff_converged = false;  // the enlarged problem exceeds the dimension guard
    }
    return r;
}

double mean_field_energy(const DickeParams& p, double a, double theta) {
    return p.omega_c * a * a - 0.5 * p.omega_a * std::cos(theta) + p.y * a * std::sin(theta);
}

MeanFieldResult mean_field(const DickeParams& p) {
    p.validate();
    MeanFieldResult r;
    r.y_c = std::sqrt(p.omega_a * p.omega_c);
    r.energy_per_atom = -0.5 * p.omega_a;
    if (p.y <= r.y_c) return r;

    using boost::math::tools::brent_find_minima;
    constexpr int bits = std::numeric_limits<double>::digits;
    // |a| beyond y / omega_c only raises the energy.
    const double a_span = p.y / p.omega_c + 1.0;
    auto best_a = [&](double theta) {
        return brent_find_minima([&](double a) { return mean_field_energy(p, a, theta); }, -a_span, a_span, bits);
    };
    // The theta in (0, pi) branch pairs with a < 0; its mirror (-theta, -a) is degenerate.
    const auto [theta, e] = brent_find_minima([&](double t) { return best_a(t).second; }, 0.0,
                                              std::numbers::pi, bits);
    const double a = best_a(theta).first;
    r.theta = theta;
    r.alpha_per_sqrt_n = a;
    r.order_parameter_sq_per_atom = a * a;
    r.energy_per_atom = e;
    return r;
}

std::vector<ScanRow> spectrum_scan(const DickeParams& p, const std::vector<double>& y_grid) {
    if (y_grid.empty()) throw DomainError("spectrum_scan: empty y grid");
    std::vector<ScanRow> rows;
    rows.reserve(y_grid.size());
    for (double y : y_grid) {
        DickeParams q = p;
        q.y = y;
        const GroundStateResult g = ground_state(q);
        rows.push_back({y, g.energy, g.photon_number, g.gap, g.parity, g.cutoff_converged});
    }
    return rows;
}

}  // namespace fpcav
