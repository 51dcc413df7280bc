#ifndef PFORM_DYNAMICS_HPP
#define PFORM_DYNAMICS_HPP

#include <Eigen/Dense>

#include "pform/kodaira.hpp"
#include "pform/operator_bundle.hpp"
#include "pform/spectral.hpp"

namespace pform {

/// Gauge-fixed pair [A] + E of degree-p cochains. A carries no exact part
/// and E satisfies the Gauss constraint Dstar_{p-1} E = 0.
struct PhasePoint {
    Eigen::VectorXd A;
    Eigen::VectorXd E;

    PhasePoint operator+(const PhasePoint& other) const { return {A + other.A, E + other.E}; }
    PhasePoint operator-(const PhasePoint& other) const { return {A - other.A, E - other.E}; }
    PhasePoint operator*(double s) const { return {s * A, s * E}; }
};

struct SectorSplit {
    PhasePoint oscillating; // components on the nonzero spectrum of L_p
    PhasePoint free;        // components in ker L_p
};

/// Classical p-form electromagnetism on one assembled scenario: canonical
/// representatives, Hamiltonian, symplectic form and exact spectral time
/// evolution.
class Dynamics {
public:
    explicit Dynamics(OperatorBundle bundle);

    const OperatorBundle& bundle() const { return bundle_; }
    const SpectralData& spectral() const { return spectral_; }
    const KodairaSplit& kodaira() const { return split_; }
    int degree() const { return bundle_.degree(); }
    int cochain_count() const { return bundle_.cochain_count(bundle_.degree()); }

    /// (identity - P_exact) a: the minimum-norm representative of [a].
    Eigen::VectorXd gauge_fix(const Eigen::VectorXd& a_raw) const;
    /// M-orthogonal projection onto ker Dstar_{p-1}.
    Eigen::VectorXd project_gauss(const Eigen::VectorXd& e_raw) const;
    /// Normalizes raw data into a canonical phase point.
    PhasePoint make_phase_point(const Eigen::VectorXd& a_raw, const Eigen::VectorXd& e_raw) const;

    PhasePoint zero() const;

    /// H = (|D_p A|^2 + |E|^2) / 2.
    double hamiltonian(const PhasePoint& x) const;
    /// omega(X, X') = <E, A'> - <E', A> in the M_p inner product.
    double symplectic(const PhasePoint& x, const PhasePoint& y) const;
    /// |A|^2 + |D_p A|^2 + |E|^2, the phase-space Hilbert norm squared.
    double phase_norm_squared(const PhasePoint& x) const;

    double inner(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
        return bundle_.inner(bundle_.degree(), x, y);
    }

    /// |Dstar_{p-1} E|, the Gauss constraint residual.
    double gauss_residual(const PhasePoint& x) const;

    SectorSplit split_sectors(const PhasePoint& x) const;

    /// Harmonic-oscillator evolution by spectral synthesis. Throws
    /// SectorError when x has kernel components beyond tolerance.
    PhasePoint evolve_oscillating(const PhasePoint& x, double t) const;
    /// Aharonov-Bohm shear A -> A + tE.
    PhasePoint evolve_free(const PhasePoint& x, double t) const;
    /// Splits, evolves each sector, recombines.
    PhasePoint evolve(const PhasePoint& x, double t) const;

    /// Dense evolution matrices on (A, E) pairs, for operator-level checks.
    Eigen::MatrixXd oscillating_evolution_matrix(double t) const;
    Eigen::MatrixXd free_evolution_matrix(double t) const;

    double kernel_component_norm(const Eigen::VectorXd& v) const;
    double oscillating_component_norm(const Eigen::VectorXd& v) const;

private:
    OperatorBundle bundle_;
    SpectralData spectral_;
    KodairaSplit split_;
    Eigen::MatrixXd gauge_projector_; // identity - P_exact
};

} // namespace pform

#endif
