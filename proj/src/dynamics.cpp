#include "pform/dynamics.hpp"

#include <cmath>

namespace pform {

namespace {

// sin(t sqrt(lambda)) / sqrt(lambda), with the t limit at lambda = 0.
double sinc_sqrt(double lambda, double t) {
    if (lambda <= 0.0) return t;
    double root = std::sqrt(lambda);
    return std::sin(t * root) / root;
}

} // namespace

Dynamics::Dynamics(OperatorBundle bundle)
    : bundle_(std::move(bundle)),
      spectral_(spectral_decomposition(bundle_.laplacian(bundle_.degree()),
                                       bundle_.mass(bundle_.degree()))),
      split_(kodaira_split(bundle_, bundle_.degree(), spectral_)) {
    const int n_p = cochain_count();
    gauge_projector_ = Eigen::MatrixXd::Identity(n_p, n_p) - split_.P_exact;
}

Eigen::VectorXd Dynamics::gauge_fix(const Eigen::VectorXd& a_raw) const {
    if (a_raw.size() != cochain_count()) throw DimensionError("gauge_fix: size mismatch");
    return gauge_projector_ * a_raw;
}

Eigen::VectorXd Dynamics::project_gauss(const Eigen::VectorXd& e_raw) const {
    if (e_raw.size() != cochain_count()) throw DimensionError("project_gauss: size mismatch");
    // ker Dstar_{p-1} is the M-orthocomplement of ran D_{p-1}.
    return gauge_projector_ * e_raw;
}

PhasePoint Dynamics::make_phase_point(const Eigen::VectorXd& a_raw,
                                      const Eigen::VectorXd& e_raw) const {
    return {gauge_fix(a_raw), project_gauss(e_raw)};
}

PhasePoint Dynamics::zero() const {
    return {Eigen::VectorXd::Zero(cochain_count()), Eigen::VectorXd::Zero(cochain_count())};
}

double Dynamics::hamiltonian(const PhasePoint& x) const {
    const int p = bundle_.degree();
    double field_term = 0.0;
    if (p < bundle_.dimension()) {
        Eigen::VectorXd da = bundle_.twisted(p) * x.A;
        field_term = m_inner(bundle_.mass(p + 1), da, da);
    }
    return 0.5 * (field_term + inner(x.E, x.E));
}

double Dynamics::symplectic(const PhasePoint& x, const PhasePoint& y) const {
    if (x.A.size() != y.A.size()) throw DimensionError("symplectic: scenario mismatch");
    return inner(x.E, y.A) - inner(y.E, x.A);
}

double Dynamics::phase_norm_squared(const PhasePoint& x) const {
    const int p = bundle_.degree();
    double field_term = 0.0;
    if (p < bundle_.dimension()) {
        Eigen::VectorXd da = bundle_.twisted(p) * x.A;
        field_term = m_inner(bundle_.mass(p + 1), da, da);
    }
    return inner(x.A, x.A) + field_term + inner(x.E, x.E);
}

double Dynamics::gauss_residual(const PhasePoint& x) const {
    const int p = bundle_.degree();
    Eigen::VectorXd div = bundle_.twisted_adjoint(p - 1) * x.E;
    if (div.size() == 0) return 0.0;
    return m_norm(bundle_.mass(p - 1 >= 0 ? p - 1 : 0), div);
}

double Dynamics::kernel_component_norm(const Eigen::VectorXd& v) const {
    return m_norm(bundle_.mass(bundle_.degree()), split_.P_harmonic * v);
}

double Dynamics::oscillating_component_norm(const Eigen::VectorXd& v) const {
    return m_norm(bundle_.mass(bundle_.degree()), v - split_.P_harmonic * v);
}

SectorSplit Dynamics::split_sectors(const PhasePoint& x) const {
    PhasePoint free{split_.P_harmonic * x.A, split_.P_harmonic * x.E};
    PhasePoint oscillating{x.A - free.A, x.E - free.E};
    return {oscillating, free};
}

PhasePoint Dynamics::evolve_oscillating(const PhasePoint& x, double t) const {
    const double tol = 1e-10;
    double scale = std::max(m_norm(bundle_.mass(bundle_.degree()), x.A),
                            m_norm(bundle_.mass(bundle_.degree()), x.E));
    if (scale > 0.0 &&
        std::max(kernel_component_norm(x.A), kernel_component_norm(x.E)) > tol * scale) {
        throw SectorError("evolve_oscillating: phase point has free-sector components");
    }
    PhasePoint out = zero();
    for (int i = 0; i < spectral_.size(); ++i) {
        if (spectral_.is_kernel(i)) continue;
        const double lambda = spectral_.eigenvalues[i];
        const double root = std::sqrt(lambda);
        const double c = std::cos(t * root);
        const double s = sinc_sqrt(lambda, t);
        const double a_i = spectral_.coefficient(i, x.A);
        const double e_i = spectral_.coefficient(i, x.E);
        out.A += (c * a_i + s * e_i) * spectral_.eigenvectors.col(i);
        out.E += (-lambda * s * a_i + c * e_i) * spectral_.eigenvectors.col(i);
    }
    return out;
}

PhasePoint Dynamics::evolve_free(const PhasePoint& x, double t) const {
    return {x.A + t * x.E, x.E};
}

PhasePoint Dynamics::evolve(const PhasePoint& x, double t) const {
    SectorSplit sectors = split_sectors(x);
    PhasePoint osc = evolve_oscillating(sectors.oscillating, t);
    PhasePoint free = evolve_free(sectors.free, t);
    return osc + free;
}

Eigen::MatrixXd Dynamics::oscillating_evolution_matrix(double t) const {
    const int n = cochain_count();
    Eigen::MatrixXd blocks[2][2];
    for (auto& row : blocks) {
        for (auto& b : row) b = Eigen::MatrixXd::Zero(n, n);
    }
    for (int i = 0; i < spectral_.size(); ++i) {
        if (spectral_.is_kernel(i)) continue;
        const double lambda = spectral_.eigenvalues[i];
        const double root = std::sqrt(lambda);
        const double c = std::cos(t * root);
        const double s = sinc_sqrt(lambda, t);
        Eigen::MatrixXd outer = spectral_.eigenvectors.col(i) *
                                (spectral_.eigenvectors.col(i).transpose() *
                                 Eigen::MatrixXd(spectral_.mass.asDiagonal()));
        blocks[0][0] += c * outer;
        blocks[0][1] += s * outer;
        blocks[1][0] += -lambda * s * outer;
        blocks[1][1] += c * outer;
    }
    Eigen::MatrixXd full(2 * n, 2 * n);
    full << blocks[0][0], blocks[0][1], blocks[1][0], blocks[1][1];
    return full;
}

Eigen::MatrixXd Dynamics::free_evolution_matrix(double t) const {
    const int n = cochain_count();
    Eigen::MatrixXd full(2 * n, 2 * n);
    full << split_.P_harmonic, t * split_.P_harmonic,
            Eigen::MatrixXd::Zero(n, n), split_.P_harmonic;
    return full;
}

} // namespace pform
