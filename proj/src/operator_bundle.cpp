#include "pform/operator_bundle.hpp"

namespace pform {

Eigen::MatrixXd twisted_derivative(const Eigen::MatrixXi& d_k, const Eigen::VectorXd& e_k,
                                   const Eigen::VectorXd& e_k1) {
    if (e_k1.size() != d_k.rows() || e_k.size() != d_k.cols()) {
        throw AssemblyError("twisted_derivative: twist weight sizes do not match d_k");
    }
    return e_k1.asDiagonal() * d_k.cast<double>() * e_k.cwiseInverse().asDiagonal();
}

Eigen::MatrixXd adjoint(const Eigen::MatrixXd& D_k, const Eigen::VectorXd& m_k,
                        const Eigen::VectorXd& m_k1) {
    if (m_k1.size() != D_k.rows() || m_k.size() != D_k.cols()) {
        throw AssemblyError("adjoint: mass sizes do not match D_k");
    }
    for (int i = 0; i < m_k.size(); ++i) {
        if (!(m_k[i] > 0.0)) throw MetricError("adjoint: mass matrix must be positive definite");
    }
    return m_k.cwiseInverse().asDiagonal() * D_k.transpose() * m_k1.asDiagonal();
}

OperatorBundle OperatorBundle::assemble(const SimplicialComplex& complex, const MetricData& metric,
                                        int p, std::optional<double> twist_coefficient) {
    metric.validate(complex);
    const int n = complex.dimension();
    if (p < 0 || p > n) throw DegreeError("assemble: form degree p must satisfy 0 <= p <= n");

    OperatorBundle b;
    b.n_ = n;
    b.p_ = p;
    b.coefficient_ = twist_coefficient.value_or((n - 2.0 * p - 1.0) / 2.0);

    b.mass_.resize(n + 1);
    b.twist_.resize(n + 1);
    for (int k = 0; k <= n; ++k) {
        b.mass_[k] = mass_matrix(complex, metric, k);
        b.twist_[k] = twist_weights(complex, metric, b.coefficient_, k);
    }
    b.d_.resize(n);
    b.D_.resize(n);
    b.Dstar_.resize(n);
    for (int k = 0; k < n; ++k) {
        b.d_[k] = complex.coboundary(k);
        b.D_[k] = pform::twisted_derivative(b.d_[k], b.twist_[k], b.twist_[k + 1]);
        b.Dstar_[k] = pform::adjoint(b.D_[k], b.mass_[k], b.mass_[k + 1]);
    }
    b.L_.resize(n + 1);
    for (int k = 0; k <= n; ++k) {
        Eigen::MatrixXd L = Eigen::MatrixXd::Zero(complex.count(k), complex.count(k));
        if (k < n) L += b.Dstar_[k] * b.D_[k];
        if (k > 0) L += b.D_[k - 1] * b.Dstar_[k - 1];
        b.L_[k] = L;
    }
    return b;
}

int OperatorBundle::cochain_count(int k) const {
    if (k < 0 || k > n_) return 0;
    return static_cast<int>(mass_[k].size());
}

const Eigen::MatrixXi& OperatorBundle::d(int k) const {
    if (k < 0 || k >= n_) throw DegreeError("d: degree " + std::to_string(k) + " outside 0..n-1");
    return d_[k];
}

const Eigen::VectorXd& OperatorBundle::mass(int k) const {
    if (k < 0 || k > n_) throw DegreeError("mass: degree out of range");
    return mass_[k];
}

const Eigen::VectorXd& OperatorBundle::twist(int k) const {
    if (k < 0 || k > n_) throw DegreeError("twist: degree out of range");
    return twist_[k];
}

Eigen::MatrixXd OperatorBundle::twisted(int k) const {
    if (k < 0 || k >= n_) {
        // D_{-1} and D_n are the zero maps off the end of the complex.
        int rows = cochain_count(k + 1);
        int cols = cochain_count(k);
        return Eigen::MatrixXd::Zero(rows, cols);
    }
    return D_[k];
}

Eigen::MatrixXd OperatorBundle::twisted_adjoint(int k) const {
    if (k < 0 || k >= n_) {
        int rows = cochain_count(k);
        int cols = cochain_count(k + 1);
        return Eigen::MatrixXd::Zero(rows, cols);
    }
    return Dstar_[k];
}

const Eigen::MatrixXd& OperatorBundle::laplacian(int k) const {
    if (k < 0 || k > n_) throw DegreeError("laplacian: degree out of range");
    return L_[k];
}

} // namespace pform
