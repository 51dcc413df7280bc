#ifndef PFORM_OPERATOR_BUNDLE_HPP
#define PFORM_OPERATOR_BUNDLE_HPP

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "pform/simplicial_complex.hpp"

namespace pform {

/// Inner product of k-cochains under a diagonal mass matrix.
inline double m_inner(const Eigen::VectorXd& mass, const Eigen::VectorXd& x,
                      const Eigen::VectorXd& y) {
    return (x.array() * mass.array() * y.array()).sum();
}

inline double m_norm(const Eigen::VectorXd& mass, const Eigen::VectorXd& x) {
    return std::sqrt(std::max(0.0, m_inner(mass, x, x)));
}

/// D_k = E_{k+1} d_k E_k^{-1}.
Eigen::MatrixXd twisted_derivative(const Eigen::MatrixXi& d_k, const Eigen::VectorXd& e_k,
                                   const Eigen::VectorXd& e_k1);

/// Dstar_k = M_k^{-1} D_k^T M_{k+1}, the metric adjoint of D_k.
Eigen::MatrixXd adjoint(const Eigen::MatrixXd& D_k, const Eigen::VectorXd& m_k,
                        const Eigen::VectorXd& m_k1);

/// Coboundaries, mass matrices, twist weights, twisted derivatives, their
/// adjoints, and twisted Laplacians for one (n, p, phi) scenario. Immutable
/// after assembly.
class OperatorBundle {
public:
    /// twist coefficient defaults to (n - 2p - 1) / 2.
    static OperatorBundle assemble(const SimplicialComplex& complex, const MetricData& metric,
                                   int p, std::optional<double> twist_coefficient = std::nullopt);

    int dimension() const { return n_; }
    int degree() const { return p_; }
    double twist_coefficient() const { return coefficient_; }

    int cochain_count(int k) const;

    // Integer coboundary d_k, 0 <= k < n.
    const Eigen::MatrixXi& d(int k) const;
    // Mass diagonal M_k, 0 <= k <= n.
    const Eigen::VectorXd& mass(int k) const;
    // Twist diagonal E_k, 0 <= k <= n.
    const Eigen::VectorXd& twist(int k) const;

    /// Twisted derivative D_k; the zero map outside 0 <= k < n.
    Eigen::MatrixXd twisted(int k) const;
    /// Adjoint Dstar_k; the zero map outside 0 <= k < n.
    Eigen::MatrixXd twisted_adjoint(int k) const;
    /// L_k = Dstar_k D_k + D_{k-1} Dstar_{k-1}.
    const Eigen::MatrixXd& laplacian(int k) const;

    double inner(int k, const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
        return m_inner(mass(k), x, y);
    }
    double norm(int k, const Eigen::VectorXd& x) const { return m_norm(mass(k), x); }

private:
    int n_ = 0;
    int p_ = 0;
    double coefficient_ = 0.0;
    std::vector<Eigen::MatrixXi> d_;      // k = 0..n-1
    std::vector<Eigen::VectorXd> mass_;   // k = 0..n
    std::vector<Eigen::VectorXd> twist_;  // k = 0..n
    std::vector<Eigen::MatrixXd> D_;      // k = 0..n-1
    std::vector<Eigen::MatrixXd> Dstar_;  // k = 0..n-1
    std::vector<Eigen::MatrixXd> L_;      // k = 0..n
};

} // namespace pform

#endif
