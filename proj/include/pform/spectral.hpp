#ifndef PFORM_SPECTRAL_HPP
#define PFORM_SPECTRAL_HPP

#include <functional>

#include <Eigen/Dense>

#include "pform/errors.hpp"

namespace pform {

/// Eigenvalues below max(relative * lambda_max, absolute) count as kernel.
struct ZeroThresholdPolicy {
    double relative = 1e-9;
    double absolute = 1e-14;
};

/// Eigenpairs of an M-self-adjoint operator in the M inner product.
/// eigenvalues ascending; eigenvector columns M-orthonormal.
struct SpectralData {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;
    Eigen::VectorXd mass;
    double zero_threshold = 0.0;

    int size() const { return static_cast<int>(eigenvalues.size()); }
    bool is_kernel(int i) const { return eigenvalues[i] < zero_threshold; }
    int kernel_dimension() const;

    /// Smallest eigenvalue classified nonkernel; 0 if none.
    double smallest_nonkernel() const;
    /// Largest eigenvalue classified kernel (absolute value); 0 if none.
    double largest_kernel_abs() const;

    double coefficient(int i, const Eigen::VectorXd& x) const {
        return (eigenvectors.col(i).array() * mass.array() * x.array()).sum();
    }
};

/// Dense eigendecomposition of the M-symmetric problem L v = lambda v,
/// done by symmetrizing with M^{1/2} (exact for diagonal M).
SpectralData spectral_decomposition(const Eigen::MatrixXd& L, const Eigen::VectorXd& mass,
                                    ZeroThresholdPolicy policy = {});

/// Functional calculus: sum_i f(lambda_i) v_i <v_i, x>_M. Throws
/// DomainError when f is not finite at a needed eigenvalue.
Eigen::VectorXd apply_function(const SpectralData& s, const std::function<double(double)>& f,
                               const Eigen::VectorXd& x);

/// Same sum restricted to nonkernel eigenvalues.
Eigen::VectorXd apply_function_oscillating(const SpectralData& s,
                                           const std::function<double(double)>& f,
                                           const Eigen::VectorXd& x);

} // namespace pform

#endif
