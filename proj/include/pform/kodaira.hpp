#ifndef PFORM_KODAIRA_HPP
#define PFORM_KODAIRA_HPP

#include <string>

#include <Eigen/Dense>

#include "pform/operator_bundle.hpp"
#include "pform/spectral.hpp"

namespace pform {

/// Exact rank of an integer matrix (fraction-free elimination in
/// arbitrary-precision integers).
int exact_rank(const Eigen::MatrixXi& a);

/// k-th Betti number of the complex from exact integer ranks of the
/// coboundaries: dim ker d_k - rank d_{k-1}.
int betti(const SimplicialComplex& c, int k);

/// M-orthogonal projectors onto the exact, harmonic and coexact summands
/// of degree-k cochains.
struct KodairaSplit {
    Eigen::MatrixXd P_exact;
    Eigen::MatrixXd P_harmonic;
    Eigen::MatrixXd P_coexact;
    int dim_exact = 0;
    int dim_harmonic = 0;
    int dim_coexact = 0;

    // Margin between the kernel and nonkernel parts of the spectrum of L_k.
    double largest_kernel_eigenvalue = 0.0;
    double smallest_nonkernel_eigenvalue = 0.0;

    // Nonempty when a rank decision sat close to its threshold.
    std::string warning;
};

/// Splits degree-k cochains as ran D_{k-1} + ker L_k + ran Dstar_k. The
/// spectral data must come from bundle.laplacian(k).
KodairaSplit kodaira_split(const OperatorBundle& bundle, int k, const SpectralData& spectral);

/// Convenience overload computing the spectral data internally.
KodairaSplit kodaira_split(const OperatorBundle& bundle, int k);

/// Number of eigenvalues of L_k below the zero threshold.
int harmonic_dimension(const SpectralData& spectral);

} // namespace pform

#endif
