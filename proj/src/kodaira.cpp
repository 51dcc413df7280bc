#include "pform/kodaira.hpp"

#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

namespace pform {

namespace {

using BigInt = boost::multiprecision::cpp_int;

// M-orthonormal basis for the column space of A in the M inner product:
// SVD of M^{1/2} A, keep left singular vectors above threshold.
struct ColumnSpace {
    Eigen::MatrixXd basis; // columns, M-orthonormal
    double smallest_kept = 0.0;
    double largest_dropped = 0.0;
};

ColumnSpace m_column_space(const Eigen::MatrixXd& a, const Eigen::VectorXd& mass,
                           const ZeroThresholdPolicy& policy) {
    ColumnSpace cs;
    if (a.cols() == 0 || a.rows() == 0) {
        cs.basis.resize(a.rows(), 0);
        return cs;
    }
    Eigen::VectorXd sqrt_m = mass.cwiseSqrt();
    Eigen::MatrixXd w = sqrt_m.asDiagonal() * a;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(w, Eigen::ComputeThinU);
    const Eigen::VectorXd& sigma = svd.singularValues();
    double cutoff = std::max(policy.relative * (sigma.size() ? sigma[0] : 0.0), policy.absolute);
    int rank = 0;
    for (int i = 0; i < sigma.size(); ++i) {
        if (sigma[i] > cutoff) {
            ++rank;
            cs.smallest_kept = sigma[i];
        } else {
            cs.largest_dropped = std::max(cs.largest_dropped, sigma[i]);
            break;
        }
    }
    cs.basis = sqrt_m.cwiseInverse().asDiagonal() * svd.matrixU().leftCols(rank);
    return cs;
}

Eigen::MatrixXd projector_from_basis(const Eigen::MatrixXd& basis, const Eigen::VectorXd& mass) {
    if (basis.cols() == 0) {
        return Eigen::MatrixXd::Zero(basis.rows(), basis.rows());
    }
    return basis * (basis.transpose() * Eigen::MatrixXd(mass.asDiagonal()));
}

} // namespace

int exact_rank(const Eigen::MatrixXi& a) {
    const int rows = static_cast<int>(a.rows());
    const int cols = static_cast<int>(a.cols());
    if (rows == 0 || cols == 0) return 0;

    std::vector<std::vector<BigInt>> m(rows, std::vector<BigInt>(cols));
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) m[i][j] = a(i, j);
    }

    // Bareiss fraction-free elimination with row/column pivot search.
    int rank = 0;
    BigInt prev_pivot = 1;
    for (int step = 0; step < std::min(rows, cols); ++step) {
        int pr = -1, pc = -1;
        for (int i = step; i < rows && pr < 0; ++i) {
            for (int j = step; j < cols; ++j) {
                if (m[i][j] != 0) {
                    pr = i;
                    pc = j;
                    break;
                }
            }
        }
        if (pr < 0) break;
        std::swap(m[step], m[pr]);
        if (pc != step) {
            for (int i = 0; i < rows; ++i) std::swap(m[i][step], m[i][pc]);
        }
        const BigInt pivot = m[step][step];
        for (int i = step + 1; i < rows; ++i) {
            for (int j = step + 1; j < cols; ++j) {
                m[i][j] = (m[i][j] * pivot - m[i][step] * m[step][j]) / prev_pivot;
            }
            m[i][step] = 0;
        }
        prev_pivot = pivot;
        ++rank;
    }
    return rank;
}

int betti(const SimplicialComplex& c, int k) {
    if (k < 0 || k > c.dimension()) throw DegreeError("betti: degree out of range");
    const int n_k = c.count(k);
    int rank_dk = (k < c.dimension()) ? exact_rank(c.coboundary(k)) : 0;
    int rank_dkm1 = (k > 0) ? exact_rank(c.coboundary(k - 1)) : 0;
    return (n_k - rank_dk) - rank_dkm1;
}

KodairaSplit kodaira_split(const OperatorBundle& bundle, int k, const SpectralData& spectral) {
    if (k < 0 || k > bundle.dimension()) throw DegreeError("kodaira_split: degree out of range");
    const int n_k = bundle.cochain_count(k);
    if (spectral.size() != n_k) {
        throw DimensionError("kodaira_split: spectral data does not match degree " +
                             std::to_string(k));
    }
    const Eigen::VectorXd& mass = bundle.mass(k);
    ZeroThresholdPolicy policy; // same relative cut as the eigenvalue kernel

    KodairaSplit split;

    ColumnSpace exact = m_column_space(bundle.twisted(k - 1), mass, policy);
    split.dim_exact = static_cast<int>(exact.basis.cols());
    split.P_exact = projector_from_basis(exact.basis, mass);

    // ran Dstar_k is spanned by the right singular directions of D_k.
    ColumnSpace coexact = m_column_space(bundle.twisted_adjoint(k), mass, policy);
    split.dim_coexact = static_cast<int>(coexact.basis.cols());
    split.P_coexact = projector_from_basis(coexact.basis, mass);

    Eigen::MatrixXd harmonic_basis(n_k, spectral.kernel_dimension());
    int h = 0;
    for (int i = 0; i < spectral.size(); ++i) {
        if (spectral.is_kernel(i)) harmonic_basis.col(h++) = spectral.eigenvectors.col(i);
    }
    split.dim_harmonic = h;
    split.P_harmonic = projector_from_basis(harmonic_basis, mass);

    split.largest_kernel_eigenvalue = spectral.largest_kernel_abs();
    split.smallest_nonkernel_eigenvalue = spectral.smallest_nonkernel();

    std::ostringstream warn;
    if (split.dim_exact + split.dim_harmonic + split.dim_coexact != n_k) {
        warn << "rank mismatch: " << split.dim_exact << "+" << split.dim_harmonic << "+"
             << split.dim_coexact << " != " << n_k << "; ";
    }
    const double margin_floor = 1e3; // kept/dropped singular values within this are suspect
    for (const ColumnSpace* cs : {&exact, &coexact}) {
        if (cs->largest_dropped > 0.0 && cs->smallest_kept > 0.0 &&
            cs->smallest_kept < margin_floor * cs->largest_dropped) {
            warn << "rank margin thin (kept " << cs->smallest_kept << ", dropped "
                 << cs->largest_dropped << "); ";
        }
    }
    if (split.largest_kernel_eigenvalue > 0.0 && split.smallest_nonkernel_eigenvalue > 0.0 &&
        split.smallest_nonkernel_eigenvalue < margin_floor * split.largest_kernel_eigenvalue) {
        warn << "kernel margin thin (" << split.largest_kernel_eigenvalue << " vs "
             << split.smallest_nonkernel_eigenvalue << "); ";
    }
    split.warning = warn.str();
    return split;
}

KodairaSplit kodaira_split(const OperatorBundle& bundle, int k) {
    SpectralData spectral = spectral_decomposition(bundle.laplacian(k), bundle.mass(k));
    return kodaira_split(bundle, k, spectral);
}

int harmonic_dimension(const SpectralData& spectral) {
    return spectral.kernel_dimension();
}

} // namespace pform
