#include "pform/spectral.hpp"

#include <cmath>
#include <string>

namespace pform {

int SpectralData::kernel_dimension() const {
    int count = 0;
    for (int i = 0; i < size(); ++i) {
        if (is_kernel(i)) ++count;
    }
    return count;
}

double SpectralData::smallest_nonkernel() const {
    for (int i = 0; i < size(); ++i) {
        if (!is_kernel(i)) return eigenvalues[i];
    }
    return 0.0;
}

double SpectralData::largest_kernel_abs() const {
    double largest = 0.0;
    for (int i = 0; i < size(); ++i) {
        if (is_kernel(i)) largest = std::max(largest, std::abs(eigenvalues[i]));
    }
    return largest;
}

SpectralData spectral_decomposition(const Eigen::MatrixXd& L, const Eigen::VectorXd& mass,
                                    ZeroThresholdPolicy policy) {
    if (L.rows() != L.cols() || L.rows() != mass.size()) {
        throw AssemblyError("spectral_decomposition: operator/mass size mismatch");
    }
    SpectralData s;
    s.mass = mass;
    if (L.rows() == 0) {
        s.eigenvalues.resize(0);
        s.eigenvectors.resize(0, 0);
        s.zero_threshold = policy.absolute;
        return s;
    }
    Eigen::VectorXd sqrt_m = mass.cwiseSqrt();
    Eigen::MatrixXd sym = sqrt_m.asDiagonal() * L * sqrt_m.cwiseInverse().asDiagonal();
    sym = 0.5 * (sym + sym.transpose().eval());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("eigensolver failed on a " + std::to_string(L.rows()) + "x" +
                             std::to_string(L.cols()) + " operator (info=" +
                             std::to_string(static_cast<int>(solver.info())) + ")");
    }
    s.eigenvalues = solver.eigenvalues();
    s.eigenvectors = sqrt_m.cwiseInverse().asDiagonal() * solver.eigenvectors();
    double lambda_max = std::max(std::abs(s.eigenvalues[0]),
                                 std::abs(s.eigenvalues[s.size() - 1]));
    s.zero_threshold = std::max(policy.relative * lambda_max, policy.absolute);
    return s;
}

Eigen::VectorXd apply_function(const SpectralData& s, const std::function<double(double)>& f,
                               const Eigen::VectorXd& x) {
    if (x.size() != s.mass.size()) throw DimensionError("apply_function: vector size mismatch");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(x.size());
    for (int i = 0; i < s.size(); ++i) {
        double fi = f(s.eigenvalues[i]);
        if (!std::isfinite(fi)) {
            throw DomainError("apply_function: function not finite at eigenvalue " +
                              std::to_string(s.eigenvalues[i]));
        }
        out += fi * s.coefficient(i, x) * s.eigenvectors.col(i);
    }
    return out;
}

Eigen::VectorXd apply_function_oscillating(const SpectralData& s,
                                           const std::function<double(double)>& f,
                                           const Eigen::VectorXd& x) {
    if (x.size() != s.mass.size()) throw DimensionError("apply_function: vector size mismatch");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(x.size());
    for (int i = 0; i < s.size(); ++i) {
        if (s.is_kernel(i)) continue;
        double fi = f(s.eigenvalues[i]);
        if (!std::isfinite(fi)) {
            throw DomainError("apply_function: function not finite at eigenvalue " +
                              std::to_string(s.eigenvalues[i]));
        }
        out += fi * s.coefficient(i, x) * s.eigenvectors.col(i);
    }
    return out;
}

} // namespace pform
