#include "pform/quantization.hpp"

#include <cmath>

namespace pform {

namespace {

constexpr Complex kImag{0.0, 1.0};
constexpr double kSectorTolerance = 1e-10;

Eigen::MatrixXd spectral_power_matrix(const SpectralData& s, double exponent) {
    const int n = s.size();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        if (s.is_kernel(i)) continue;
        double factor = std::pow(s.eigenvalues[i], exponent);
        out += factor * s.eigenvectors.col(i) *
               (s.eigenvectors.col(i).transpose() * Eigen::MatrixXd(s.mass.asDiagonal()));
    }
    return out;
}

} // namespace

ComplexStructure::ComplexStructure(const Dynamics& dynamics) : dynamics_(&dynamics) {
    const SpectralData& s = dynamics.spectral();
    if (s.size() == 0 || s.kernel_dimension() == s.size()) {
        throw SectorError("complex structure needs a nonempty oscillating sector");
    }
    half_ = spectral_power_matrix(s, 0.5);
    inv_half_ = spectral_power_matrix(s, -0.5);
    quarter_ = spectral_power_matrix(s, 0.25);
    inv_quarter_ = spectral_power_matrix(s, -0.25);
}

PhasePoint ComplexStructure::apply(const PhasePoint& x) const {
    double scale = std::max(m_norm(dynamics_->spectral().mass, x.A),
                            m_norm(dynamics_->spectral().mass, x.E));
    if (scale > 0.0 && std::max(dynamics_->kernel_component_norm(x.A),
                                dynamics_->kernel_component_norm(x.E)) >
                           kSectorTolerance * scale) {
        throw SectorError("complex structure is only defined on the oscillating sector");
    }
    return {inv_half_ * x.E, -(half_ * x.A)};
}

double ComplexStructure::h_inner(const PhasePoint& x, const PhasePoint& y) const {
    return dynamics_->inner(x.A, half_ * y.A) + dynamics_->inner(x.E, inv_half_ * y.E);
}

double ComplexStructure::h_norm_squared(const PhasePoint& x) const {
    return h_inner(x, x);
}

Complex ComplexStructure::hermitian_inner(const PhasePoint& fstar, const PhasePoint& gstar) const {
    return {h_inner(fstar, gstar), dynamics_->symplectic(fstar, gstar)};
}

FockQuantization::FockQuantization(const Dynamics& dynamics)
    : dynamics_(&dynamics), structure_(dynamics) {}

CoherentLabel FockQuantization::make_label(const PhasePoint& x) const {
    double scale = std::max(m_norm(dynamics_->spectral().mass, x.A),
                            m_norm(dynamics_->spectral().mass, x.E));
    if (scale > 0.0 && std::max(dynamics_->kernel_component_norm(x.A),
                                dynamics_->kernel_component_norm(x.E)) >
                           kSectorTolerance * scale) {
        throw SectorError("coherent labels must have zero free-sector components");
    }
    return {x};
}

double FockQuantization::characteristic(const Observable& f) const {
    return std::exp(-0.25 * structure_.h_norm_squared(f.dual));
}

Complex FockQuantization::overlap(const CoherentLabel& x, const CoherentLabel& x_bra) const {
    PhasePoint diff = x.point - x_bra.point;
    double phase = -0.5 * dynamics_->symplectic(x.point, x_bra.point);
    double gauss = -0.25 * structure_.h_norm_squared(diff);
    return std::exp(Complex{gauss, phase});
}

Complex FockQuantization::weyl_action_phase(const Observable& f, const CoherentLabel& x) const {
    return std::exp(-0.5 * kImag * dynamics_->symplectic(f.dual, x.point));
}

MatrixElement FockQuantization::weyl(const Observable& f, const CoherentLabel& x,
                                     const CoherentLabel& x_bra) const {
    PhasePoint shifted = x.point + f.dual;
    double phase = -0.5 * (dynamics_->symplectic(x.point, x_bra.point) +
                           dynamics_->symplectic(f.dual, x.point) +
                           dynamics_->symplectic(f.dual, x_bra.point));
    double gauss = -0.25 * structure_.h_norm_squared(shifted - x_bra.point);
    Complex raw = std::exp(Complex{gauss, phase});
    return {raw, raw / overlap(x, x_bra)};
}

MatrixElement FockQuantization::heisenberg(const Observable& f, const CoherentLabel& x,
                                           const CoherentLabel& x_bra) const {
    Complex bra_f = structure_.hermitian_inner(x_bra.point, f.dual);
    Complex f_ket = structure_.hermitian_inner(f.dual, x.point);
    Complex ratio = 0.5 * kImag * (bra_f - f_ket);
    return {ratio * overlap(x, x_bra), ratio};
}

MatrixElement FockQuantization::wick_power(const Observable& f, int n, const CoherentLabel& x,
                                           const CoherentLabel& x_bra) const {
    if (n < 0 || n > 32) {
        throw InvalidParameterError("wick_power: order must satisfy 0 <= n <= 32");
    }
    Complex base = heisenberg(f, x, x_bra).ratio;
    Complex ratio{1.0, 0.0};
    for (int i = 0; i < n; ++i) ratio *= base;
    return {ratio * overlap(x, x_bra), ratio};
}

MatrixElement FockQuantization::normal_weyl(const Observable& f, const CoherentLabel& x,
                                            const CoherentLabel& x_bra) const {
    Complex ratio = std::exp(-kImag * heisenberg(f, x, x_bra).ratio);
    return {ratio * overlap(x, x_bra), ratio};
}

} // namespace pform
