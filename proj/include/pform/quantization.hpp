#ifndef PFORM_QUANTIZATION_HPP
#define PFORM_QUANTIZATION_HPP

#include <complex>

#include "pform/dynamics.hpp"

namespace pform {

using Complex = std::complex<double>;

/// Complex structure J on the oscillating sector, together with the
/// positive form h(X,Y) = omega(X, JY) and cached spectral powers
/// L^{1/4}, L^{-1/4}, L^{1/2}, L^{-1/2} (all restricted to the
/// oscillating sector; kernel components map to zero).
class ComplexStructure {
public:
    /// Throws SectorError when L_p has no nonzero spectrum.
    explicit ComplexStructure(const Dynamics& dynamics);

    const Dynamics& dynamics() const { return *dynamics_; }

    Eigen::VectorXd half_power(const Eigen::VectorXd& v) const { return half_ * v; }
    Eigen::VectorXd inv_half_power(const Eigen::VectorXd& v) const { return inv_half_ * v; }
    Eigen::VectorXd quarter_power(const Eigen::VectorXd& v) const { return quarter_ * v; }
    Eigen::VectorXd inv_quarter_power(const Eigen::VectorXd& v) const { return inv_quarter_ * v; }

    /// J(A + E) = L^{-1/2}E + (-L^{1/2}A). Throws SectorError when x has
    /// kernel components beyond tolerance.
    PhasePoint apply(const PhasePoint& x) const;

    /// h(X, Y) = omega(X, JY) = <A, L^{1/2}A'> + <E, L^{-1/2}E'>.
    double h_inner(const PhasePoint& x, const PhasePoint& y) const;
    /// |X|_H^2 = h(X, X) >= 0.
    double h_norm_squared(const PhasePoint& x) const;

    /// <F, G> = h(F*, G*) + i omega(F*, G*) on labels and observables.
    Complex hermitian_inner(const PhasePoint& fstar, const PhasePoint& gstar) const;

private:
    const Dynamics* dynamics_;
    Eigen::MatrixXd half_, inv_half_, quarter_, inv_quarter_;
};

/// Ket label |X> of an electromagnetic coherent state; the phase point is
/// gauge fixed and restricted to the oscillating sector.
struct CoherentLabel {
    PhasePoint point;
};

/// Linear observable F given by its phase-space dual F*, F(X) = omega(F*, X).
/// Singular observables (with harmonic components) are allowed; spectral
/// powers see only their oscillating part.
struct Observable {
    PhasePoint dual;
};

/// Matrix element between coherent states, kept both raw and divided by
/// the overlap <X'|X>.
struct MatrixElement {
    Complex raw;
    Complex ratio;
};

/// Closed-form Gaussian matrix elements of the free boson field over the
/// oscillating sector. Conventions are fixed once here:
///   omega(X, Y)  = <E, A'> - <E', A>            (the classical form)
///   J(A + E)     = L^{-1/2}E + (-L^{1/2}A)
///   h(X, Y)      = omega(X, JY)
///   <F, G>       = h(F*, G*) + i omega(F*, G*)
///   <X'|X>       = exp(omega(X, X')/2i) exp(-|X - X'|_H^2 / 4)
///   W(F)|X>      = exp(omega(F*, X)/2i) |X + F*>
/// and every matrix element below is derived from these.
class FockQuantization {
public:
    explicit FockQuantization(const Dynamics& dynamics);

    const Dynamics& dynamics() const { return *dynamics_; }
    const ComplexStructure& complex_structure() const { return structure_; }

    /// Validates that x is oscillating (throws SectorError otherwise).
    CoherentLabel make_label(const PhasePoint& x) const;
    CoherentLabel zero_label() const { return {dynamics_->zero()}; }
    Observable make_observable(const PhasePoint& fstar) const { return {fstar}; }

    /// mu(F) = exp(-|F*|_H^2 / 4) in (0, 1].
    double characteristic(const Observable& f) const;

    /// <X'|X>.
    Complex overlap(const CoherentLabel& x, const CoherentLabel& x_bra) const;

    /// <X'|W(F)|X>.
    MatrixElement weyl(const Observable& f, const CoherentLabel& x,
                       const CoherentLabel& x_bra) const;

    /// <X'|Phi(F)|X> with Phi(F) = i d/dt W(tF) at t = 0; the ratio equals
    /// (i/2)[<X',F> - <F,X>] and reduces to omega(F*,X) on the diagonal.
    MatrixElement heisenberg(const Observable& f, const CoherentLabel& x,
                             const CoherentLabel& x_bra) const;

    /// Wick power :Phi(F)^n:; the ratio is the nth power of the Heisenberg
    /// ratio. Throws InvalidParameterError for n < 0 or n > 32.
    MatrixElement wick_power(const Observable& f, int n, const CoherentLabel& x,
                             const CoherentLabel& x_bra) const;

    /// Normal-ordered Weyl operator :W(F): = W(F) / <0|W(F)|0>.
    MatrixElement normal_weyl(const Observable& f, const CoherentLabel& x,
                              const CoherentLabel& x_bra) const;

    /// Phase picked up by W(F) acting on |X>: exp(omega(F*, X)/2i).
    Complex weyl_action_phase(const Observable& f, const CoherentLabel& x) const;

    Complex hermitian_inner(const Observable& f, const Observable& g) const {
        return structure_.hermitian_inner(f.dual, g.dual);
    }

private:
    const Dynamics* dynamics_;
    ComplexStructure structure_;
};

} // namespace pform

#endif
