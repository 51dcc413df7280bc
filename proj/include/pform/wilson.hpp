#ifndef PFORM_WILSON_HPP
#define PFORM_WILSON_HPP

#include <utility>
#include <vector>

#include "pform/quantization.hpp"

namespace pform {

/// A closed p-chain: signed multiset of p-simplex indices. Closedness
/// (zero boundary, exact integer arithmetic) is checked on construction.
struct Chain {
    int degree = 0;
    std::vector<std::pair<int, int>> terms; // (simplex index, +-1)

    /// Summed integer coefficient vector over the p-simplices.
    Eigen::VectorXi coefficients(int count) const;

    Chain reversed() const;
    Chain operator+(const Chain& other) const;
};

/// Complex p-cochain of per-simplex matrix-element ratios together with
/// the overlap that normalizes them.
struct FieldMatrixElement {
    Eigen::VectorXcd values;
    Complex normalization;
};

/// Residuals of the two vacuum Maxwell equations on matrix elements.
struct MaxwellResiduals {
    double potential_equation = 0.0; // d/dt <A-hat> vs <E-hat>
    double field_equation = 0.0;     // d/dt <E-hat> vs -<L_p A-hat>
};

/// Wilson-surface observables and field quasioperators over one scenario.
/// Labels are phase points whose E lies in the oscillating sector; the A
/// part may carry harmonic (Aharonov-Bohm) components, which enter only
/// through the classical chain pairing.
class WilsonCalculus {
public:
    explicit WilsonCalculus(const FockQuantization& fock);

    const FockQuantization& fock() const { return *fock_; }

    /// Throws CycleError when the boundary of the chain is nonzero.
    Chain make_chain(const std::vector<std::pair<int, int>>& terms) const;

    /// Gamma_gamma as a cochain: pairing (Gamma, a)_M recovers the signed
    /// sum of a over the chain.
    Eigen::VectorXd chain_cochain(const Chain& chain) const;
    /// The observable with dual F* = 0 + Gamma_gamma.
    Observable chain_observable(const Chain& chain) const;

    /// Signed sum of a cochain over the chain (the classical holonomy).
    double classical_pairing(const Chain& chain, const Eigen::VectorXd& cochain) const;
    Complex classical_pairing(const Chain& chain, const Eigen::VectorXcd& cochain) const;

    /// <X'|A-hat|X> ratios per simplex: (A+A')/2 + i L^{-1/2}(E'-E)/2.
    FieldMatrixElement field_A(const PhasePoint& x, const PhasePoint& x_bra) const;
    /// <X'|E-hat|X> ratios per simplex: (E+E')/2 + i L^{1/2}(A-A')/2.
    FieldMatrixElement field_E(const PhasePoint& x, const PhasePoint& x_bra) const;

    /// <X'| loop integral of A-hat |X>.
    MatrixElement wilson(const Chain& chain, const PhasePoint& x, const PhasePoint& x_bra) const;
    /// Normal-ordered exponentiated holonomy; ratio = exp(i wilson ratio).
    MatrixElement holonomy(const Chain& chain, const PhasePoint& x, const PhasePoint& x_bra) const;

    /// Central-difference check of the quantum vacuum Maxwell equations at
    /// time t with step h; labels must be fully oscillating.
    MaxwellResiduals verify_quantum_maxwell(const PhasePoint& x, const PhasePoint& x_bra,
                                            double t, double h) const;

    /// Central-difference check of the Wilson-loop evolution equation.
    double verify_wilson_corollary(const Chain& chain, const PhasePoint& x,
                                   const PhasePoint& x_bra, double t, double h) const;

private:
    void check_label(const PhasePoint& x) const;

    const FockQuantization* fock_;
};

} // namespace pform

#endif
