#ifndef PFORM_TOLERANCES_HPP
#define PFORM_TOLERANCES_HPP

namespace pform {

/// Default numerical tolerances. `scale` multiplies every threshold, for
/// the CLI's --tolerance-scale flag. Finite-difference steps are fixed.
struct Tolerances {
    double exactness = 1e-12;          // |D D| relative to entry scale
    double adjointness = 1e-12;        // bilinear identity, relative
    double orthonormality = 1e-10;     // eigenvector Gram residual
    double reconstruction = 1e-9;      // spectral synthesis of L
    double spectral_mapping = 1e-9;    // phi(lambda) = lambda^2 vs L(Lx)
    double nonnegativity = 1e-10;      // min eigenvalue >= -this * lambda_max
    double projector = 1e-10;          // idempotence, orthogonality, completeness
    double annihilator = 1e-9;         // D_k / Dstar_{k-1} on harmonic vectors
    double phase_residual = 1e-10;     // canonical representative residuals
    double gauss = 1e-9;               // Gauss constraint along trajectories
    double conservation = 1e-10;       // H and omega drift, relative
    double group_law = 1e-10;
    double sector_mixing = 1e-10;
    double complex_structure = 1e-10;  // J^2, symplectic invariance, commutation
    double weyl_identity = 1e-12;      // Weyl relations, relative
    double derivative = 1e-6;          // Heisenberg vs d/dt Weyl, absolute
    double variance = 1e-5;            // second-derivative check
    double wick = 1e-12;               // binomial-sum oracle, relative
    double maxwell = 1e-6;             // quantum Maxwell residuals
    double wilson_consistency = 1e-12;
    double gauge_independence = 1e-10;
    double margin_ratio = 1e6;         // kernel vs nonkernel eigenvalue margin
    double norm_change = 1e-3;         // phase norm must drift MORE than this

    double fd_step_first = 1e-4;       // central difference, first derivative
    double fd_step_second = 1e-3;      // central difference, second derivative

    Tolerances scaled(double factor) const {
        Tolerances t = *this;
        t.exactness *= factor;
        t.adjointness *= factor;
        t.orthonormality *= factor;
        t.reconstruction *= factor;
        t.spectral_mapping *= factor;
        t.nonnegativity *= factor;
        t.projector *= factor;
        t.annihilator *= factor;
        t.phase_residual *= factor;
        t.gauss *= factor;
        t.conservation *= factor;
        t.group_law *= factor;
        t.sector_mixing *= factor;
        t.complex_structure *= factor;
        t.weyl_identity *= factor;
        t.derivative *= factor;
        t.variance *= factor;
        t.wick *= factor;
        t.maxwell *= factor;
        t.wilson_consistency *= factor;
        t.gauge_independence *= factor;
        return t;
    }
};

} // namespace pform

#endif
