#include "pform/wilson.hpp"

namespace pform {

namespace {
constexpr Complex kImag{0.0, 1.0};
}

Eigen::VectorXi Chain::coefficients(int count) const {
    Eigen::VectorXi c = Eigen::VectorXi::Zero(count);
    for (const auto& [index, sign] : terms) c[index] += sign;
    return c;
}

Chain Chain::reversed() const {
    Chain out{degree, terms};
    for (auto& [index, sign] : out.terms) sign = -sign;
    return out;
}

Chain Chain::operator+(const Chain& other) const {
    Chain out{degree, terms};
    out.terms.insert(out.terms.end(), other.terms.begin(), other.terms.end());
    return out;
}

WilsonCalculus::WilsonCalculus(const FockQuantization& fock) : fock_(&fock) {}

Chain WilsonCalculus::make_chain(const std::vector<std::pair<int, int>>& terms) const {
    const Dynamics& dyn = fock_->dynamics();
    const int p = dyn.degree();
    const int count = dyn.cochain_count();
    Chain chain{p, terms};
    for (const auto& [index, sign] : terms) {
        if (index < 0 || index >= count) {
            throw InvalidParameterError("make_chain: simplex index " + std::to_string(index) +
                                        " out of range");
        }
        if (sign != 1 && sign != -1) {
            throw InvalidParameterError("make_chain: orientation coefficients must be +-1");
        }
    }
    if (p >= 1) {
        Eigen::VectorXi boundary =
            dyn.bundle().d(p - 1).transpose() * chain.coefficients(count);
        if (boundary.cwiseAbs().sum() != 0) {
            throw CycleError("make_chain: chain has nonzero boundary; holonomy needs a cycle");
        }
    }
    return chain;
}

Eigen::VectorXd WilsonCalculus::chain_cochain(const Chain& chain) const {
    const Dynamics& dyn = fock_->dynamics();
    Eigen::VectorXd indicator =
        chain.coefficients(dyn.cochain_count()).cast<double>();
    return indicator.array() / dyn.spectral().mass.array();
}

Observable WilsonCalculus::chain_observable(const Chain& chain) const {
    const Dynamics& dyn = fock_->dynamics();
    return {{Eigen::VectorXd::Zero(dyn.cochain_count()), chain_cochain(chain)}};
}

double WilsonCalculus::classical_pairing(const Chain& chain, const Eigen::VectorXd& cochain) const {
    double sum = 0.0;
    for (const auto& [index, sign] : chain.terms) sum += sign * cochain[index];
    return sum;
}

Complex WilsonCalculus::classical_pairing(const Chain& chain, const Eigen::VectorXcd& cochain) const {
    Complex sum{0.0, 0.0};
    for (const auto& [index, sign] : chain.terms) sum += static_cast<double>(sign) * cochain[index];
    return sum;
}

void WilsonCalculus::check_label(const PhasePoint& x) const {
    const Dynamics& dyn = fock_->dynamics();
    double scale = m_norm(dyn.spectral().mass, x.E);
    if (scale > 0.0 && dyn.kernel_component_norm(x.E) > 1e-10 * scale) {
        throw SectorError("wilson label: electric field must lie in the oscillating sector");
    }
    if (x.A.size() != dyn.cochain_count() || x.E.size() != dyn.cochain_count()) {
        throw DimensionError("wilson label: cochain size mismatch");
    }
}

FieldMatrixElement WilsonCalculus::field_A(const PhasePoint& x, const PhasePoint& x_bra) const {
    check_label(x);
    check_label(x_bra);
    const ComplexStructure& cs = fock_->complex_structure();
    Eigen::VectorXd real_part = 0.5 * (x.A + x_bra.A);
    Eigen::VectorXd imag_part = 0.5 * cs.inv_half_power(x_bra.E - x.E);
    FieldMatrixElement out;
    out.values = real_part + kImag * imag_part;
    out.normalization = fock_->overlap({x}, {x_bra});
    return out;
}

FieldMatrixElement WilsonCalculus::field_E(const PhasePoint& x, const PhasePoint& x_bra) const {
    check_label(x);
    check_label(x_bra);
    const ComplexStructure& cs = fock_->complex_structure();
    Eigen::VectorXd real_part = 0.5 * (x.E + x_bra.E);
    Eigen::VectorXd imag_part = 0.5 * cs.half_power(x.A - x_bra.A);
    FieldMatrixElement out;
    out.values = real_part + kImag * imag_part;
    out.normalization = fock_->overlap({x}, {x_bra});
    return out;
}

MatrixElement WilsonCalculus::wilson(const Chain& chain, const PhasePoint& x,
                                     const PhasePoint& x_bra) const {
    if (chain.degree != fock_->dynamics().degree()) {
        throw DegreeError("wilson: chain degree does not match the scenario's form degree");
    }
    FieldMatrixElement field = field_A(x, x_bra);
    Complex ratio = classical_pairing(chain, field.values);
    return {ratio * field.normalization, ratio};
}

MatrixElement WilsonCalculus::holonomy(const Chain& chain, const PhasePoint& x,
                                       const PhasePoint& x_bra) const {
    MatrixElement w = wilson(chain, x, x_bra);
    Complex ratio = std::exp(kImag * w.ratio);
    FieldMatrixElement field = field_A(x, x_bra);
    return {ratio * field.normalization, ratio};
}

MaxwellResiduals WilsonCalculus::verify_quantum_maxwell(const PhasePoint& x,
                                                        const PhasePoint& x_bra, double t,
                                                        double h) const {
    const Dynamics& dyn = fock_->dynamics();
    const Eigen::MatrixXd& laplacian = dyn.bundle().laplacian(dyn.degree());

    auto raw_A = [&](double time) -> Eigen::VectorXcd {
        PhasePoint xt = dyn.evolve_oscillating(x, time);
        PhasePoint bt = dyn.evolve_oscillating(x_bra, time);
        FieldMatrixElement f = field_A(xt, bt);
        return f.values * f.normalization;
    };
    auto raw_E = [&](double time) -> Eigen::VectorXcd {
        PhasePoint xt = dyn.evolve_oscillating(x, time);
        PhasePoint bt = dyn.evolve_oscillating(x_bra, time);
        FieldMatrixElement f = field_E(xt, bt);
        return f.values * f.normalization;
    };

    Eigen::VectorXcd dA = (raw_A(t + h) - raw_A(t - h)) / (2.0 * h);
    Eigen::VectorXcd dE = (raw_E(t + h) - raw_E(t - h)) / (2.0 * h);
    Eigen::VectorXcd e_now = raw_E(t);
    Eigen::VectorXcd la_now = laplacian * raw_A(t);

    MaxwellResiduals r;
    r.potential_equation = (dA - e_now).cwiseAbs().maxCoeff();
    r.field_equation = (dE + la_now).cwiseAbs().maxCoeff();
    return r;
}

double WilsonCalculus::verify_wilson_corollary(const Chain& chain, const PhasePoint& x,
                                               const PhasePoint& x_bra, double t, double h) const {
    const Dynamics& dyn = fock_->dynamics();

    auto holonomy_ratio = [&](double time) -> Complex {
        PhasePoint xt = dyn.evolve_oscillating(x, time);
        PhasePoint bt = dyn.evolve_oscillating(x_bra, time);
        return holonomy(chain, xt, bt).ratio;
    };

    Complex lhs = (holonomy_ratio(t + h) - holonomy_ratio(t - h)) / (2.0 * h);

    PhasePoint xt = dyn.evolve_oscillating(x, t);
    PhasePoint bt = dyn.evolve_oscillating(x_bra, t);
    Complex e_loop = classical_pairing(chain, field_E(xt, bt).values);
    Complex rhs = kImag * e_loop * holonomy_ratio(t);

    return std::abs(lhs - rhs);
}

} // namespace pform
