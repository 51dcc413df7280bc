#include <doctest.h>

#include <random>

#include "pform/mesh_generators.hpp"
#include "pform/operator_bundle.hpp"
#include "pform/spectral.hpp"

using namespace pform;

namespace {

Mesh torus_with_random_phi(unsigned seed = 7) {
    Mesh mesh = make_torus(4, 4);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 0.4);
    for (int v = 0; v < 16; ++v) mesh.metric.phi[v] = normal(rng);
    return mesh;
}

} // namespace

TEST_CASE("twisted derivative reduces to d when phi vanishes") {
    Mesh mesh = make_torus(4, 4);
    OperatorBundle b = OperatorBundle::assemble(mesh.complex, mesh.metric, 1);
    for (int k = 0; k < 2; ++k) {
        CHECK((b.twisted(k) - b.d(k).cast<double>()).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("conformal coefficient gives the untwisted operator for any phi") {
    Mesh mesh = torus_with_random_phi();
    // c = (n - 2p - 1)/2 vanishes in the conformally invariant case; the
    // override reproduces it on this 2d mesh.
    OperatorBundle b = OperatorBundle::assemble(mesh.complex, mesh.metric, 1, 0.0);
    for (int k = 0; k < 2; ++k) {
        CHECK((b.twisted(k) - b.d(k).cast<double>()).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("D compose D vanishes for random twists") {
    Mesh mesh = torus_with_random_phi();
    OperatorBundle b = OperatorBundle::assemble(mesh.complex, mesh.metric, 1);
    Eigen::MatrixXd dd = b.twisted(1) * b.twisted(0);
    double scale = b.twisted(1).cwiseAbs().maxCoeff() * b.twisted(0).cwiseAbs().maxCoeff();
    CHECK(dd.cwiseAbs().maxCoeff() <= 1e-12 * scale);
}

TEST_CASE("default twist coefficient") {
    Mesh mesh = make_torus(4, 4);
    OperatorBundle b = OperatorBundle::assemble(mesh.complex, mesh.metric, 1);
    CHECK(b.twist_coefficient() == doctest::Approx((2 - 2 - 1) / 2.0));
}

TEST_CASE("adjoint against the inner product") {
    Mesh mesh = torus_with_random_phi(11);
    for (int k = 0; k <= 2; ++k) {
        mesh.metric.dual_volume[k] =
            (Eigen::VectorXd::Random(mesh.complex.count(k)).array() * 0.4 + 1.0).matrix();
    }
    OperatorBundle b = OperatorBundle::assemble(mesh.complex, mesh.metric, 1);

    // Identity mass gives the plain transpose.
    Eigen::MatrixXd D = b.twisted(0);
    Eigen::VectorXd ones0 = Eigen::VectorXd::Ones(16), ones1 = Eigen::VectorXd::Ones(48);
    Eigen::MatrixXd Dstar_flat = adjoint(D, ones0, ones1);
    CHECK((Dstar_flat - D.transpose()).cwiseAbs().maxCoeff() == 0.0);

    std::mt19937_64 rng(3);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int k = 0; k < 2; ++k) {
        for (int trial = 0; trial < 20; ++trial) {
            Eigen::VectorXd beta(b.cochain_count(k)), alpha(b.cochain_count(k + 1));
            for (int i = 0; i < beta.size(); ++i) beta[i] = normal(rng);
            for (int i = 0; i < alpha.size(); ++i) alpha[i] = normal(rng);
            double lhs = m_inner(b.mass(k + 1), alpha, b.twisted(k) * beta);
            double rhs = m_inner(b.mass(k), b.twisted_adjoint(k) * alpha, beta);
            CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max({std::abs(lhs), std::abs(rhs), 1.0}));
        }
    }

    // ran Dstar_1 is M-orthogonal to the harmonic 1-forms.
    SpectralData s = spectral_decomposition(b.laplacian(1), b.mass(1));
    for (int trial = 0; trial < 5; ++trial) {
        Eigen::VectorXd alpha(b.cochain_count(2));
        for (int i = 0; i < alpha.size(); ++i) alpha[i] = normal(rng);
        Eigen::VectorXd coexact = b.twisted_adjoint(1) * alpha;
        for (int i = 0; i < s.size(); ++i) {
            if (!s.is_kernel(i)) continue;
            CHECK(std::abs(m_inner(b.mass(1), coexact, s.eigenvectors.col(i))) < 1e-10);
        }
    }

    CHECK_THROWS_AS(adjoint(D, ones1, ones1), AssemblyError);
    CHECK_THROWS_AS(twisted_derivative(b.d(0), ones1, ones1), AssemblyError);
    Eigen::VectorXd bad = ones0;
    bad[3] = 0.0;
    CHECK_THROWS_AS(adjoint(D, bad, ones1), MetricError);
}

TEST_CASE("circle Laplacian is the cycle graph Laplacian") {
    Mesh mesh = make_circle(4);
    OperatorBundle b = OperatorBundle::assemble(mesh.complex, mesh.metric, 0);
    Eigen::MatrixXd expected(4, 4);
    expected << 2, -1, 0, -1,
                -1, 2, -1, 0,
                0, -1, 2, -1,
                -1, 0, -1, 2;
    CHECK((b.laplacian(0) - expected).cwiseAbs().maxCoeff() < 1e-14);

    SpectralData s = spectral_decomposition(b.laplacian(0), b.mass(0));
    Eigen::VectorXd eig(4);
    eig << 0, 2, 2, 4; // 2 - 2cos(2 pi j / 4)
    CHECK((s.eigenvalues - eig).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(s.kernel_dimension() == 1);
}

TEST_CASE("Laplacian is positive semidefinite") {
    Mesh mesh = torus_with_random_phi(23);
    OperatorBundle b = OperatorBundle::assemble(mesh.complex, mesh.metric, 1);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        Eigen::VectorXd x(48);
        for (int i = 0; i < 48; ++i) x[i] = normal(rng);
        CHECK(m_inner(b.mass(1), x, b.laplacian(1) * x) >= -1e-10);
    }
}

TEST_CASE("torus harmonic 1-forms") {
    Mesh mesh = make_torus(4, 4);
    OperatorBundle b = OperatorBundle::assemble(mesh.complex, mesh.metric, 1);
    SpectralData s = spectral_decomposition(b.laplacian(1), b.mass(1));
    CHECK(s.kernel_dimension() == 2); // first Betti number of the torus
}

TEST_CASE("spectral decomposition basics") {
    Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(5, 5);
    Eigen::VectorXd mass = Eigen::VectorXd::Ones(5);
    SpectralData s = spectral_decomposition(zero, mass);
    CHECK(s.kernel_dimension() == 5);

    Mesh mesh = torus_with_random_phi(31);
    OperatorBundle b = OperatorBundle::assemble(mesh.complex, mesh.metric, 1);
    s = spectral_decomposition(b.laplacian(1), b.mass(1));
    Eigen::MatrixXd gram =
        s.eigenvectors.transpose() * Eigen::MatrixXd(s.mass.asDiagonal()) * s.eigenvectors;
    gram -= Eigen::MatrixXd::Identity(s.size(), s.size());
    CHECK(gram.cwiseAbs().maxCoeff() < 1e-10);

    for (int i = 1; i < s.size(); ++i) CHECK(s.eigenvalues[i] >= s.eigenvalues[i - 1]);
}

TEST_CASE("functional calculus") {
    Mesh mesh = torus_with_random_phi(43);
    OperatorBundle b = OperatorBundle::assemble(mesh.complex, mesh.metric, 1);
    SpectralData s = spectral_decomposition(b.laplacian(1), b.mass(1));

    std::mt19937_64 rng(17);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd x(48);
    for (int i = 0; i < 48; ++i) x[i] = normal(rng);

    // identity function reproduces L x (direct multiply oracle)
    Eigen::VectorXd lx = apply_function(s, [](double z) { return z; }, x);
    Eigen::VectorXd direct = b.laplacian(1) * x;
    CHECK((lx - direct).cwiseAbs().maxCoeff() <= 1e-9 * direct.cwiseAbs().maxCoeff());

    // the constant function is completeness
    Eigen::VectorXd same = apply_function(s, [](double) { return 1.0; }, x);
    CHECK((same - x).cwiseAbs().maxCoeff() < 1e-10);

    // square equals applying L twice
    Eigen::VectorXd sq = apply_function(s, [](double z) { return z * z; }, x);
    Eigen::VectorXd twice = b.laplacian(1) * (b.laplacian(1) * x);
    CHECK((sq - twice).cwiseAbs().maxCoeff() <= 1e-9 * twice.cwiseAbs().maxCoeff());

    // sin(t sqrt(lambda))/sqrt(lambda) with the removable singularity filled in
    const double t = 1.3;
    Eigen::VectorXd wave = apply_function(
        s,
        [t](double z) { return z <= 1e-14 ? t : std::sin(t * std::sqrt(z)) / std::sqrt(z); },
        x);
    CHECK(wave.allFinite());

    // A function left undefined on the kernel raises a domain error.
    Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(3, 3);
    SpectralData flat = spectral_decomposition(zero, Eigen::VectorXd::Ones(3));
    CHECK_THROWS_AS(
        apply_function(flat, [](double z) { return 1.0 / z; }, Eigen::VectorXd::Ones(3)),
        DomainError);
}
