#include <doctest.h>

#include <random>

#include "pform/kodaira.hpp"
#include "pform/mesh_generators.hpp"

using namespace pform;

TEST_CASE("exact integer rank") {
    Eigen::MatrixXi eye = Eigen::MatrixXi::Identity(4, 4);
    CHECK(exact_rank(eye) == 4);
    CHECK(exact_rank(Eigen::MatrixXi::Zero(3, 5)) == 0);

    Eigen::MatrixXi rank1(3, 3);
    rank1 << 1, 2, 3, 2, 4, 6, -1, -2, -3;
    CHECK(exact_rank(rank1) == 1);

    Eigen::MatrixXi mixed(3, 4);
    mixed << 1, 0, 1, 0,
             0, 1, 1, 0,
             1, 1, 2, 0;
    CHECK(exact_rank(mixed) == 2);
}

TEST_CASE("Betti numbers of the generated topologies") {
    Mesh torus = make_torus(4, 4);
    CHECK(betti(torus.complex, 0) == 1);
    CHECK(betti(torus.complex, 1) == 2);
    CHECK(betti(torus.complex, 2) == 1);

    Mesh sphere = make_sphere_octahedron(0);
    CHECK(betti(sphere.complex, 0) == 1);
    CHECK(betti(sphere.complex, 1) == 0);
    CHECK(betti(sphere.complex, 2) == 1);

    Mesh circle = make_circle(4);
    CHECK(betti(circle.complex, 0) == 1);
    CHECK(betti(circle.complex, 1) == 1);

    Mesh disc = make_disc(3, 6);
    CHECK(betti(disc.complex, 0) == 1);
    CHECK(betti(disc.complex, 1) == 0);
    CHECK(betti(disc.complex, 2) == 0);

    Mesh cylinder = make_cylinder(4, 3);
    CHECK(betti(cylinder.complex, 0) == 1);
    CHECK(betti(cylinder.complex, 1) == 1);
    CHECK(betti(cylinder.complex, 2) == 0);

    CHECK_THROWS_AS(betti(circle.complex, 2), DegreeError);
}

TEST_CASE("torus Kodaira split dimensions") {
    Mesh mesh = make_torus(4, 4);
    OperatorBundle b = OperatorBundle::assemble(mesh.complex, mesh.metric, 1);
    KodairaSplit split = kodaira_split(b, 1);
    CHECK(split.dim_exact == 15);    // rank d_0 = V - 1
    CHECK(split.dim_harmonic == 2);  // b_1
    CHECK(split.dim_coexact == 31);  // the rest of the 48
    CHECK(split.dim_exact + split.dim_harmonic + split.dim_coexact == 48);
    CHECK(split.warning.empty());
}

TEST_CASE("sphere has no harmonic 1-forms") {
    Mesh mesh = make_sphere_octahedron(0);
    OperatorBundle b = OperatorBundle::assemble(mesh.complex, mesh.metric, 1);
    KodairaSplit split = kodaira_split(b, 1);
    CHECK(split.dim_harmonic == 0);
}

TEST_CASE("projectors are idempotent, orthogonal and complete") {
    Mesh mesh = make_torus(4, 4);
    std::mt19937_64 rng(2);
    std::normal_distribution<double> normal(0.0, 0.4);
    for (int v = 0; v < 16; ++v) mesh.metric.phi[v] = normal(rng);
    OperatorBundle b = OperatorBundle::assemble(mesh.complex, mesh.metric, 1);
    for (int k = 0; k <= 2; ++k) {
        KodairaSplit split = kodaira_split(b, k);
        const int nk = b.cochain_count(k);
        Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(nk, nk);
        CHECK((split.P_exact * split.P_exact - split.P_exact).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((split.P_harmonic * split.P_harmonic - split.P_harmonic).cwiseAbs().maxCoeff() <
              1e-10);
        CHECK((split.P_coexact * split.P_coexact - split.P_coexact).cwiseAbs().maxCoeff() <
              1e-10);
        CHECK((split.P_exact * split.P_harmonic).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((split.P_harmonic * split.P_coexact).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((split.P_exact * split.P_coexact).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((split.P_exact + split.P_harmonic + split.P_coexact - eye).cwiseAbs().maxCoeff() <
              1e-10);

        // M-self-adjointness of each projector.
        Eigen::MatrixXd M = b.mass(k).asDiagonal();
        CHECK((M * split.P_exact - split.P_exact.transpose() * M).cwiseAbs().maxCoeff() < 1e-10);

        // ran D_{k-1} lies inside ker D_k.
        CHECK((b.twisted(k) * split.P_exact).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("harmonic dimension matches Betti under twisting") {
    Mesh mesh = make_torus(4, 4);
    std::mt19937_64 rng(9);
    std::normal_distribution<double> normal(0.0, 0.5);
    for (int v = 0; v < 16; ++v) mesh.metric.phi[v] = normal(rng);

    // Conformal coefficient zero: the twist cancels entirely.
    OperatorBundle conformal = OperatorBundle::assemble(mesh.complex, mesh.metric, 1, 0.0);
    SpectralData s = spectral_decomposition(conformal.laplacian(1), conformal.mass(1));
    CHECK(harmonic_dimension(s) == 2);

    // A genuine twist conjugates by an invertible diagonal, so the kernel
    // dimension still equals the Betti number.
    OperatorBundle twisted = OperatorBundle::assemble(mesh.complex, mesh.metric, 1);
    for (int k = 0; k <= 2; ++k) {
        SpectralData sk = spectral_decomposition(twisted.laplacian(k), twisted.mass(k));
        CHECK(harmonic_dimension(sk) == betti(mesh.complex, k));
    }

    Mesh circle = make_circle(4);
    OperatorBundle cb = OperatorBundle::assemble(circle.complex, circle.metric, 0);
    SpectralData cs = spectral_decomposition(cb.laplacian(0), cb.mass(0));
    CHECK(harmonic_dimension(cs) == 1); // constants
}

TEST_CASE("kernel margin is wide on clean scenarios") {
    Mesh mesh = make_torus(4, 4);
    OperatorBundle b = OperatorBundle::assemble(mesh.complex, mesh.metric, 1);
    KodairaSplit split = kodaira_split(b, 1);
    double ratio = split.smallest_nonkernel_eigenvalue /
                   std::max(split.largest_kernel_eigenvalue, 1e-300);
    CHECK(ratio > 1e6);
}
