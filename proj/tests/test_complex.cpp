#include <doctest.h>

#include "pform/kodaira.hpp"
#include "pform/mesh_generators.hpp"
#include "pform/mesh_io.hpp"

using namespace pform;

TEST_CASE("generator counts and Euler characteristics") {
    Mesh torus = make_torus(4, 4);
    CHECK(torus.complex.num_vertices() == 16);
    CHECK(torus.complex.count(1) == 48);
    CHECK(torus.complex.count(2) == 32);
    CHECK(torus.complex.euler_characteristic() == 0);

    Mesh circle = make_circle(4);
    CHECK(circle.complex.num_vertices() == 4);
    CHECK(circle.complex.count(1) == 4);
    CHECK(circle.complex.euler_characteristic() == 0);

    Mesh sphere = make_sphere_octahedron(0);
    CHECK(sphere.complex.num_vertices() == 6);
    CHECK(sphere.complex.count(1) == 12);
    CHECK(sphere.complex.count(2) == 8);
    CHECK(sphere.complex.euler_characteristic() == 2);

    Mesh sphere1 = make_sphere_octahedron(1);
    CHECK(sphere1.complex.num_vertices() == 6 + 12);
    CHECK(sphere1.complex.count(2) == 32);
    CHECK(sphere1.complex.euler_characteristic() == 2);

    Mesh disc = make_disc(2, 5);
    CHECK(disc.complex.num_vertices() == 11);
    CHECK(disc.complex.euler_characteristic() == 1);

    Mesh cyl = make_cylinder(4, 3);
    CHECK(cyl.complex.num_vertices() == 16);
    CHECK(cyl.complex.euler_characteristic() == 0);

    Mesh interval = make_interval(5);
    CHECK(interval.complex.num_vertices() == 6);
    CHECK(interval.complex.euler_characteristic() == 1);
}

TEST_CASE("generator parameter validation") {
    CHECK_THROWS_AS(make_torus(2, 4), InvalidParameterError);
    CHECK_THROWS_AS(make_torus(4, 2), InvalidParameterError);
    CHECK_THROWS_AS(make_circle(2), InvalidParameterError);
    CHECK_THROWS_AS(make_interval(0), InvalidParameterError);
    CHECK_THROWS_AS(make_disc(0, 5), InvalidParameterError);
    CHECK_THROWS_AS(make_disc(2, 2), InvalidParameterError);
    CHECK_THROWS_AS(make_cylinder(2, 2), InvalidParameterError);
    CHECK_THROWS_AS(make_sphere_octahedron(-1), InvalidParameterError);
}

TEST_CASE("coboundary structure") {
    Mesh circle = make_circle(4);
    Eigen::MatrixXi d0 = circle.complex.coboundary(0);
    for (int r = 0; r < d0.rows(); ++r) {
        int plus = 0, minus = 0;
        for (int c = 0; c < d0.cols(); ++c) {
            if (d0(r, c) == 1) ++plus;
            if (d0(r, c) == -1) ++minus;
        }
        CHECK(plus == 1);
        CHECK(minus == 1);
    }
    CHECK(exact_rank(d0) == 3); // connected graph: rank = V - 1

    Mesh torus = make_torus(4, 4);
    Eigen::MatrixXi dd = torus.complex.coboundary(1) * torus.complex.coboundary(0);
    CHECK(dd.cwiseAbs().maxCoeff() == 0);

    CHECK_THROWS_AS(circle.complex.coboundary(1), DegreeError);
    CHECK_THROWS_AS(circle.complex.coboundary(-1), DegreeError);
}

TEST_CASE("complex validation rejects broken data") {
    // Missing face.
    CHECK_THROWS_AS(SimplicialComplex(3, {{}, {{0, 1}}, {{{0, 1, 2}}}}), Error);
    // Not strictly increasing.
    CHECK_THROWS_AS(SimplicialComplex(3, {{}, {{1, 0}}}), Error);
    // Duplicate simplex.
    CHECK_THROWS_AS(SimplicialComplex(3, {{}, {{0, 1}, {0, 1}}}), Error);
    // Vertex out of range.
    CHECK_THROWS_AS(SimplicialComplex(2, {{}, {{0, 5}}}), Error);
}

TEST_CASE("mass matrix") {
    Mesh circle = make_circle(4);
    Eigen::VectorXd m1 = mass_matrix(circle.complex, circle.metric, 1);
    CHECK((m1 - Eigen::VectorXd::Ones(4)).cwiseAbs().maxCoeff() == 0.0);

    circle.metric.dual_volume[1] = Eigen::VectorXd::Constant(4, 2.0);
    m1 = mass_matrix(circle.complex, circle.metric, 1);
    CHECK((m1 - Eigen::VectorXd::Constant(4, 2.0)).cwiseAbs().maxCoeff() == 0.0);

    Mesh torus = make_torus(4, 4);
    for (int k = 0; k <= 2; ++k) {
        CHECK(mass_matrix(torus.complex, torus.metric, k).minCoeff() > 0.0);
    }

    circle.metric.dual_volume[1][2] = -1.0;
    CHECK_THROWS_AS(mass_matrix(circle.complex, circle.metric, 1), MetricError);
}

TEST_CASE("twist weights") {
    Mesh torus = make_torus(4, 4);

    // phi = 0 gives the identity at every degree.
    for (int k = 0; k <= 2; ++k) {
        Eigen::VectorXd e = twist_weights(torus.complex, torus.metric, 1.7, k);
        CHECK((e - Eigen::VectorXd::Ones(e.size())).cwiseAbs().maxCoeff() == 0.0);
    }

    // The conformal case: c = (n - 2p - 1)/2 = 0 for n = 3, p = 1, any phi.
    CHECK((3 - 2 * 1 - 1) / 2.0 == 0.0);
    torus.metric.phi = Eigen::VectorXd::Random(16);
    for (int k = 0; k <= 2; ++k) {
        Eigen::VectorXd e = twist_weights(torus.complex, torus.metric, 0.0, k);
        CHECK((e - Eigen::VectorXd::Ones(e.size())).cwiseAbs().maxCoeff() == 0.0);
    }

    // phi = 1 with c = 1 scales every weight by e.
    torus.metric.phi = Eigen::VectorXd::Ones(16);
    for (int k = 0; k <= 2; ++k) {
        Eigen::VectorXd e = twist_weights(torus.complex, torus.metric, 1.0, k);
        CHECK((e.array() - std::exp(1.0)).abs().maxCoeff() < 1e-15);
    }

    // Weights are means over simplex vertices.
    torus.metric.phi = Eigen::VectorXd::Zero(16);
    torus.metric.phi[0] = 2.0;
    Eigen::VectorXd e1 = twist_weights(torus.complex, torus.metric, 1.0, 1);
    int edge = torus.complex.index_of(1, {0, 1});
    CHECK(e1[edge] == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
}

TEST_CASE("deterministic generation") {
    GeneratorSpec spec = parse_generator_spec("disc(3,6,hyperbolic-like)");
    Mesh a = generate_mesh(spec);
    Mesh b = generate_mesh(spec);
    CHECK(a.complex.simplices(1) == b.complex.simplices(1));
    CHECK(a.complex.simplices(2) == b.complex.simplices(2));
    for (int k = 0; k <= 2; ++k) {
        CHECK((a.metric.dual_volume[k] - b.metric.dual_volume[k]).cwiseAbs().maxCoeff() == 0.0);
    }
    CHECK(a.complex.coboundary(0) == b.complex.coboundary(0));
}

TEST_CASE("generator spec parsing") {
    GeneratorSpec spec = parse_generator_spec("torus(4, 4)");
    CHECK(spec.kind == "torus");
    CHECK(spec.params == std::vector<int>{4, 4});
    CHECK(parse_generator_spec("disc(3,8,hyperbolic-like)").profile ==
          WeightProfile::HyperbolicLike);
    CHECK_THROWS_AS(parse_generator_spec("torus[4,4]"), ParseError);
    CHECK_THROWS_AS(parse_generator_spec("torus(a,b)"), ParseError);
    CHECK_THROWS_AS(generate_mesh(parse_generator_spec("klein(4,4)")), InvalidParameterError);
}

TEST_CASE("mesh file round trip is byte identical") {
    Mesh mesh = make_disc(3, 6, WeightProfile::HyperbolicLike);
    mesh.metric.phi = Eigen::VectorXd::Random(mesh.complex.num_vertices()) * 0.37;

    std::string once = save_mesh(mesh);
    Mesh loaded = load_mesh(once);
    std::string twice = save_mesh(loaded);
    CHECK(once == twice);

    CHECK(loaded.complex.num_vertices() == mesh.complex.num_vertices());
    CHECK(loaded.complex.simplices(2) == mesh.complex.simplices(2));
    CHECK((loaded.metric.phi - mesh.metric.phi).cwiseAbs().maxCoeff() == 0.0);

    CHECK_THROWS_AS(load_mesh("not json at all"), ParseError);
    CHECK_THROWS_AS(load_mesh("{\"dimension\": 2}"), ParseError);
}
