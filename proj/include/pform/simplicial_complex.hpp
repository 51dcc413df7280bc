#ifndef PFORM_SIMPLICIAL_COMPLEX_HPP
#define PFORM_SIMPLICIAL_COMPLEX_HPP

#include <vector>
#include <string>

#include <Eigen/Dense>

#include "pform/errors.hpp"

namespace pform {

using Simplex = std::vector<int>; // strictly increasing vertex indices

/// An oriented abstract simplicial complex. Simplices are stored with
/// strictly increasing vertex indices; the orientation of a face inside a
/// simplex is the parity sign of the omitted-vertex position.
class SimplicialComplex {
public:
    SimplicialComplex(int num_vertices, std::vector<std::vector<Simplex>> simplices_by_degree);

    int dimension() const { return static_cast<int>(simplices_.size()) - 1; }
    int num_vertices() const { return num_vertices_; }

    // Number of k-simplices; zero outside 0..n.
    int count(int k) const;

    const std::vector<Simplex>& simplices(int k) const;

    // Index of a simplex given its sorted vertex tuple; -1 if absent.
    int index_of(int k, const Simplex& s) const;

    /// Signed incidence operator d_k mapping k-cochains to (k+1)-cochains.
    /// Entries are in {-1,0,+1}; d_{k+1} d_k = 0 holds exactly over the
    /// integers. Throws DegreeError unless 0 <= k < dimension().
    Eigen::MatrixXi coboundary(int k) const;

    /// Boundary operator on (k+1)-chains (the transpose of coboundary(k)).
    Eigen::MatrixXi boundary(int k_plus_1) const;

    // V - E + F - ...
    long long euler_characteristic() const;

    // Throws if face closure, ordering or duplicate-freeness is violated.
    void validate() const;

private:
    int num_vertices_ = 0;
    std::vector<std::vector<Simplex>> simplices_; // simplices_[k]
};

/// Positive dual volumes per degree (lumped Hodge star) plus the Newtonian
/// potential phi sampled at vertices.
struct MetricData {
    std::vector<Eigen::VectorXd> dual_volume; // dual_volume[k], size = count(k)
    Eigen::VectorXd phi;                      // per vertex

    void validate(const SimplicialComplex& c) const;
};

/// Complex + metric as produced by a generator. vertex_radius is the
/// generator's radial coordinate (ring index and the like); empty when the
/// generator has no natural radius.
struct Mesh {
    SimplicialComplex complex;
    MetricData metric;
    std::vector<double> vertex_radius;
};

/// Diagonal of the mass matrix M_k (the lumped inner product on k-cochains).
/// Throws MetricError on nonpositive weights.
Eigen::VectorXd mass_matrix(const SimplicialComplex& c, const MetricData& m, int k);

/// Diagonal twist weights E_k: entry i is exp(c * mean of phi over the
/// vertices of the i-th k-simplex).
Eigen::VectorXd twist_weights(const SimplicialComplex& c, const MetricData& m, double coefficient, int k);

} // namespace pform

#endif
