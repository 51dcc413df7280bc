#include "pform/simplicial_complex.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace pform {

namespace {

std::string simplex_to_string(const Simplex& s) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
    os << ")";
    return os.str();
}

} // namespace

SimplicialComplex::SimplicialComplex(int num_vertices,
                                     std::vector<std::vector<Simplex>> simplices_by_degree)
    : num_vertices_(num_vertices), simplices_(std::move(simplices_by_degree)) {
    if (simplices_.empty()) {
        // Degree 0 is implicit: one 0-simplex per vertex.
        simplices_.emplace_back();
    }
    if (simplices_[0].empty()) {
        simplices_[0].reserve(num_vertices_);
        for (int v = 0; v < num_vertices_; ++v) simplices_[0].push_back({v});
    }
    for (auto& level : simplices_) {
        std::sort(level.begin(), level.end());
    }
    validate();
}

int SimplicialComplex::count(int k) const {
    if (k < 0 || k > dimension()) return 0;
    return static_cast<int>(simplices_[k].size());
}

const std::vector<Simplex>& SimplicialComplex::simplices(int k) const {
    if (k < 0 || k > dimension()) {
        throw DegreeError("simplices: degree " + std::to_string(k) + " outside 0.." +
                          std::to_string(dimension()));
    }
    return simplices_[k];
}

int SimplicialComplex::index_of(int k, const Simplex& s) const {
    if (k < 0 || k > dimension()) return -1;
    const auto& level = simplices_[k];
    auto it = std::lower_bound(level.begin(), level.end(), s);
    if (it == level.end() || *it != s) return -1;
    return static_cast<int>(it - level.begin());
}

Eigen::MatrixXi SimplicialComplex::coboundary(int k) const {
    if (k < 0 || k >= dimension()) {
        throw DegreeError("coboundary: degree " + std::to_string(k) + " outside 0.." +
                          std::to_string(dimension() - 1));
    }
    const auto& rows = simplices_[k + 1];
    Eigen::MatrixXi d = Eigen::MatrixXi::Zero(static_cast<int>(rows.size()), count(k));
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
        const Simplex& s = rows[r];
        Simplex face(s.size() - 1);
        for (size_t omit = 0; omit < s.size(); ++omit) {
            int fi = 0;
            for (size_t j = 0; j < s.size(); ++j) {
                if (j != omit) face[fi++] = s[j];
            }
            int col = index_of(k, face);
            if (col < 0) {
                throw Error("coboundary: face " + simplex_to_string(face) +
                            " of " + simplex_to_string(s) + " is not stored");
            }
            d(r, col) += (omit % 2 == 0) ? 1 : -1;
        }
    }
    return d;
}

Eigen::MatrixXi SimplicialComplex::boundary(int k_plus_1) const {
    return coboundary(k_plus_1 - 1).transpose();
}

long long SimplicialComplex::euler_characteristic() const {
    long long chi = 0;
    for (int k = 0; k <= dimension(); ++k) chi += (k % 2 == 0) ? count(k) : -count(k);
    return chi;
}

void SimplicialComplex::validate() const {
    if (num_vertices_ <= 0) throw InvalidParameterError("complex must have at least one vertex");
    if (static_cast<int>(simplices_[0].size()) != num_vertices_) {
        throw Error("degree-0 simplex list does not match vertex count");
    }
    for (int k = 0; k <= dimension(); ++k) {
        const auto& level = simplices_[k];
        for (size_t i = 0; i < level.size(); ++i) {
            const Simplex& s = level[i];
            if (static_cast<int>(s.size()) != k + 1) {
                throw Error("simplex " + simplex_to_string(s) + " has wrong arity for degree " +
                            std::to_string(k));
            }
            for (size_t j = 0; j < s.size(); ++j) {
                if (s[j] < 0 || s[j] >= num_vertices_) {
                    throw Error("vertex index out of range in " + simplex_to_string(s));
                }
                if (j > 0 && s[j] <= s[j - 1]) {
                    throw Error("vertex tuple not strictly increasing: " + simplex_to_string(s));
                }
            }
            if (i > 0 && level[i] == level[i - 1]) {
                throw Error("duplicate simplex " + simplex_to_string(s));
            }
        }
        // Face-of-face closure.
        if (k >= 1) {
            for (const Simplex& s : level) {
                Simplex face(s.size() - 1);
                for (size_t omit = 0; omit < s.size(); ++omit) {
                    int fi = 0;
                    for (size_t j = 0; j < s.size(); ++j) {
                        if (j != omit) face[fi++] = s[j];
                    }
                    if (index_of(k - 1, face) < 0) {
                        throw Error("missing face " + simplex_to_string(face) + " of " +
                                    simplex_to_string(s));
                    }
                }
            }
        }
    }
}

void MetricData::validate(const SimplicialComplex& c) const {
    if (static_cast<int>(dual_volume.size()) != c.dimension() + 1) {
        throw MetricError("dual volumes must be given for every degree 0..n");
    }
    for (int k = 0; k <= c.dimension(); ++k) {
        if (dual_volume[k].size() != c.count(k)) {
            throw MetricError("dual volume count mismatch at degree " + std::to_string(k));
        }
        for (int i = 0; i < dual_volume[k].size(); ++i) {
            if (!(dual_volume[k][i] > 0.0)) {
                throw MetricError("nonpositive dual volume at degree " + std::to_string(k) +
                                  ", simplex " + std::to_string(i));
            }
        }
    }
    if (phi.size() != c.num_vertices()) throw MetricError("phi must be defined on every vertex");
    if (!phi.allFinite()) throw MetricError("phi must be finite at every vertex");
}

Eigen::VectorXd mass_matrix(const SimplicialComplex& c, const MetricData& m, int k) {
    if (k < 0 || k > c.dimension()) {
        throw DegreeError("mass_matrix: degree out of range");
    }
    const Eigen::VectorXd& w = m.dual_volume[k];
    for (int i = 0; i < w.size(); ++i) {
        if (!(w[i] > 0.0)) throw MetricError("mass matrix weight must be positive");
    }
    return w;
}

Eigen::VectorXd twist_weights(const SimplicialComplex& c, const MetricData& m,
                              double coefficient, int k) {
    if (k < 0 || k > c.dimension()) {
        throw DegreeError("twist_weights: degree out of range");
    }
    if (m.phi.size() != c.num_vertices()) {
        throw MetricError("phi must be defined on every vertex");
    }
    const auto& level = c.simplices(k);
    Eigen::VectorXd e(static_cast<int>(level.size()));
    for (size_t i = 0; i < level.size(); ++i) {
        double mean = 0.0;
        for (int v : level[i]) mean += m.phi[v];
        mean /= static_cast<double>(level[i].size());
        e[static_cast<int>(i)] = std::exp(coefficient * mean);
    }
    return e;
}

} // namespace pform
