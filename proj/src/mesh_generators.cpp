#include "pform/mesh_generators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace pform {

namespace {

Simplex sorted(std::initializer_list<int> vs) {
    Simplex s(vs);
    std::sort(s.begin(), s.end());
    return s;
}

// Assembles a 2-complex from its triangle list; edges are derived.
SimplicialComplex complex_from_triangles(int num_vertices, const std::vector<Simplex>& triangles) {
    std::set<Simplex> edges;
    for (const Simplex& t : triangles) {
        edges.insert(sorted({t[0], t[1]}));
        edges.insert(sorted({t[0], t[2]}));
        edges.insert(sorted({t[1], t[2]}));
    }
    std::vector<std::vector<Simplex>> levels(3);
    levels[1].assign(edges.begin(), edges.end());
    levels[2] = triangles;
    return SimplicialComplex(num_vertices, std::move(levels));
}

MetricData unit_metric(const SimplicialComplex& c) {
    MetricData m;
    m.dual_volume.resize(c.dimension() + 1);
    for (int k = 0; k <= c.dimension(); ++k) {
        m.dual_volume[k] = Eigen::VectorXd::Ones(c.count(k));
    }
    m.phi = Eigen::VectorXd::Zero(c.num_vertices());
    return m;
}

void apply_radial_profile(Mesh& mesh, WeightProfile profile, double growth) {
    if (profile == WeightProfile::Flat) return;
    const SimplicialComplex& c = mesh.complex;
    for (int k = 0; k <= c.dimension(); ++k) {
        const auto& level = c.simplices(k);
        for (size_t i = 0; i < level.size(); ++i) {
            double mean_r = 0.0;
            for (int v : level[i]) mean_r += mesh.vertex_radius[v];
            mean_r /= static_cast<double>(level[i].size());
            mesh.metric.dual_volume[k][static_cast<int>(i)] *= std::exp(growth * mean_r);
        }
    }
}

} // namespace

Mesh make_circle(int n) {
    if (n < 3) throw InvalidParameterError("circle needs n >= 3");
    std::vector<std::vector<Simplex>> levels(2);
    for (int i = 0; i < n; ++i) {
        levels[1].push_back(sorted({i, (i + 1) % n}));
    }
    Mesh mesh{SimplicialComplex(n, std::move(levels)), MetricData{}, {}};
    mesh.metric = unit_metric(mesh.complex);
    mesh.vertex_radius.resize(n);
    for (int v = 0; v < n; ++v) mesh.vertex_radius[v] = std::min(v, n - v);
    return mesh;
}

Mesh make_interval(int n) {
    if (n < 1) throw InvalidParameterError("interval needs n >= 1");
    std::vector<std::vector<Simplex>> levels(2);
    for (int i = 0; i < n; ++i) levels[1].push_back({i, i + 1});
    Mesh mesh{SimplicialComplex(n + 1, std::move(levels)), MetricData{}, {}};
    mesh.metric = unit_metric(mesh.complex);
    mesh.vertex_radius.resize(n + 1);
    for (int v = 0; v <= n; ++v) mesh.vertex_radius[v] = v;
    return mesh;
}

Mesh make_torus(int n, int m) {
    if (n < 3 || m < 3) throw InvalidParameterError("torus needs n, m >= 3");
    auto id = [m](int i, int j) { return i * m + j; };
    std::vector<Simplex> tris;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            int i1 = (i + 1) % n, j1 = (j + 1) % m;
            tris.push_back(sorted({id(i, j), id(i1, j), id(i1, j1)}));
            tris.push_back(sorted({id(i, j), id(i, j1), id(i1, j1)}));
        }
    }
    std::sort(tris.begin(), tris.end());
    Mesh mesh{complex_from_triangles(n * m, tris), MetricData{}, {}};
    mesh.metric = unit_metric(mesh.complex);
    mesh.vertex_radius.resize(n * m);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            mesh.vertex_radius[id(i, j)] = std::min(i, n - i) + std::min(j, m - j);
        }
    }
    return mesh;
}

Mesh make_sphere_octahedron(int subdiv) {
    if (subdiv < 0 || subdiv > 6) throw InvalidParameterError("sphere_octahedron needs 0 <= subdiv <= 6");
    int num_vertices = 6;
    std::vector<Simplex> tris = {
        sorted({0, 2, 3}), sorted({0, 3, 4}), sorted({0, 4, 5}), sorted({0, 2, 5}),
        sorted({1, 2, 3}), sorted({1, 3, 4}), sorted({1, 4, 5}), sorted({1, 2, 5}),
    };
    for (int level = 0; level < subdiv; ++level) {
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int a, int b) {
            auto key = std::minmax(a, b);
            auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            int v = num_vertices++;
            midpoint.emplace(key, v);
            return v;
        };
        std::vector<Simplex> next;
        next.reserve(tris.size() * 4);
        for (const Simplex& t : tris) {
            int a = t[0], b = t[1], c = t[2];
            int ab = mid(a, b), ac = mid(a, c), bc = mid(b, c);
            next.push_back(sorted({a, ab, ac}));
            next.push_back(sorted({b, ab, bc}));
            next.push_back(sorted({c, ac, bc}));
            next.push_back(sorted({ab, ac, bc}));
        }
        tris = std::move(next);
    }
    std::sort(tris.begin(), tris.end());
    Mesh mesh{complex_from_triangles(num_vertices, tris), MetricData{}, {}};
    mesh.metric = unit_metric(mesh.complex);
    // Radius by hop count from vertex 0.
    mesh.vertex_radius.assign(num_vertices, -1.0);
    std::queue<int> frontier;
    frontier.push(0);
    mesh.vertex_radius[0] = 0.0;
    const auto& edges = mesh.complex.simplices(1);
    std::vector<std::vector<int>> adj(num_vertices);
    for (const Simplex& e : edges) {
        adj[e[0]].push_back(e[1]);
        adj[e[1]].push_back(e[0]);
    }
    while (!frontier.empty()) {
        int v = frontier.front();
        frontier.pop();
        for (int w : adj[v]) {
            if (mesh.vertex_radius[w] < 0.0) {
                mesh.vertex_radius[w] = mesh.vertex_radius[v] + 1.0;
                frontier.push(w);
            }
        }
    }
    return mesh;
}

Mesh make_disc(int rings, int sectors, WeightProfile profile, double growth) {
    if (rings < 1 || sectors < 3) throw InvalidParameterError("disc needs rings >= 1, sectors >= 3");
    auto id = [sectors](int r, int s) { return 1 + (r - 1) * sectors + ((s % sectors + sectors) % sectors); };
    std::vector<Simplex> tris;
    for (int s = 0; s < sectors; ++s) {
        tris.push_back(sorted({0, id(1, s), id(1, s + 1)}));
    }
    for (int r = 1; r < rings; ++r) {
        for (int s = 0; s < sectors; ++s) {
            tris.push_back(sorted({id(r, s), id(r + 1, s), id(r + 1, s + 1)}));
            tris.push_back(sorted({id(r, s), id(r, s + 1), id(r + 1, s + 1)}));
        }
    }
    std::sort(tris.begin(), tris.end());
    int num_vertices = 1 + rings * sectors;
    Mesh mesh{complex_from_triangles(num_vertices, tris), MetricData{}, {}};
    mesh.metric = unit_metric(mesh.complex);
    mesh.vertex_radius.resize(num_vertices);
    mesh.vertex_radius[0] = 0.0;
    for (int r = 1; r <= rings; ++r) {
        for (int s = 0; s < sectors; ++s) mesh.vertex_radius[id(r, s)] = r;
    }
    apply_radial_profile(mesh, profile, growth);
    return mesh;
}

Mesh make_cylinder(int n, int m, WeightProfile profile, double growth) {
    if (n < 3 || m < 1) throw InvalidParameterError("cylinder needs n >= 3, m >= 1");
    auto id = [n](int level, int j) { return level * n + ((j % n + n) % n); };
    std::vector<Simplex> tris;
    for (int level = 0; level < m; ++level) {
        for (int j = 0; j < n; ++j) {
            tris.push_back(sorted({id(level, j), id(level + 1, j), id(level + 1, j + 1)}));
            tris.push_back(sorted({id(level, j), id(level, j + 1), id(level + 1, j + 1)}));
        }
    }
    std::sort(tris.begin(), tris.end());
    int num_vertices = n * (m + 1);
    Mesh mesh{complex_from_triangles(num_vertices, tris), MetricData{}, {}};
    mesh.metric = unit_metric(mesh.complex);
    mesh.vertex_radius.resize(num_vertices);
    for (int level = 0; level <= m; ++level) {
        for (int j = 0; j < n; ++j) mesh.vertex_radius[id(level, j)] = level;
    }
    apply_radial_profile(mesh, profile, growth);
    return mesh;
}

Mesh generate_mesh(const GeneratorSpec& spec) {
    auto need = [&](size_t count) {
        if (spec.params.size() != count) {
            throw InvalidParameterError("generator '" + spec.kind + "' expects " +
                                        std::to_string(count) + " parameter(s)");
        }
    };
    if (spec.kind == "circle") {
        need(1);
        return make_circle(spec.params[0]);
    }
    if (spec.kind == "interval") {
        need(1);
        return make_interval(spec.params[0]);
    }
    if (spec.kind == "torus") {
        need(2);
        return make_torus(spec.params[0], spec.params[1]);
    }
    if (spec.kind == "sphere_octahedron") {
        need(1);
        return make_sphere_octahedron(spec.params[0]);
    }
    if (spec.kind == "disc") {
        need(2);
        return make_disc(spec.params[0], spec.params[1], spec.profile, spec.growth);
    }
    if (spec.kind == "cylinder") {
        need(2);
        return make_cylinder(spec.params[0], spec.params[1], spec.profile, spec.growth);
    }
    throw InvalidParameterError("unknown generator kind '" + spec.kind + "'");
}

GeneratorSpec parse_generator_spec(const std::string& text) {
    GeneratorSpec spec;
    auto open = text.find('(');
    auto close = text.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open) {
        throw ParseError("generator spec must look like kind(p1,p2,...): got '" + text + "'");
    }
    spec.kind = text.substr(0, open);
    std::string args = text.substr(open + 1, close - open - 1);
    std::istringstream in(args);
    std::string token;
    while (std::getline(in, token, ',')) {
        token.erase(std::remove_if(token.begin(), token.end(), ::isspace), token.end());
        if (token.empty()) continue;
        if (token == "flat") {
            spec.profile = WeightProfile::Flat;
        } else if (token == "hyperbolic-like" || token == "hyperbolic_like") {
            spec.profile = WeightProfile::HyperbolicLike;
        } else {
            try {
                size_t pos = 0;
                int value = std::stoi(token, &pos);
                if (pos != token.size()) throw std::invalid_argument(token);
                spec.params.push_back(value);
            } catch (const std::exception&) {
                throw ParseError("bad generator parameter '" + token + "' in '" + text + "'");
            }
        }
    }
    return spec;
}

} // namespace pform
