#include "pform/mesh_io.hpp"

#include <fstream>

#include <json.hpp>

namespace pform {

using nlohmann::json;

std::string save_mesh(const Mesh& mesh) {
    const SimplicialComplex& c = mesh.complex;
    json doc;
    doc["dimension"] = c.dimension();
    doc["num_vertices"] = c.num_vertices();
    json simplices = json::array();
    for (int k = 0; k <= c.dimension(); ++k) {
        json level = json::array();
        for (const Simplex& s : c.simplices(k)) level.push_back(s);
        simplices.push_back(level);
    }
    doc["simplices"] = simplices;
    json volumes = json::array();
    for (int k = 0; k <= c.dimension(); ++k) {
        const Eigen::VectorXd& w = mesh.metric.dual_volume[k];
        volumes.push_back(std::vector<double>(w.begin(), w.end()));
    }
    doc["dual_volumes"] = volumes;
    doc["phi"] = std::vector<double>(mesh.metric.phi.begin(), mesh.metric.phi.end());
    if (!mesh.vertex_radius.empty()) doc["vertex_radius"] = mesh.vertex_radius;
    return doc.dump(2) + "\n";
}

Mesh load_mesh(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("mesh file: ") + e.what());
    }
    try {
        int dimension = doc.at("dimension").get<int>();
        int num_vertices = doc.at("num_vertices").get<int>();
        const json& simplices = doc.at("simplices");
        if (static_cast<int>(simplices.size()) != dimension + 1) {
            throw ParseError("mesh file: simplices must list degrees 0..dimension");
        }
        std::vector<std::vector<Simplex>> levels(dimension + 1);
        for (int k = 0; k <= dimension; ++k) {
            for (const json& s : simplices[k]) {
                levels[k].push_back(s.get<Simplex>());
            }
        }
        Mesh mesh{SimplicialComplex(num_vertices, std::move(levels)), MetricData{}, {}};
        const json& volumes = doc.at("dual_volumes");
        if (static_cast<int>(volumes.size()) != dimension + 1) {
            throw ParseError("mesh file: dual_volumes must list degrees 0..dimension");
        }
        mesh.metric.dual_volume.resize(dimension + 1);
        for (int k = 0; k <= dimension; ++k) {
            auto w = volumes[k].get<std::vector<double>>();
            mesh.metric.dual_volume[k] =
                Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<int>(w.size()));
        }
        auto phi = doc.at("phi").get<std::vector<double>>();
        mesh.metric.phi = Eigen::Map<const Eigen::VectorXd>(phi.data(), static_cast<int>(phi.size()));
        if (doc.contains("vertex_radius")) {
            mesh.vertex_radius = doc["vertex_radius"].get<std::vector<double>>();
        }
        mesh.metric.validate(mesh.complex);
        return mesh;
    } catch (const json::exception& e) {
        throw ParseError(std::string("mesh file: ") + e.what());
    }
}

void save_mesh_file(const Mesh& mesh, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << save_mesh(mesh);
}

Mesh load_mesh_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "' for reading");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return load_mesh(text);
}

} // namespace pform
