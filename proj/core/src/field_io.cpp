#include "yamabe/field_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "yamabe/errors.hpp"

namespace yamabe {

namespace {

using nlohmann::json;

std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json manifold_to_json(const ManifoldFactor& m) {
    if (m.is_homogeneous())
        return {{"variant", "homogeneous"},
                {"volume", m.volume()},
                {"scalar_curvature", m.scalar_curvature(0)}};
    json weights = json::array();
    json curvature = json::array();
    for (std::size_t i = 0; i < m.node_count(); ++i) {
        weights.push_back(m.node_weight(i));
        curvature.push_back(m.scalar_curvature(i));
    }
    json edges = json::array();
    for (const auto& e : m.edges())
        edges.push_back({e.i, e.j, e.conductance});
    return {{"variant", "weighted_graph"},
            {"node_weights", weights},
            {"scalar_curvature", curvature},
            {"edges", edges}};
}

json euclidean_to_json(const EuclideanFactor& e) {
    if (e.is_line1d())
        return {{"variant", "line1d"},
                {"half_extent", e.half_extent()},
                {"spacing", e.spacing()}};
    return {{"variant", "radial"},
            {"n", e.dim()},
            {"r_max", e.r_max()},
            {"cell_count", e.cell_count()}};
}

ManifoldFactor manifold_from_json(const json& j) {
    const auto variant = j.at("variant").get<std::string>();
    if (variant == "homogeneous")
        return ManifoldFactor::homogeneous(j.at("volume").get<double>(),
                                           j.at("scalar_curvature").get<double>());
    if (variant == "weighted_graph") {
        auto weights = j.at("node_weights").get<std::vector<double>>();
        auto curvature = j.at("scalar_curvature").get<std::vector<double>>();
        std::vector<ManifoldFactor::Edge> edges;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 3)
                throw FormatError("field metadata: malformed edge entry");
            edges.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<double>()});
        }
        return ManifoldFactor::weighted_graph(std::move(weights),
                                              std::move(curvature),
                                              std::move(edges));
    }
    throw FormatError("field metadata: unknown manifold variant '" + variant + "'");
}

EuclideanFactor euclidean_from_json(const json& j) {
    const auto variant = j.at("variant").get<std::string>();
    if (variant == "line1d")
        return EuclideanFactor::line1d(j.at("half_extent").get<int>(),
                                       j.at("spacing").get<double>());
    if (variant == "radial")
        return EuclideanFactor::radial(j.at("n").get<int>(),
                                       j.at("r_max").get<double>(),
                                       j.at("cell_count").get<int>());
    throw FormatError("field metadata: unknown euclidean variant '" + variant + "'");
}

} // namespace

void save_field(const Field& u, const std::string& path) {
    json meta = {{"format", "yamabe-field"},
                 {"version", 1},
                 {"manifold", manifold_to_json(u.manifold())},
                 {"euclidean", euclidean_to_json(u.euclidean())},
                 {"created_by", "yamabe-lab 0.1.0"}};
    std::ofstream mf(path + ".json");
    if (!mf)
        throw IoError("save_field: cannot open '" + path + ".json' for writing");
    mf << meta.dump(2) << "\n";
    if (!mf)
        throw IoError("save_field: write failed for '" + path + ".json'");

    std::ofstream vf(path);
    if (!vf)
        throw IoError("save_field: cannot open '" + path + "' for writing");
    vf << "m_index,cell_index,value\n";
    for (std::size_t i = 0; i < u.node_count(); ++i)
        for (std::size_t k = 0; k < u.cell_count(); ++k)
            vf << i << "," << k << "," << format_value(u.value(i, k)) << "\n";
    if (!vf)
        throw IoError("save_field: write failed for '" + path + "'");
}

Field load_field(const std::string& path) {
    std::ifstream mf(path + ".json");
    if (!mf)
        throw IoError("load_field: cannot open '" + path + ".json'");
    json meta;
    try {
        meta = json::parse(mf);
    } catch (const json::exception& e) {
        throw FormatError(std::string("load_field: invalid metadata JSON: ") +
                          e.what());
    }
    ManifoldFactor manifold = [&] {
        try {
            if (meta.at("format").get<std::string>() != "yamabe-field")
                throw FormatError("load_field: not a yamabe field file");
            return manifold_from_json(meta.at("manifold"));
        } catch (const json::exception& e) {
            throw FormatError(std::string("load_field: bad metadata: ") + e.what());
        }
    }();
    EuclideanFactor euclidean = [&] {
        try {
            return euclidean_from_json(meta.at("euclidean"));
        } catch (const json::exception& e) {
            throw FormatError(std::string("load_field: bad metadata: ") + e.what());
        }
    }();

    std::ifstream vf(path);
    if (!vf)
        throw IoError("load_field: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(vf, line) || line != "m_index,cell_index,value")
        throw FormatError("load_field: missing value table header");
    const std::size_t nodes = manifold.node_count();
    const std::size_t cells = euclidean.cell_count();
    std::vector<double> values(nodes * cells, 0.0);
    std::vector<bool> seen(nodes * cells, false);
    std::size_t rows = 0;
    while (std::getline(vf, line)) {
        if (line.empty()) continue;
        std::size_t i = 0, k = 0;
        double v = 0.0;
        char trailing = 0;
        if (std::sscanf(line.c_str(), "%zu,%zu,%lf%c", &i, &k, &v, &trailing) != 3)
            throw FormatError("load_field: malformed row '" + line + "'");
        if (i >= nodes || k >= cells)
            throw FormatError("load_field: index out of range in row '" + line + "'");
        if (v < 0.0)
            throw FormatError("load_field: negative value in row '" + line + "'");
        const std::size_t d = i * cells + k;
        if (seen[d])
            throw FormatError("load_field: duplicate entry in row '" + line + "'");
        seen[d] = true;
        values[d] = v;
        ++rows;
    }
    if (rows != nodes * cells)
        throw FormatError("load_field: value table has " + std::to_string(rows) +
                          " rows, grid needs " + std::to_string(nodes * cells));
    return Field(std::move(manifold), std::move(euclidean), std::move(values));
}

} // namespace yamabe
