#include "elements/graphx.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "elements/systems.hpp"

namespace elements::graphx {

namespace {

constexpr double kDecomposeTolerance = 1e-9;

// Uniform double in [0, 1) from the top 53 bits; fixed across standard libraries.
double unit_double(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void write_features(std::string& out, const std::vector<double>& features) {
    for (double f : features) out += fmt::format(" {}", f);
}

std::string quoted(const std::string& s) {
    std::ostringstream os;
    os << std::quoted(s);
    return os.str();
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

} // namespace

TrsFeatures decompose_trs(const Mat4& m) {
    if (std::abs(m(3, 0)) > kDecomposeTolerance || std::abs(m(3, 1)) > kDecomposeTolerance ||
        std::abs(m(3, 2)) > kDecomposeTolerance || std::abs(m(3, 3) - 1.0) > kDecomposeTolerance)
        throw Error(ErrorCode::DecompositionError, "matrix has a projective bottom row");

    const Vec3 c0 = m.column3(0), c1 = m.column3(1), c2 = m.column3(2);
    const double s0 = length(c0), s1 = length(c1), s2 = length(c2);
    const double scale = s0;
    if (!(scale > 0.0)) throw Error(ErrorCode::DecompositionError, "matrix collapses an axis");
    const double tol = kDecomposeTolerance * std::max(1.0, scale);
    if (std::abs(s1 - scale) > tol || std::abs(s2 - scale) > tol)
        throw Error(ErrorCode::DecompositionError, "non-uniform scale");
    const double ortho_tol = kDecomposeTolerance * std::max(1.0, scale * scale);
    if (std::abs(dot(c0, c1)) > ortho_tol || std::abs(dot(c0, c2)) > ortho_tol || std::abs(dot(c1, c2)) > ortho_tol)
        throw Error(ErrorCode::DecompositionError, "matrix contains shear");
    if (dot(cross(c0, c1), c2) < 0.0) throw Error(ErrorCode::DecompositionError, "matrix contains a reflection");

    Mat4 rotation = Mat4::identity();
    for (int row = 0; row < 3; ++row)
        for (int col = 0; col < 3; ++col) rotation(row, col) = m(row, col) / scale;
    return {m.column3(3), quat_from_rotation(rotation), scale};
}

GraphDoc export_mesh_graph(const RenderMesh& mesh, const Mat4& l2w) {
    systems::validate_mesh(mesh);
    GraphDoc doc;
    doc.mode = "mesh";
    doc.directed = false;
    doc.nodes.reserve(mesh.vertices.size());
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
        const Vec3 p = transform_point(l2w, mesh.vertices[i]);
        doc.nodes.push_back({static_cast<std::uint32_t>(i), "v", {p.x, p.y, p.z}});
    }
    std::set<std::pair<std::uint32_t, std::uint32_t>> unique;
    for (const Triangle& t : mesh.triangles) {
        for (int k = 0; k < 3; ++k) {
            const std::uint32_t a = t[k], b = t[(k + 1) % 3];
            if (a == b) continue;
            unique.insert({std::min(a, b), std::max(a, b)});
        }
    }
    doc.edges.reserve(unique.size());
    for (const auto& [a, b] : unique) doc.edges.push_back({a, b, {}});
    return doc;
}

GraphDoc export_hierarchy_graph(const World& world, const std::unordered_map<EntityId, std::string>& labels) {
    GraphDoc doc;
    doc.mode = "hierarchy";
    doc.directed = true;
    for (EntityId id : world.preorder()) {
        const Entity& e = world.entity(id);
        const auto it = labels.find(id);
        doc.nodes.push_back({id.value, it != labels.end() ? it->second : e.name, {}});
        if (!e.parent) continue;
        const TrsFeatures trs = decompose_trs(systems::local_matrix(world, id));
        doc.edges.push_back({e.parent.value,
                             id.value,
                             {trs.translation.x, trs.translation.y, trs.translation.z, trs.rotation.w, trs.rotation.x,
                              trs.rotation.y, trs.rotation.z, trs.scale}});
    }
    return doc;
}

PointCloudDoc export_point_cloud(const RenderMesh& mesh, const Mat4& l2w, const std::string& label, std::size_t n,
                                 std::uint64_t seed) {
    systems::validate_mesh(mesh);
    if (mesh.vertices.empty()) throw Error(ErrorCode::MalformedMesh, "point cloud needs at least one vertex");
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "point count must be at least 1");

    PointCloudDoc doc;
    doc.label = label;
    doc.seed = seed;
    doc.metadata.emplace_back("prng", "mt19937_64");
    doc.metadata.emplace_back("sampling", "area-weighted triangle, uniform barycentric");

    std::vector<Vec3> world(mesh.vertices.size());
    for (std::size_t i = 0; i < world.size(); ++i) world[i] = transform_point(l2w, mesh.vertices[i]);

    const std::size_t take = std::min(n, world.size());
    doc.points.assign(world.begin(), world.begin() + static_cast<std::ptrdiff_t>(take));

    if (n > world.size()) {
        std::vector<double> cumulative;
        cumulative.reserve(mesh.triangles.size());
        double total = 0.0;
        for (const Triangle& t : mesh.triangles) {
            total += 0.5 * length(cross(world[t[1]] - world[t[0]], world[t[2]] - world[t[0]]));
            cumulative.push_back(total);
        }
        if (!(total > 0.0)) throw Error(ErrorCode::MalformedMesh, "mesh has no surface area to sample");
        std::mt19937_64 rng(seed);
        for (std::size_t s = world.size(); s < n; ++s) {
            const double pick = unit_double(rng) * total;
            const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), pick);
            const Triangle& t = mesh.triangles[std::min<std::size_t>(it - cumulative.begin(), cumulative.size() - 1)];
            const double r1 = std::sqrt(unit_double(rng));
            const double r2 = unit_double(rng);
            doc.points.push_back(world[t[0]] * (1.0 - r1) + world[t[1]] * (r1 * (1.0 - r2)) + world[t[2]] * (r1 * r2));
        }
        doc.surface_samples = n - world.size();
    }

    Vec3 centroid;
    for (const Vec3& p : doc.points) centroid += p;
    centroid = centroid / static_cast<double>(doc.points.size());
    double max_norm = 0.0;
    for (Vec3& p : doc.points) {
        p -= centroid;
        max_norm = std::max(max_norm, length(p));
    }
    doc.centroid = centroid;
    doc.scale = max_norm > 0.0 ? max_norm : 1.0;
    for (Vec3& p : doc.points) p = p / doc.scale;
    return doc;
}

std::string serialize(const GraphDoc& doc) {
    std::string out = "elements-graph v1\n";
    out += "mode " + doc.mode + "\n";
    out += fmt::format("directed {}\n", doc.directed ? 1 : 0);
    for (const auto& [key, value] : doc.metadata) out += "meta " + key + " " + quoted(value) + "\n";
    const std::size_t node_features = doc.nodes.empty() ? 0 : doc.nodes.front().features.size();
    out += fmt::format("nodes {} {}\n", doc.nodes.size(), node_features);
    for (const GraphNode& n : doc.nodes) {
        out += fmt::format("n {} {}", n.id, quoted(n.label));
        write_features(out, n.features);
        out += "\n";
    }
    const std::size_t edge_features = doc.edges.empty() ? 0 : doc.edges.front().features.size();
    out += fmt::format("edges {} {}\n", doc.edges.size(), edge_features);
    for (const GraphEdge& e : doc.edges) {
        out += fmt::format("e {} {}", e.src, e.dst);
        write_features(out, e.features);
        out += "\n";
    }
    out += "end\n";
    return out;
}

std::string serialize(const PointCloudDoc& doc) {
    std::string out = "elements-pointcloud v1\n";
    out += "label " + quoted(doc.label) + "\n";
    for (const auto& [key, value] : doc.metadata) out += "meta " + key + " " + quoted(value) + "\n";
    out += fmt::format("seed {}\n", doc.seed);
    out += fmt::format("surface_samples {}\n", doc.surface_samples);
    out += fmt::format("centroid {} {} {}\n", doc.centroid.x, doc.centroid.y, doc.centroid.z);
    out += fmt::format("scale {}\n", doc.scale);
    out += fmt::format("points {}\n", doc.points.size());
    for (const Vec3& p : doc.points) out += fmt::format("p {} {} {}\n", p.x, p.y, p.z);
    out += "end\n";
    return out;
}

GraphDoc parse_graph(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    auto next_line = [&]() -> std::istringstream {
        if (!std::getline(in, line)) parse_fail(line_no + 1, "unexpected end of document");
        ++line_no;
        return std::istringstream(line);
    };

    if (next_line().str() != "elements-graph v1") parse_fail(line_no, "missing 'elements-graph v1' header");
    GraphDoc doc;
    std::string word;
    {
        auto ls = next_line();
        if (!(ls >> word >> doc.mode) || word != "mode") parse_fail(line_no, "expected 'mode <name>'");
    }
    {
        auto ls = next_line();
        int directed = 0;
        if (!(ls >> word >> directed) || word != "directed") parse_fail(line_no, "expected 'directed <0|1>'");
        doc.directed = directed != 0;
    }
    std::size_t count = 0, features = 0;
    for (;;) {
        auto ls = next_line();
        ls >> word;
        if (word == "meta") {
            std::string key, value;
            if (!(ls >> key >> std::quoted(value))) parse_fail(line_no, "malformed meta line");
            doc.metadata.emplace_back(key, value);
            continue;
        }
        if (word != "nodes" || !(ls >> count >> features)) parse_fail(line_no, "expected 'nodes <count> <features>'");
        break;
    }
    for (std::size_t i = 0; i < count; ++i) {
        auto ls = next_line();
        GraphNode n;
        if (!(ls >> word >> n.id >> std::quoted(n.label)) || word != "n") parse_fail(line_no, "malformed node");
        n.features.resize(features);
        for (double& f : n.features)
            if (!(ls >> f)) parse_fail(line_no, "missing node feature");
        doc.nodes.push_back(std::move(n));
    }
    {
        auto ls = next_line();
        if (!(ls >> word >> count >> features) || word != "edges")
            parse_fail(line_no, "expected 'edges <count> <features>'");
    }
    for (std::size_t i = 0; i < count; ++i) {
        auto ls = next_line();
        GraphEdge e;
        if (!(ls >> word >> e.src >> e.dst) || word != "e") parse_fail(line_no, "malformed edge");
        e.features.resize(features);
        for (double& f : e.features)
            if (!(ls >> f)) parse_fail(line_no, "missing edge feature");
        doc.edges.push_back(std::move(e));
    }
    if (next_line().str() != "end") parse_fail(line_no, "expected 'end'");
    return doc;
}

} // namespace elements::graphx
