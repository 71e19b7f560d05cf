#pragma once

// Learning-ready exports of a scenegraph: a mesh graph (vertices and their
// face adjacency), a hierarchy graph (entities with parent-relative TRS on
// the edges) and normalized point clouds.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "elements/ecss.hpp"

namespace elements::graphx {

struct GraphNode {
    std::uint32_t id = 0;
    std::string label;
    std::vector<double> features;

    bool operator==(const GraphNode&) const = default;
};

struct GraphEdge {
    std::uint32_t src = 0;
    std::uint32_t dst = 0;
    std::vector<double> features;

    bool operator==(const GraphEdge&) const = default;
};

struct GraphDoc {
    std::string mode;
    bool directed = false;
    std::vector<GraphNode> nodes;
    std::vector<GraphEdge> edges;
    std::vector<std::pair<std::string, std::string>> metadata;

    bool operator==(const GraphDoc&) const = default;
};

struct PointCloudDoc {
    std::string label;
    std::vector<Vec3> points;
    Vec3 centroid;
    double scale = 1.0;
    std::uint64_t seed = 0;
    std::size_t surface_samples = 0;
    std::vector<std::pair<std::string, std::string>> metadata;

    bool operator==(const PointCloudDoc&) const = default;
};

/// Translation (3), rotation quaternion w,x,y,z (4) and uniform scale (1).
struct TrsFeatures {
    Vec3 translation;
    Quaternion rotation;
    double scale = 1.0;
};

/// Splits a similarity matrix into TRS. Throws DecompositionError on shear,
/// non-uniform scale, reflection or a projective row.
TrsFeatures decompose_trs(const Mat4& m);

/// One node per vertex (world position features); one edge per unique vertex
/// pair sharing a face, stored with src < dst. Throws MalformedMesh.
GraphDoc export_mesh_graph(const RenderMesh& mesh, const Mat4& l2w);

/// One node per entity in pre-order; one directed edge per parent-child link
/// carrying the child's local TRS. Labels default to entity names.
GraphDoc export_hierarchy_graph(const World& world, const std::unordered_map<EntityId, std::string>& labels = {});

/// First n world-space vertices, topped up with area-weighted surface samples
/// when the mesh has fewer, then centered and scaled to unit max norm.
PointCloudDoc export_point_cloud(const RenderMesh& mesh, const Mat4& l2w, const std::string& label, std::size_t n,
                                 std::uint64_t seed);

/// Line-oriented text ("elements-graph v1"), doubles printed round-trip exact.
std::string serialize(const GraphDoc& doc);
/// "elements-pointcloud v1".
std::string serialize(const PointCloudDoc& doc);

/// Parses serialize(GraphDoc) output; throws ParseError.
GraphDoc parse_graph(const std::string& text);

} // namespace elements::graphx
