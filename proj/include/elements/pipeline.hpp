#pragma once

// One frame end to end: init -> animation(t) -> init -> transform -> camera
// -> clear -> render. The second init pass repacks meshes the animation
// system just deformed.

#include <cstdint>
#include <string>

#include "elements/graphx.hpp"
#include "elements/scene.hpp"

namespace elements::pipeline {

render::RasterStats render_frame(World& world, render::Framebuffer& fb, double time,
                                 const render::Rgb& background = {0.0, 0.0, 0.0});

/// Sizes the camera projection to the image and renders one frame.
render::Framebuffer render_scene(scene::LoadedScene& scene, int width, int height, double time = 0.0);

/// Every RenderMesh of the scene in world space, concatenated in traversal order.
RenderMesh merged_world_mesh(World& world);

enum class ExportMode { Mesh, Hierarchy, PointCloud };

struct ExportOptions {
    ExportMode mode = ExportMode::Mesh;
    std::string label;     // point-cloud class label
    std::size_t n = 1024;  // point count
    std::uint64_t seed = 0;
    std::uint64_t source_hash = 0;
};

/// Poses the scene at t = 0 and serializes the requested document. The header
/// metadata records the mode, seed and source scene hash.
std::string export_document(scene::LoadedScene& scene, const ExportOptions& options);

} // namespace elements::pipeline
