#include "elements/pipeline.hpp"

#include <fmt/format.h>

#include "elements/animation.hpp"
#include "elements/systems.hpp"

namespace elements::pipeline {

render::RasterStats render_frame(World& world, render::Framebuffer& fb, double time, const render::Rgb& background) {
    systems::init_render_system(world);
    animation::animation_system_update(world, time);
    systems::init_render_system(world);
    systems::transform_system_update(world);
    systems::camera_system_update(world);
    fb.clear(background);
    return systems::render_system_draw(world, fb);
}

render::Framebuffer render_scene(scene::LoadedScene& scene, int width, int height, double time) {
    render::Framebuffer fb(width, height);
    scene::apply_viewport(scene, width, height);
    render_frame(scene.world, fb, time, scene.background);
    return fb;
}

RenderMesh merged_world_mesh(World& world) {
    RenderMesh merged;
    for (EntityId id : world.preorder()) {
        const Mat4 l2w = systems::world_matrix(world, id);
        for (const RenderMesh* mesh : world.get_components<RenderMesh>(id)) {
            const auto offset = static_cast<std::uint32_t>(merged.vertices.size());
            for (const Vec3& v : mesh->vertices) merged.vertices.push_back(transform_point(l2w, v));
            for (const Triangle& t : mesh->triangles) merged.triangles.push_back({t[0] + offset, t[1] + offset, t[2] + offset});
        }
    }
    return merged;
}

std::string export_document(scene::LoadedScene& scene, const ExportOptions& options) {
    World& world = scene.world;
    systems::init_render_system(world);
    animation::animation_system_update(world, 0.0);
    systems::transform_system_update(world);

    std::vector<std::pair<std::string, std::string>> meta{
        {"seed", fmt::format("{}", options.seed)},
        {"source", fmt::format("fnv1a64:{:016x}", options.source_hash)},
    };
    if (options.mode == ExportMode::PointCloud) {
        graphx::PointCloudDoc doc = graphx::export_point_cloud(merged_world_mesh(world), Mat4::identity(),
                                                               options.label, options.n, options.seed);
        meta.insert(meta.begin(), {"mode", "pointcloud"});
        doc.metadata.insert(doc.metadata.begin(), meta.begin(), meta.end());
        return graphx::serialize(doc);
    }
    graphx::GraphDoc doc = options.mode == ExportMode::Mesh
                               ? graphx::export_mesh_graph(merged_world_mesh(world), Mat4::identity())
                               : graphx::export_hierarchy_graph(world, scene.labels);
    doc.metadata.insert(doc.metadata.begin(), meta.begin(), meta.end());
    return graphx::serialize(doc);
}

} // namespace elements::pipeline
