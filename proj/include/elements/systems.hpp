#pragma once

// The engine systems, each a scenegraph visitor:
//   transform  - local-to-world matrices
//   camera     - root-to-camera matrix and per-entity l2cam
//   init       - packs RenderMesh data into VertexArrays (once, then on change)
//   render     - draws every entity carrying a VertexArray and ShaderParams

#include <cstddef>

#include "elements/ecss.hpp"
#include "elements/softrender.hpp"

namespace elements::systems {

/// l2w(e) = L(a1) * L(a2) * ... * L(e) along the root path; entities without
/// a transform contribute identity. The result is cached on each transform.
void transform_system_update(World& world);

/// Local matrix of the entity's transform component, identity when it has none.
Mat4 local_matrix(const World& world, EntityId id);

/// Cached l2w of the entity, or of its nearest ancestor carrying a transform.
Mat4 world_matrix(const World& world, EntityId id);

/// The single entity in the scenegraph holding a Camera. Throws NoCamera / MultipleCameras.
EntityId find_camera(World& world);

/// root2cam = invert(l2w(camera)); also writes l2cam = projection * root2cam * l2w
/// on every transform. Returns root2cam.
Mat4 camera_system_update(World& world);

/// Vertex normals from area-weighted face normals; (0, 0, 1) where they cancel out.
std::vector<Vec3> generate_normals(const RenderMesh& mesh);

/// Throws MalformedMesh.
void validate_mesh(const RenderMesh& mesh);

/// Builds or refreshes the VertexArray of every entity with RenderMesh data.
/// Arrays whose source meshes are unchanged are left alone. Returns how many were (re)built.
std::size_t init_render_system(World& world);

/// Submits each entity with a VertexArray and ShaderParams, in traversal order.
render::RasterStats render_system_draw(World& world, render::Framebuffer& fb);

} // namespace elements::systems
