#pragma once

#include <cstddef>

#include "elements/components.hpp"

namespace elements::primitives {

/// 8 shared corners, 12 outward-facing CCW triangles.
RenderMesh cube(double size = 1.0);

/// XY-plane square facing +z, two CCW triangles.
RenderMesh quad(double size = 1.0);

/// Latitude/longitude sphere with poles; segments >= 3, rings >= 2.
RenderMesh uv_sphere(double radius = 1.0, int segments = 24, int rings = 16);

/// Exactly `vertex_count` vertices laid out on a sphere grid, triangulated
/// where all corners exist. Used by the benchmark.
RenderMesh sphere_patch(std::size_t vertex_count, double radius = 1.0);

} // namespace elements::primitives
