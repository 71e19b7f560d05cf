#include "elements/primitives.hpp"

#include <cmath>

#include "elements/error.hpp"

namespace elements::primitives {

RenderMesh cube(double size) {
    const double h = size * 0.5;
    RenderMesh mesh;
    // Corner i has +h on x/y/z where bit 0/1/2 of i is set.
    for (int i = 0; i < 8; ++i) mesh.vertices.emplace_back((i & 1) ? h : -h, (i & 2) ? h : -h, (i & 4) ? h : -h);
    mesh.triangles = {
        {0, 2, 1}, {1, 2, 3}, // -z
        {4, 5, 6}, {5, 7, 6}, // +z
        {0, 4, 2}, {2, 4, 6}, // -x
        {1, 3, 5}, {3, 7, 5}, // +x
        {0, 1, 4}, {1, 5, 4}, // -y
        {2, 6, 3}, {3, 6, 7}, // +y
    };
    return mesh;
}

RenderMesh quad(double size) {
    const double h = size * 0.5;
    RenderMesh mesh;
    mesh.vertices = {{-h, -h, 0.0}, {h, -h, 0.0}, {h, h, 0.0}, {-h, h, 0.0}};
    mesh.triangles = {{0, 1, 2}, {0, 2, 3}};
    return mesh;
}

RenderMesh uv_sphere(double radius, int segments, int rings) {
    if (segments < 3 || rings < 2) throw Error(ErrorCode::InvalidArgument, "sphere needs segments >= 3, rings >= 2");
    RenderMesh mesh;
    mesh.vertices.emplace_back(0.0, radius, 0.0);
    for (int r = 1; r < rings; ++r) {
        const double theta = kPi * r / rings;
        for (int s = 0; s < segments; ++s) {
            const double phi = 2.0 * kPi * s / segments;
            mesh.vertices.emplace_back(radius * std::sin(theta) * std::cos(phi), radius * std::cos(theta),
                                       -radius * std::sin(theta) * std::sin(phi));
        }
    }
    mesh.vertices.emplace_back(0.0, -radius, 0.0);
    const auto south = static_cast<std::uint32_t>(mesh.vertices.size() - 1);
    auto ring_vertex = [&](int r, int s) { return static_cast<std::uint32_t>(1 + (r - 1) * segments + s % segments); };

    for (int s = 0; s < segments; ++s) mesh.triangles.push_back({0, ring_vertex(1, s), ring_vertex(1, s + 1)});
    for (int r = 1; r + 1 < rings; ++r) {
        for (int s = 0; s < segments; ++s) {
            const std::uint32_t a = ring_vertex(r, s), b = ring_vertex(r, s + 1);
            const std::uint32_t c = ring_vertex(r + 1, s), d = ring_vertex(r + 1, s + 1);
            mesh.triangles.push_back({a, c, b});
            mesh.triangles.push_back({b, c, d});
        }
    }
    for (int s = 0; s < segments; ++s)
        mesh.triangles.push_back({south, ring_vertex(rings - 1, s + 1), ring_vertex(rings - 1, s)});
    return mesh;
}

RenderMesh sphere_patch(std::size_t vertex_count, double radius) {
    if (vertex_count == 0) throw Error(ErrorCode::InvalidArgument, "sphere patch needs at least one vertex");
    const auto cols = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(vertex_count)))));
    const std::size_t rows = (vertex_count + cols - 1) / cols;
    RenderMesh mesh;
    mesh.vertices.reserve(vertex_count);
    for (std::size_t i = 0; i < vertex_count; ++i) {
        const std::size_t r = i / cols, c = i % cols;
        const double theta = kPi * (static_cast<double>(r) + 0.5) / static_cast<double>(std::max<std::size_t>(rows, 1));
        const double phi = 2.0 * kPi * static_cast<double>(c) / static_cast<double>(cols);
        mesh.vertices.emplace_back(radius * std::sin(theta) * std::cos(phi), radius * std::cos(theta),
                                   -radius * std::sin(theta) * std::sin(phi));
    }
    for (std::size_t r = 0; r + 1 < rows; ++r) {
        for (std::size_t c = 0; c + 1 < cols; ++c) {
            const std::size_t a = r * cols + c, b = a + 1, d = a + cols, e = d + 1;
            if (d < vertex_count && b < vertex_count)
                mesh.triangles.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(d),
                                          static_cast<std::uint32_t>(b)});
            if (e < vertex_count)
                mesh.triangles.push_back({static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(d),
                                          static_cast<std::uint32_t>(e)});
        }
    }
    return mesh;
}

} // namespace elements::primitives
