#pragma once

// CPU stand-in for the vertex/fragment shader stages.
//
// Pipeline per triangle: mvp transform, clipping against w > 1e-6 plus a
// guard band, perspective divide, viewport mapping (row 0 is the top row),
// fixed-point edge functions with the top-left fill rule, less-than depth
// test, per-fragment shading with perspective-correct attributes.

#include <array>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "elements/math3d.hpp"

namespace elements::render {

/// Linear RGB, channels nominally in [0, 1].
using Rgb = Vec3;

struct Light {
    Vec3 position;
    Rgb color{1.0, 1.0, 1.0};
    double intensity = 1.0;
};

struct Material {
    double ambient = 0.1;
    double diffuse = 0.7;
    double specular = 0.3;
    double shininess = 32.0;
};

enum class ShadingModel { Flat, BlinnPhong };

/// One interleaved vertex as packed into a VertexArray.
struct PackedVertex {
    Vec3 position;
    Vec3 normal;
    Rgb color{1.0, 1.0, 1.0};
};

class Framebuffer {
public:
    static constexpr float kDepthCleared = std::numeric_limits<float>::infinity();

    Framebuffer(int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }

    void clear(const Rgb& color);

    std::span<const std::uint8_t> color_bytes() const { return color_; }
    std::span<const float> depth_values() const { return depth_; }

    std::array<std::uint8_t, 3> pixel(int x, int y) const;
    void set_pixel(int x, int y, const std::array<std::uint8_t, 3>& rgb);
    float depth(int x, int y) const { return depth_[index(x, y)]; }
    void set_depth(int x, int y, float d) { depth_[index(x, y)] = d; }

    bool operator==(const Framebuffer&) const = default;

private:
    std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width_ + x; }

    int width_;
    int height_;
    std::vector<std::uint8_t> color_;
    std::vector<float> depth_;
};

struct DrawCall {
    Mat4 mvp = Mat4::identity();
    Mat4 model = Mat4::identity();
    Material material;
    ShadingModel shading = ShadingModel::BlinnPhong;
    std::span<const Light> lights;
    Vec3 view_position;
};

struct RasterStats {
    std::uint64_t triangles_submitted = 0;
    std::uint64_t triangles_rasterized = 0;
    std::uint64_t fragments = 0;        // covered samples inside the depth range
    std::uint64_t fragments_written = 0; // survivors of the depth test
};

/// Throws MalformedBuffer when the index count is not a multiple of 3 or an index is out of range.
RasterStats draw_triangles(Framebuffer& fb, std::span<const PackedVertex> vertices,
                           std::span<const std::uint32_t> indices, const DrawCall& call);

/// The vertex stage alone: clip-space positions mvp * (p, 1).
void project_vertices(std::span<const PackedVertex> vertices, const Mat4& mvp, std::span<Vec4> out);

/// Ambient + per-light diffuse and half-vector specular, clamped per channel.
/// `base_color` scales the ambient and diffuse terms.
Rgb shade_blinn_phong(const Vec3& world_pos, const Vec3& normal, const Rgb& base_color, const Material& material,
                      std::span<const Light> lights, const Vec3& view_pos);

std::uint8_t quantize(double channel);

std::string encode_ppm(const Framebuffer& fb);
/// Binary P6, top row first. Throws IoError.
void write_image(const Framebuffer& fb, const std::filesystem::path& path);

} // namespace elements::render
