#include "elements/softrender.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "elements/error.hpp"

namespace elements::render {

namespace {

constexpr double kNearW = 1e-6;
// Clip-space guard band: |x|, |y| <= kGuardBand * w keeps snapped window
// coordinates far inside int64 range for the edge-function products.
constexpr double kGuardBand = 16.0;
constexpr int kMaxDimension = 16384;
constexpr int kSubpixelBits = 8;
constexpr std::int64_t kSubpixel = std::int64_t{1} << kSubpixelBits;
constexpr int kClipPlanes = 5;

struct ClipVertex {
    Vec4 clip;
    Vec3 world;
    Vec3 normal;
    Rgb color;
};

ClipVertex lerp(const ClipVertex& a, const ClipVertex& b, double t) {
    return {Vec4(a.clip.x + (b.clip.x - a.clip.x) * t, a.clip.y + (b.clip.y - a.clip.y) * t,
                 a.clip.z + (b.clip.z - a.clip.z) * t, a.clip.w + (b.clip.w - a.clip.w) * t),
            elements::lerp(a.world, b.world, t), elements::lerp(a.normal, b.normal, t),
            elements::lerp(a.color, b.color, t)};
}

double plane_distance(const Vec4& c, int plane) {
    switch (plane) {
    case 0: return c.w - kNearW;
    case 1: return kGuardBand * c.w - c.x;
    case 2: return kGuardBand * c.w + c.x;
    case 3: return kGuardBand * c.w - c.y;
    default: return kGuardBand * c.w + c.y;
    }
}

unsigned outcode(const Vec4& c) {
    unsigned code = 0;
    for (int p = 0; p < kClipPlanes; ++p)
        if (!(plane_distance(c, p) > 0.0)) code |= 1u << p;
    return code;
}

/// Sutherland-Hodgman against every plane flagged in `planes`.
int clip_polygon(std::array<ClipVertex, 16>& poly, int count, unsigned planes) {
    std::array<ClipVertex, 16> out;
    for (int p = 0; p < kClipPlanes && count > 0; ++p) {
        if (!(planes & (1u << p))) continue;
        int n = 0;
        for (int i = 0; i < count; ++i) {
            const ClipVertex& a = poly[i];
            const ClipVertex& b = poly[(i + 1) % count];
            const double da = plane_distance(a.clip, p);
            const double db = plane_distance(b.clip, p);
            if (da > 0.0) out[n++] = a;
            if ((da > 0.0) != (db > 0.0)) out[n++] = lerp(a, b, da / (da - db));
        }
        count = n;
        std::copy_n(out.begin(), n, poly.begin());
    }
    return count;
}

struct ScreenVertex {
    std::int64_t x, y; // window coordinates in 1/256 pixel
    double z;          // NDC depth
    double inv_w;
    Vec3 world_w, normal_w, color_w; // attributes pre-divided by w
};

ScreenVertex to_screen(const ClipVertex& v, int width, int height) {
    const double inv_w = 1.0 / v.clip.w;
    const double nx = v.clip.x * inv_w, ny = v.clip.y * inv_w;
    const double wx = (nx + 1.0) * 0.5 * width;
    const double wy = (1.0 - ny) * 0.5 * height;
    return {std::llround(wx * static_cast<double>(kSubpixel)),
            std::llround(wy * static_cast<double>(kSubpixel)),
            v.clip.z * inv_w,
            inv_w,
            v.world * inv_w,
            v.normal * inv_w,
            v.color * inv_w};
}

std::int64_t edge(const ScreenVertex& a, const ScreenVertex& b, std::int64_t px, std::int64_t py) {
    return (b.x - a.x) * (py - a.y) - (b.y - a.y) * (px - a.x);
}

// With positive orientation (y down), top edges run in +x and left edges run in -y.
bool is_top_left(const ScreenVertex& a, const ScreenVertex& b) {
    const std::int64_t dx = b.x - a.x, dy = b.y - a.y;
    return (dy == 0 && dx > 0) || dy < 0;
}

void rasterize(Framebuffer& fb, ScreenVertex v0, ScreenVertex v1, ScreenVertex v2, const DrawCall& call,
               RasterStats& stats) {
    std::int64_t area = edge(v0, v1, v2.x, v2.y);
    if (area == 0) return;
    if (area < 0) {
        std::swap(v1, v2);
        area = -area;
    }
    ++stats.triangles_rasterized;

    const std::int64_t half = kSubpixel / 2;
    const std::int64_t min_x = std::min({v0.x, v1.x, v2.x}), max_x = std::max({v0.x, v1.x, v2.x});
    const std::int64_t min_y = std::min({v0.y, v1.y, v2.y}), max_y = std::max({v0.y, v1.y, v2.y});
    // Pixel px has its sample at px * 256 + 128.
    auto first_pixel = [&](std::int64_t lo) {
        const std::int64_t n = lo - half;
        return n >= 0 ? (n + kSubpixel - 1) / kSubpixel : -((-n) / kSubpixel);
    };
    auto last_pixel = [&](std::int64_t hi) {
        const std::int64_t n = hi - half;
        return n >= 0 ? n / kSubpixel : -((-n + kSubpixel - 1) / kSubpixel);
    };
    const std::int64_t x0 = std::max<std::int64_t>(first_pixel(min_x), 0);
    const std::int64_t x1 = std::min<std::int64_t>(last_pixel(max_x), fb.width() - 1);
    const std::int64_t y0 = std::max<std::int64_t>(first_pixel(min_y), 0);
    const std::int64_t y1 = std::min<std::int64_t>(last_pixel(max_y), fb.height() - 1);
    if (x0 > x1 || y0 > y1) return;

    const std::int64_t bias0 = is_top_left(v1, v2) ? 0 : -1;
    const std::int64_t bias1 = is_top_left(v2, v0) ? 0 : -1;
    const std::int64_t bias2 = is_top_left(v0, v1) ? 0 : -1;

    const std::int64_t step_x0 = -(v2.y - v1.y) * kSubpixel, step_y0 = (v2.x - v1.x) * kSubpixel;
    const std::int64_t step_x1 = -(v0.y - v2.y) * kSubpixel, step_y1 = (v0.x - v2.x) * kSubpixel;
    const std::int64_t step_x2 = -(v1.y - v0.y) * kSubpixel, step_y2 = (v1.x - v0.x) * kSubpixel;

    const std::int64_t sx = x0 * kSubpixel + half, sy = y0 * kSubpixel + half;
    std::int64_t row0 = edge(v1, v2, sx, sy);
    std::int64_t row1 = edge(v2, v0, sx, sy);
    std::int64_t row2 = edge(v0, v1, sx, sy);
    const double inv_area = 1.0 / static_cast<double>(area);

    for (std::int64_t py = y0; py <= y1; ++py) {
        std::int64_t e0 = row0, e1 = row1, e2 = row2;
        for (std::int64_t px = x0; px <= x1; ++px) {
            if ((e0 + bias0) >= 0 && (e1 + bias1) >= 0 && (e2 + bias2) >= 0) {
                const double l0 = static_cast<double>(e0) * inv_area;
                const double l1 = static_cast<double>(e1) * inv_area;
                const double l2 = static_cast<double>(e2) * inv_area;
                const double z = l0 * v0.z + l1 * v1.z + l2 * v2.z;
                if (z >= -1.0 && z <= 1.0) {
                    ++stats.fragments;
                    const int ix = static_cast<int>(px), iy = static_cast<int>(py);
                    const float depth = static_cast<float>(z);
                    if (depth < fb.depth(ix, iy)) {
                        const double p0 = l0 * v0.inv_w, p1 = l1 * v1.inv_w, p2 = l2 * v2.inv_w;
                        const double norm = 1.0 / (p0 + p1 + p2);
                        const double w0 = l0 * norm, w1 = l1 * norm, w2 = l2 * norm;
                        const Rgb color = v0.color_w * w0 + v1.color_w * w1 + v2.color_w * w2;
                        Rgb out;
                        if (call.shading == ShadingModel::Flat) {
                            out = color;
                        } else {
                            const Vec3 world = v0.world_w * w0 + v1.world_w * w1 + v2.world_w * w2;
                            const Vec3 normal = v0.normal_w * w0 + v1.normal_w * w1 + v2.normal_w * w2;
                            out = shade_blinn_phong(world, normal, color, call.material, call.lights,
                                                    call.view_position);
                        }
                        fb.set_depth(ix, iy, depth);
                        fb.set_pixel(ix, iy, {quantize(out.x), quantize(out.y), quantize(out.z)});
                        ++stats.fragments_written;
                    }
                }
            }
            e0 += step_x0;
            e1 += step_x1;
            e2 += step_x2;
        }
        row0 += step_y0;
        row1 += step_y1;
        row2 += step_y2;
    }
}

Mat4 normal_matrix(const Mat4& model) {
    try {
        return transpose(invert(model));
    } catch (const Error&) {
        return model;
    }
}

} // namespace

Framebuffer::Framebuffer(int width, int height) : width_(width), height_(height) {
    if (width < 1 || height < 1 || width > kMaxDimension || height > kMaxDimension)
        throw Error(ErrorCode::InvalidArgument, "framebuffer size must be within [1, 16384]");
    color_.assign(static_cast<std::size_t>(width) * height * 3, 0);
    depth_.assign(static_cast<std::size_t>(width) * height, kDepthCleared);
}

void Framebuffer::clear(const Rgb& color) {
    const std::array<std::uint8_t, 3> rgb{quantize(color.x), quantize(color.y), quantize(color.z)};
    for (std::size_t i = 0; i < depth_.size(); ++i) {
        color_[i * 3] = rgb[0];
        color_[i * 3 + 1] = rgb[1];
        color_[i * 3 + 2] = rgb[2];
    }
    std::fill(depth_.begin(), depth_.end(), kDepthCleared);
}

std::array<std::uint8_t, 3> Framebuffer::pixel(int x, int y) const {
    const std::size_t i = index(x, y) * 3;
    return {color_[i], color_[i + 1], color_[i + 2]};
}

void Framebuffer::set_pixel(int x, int y, const std::array<std::uint8_t, 3>& rgb) {
    const std::size_t i = index(x, y) * 3;
    color_[i] = rgb[0];
    color_[i + 1] = rgb[1];
    color_[i + 2] = rgb[2];
}

std::uint8_t quantize(double channel) {
    const double c = std::clamp(channel, 0.0, 1.0);
    return static_cast<std::uint8_t>(std::lround(c * 255.0));
}

Rgb shade_blinn_phong(const Vec3& world_pos, const Vec3& normal, const Rgb& base_color, const Material& material,
                      std::span<const Light> lights, const Vec3& view_pos) {
    const Vec3 n = normalize(normal);
    const Vec3 v = normalize(view_pos - world_pos);
    Rgb color = base_color * material.ambient;
    for (const Light& light : lights) {
        const Vec3 l = normalize(light.position - world_pos);
        const double n_dot_l = dot(n, l);
        if (n_dot_l <= 0.0) continue;
        const Rgb radiance = light.color * light.intensity;
        const Vec3 h = normalize(l + v);
        const double specular = material.specular * std::pow(std::max(dot(n, h), 0.0), material.shininess);
        color.x += (material.diffuse * n_dot_l * base_color.x + specular) * radiance.x;
        color.y += (material.diffuse * n_dot_l * base_color.y + specular) * radiance.y;
        color.z += (material.diffuse * n_dot_l * base_color.z + specular) * radiance.z;
    }
    return {std::clamp(color.x, 0.0, 1.0), std::clamp(color.y, 0.0, 1.0), std::clamp(color.z, 0.0, 1.0)};
}

RasterStats draw_triangles(Framebuffer& fb, std::span<const PackedVertex> vertices,
                           std::span<const std::uint32_t> indices, const DrawCall& call) {
    if (indices.size() % 3 != 0)
        throw Error(ErrorCode::MalformedBuffer, "index count " + std::to_string(indices.size()) + " not divisible by 3");
    for (std::uint32_t i : indices)
        if (i >= vertices.size())
            throw Error(ErrorCode::MalformedBuffer, "index " + std::to_string(i) + " out of range");

    const Mat4 to_world_normal = normal_matrix(call.model);
    const std::size_t n = vertices.size();
    // Scratch reused across draws; reallocating per call dominated large scenes.
    thread_local std::vector<ClipVertex> shaded;
    thread_local std::vector<unsigned> codes;
    thread_local std::vector<ScreenVertex> screen;
    if (shaded.size() < n) {
        shaded.resize(n);
        codes.resize(n);
        screen.resize(n);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const PackedVertex& v = vertices[i];
        shaded[i] = {call.mvp * Vec4(v.position, 1.0), transform_point(call.model, v.position),
                     transform_direction(to_world_normal, v.normal), v.color};
        codes[i] = outcode(shaded[i].clip);
        if (codes[i] == 0) screen[i] = to_screen(shaded[i], fb.width(), fb.height());
    }

    RasterStats stats;
    std::array<ClipVertex, 16> poly;
    for (std::size_t t = 0; t < indices.size(); t += 3) {
        ++stats.triangles_submitted;
        const std::uint32_t ia = indices[t], ib = indices[t + 1], ic = indices[t + 2];
        const unsigned ca = codes[ia], cb = codes[ib], cc = codes[ic];
        if (ca & cb & cc) continue;
        if ((ca | cb | cc) == 0) {
            rasterize(fb, screen[ia], screen[ib], screen[ic], call, stats);
            continue;
        }
        poly[0] = shaded[ia];
        poly[1] = shaded[ib];
        poly[2] = shaded[ic];
        const int count = clip_polygon(poly, 3, ca | cb | cc);
        if (count < 3) continue;
        const ScreenVertex first = to_screen(poly[0], fb.width(), fb.height());
        for (int i = 1; i + 1 < count; ++i)
            rasterize(fb, first, to_screen(poly[i], fb.width(), fb.height()),
                      to_screen(poly[i + 1], fb.width(), fb.height()), call, stats);
    }
    return stats;
}

void project_vertices(std::span<const PackedVertex> vertices, const Mat4& mvp, std::span<Vec4> out) {
    if (out.size() < vertices.size()) throw Error(ErrorCode::MalformedBuffer, "output span too small");
    for (std::size_t i = 0; i < vertices.size(); ++i) out[i] = mvp * Vec4(vertices[i].position, 1.0);
}

std::string encode_ppm(const Framebuffer& fb) {
    std::string out = "P6\n" + std::to_string(fb.width()) + " " + std::to_string(fb.height()) + "\n255\n";
    const auto bytes = fb.color_bytes();
    out.append(reinterpret_cast<const char*>(bytes.data()), bytes.size());
    return out;
}

void write_image(const Framebuffer& fb, const std::filesystem::path& path) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
    const std::string data = encode_ppm(fb);
    file.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!file) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

} // namespace elements::render
