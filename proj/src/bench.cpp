#include "elements/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fmt/format.h>
#include <numeric>
#include <random>

#include "elements/pipeline.hpp"
#include "elements/primitives.hpp"
#include "elements/systems.hpp"

namespace elements::bench {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct SyntheticScene {
    World world;
    std::vector<EntityId> objects;
};

SyntheticScene build_scene(const BenchOptions& o) {
    SyntheticScene s;
    World& w = s.world;
    const EntityId root = w.create_entity("root");
    const EntityId cam = w.create_entity("camera");
    w.add_entity_child(root, cam);
    w.add_component(cam, BasicTransform{invert(lookat({0.0, 0.0, 30.0}, {0.0, 0.0, 0.0}, {0.0, 1.0, 0.0}))});
    w.add_component(cam, Camera{perspective(radians(60.0), static_cast<double>(o.width) / o.height, 0.1, 100.0)});
    w.add_component(cam, PointLight{render::Light{{5.0, 5.0, 0.0}, {1.0, 1.0, 1.0}, 1.0}});

    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> pos(-1.0, 1.0), angle(0.0, 2.0 * kPi), scale(0.5, 1.0);
    const RenderMesh mesh = primitives::sphere_patch(o.verts_per_object, 1.0);
    for (std::size_t i = 0; i < o.objects; ++i) {
        const EntityId e = w.create_entity(fmt::format("object{}", i));
        w.add_entity_child(root, e);
        const Vec3 t{12.0 * pos(rng), 12.0 * pos(rng), 4.0 * pos(rng)};
        Vec3 axis{pos(rng), pos(rng), pos(rng)};
        if (length(axis) < 1e-3) axis = {0.0, 0.0, 1.0};
        w.add_component(e, BasicTransform{compose_trs(t, Quaternion::from_axis_angle(axis, angle(rng)), scale(rng))});
        w.add_component(e, ShaderParams{});
        w.add_component(e, VertexArray{});
        w.add_component(e, mesh);
        s.objects.push_back(e);
    }
    return s;
}

} // namespace

double StageTiming::mean_ms() const {
    if (samples_ms.empty()) return 0.0;
    return std::accumulate(samples_ms.begin(), samples_ms.end(), 0.0) / static_cast<double>(samples_ms.size());
}

double StageTiming::p95_ms() const {
    if (samples_ms.empty()) return 0.0;
    std::vector<double> sorted = samples_ms;
    std::sort(sorted.begin(), sorted.end());
    const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(sorted.size())));
    return sorted[std::clamp<std::size_t>(rank, 1, sorted.size()) - 1];
}

double StageTiming::fps() const {
    const double m = mean_ms();
    return m > 0.0 ? 1000.0 / m : 0.0;
}

BenchResult run_bench(const BenchOptions& options) {
    if (options.objects == 0 || options.verts_per_object == 0 || options.frames == 0)
        throw Error(ErrorCode::InvalidArgument, "bench needs objects, verts-per-object and frames >= 1");
    BenchResult result;
    result.options = options;
    SyntheticScene scene = build_scene(options);
    World& world = scene.world;
    systems::init_render_system(world);

    std::vector<const VertexArray*> arrays;
    std::vector<const BasicTransform*> transforms;
    for (EntityId e : scene.objects) {
        arrays.push_back(world.get_component<VertexArray>(e));
        transforms.push_back(world.get_component<BasicTransform>(e));
        result.vertices_per_frame += arrays.back()->vertices.size();
        result.triangles_per_frame += arrays.back()->indices.size() / 3;
    }
    std::vector<Vec4> clip(options.verts_per_object);

    render::Framebuffer fb(options.width, options.height);
    for (std::size_t f = 0; f < options.frames; ++f) {
        auto start = Clock::now();
        systems::transform_system_update(world);
        systems::camera_system_update(world);
        result.systems.samples_ms.push_back(elapsed_ms(start));

        start = Clock::now();
        for (std::size_t i = 0; i < arrays.size(); ++i)
            render::project_vertices(arrays[i]->vertices, transforms[i]->l2cam, clip);
        result.vertex.samples_ms.push_back(elapsed_ms(start));

        if (options.raster) {
            start = Clock::now();
            pipeline::render_frame(world, fb, 0.0);
            result.raster.samples_ms.push_back(elapsed_ms(start));
        }
    }
    return result;
}

std::string format_report(const BenchResult& r) {
    const BenchOptions& o = r.options;
    std::string out = "elements-bench v1\n";
    out += fmt::format("objects {}\n", o.objects);
    out += fmt::format("verts_per_object {}\n", o.verts_per_object);
    out += fmt::format("vertices_per_frame {}\n", r.vertices_per_frame);
    out += fmt::format("triangles_per_frame {}\n", r.triangles_per_frame);
    out += fmt::format("frames {}\n", o.frames);
    out += fmt::format("seed {}\n", o.seed);
    auto stage = [&](std::string_view name, const StageTiming& t) {
        out += fmt::format("{} samples={} mean_ms={:.4f} p95_ms={:.4f} fps={:.1f}\n", name, t.samples_ms.size(),
                           t.mean_ms(), t.p95_ms(), t.fps());
    };
    stage("stage_systems", r.systems);
    stage("stage_vertex", r.vertex);
    if (o.raster) {
        out += fmt::format("raster_size {}x{}\n", o.width, o.height);
        stage("stage_raster", r.raster);
    } else {
        out += "stage_raster off\n";
    }
    return out;
}

} // namespace elements::bench
