// Acceptance gate: ten end-to-end checks, one PASS/FAIL line each.
// Exit status is nonzero when any check fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <unistd.h>

#include <fmt/format.h>

#include "elements/animation.hpp"
#include "elements/bench.hpp"
#include "elements/cga.hpp"
#include "elements/graphx.hpp"
#include "elements/obj.hpp"
#include "elements/pipeline.hpp"
#include "elements/primitives.hpp"
#include "elements/scene.hpp"
#include "elements/systems.hpp"
#include "support/oracles.hpp"

using namespace elements;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = ELEMENTS_FIXTURES;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string("\"") + ELEMENTS_CLI + "\" " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
    return fs::temp_directory_path() / fmt::format("elements_accept_{}_{}", ::getpid(), name);
}

std::string quoted(const fs::path& p) { return "\"" + p.string() + "\""; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct TrsDraw {
    Vec3 t, axis;
    double angle = 0.0, scale = 1.0;
};

TrsDraw random_trs(oracle::Rng& rng, double reach) {
    return {rng.vec(-reach, reach), rng.axis(), rng.uniform(-kPi, kPi), rng.uniform(0.5, 1.5)};
}

Mat4 library_trs(const TrsDraw& d) { return compose_trs(d.t, Quaternion::from_axis_angle(d.axis, d.angle), d.scale); }
oracle::M4 oracle_trs(const TrsDraw& d) { return oracle::trs(oracle::arr(d.t), oracle::arr(d.axis), d.angle, d.scale); }

// 1. l2w equals the right-to-left product of local matrices along the root path.
Outcome transform_order() {
    oracle::Rng rng(1001);
    double worst = 0.0;
    std::size_t entities = 0;
    int deepest = 0;
    for (int scene = 0; scene < 1000; ++scene) {
        World w;
        struct Node {
            EntityId id;
            int depth;
            oracle::M4 path; // oracle product root..node
        };
        std::vector<Node> nodes{{w.create_entity("root"), 0, oracle::identity()}};
        for (std::size_t i = 0; i < nodes.size() && nodes.size() < 200; ++i) {
            const Node parent = nodes[i];
            if (parent.depth >= 8) continue;
            const int branching = rng.integer(0, 4);
            for (int c = 0; c < branching; ++c) {
                const EntityId e = w.create_entity(fmt::format("n{}", nodes.size()));
                w.add_entity_child(parent.id, e);
                oracle::M4 local = oracle::identity();
                if (rng.uniform(0, 1) < 0.85) {
                    const TrsDraw d = random_trs(rng, 5.0);
                    w.add_component(e, BasicTransform{library_trs(d)});
                    local = oracle_trs(d);
                }
                nodes.push_back({e, parent.depth + 1, oracle::mul(parent.path, local)});
                deepest = std::max(deepest, parent.depth + 1);
            }
        }
        systems::transform_system_update(w);
        for (const Node& n : nodes) {
            if (!w.get_component<BasicTransform>(n.id)) continue;
            worst = std::max(worst, oracle::max_diff(n.path, w.get_component<BasicTransform>(n.id)->l2w));
            ++entities;
        }
    }
    return {worst <= 1e-9, fmt::format("1000 scenegraphs, {} transforms, depth<={}, max |diff| {:.3g}", entities,
                                       deepest, worst)};
}

// 2. l2w(camera) * root2cam = identity.
Outcome camera_inversion() {
    oracle::Rng rng(1002);
    double worst = 0.0;
    for (int placement = 0; placement < 1000; ++placement) {
        World w;
        EntityId parent = w.create_entity("root");
        const int depth = rng.integer(0, 6);
        for (int d = 0; d < depth; ++d) {
            const EntityId e = w.create_entity(fmt::format("a{}", d));
            w.add_entity_child(parent, e);
            w.add_component(e, BasicTransform{library_trs(random_trs(rng, 10.0))});
            parent = e;
        }
        const EntityId cam = w.create_entity("camera");
        w.add_entity_child(parent, cam);
        const Vec3 eye = rng.vec(-20, 20);
        w.add_component(cam, BasicTransform{invert(lookat(eye, eye + rng.axis(), rng.axis()))});
        w.add_component(cam, Camera{perspective(rng.uniform(0.3, 2.5), rng.uniform(0.5, 2), 0.1, 100)});
        systems::transform_system_update(w);
        const Mat4 root2cam = systems::camera_system_update(w);
        worst = std::max(worst, max_abs_diff(w.get_component<BasicTransform>(cam)->l2w * root2cam, Mat4::identity()));
    }
    return {worst <= 1e-9, fmt::format("1000 placements, max |l2w*root2cam - I| {:.3g}", worst)};
}

// 3. Motor sandwich against the TRS matrix, point-wise and entry-wise.
Outcome ga_matrix_equivalence() {
    oracle::Rng rng(1003);
    double worst_point = 0.0, worst_entry = 0.0;
    for (int draw = 0; draw < 1000; ++draw) {
        const Vec3 t = rng.vec(-10, 10), b = rng.axis();
        const double phi = rng.uniform(-kPi, kPi), d = rng.uniform(0.1, 5);
        const cga::Versor m = cga::motor(t, b, phi, d);
        const Mat4 reference = compose_trs(t, Quaternion::from_axis_angle(b, phi), d);
        worst_entry = std::max(worst_entry, max_abs_diff(cga::versor_to_matrix(m), reference));
        for (int k = 0; k < 100; ++k) {
            const Vec3 p = rng.vec(-10, 10);
            const Vec3 via_ga = cga::extract(cga::apply(m, cga::embed(p)));
            const Vec3 via_matrix = transform_point(reference, p);
            for (int i = 0; i < 3; ++i) worst_point = std::max(worst_point, std::abs(via_ga[i] - via_matrix[i]));
        }
    }
    return {worst_point <= 1e-9 && worst_entry <= 1e-9,
            fmt::format("1000 motors x 100 points, max point diff {:.3g}, max entry diff {:.3g}", worst_point,
                        worst_entry)};
}

// 4. TRS and motor forms of the lit cube give identical PPM bytes.
Outcome representation_agnostic() {
    const fs::path a = scratch("trs.ppm"), b = scratch("motor.ppm");
    const int ra = run_cli("render " + quoted(kFixtures / "lit_cube_trs.scene") + " --out " + quoted(a) + " --size 256x256");
    const int rb =
        run_cli("render " + quoted(kFixtures / "lit_cube_motor.scene") + " --out " + quoted(b) + " --size 256x256");
    const std::string ia = slurp(a), ib = slurp(b);
    fs::remove(a);
    fs::remove(b);
    // The cube must actually be on screen: count pixels differing from the top-left (background) one.
    std::size_t lit = 0;
    const std::size_t header = std::string("P6\n256 256\n255\n").size();
    for (std::size_t i = header; i + 2 < ia.size(); i += 3)
        lit += ia.compare(i, 3, ia, header, 3) != 0;
    const bool same = ra == 0 && rb == 0 && !ia.empty() && ia == ib;
    return {same && lit > 0, fmt::format("exit codes {}/{}, {} bytes each, identical={}, {} object pixels", ra, rb,
                                         ia.size(), ia == ib, lit)};
}

VertexInfluences single(std::uint32_t joint) {
    VertexInfluences v;
    v.entries[0] = {joint, 1.0};
    v.count = 1;
    return v;
}

// 5. Bind-pose identity and rigid single-influence equivalence.
Outcome skinning() {
    oracle::Rng rng(1005);
    double worst_bind = 0.0, worst_rigid = 0.0;
    std::size_t vertices = 0;
    for (int trial = 0; trial < 100; ++trial) {
        SkinnedMesh m;
        const int joints = rng.integer(1, 10);
        m.joints.resize(static_cast<std::size_t>(joints));
        for (int j = 0; j < joints; ++j) {
            if (j > 0) m.joints[static_cast<std::size_t>(j)].parent = static_cast<std::uint32_t>(rng.integer(0, j - 1));
            const TrsDraw d = random_trs(rng, 2.0);
            m.joints[static_cast<std::size_t>(j)].bind_pose = {d.t, Quaternion::from_axis_angle(d.axis, d.angle), d.scale};
        }
        animation::compute_inverse_binds(m.joints);
        m.bind_mesh = primitives::uv_sphere(rng.uniform(0.5, 3), 8, 6);
        for (std::size_t v = 0; v < m.bind_mesh.vertices.size(); ++v) {
            VertexInfluences inf;
            const int k = rng.integer(1, 4);
            double sum = 0.0;
            for (int i = 0; i < k; ++i) {
                inf.entries[inf.count++] = {static_cast<std::uint32_t>(rng.integer(0, joints - 1)), rng.uniform(0.1, 1)};
                sum += inf.entries[static_cast<std::size_t>(i)].weight;
            }
            for (int i = 0; i < k; ++i) inf.entries[static_cast<std::size_t>(i)].weight /= sum;
            m.influences.push_back(inf);
        }
        const auto bind = animation::skin_vertices(m, animation::joint_globals(m.joints, animation::bind_poses(m.joints)));
        for (std::size_t v = 0; v < bind.vertices.size(); ++v)
            worst_bind = std::max(worst_bind, length(bind.vertices[v] - m.bind_mesh.vertices[v]));

        // Rigid: every vertex follows one joint; compare with entities parented like the joints.
        for (auto& inf : m.influences) inf = single(static_cast<std::uint32_t>(rng.integer(0, joints - 1)));
        std::vector<JointPose> poses;
        for (int j = 0; j < joints; ++j) {
            const TrsDraw d = random_trs(rng, 2.0);
            poses.push_back({d.t, Quaternion::from_axis_angle(d.axis, d.angle), d.scale});
        }
        const auto posed = animation::skin_vertices(m, animation::joint_globals(m.joints, poses));
        World w;
        const EntityId root = w.create_entity("root");
        std::vector<EntityId> ids;
        for (int j = 0; j < joints; ++j) {
            const EntityId e = w.create_entity(fmt::format("joint{}", j));
            const auto& parent = m.joints[static_cast<std::size_t>(j)].parent;
            w.add_entity_child(parent ? ids[*parent] : root, e);
            w.add_component(e, BasicTransform{animation::pose_matrix(poses[static_cast<std::size_t>(j)])});
            ids.push_back(e);
        }
        systems::transform_system_update(w);
        for (std::size_t v = 0; v < posed.vertices.size(); ++v) {
            const std::uint32_t j = m.influences[v].entries[0].joint;
            const Vec3 local = transform_point(m.joints[j].inverse_bind, m.bind_mesh.vertices[v]);
            const Vec3 expected = transform_point(systems::world_matrix(w, ids[j]), local);
            worst_rigid = std::max(worst_rigid, length(posed.vertices[v] - expected));
        }
        vertices += posed.vertices.size();
    }

    // The shipped skinned fixture at bind pose.
    scene::LoadedScene arm = scene::load_scene(kFixtures / "arm_skinned.scene");
    const SkinnedMesh* skinned = arm.world.get_component<SkinnedMesh>(arm.by_name.at("arm"));
    if (!skinned) return {false, "arm fixture has no skinned mesh"};
    const auto arm_bind =
        animation::skin_vertices(*skinned, animation::joint_globals(skinned->joints, animation::bind_poses(skinned->joints)));
    for (std::size_t v = 0; v < arm_bind.vertices.size(); ++v)
        worst_bind = std::max(worst_bind, length(arm_bind.vertices[v] - skinned->bind_mesh.vertices[v]));

    return {worst_bind <= 1e-6 && worst_rigid <= 1e-6,
            fmt::format("{} vertices, bind max err {:.3g}, rigid max err {:.3g}", vertices, worst_bind, worst_rigid)};
}

// 6. Centre pixel of a lit triangle against the scalar shading oracle.
Outcome blinn_phong_pixel() {
    // Reference example first: N = L = (0,0,1), V = (0,1,1)/sqrt2, kd = ks = 0.5, shininess 32, ambient 0.1.
    const double ep[3] = {0, 0, 0}, en[3] = {0, 0, 1}, el[3] = {0, 0, 10}, ee[3] = {0, 10, 10};
    const double example = oracle::blinn_phong_channel(ep, en, el, ee, 1.0, 0.1, 0.5, 0.5, 32, 1.0, 1.0);
    const double closed_form = 0.1 + 0.5 + 0.5 * std::pow(std::cos(kPi / 8), 32);
    const render::Light example_light{{0, 0, 10}, {1, 1, 1}, 1.0};
    const render::Rgb library = render::shade_blinn_phong({0, 0, 0}, {0, 0, 1}, {1, 1, 1}, {0.1, 0.5, 0.5, 32},
                                                          std::span(&example_light, 1), {0, 10, 10});
    const bool example_ok = std::abs(example - closed_form) <= 1e-12 && std::abs(library.x - example) <= 1e-12;

    // Camera at the origin looking down -z; an odd image width puts the centre
    // pixel's sample exactly on the optical axis, which meets the triangle at (0,0,-2).
    World w;
    const EntityId root = w.create_entity("root");
    const EntityId cam = w.create_entity("camera");
    w.add_entity_child(root, cam);
    w.add_component(cam, BasicTransform{});
    w.add_component(cam, Camera{perspective(kPi / 3, 1.0, 0.1, 10.0)});
    const EntityId lamp = w.create_entity("lamp");
    w.add_entity_child(root, lamp);
    const render::Light light{{1.5, 2.0, 1.0}, {1.0, 0.9, 0.8}, 1.2};
    w.add_component(lamp, PointLight{light});
    const EntityId tri = w.create_entity("triangle");
    w.add_entity_child(root, tri);
    RenderMesh mesh;
    mesh.vertices = {{-1, -1, -2}, {1, -1, -2}, {0, 1.2, -2}};
    mesh.normals = {{0, 0, 1}, {0, 0, 1}, {0, 0, 1}};
    mesh.triangles = {{0, 1, 2}};
    mesh.uniform_color = {0.8, 0.5, 0.3};
    ShaderParams shader;
    shader.model = render::ShadingModel::BlinnPhong;
    shader.material = {0.15, 0.6, 0.4, 24};
    w.add_component(tri, shader);
    w.add_component(tri, VertexArray{});
    w.add_component(tri, mesh);

    render::Framebuffer fb(65, 65);
    pipeline::render_frame(w, fb, 0.0);
    const auto px = fb.pixel(32, 32);

    const double p[3] = {0, 0, -2}, n[3] = {0, 0, 1}, lp[3] = {light.position.x, light.position.y, light.position.z};
    const double eye[3] = {0, 0, 0};
    int worst = 0;
    std::string expected;
    for (int c = 0; c < 3; ++c) {
        const int want = oracle::quantize(oracle::blinn_phong_channel(p, n, lp, eye, mesh.uniform_color[c], 0.15, 0.6,
                                                                      0.4, 24, light.color[c], light.intensity));
        expected += fmt::format("{}{}", c ? "," : "", want);
        worst = std::max(worst, std::abs(want - static_cast<int>(px[static_cast<std::size_t>(c)])));
    }
    return {example_ok && worst <= 1,
            fmt::format("reference example {:.6f} (closed form {:.6f}); centre pixel ({},{},{}) vs oracle ({}), "
                        "max channel diff {}",
                        example, closed_form, px[0], px[1], px[2], expected, worst)};
}

// 7. Two triangles sharing the diagonal of a full-viewport quad.
Outcome watertight() {
    render::Framebuffer fb(64, 64);
    fb.clear({0, 0, 0});
    const std::vector<render::PackedVertex> quad = {
        {{-1, -1, 0}, {0, 0, 1}, {1, 1, 1}}, {{1, -1, 0}, {0, 0, 1}, {1, 1, 1}},
        {{1, 1, 0}, {0, 0, 1}, {1, 1, 1}},   {{-1, 1, 0}, {0, 0, 1}, {1, 1, 1}}};
    const std::vector<std::uint32_t> indices = {0, 1, 2, 0, 2, 3};
    render::DrawCall call;
    call.shading = render::ShadingModel::Flat;
    const render::RasterStats s = render::draw_triangles(fb, quad, indices, call);
    int covered = 0;
    for (int y = 0; y < 64; ++y)
        for (int x = 0; x < 64; ++x) covered += fb.pixel(x, y)[0] == 255;
    return {s.fragments == 4096 && covered == 4096,
            fmt::format("{} fragments, {} distinct pixels covered", s.fragments, covered)};
}

// 8. Graph export counts and hierarchy feature round trip.
Outcome graph_counts() {
    const RenderMesh cube = obj::to_render_mesh(obj::load_obj(kFixtures / "cube.obj"));
    std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (const Triangle& t : cube.triangles)
        for (int i = 0; i < 3; ++i) {
            const std::uint32_t a = t[static_cast<std::size_t>(i)], b = t[static_cast<std::size_t>((i + 1) % 3)];
            pairs.insert({std::min(a, b), std::max(a, b)});
        }
    const graphx::GraphDoc mesh = graphx::export_mesh_graph(cube, Mat4::identity());
    std::set<std::pair<std::uint32_t, std::uint32_t>> exported;
    for (const auto& e : mesh.edges) exported.insert({e.src, e.dst});
    const bool mesh_ok = mesh.nodes.size() == 8 && mesh.edges.size() == 18 && pairs.size() == 18 && exported == pairs;

    scene::LoadedScene h = scene::load_scene(kFixtures / "hierarchy3.scene");
    systems::transform_system_update(h.world);
    const graphx::GraphDoc hier = graphx::parse_graph(graphx::serialize(graphx::export_hierarchy_graph(h.world, h.labels)));
    double worst = 0.0;
    for (const auto& e : hier.edges) {
        const auto& f = e.features;
        const Mat4 rebuilt = compose_trs({f[0], f[1], f[2]}, Quaternion(f[3], f[4], f[5], f[6]), f[7]);
        worst = std::max(worst, max_abs_diff(rebuilt, systems::local_matrix(h.world, EntityId{e.dst})));
    }
    const bool hier_ok = hier.nodes.size() == 3 && hier.edges.size() == 2 && worst <= 1e-9;
    return {mesh_ok && hier_ok,
            fmt::format("cube {} nodes / {} edges (oracle {}); hierarchy {} nodes / {} edges, round-trip err {:.3g}",
                        mesh.nodes.size(), mesh.edges.size(), pairs.size(), hier.nodes.size(), hier.edges.size(),
                        worst)};
}

// 9. Large synthetic load on the CPU pipeline.
Outcome performance() {
    const bench::BenchResult r = bench::run_bench(
        {.objects = 150, .verts_per_object = 2900, .frames = 60, .raster = true, .width = 256, .height = 256});
    const double systems_ms = r.systems.mean_ms(), vertex_ms = r.vertex.mean_ms(), raster_fps = r.raster.fps();
    return {r.vertices_per_frame == 435000 && systems_ms < 1.0 && vertex_ms < 16.7 && raster_fps >= 10.0,
            fmt::format("{} vertices/frame; systems {:.4f} ms (<1), vertex {:.3f} ms (<16.7), raster 256x256 "
                        "{:.1f} fps (>=10)",
                        r.vertices_per_frame, systems_ms, vertex_ms, raster_fps)};
}

// 10. Fresh-process determinism of rendering and every export mode.
Outcome determinism() {
    std::vector<std::string> failures;
    const auto twice = [&](const std::string& what, const std::string& args_before_out) {
        const fs::path a = scratch(what + "_a"), b = scratch(what + "_b");
        const int ra = run_cli(args_before_out + " --out " + quoted(a));
        const int rb = run_cli(args_before_out + " --out " + quoted(b));
        const std::string ba = slurp(a), bb = slurp(b);
        if (ra != 0 || rb != 0 || ba.empty() || ba != bb) failures.push_back(what);
        fs::remove(a);
        fs::remove(b);
    };
    twice("teapot", "render " + quoted(kFixtures / "teapot.scene") + " --size 256x256");
    const std::string cube = quoted(kFixtures / "cube_mesh.scene");
    twice("mesh", "export-graph " + cube + " --mode mesh");
    twice("hierarchy", "export-graph " + quoted(kFixtures / "hierarchy3.scene") + " --mode hierarchy");
    twice("pointcloud", "export-graph " + cube + " --mode pointcloud --n 8 --seed 7");
    twice("pointcloud_sampled", "export-graph " + quoted(kFixtures / "teapot.scene") + " --mode pointcloud --n 4096 --seed 3");
    std::string joined;
    for (const auto& f : failures) joined += " " + f;
    return {failures.empty(), failures.empty() ? "teapot render and 4 exports identical across fresh processes"
                                               : "differs:" + joined};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> checks = {
        {"transform order (l2w vs path-product oracle)", transform_order},
        {"camera inversion", camera_inversion},
        {"GA motor vs TRS matrix", ga_matrix_equivalence},
        {"trs vs motor scene render byte-identical", representation_agnostic},
        {"skinning bind identity and rigid equivalence", skinning},
        {"Blinn-Phong centre pixel vs scalar oracle", blinn_phong_pixel},
        {"rasterizer watertightness 64x64", watertight},
        {"graph export counts", graph_counts},
        {"performance at 150 x 2900", performance},
        {"determinism across processes", determinism},
    };
    const double limits[] = {5.0, 2.0, 30.0, 0, 0, 0, 0, 0, 0, 0};
    int failed = 0;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = checks[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        const double secs = seconds_since(t0);
        std::string timing = fmt::format("{:.2f} s", secs);
        if (limits[i] > 0.0) {
            timing += fmt::format(" (limit {:.0f} s)", limits[i]);
            if (secs >= limits[i]) o.pass = false;
        }
        failed += !o.pass;
        fmt::print("[{}] {:2}. {}: {}; {}\n", o.pass ? "PASS" : "FAIL", i + 1, checks[i].first, o.detail, timing);
        std::fflush(stdout);
    }
    fmt::print("{} of {} acceptance checks passed\n", checks.size() - static_cast<std::size_t>(failed), checks.size());
    return failed == 0 ? 0 : 1;
}
