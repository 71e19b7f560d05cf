// elements: render | bench | export-graph | inspect
//
// Exit codes: 0 success, 1 runtime error, 2 validation or usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "elements/bench.hpp"
#include "elements/pipeline.hpp"
#include "elements/scene.hpp"
#include "elements/systems.hpp"

namespace {

using namespace elements;

constexpr int kExitRuntime = 1;
constexpr int kExitValidation = 2;

struct Size {
    int width = 256;
    int height = 256;
};

Size parse_size(const std::string& text) {
    Size s;
    char x = 0, extra = 0;
    if (std::sscanf(text.c_str(), "%d%c%d%c", &s.width, &x, &s.height, &extra) != 3 || (x != 'x' && x != 'X') ||
        s.width < 1 || s.height < 1)
        throw Error(ErrorCode::ValidationError, "size must look like WIDTHxHEIGHT, got '" + text + "'");
    return s;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !out.write(text.data(), static_cast<std::streamsize>(text.size())))
        throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
}

pipeline::ExportMode parse_mode(const std::string& mode) {
    if (mode == "mesh") return pipeline::ExportMode::Mesh;
    if (mode == "hierarchy") return pipeline::ExportMode::Hierarchy;
    if (mode == "pointcloud") return pipeline::ExportMode::PointCloud;
    throw Error(ErrorCode::ValidationError, "mode must be mesh, hierarchy or pointcloud");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Elements scenegraph engine"};
    app.require_subcommand(1);

    std::string scene_path, out_path, size_text = "256x256";
    double time = 0.0;
    auto* render = app.add_subcommand("render", "Render a scene to a binary PPM");
    render->add_option("scene", scene_path, "Scene file")->required();
    render->add_option("--out", out_path, "Output image")->required();
    render->add_option("--time", time, "Animation time in seconds");
    bool loop = false;
    render->add_flag("--loop", loop, "Wrap --time into every skin track's range");
    render->add_option("--size", size_text, "Image size WIDTHxHEIGHT");

    bench::BenchOptions bench_opts;
    std::string raster_flag = "on", report_path;
    auto* bench_cmd = app.add_subcommand("bench", "Time the systems, vertex stage and rasterizer");
    bench_cmd->add_option("--objects", bench_opts.objects, "Entity count")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--verts-per-object", bench_opts.verts_per_object, "Vertices per mesh")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--frames", bench_opts.frames, "Timed frames")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--raster", raster_flag, "on|off")->check(CLI::IsMember({"on", "off"}));
    bench_cmd->add_option("--size", size_text, "Raster size WIDTHxHEIGHT");
    bench_cmd->add_option("--seed", bench_opts.seed, "Scene seed");
    bench_cmd->add_option("--out", report_path, "Also write the report here");

    std::string mode = "mesh", label;
    std::size_t n = 1024;
    std::uint64_t seed = 0;
    auto* export_cmd = app.add_subcommand("export-graph", "Write a graph or point-cloud document");
    export_cmd->add_option("scene", scene_path, "Scene file")->required();
    export_cmd->add_option("--mode", mode, "mesh|hierarchy|pointcloud");
    export_cmd->add_option("--out", out_path, "Output document")->required();
    export_cmd->add_option("--label", label, "Point-cloud class label (default: scene file stem)");
    export_cmd->add_option("--n", n, "Point count")->check(CLI::PositiveNumber);
    export_cmd->add_option("--seed", seed, "Sampling seed");

    auto* inspect_cmd = app.add_subcommand("inspect", "Print the scenegraph");
    inspect_cmd->add_option("scene", scene_path, "Scene file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitValidation;
    }

    try {
        if (*render) {
            const Size size = parse_size(size_text);
            scene::LoadedScene loaded = scene::load_scene(scene_path);
            if (loop)
                loaded.world.store<SkinnedMesh>().for_each([](EntityId, SkinnedMesh& m) { m.loop = true; });
            render::write_image(pipeline::render_scene(loaded, size.width, size.height, time), out_path);
        } else if (*bench_cmd) {
            const Size size = parse_size(size_text);
            bench_opts.width = size.width;
            bench_opts.height = size.height;
            bench_opts.raster = raster_flag == "on";
            const std::string report = bench::format_report(bench::run_bench(bench_opts));
            std::cout << report;
            if (!report_path.empty()) write_text(report_path, report);
        } else if (*export_cmd) {
            pipeline::ExportOptions options;
            options.mode = parse_mode(mode);
            options.n = n;
            options.seed = seed;
            options.label = label.empty() ? std::filesystem::path(scene_path).stem().string() : label;
            options.source_hash = scene::fnv1a(scene::read_text_file(scene_path));
            scene::LoadedScene loaded = scene::load_scene(scene_path);
            write_text(out_path, pipeline::export_document(loaded, options));
        } else if (*inspect_cmd) {
            scene::LoadedScene loaded = scene::load_scene(scene_path, {.require_camera = false});
            systems::transform_system_update(loaded.world);
            std::cout << scene::inspect(loaded.world);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.is_validation() ? kExitValidation : kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return 0;
}
