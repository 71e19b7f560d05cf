#pragma once

// Synthetic-scene benchmark. Times three stages per frame:
//   systems  - transform + camera systems over the scenegraph
//   vertex   - clip-space transform of every vertex (the geometry stage alone)
//   raster   - the complete frame including rasterization and shading

#include <cstdint>
#include <string>
#include <vector>

namespace elements::bench {

struct BenchOptions {
    std::size_t objects = 150;
    std::size_t verts_per_object = 2900;
    std::size_t frames = 60;
    bool raster = true;
    int width = 256;
    int height = 256;
    std::uint64_t seed = 1;
};

struct StageTiming {
    std::vector<double> samples_ms;
    double mean_ms() const;
    double p95_ms() const;
    double fps() const;
};

struct BenchResult {
    BenchOptions options;
    std::size_t vertices_per_frame = 0;
    std::size_t triangles_per_frame = 0;
    StageTiming systems;
    StageTiming vertex;
    StageTiming raster; // empty when raster is off
};

/// Throws InvalidArgument when a count is zero.
BenchResult run_bench(const BenchOptions& options);

/// Line-oriented "key value" report.
std::string format_report(const BenchResult& result);

} // namespace elements::bench
