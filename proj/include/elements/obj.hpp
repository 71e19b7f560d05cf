#pragma once

// Wavefront OBJ subset: v, vn and f records. Faces accept v, v/vt, v//vn and
// v/vt/vn corners with 1-based or negative (relative) indices; polygons are
// fan-triangulated. Any other record is skipped and counted.

#include <cstddef>
#include <filesystem>
#include <string_view>
#include <vector>

#include "elements/components.hpp"

namespace elements::obj {

struct ObjMesh {
    std::vector<Vec3> vertices;
    std::vector<Vec3> normals; // per position; empty unless every face corner named one
    std::vector<Triangle> triangles;
    std::size_t skipped_records = 0;
};

/// Throws ParseError or IndexOutOfRange.
ObjMesh parse_obj(std::string_view text);
/// Throws IoError in addition to the parse errors.
ObjMesh load_obj(const std::filesystem::path& path);

RenderMesh to_render_mesh(const ObjMesh& mesh);

} // namespace elements::obj
