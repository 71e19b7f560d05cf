#include "elements/obj.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "elements/error.hpp"
#include "text_util.hpp"

namespace elements::obj {

namespace {

std::uint32_t resolve_index(long long raw, std::size_t count, std::size_t line, const char* what) {
    long long resolved = raw > 0 ? raw - 1 : static_cast<long long>(count) + raw;
    if (raw == 0 || resolved < 0 || resolved >= static_cast<long long>(count))
        throw Error(ErrorCode::IndexOutOfRange, "line " + std::to_string(line) + ": " + what + " index " +
                                                    std::to_string(raw) + " out of range (have " +
                                                    std::to_string(count) + ")");
    return static_cast<std::uint32_t>(resolved);
}

long long parse_int(std::string_view s, std::size_t line) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": bad index '" + std::string(s) + "'");
    return v;
}

} // namespace

ObjMesh parse_obj(std::string_view text) {
    ObjMesh mesh;
    std::vector<Vec3> normal_pool;
    std::vector<std::optional<std::uint32_t>> corner_normal; // per position
    bool all_corners_have_normals = true;

    std::size_t line_no = 0;
    for (std::string_view line : detail::split_lines(text)) {
        ++line_no;
        const std::vector<std::string_view> tokens = detail::split_ws(detail::strip_comment(line));
        if (tokens.empty()) continue;
        const std::string_view kind = tokens[0];
        if (kind == "v" || kind == "vn") {
            if (tokens.size() < 4)
                throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected 3 coordinates");
            Vec3 p;
            for (int k = 0; k < 3; ++k) p[k] = detail::parse_double(tokens[k + 1], line_no);
            if (kind == "v") {
                mesh.vertices.push_back(p);
                corner_normal.emplace_back();
            } else {
                normal_pool.push_back(p);
            }
        } else if (kind == "f") {
            if (tokens.size() < 4)
                throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": face needs 3+ corners");
            std::vector<std::uint32_t> corners;
            for (std::size_t k = 1; k < tokens.size(); ++k) {
                const std::string_view corner = tokens[k];
                const std::size_t slash = corner.find('/');
                const std::uint32_t vi =
                    resolve_index(parse_int(corner.substr(0, slash), line_no), mesh.vertices.size(), line_no, "vertex");
                corners.push_back(vi);
                std::optional<std::uint32_t> ni;
                if (slash != std::string_view::npos) {
                    const std::size_t second = corner.find('/', slash + 1);
                    if (second != std::string_view::npos && second + 1 < corner.size())
                        ni = resolve_index(parse_int(corner.substr(second + 1), line_no), normal_pool.size(), line_no,
                                           "normal");
                }
                if (ni) corner_normal[vi] = *ni;
                else all_corners_have_normals = false;
            }
            for (std::size_t k = 1; k + 1 < corners.size(); ++k)
                mesh.triangles.push_back({corners[0], corners[k], corners[k + 1]});
        } else {
            ++mesh.skipped_records;
        }
    }

    if (all_corners_have_normals && !mesh.triangles.empty()) {
        bool complete = true;
        for (const auto& n : corner_normal) complete = complete && n.has_value();
        if (complete) {
            mesh.normals.reserve(mesh.vertices.size());
            for (const auto& n : corner_normal) mesh.normals.push_back(normal_pool[*n]);
        }
    }
    return mesh;
}

ObjMesh load_obj(const std::filesystem::path& path) { return parse_obj(detail::read_file(path)); }

RenderMesh to_render_mesh(const ObjMesh& mesh) {
    RenderMesh r;
    r.vertices = mesh.vertices;
    r.normals = mesh.normals;
    r.triangles = mesh.triangles;
    return r;
}

} // namespace elements::obj
