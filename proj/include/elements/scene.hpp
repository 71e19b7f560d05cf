#pragma once

// Declarative scene files ("elements-scene v1") and skin sidecars
// ("elements-skin v1"). Both are line-based: a keyword followed by
// positional words and key=value pairs; '#' starts a comment. The grammar
// is documented in docs/scene-format.md.
//
// Loading happens in two steps: parse_scene() produces a SceneDoc without
// touching the file system, build_world() validates it, resolves file
// references and creates the World.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "elements/ecss.hpp"

namespace elements::scene {

struct TransformSpec {
    enum class Form { Matrix, Trs, Motor, LookAt };
    Form form = Form::Trs;
    Mat4 matrix = Mat4::identity();
    Vec3 translation;
    Vec3 axis{0.0, 0.0, 1.0};
    double angle_degrees = 0.0;
    double scale = 1.0; // uniform scale (trs) or dilation (motor)
    Vec3 eye, target{0.0, 0.0, -1.0}, up{0.0, 1.0, 0.0};
    std::size_t line = 0;
};

struct CameraSpec {
    enum class Kind { Perspective, Ortho };
    Kind kind = Kind::Perspective;
    double fovy_degrees = 60.0;
    std::optional<double> aspect; // unset: taken from the output image
    double near = 0.1, far = 100.0;
    double left = -1.0, right = 1.0, bottom = -1.0, top = 1.0;
};

struct MeshSpec {
    enum class Kind { Cube, Quad, Sphere, Obj };
    Kind kind = Kind::Cube;
    double size = 1.0;
    double radius = 1.0;
    int segments = 24, rings = 16;
    std::string path;
    std::optional<render::Rgb> color;
    std::size_t line = 0;
};

struct SkinSpec {
    std::string path;
    bool loop = false;
    std::size_t line = 0;
};

struct EntitySpec {
    std::string name;
    std::optional<std::string> parent;
    std::optional<std::string> label;
    std::vector<TransformSpec> transforms; // more than one fails validation
    std::vector<CameraSpec> cameras;
    std::vector<MeshSpec> meshes;
    std::optional<render::Material> material;
    std::optional<render::ShadingModel> shading;
    std::vector<render::Light> lights;
    std::optional<SkinSpec> skin;
    std::size_t line = 0;
};

struct SceneDoc {
    std::vector<EntitySpec> entities;
    render::Rgb background{0.0, 0.0, 0.0};
};

/// Throws ParseError naming the line and column.
SceneDoc parse_scene(std::string_view text);

struct LoadOptions {
    /// Render and export need exactly one camera; inspect accepts none.
    bool require_camera = true;
};

struct LoadedScene {
    World world;
    render::Rgb background{0.0, 0.0, 0.0};
    std::unordered_map<std::string, EntityId> by_name;
    std::unordered_map<EntityId, std::string> labels;
    std::optional<CameraSpec> camera;
    EntityId camera_entity = kNoEntity;
};

/// Relative file references resolve against `base_dir`.
/// Throws ValidationError for semantic problems (camera count, dangling
/// parents, duplicate names, conflicting transforms, missing files).
LoadedScene build_world(const SceneDoc& doc, const std::filesystem::path& base_dir, LoadOptions options = {});

LoadedScene load_scene(const std::filesystem::path& path, LoadOptions options = {});

/// Projection for the scene camera at the given output size.
Mat4 camera_projection(const CameraSpec& spec, int width, int height);

/// Sets the Camera projection when the scene left the aspect ratio open.
void apply_viewport(LoadedScene& scene, int width, int height);

/// Matrix of a parsed transform record (trs and lookat forms).
Mat4 transform_matrix(const TransformSpec& spec);

struct SkinData {
    std::vector<std::string> joint_names;
    std::vector<Joint> joints; // inverse binds computed
    std::vector<std::pair<std::uint32_t, VertexInfluences>> influences; // (vertex, weights)
    std::vector<Keyframe> track;
};

/// Throws ParseError.
SkinData parse_skin(std::string_view text);

/// Assembles a SkinnedMesh over `bind_mesh`. Throws ValidationError when an
/// influence names a vertex outside the mesh.
SkinnedMesh make_skinned_mesh(const SkinData& skin, RenderMesh bind_mesh, bool loop);

/// Stable textual dump: one line per entity in traversal order, indented by
/// depth, with component kinds and the cached l2w matrix.
std::string inspect(const World& world);

/// Whole file as bytes. Throws IoError.
std::string read_text_file(const std::filesystem::path& path);

/// 64-bit FNV-1a, used to tag exports with their source scene.
std::uint64_t fnv1a(std::string_view bytes);

} // namespace elements::scene
