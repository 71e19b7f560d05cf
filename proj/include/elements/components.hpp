#pragma once

// Data-only components. Behavior lives in the systems.

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "elements/cga.hpp"
#include "elements/math3d.hpp"
#include "elements/softrender.hpp"

namespace elements {

enum class ComponentKind : std::uint8_t {
    BasicTransform,
    GATransform,
    Camera,
    RenderMesh,
    SkinnedMesh,
    VertexArray,
    ShaderParams,
    PointLight,
};

inline constexpr std::size_t kComponentKindCount = 8;

/// Display name used by scene dumps.
std::string_view to_string(ComponentKind kind);

/// Local frame relative to the parent entity, plus the matrices the
/// transform and camera systems cache on it each frame.
struct BasicTransform {
    Mat4 trs = Mat4::identity();
    Mat4 l2w = Mat4::identity();
    Mat4 l2cam = Mat4::identity();
};

/// Decorates a BasicTransform with its conformal form: translation t,
/// rotation axis/angle and uniform dilation. `base.trs` caches the matrix
/// equivalent of `versor`.
struct GATransform {
    Vec3 translation;
    Vec3 axis{0.0, 0.0, 1.0};
    double angle = 0.0;
    double dilation = 1.0;
    cga::Versor versor;
    BasicTransform base;
};

/// Builds the versor and its cached matrix from the parameters.
GATransform make_ga_transform(const Vec3& translation, const Vec3& axis, double angle, double dilation);

struct Camera {
    Mat4 projection = Mat4::identity();
    Mat4 root2cam = Mat4::identity();
};

using Triangle = std::array<std::uint32_t, 3>;

struct RenderMesh {
    std::vector<Vec3> vertices;
    std::vector<Triangle> triangles;
    std::vector<Vec3> normals;       // empty: generated at init
    std::vector<render::Rgb> colors; // empty: uniform_color everywhere
    render::Rgb uniform_color{1.0, 1.0, 1.0};
    std::uint64_t revision = 0;      // bump after editing so the VertexArray is repacked
};

struct VertexArray {
    std::vector<render::PackedVertex> vertices;
    std::vector<std::uint32_t> indices;
    std::optional<std::uint64_t> source_revision;
    std::uint64_t build_count = 0;
};

struct ShaderParams {
    render::ShadingModel model = render::ShadingModel::BlinnPhong;
    render::Material material;
    // Uniform hooks filled by the render system before each draw.
    Mat4 mvp = Mat4::identity();
    Mat4 model_matrix = Mat4::identity();
    std::vector<render::Light> lights;
    Vec3 view_position;
};

/// Point light; `light.position` is expressed in the owning entity's frame.
struct PointLight {
    render::Light light;
};

struct JointPose {
    Vec3 translation;
    Quaternion rotation;
    double scale = 1.0;
};

struct Joint {
    std::optional<std::uint32_t> parent; // always a smaller index
    JointPose bind_pose;                 // local bind transform
    Mat4 inverse_bind = Mat4::identity();
};

struct Keyframe {
    double time = 0.0;
    std::vector<JointPose> poses; // one per joint
};

struct JointInfluence {
    std::uint32_t joint = 0;
    double weight = 0.0;
};

inline constexpr std::size_t kMaxInfluences = 4;

struct VertexInfluences {
    std::array<JointInfluence, kMaxInfluences> entries{};
    std::uint8_t count = 0;
};

/// Bind-pose mesh with per-vertex joint weights, the joint tree and a
/// keyframe track. The animation system writes the deformed geometry into
/// the entity's RenderMesh.
struct SkinnedMesh {
    RenderMesh bind_mesh;
    std::vector<VertexInfluences> influences;
    std::vector<Joint> joints;
    std::vector<Keyframe> track;
    bool loop = false;
};

using Component = std::variant<BasicTransform, GATransform, Camera, RenderMesh, SkinnedMesh, VertexArray,
                               ShaderParams, PointLight>;

template <typename T>
struct component_traits;

#define ELEMENTS_COMPONENT_KIND(Type)                                      \
    template <>                                                            \
    struct component_traits<Type> {                                        \
        static constexpr ComponentKind kind = ComponentKind::Type;         \
        static constexpr std::size_t index = static_cast<std::size_t>(kind); \
    };

ELEMENTS_COMPONENT_KIND(BasicTransform)
ELEMENTS_COMPONENT_KIND(GATransform)
ELEMENTS_COMPONENT_KIND(Camera)
ELEMENTS_COMPONENT_KIND(RenderMesh)
ELEMENTS_COMPONENT_KIND(SkinnedMesh)
ELEMENTS_COMPONENT_KIND(VertexArray)
ELEMENTS_COMPONENT_KIND(ShaderParams)
ELEMENTS_COMPONENT_KIND(PointLight)

#undef ELEMENTS_COMPONENT_KIND

template <typename T>
concept ComponentType = requires { component_traits<T>::kind; };

} // namespace elements
