#include "elements/components.hpp"

namespace elements {

std::string_view to_string(ComponentKind kind) {
    switch (kind) {
    case ComponentKind::BasicTransform: return "BasicTransform";
    case ComponentKind::GATransform: return "GATransform";
    case ComponentKind::Camera: return "Camera";
    case ComponentKind::RenderMesh: return "RenderMesh";
    case ComponentKind::SkinnedMesh: return "SkinnedMesh";
    case ComponentKind::VertexArray: return "VertexArray";
    case ComponentKind::ShaderParams: return "Shader";
    case ComponentKind::PointLight: return "Light";
    }
    return "Unknown";
}

GATransform make_ga_transform(const Vec3& translation, const Vec3& axis, double angle, double dilation) {
    GATransform g;
    g.translation = translation;
    g.axis = axis;
    g.angle = angle;
    g.dilation = dilation;
    g.versor = cga::motor(translation, axis, angle, dilation);
    g.base.trs = cga::versor_to_matrix(g.versor);
    return g;
}

} // namespace elements
