#include "elements/systems.hpp"

#include <string>

namespace elements::systems {

namespace {

class TransformVisitor final : public Visitor {
public:
    explicit TransformVisitor(std::size_t max_id) : accumulated_(max_id + 1, Mat4::identity()) {}

    void visit_entity(World&, const Entity& e) override {
        current_ = e.id;
        accumulated_[e.id.value] = e.parent ? accumulated_[e.parent.value] : Mat4::identity();
    }
    void visit(EntityId, BasicTransform& t) override { apply(t); }
    void visit(EntityId, GATransform& t) override { apply(t.base); }

private:
    void apply(BasicTransform& t) {
        Mat4& acc = accumulated_[current_.value];
        acc = acc * t.trs;
        t.l2w = acc;
    }

    std::vector<Mat4> accumulated_;
    EntityId current_;
};

class CameraCollector final : public Visitor {
public:
    void visit(EntityId owner, Camera&) override { cameras.push_back(owner); }
    std::vector<EntityId> cameras;
};

const BasicTransform* transform_of(const World& world, EntityId id) {
    if (const auto* t = world.get_component<BasicTransform>(id)) return t;
    if (const auto* g = world.get_component<GATransform>(id)) return &g->base;
    return nullptr;
}

BasicTransform* transform_of(World& world, EntityId id) {
    return const_cast<BasicTransform*>(transform_of(std::as_const(world), id));
}

std::uint64_t mesh_signature(const std::vector<RenderMesh*>& meshes) {
    // FNV-1a over (count, revisions, sizes)
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    mix(meshes.size());
    for (const RenderMesh* m : meshes) {
        mix(m->revision);
        mix(m->vertices.size());
        mix(m->triangles.size());
    }
    return h;
}

void pack_into(VertexArray& va, const std::vector<RenderMesh*>& meshes) {
    va.vertices.clear();
    va.indices.clear();
    for (const RenderMesh* mesh : meshes) {
        validate_mesh(*mesh);
        const auto base = static_cast<std::uint32_t>(va.vertices.size());
        const std::vector<Vec3> normals = mesh->normals.empty() ? generate_normals(*mesh) : mesh->normals;
        for (std::size_t i = 0; i < mesh->vertices.size(); ++i) {
            va.vertices.push_back({mesh->vertices[i], normalize(normals[i]),
                                   mesh->colors.empty() ? mesh->uniform_color : mesh->colors[i]});
        }
        for (const Triangle& t : mesh->triangles)
            for (std::uint32_t idx : t) va.indices.push_back(base + idx);
    }
}

} // namespace

void transform_system_update(World& world) {
    TransformVisitor visitor(world.max_entity_id());
    world.traverse_dfs(visitor);
}

Mat4 local_matrix(const World& world, EntityId id) {
    const BasicTransform* t = transform_of(world, id);
    return t ? t->trs : Mat4::identity();
}

Mat4 world_matrix(const World& world, EntityId id) {
    for (EntityId e = id; e; e = world.entity(e).parent)
        if (const BasicTransform* t = transform_of(world, e)) return t->l2w;
    return Mat4::identity();
}

EntityId find_camera(World& world) {
    CameraCollector collector;
    world.traverse_dfs(collector);
    if (collector.cameras.empty()) throw Error(ErrorCode::NoCamera, "scene has no Camera component");
    if (collector.cameras.size() > 1)
        throw Error(ErrorCode::MultipleCameras,
                    "scene has " + std::to_string(collector.cameras.size()) + " Camera components, expected one");
    return collector.cameras.front();
}

Mat4 camera_system_update(World& world) {
    const EntityId cam_entity = find_camera(world);
    Camera& camera = *world.get_component<Camera>(cam_entity);
    camera.root2cam = invert(world_matrix(world, cam_entity));
    const Mat4 view_projection = camera.projection * camera.root2cam;
    for (EntityId id : world.preorder())
        if (BasicTransform* t = transform_of(world, id)) t->l2cam = view_projection * t->l2w;
    return camera.root2cam;
}

void validate_mesh(const RenderMesh& mesh) {
    const std::size_t n = mesh.vertices.size();
    for (std::size_t f = 0; f < mesh.triangles.size(); ++f) {
        for (std::uint32_t idx : mesh.triangles[f])
            if (idx >= n)
                throw Error(ErrorCode::MalformedMesh, "triangle " + std::to_string(f) + " references vertex " +
                                                          std::to_string(idx) + " of " + std::to_string(n));
    }
    if (!mesh.normals.empty() && mesh.normals.size() != n)
        throw Error(ErrorCode::MalformedMesh, "normal count does not match vertex count");
    if (!mesh.colors.empty() && mesh.colors.size() != n)
        throw Error(ErrorCode::MalformedMesh, "color count does not match vertex count");
}

std::vector<Vec3> generate_normals(const RenderMesh& mesh) {
    validate_mesh(mesh);
    std::vector<Vec3> normals(mesh.vertices.size());
    for (const Triangle& t : mesh.triangles) {
        const Vec3& a = mesh.vertices[t[0]];
        const Vec3& b = mesh.vertices[t[1]];
        const Vec3& c = mesh.vertices[t[2]];
        // Unnormalized cross product: length is twice the face area.
        const Vec3 face = cross(b - a, c - a);
        for (std::uint32_t idx : t) normals[idx] += face;
    }
    for (Vec3& n : normals) n = length(n) > 0.0 ? normalize(n) : Vec3(0.0, 0.0, 1.0);
    return normals;
}

std::size_t init_render_system(World& world) {
    std::size_t rebuilt = 0;
    for (EntityId id : world.preorder()) {
        std::vector<RenderMesh*> meshes = world.get_components<RenderMesh>(id);
        if (meshes.empty()) continue;
        const std::uint64_t signature = mesh_signature(meshes);
        VertexArray* va = world.get_component<VertexArray>(id);
        if (!va) {
            world.add_component(id, VertexArray{});
            va = world.get_component<VertexArray>(id);
            meshes = world.get_components<RenderMesh>(id);
        }
        if (va->source_revision == signature) continue;
        pack_into(*va, meshes);
        va->source_revision = signature;
        ++va->build_count;
        ++rebuilt;
    }
    return rebuilt;
}

render::RasterStats render_system_draw(World& world, render::Framebuffer& fb) {
    const EntityId cam_entity = find_camera(world);
    const Camera& camera = *world.get_component<Camera>(cam_entity);
    const Vec3 view_position = world_matrix(world, cam_entity).column3(3);

    const std::vector<EntityId> order = world.preorder();
    std::vector<render::Light> lights;
    for (EntityId id : order) {
        for (const PointLight* pl : world.get_components<PointLight>(id)) {
            render::Light l = pl->light;
            l.position = transform_point(world_matrix(world, id), l.position);
            lights.push_back(l);
        }
    }

    render::RasterStats total;
    for (EntityId id : order) {
        const VertexArray* va = world.get_component<VertexArray>(id);
        ShaderParams* shader = world.get_component<ShaderParams>(id);
        if (!va || !shader) continue;

        const Mat4 l2w = world_matrix(world, id);
        shader->mvp = camera.projection * camera.root2cam * l2w;
        shader->model_matrix = l2w;
        shader->lights = lights;
        shader->view_position = view_position;

        render::DrawCall call;
        call.mvp = shader->mvp;
        call.model = shader->model_matrix;
        call.material = shader->material;
        call.shading = shader->model;
        call.lights = shader->lights;
        call.view_position = shader->view_position;
        const render::RasterStats s = render::draw_triangles(fb, va->vertices, va->indices, call);
        total.triangles_submitted += s.triangles_submitted;
        total.triangles_rasterized += s.triangles_rasterized;
        total.fragments += s.fragments;
        total.fragments_written += s.fragments_written;
    }
    return total;
}

} // namespace elements::systems
