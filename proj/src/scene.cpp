#include "elements/scene.hpp"

#include <cmath>
#include <fmt/format.h>
#include <set>

#include "elements/animation.hpp"
#include "elements/obj.hpp"
#include "elements/primitives.hpp"
#include "elements/systems.hpp"
#include "text_util.hpp"

namespace elements::scene {

namespace {

constexpr std::string_view kSceneHeader = "elements-scene v1";
constexpr std::string_view kSkinHeader = "elements-skin v1";

struct Token {
    std::string_view text;
    std::size_t column = 0; // 1-based
};

[[noreturn]] void fail(std::size_t line, std::size_t column, const std::string& msg) {
    throw Error(ErrorCode::ParseError, fmt::format("line {}, column {}: {}", line, column, msg));
}

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorCode::ValidationError, msg); }

struct Record {
    std::size_t line = 0;
    Token keyword;
    std::vector<Token> words;
    std::vector<std::pair<Token, Token>> pairs; // key, value
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && detail::is_space(line[i])) ++i;
        const std::size_t start = i;
        while (i < line.size() && !detail::is_space(line[i])) ++i;
        if (i > start) tokens.push_back({line.substr(start, i - start), start + 1});
    }
    return tokens;
}

/// Non-empty records of a document whose first record must be `header`.
std::vector<Record> read_records(std::string_view text, std::string_view header) {
    std::vector<Record> records;
    bool seen_header = false;
    std::size_t line_no = 0;
    for (std::string_view raw : detail::split_lines(text)) {
        ++line_no;
        const std::vector<Token> tokens = tokenize(detail::strip_comment(raw));
        if (tokens.empty()) continue;
        if (!seen_header) {
            std::string joined;
            for (const Token& t : tokens) joined += (joined.empty() ? "" : " ") + std::string(t.text);
            if (joined != header) fail(line_no, tokens[0].column, fmt::format("expected header '{}'", header));
            seen_header = true;
            continue;
        }
        Record rec;
        rec.line = line_no;
        rec.keyword = tokens[0];
        for (std::size_t k = 1; k < tokens.size(); ++k) {
            const Token& t = tokens[k];
            const std::size_t eq = t.text.find('=');
            if (eq == std::string_view::npos) {
                if (!rec.pairs.empty()) fail(line_no, t.column, "positional word after key=value pairs");
                rec.words.push_back(t);
            } else {
                if (eq == 0) fail(line_no, t.column, "missing key before '='");
                rec.pairs.push_back({{t.text.substr(0, eq), t.column}, {t.text.substr(eq + 1), t.column + eq + 1}});
            }
        }
        records.push_back(std::move(rec));
    }
    if (!seen_header) fail(1, 1, fmt::format("expected header '{}'", header));
    return records;
}

double to_number(const Record& rec, const Token& value) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(value.text.data(), value.text.data() + value.text.size(), v);
    if (ec != std::errc{} || ptr != value.text.data() + value.text.size() || !std::isfinite(v))
        fail(rec.line, value.column, fmt::format("bad number '{}'", value.text));
    return v;
}

std::vector<double> to_numbers(const Record& rec, const Token& value, std::size_t expected) {
    std::vector<double> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = value.text.find(',', start);
        const std::size_t end = comma == std::string_view::npos ? value.text.size() : comma;
        out.push_back(to_number(rec, {value.text.substr(start, end - start), value.column + start}));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (out.size() != expected)
        fail(rec.line, value.column, fmt::format("expected {} comma-separated numbers, got {}", expected, out.size()));
    return out;
}

/// key=value accessor that rejects unknown or repeated keys.
class Fields {
public:
    explicit Fields(const Record& rec) : rec_(rec) {
        std::set<std::string_view> seen;
        for (const auto& [key, value] : rec.pairs)
            if (!seen.insert(key.text).second) fail(rec.line, key.column, fmt::format("repeated key '{}'", key.text));
    }

    std::optional<Token> take(std::string_view key) {
        used_.insert(key);
        for (const auto& [k, v] : rec_.pairs)
            if (k.text == key) return v;
        return std::nullopt;
    }

    Token require(std::string_view key) {
        auto v = take(key);
        if (!v) fail(rec_.line, rec_.keyword.column, fmt::format("'{}' needs {}=", rec_.keyword.text, key));
        return *v;
    }

    double number(std::string_view key, double fallback) {
        const auto v = take(key);
        return v ? to_number(rec_, *v) : fallback;
    }

    std::optional<double> opt_number(std::string_view key) {
        const auto v = take(key);
        if (!v) return std::nullopt;
        return to_number(rec_, *v);
    }

    Vec3 vec3(std::string_view key, const Vec3& fallback) {
        const auto v = take(key);
        if (!v) return fallback;
        const auto n = to_numbers(rec_, *v, 3);
        return {n[0], n[1], n[2]};
    }

    int integer(std::string_view key, int fallback) {
        const auto v = take(key);
        if (!v) return fallback;
        const double d = to_number(rec_, *v);
        if (d != std::floor(d) || std::abs(d) > 1e9) fail(rec_.line, v->column, "expected an integer");
        return static_cast<int>(d);
    }

    bool boolean(std::string_view key, bool fallback) {
        const auto v = take(key);
        if (!v) return fallback;
        if (v->text == "true") return true;
        if (v->text == "false") return false;
        fail(rec_.line, v->column, "expected true or false");
    }

    void finish() const {
        for (const auto& [key, value] : rec_.pairs)
            if (!used_.count(key.text))
                fail(rec_.line, key.column, fmt::format("unknown key '{}' for '{}'", key.text, rec_.keyword.text));
    }

private:
    const Record& rec_;
    std::set<std::string_view> used_;
};

void expect_words(const Record& rec, std::size_t min, std::size_t max) {
    if (rec.words.size() < min)
        fail(rec.line, rec.keyword.column, fmt::format("'{}' is missing a positional argument", rec.keyword.text));
    if (rec.words.size() > max)
        fail(rec.line, rec.words[max].column, fmt::format("unexpected word '{}'", rec.words[max].text));
}

EntitySpec& current(std::vector<EntitySpec>& entities, const Record& rec) {
    if (entities.empty()) fail(rec.line, rec.keyword.column, fmt::format("'{}' before any entity", rec.keyword.text));
    return entities.back();
}

TransformSpec parse_transform(const Record& rec) {
    expect_words(rec, 1, 1);
    TransformSpec spec;
    spec.line = rec.line;
    Fields f(rec);
    const std::string_view form = rec.words[0].text;
    if (form == "matrix") {
        spec.form = TransformSpec::Form::Matrix;
        const auto v = to_numbers(rec, f.require("rows"), 16);
        std::array<double, 16> rows{};
        std::copy(v.begin(), v.end(), rows.begin());
        spec.matrix = Mat4::from_rows(rows);
    } else if (form == "trs" || form == "motor") {
        spec.form = form == "trs" ? TransformSpec::Form::Trs : TransformSpec::Form::Motor;
        spec.translation = f.vec3("t", {});
        spec.axis = f.vec3("axis", {0.0, 0.0, 1.0});
        spec.angle_degrees = f.number("angle", 0.0);
        spec.scale = f.number(form == "trs" ? "scale" : "dilation", 1.0);
    } else {
        fail(rec.line, rec.words[0].column, fmt::format("unknown transform form '{}'", form));
    }
    f.finish();
    return spec;
}

CameraSpec parse_camera(const Record& rec) {
    expect_words(rec, 1, 1);
    CameraSpec spec;
    Fields f(rec);
    const std::string_view kind = rec.words[0].text;
    if (kind == "perspective") {
        spec.kind = CameraSpec::Kind::Perspective;
        spec.fovy_degrees = f.number("fovy", spec.fovy_degrees);
        spec.aspect = f.opt_number("aspect");
    } else if (kind == "ortho") {
        spec.kind = CameraSpec::Kind::Ortho;
        spec.left = f.number("left", spec.left);
        spec.right = f.number("right", spec.right);
        spec.bottom = f.number("bottom", spec.bottom);
        spec.top = f.number("top", spec.top);
    } else {
        fail(rec.line, rec.words[0].column, fmt::format("unknown camera kind '{}'", kind));
    }
    spec.near = f.number("near", spec.near);
    spec.far = f.number("far", spec.far);
    f.finish();
    return spec;
}

MeshSpec parse_mesh(const Record& rec) {
    expect_words(rec, 1, 1);
    MeshSpec spec;
    spec.line = rec.line;
    Fields f(rec);
    const std::string_view kind = rec.words[0].text;
    if (kind == "cube" || kind == "quad") {
        spec.kind = kind == "cube" ? MeshSpec::Kind::Cube : MeshSpec::Kind::Quad;
        spec.size = f.number("size", 1.0);
    } else if (kind == "sphere") {
        spec.kind = MeshSpec::Kind::Sphere;
        spec.radius = f.number("radius", 1.0);
        spec.segments = f.integer("segments", spec.segments);
        spec.rings = f.integer("rings", spec.rings);
    } else if (kind == "obj") {
        spec.kind = MeshSpec::Kind::Obj;
        spec.path = std::string(f.require("path").text);
    } else {
        fail(rec.line, rec.words[0].column, fmt::format("unknown mesh kind '{}'", kind));
    }
    if (const auto c = f.take("color")) {
        const auto n = to_numbers(rec, *c, 3);
        spec.color = render::Rgb{n[0], n[1], n[2]};
    }
    f.finish();
    return spec;
}

JointPose pose_from_fields(Fields& f, const JointPose& fallback) {
    JointPose pose = fallback;
    pose.translation = f.vec3("t", fallback.translation);
    const Vec3 axis = f.vec3("axis", {0.0, 0.0, 1.0});
    if (const auto angle = f.opt_number("angle")) pose.rotation = Quaternion::from_axis_angle(axis, radians(*angle));
    pose.scale = f.number("scale", fallback.scale);
    return pose;
}

} // namespace

SceneDoc parse_scene(std::string_view text) {
    SceneDoc doc;
    bool background_set = false;
    for (const Record& rec : read_records(text, kSceneHeader)) {
        const std::string_view kw = rec.keyword.text;
        if (kw == "entity") {
            expect_words(rec, 1, 1);
            EntitySpec e;
            e.name = std::string(rec.words[0].text);
            e.line = rec.line;
            Fields f(rec);
            if (const auto p = f.take("parent")) e.parent = std::string(p->text);
            if (const auto l = f.take("label")) e.label = std::string(l->text);
            f.finish();
            doc.entities.push_back(std::move(e));
        } else if (kw == "background") {
            expect_words(rec, 1, 1);
            if (background_set) fail(rec.line, rec.keyword.column, "background given twice");
            const auto n = to_numbers(rec, rec.words[0], 3);
            doc.background = {n[0], n[1], n[2]};
            background_set = true;
            Fields(rec).finish();
        } else if (kw == "transform") {
            current(doc.entities, rec).transforms.push_back(parse_transform(rec));
        } else if (kw == "lookat") {
            expect_words(rec, 0, 0);
            TransformSpec spec;
            spec.form = TransformSpec::Form::LookAt;
            spec.line = rec.line;
            Fields f(rec);
            spec.eye = f.vec3("eye", spec.eye);
            spec.target = f.vec3("target", spec.target);
            spec.up = f.vec3("up", spec.up);
            f.finish();
            current(doc.entities, rec).transforms.push_back(spec);
        } else if (kw == "camera") {
            current(doc.entities, rec).cameras.push_back(parse_camera(rec));
        } else if (kw == "mesh") {
            current(doc.entities, rec).meshes.push_back(parse_mesh(rec));
        } else if (kw == "material") {
            expect_words(rec, 0, 0);
            EntitySpec& e = current(doc.entities, rec);
            if (e.material) fail(rec.line, rec.keyword.column, "material given twice");
            render::Material m;
            Fields f(rec);
            m.ambient = f.number("ambient", m.ambient);
            m.diffuse = f.number("diffuse", m.diffuse);
            m.specular = f.number("specular", m.specular);
            m.shininess = f.number("shininess", m.shininess);
            f.finish();
            e.material = m;
        } else if (kw == "shading") {
            expect_words(rec, 1, 1);
            EntitySpec& e = current(doc.entities, rec);
            const std::string_view s = rec.words[0].text;
            if (s == "flat") e.shading = render::ShadingModel::Flat;
            else if (s == "blinn_phong") e.shading = render::ShadingModel::BlinnPhong;
            else fail(rec.line, rec.words[0].column, fmt::format("unknown shading model '{}'", s));
            Fields(rec).finish();
        } else if (kw == "light") {
            expect_words(rec, 0, 0);
            render::Light light;
            Fields f(rec);
            light.position = f.vec3("position", light.position);
            light.color = f.vec3("color", light.color);
            light.intensity = f.number("intensity", light.intensity);
            f.finish();
            current(doc.entities, rec).lights.push_back(light);
        } else if (kw == "skin") {
            expect_words(rec, 0, 0);
            EntitySpec& e = current(doc.entities, rec);
            if (e.skin) fail(rec.line, rec.keyword.column, "skin given twice");
            Fields f(rec);
            SkinSpec s;
            s.path = std::string(f.require("path").text);
            s.loop = f.boolean("loop", false);
            s.line = rec.line;
            f.finish();
            e.skin = s;
        } else {
            fail(rec.line, rec.keyword.column, fmt::format("unknown record '{}'", kw));
        }
    }
    return doc;
}

Mat4 transform_matrix(const TransformSpec& spec) {
    switch (spec.form) {
    case TransformSpec::Form::Matrix: return spec.matrix;
    case TransformSpec::Form::Trs:
        return compose_trs(spec.translation, Quaternion::from_axis_angle(spec.axis, radians(spec.angle_degrees)),
                           spec.scale);
    case TransformSpec::Form::Motor:
        return make_ga_transform(spec.translation, spec.axis, radians(spec.angle_degrees), spec.scale).base.trs;
    case TransformSpec::Form::LookAt: return invert(lookat(spec.eye, spec.target, spec.up));
    }
    return Mat4::identity();
}

Mat4 camera_projection(const CameraSpec& spec, int width, int height) {
    if (spec.kind == CameraSpec::Kind::Ortho)
        return ortho(spec.left, spec.right, spec.bottom, spec.top, spec.near, spec.far);
    const double aspect = spec.aspect.value_or(static_cast<double>(width) / static_cast<double>(height));
    return perspective(radians(spec.fovy_degrees), aspect, spec.near, spec.far);
}

void apply_viewport(LoadedScene& scene, int width, int height) {
    if (!scene.camera || !scene.camera_entity) return;
    if (Camera* cam = scene.world.get_component<Camera>(scene.camera_entity))
        cam->projection = camera_projection(*scene.camera, width, height);
}

namespace {

std::filesystem::path resolve(const std::filesystem::path& base_dir, const std::string& ref, std::size_t line) {
    std::filesystem::path p(ref);
    if (p.is_relative()) p = base_dir / p;
    if (!std::filesystem::is_regular_file(p))
        invalid(fmt::format("line {}: referenced file '{}' does not exist", line, ref));
    return p;
}

RenderMesh build_mesh(const MeshSpec& spec, const std::filesystem::path& base_dir) {
    RenderMesh mesh;
    switch (spec.kind) {
    case MeshSpec::Kind::Cube: mesh = primitives::cube(spec.size); break;
    case MeshSpec::Kind::Quad: mesh = primitives::quad(spec.size); break;
    case MeshSpec::Kind::Sphere: mesh = primitives::uv_sphere(spec.radius, spec.segments, spec.rings); break;
    case MeshSpec::Kind::Obj: mesh = obj::to_render_mesh(obj::load_obj(resolve(base_dir, spec.path, spec.line))); break;
    }
    if (spec.color) mesh.uniform_color = *spec.color;
    return mesh;
}

void validate_doc(const SceneDoc& doc, LoadOptions options) {
    std::set<std::string> names;
    std::size_t cameras = 0;
    for (std::size_t i = 0; i < doc.entities.size(); ++i) {
        const EntitySpec& e = doc.entities[i];
        if (!names.insert(e.name).second) invalid(fmt::format("line {}: duplicate entity name '{}'", e.line, e.name));
        if (i == 0 && e.parent)
            invalid(fmt::format("line {}: the first entity is the root and cannot have a parent", e.line));
        if (e.parent && !names.count(*e.parent))
            invalid(fmt::format("line {}: parent '{}' of '{}' is not declared before it", e.line, *e.parent, e.name));
        if (e.parent && *e.parent == e.name)
            invalid(fmt::format("line {}: entity '{}' cannot be its own parent", e.line, e.name));
        if (e.transforms.size() > 1)
            invalid(fmt::format("line {}: entity '{}' declares {} transforms; transform forms are mutually exclusive",
                                e.transforms[1].line, e.name, e.transforms.size()));
        if (e.skin && e.meshes.size() != 1)
            invalid(fmt::format("line {}: skin on '{}' needs exactly one mesh", e.skin->line, e.name));
        cameras += e.cameras.size();
    }
    if (cameras > 1) invalid(fmt::format("scene must contain exactly one camera, found {}", cameras));
    if (cameras == 0 && options.require_camera) invalid("scene must contain exactly one camera, found none");
}

} // namespace

LoadedScene build_world(const SceneDoc& doc, const std::filesystem::path& base_dir, LoadOptions options) {
    validate_doc(doc, options);
    LoadedScene out;
    out.background = doc.background;
    World& world = out.world;

    if (doc.entities.empty()) {
        out.by_name.emplace("root", world.create_entity("root"));
        return out;
    }

    for (const EntitySpec& e : doc.entities) {
        const EntityId id = world.create_entity(e.name);
        out.by_name.emplace(e.name, id);
        if (e.label) out.labels.emplace(id, *e.label);
        if (id != world.root()) world.add_entity_child(e.parent ? out.by_name.at(*e.parent) : world.root(), id);

        if (!e.transforms.empty()) {
            const TransformSpec& t = e.transforms.front();
            if (t.form == TransformSpec::Form::Motor)
                world.add_component(id, make_ga_transform(t.translation, t.axis, radians(t.angle_degrees), t.scale));
            else
                world.add_component(id, BasicTransform{transform_matrix(t)});
        }
        if (!e.cameras.empty()) {
            out.camera = e.cameras.front();
            out.camera_entity = id;
            world.add_component(id, Camera{camera_projection(e.cameras.front(), 1, 1)});
        }
        if (!e.meshes.empty() || e.material || e.shading) {
            ShaderParams shader;
            if (e.material) shader.material = *e.material;
            if (e.shading) shader.model = *e.shading;
            world.add_component(id, std::move(shader));
        }
        if (!e.meshes.empty()) world.add_component(id, VertexArray{});
        std::vector<RenderMesh> meshes;
        for (const MeshSpec& m : e.meshes) {
            meshes.push_back(build_mesh(m, base_dir));
            systems::validate_mesh(meshes.back());
            world.add_component(id, meshes.back());
        }
        if (e.skin) {
            const SkinData skin = parse_skin(detail::read_file(resolve(base_dir, e.skin->path, e.skin->line)));
            world.add_component(id, make_skinned_mesh(skin, meshes.front(), e.skin->loop));
        }
        for (const render::Light& light : e.lights) world.add_component(id, PointLight{light});
    }
    return out;
}

LoadedScene load_scene(const std::filesystem::path& path, LoadOptions options) {
    return build_world(parse_scene(detail::read_file(path)), path.parent_path(), options);
}

SkinData parse_skin(std::string_view text) {
    SkinData skin;
    std::unordered_map<std::string, std::uint32_t> joint_index;
    std::set<std::uint32_t> influenced;
    std::vector<std::optional<JointPose>> pending; // poses of the open keyframe
    std::optional<double> pending_time;

    auto close_key = [&] {
        if (!pending_time) return;
        Keyframe key;
        key.time = *pending_time;
        for (std::size_t j = 0; j < skin.joints.size(); ++j)
            key.poses.push_back(j < pending.size() && pending[j] ? *pending[j] : skin.joints[j].bind_pose);
        skin.track.push_back(std::move(key));
        pending.clear();
        pending_time.reset();
    };

    auto lookup_joint = [&](const Record& rec, const Token& name) {
        const auto it = joint_index.find(std::string(name.text));
        if (it == joint_index.end()) fail(rec.line, name.column, fmt::format("unknown joint '{}'", name.text));
        return it->second;
    };

    for (const Record& rec : read_records(text, kSkinHeader)) {
        const std::string_view kw = rec.keyword.text;
        if (kw == "joint") {
            expect_words(rec, 1, 1);
            if (!skin.track.empty() || pending_time) fail(rec.line, rec.keyword.column, "joints must precede keys");
            const std::string name(rec.words[0].text);
            if (joint_index.count(name)) fail(rec.line, rec.words[0].column, fmt::format("duplicate joint '{}'", name));
            Fields f(rec);
            Joint joint;
            if (const auto p = f.take("parent")) joint.parent = lookup_joint(rec, *p);
            joint.bind_pose = pose_from_fields(f, JointPose{});
            f.finish();
            joint_index.emplace(name, static_cast<std::uint32_t>(skin.joints.size()));
            skin.joint_names.push_back(name);
            skin.joints.push_back(joint);
        } else if (kw == "influence") {
            expect_words(rec, 2, 1 + kMaxInfluences);
            const double vd = to_number(rec, rec.words[0]);
            if (vd < 0 || vd != std::floor(vd) || vd > 4e9) fail(rec.line, rec.words[0].column, "bad vertex index");
            const auto vertex = static_cast<std::uint32_t>(vd);
            if (!influenced.insert(vertex).second)
                fail(rec.line, rec.words[0].column, fmt::format("vertex {} already has influences", vertex));
            VertexInfluences inf;
            for (std::size_t k = 1; k < rec.words.size(); ++k) {
                const Token& w = rec.words[k];
                const std::size_t colon = w.text.find(':');
                if (colon == std::string_view::npos) fail(rec.line, w.column, "expected JOINT:WEIGHT");
                inf.entries[inf.count].joint = lookup_joint(rec, {w.text.substr(0, colon), w.column});
                inf.entries[inf.count].weight = to_number(rec, {w.text.substr(colon + 1), w.column + colon + 1});
                ++inf.count;
            }
            Fields(rec).finish();
            skin.influences.emplace_back(vertex, inf);
        } else if (kw == "key") {
            expect_words(rec, 1, 1);
            close_key();
            pending_time = to_number(rec, rec.words[0]);
            pending.assign(skin.joints.size(), std::nullopt);
            Fields(rec).finish();
        } else if (kw == "pose") {
            expect_words(rec, 1, 1);
            if (!pending_time) fail(rec.line, rec.keyword.column, "pose outside of a key");
            const std::uint32_t j = lookup_joint(rec, rec.words[0]);
            if (pending[j]) fail(rec.line, rec.words[0].column, "joint posed twice in one key");
            Fields f(rec);
            pending[j] = pose_from_fields(f, skin.joints[j].bind_pose);
            f.finish();
        } else {
            fail(rec.line, rec.keyword.column, fmt::format("unknown record '{}'", kw));
        }
    }
    close_key();
    animation::compute_inverse_binds(skin.joints);
    return skin;
}

SkinnedMesh make_skinned_mesh(const SkinData& skin, RenderMesh bind_mesh, bool loop) {
    SkinnedMesh mesh;
    mesh.influences.assign(bind_mesh.vertices.size(), VertexInfluences{});
    std::vector<bool> covered(bind_mesh.vertices.size(), false);
    for (const auto& [vertex, inf] : skin.influences) {
        if (vertex >= bind_mesh.vertices.size())
            invalid(fmt::format("skin influence names vertex {} but the mesh has {}", vertex, bind_mesh.vertices.size()));
        mesh.influences[vertex] = inf;
        covered[vertex] = true;
    }
    for (std::size_t v = 0; v < covered.size(); ++v)
        if (!covered[v]) invalid(fmt::format("skin has no influences for vertex {}", v));
    mesh.bind_mesh = std::move(bind_mesh);
    mesh.joints = skin.joints;
    mesh.track = skin.track;
    mesh.loop = loop;
    animation::validate_influences(mesh);
    return mesh;
}

namespace {

std::string format_entry(double v) {
    std::string s = fmt::format("{:.6f}", v);
    if (s == "-0.000000") s.erase(0, 1);
    return s;
}

void dump_entity(const World& world, EntityId id, std::size_t depth, std::string& out) {
    const Entity& e = world.entity(id);
    out.append(depth * 2, ' ');
    out += fmt::format("{} #{} [", e.name, id.value);
    bool first = true;
    for (const ComponentKey& key : world.components_of(id)) {
        out += first ? "" : ", ";
        out += to_string(key.kind);
        first = false;
    }
    out += "] l2w=[";
    const Mat4 m = systems::world_matrix(world, id);
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            out += format_entry(m(r, c));
            if (c < 3) out += ' ';
        }
        if (r < 3) out += "; ";
    }
    out += "]\n";
    for (EntityId child : e.children) dump_entity(world, child, depth + 1, out);
}

} // namespace

std::string inspect(const World& world) {
    std::string out;
    if (world.root()) dump_entity(world, world.root(), 0, out);
    return out;
}

std::string read_text_file(const std::filesystem::path& path) { return detail::read_file(path); }

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace elements::scene
