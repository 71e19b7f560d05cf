#include "elements/animation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace elements::animation {

namespace {

void check_track(std::span<const Keyframe> track) {
    if (track.empty()) throw Error(ErrorCode::EmptyTrack, "keyframe track is empty");
    for (std::size_t i = 1; i < track.size(); ++i)
        if (!(track[i].time > track[i - 1].time))
            throw Error(ErrorCode::InvalidArgument, "keyframe times must be strictly increasing");
    for (std::size_t i = 1; i < track.size(); ++i)
        if (track[i].poses.size() != track[0].poses.size())
            throw Error(ErrorCode::InvalidArgument, "keyframes disagree on joint count");
}

} // namespace

std::vector<JointPose> sample_pose(std::span<const Keyframe> track, double t) {
    check_track(track);
    if (t <= track.front().time) return track.front().poses;
    if (t >= track.back().time) return track.back().poses;

    const auto next = std::upper_bound(track.begin(), track.end(), t,
                                       [](double value, const Keyframe& k) { return value < k.time; });
    const Keyframe& k1 = *next;
    const Keyframe& k0 = *(next - 1);
    const double u = (t - k0.time) / (k1.time - k0.time);
    if (u == 0.0) return k0.poses;

    std::vector<JointPose> out(k0.poses.size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        const JointPose& a = k0.poses[j];
        const JointPose& b = k1.poses[j];
        out[j].translation = lerp(a.translation, b.translation, u);
        out[j].rotation = quat_slerp(a.rotation, b.rotation, u);
        out[j].scale = a.scale + (b.scale - a.scale) * u;
    }
    return out;
}

double loop_time(std::span<const Keyframe> track, double t) {
    check_track(track);
    const double start = track.front().time;
    const double duration = track.back().time - start;
    if (duration <= 0.0) return start;
    double offset = std::fmod(t - start, duration);
    if (offset < 0.0) offset += duration;
    return start + offset;
}

Mat4 pose_matrix(const JointPose& pose) { return compose_trs(pose.translation, pose.rotation, pose.scale); }

std::vector<Mat4> joint_globals(std::span<const Joint> joints, std::span<const JointPose> local_poses) {
    if (local_poses.size() != joints.size())
        throw Error(ErrorCode::InvalidArgument, "pose count " + std::to_string(local_poses.size()) +
                                                    " does not match joint count " + std::to_string(joints.size()));
    std::vector<Mat4> globals(joints.size());
    for (std::size_t j = 0; j < joints.size(); ++j) {
        const Mat4 local = pose_matrix(local_poses[j]);
        if (joints[j].parent) {
            const std::uint32_t p = *joints[j].parent;
            if (p >= j) throw Error(ErrorCode::InvalidArgument, "joints must be topologically sorted");
            globals[j] = globals[p] * local;
        } else {
            globals[j] = Mat4::identity() * local;
        }
    }
    return globals;
}

std::vector<JointPose> bind_poses(std::span<const Joint> joints) {
    std::vector<JointPose> poses;
    poses.reserve(joints.size());
    for (const Joint& j : joints) poses.push_back(j.bind_pose);
    return poses;
}

void compute_inverse_binds(std::vector<Joint>& joints) {
    const std::vector<Mat4> globals = joint_globals(joints, bind_poses(joints));
    for (std::size_t j = 0; j < joints.size(); ++j) joints[j].inverse_bind = invert(globals[j]);
}

void validate_influences(const SkinnedMesh& mesh) {
    if (mesh.influences.size() != mesh.bind_mesh.vertices.size())
        throw Error(ErrorCode::InvalidInfluence, "influence table has " + std::to_string(mesh.influences.size()) +
                                                     " rows for " + std::to_string(mesh.bind_mesh.vertices.size()) +
                                                     " vertices");
    for (std::size_t v = 0; v < mesh.influences.size(); ++v) {
        const VertexInfluences& inf = mesh.influences[v];
        if (inf.count == 0 || inf.count > kMaxInfluences)
            throw Error(ErrorCode::InvalidInfluence, "vertex " + std::to_string(v) + " has no influences");
        double sum = 0.0;
        for (std::size_t k = 0; k < inf.count; ++k) {
            if (inf.entries[k].joint >= mesh.joints.size())
                throw Error(ErrorCode::InvalidInfluence, "vertex " + std::to_string(v) + " references joint " +
                                                             std::to_string(inf.entries[k].joint));
            if (!(inf.entries[k].weight >= 0.0))
                throw Error(ErrorCode::InvalidInfluence, "vertex " + std::to_string(v) + " has a negative weight");
            sum += inf.entries[k].weight;
        }
        if (std::abs(sum - 1.0) > 1e-4)
            throw Error(ErrorCode::UnnormalizedWeights,
                        "vertex " + std::to_string(v) + " weights sum to " + std::to_string(sum));
    }
}

SkinnedGeometry skin_vertices(const SkinnedMesh& mesh, std::span<const Mat4> joint_globals) {
    validate_influences(mesh);
    if (joint_globals.size() != mesh.joints.size())
        throw Error(ErrorCode::InvalidArgument, "joint global count does not match the skeleton");

    std::vector<Mat4> skin(mesh.joints.size());
    for (std::size_t j = 0; j < skin.size(); ++j) skin[j] = joint_globals[j] * mesh.joints[j].inverse_bind;

    const RenderMesh& bind = mesh.bind_mesh;
    SkinnedGeometry out;
    out.vertices.resize(bind.vertices.size());
    if (!bind.normals.empty()) out.normals.resize(bind.normals.size());
    for (std::size_t v = 0; v < bind.vertices.size(); ++v) {
        const VertexInfluences& inf = mesh.influences[v];
        Mat4 blended;
        for (std::size_t k = 0; k < inf.count; ++k) {
            const Mat4& m = skin[inf.entries[k].joint];
            const double w = inf.entries[k].weight;
            for (int i = 0; i < 16; ++i) blended.m[i] += w * m.m[i];
        }
        out.vertices[v] = transform_point(blended, bind.vertices[v]);
        if (!out.normals.empty()) out.normals[v] = normalize(transform_direction(blended, bind.normals[v]));
    }
    return out;
}

void animation_system_update(World& world, double t) {
    for (EntityId id : world.preorder()) {
        SkinnedMesh* skinned = world.get_component<SkinnedMesh>(id);
        if (!skinned) continue;

        std::vector<JointPose> poses;
        if (skinned->track.empty()) {
            poses = bind_poses(skinned->joints);
        } else {
            const double sample_t = skinned->loop ? loop_time(skinned->track, t) : t;
            poses = sample_pose(skinned->track, sample_t);
        }
        const SkinnedGeometry geometry = skin_vertices(*skinned, joint_globals(skinned->joints, poses));

        RenderMesh* target = world.get_component<RenderMesh>(id);
        if (!target) {
            world.add_component(id, skinned->bind_mesh);
            target = world.get_component<RenderMesh>(id);
            skinned = world.get_component<SkinnedMesh>(id);
        }
        target->vertices = geometry.vertices;
        target->normals = geometry.normals;
        target->triangles = skinned->bind_mesh.triangles;
        ++target->revision;
    }
}

} // namespace elements::animation
