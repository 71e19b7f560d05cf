#pragma once

// Keyframe sampling and linear blend skinning:
//   v' = sum_j w_j * G_j * B_j^-1 * v

#include <span>
#include <vector>

#include "elements/ecss.hpp"

namespace elements::animation {

/// Interpolates between the bracketing keyframes (lerp translation and
/// scale, slerp rotation). Times outside the track clamp to its ends.
/// Throws EmptyTrack.
std::vector<JointPose> sample_pose(std::span<const Keyframe> track, double t);

/// Wraps t into the track's time range.
double loop_time(std::span<const Keyframe> track, double t);

Mat4 pose_matrix(const JointPose& pose);

/// G_j = G_parent(j) * L_j with the root joint under identity.
std::vector<Mat4> joint_globals(std::span<const Joint> joints, std::span<const JointPose> local_poses);

/// Sets every inverse_bind to invert(global bind transform).
void compute_inverse_binds(std::vector<Joint>& joints);

std::vector<JointPose> bind_poses(std::span<const Joint> joints);

struct SkinnedGeometry {
    std::vector<Vec3> vertices;
    std::vector<Vec3> normals; // empty when the bind mesh has none
};

/// Throws InvalidInfluence or UnnormalizedWeights (sum off by more than 1e-4).
void validate_influences(const SkinnedMesh& mesh);

/// Deforms the bind mesh; the mesh itself is not modified.
SkinnedGeometry skin_vertices(const SkinnedMesh& mesh, std::span<const Mat4> joint_globals);

/// Samples, skins and writes the result into each skinned entity's RenderMesh,
/// bumping its revision so the next init pass repacks the VertexArray.
void animation_system_update(World& world, double t);

} // namespace elements::animation
