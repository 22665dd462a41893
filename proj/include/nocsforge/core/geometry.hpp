#pragma once

#include "nocsforge/core/types.hpp"

namespace nf {

/// Back-projects valid masked depth pixels into camera-frame points,
/// p = depth * ((u-cx)/fx, (v-cy)/fy, 1), in row-major pixel order.
PointCloud backproject(const DepthMap& depth, const Mask& mask, const CameraIntrinsics& k);

/// Emits q = nocs - (0.5,0.5,0.5) for each valid pixel, in row-major order.
PointCloud nocs_to_canonical(const NocsMap& nocs);

/// p = scale * R * q + t per point. Input must be in the NOCS frame.
PointCloud apply_pose(const SimilarityPose& pose, const PointCloud& cloud);

}  // namespace nf
