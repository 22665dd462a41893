#include "nocsforge/core/geometry.hpp"

namespace nf {

PointCloud backproject(const DepthMap& depth, const Mask& mask, const CameraIntrinsics& k) {
    require_same_shape(depth, mask, "backproject");
    if (depth.height() != k.height || depth.width() != k.width)
        throw ShapeError("backproject: depth dimensions disagree with intrinsics");

    PointCloud cloud;
    cloud.frame = Frame::Camera;
    cloud.points.reserve(depth.size());
    for (int v = 0; v < depth.height(); ++v) {
        for (int u = 0; u < depth.width(); ++u) {
            if (!mask(v, u)) continue;
            const double z = depth(v, u);
            cloud.points.emplace_back(z * (u - k.cx) / k.fx, z * (v - k.cy) / k.fy, z);
        }
    }
    return cloud;
}

PointCloud nocs_to_canonical(const NocsMap& nocs) {
    PointCloud cloud;
    cloud.frame = Frame::Nocs;
    cloud.points.reserve(nocs.values.size());
    for (int v = 0; v < nocs.height(); ++v) {
        for (int u = 0; u < nocs.width(); ++u) {
            if (!nocs.validity(v, u)) continue;
            const Eigen::Vector3f& n = nocs.values(v, u);
            cloud.points.emplace_back(n.x() - 0.5, n.y() - 0.5, n.z() - 0.5);
        }
    }
    return cloud;
}

PointCloud apply_pose(const SimilarityPose& pose, const PointCloud& cloud) {
    if (cloud.frame != Frame::Nocs)
        throw FrameError("apply_pose: expected a NOCS-frame cloud");
    PointCloud out;
    out.frame = Frame::Camera;
    out.points.reserve(cloud.size());
    for (const auto& q : cloud.points) out.points.push_back(pose.apply(q));
    return out;
}

}  // namespace nf
