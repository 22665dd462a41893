#pragma once

#include <vector>

#include "nocsforge/core/types.hpp"

namespace nf {

/// Object-to-camera transform: p_cam = R * p_obj + t.
struct CameraPose {
    Rotation3 rotation;
    Eigen::Vector3d translation = Eigen::Vector3d::Zero();

    Eigen::Vector3d center() const {
        // 0 = R c + t at the camera center.
        return -(rotation.transpose() * translation);
    }
};

/// Camera frame convention: x right (image u), y down (image v), z forward.
/// Up-vector rule: global +y; +x when the view direction is at a pole.
CameraPose look_at(const Eigen::Vector3d& camera_center);

/// Unit icosphere vertices after `subdivisions` loop subdivisions
/// (12, 42, 162 vertices for 0, 1, 2).
std::vector<Eigen::Vector3d> icosphere_vertices(int subdivisions);

/// One inward-looking camera per icosphere vertex at the given radius.
std::vector<CameraPose> icosphere_cameras(int subdivisions, double radius);

}  // namespace nf
