#include "nocsforge/datagen/icosphere.hpp"

#include <cmath>
#include <map>

#include "nocsforge/core/error.hpp"

namespace nf {

CameraPose look_at(const Eigen::Vector3d& camera_center) {
    const double r = camera_center.norm();
    if (r <= 0) throw ValidationError("look_at: camera at the origin");

    const Eigen::Vector3d forward = (-camera_center).normalized();
    Eigen::Vector3d up(0, 1, 0);
    if (std::abs(forward.dot(up)) > 1.0 - 1e-9) up = Eigen::Vector3d(1, 0, 0);

    const Eigen::Vector3d x_cam = forward.cross(up).normalized();
    const Eigen::Vector3d y_cam = forward.cross(x_cam);

    Eigen::Matrix3d rot;
    rot.row(0) = x_cam;
    rot.row(1) = y_cam;
    rot.row(2) = forward;

    CameraPose pose;
    pose.rotation = Rotation3::from_matrix(rot, 1e-9);
    pose.translation = -(rot * camera_center);
    return pose;
}

std::vector<Eigen::Vector3d> icosphere_vertices(int subdivisions) {
    if (subdivisions < 0) throw ValidationError("icosphere: negative subdivision count");

    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<Eigen::Vector3d> verts = {
        {-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0}, {0, -1, t},  {0, 1, t},
        {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
    for (auto& v : verts) v.normalize();

    std::vector<std::array<int, 3>> faces = {
        {0, 11, 5}, {0, 5, 1},   {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
        {1, 5, 9},  {5, 11, 4},  {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
        {3, 9, 4},  {3, 4, 2},   {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
        {4, 9, 5},  {2, 4, 11},  {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};

    for (int level = 0; level < subdivisions; ++level) {
        std::map<std::pair<int, int>, int> midpoint;
        auto midpoint_of = [&](int a, int b) {
            const auto key = std::minmax(a, b);
            auto it = midpoint.find(key);
            if (it != midpoint.end()) return it->second;
            const int idx = int(verts.size());
            verts.push_back((verts[a] + verts[b]).normalized());
            midpoint.emplace(key, idx);
            return idx;
        };
        std::vector<std::array<int, 3>> next;
        next.reserve(faces.size() * 4);
        for (const auto& f : faces) {
            const int ab = midpoint_of(f[0], f[1]);
            const int bc = midpoint_of(f[1], f[2]);
            const int ca = midpoint_of(f[2], f[0]);
            next.push_back({f[0], ab, ca});
            next.push_back({f[1], bc, ab});
            next.push_back({f[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        faces = std::move(next);
    }
    return verts;
}

std::vector<CameraPose> icosphere_cameras(int subdivisions, double radius) {
    if (!(radius > 0)) throw ValidationError("icosphere_cameras: radius must be positive");
    const auto verts = icosphere_vertices(subdivisions);
    std::vector<CameraPose> cams;
    cams.reserve(verts.size());
    for (const auto& v : verts) cams.push_back(look_at(v * radius));
    return cams;
}

}  // namespace nf
