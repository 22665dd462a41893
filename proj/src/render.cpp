#include "nocsforge/datagen/render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nf {

CameraIntrinsics default_intrinsics(int size) {
    const double f = 1.6 * size;
    const double c = (size - 1) / 2.0;
    return CameraIntrinsics(f, f, c, c, size, size);
}

double default_camera_radius(double physical_diagonal) { return 2.5 * physical_diagonal; }

namespace {

float quantize8(double v) {
    const double c = std::clamp(v, 0.0, 1.0);
    return float(std::round(c * 255.0) / 255.0);
}

}  // namespace

RenderedView render(const TriangleMesh& mesh, const CameraPose& cam,
                    const CameraIntrinsics& k) {
    mesh.validate();
    const double s = mesh.physical_diagonal;

    RenderedView view;
    view.rgb = RgbMap(k.height, k.width, Eigen::Vector3f::Ones());
    view.depth = DepthMap(k.height, k.width, 0.f);
    view.normal = NormalMap(k.height, k.width, Eigen::Vector3f::Zero());
    view.nocs = NocsMap(k.height, k.width);
    view.mask = Mask(k.height, k.width, 0);
    view.pose = SimilarityPose(cam.rotation, cam.translation, s);
    view.intrinsics = k;

    // Camera-frame vertex positions (meters).
    std::vector<Eigen::Vector3d> pc(mesh.vertices.size());
    for (size_t i = 0; i < mesh.vertices.size(); ++i)
        pc[i] = cam.rotation * (s * mesh.vertices[i]) + cam.translation;

    Image<double> zbuf(k.height, k.width, std::numeric_limits<double>::infinity());
    bool covered = false;

    for (const auto& tri : mesh.triangles) {
        const Eigen::Vector3d& p0 = pc[tri[0]];
        const Eigen::Vector3d& p1 = pc[tri[1]];
        const Eigen::Vector3d& p2 = pc[tri[2]];
        if (p0.z() <= 1e-6 || p1.z() <= 1e-6 || p2.z() <= 1e-6) continue;

        const Eigen::Vector2d a(k.fx * p0.x() / p0.z() + k.cx, k.fy * p0.y() / p0.z() + k.cy);
        const Eigen::Vector2d b(k.fx * p1.x() / p1.z() + k.cx, k.fy * p1.y() / p1.z() + k.cy);
        const Eigen::Vector2d c(k.fx * p2.x() / p2.z() + k.cx, k.fy * p2.y() / p2.z() + k.cy);

        const double area2 = (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
        if (std::abs(area2) < 1e-12) continue;

        Eigen::Vector3d face_normal =
            (p1 - p0).cross(p2 - p0).normalized();
        // Orient toward the camera.
        if (face_normal.dot(p0 + p1 + p2) > 0) face_normal = -face_normal;
        const Eigen::Vector3f n32 = face_normal.cast<float>();

        const Eigen::Vector3f face_color =
            (mesh.colors[tri[0]] + mesh.colors[tri[1]] + mesh.colors[tri[2]]) / 3.f;

        const int u0 = std::max(0, int(std::floor(std::min({a.x(), b.x(), c.x()}))));
        const int u1 = std::min(k.width - 1, int(std::ceil(std::max({a.x(), b.x(), c.x()}))));
        const int v0 = std::max(0, int(std::floor(std::min({a.y(), b.y(), c.y()}))));
        const int v1 = std::min(k.height - 1, int(std::ceil(std::max({a.y(), b.y(), c.y()}))));

        const Eigen::Vector3d q0 = mesh.vertices[tri[0]];
        const Eigen::Vector3d q1 = mesh.vertices[tri[1]];
        const Eigen::Vector3d q2 = mesh.vertices[tri[2]];

        for (int v = v0; v <= v1; ++v) {
            for (int u = u0; u <= u1; ++u) {
                const Eigen::Vector2d p(u, v);
                const double w0 = ((b.x() - p.x()) * (c.y() - p.y()) -
                                   (b.y() - p.y()) * (c.x() - p.x())) / area2;
                const double w1 = ((c.x() - p.x()) * (a.y() - p.y()) -
                                   (c.y() - p.y()) * (a.x() - p.x())) / area2;
                const double w2 = 1.0 - w0 - w1;
                if (w0 < 0 || w1 < 0 || w2 < 0) continue;

                // Perspective-correct: 1/z and attr/z are linear in screen space.
                const double inv_z = w0 / p0.z() + w1 / p1.z() + w2 / p2.z();
                const double z = 1.0 / inv_z;
                if (z >= zbuf(v, u)) continue;
                zbuf(v, u) = z;

                const Eigen::Vector3d canonical =
                    (w0 / p0.z() * q0 + w1 / p1.z() * q1 + w2 / p2.z() * q2) * z;

                view.depth(v, u) = float(z);
                view.normal(v, u) = n32;
                view.rgb(v, u) = face_color;
                view.nocs.values(v, u) = Eigen::Vector3f(quantize8(canonical.x() + 0.5),
                                                         quantize8(canonical.y() + 0.5),
                                                         quantize8(canonical.z() + 0.5));
                view.nocs.validity(v, u) = 1;
                view.mask(v, u) = 1;
                covered = true;
            }
        }
    }

    if (!covered) throw DegenerateError("render: object projects to no pixel");
    return view;
}

}  // namespace nf
