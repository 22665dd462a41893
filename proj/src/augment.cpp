#include "nocsforge/datagen/augment.hpp"

#include <cmath>

namespace nf {

void PhongParams::validate() const {
    if (ambient < 0 || ambient > 1 || diffuse < 0 || diffuse > 1 || specular < 0 ||
        specular > 1)
        throw ValidationError("PhongParams: coefficients must lie in [0,1]");
    if (ambient + diffuse > 1.2)
        throw ValidationError("PhongParams: ambient + diffuse exceeds 1.2");
    if (shininess < 1) throw ValidationError("PhongParams: shininess must be >= 1");
    if (std::abs(light_dir.norm() - 1.0) > 1e-6)
        throw ValidationError("PhongParams: light direction must be unit norm");
}

PhongParams sample_phong_params(Rng& rng) {
    PhongParams p;
    p.ambient = rng.uniform(0.3, 0.9);
    p.diffuse = rng.uniform(0.1, std::min(0.7, 1.2 - p.ambient));
    p.specular = rng.uniform(0.0, 0.3);
    p.shininess = rng.uniform(2.0, 32.0);
    // Uniform direction on the camera-side hemisphere (z < 0).
    const double z = -rng.uniform();
    const double phi = rng.uniform(0.0, 2.0 * M_PI);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    p.light_dir = Eigen::Vector3d(r * std::cos(phi), r * std::sin(phi), z).normalized();
    p.validate();
    return p;
}

double CutoutShape::area() const {
    switch (kind) {
        case Kind::Rectangle: return 4.0 * a * b;
        case Kind::Circle: return M_PI * a * a;
        case Kind::Ellipse: return M_PI * a * b;
        case Kind::Triangle: return 3.0 * std::sqrt(3.0) / 4.0 * a * a;
    }
    return 0.0;
}

bool CutoutShape::contains(double u, double v) const {
    const double du = u - center.x(), dv = v - center.y();
    const double ca = std::cos(-angle), sa = std::sin(-angle);
    const double x = ca * du - sa * dv;
    const double y = sa * du + ca * dv;
    switch (kind) {
        case Kind::Rectangle: return std::abs(x) < a && std::abs(y) < b;
        case Kind::Circle: return x * x + y * y < a * a;
        case Kind::Ellipse: return (x * x) / (a * a) + (y * y) / (b * b) < 1.0;
        case Kind::Triangle: {
            // Equilateral with circumradius a, one vertex pointing up (-v).
            Eigen::Vector2d p(x, y);
            Eigen::Vector2d verts[3];
            for (int i = 0; i < 3; ++i) {
                const double t = -M_PI / 2 + 2.0 * M_PI * i / 3.0;
                verts[i] = Eigen::Vector2d(a * std::cos(t), a * std::sin(t));
            }
            double sign = 0;
            for (int i = 0; i < 3; ++i) {
                const Eigen::Vector2d e = verts[(i + 1) % 3] - verts[i];
                const Eigen::Vector2d d = p - verts[i];
                const double cross = e.x() * d.y() - e.y() * d.x();
                if (i == 0) sign = cross;
                if (cross * sign < 0) return false;
                if (cross == 0) return false;  // boundary excluded
            }
            return true;
        }
    }
    return false;
}

std::vector<CutoutShape> sample_cutout_shapes(Rng& rng, int width, int height) {
    const int count = 1 + int(rng.uniform_index(3));
    const double max_area = 0.25 * width * height;
    std::vector<CutoutShape> shapes;
    for (int i = 0; i < count; ++i) {
        CutoutShape s;
        s.kind = CutoutShape::Kind(rng.uniform_index(4));
        s.center = Eigen::Vector2d(rng.uniform(0.0, width - 1.0), rng.uniform(0.0, height - 1.0));
        s.a = rng.uniform(0.04, 0.22) * width;
        s.b = rng.uniform(0.04, 0.22) * height;
        s.angle = rng.uniform(0.0, 2.0 * M_PI);
        // Shrink until the per-shape area invariant holds.
        while (s.area() > max_area) {
            s.a *= 0.9;
            s.b *= 0.9;
        }
        shapes.push_back(s);
    }
    return shapes;
}

RenderedView inplane_rotate(const RenderedView& view, double angle) {
    const CameraIntrinsics& k = view.intrinsics;
    RenderedView out;
    out.rgb = RgbMap(k.height, k.width, Eigen::Vector3f::Ones());
    out.depth = DepthMap(k.height, k.width, 0.f);
    out.normal = NormalMap(k.height, k.width, Eigen::Vector3f::Zero());
    out.nocs = NocsMap(k.height, k.width);
    out.mask = Mask(k.height, k.width, 0);
    out.category = view.category;
    out.intrinsics = k;

    const double ca = std::cos(angle), sa = std::sin(angle);
    Eigen::Matrix3d rz;
    rz << ca, -sa, 0, sa, ca, 0, 0, 0, 1;
    const Rotation3 r_z = Rotation3::from_matrix(rz, 1e-9);
    out.pose = SimilarityPose(r_z * view.pose.rotation, rz * view.pose.translation,
                              view.pose.scale);

    const Eigen::Matrix3f rz32 = rz.cast<float>();

    for (int v = 0; v < k.height; ++v) {
        for (int u = 0; u < k.width; ++u) {
            // Inverse map: rotate the destination pixel back by -angle.
            const double du = u - k.cx, dv = v - k.cy;
            const double su = ca * du + sa * dv + k.cx;
            const double sv = -sa * du + ca * dv + k.cy;
            const int iu = int(std::lround(su));
            const int iv = int(std::lround(sv));
            if (!view.rgb.in_bounds(iv, iu)) continue;
            out.rgb(v, u) = view.rgb(iv, iu);
            out.depth(v, u) = view.depth(iv, iu);
            out.mask(v, u) = view.mask(iv, iu);
            out.nocs.values(v, u) = view.nocs.values(iv, iu);
            out.nocs.validity(v, u) = view.nocs.validity(iv, iu);
            if (view.normal(iv, iu) != Eigen::Vector3f::Zero())
                out.normal(v, u) = rz32 * view.normal(iv, iu);
        }
    }
    return out;
}

RgbMap phong_relight(const RgbMap& rgb, const NormalMap& normal, const PhongParams& p) {
    require_same_shape(rgb, normal, "phong_relight");
    p.validate();
    const Eigen::Vector3d view_dir(0, 0, -1);
    RgbMap out = rgb;
    for (int v = 0; v < rgb.height(); ++v) {
        for (int u = 0; u < rgb.width(); ++u) {
            const Eigen::Vector3f& nf32 = normal(v, u);
            if (nf32 == Eigen::Vector3f::Zero()) continue;  // background untouched
            const Eigen::Vector3d n = nf32.cast<double>();
            const double ndotl = std::max(0.0, n.dot(p.light_dir));
            const Eigen::Vector3d r = 2.0 * n.dot(p.light_dir) * n - p.light_dir;
            const double spec =
                p.specular * std::pow(std::max(0.0, r.dot(view_dir)), p.shininess);
            const Eigen::Vector3d base = rgb(v, u).cast<double>();
            const Eigen::Vector3d lit =
                base * (p.ambient + p.diffuse * ndotl) + Eigen::Vector3d::Constant(spec);
            out(v, u) = lit.cwiseMax(0.0).cwiseMin(1.0).cast<float>();
        }
    }
    return out;
}

RenderedView apply_cutout(const RenderedView& view, const std::vector<CutoutShape>& shapes) {
    const double max_area = 0.25 * view.rgb.width() * view.rgb.height();
    for (const auto& s : shapes)
        if (s.area() > max_area)
            throw ValidationError("cutout: shape area exceeds 25% of the image");

    RenderedView out = view;
    for (int v = 0; v < view.rgb.height(); ++v) {
        for (int u = 0; u < view.rgb.width(); ++u) {
            bool inside = false;
            for (const auto& s : shapes)
                if (s.contains(u, v)) { inside = true; break; }
            if (!inside) continue;
            out.rgb(v, u) = Eigen::Vector3f::Ones();
            out.normal(v, u) = Eigen::Vector3f::Zero();
            out.depth(v, u) = 0.f;
            out.mask(v, u) = 0;
            // NOCS target deliberately not cut.
        }
    }
    return out;
}

RenderedView random_cutout(const RenderedView& view, uint64_t seed) {
    Rng rng(seed);
    return apply_cutout(view, sample_cutout_shapes(rng, view.rgb.width(), view.rgb.height()));
}

}  // namespace nf
