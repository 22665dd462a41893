#include "nocsforge/datagen/mesh.hpp"

#include <cmath>

#include "nocsforge/core/rng.hpp"

namespace nf {

void TriangleMesh::validate() const {
    for (const auto& t : triangles)
        for (int i : t)
            if (i < 0 || size_t(i) >= vertices.size())
                throw ValidationError("TriangleMesh: triangle index out of range");
    if (vertices.empty()) throw ValidationError("TriangleMesh: empty mesh");

    Eigen::Vector3d lo = vertices[0], hi = vertices[0];
    for (const auto& v : vertices) {
        lo = lo.cwiseMin(v);
        hi = hi.cwiseMax(v);
    }
    const double diag = (hi - lo).norm();
    if (std::abs(diag - 1.0) > 1e-6)
        throw ValidationError("TriangleMesh: bounding-box diagonal is not 1");
    if ((hi + lo).cwiseAbs().maxCoeff() > 2e-6)
        throw ValidationError("TriangleMesh: bounding box is not centered");
    if (colors.size() != vertices.size())
        throw ValidationError("TriangleMesh: per-vertex color count mismatch");
    if (!(physical_diagonal > 0))
        throw ValidationError("TriangleMesh: physical diagonal must be positive");
}

void TriangleMesh::canonicalize() {
    Eigen::Vector3d lo = vertices[0], hi = vertices[0];
    for (const auto& v : vertices) {
        lo = lo.cwiseMin(v);
        hi = hi.cwiseMax(v);
    }
    const Eigen::Vector3d center = 0.5 * (lo + hi);
    const double diag = (hi - lo).norm();
    for (auto& v : vertices) v = (v - center) / diag;
}

namespace {

void push_quad(TriangleMesh& m, int a, int b, int c, int d) {
    m.triangles.push_back({a, b, c});
    m.triangles.push_back({a, c, d});
}

Eigen::Vector3f mix(const Eigen::Vector3f& a, const Eigen::Vector3f& b, float t) {
    return a * (1.f - t) + b * t;
}

Eigen::Vector3f clamp01(const Eigen::Vector3f& c) {
    return c.cwiseMax(0.f).cwiseMin(1.f);
}

}  // namespace

TriangleMesh make_box(double wr, double hr, double dr, const Eigen::Vector3f& tint,
                      double physical_diagonal) {
    TriangleMesh m;
    m.physical_diagonal = physical_diagonal;
    const Eigen::Vector3d he(wr / 2, hr / 2, dr / 2);
    for (int i = 0; i < 8; ++i) {
        Eigen::Vector3d v((i & 1) ? he.x() : -he.x(), (i & 2) ? he.y() : -he.y(),
                          (i & 4) ? he.z() : -he.z());
        m.vertices.push_back(v);
    }
    // Faces with outward winding (counter-clockwise seen from outside).
    push_quad(m, 0, 4, 6, 2);  // -x
    push_quad(m, 1, 3, 7, 5);  // +x
    push_quad(m, 0, 1, 5, 4);  // -y
    push_quad(m, 2, 6, 7, 3);  // +y
    push_quad(m, 0, 2, 3, 1);  // -z
    push_quad(m, 4, 5, 7, 6);  // +z
    m.canonicalize();
    // Position-keyed colors break the cuboid's 180-degree symmetries.
    m.colors.reserve(m.vertices.size());
    for (const auto& v : m.vertices) {
        Eigen::Vector3f pos = (v + Eigen::Vector3d::Constant(0.5)).cast<float>();
        m.colors.push_back(clamp01(mix(pos, tint, 0.35f)));
    }
    return m;
}

namespace {

// Shared lathe builder for cylinder (taper=1) and cone (taper=0).
TriangleMesh make_lathe(double radius_ratio, int segments, double top_taper,
                        const Eigen::Vector3f& tint, double physical_diagonal) {
    TriangleMesh m;
    m.physical_diagonal = physical_diagonal;
    const double h = 1.0;
    const double r = radius_ratio;
    std::vector<int> bottom_ring, top_ring;
    for (int i = 0; i < segments; ++i) {
        const double a = 2.0 * M_PI * i / segments;
        const double ca = std::cos(a), sa = std::sin(a);
        bottom_ring.push_back(int(m.vertices.size()));
        m.vertices.emplace_back(r * ca, -h / 2, r * sa);
        top_ring.push_back(int(m.vertices.size()));
        m.vertices.emplace_back(top_taper * r * ca, h / 2, top_taper * r * sa);
    }
    const int bottom_center = int(m.vertices.size());
    m.vertices.emplace_back(0, -h / 2, 0);
    const int top_center = int(m.vertices.size());
    m.vertices.emplace_back(0, h / 2, 0);

    for (int i = 0; i < segments; ++i) {
        const int j = (i + 1) % segments;
        m.triangles.push_back({bottom_ring[i], top_ring[i], top_ring[j]});
        m.triangles.push_back({bottom_ring[i], top_ring[j], bottom_ring[j]});
        m.triangles.push_back({bottom_center, bottom_ring[j], bottom_ring[i]});
        if (top_taper > 1e-9)
            m.triangles.push_back({top_center, top_ring[i], top_ring[j]});
    }
    m.canonicalize();
    // Axisymmetric coloring: depends on height and radial distance only,
    // so rotating the object about its axis leaves the rendering unchanged.
    m.colors.reserve(m.vertices.size());
    for (const auto& v : m.vertices) {
        const float y = float(v.y() + 0.5);
        const float rad = float(std::hypot(v.x(), v.z()));
        Eigen::Vector3f band(0.25f + 0.6f * y, 0.4f + 0.8f * rad, 0.8f - 0.5f * y);
        m.colors.push_back(clamp01(mix(band, tint, 0.4f)));
    }
    return m;
}

}  // namespace

TriangleMesh make_cylinder(double radius_ratio, int segments, const Eigen::Vector3f& tint,
                           double physical_diagonal) {
    return make_lathe(radius_ratio, segments, 1.0, tint, physical_diagonal);
}

TriangleMesh make_cone(double radius_ratio, int segments, const Eigen::Vector3f& tint,
                       double physical_diagonal) {
    return make_lathe(radius_ratio, segments, 0.0, tint, physical_diagonal);
}

TriangleMesh make_mug(double body_ratio, const Eigen::Vector3f& tint,
                      double physical_diagonal) {
    // Cylindrical body plus a flat rectangular handle on +x.
    TriangleMesh m = make_lathe(body_ratio, 24, 1.0, tint, physical_diagonal);
    const double r = body_ratio * 0.5;  // post-canonicalization approximation
    (void)r;
    // Rebuild from scratch so the handle participates in canonicalization.
    TriangleMesh body;
    body.physical_diagonal = physical_diagonal;
    const int segments = 24;
    const double br = body_ratio;
    std::vector<int> bot, top;
    for (int i = 0; i < segments; ++i) {
        const double a = 2.0 * M_PI * i / segments;
        bot.push_back(int(body.vertices.size()));
        body.vertices.emplace_back(br * std::cos(a), -0.5, br * std::sin(a));
        top.push_back(int(body.vertices.size()));
        body.vertices.emplace_back(br * std::cos(a), 0.5, br * std::sin(a));
    }
    const int bc = int(body.vertices.size());
    body.vertices.emplace_back(0, -0.5, 0);
    const int tc = int(body.vertices.size());
    body.vertices.emplace_back(0, 0.5, 0);
    for (int i = 0; i < segments; ++i) {
        const int j = (i + 1) % segments;
        body.triangles.push_back({bot[i], top[i], top[j]});
        body.triangles.push_back({bot[i], top[j], bot[j]});
        body.triangles.push_back({bc, bot[j], bot[i]});
        body.triangles.push_back({tc, top[i], top[j]});
    }
    // Handle: thin box arc approximated by two slabs.
    const double hx0 = br * 0.95, hx1 = br * 1.45;
    const double hy0 = -0.25, hy1 = 0.25;
    const double hz = 0.06;
    const int base = int(body.vertices.size());
    for (int i = 0; i < 8; ++i) {
        body.vertices.emplace_back((i & 1) ? hx1 : hx0, (i & 2) ? hy1 : hy0,
                                   (i & 4) ? hz : -hz);
    }
    auto quad = [&](int a, int b, int c, int d) {
        body.triangles.push_back({base + a, base + b, base + c});
        body.triangles.push_back({base + a, base + c, base + d});
    };
    quad(0, 4, 6, 2);
    quad(1, 3, 7, 5);
    quad(0, 1, 5, 4);
    quad(2, 6, 7, 3);
    quad(0, 2, 3, 1);
    quad(4, 5, 7, 6);
    body.canonicalize();
    body.colors.reserve(body.vertices.size());
    for (const auto& v : body.vertices) {
        Eigen::Vector3f pos = (v + Eigen::Vector3d::Constant(0.5)).cast<float>();
        body.colors.push_back(clamp01(mix(pos, tint, 0.45f)));
    }
    return body;
}

const std::vector<CategorySpec>& builtin_categories() {
    static const std::vector<CategorySpec> cats = {
        {"box", 1, "none"},
        {"cylinder", 2, "axial"},
        {"cone", 3, "axial"},
        {"mug", 4, "none"},
    };
    return cats;
}

TriangleMesh make_instance(const std::string& category, int instance_index) {
    Rng rng(Rng::derive(0x6d657368, uint64_t(instance_index)));
    const Eigen::Vector3f tint(float(rng.uniform(0.2, 0.9)), float(rng.uniform(0.2, 0.9)),
                               float(rng.uniform(0.2, 0.9)));
    const double diag = rng.uniform(0.2, 0.32);
    if (category == "box")
        return make_box(1.0, rng.uniform(0.45, 0.7), rng.uniform(0.25, 0.4), tint, diag);
    if (category == "cylinder")
        return make_cylinder(rng.uniform(0.25, 0.4), 24, tint, diag);
    if (category == "cone")
        return make_cone(rng.uniform(0.3, 0.45), 24, tint, diag);
    if (category == "mug")
        return make_mug(rng.uniform(0.3, 0.4), tint, diag);
    throw ValidationError("make_instance: unknown category " + category);
}

}  // namespace nf
