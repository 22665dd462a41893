#pragma once

#include <array>
#include <string>
#include <vector>

#include "nocsforge/core/types.hpp"

namespace nf {

/// Triangle mesh in the canonical frame: tight bounding box centered at
/// the origin with unit diagonal. physical_diagonal is the metric size
/// the canonical geometry stands for.
struct TriangleMesh {
    std::vector<Eigen::Vector3d> vertices;
    std::vector<std::array<int, 3>> triangles;
    std::vector<Eigen::Vector3f> colors;  // per-vertex base color in [0,1]^3
    double physical_diagonal = 0.25;      // meters

    void validate() const;

    /// Centers the tight bounding box at the origin and rescales the
    /// geometry so its diagonal is exactly 1.
    void canonicalize();
};

/// Built-in parametric categories. Instance parameters perturb the base
/// shape; colors are assigned per category (axisymmetric shapes get
/// axisymmetric coloring so their appearance matches their symmetry).
TriangleMesh make_box(double width_ratio, double height_ratio, double depth_ratio,
                      const Eigen::Vector3f& tint, double physical_diagonal);
TriangleMesh make_cylinder(double radius_ratio, int segments, const Eigen::Vector3f& tint,
                           double physical_diagonal);
TriangleMesh make_cone(double radius_ratio, int segments, const Eigen::Vector3f& tint,
                       double physical_diagonal);
TriangleMesh make_mug(double body_ratio, const Eigen::Vector3f& tint,
                      double physical_diagonal);

/// Category registry used by the CLI and tests.
struct CategorySpec {
    std::string name;
    CategoryId id = 0;  // 1-based; 0 stays reserved for "unknown"
    std::string symmetry;  // "none" | "axial" | "axial_reflective"
};

const std::vector<CategorySpec>& builtin_categories();

/// Deterministic instance generator: instance_index seeds the shape and
/// tint perturbations.
TriangleMesh make_instance(const std::string& category, int instance_index);

}  // namespace nf
