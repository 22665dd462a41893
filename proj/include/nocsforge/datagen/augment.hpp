#pragma once

#include "nocsforge/core/rng.hpp"
#include "nocsforge/datagen/render.hpp"

namespace nf {

/// Phong reflection parameters used by the lighting augmentation.
struct PhongParams {
    double ambient = 1.0;
    double diffuse = 0.0;
    double specular = 0.0;
    double shininess = 1.0;
    Eigen::Vector3d light_dir = Eigen::Vector3d(0, 0, -1);  // toward the light

    void validate() const;
};

/// Samples in-gamut parameters: ambient U[0.3,0.9], diffuse U[0.1,0.7]
/// capped so ambient+diffuse <= 1.2, specular U[0,0.3], shininess U[2,32],
/// light direction uniform on the camera-side hemisphere.
PhongParams sample_phong_params(Rng& rng);

/// Occlusion cut-out region; area must stay under 25% of the image.
struct CutoutShape {
    enum class Kind { Rectangle, Circle, Triangle, Ellipse };
    Kind kind = Kind::Rectangle;
    Eigen::Vector2d center = Eigen::Vector2d::Zero();  // pixels
    double a = 1.0;  // rect half-width | circle radius | ellipse a | triangle circumradius
    double b = 1.0;  // rect half-height | ellipse b
    double angle = 0.0;  // radians

    double area() const;
    bool contains(double u, double v) const;
};

std::vector<CutoutShape> sample_cutout_shapes(Rng& rng, int width, int height);

/// Rotates every map about the principal point with nearest-neighbor
/// resampling. Normal vectors are additionally rotated by R_z(angle);
/// NOCS values stay untouched; the pose becomes (R_z R, R_z t, s).
RenderedView inplane_rotate(const RenderedView& view, double angle);

/// out = clamp(rgb*(ambient + diffuse*max(0,n.l)) + specular*max(0,r.v)^shininess, 0, 1)
/// with v = (0,0,-1) and r the reflection of l about n. Background pixels
/// (normal exactly zero) pass through unchanged.
RgbMap phong_relight(const RgbMap& rgb, const NormalMap& normal, const PhongParams& p);

/// Blanks the conditioning maps (rgb/normal/depth/mask) inside the shapes;
/// the ground-truth NOCS target is left intact so the model must inpaint.
RenderedView apply_cutout(const RenderedView& view, const std::vector<CutoutShape>& shapes);

/// Seeded convenience wrapper: samples shapes, then applies them.
RenderedView random_cutout(const RenderedView& view, uint64_t seed);

}  // namespace nf
