#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <cmath>
#include <cstdint>
#include <vector>

#include "nocsforge/core/error.hpp"
#include "nocsforge/core/image.hpp"

namespace nf {

/// Proper rotation, validated to orthonormality and det +1 on construction.
template <typename Scalar>
class Rotation3T {
public:
    using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;
    using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

    Rotation3T() : m_(Matrix3::Identity()) {}

    static Rotation3T identity() { return Rotation3T(); }

    /// Validates ||R^T R - I||_inf <= tol and det(R) = +1 within tol.
    static Rotation3T from_matrix(const Matrix3& m, Scalar tol = Scalar(1e-9)) {
        const Matrix3 gram = m.transpose() * m - Matrix3::Identity();
        if (gram.cwiseAbs().maxCoeff() > tol)
            throw ValidationError("Rotation3: matrix is not orthonormal");
        if (std::abs(m.determinant() - Scalar(1)) > tol)
            throw ValidationError("Rotation3: determinant is not +1");
        Rotation3T r;
        r.m_ = m;
        return r;
    }

    /// Re-orthonormalizes via SVD projection before validating.
    static Rotation3T project(const Matrix3& m) {
        Eigen::JacobiSVD<Matrix3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
        Matrix3 r = svd.matrixU() * svd.matrixV().transpose();
        if (r.determinant() < 0) {
            Matrix3 flip = Matrix3::Identity();
            flip(2, 2) = Scalar(-1);
            r = svd.matrixU() * flip * svd.matrixV().transpose();
        }
        return from_matrix(r, Scalar(1e-6));
    }

    static Rotation3T about_axis(const Vector3& axis, Scalar angle) {
        Rotation3T r;
        r.m_ = Eigen::AngleAxis<Scalar>(angle, axis.normalized()).toRotationMatrix();
        return r;
    }

    const Matrix3& matrix() const { return m_; }
    Vector3 operator*(const Vector3& v) const { return m_ * v; }
    Rotation3T operator*(const Rotation3T& o) const {
        Rotation3T r;
        r.m_ = m_ * o.m_;
        return r;
    }
    Rotation3T transpose() const {
        Rotation3T r;
        r.m_ = m_.transpose();
        return r;
    }

private:
    Matrix3 m_;
};

using Rotation3 = Rotation3T<double>;

/// Rigid pose plus uniform scale: p_camera = scale * R * q + t.
/// Scale carries the object's canonical-diagonal length in meters.
template <typename Scalar>
struct SimilarityPoseT {
    using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

    Rotation3T<Scalar> rotation;
    Vector3 translation = Vector3::Zero();
    Scalar scale = Scalar(1);

    SimilarityPoseT() = default;
    SimilarityPoseT(const Rotation3T<Scalar>& r, const Vector3& t, Scalar s)
        : rotation(r), translation(t), scale(s) {
        validate();
    }

    void validate() const {
        if (!(scale > Scalar(0)) || !std::isfinite(scale))
            throw ValidationError("SimilarityPose: scale must be positive and finite");
        if (!translation.allFinite())
            throw ValidationError("SimilarityPose: translation must be finite");
    }

    Vector3 apply(const Vector3& q) const { return scale * (rotation * q) + translation; }
};

using SimilarityPose = SimilarityPoseT<double>;

/// Pinhole intrinsics; no distortion model.
struct CameraIntrinsics {
    double fx = 0, fy = 0;
    double cx = 0, cy = 0;
    int width = 0, height = 0;

    CameraIntrinsics() = default;
    CameraIntrinsics(double fx_, double fy_, double cx_, double cy_, int w, int h)
        : fx(fx_), fy(fy_), cx(cx_), cy(cy_), width(w), height(h) {
        if (fx <= 0 || fy <= 0)
            throw ValidationError("CameraIntrinsics: focal lengths must be positive");
        if (cx < 0 || cx >= width || cy < 0 || cy >= height)
            throw ValidationError("CameraIntrinsics: principal point outside image");
    }
};

/// Depth in meters; 0 encodes missing.
using DepthMap = Image<float>;

/// Unit 3-vectors on valid pixels, exact zero on invalid ones.
using NormalMap = Image<Eigen::Vector3f>;

/// Channels in [0,1].
using RgbMap = Image<Eigen::Vector3f>;

using Mask = Image<uint8_t>;

/// Per-pixel canonical coordinates in [0,1]^3 with a validity mask.
/// Invalid pixels carry the white-background value (1,1,1).
struct NocsMap {
    Image<Eigen::Vector3f> values;
    Mask validity;

    NocsMap() = default;
    NocsMap(int height, int width)
        : values(height, width, Eigen::Vector3f::Ones()), validity(height, width, 0) {}

    int height() const { return values.height(); }
    int width() const { return values.width(); }
};

/// Non-negative integer; 0 is reserved for "unknown category".
using CategoryId = int;

enum class Frame { Camera, Nocs };

struct PointCloud {
    std::vector<Eigen::Vector3d> points;
    Frame frame = Frame::Camera;

    size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
};

}  // namespace nf
