#pragma once

#include "nocsforge/core/types.hpp"
#include "nocsforge/datagen/icosphere.hpp"
#include "nocsforge/datagen/mesh.hpp"

namespace nf {

/// One synthetic observation with its ground truth.
struct RenderedView {
    RgbMap rgb;
    DepthMap depth;
    NormalMap normal;
    NocsMap nocs;
    Mask mask;
    SimilarityPose pose;  // scale holds the physical diagonal in meters
    CategoryId category = 0;
    CameraIntrinsics intrinsics;
};

/// Default pinhole camera for a square render target. The principal
/// point sits on the pixel-grid center so quarter-turn in-plane
/// rotations map pixels exactly onto pixels.
CameraIntrinsics default_intrinsics(int size);

/// Camera orbit radius that keeps the whole object in frame for
/// default_intrinsics at every icosphere pose.
double default_camera_radius(double physical_diagonal);

/// Z-buffer rasterization with perspective-correct interpolation.
/// Background: rgb (1,1,1), depth 0, normal (0,0,0), nocs (1,1,1)/invalid,
/// mask false. NOCS values are quantized to the 8-bit grid at render time
/// so in-memory maps equal their PNG round-trip.
RenderedView render(const TriangleMesh& mesh, const CameraPose& cam,
                    const CameraIntrinsics& k);

}  // namespace nf
