#pragma once

#include <map>
#include <string>
#include <vector>

#include "nocsforge/datagen/render.hpp"

namespace nf {

struct DatasetMeta {
    int format_version = 1;
    std::vector<std::string> categories;  // index+1 = CategoryId
    std::map<std::string, std::string> symmetry;  // category -> none|axial|axial_reflective
    CameraIntrinsics intrinsics;
    int image_size = 0;
};

struct DatasetView {
    std::string category;
    std::string instance;
    int view_index = 0;
    RenderedView view;
};

struct Dataset {
    DatasetMeta meta;
    std::vector<DatasetView> views;

    CategoryId category_id(const std::string& name) const;
};

/// Layout: <root>/meta.json, then
/// <root>/<category>/<instance>/<view:03>_{rgb,normal,nocs,mask}.png,
/// <view:03>_depth.png (16-bit millimeters), <view:03>_pose.json.
/// Normals encode as (n*0.5+0.5)*255, NOCS as value*255.
void write_dataset(const Dataset& ds, const std::string& root);
Dataset read_dataset(const std::string& root);

/// Single-view helpers shared by the writer/reader and the tests.
void write_view_files(const std::string& dir, int view_index, const RenderedView& view);
RenderedView read_view_files(const std::string& dir, int view_index,
                             const CameraIntrinsics& k);

}  // namespace nf
