#include "nocsforge/datagen/dataset.hpp"

#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "nocsforge/io/png.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace nf {

namespace {

std::string view_prefix(int view_index) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "%03d", view_index);
    return buf;
}

uint16_t to_u8(float v) {
    return uint16_t(std::lround(std::clamp(v, 0.f, 1.f) * 255.f));
}

png::PngImage encode_rgb(const Image<Eigen::Vector3f>& m) {
    png::PngImage img;
    img.width = m.width();
    img.height = m.height();
    img.channels = 3;
    img.bit_depth = 8;
    img.samples.resize(m.size() * 3);
    for (int v = 0; v < m.height(); ++v)
        for (int u = 0; u < m.width(); ++u)
            for (int c = 0; c < 3; ++c)
                img.samples[img.index(v, u, c)] = to_u8(m(v, u)[c]);
    return img;
}

json pose_to_json(const SimilarityPose& pose, CategoryId category) {
    json j;
    // Eigen stores column-major; emit row-major per the file contract.
    std::vector<double> rot(9);
    const auto& m = pose.rotation.matrix();
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) rot[r * 3 + c] = m(r, c);
    j["rotation"] = rot;
    j["translation"] = {pose.translation.x(), pose.translation.y(), pose.translation.z()};
    j["scale"] = pose.scale;
    j["category"] = category;
    return j;
}

json read_json_file(const fs::path& path) {
    std::ifstream f(path);
    if (!f) throw IoError("dataset: missing file: " + path.string());
    json j;
    try {
        f >> j;
    } catch (const json::exception& e) {
        throw IoError("dataset: corrupt JSON in " + path.string() + ": " + e.what());
    }
    return j;
}

}  // namespace

CategoryId Dataset::category_id(const std::string& name) const {
    for (size_t i = 0; i < meta.categories.size(); ++i)
        if (meta.categories[i] == name) return CategoryId(i + 1);
    return 0;
}

void write_view_files(const std::string& dir, int view_index, const RenderedView& view) {
    const std::string p = dir + "/" + view_prefix(view_index);

    png::write_file(p + "_rgb.png", encode_rgb(view.rgb));

    Image<Eigen::Vector3f> normal_enc(view.normal.height(), view.normal.width());
    for (int v = 0; v < view.normal.height(); ++v)
        for (int u = 0; u < view.normal.width(); ++u)
            normal_enc(v, u) = view.normal(v, u) * 0.5f + Eigen::Vector3f::Constant(0.5f);
    png::write_file(p + "_normal.png", encode_rgb(normal_enc));

    png::write_file(p + "_nocs.png", encode_rgb(view.nocs.values));

    png::PngImage mask_img;
    mask_img.width = view.mask.width();
    mask_img.height = view.mask.height();
    mask_img.channels = 1;
    mask_img.bit_depth = 8;
    mask_img.samples.resize(view.mask.size());
    for (size_t i = 0; i < view.mask.size(); ++i)
        mask_img.samples[i] = view.mask.data()[i] ? 255 : 0;
    png::write_file(p + "_mask.png", mask_img);

    png::PngImage depth_img;
    depth_img.width = view.depth.width();
    depth_img.height = view.depth.height();
    depth_img.channels = 1;
    depth_img.bit_depth = 16;
    depth_img.samples.resize(view.depth.size());
    for (size_t i = 0; i < view.depth.size(); ++i) {
        const double mm = std::clamp(double(view.depth.data()[i]) * 1000.0, 0.0, 65535.0);
        depth_img.samples[i] = uint16_t(std::lround(mm));
    }
    png::write_file(p + "_depth.png", depth_img);

    std::ofstream f(p + "_pose.json");
    if (!f) throw IoError("dataset: cannot write " + p + "_pose.json");
    f << pose_to_json(view.pose, view.category).dump(2) << "\n";
}

RenderedView read_view_files(const std::string& dir, int view_index,
                             const CameraIntrinsics& k) {
    const std::string p = dir + "/" + view_prefix(view_index);
    RenderedView view;
    view.intrinsics = k;

    const auto rgb = png::read_file(p + "_rgb.png");
    const auto normal = png::read_file(p + "_normal.png");
    const auto nocs = png::read_file(p + "_nocs.png");
    const auto mask = png::read_file(p + "_mask.png");
    const auto depth = png::read_file(p + "_depth.png");
    if (rgb.channels != 3 || normal.channels != 3 || nocs.channels != 3 ||
        mask.channels != 1 || depth.channels != 1 || depth.bit_depth != 16)
        throw IoError("dataset: unexpected image format under " + dir);

    const int h = rgb.height, w = rgb.width;
    view.rgb = RgbMap(h, w);
    view.normal = NormalMap(h, w);
    view.nocs = NocsMap(h, w);
    view.mask = Mask(h, w);
    view.depth = DepthMap(h, w);

    for (int v = 0; v < h; ++v) {
        for (int u = 0; u < w; ++u) {
            const bool on = mask.samples[mask.index(v, u)] != 0;
            view.mask(v, u) = on ? 1 : 0;
            for (int c = 0; c < 3; ++c) {
                view.rgb(v, u)[c] = rgb.samples[rgb.index(v, u, c)] / 255.f;
                view.nocs.values(v, u)[c] = nocs.samples[nocs.index(v, u, c)] / 255.f;
            }
            view.depth(v, u) = depth.samples[depth.index(v, u)] / 1000.f;
            if (on) {
                Eigen::Vector3f n;
                for (int c = 0; c < 3; ++c)
                    n[c] = normal.samples[normal.index(v, u, c)] / 255.f * 2.f - 1.f;
                // 8-bit quantization breaks exact unit norm; restore it.
                const float len = n.norm();
                view.normal(v, u) = len > 1e-6f ? (n / len).eval() : Eigen::Vector3f::Zero();
                view.nocs.validity(v, u) = 1;
            } else {
                view.normal(v, u) = Eigen::Vector3f::Zero();
                view.nocs.values(v, u) = Eigen::Vector3f::Ones();
                view.nocs.validity(v, u) = 0;
            }
        }
    }

    const json pj = read_json_file(p + "_pose.json");
    Eigen::Matrix3d rot;
    const auto r = pj.at("rotation").get<std::vector<double>>();
    if (r.size() != 9) throw IoError("dataset: bad rotation in " + p + "_pose.json");
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) rot(i, j) = r[i * 3 + j];
    const auto t = pj.at("translation").get<std::vector<double>>();
    if (t.size() != 3) throw IoError("dataset: bad translation in " + p + "_pose.json");
    view.pose = SimilarityPose(Rotation3::from_matrix(rot, 1e-9),
                               Eigen::Vector3d(t[0], t[1], t[2]), pj.at("scale").get<double>());
    view.category = pj.at("category").get<int>();
    return view;
}

void write_dataset(const Dataset& ds, const std::string& root) {
    fs::create_directories(root);

    json meta;
    meta["format_version"] = ds.meta.format_version;
    meta["categories"] = ds.meta.categories;
    meta["symmetry"] = ds.meta.symmetry;
    meta["image_size"] = ds.meta.image_size;
    meta["intrinsics"] = {{"fx", ds.meta.intrinsics.fx}, {"fy", ds.meta.intrinsics.fy},
                          {"cx", ds.meta.intrinsics.cx}, {"cy", ds.meta.intrinsics.cy},
                          {"width", ds.meta.intrinsics.width},
                          {"height", ds.meta.intrinsics.height}};
    std::ofstream mf(root + "/meta.json");
    if (!mf) throw IoError("dataset: cannot write meta.json under " + root);
    mf << meta.dump(2) << "\n";

    for (const auto& dv : ds.views) {
        const std::string dir = root + "/" + dv.category + "/" + dv.instance;
        fs::create_directories(dir);
        write_view_files(dir, dv.view_index, dv.view);
    }
}

Dataset read_dataset(const std::string& root) {
    Dataset ds;
    const json meta = read_json_file(fs::path(root) / "meta.json");
    ds.meta.format_version = meta.at("format_version").get<int>();
    if (ds.meta.format_version != 1)
        throw IoError("dataset: unsupported format version in " + root);
    ds.meta.categories = meta.at("categories").get<std::vector<std::string>>();
    if (meta.contains("symmetry"))
        ds.meta.symmetry = meta.at("symmetry").get<std::map<std::string, std::string>>();
    ds.meta.image_size = meta.at("image_size").get<int>();
    const auto& ji = meta.at("intrinsics");
    ds.meta.intrinsics =
        CameraIntrinsics(ji.at("fx").get<double>(), ji.at("fy").get<double>(),
                         ji.at("cx").get<double>(), ji.at("cy").get<double>(),
                         ji.at("width").get<int>(), ji.at("height").get<int>());

    for (const auto& cat : ds.meta.categories) {
        const fs::path cat_dir = fs::path(root) / cat;
        if (!fs::exists(cat_dir)) continue;
        std::vector<fs::path> instances;
        for (const auto& e : fs::directory_iterator(cat_dir))
            if (e.is_directory()) instances.push_back(e.path());
        std::sort(instances.begin(), instances.end());
        for (const auto& inst : instances) {
            std::vector<int> indices;
            for (const auto& e : fs::directory_iterator(inst)) {
                const std::string name = e.path().filename().string();
                if (name.size() >= 13 && name.substr(3) == "_pose.json")
                    indices.push_back(std::stoi(name.substr(0, 3)));
            }
            std::sort(indices.begin(), indices.end());
            for (int idx : indices) {
                DatasetView dv;
                dv.category = cat;
                dv.instance = inst.filename().string();
                dv.view_index = idx;
                dv.view = read_view_files(inst.string(), idx, ds.meta.intrinsics);
                ds.views.push_back(std::move(dv));
            }
        }
    }
    return ds;
}

}  // namespace nf
