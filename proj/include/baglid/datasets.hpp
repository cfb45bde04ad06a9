#pragma once

#include "baglid/geometry.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace baglid {

enum class Dataset {
    M1_Sphere,
    M2_Affine_3to5,
    M3_Nonlinear_4to6,
    M4_Nonlinear,
    M5b_Helix2d,
    M6_Nonlinear,
    M7_Roll,
    M8_Nonlinear,
    M9_Affine,
    M10a_Cubic,
    M10b_Cubic,
    M10c_Cubic,
    M11_Moebius,
    M12_Norm,
    M13a_Scurve,
    Mn1_Nonlinear,
    Mn2_Nonlinear,
    Lollipop,
    Uniform,
};

struct DatasetInfo {
    Dataset id;
    std::string_view name;
    std::size_t dim;
    /// Intrinsic dimension listed in the benchmark table (max over parts for Lollipop).
    std::size_t listed_lid;
    /// Ground truth used for labels, one entry per manifold label.
    std::vector<double> gt_lid;
};

/// The 19 benchmark manifolds in table order.
const std::vector<DatasetInfo>& all_datasets();
const DatasetInfo& dataset_info(Dataset id);
Dataset parse_dataset(std::string_view name);

struct GeneratorSpec {
    Dataset dataset = Dataset::M1_Sphere;
    std::size_t n = 2500;
    std::uint64_t seed = 0;
};

/// Draws n i.i.d. points. Point i consumes its own random stream derived from
/// (seed, i), taking the parameters in the order the mapping lists them.
PointCloud generate(const GeneratorSpec& spec);

struct ValidationReport {
    std::vector<std::string> violations;
    std::vector<std::string> notes;

    bool ok() const noexcept { return violations.empty(); }
};

/// Checks every closed-form constraint of the generator's mapping.
ValidationReport validate(const PointCloud& cloud, const GeneratorSpec& spec);

// Point cloud files. CSV: header x0..x{dim-1},label, 17 significant digits.
// Binary (little-endian): "BLID", u32 version, u64 n, u64 dim, u64 L,
// L x f64 gt_lid, n*dim x f64 coordinates, n x i32 labels.
void write_csv(const PointCloud& cloud, const std::filesystem::path& path);
/// CSV carries no ground truth, so it has to be supplied.
PointCloud read_csv(const std::filesystem::path& path, std::vector<double> gt_lid);
void write_binary(const PointCloud& cloud, const std::filesystem::path& path);
PointCloud read_binary(const std::filesystem::path& path);

} // namespace baglid
