#include "baglid/datasets.hpp"

#include "baglid/errors.hpp"
#include "baglid/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <sstream>

#include <fmt/format.h>

namespace baglid {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * std::numbers::pi;

std::vector<DatasetInfo> make_table() {
    using D = Dataset;
    return {
        {D::M1_Sphere, "M1_Sphere", 11, 10, {10}},
        {D::M2_Affine_3to5, "M2_Affine_3to5", 5, 3, {3}},
        {D::M3_Nonlinear_4to6, "M3_Nonlinear_4to6", 6, 4, {4}},
        {D::M4_Nonlinear, "M4_Nonlinear", 8, 4, {4}},
        {D::M5b_Helix2d, "M5b_Helix2d", 3, 2, {2}},
        {D::M6_Nonlinear, "M6_Nonlinear", 36, 6, {6}},
        {D::M7_Roll, "M7_Roll", 3, 2, {2}},
        {D::M8_Nonlinear, "M8_Nonlinear", 72, 12, {12}},
        {D::M9_Affine, "M9_Affine", 20, 20, {20}},
        // Listed as d=20 in dim 11; the facet construction in dim 11 is a
        // 10-dimensional surface, and the labels follow the construction.
        {D::M10a_Cubic, "M10a_Cubic", 11, 20, {10}},
        {D::M10b_Cubic, "M10b_Cubic", 18, 17, {17}},
        {D::M10c_Cubic, "M10c_Cubic", 25, 24, {24}},
        {D::M11_Moebius, "M11_Moebius", 3, 2, {2}},
        {D::M12_Norm, "M12_Norm", 20, 20, {20}},
        {D::M13a_Scurve, "M13a_Scurve", 3, 2, {2}},
        {D::Mn1_Nonlinear, "Mn1_Nonlinear", 72, 18, {18}},
        {D::Mn2_Nonlinear, "Mn2_Nonlinear", 96, 24, {24}},
        // label 1: stick, label 2: candy
        {D::Lollipop, "Lollipop", 2, 2, {1, 2}},
        {D::Uniform, "Uniform", 100, 30, {30}},
    };
}

std::size_t construction_lid(const DatasetInfo& info) {
    return static_cast<std::size_t>(info.gt_lid.back());
}

// Each writer fills one point (`out`, length dim) from its private stream and
// returns the manifold label.
using Writer = int (*)(Engine&, std::span<double>, std::size_t d);

int sphere(Engine& eng, std::span<double> out, std::size_t d) {
    double norm2 = 0.0;
    for (std::size_t i = 0; i <= d; ++i) {
        out[i] = standard_normal(eng);
        norm2 += out[i] * out[i];
    }
    const double r = std::sqrt(norm2);
    for (std::size_t i = 0; i <= d; ++i) out[i] /= r;
    return 1;
}

int affine_3to5(Engine& eng, std::span<double> out, std::size_t) {
    const double x1 = uniform(eng, 0.0, 4.0);
    const double x2 = uniform(eng, 0.0, 4.0);
    const double x3 = uniform(eng, 0.0, 4.0);
    out[0] = 1.2 * x1 - 0.5 * x2 + 3.0;
    out[1] = 0.5 * x1 + 0.9 * x2 - 1.0;
    out[2] = -0.5 * x1 - 0.2 * x2 + x3;
    out[3] = 0.4 * x1 - 0.9 * x2 - 0.1 * x3;
    out[4] = 1.1 * x1 - 0.3 * x2 + 8.0;
    return 1;
}

int nonlinear_4to6(Engine& eng, std::span<double> out, std::size_t) {
    const double x0 = uniform01(eng);
    const double x1 = uniform01(eng);
    const double x2 = uniform01(eng);
    const double x3 = uniform01(eng);
    out[0] = x1 * x1 * std::cos(two_pi * x0);
    out[1] = x2 * x2 * std::sin(two_pi * x0);
    out[2] = x1 + x2 + (x1 - x3) * (x1 - x3);
    out[3] = x1 - 2.0 * x2 + (x0 - x3) * (x0 - x3);
    out[4] = -x1 - 2.0 * x2 + (x2 - x3) * (x2 - x3);
    out[5] = x0 * x0 - x1 * x1 + x2 * x2 - x3 * x3;
    return 1;
}

// Cyclic chain of unit disks repeated dim / (2d) times.
int disk_chain(Engine& eng, std::span<double> out, std::size_t d) {
    std::vector<double> x(d);
    for (auto& v : x) v = uniform01(eng);
    const std::size_t copies = out.size() / (2 * d);
    for (std::size_t k = 0; k < d; ++k) {
        const double radius = x[(k + 1) % d];
        const double angle = two_pi * x[k];
        const double c = radius * std::cos(angle);
        const double s = radius * std::sin(angle);
        for (std::size_t l = 0; l < copies; ++l) {
            out[2 * k + 2 * d * l] = c;
            out[2 * k + 1 + 2 * d * l] = s;
        }
    }
    return 1;
}

int helix(Engine& eng, std::span<double> out, std::size_t) {
    const double r = uniform(eng, 0.0, 10.0 * pi);
    const double p = uniform(eng, 0.0, 10.0 * pi);
    out[0] = r * std::cos(p);
    out[1] = r * std::sin(p);
    out[2] = 0.5 * p;
    return 1;
}

int roll(Engine& eng, std::span<double> out, std::size_t) {
    const double t = uniform(eng, 1.5 * pi, 4.5 * pi);
    const double p = uniform(eng, 0.0, 21.0);
    out[0] = t * std::cos(t);
    out[1] = p;
    out[2] = t * std::sin(t);
    return 1;
}

int affine_cube(Engine& eng, std::span<double> out, std::size_t d) {
    for (std::size_t i = 0; i < d; ++i) out[i] = uniform(eng, -2.5, 2.5);
    return 1;
}

int cube_surface(Engine& eng, std::span<double> out, std::size_t d) {
    const auto facet = static_cast<std::size_t>(uniform_index(eng, 2 * (d + 1)));
    const std::size_t axis = facet / 2;
    const double side = static_cast<double>(facet % 2);
    for (std::size_t c = 0; c <= d; ++c) out[c] = c == axis ? side : uniform01(eng);
    return 1;
}

int moebius(Engine& eng, std::span<double> out, std::size_t) {
    const double phi = uniform(eng, 0.0, two_pi);
    const double r = uniform(eng, -1.0, 1.0);
    const double radial = 1.0 + 0.5 * r * std::cos(5.0 * phi);
    out[0] = radial * std::cos(phi);
    out[1] = radial * std::sin(phi);
    out[2] = 0.5 * r * std::sin(5.0 * phi);
    return 1;
}

int normal_cube(Engine& eng, std::span<double> out, std::size_t d) {
    for (std::size_t i = 0; i < d; ++i) out[i] = standard_normal(eng);
    return 1;
}

int scurve(Engine& eng, std::span<double> out, std::size_t) {
    const double t = uniform(eng, -1.5 * pi, 1.5 * pi);
    const double p = uniform(eng, 0.0, 2.0);
    const double sign = t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0);
    out[0] = std::sin(t);
    out[1] = p;
    out[2] = sign * (std::cos(t) - 1.0);
    return 1;
}

int curved_hypersurface(Engine& eng, std::span<double> out, std::size_t d) {
    std::vector<double> x(d);
    for (auto& v : x) v = uniform01(eng);
    for (std::size_t i = 0; i < d; ++i) {
        const std::size_t j = d - 1 - i;
        const double a = std::tan(x[i] * std::cos(x[j]));
        const double b = std::atan(x[j] * std::sin(x[i]));
        out[i] = a;
        out[d + i] = b;
        out[2 * d + i] = a;
        out[3 * d + i] = b;
    }
    return 1;
}

int lollipop(Engine& eng, std::span<double> out, std::size_t) {
    if (uniform01(eng) < 0.05) {
        const double t = uniform(eng, 0.0, 2.0 - 1.0 / std::numbers::sqrt2);
        out[0] = t;
        out[1] = t;
        return 1;
    }
    const double r = uniform01(eng);
    const double phi = uniform(eng, 0.0, two_pi);
    out[0] = 2.0 + std::sqrt(r) * std::sin(phi);
    out[1] = 2.0 + std::sqrt(r) * std::cos(phi);
    return 2;
}

int uniform_copies(Engine& eng, std::span<double> out, std::size_t d) {
    for (std::size_t i = 0; i + 1 < d; ++i) out[i] = uniform01(eng);
    const double t = uniform01(eng);
    for (std::size_t i = d - 1; i < out.size(); ++i) out[i] = t;
    return 1;
}

Writer writer_for(Dataset id) {
    switch (id) {
    case Dataset::M1_Sphere: return sphere;
    case Dataset::M2_Affine_3to5: return affine_3to5;
    case Dataset::M3_Nonlinear_4to6: return nonlinear_4to6;
    case Dataset::M4_Nonlinear:
    case Dataset::M6_Nonlinear:
    case Dataset::M8_Nonlinear: return disk_chain;
    case Dataset::M5b_Helix2d: return helix;
    case Dataset::M7_Roll: return roll;
    case Dataset::M9_Affine: return affine_cube;
    case Dataset::M10a_Cubic:
    case Dataset::M10b_Cubic:
    case Dataset::M10c_Cubic: return cube_surface;
    case Dataset::M11_Moebius: return moebius;
    case Dataset::M12_Norm: return normal_cube;
    case Dataset::M13a_Scurve: return scurve;
    case Dataset::Mn1_Nonlinear:
    case Dataset::Mn2_Nonlinear: return curved_hypersurface;
    case Dataset::Lollipop: return lollipop;
    case Dataset::Uniform: return uniform_copies;
    }
    throw ConfigError("unknown dataset");
}

} // namespace

const std::vector<DatasetInfo>& all_datasets() {
    static const std::vector<DatasetInfo> table = make_table();
    return table;
}

const DatasetInfo& dataset_info(Dataset id) { return all_datasets()[static_cast<std::size_t>(id)]; }

Dataset parse_dataset(std::string_view name) {
    for (const auto& info : all_datasets())
        if (info.name == name) return info.id;
    throw ConfigError(fmt::format("unknown dataset '{}'", name));
}

PointCloud generate(const GeneratorSpec& spec) {
    if (spec.n < 1) throw ConfigError("a dataset needs at least one point");
    const auto& info = dataset_info(spec.dataset);
    const Writer write = writer_for(spec.dataset);
    const std::size_t d = construction_lid(info);
    std::vector<double> coords(spec.n * info.dim, 0.0);
    std::vector<int> labels(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
        auto eng = make_engine(spec.seed, i);
        labels[i] = write(eng, std::span<double>(coords.data() + i * info.dim, info.dim), d);
    }
    return PointCloud(info.dim, std::move(coords), std::move(labels), info.gt_lid);
}

// ---------------------------------------------------------------------------
// validation

namespace {

constexpr double tol = 1e-9;

class Checker {
public:
    explicit Checker(ValidationReport& report) : report_(report) {}

    void require(bool ok, std::size_t point, std::string_view what) {
        if (!ok) report_.violations.push_back(fmt::format("point {}: {}", point, what));
    }
    void within(double v, double lo, double hi, std::size_t point, std::string_view what) {
        require(v >= lo - tol && v <= hi + tol, point, fmt::format("{} = {} outside [{}, {}]", what, v, lo, hi));
    }
    void zeros(std::span<const double> x, std::size_t from, std::size_t point) {
        for (std::size_t c = from; c < x.size(); ++c)
            require(x[c] == 0.0, point, fmt::format("padding coordinate {} = {} is not zero", c, x[c]));
    }

private:
    ValidationReport& report_;
};

// Signed angular difference wrapped to (-pi, pi].
double angle_gap(double a, double b) { return std::remainder(a - b, two_pi); }

void check_point(const DatasetInfo& info, std::span<const double> x, int label, std::size_t i, Checker& c) {
    const std::size_t d = construction_lid(info);
    switch (info.id) {
    case Dataset::M1_Sphere: {
        double norm2 = 0.0;
        for (std::size_t k = 0; k <= d; ++k) norm2 += x[k] * x[k];
        c.require(std::abs(std::sqrt(norm2) - 1.0) <= tol, i, fmt::format("sphere norm {} != 1", std::sqrt(norm2)));
        c.zeros(x, d + 1, i);
        break;
    }
    case Dataset::M2_Affine_3to5: {
        // Invert the first two rows for (x1, x2), then the third for x3.
        const double det = 1.2 * 0.9 + 0.5 * 0.5;
        const double a = x[0] - 3.0;
        const double b = x[1] + 1.0;
        const double x1 = (0.9 * a + 0.5 * b) / det;
        const double x2 = (1.2 * b - 0.5 * a) / det;
        const double x3 = x[2] + 0.5 * x1 + 0.2 * x2;
        c.within(x1, 0.0, 4.0, i, "x1");
        c.within(x2, 0.0, 4.0, i, "x2");
        c.within(x3, 0.0, 4.0, i, "x3");
        c.require(std::abs(x[3] - (0.4 * x1 - 0.9 * x2 - 0.1 * x3)) <= tol, i, "affine row 4 mismatch");
        c.require(std::abs(x[4] - (1.1 * x1 - 0.3 * x2 + 8.0)) <= tol, i, "affine row 5 mismatch");
        break;
    }
    case Dataset::M3_Nonlinear_4to6:
        c.within(x[0], -1.0, 1.0, i, "coordinate 0");
        c.within(x[1], -1.0, 1.0, i, "coordinate 1");
        c.within(x[2], 0.0, 3.0, i, "coordinate 2");
        c.within(x[3], -2.0, 2.0, i, "coordinate 3");
        c.within(x[4], -3.0, 1.0, i, "coordinate 4");
        c.within(x[5], -2.0, 2.0, i, "coordinate 5");
        break;
    case Dataset::M4_Nonlinear:
    case Dataset::M6_Nonlinear:
    case Dataset::M8_Nonlinear: {
        const std::size_t block = 2 * d;
        for (std::size_t c0 = block; c0 < x.size(); ++c0)
            c.require(x[c0] == x[c0 % block], i, fmt::format("coordinate {} breaks the Kronecker repetition", c0));
        for (std::size_t k = 0; k < d; ++k) {
            const double radius = std::hypot(x[2 * k], x[2 * k + 1]);
            c.within(radius, 0.0, 1.0, i, fmt::format("disk {} radius", k));
            // The angle of disk k+1 is 2*pi times the radius of disk k.
            const std::size_t next = (k + 1) % d;
            const double next_radius = std::hypot(x[2 * next], x[2 * next + 1]);
            if (next_radius > 1e-6) {
                const double angle = std::atan2(x[2 * next + 1], x[2 * next]);
                c.require(std::abs(angle_gap(angle, two_pi * radius)) <= 1e-6, i,
                          fmt::format("disk {} angle does not follow disk {} radius", next, k));
            }
        }
        break;
    }
    case Dataset::M5b_Helix2d: {
        const double p = 2.0 * x[2];
        c.within(p, 0.0, 10.0 * pi, i, "helix parameter p");
        const double r = std::hypot(x[0], x[1]);
        c.within(r, 0.0, 10.0 * pi, i, "helix radius");
        if (r > 1e-6)
            c.require(std::abs(angle_gap(std::atan2(x[1], x[0]), p)) <= 1e-6, i, "helix angle != 2 * x3");
        c.zeros(x, 3, i);
        break;
    }
    case Dataset::M7_Roll: {
        const double t = std::hypot(x[0], x[2]);
        c.within(t, 1.5 * pi, 4.5 * pi, i, "roll parameter t");
        c.within(x[1], 0.0, 21.0, i, "roll width p");
        c.require(std::abs(angle_gap(std::atan2(x[2], x[0]), t)) <= 1e-6, i, "roll angle != t");
        c.zeros(x, 3, i);
        break;
    }
    case Dataset::M9_Affine:
        for (std::size_t k = 0; k < d; ++k) c.within(x[k], -2.5, 2.5, i, fmt::format("coordinate {}", k));
        c.zeros(x, d, i);
        break;
    case Dataset::M10a_Cubic:
    case Dataset::M10b_Cubic:
    case Dataset::M10c_Cubic: {
        std::size_t on_facet = 0;
        for (std::size_t k = 0; k <= d; ++k) {
            c.within(x[k], 0.0, 1.0, i, fmt::format("coordinate {}", k));
            if (x[k] == 0.0 || x[k] == 1.0) ++on_facet;
        }
        c.require(on_facet == 1, i, fmt::format("{} coordinates sit on a facet, expected exactly 1", on_facet));
        c.zeros(x, d + 1, i);
        break;
    }
    case Dataset::M11_Moebius: {
        const double phi = std::atan2(x[1], x[0]);
        const double radial = std::hypot(x[0], x[1]) - 1.0;
        // (radial, z) = (r/2) (cos 5phi, sin 5phi) with |r| <= 1.
        c.require(std::abs(radial * std::sin(5.0 * phi) - x[2] * std::cos(5.0 * phi)) <= tol, i,
                  "strip offset not aligned with the twist angle");
        c.within(std::hypot(radial, x[2]), 0.0, 0.5, i, "strip half-width");
        break;
    }
    case Dataset::M12_Norm:
        for (std::size_t k = 0; k < d; ++k)
            c.require(std::isfinite(x[k]), i, fmt::format("coordinate {} not finite", k));
        c.zeros(x, d, i);
        break;
    case Dataset::M13a_Scurve: {
        const double circle = x[0] * x[0] + (1.0 - std::abs(x[2])) * (1.0 - std::abs(x[2]));
        c.require(std::abs(circle - 1.0) <= tol, i, "S-curve profile off the unit circle");
        c.within(x[1], 0.0, 2.0, i, "S-curve width p");
        c.within(x[2], -2.0, 2.0, i, "S-curve height");
        c.zeros(x, 3, i);
        break;
    }
    case Dataset::Mn1_Nonlinear:
    case Dataset::Mn2_Nonlinear:
        for (std::size_t k = 0; k < 2 * d; ++k)
            c.require(x[2 * d + k] == x[k], i, fmt::format("coordinate {} breaks the Kronecker repetition", 2 * d + k));
        for (std::size_t k = 0; k < d; ++k) {
            c.within(x[k], 0.0, std::tan(1.0), i, fmt::format("tan coordinate {}", k));
            c.within(x[d + k], 0.0, std::atan(std::sin(1.0)), i, fmt::format("arctan coordinate {}", d + k));
        }
        break;
    case Dataset::Lollipop:
        if (label == 1) {
            c.require(x[0] == x[1], i, "stick point off the diagonal");
            c.within(x[0], 0.0, 2.0 - 1.0 / std::numbers::sqrt2, i, "stick parameter");
        } else {
            const double r2 = (x[0] - 2.0) * (x[0] - 2.0) + (x[1] - 2.0) * (x[1] - 2.0);
            c.require(r2 <= 1.0 + tol, i, fmt::format("candy point at squared radius {} > 1", r2));
        }
        break;
    case Dataset::Uniform:
        for (std::size_t k = 0; k + 1 < d; ++k) c.within(x[k], 0.0, 1.0, i, fmt::format("coordinate {}", k));
        c.within(x[d - 1], 0.0, 1.0, i, "shared coordinate");
        for (std::size_t k = d; k < x.size(); ++k)
            c.require(x[k] == x[d - 1], i, fmt::format("coordinate {} is not a copy of the shared coordinate", k));
        break;
    }
}

} // namespace

ValidationReport validate(const PointCloud& cloud, const GeneratorSpec& spec) {
    ValidationReport report;
    const auto& info = dataset_info(spec.dataset);
    if (cloud.dim() != info.dim) {
        report.violations.push_back(fmt::format("ambient dimension {} != {}", cloud.dim(), info.dim));
        return report;
    }
    if (cloud.size() != spec.n)
        report.violations.push_back(fmt::format("point count {} != {}", cloud.size(), spec.n));
    if (std::vector<double>(cloud.gt_lid().begin(), cloud.gt_lid().end()) != info.gt_lid)
        report.violations.push_back("ground-truth LID labels do not match the dataset table");
    if (info.id == Dataset::M10a_Cubic)
        report.notes.push_back(fmt::format("{} is listed with LID {} in dim {}, but its facet construction is "
                                           "{}-dimensional; ground truth uses {}",
                                           info.name, info.listed_lid, info.dim, construction_lid(info),
                                           construction_lid(info)));

    Checker checker(report);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const int label = cloud.label(i);
        if (label < 1 || static_cast<std::size_t>(label) > info.gt_lid.size()) {
            report.violations.push_back(fmt::format("point {}: label {} invalid", i, label));
            continue;
        }
        check_point(info, cloud.point(i), label, i, checker);
    }

    if (info.id == Dataset::Lollipop && cloud.size() >= 1000) {
        const auto sizes = cloud.manifold_sizes();
        const double stick = static_cast<double>(sizes[0]) / static_cast<double>(cloud.size());
        if (std::abs(stick - 0.05) > 0.01)
            report.violations.push_back(fmt::format("stick fraction {} outside 0.05 +/- 0.01", stick));
    }
    return report;
}

// ---------------------------------------------------------------------------
// files

void write_csv(const PointCloud& cloud, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
    for (std::size_t c = 0; c < cloud.dim(); ++c) out << 'x' << c << ',';
    out << "label\n";
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        for (double v : cloud.point(i)) out << fmt::format("{:.17g},", v);
        out << cloud.label(i) << '\n';
    }
    if (!out) throw IoError(fmt::format("failed writing '{}'", path.string()));
}

PointCloud read_csv(const std::filesystem::path& path, std::vector<double> gt_lid) {
    std::ifstream in(path);
    if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty CSV file");
    const auto columns = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
    if (columns < 2 || line.substr(line.rfind(',') + 1) != "label")
        throw IoError("CSV header must be x0,...,x{dim-1},label");
    const std::size_t dim = columns - 1;
    std::vector<double> coords;
    std::vector<int> labels;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string cell;
        std::size_t col = 0;
        while (std::getline(row, cell, ',')) {
            try {
                if (col < dim)
                    coords.push_back(std::stod(cell));
                else
                    labels.push_back(std::stoi(cell));
            } catch (const std::exception&) {
                throw IoError(fmt::format("malformed CSV cell '{}'", cell));
            }
            ++col;
        }
        if (col != columns) throw IoError(fmt::format("CSV row has {} cells, expected {}", col, columns));
    }
    return PointCloud(dim, std::move(coords), std::move(labels), std::move(gt_lid));
}

namespace {

constexpr char magic[4] = {'B', 'L', 'I', 'D'};
constexpr std::uint32_t format_version = 1;

template <class T>
void put(std::ofstream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::ifstream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw IoError("truncated binary point cloud");
    return v;
}

} // namespace

void write_binary(const PointCloud& cloud, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
    out.write(magic, 4);
    put(out, format_version);
    put(out, static_cast<std::uint64_t>(cloud.size()));
    put(out, static_cast<std::uint64_t>(cloud.dim()));
    put(out, static_cast<std::uint64_t>(cloud.manifold_count()));
    for (double g : cloud.gt_lid()) put(out, g);
    for (double v : cloud.coords()) put(out, v);
    for (int l : cloud.labels()) put(out, static_cast<std::int32_t>(l));
    if (!out) throw IoError(fmt::format("failed writing '{}'", path.string()));
}

PointCloud read_binary(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
    char tag[4];
    in.read(tag, 4);
    if (!in || std::memcmp(tag, magic, 4) != 0) throw IoError("not a binary point cloud file");
    if (get<std::uint32_t>(in) != format_version) throw IoError("unsupported binary point cloud version");
    const auto n = get<std::uint64_t>(in);
    const auto dim = get<std::uint64_t>(in);
    const auto manifolds = get<std::uint64_t>(in);
    std::vector<double> gt(manifolds);
    for (auto& g : gt) g = get<double>(in);
    std::vector<double> coords(n * dim);
    for (auto& v : coords) v = get<double>(in);
    std::vector<int> labels(n);
    for (auto& l : labels) l = get<std::int32_t>(in);
    return PointCloud(dim, std::move(coords), std::move(labels), std::move(gt));
}

} // namespace baglid
