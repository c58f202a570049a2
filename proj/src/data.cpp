#include "esm/data.hpp"

#include "esm/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <random>

namespace esm {

using nlohmann::json;

namespace {

constexpr int kFormatVersion = 1;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Uniform double on [-1, 1] from the raw 64-bit stream; avoids
// std::uniform_real_distribution so streams are identical across platforms.
double uniform_pm1(std::mt19937_64& rng) {
    const double u01 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return 2.0 * u01 - 1.0;
}

} // namespace

FarFieldDataset make_dataset(double kappa, const std::vector<double>& angles,
                             const DirectionSet& directions,
                             const std::vector<FarFieldVector>& columns) {
    if (columns.size() != directions.size())
        throw ConfigError("make_dataset: column count does not match direction count");
    FarFieldDataset ds;
    ds.kappa = kappa;
    ds.angles = angles;
    ds.directions = directions;
    ds.values.resize(static_cast<Eigen::Index>(angles.size()),
                     static_cast<Eigen::Index>(columns.size()));
    for (std::size_t l = 0; l < columns.size(); ++l) {
        if (columns[l].values.size() != static_cast<Eigen::Index>(angles.size()))
            throw ConfigError("make_dataset: column length mismatch");
        ds.values.col(static_cast<Eigen::Index>(l)) = columns[l].values;
    }
    return ds;
}

FarFieldDataset add_noise(const FarFieldDataset& ds, double delta, std::uint64_t seed) {
    if (ds.delta != 0.0)
        throw ConfigError("add_noise: dataset already carries noise");
    if (!(delta > 0.0 && delta < 1.0))
        throw ConfigError("add_noise: delta must lie in (0, 1)");

    FarFieldDataset noisy = ds;
    noisy.delta = delta;
    noisy.seed = seed;

    const Eigen::Index n = ds.values.rows();
    for (Eigen::Index l = 0; l < ds.values.cols(); ++l) {
        const double col_norm = ds.values.col(l).norm();
        if (col_norm == 0.0)
            throw NumericError("add_noise: column " + std::to_string(l) +
                               " is identically zero, noise scale undefined");
        std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(l))));
        Eigen::VectorXcd eta(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double re = uniform_pm1(rng);
            const double im = uniform_pm1(rng);
            eta(i) = Complex(re, im);
        }
        noisy.values.col(l) += (delta * col_norm / eta.norm()) * eta;
    }
    return noisy;
}

void save_dataset(const FarFieldDataset& ds, const std::string& path) {
    json j;
    j["format_version"] = kFormatVersion;
    j["kappa"] = ds.kappa;
    j["N"] = ds.angles.size();
    j["angles"] = ds.angles;
    j["directions"] = ds.directions.angles;
    j["delta"] = ds.delta;
    if (ds.seed)
        j["seed"] = *ds.seed;
    else
        j["seed"] = nullptr;

    json rows = json::array();
    for (Eigen::Index i = 0; i < ds.values.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index l = 0; l < ds.values.cols(); ++l)
            row.push_back({ds.values(i, l).real(), ds.values(i, l).imag()});
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);

    std::ofstream out(path);
    if (!out) throw ConfigError("save_dataset: cannot open \"" + path + "\" for writing");
    out << j.dump(1) << '\n';
}

FarFieldDataset load_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("load_dataset: cannot open \"" + path + "\"");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("load_dataset: " + path + ": " + e.what());
    }

    try {
        const int version = j.at("format_version").get<int>();
        if (version != kFormatVersion)
            throw ConfigError("load_dataset: " + path + ": unsupported format_version " +
                              std::to_string(version) + " (expected " +
                              std::to_string(kFormatVersion) + ")");

        FarFieldDataset ds;
        ds.kappa = j.at("kappa").get<double>();
        ds.angles = j.at("angles").get<std::vector<double>>();
        ds.directions.angles = j.at("directions").get<std::vector<double>>();
        ds.delta = j.at("delta").get<double>();
        if (!j.at("seed").is_null()) ds.seed = j.at("seed").get<std::uint64_t>();

        const auto n = j.at("N").get<std::size_t>();
        if (n != ds.angles.size())
            throw ConfigError("load_dataset: " + path + ": header N = " + std::to_string(n) +
                              " but " + std::to_string(ds.angles.size()) + " angles present");

        const json& rows = j.at("rows");
        if (rows.size() != n)
            throw ConfigError("load_dataset: " + path + ": header N = " + std::to_string(n) +
                              " but " + std::to_string(rows.size()) + " data rows present");

        const std::size_t n_inc = ds.directions.size();
        ds.values.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n_inc));
        for (std::size_t i = 0; i < n; ++i) {
            const json& row = rows[i];
            if (row.size() != n_inc)
                throw ConfigError("load_dataset: " + path + ": row " + std::to_string(i) +
                                  " has " + std::to_string(row.size()) + " entries, expected " +
                                  std::to_string(n_inc));
            for (std::size_t l = 0; l < n_inc; ++l)
                ds.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(l)) =
                    Complex(row[l].at(0).get<double>(), row[l].at(1).get<double>());
        }
        return ds;
    } catch (const json::exception& e) {
        throw ConfigError("load_dataset: " + path + ": " + e.what());
    }
}

} // namespace esm
