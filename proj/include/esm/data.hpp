#pragma once

#include "esm/forward.hpp"
#include "esm/geometry.hpp"

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

// Far-field dataset container, the uniform complex noise model and
// (de)serialization as versioned JSON (".ffd.json").

namespace esm {

struct FarFieldDataset {
    double kappa = 0.0;
    std::vector<double> angles;     // N observation angles
    DirectionSet directions;        // N_inc incident directions
    Eigen::MatrixXcd values;        // N x N_inc, column l = u_inf(., d_l)
    double delta = 0.0;             // relative noise level applied (0 = clean)
    std::optional<std::uint64_t> seed;

    std::size_t n_obs() const { return angles.size(); }
    std::size_t n_inc() const { return directions.size(); }
};

/// Build a dataset from per-direction far-field columns.
FarFieldDataset make_dataset(double kappa, const std::vector<double>& angles,
                             const DirectionSet& directions,
                             const std::vector<FarFieldVector>& columns);

/// Add uniform complex noise, column by column, scaled so that each column's
/// relative 2-norm perturbation equals delta exactly. Per-column RNG streams
/// are derived from (seed, column), so column noise does not depend on the
/// other columns. Requires a clean dataset and delta in (0, 1).
FarFieldDataset add_noise(const FarFieldDataset& ds, double delta, std::uint64_t seed);

void save_dataset(const FarFieldDataset& ds, const std::string& path);
FarFieldDataset load_dataset(const std::string& path);

} // namespace esm
