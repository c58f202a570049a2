#pragma once

#include "esm/data.hpp"
#include "esm/spectral.hpp"

#include <optional>

// ESM indicator functionals, the grid sweep, the artifact proxy and the
// radius-refinement loop that extracts an optimal sampling disk.

namespace esm {

struct IndicatorConfig {
    RefDiskKind kind = RefDiskKind::Dirichlet;
    double alpha = 1e-4;       // spectral cutoff
    SamplingGrid grid{};       // default 100x100 on [-4,4]^2
    double r0 = 0.5;           // initial sampling radius
    double gamma = 1.25;       // radius growth factor
    int p_max = 8;             // max refinement steps
    int n_trunc = 10;          // kernel truncation
    double artifact_level = 0.5; // super-level fraction for the artifact proxy
};

enum class SpectralPath { Circulant, Dense };

/// Regularized Picard indicator for one data column:
///   W = [ sum over |lambda_j| >= alpha of |<u, v_j>|^2 / |lambda_j| ]^{-1}
/// with the conjugated pairing <u, v> = sum_i u_i conj(v_i).
/// Returns nullopt when no eigenvalue clears alpha or the retained sum is 0.
std::optional<double> indicator_single(const Eigen::VectorXcd& u, const Spectrum& s,
                                       double alpha);

/// Sum of indicator_single over the dataset's incident directions. Invalid
/// columns contribute nothing; nullopt iff every column is invalid. The
/// optional out-parameter reports how many columns were skipped.
std::optional<double> indicator_multi(const FarFieldDataset& ds, const Spectrum& s,
                                      double alpha, int* invalid_columns = nullptr);

struct IndicatorGrid {
    SamplingGrid grid{};
    std::vector<double> values;       // W at each node (0 where invalid)
    std::vector<std::uint8_t> valid;
    double radius = 0.0;
    RefDiskKind kind = RefDiskKind::Dirichlet;

    double max_value = 0.0;
    std::size_t argmax = 0;           // node index of the max over valid nodes
    Vec2 argmax_point() const { return grid.node(argmax); }
};

/// Evaluate the multi-direction indicator at every grid node for sampling
/// radius r. One origin spectrum is shared by all nodes on the fast path;
/// the dense path re-decomposes per node and exists as a cross-check.
/// Node evaluations run in parallel (ESM_THREADS caps the thread count)
/// and are bit-reproducible regardless of scheduling.
IndicatorGrid sweep(const FarFieldDataset& ds, const IndicatorConfig& cfg, double r,
                    SpectralPath path = SpectralPath::Circulant);

struct ArtifactReport {
    bool artifact_free = false;
    int components = 0; // 4-connected components of {W >= level * max W}
};

ArtifactReport artifact_check(const IndicatorGrid& g, double level = 0.5);

/// True when the node nearest to p belongs to the super-level set.
bool in_super_level_set(const IndicatorGrid& g, Vec2 p, double level = 0.5);

struct OptimalDisk {
    Vec2 center{};
    double radius = 0.0;
    int p_star = 0;
    bool converged = false;   // false when no radius was artifact-free
};

struct RefineResult {
    OptimalDisk disk;
    std::vector<IndicatorGrid> grids;        // one per attempted radius
    std::vector<ArtifactReport> reports;
    std::vector<std::string> warnings;
};

/// Algorithm: sweep radii R_p = gamma^p * r0 and stop at the first
/// artifact-free reconstruction; fall back to the fewest-components radius
/// when none qualifies within p_max steps. At each radius the cutoff passed
/// to the sweep is cfg.alpha times the Frobenius norm of the reference-disk
/// spectrum, so that the retained subspace is comparable across radii.
RefineResult refine(const FarFieldDataset& ds, const IndicatorConfig& cfg,
                    SpectralPath path = SpectralPath::Circulant);

/// Row-major CSV export with header "x,y,W,valid" and 17 significant digits.
void write_grid_csv(const IndicatorGrid& g, const std::string& path);

} // namespace esm
