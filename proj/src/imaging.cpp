#include "esm/imaging.hpp"

#include "esm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <limits>
#include <thread>

namespace esm {

namespace {

std::size_t thread_budget() {
    if (const char* env = std::getenv("ESM_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Static block partition; each index is computed exactly once, so results
// do not depend on the thread count.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    const std::size_t workers = std::min(thread_budget(), std::max<std::size_t>(count, 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace

std::optional<double> indicator_single(const Eigen::VectorXcd& u, const Spectrum& s,
                                       double alpha) {
    if (u.size() != s.eigenvectors.rows())
        throw ConfigError("indicator_single: data length does not match spectrum size");
    double picard = 0.0;
    bool retained = false;
    for (Eigen::Index j = 0; j < s.eigenvalues.size(); ++j) {
        const double mod = std::abs(s.eigenvalues(j));
        if (mod < alpha) continue;
        retained = true;
        Complex proj = 0.0;
        for (Eigen::Index i = 0; i < u.size(); ++i)
            proj += u(i) * std::conj(s.eigenvectors(i, j));
        picard += std::norm(proj) / mod;
    }
    if (!retained || picard == 0.0) return std::nullopt;
    return 1.0 / picard;
}

std::optional<double> indicator_multi(const FarFieldDataset& ds, const Spectrum& s,
                                      double alpha, int* invalid_columns) {
    double total = 0.0;
    bool any = false;
    int skipped = 0;
    for (Eigen::Index l = 0; l < ds.values.cols(); ++l) {
        const auto w = indicator_single(ds.values.col(l), s, alpha);
        if (w) {
            total += *w;
            any = true;
        } else {
            ++skipped;
        }
    }
    if (invalid_columns) *invalid_columns = skipped;
    if (!any) return std::nullopt;
    return total;
}

IndicatorGrid sweep(const FarFieldDataset& ds, const IndicatorConfig& cfg, double r,
                    SpectralPath path) {
    const RefDiskSpec spec{cfg.kind, r, ds.kappa, cfg.n_trunc};
    const std::size_t n = ds.n_obs();

    IndicatorGrid out;
    out.grid = cfg.grid;
    out.radius = r;
    out.kind = cfg.kind;
    out.values.assign(cfg.grid.size(), 0.0);
    out.valid.assign(cfg.grid.size(), 0);

    const Spectrum origin =
        path == SpectralPath::Circulant ? eig_circulant(spec, n) : Spectrum{};

    parallel_for(cfg.grid.size(), [&](std::size_t k) {
        const Vec2 z = cfg.grid.node(k);
        const Spectrum s = path == SpectralPath::Circulant
                               ? translate_spectrum(origin, z, ds.kappa, ds.angles)
                               : eig_dense(assemble(spec, z, n));
        if (const auto w = indicator_multi(ds, s, cfg.alpha)) {
            out.values[k] = *w;
            out.valid[k] = 1;
        }
    });

    bool any_valid = false;
    for (std::size_t k = 0; k < out.values.size(); ++k) {
        if (!out.valid[k]) continue;
        if (!any_valid || out.values[k] > out.max_value) {
            out.max_value = out.values[k];
            out.argmax = k;
        }
        any_valid = true;
    }
    if (!any_valid)
        throw DegenerateError("sweep: every sampling node is invalid at R = " +
                              std::to_string(r));
    return out;
}

ArtifactReport artifact_check(const IndicatorGrid& g, double level) {
    const double threshold = level * g.max_value;
    const std::size_t nx = g.grid.nx, ny = g.grid.ny;
    std::vector<std::uint8_t> in_set(g.values.size(), 0);
    for (std::size_t k = 0; k < g.values.size(); ++k)
        in_set[k] = g.valid[k] && g.values[k] >= threshold;

    std::vector<std::uint8_t> seen(g.values.size(), 0);
    int components = 0;
    for (std::size_t start = 0; start < in_set.size(); ++start) {
        if (!in_set[start] || seen[start]) continue;
        ++components;
        std::deque<std::size_t> queue{start};
        seen[start] = 1;
        while (!queue.empty()) {
            const std::size_t k = queue.front();
            queue.pop_front();
            const std::size_t ix = k % nx, iy = k / nx;
            const std::size_t nbrs[4] = {
                ix > 0 ? k - 1 : k, ix + 1 < nx ? k + 1 : k,
                iy > 0 ? k - nx : k, iy + 1 < ny ? k + nx : k};
            for (const std::size_t nb : nbrs) {
                if (nb == k || !in_set[nb] || seen[nb]) continue;
                seen[nb] = 1;
                queue.push_back(nb);
            }
        }
    }
    return {components == 1, components};
}

bool in_super_level_set(const IndicatorGrid& g, Vec2 p, double level) {
    const double threshold = level * g.max_value;
    std::size_t best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < g.values.size(); ++k) {
        const double d = (g.grid.node(k) - p).norm();
        if (d < best_dist) {
            best_dist = d;
            best = k;
        }
    }
    return g.valid[best] && g.values[best] >= threshold;
}

RefineResult refine(const FarFieldDataset& ds, const IndicatorConfig& cfg,
                    SpectralPath path) {
    RefineResult result;
    std::optional<int> chosen;
    std::optional<int> fallback; // fewest components seen so far
    int fallback_components = 0;

    for (int p = 0; p <= cfg.p_max; ++p) {
        const double r = std::pow(cfg.gamma, p) * cfg.r0;
        // The reference-disk operator norm varies by orders of magnitude
        // across radii, so the cutoff is applied relative to the Frobenius
        // norm of the reference spectrum at each radius.
        const Spectrum ref =
            eig_circulant({cfg.kind, r, ds.kappa, cfg.n_trunc}, ds.n_obs());
        IndicatorConfig scaled = cfg;
        scaled.alpha = cfg.alpha * ref.eigenvalues.norm();
        IndicatorGrid grid;
        try {
            grid = sweep(ds, scaled, r, path);
        } catch (const DegenerateError& e) {
            result.warnings.emplace_back(e.what());
            continue;
        }
        const ArtifactReport report = artifact_check(grid, cfg.artifact_level);
        result.grids.push_back(std::move(grid));
        result.reports.push_back(report);
        const int idx = static_cast<int>(result.grids.size()) - 1;
        if (!fallback || report.components < fallback_components) {
            fallback = idx;
            fallback_components = report.components;
        }
        if (report.artifact_free) {
            chosen = idx;
            break;
        }
    }

    if (result.grids.empty())
        throw DegenerateError("refine: every radius produced an all-invalid grid");

    const int idx = chosen ? *chosen : *fallback;
    const IndicatorGrid& g = result.grids[static_cast<std::size_t>(idx)];
    result.disk.converged = chosen.has_value();
    result.disk.radius = g.radius;
    result.disk.center = g.argmax_point();
    result.disk.p_star = static_cast<int>(std::lround(
        std::log(g.radius / cfg.r0) / std::log(cfg.gamma)));
    if (!result.disk.converged)
        result.warnings.push_back("no artifact-free radius within p_max; returning the "
                                  "fewest-components radius");
    return result;
}

void write_grid_csv(const IndicatorGrid& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("write_grid_csv: cannot open \"" + path + "\" for writing");
    out << "x,y,W,valid\n";
    out.precision(17);
    for (std::size_t k = 0; k < g.values.size(); ++k) {
        const Vec2 z = g.grid.node(k);
        out << z.x << ',' << z.y << ',' << g.values[k] << ','
            << static_cast<int>(g.valid[k]) << '\n';
    }
}

} // namespace esm
