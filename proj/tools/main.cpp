#include "heatmap.hpp"
#include "run_config.hpp"

#include "esm/data.hpp"
#include "esm/errors.hpp"
#include "esm/forward.hpp"
#include "esm/imaging.hpp"
#include "esm/refdisk.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace esm;
using namespace esm::cli;

namespace {

struct Options {
    std::string config_path;
    std::string dataset_path;
    std::string out_dir;                // --out overrides output.directory
    std::optional<double> radius;       // --radius for `image`
    std::optional<std::uint64_t> seed;  // --seed overrides noise.seed
    std::optional<bool> heatmap;        // --heatmap on|off override
};

RunConfig effective_config(const Options& opt) {
    RunConfig cfg = load_run_config(opt.config_path);
    if (!opt.out_dir.empty()) cfg.out_dir = opt.out_dir;
    if (opt.seed) cfg.seed = *opt.seed;
    if (opt.heatmap) cfg.emit_heatmap = *opt.heatmap;
    fs::create_directories(cfg.out_dir);
    return cfg;
}

FarFieldDataset apply_noise(FarFieldDataset ds, const RunConfig& cfg) {
    if (cfg.delta == 0.0) return ds;
    if (!cfg.seed)
        throw ConfigError("noise.delta > 0 requires a seed (config key "
                          "\"noise.seed\" or flag --seed)");
    return add_noise(ds, cfg.delta, *cfg.seed);
}

FarFieldDataset load_compatible_dataset(const Options& opt, const RunConfig& cfg) {
    if (opt.dataset_path.empty())
        throw ConfigError("this command requires --dataset PATH");
    FarFieldDataset ds = load_dataset(opt.dataset_path);
    if (ds.kappa != cfg.kappa)
        throw ConfigError("dataset kappa " + std::to_string(ds.kappa) +
                          " does not match config kappa " + std::to_string(cfg.kappa));
    if (ds.n_obs() != cfg.n_obs)
        throw ConfigError("dataset has N = " + std::to_string(ds.n_obs()) +
                          " observation directions, config expects N = " +
                          std::to_string(cfg.n_obs));
    return ds;
}

void report_exclusion(const RunConfig& cfg, double r, std::vector<std::string>* sink) {
    const ExclusionCheck chk =
        eigenvalue_exclusion_check({cfg.esm.kind, r, cfg.kappa, cfg.esm.n_trunc});
    if (chk.ok) return;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "exclusion check: mode %d is near an interior eigenvalue at "
                  "R = %.6g (value %.3g); results at this radius may degrade",
                  chk.mode, r, chk.value);
    if (sink)
        sink->emplace_back(buf);
    else
        std::printf("warning: %s\n", buf);
}

int cmd_forward(const Options& opt) {
    const RunConfig cfg = effective_config(opt);
    const Boundary boundary(cfg.shape, cfg.shift, cfg.disk_radius);
    const auto angles = unit_circle_angles(cfg.n_obs);

    std::vector<FarFieldVector> columns;
    for (std::size_t l = 0; l < cfg.directions.size(); ++l) {
        const PlaneWave wave{cfg.kappa, cfg.directions.direction(l)};
        MfsModel model;
        try {
            model = mfs_solve(boundary, wave, cfg.m_src, cfg.m_col, cfg.tau);
        } catch (const NumericError& e) {
            throw NumericError(std::string(e.what()) +
                               " (try raising mfs.m_src / mfs.m_col)");
        }
        std::printf("direction %zu (angle %.6g): boundary residual %.3e\n", l,
                    cfg.directions.angles[l], model.residual);
        columns.push_back(mfs_farfield(model, angles, wave.direction));
    }

    const FarFieldDataset ds =
        apply_noise(make_dataset(cfg.kappa, angles, cfg.directions, columns), cfg);
    const std::string path = (fs::path(cfg.out_dir) / "dataset.ffd.json").string();
    save_dataset(ds, path);
    std::printf("wrote %s\n", path.c_str());
    return 0;
}

int cmd_oracle_disk(const Options& opt) {
    const RunConfig cfg = effective_config(opt);
    if (cfg.shape != ShapeKind::Disk)
        throw ConfigError("oracle-disk requires scene.shape = \"disk\"");
    const auto angles = unit_circle_angles(cfg.n_obs);

    std::vector<FarFieldVector> columns;
    for (std::size_t l = 0; l < cfg.directions.size(); ++l)
        columns.push_back(disk_farfield_series(
            cfg.disk_radius, cfg.shift, {cfg.kappa, cfg.directions.direction(l)}, angles));

    const FarFieldDataset ds =
        apply_noise(make_dataset(cfg.kappa, angles, cfg.directions, columns), cfg);
    const std::string path = (fs::path(cfg.out_dir) / "oracle.ffd.json").string();
    save_dataset(ds, path);
    std::printf("wrote %s\n", path.c_str());
    return 0;
}

int cmd_image(const Options& opt) {
    const RunConfig cfg = effective_config(opt);
    if (!opt.radius) throw ConfigError("image requires --radius R");
    const FarFieldDataset ds = load_compatible_dataset(opt, cfg);

    report_exclusion(cfg, *opt.radius, nullptr);
    const IndicatorGrid grid = sweep(ds, cfg.esm, *opt.radius);
    const ArtifactReport report = artifact_check(grid, cfg.esm.artifact_level);

    const std::string csv = (fs::path(cfg.out_dir) / "grid.csv").string();
    write_grid_csv(grid, csv);
    std::printf("R = %.6g: argmax W = %.6g at (%.6g, %.6g), %d half-max "
                "component%s\nwrote %s\n",
                grid.radius, grid.max_value, grid.argmax_point().x,
                grid.argmax_point().y, report.components,
                report.components == 1 ? "" : "s", csv.c_str());
    if (cfg.emit_heatmap) {
        const std::string ppm = (fs::path(cfg.out_dir) / "heatmap.ppm").string();
        write_heatmap_ppm(grid, ppm);
        std::printf("wrote %s\n", ppm.c_str());
    }
    return 0;
}

int cmd_refine(const Options& opt) {
    const RunConfig cfg = effective_config(opt);
    const FarFieldDataset ds = load_compatible_dataset(opt, cfg);

    const RefineResult result = refine(ds, cfg.esm);

    json summary;
    summary["p_star"] = result.disk.p_star;
    summary["R_star"] = result.disk.radius;
    summary["z_star"] = {result.disk.center.x, result.disk.center.y};
    summary["converged"] = result.disk.converged;
    summary["components_per_radius"] = json::array();
    std::vector<std::string> warnings = result.warnings;

    for (std::size_t i = 0; i < result.grids.size(); ++i) {
        const IndicatorGrid& g = result.grids[i];
        const int p = int(std::lround(std::log(g.radius / cfg.esm.r0) /
                                      std::log(cfg.esm.gamma)));
        report_exclusion(cfg, g.radius, &warnings);
        summary["components_per_radius"].push_back(
            {{"p", p}, {"R", g.radius}, {"components", result.reports[i].components}});
        write_grid_csv(g, (fs::path(cfg.out_dir) / ("grid_p" + std::to_string(p) +
                                                    ".csv")).string());
    }
    summary["warnings"] = warnings;

    const std::string path = (fs::path(cfg.out_dir) / "summary.json").string();
    std::ofstream out(path);
    if (!out) throw ConfigError("refine: cannot open \"" + path + "\" for writing");
    out << summary.dump(2) << '\n';

    std::printf("p* = %d, R* = %.6g, z* = (%.6g, %.6g)%s\nwrote %s\n",
                result.disk.p_star, result.disk.radius, result.disk.center.x,
                result.disk.center.y,
                result.disk.converged ? "" : " (no artifact-free radius)", path.c_str());
    if (cfg.emit_heatmap) {
        const std::string ppm = (fs::path(cfg.out_dir) / "heatmap.ppm").string();
        write_heatmap_ppm(result.grids.back(), ppm,
                          CircleOverlay{result.disk.center, result.disk.radius});
        std::printf("wrote %s\n", ppm.c_str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("esm - extended sampling method for biharmonic "
                             "obstacle scattering\n\n") +
                 kConfigKeyHelp};
    app.require_subcommand(1);

    Options opt;
    std::string heatmap_flag;

    auto add_common = [&](CLI::App* sub, bool needs_dataset) {
        sub->add_option("--config", opt.config_path, "JSON run configuration")
            ->required();
        sub->add_option("--out", opt.out_dir, "output directory (overrides config)");
        sub->add_option("--seed", opt.seed, "noise seed (overrides config)");
        sub->add_option("--heatmap", heatmap_flag, "on|off (overrides config)")
            ->check(CLI::IsMember({"on", "off"}));
        if (needs_dataset)
            sub->add_option("--dataset", opt.dataset_path, "input .ffd.json dataset")
                ->required();
    };

    CLI::App* forward = app.add_subcommand(
        "forward", "synthesize far-field data with the MFS forward solver");
    add_common(forward, false);
    CLI::App* oracle = app.add_subcommand(
        "oracle-disk", "emit the analytic clamped-disk far field");
    add_common(oracle, false);
    CLI::App* image = app.add_subcommand(
        "image", "sweep the indicator over the grid at one sampling radius");
    add_common(image, true);
    image->add_option("--radius", opt.radius, "sampling disk radius R")->required();
    CLI::App* refine_cmd = app.add_subcommand(
        "refine", "run the radius-refinement loop and report the optimal disk");
    add_common(refine_cmd, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // flag misuse is a config error
    }

    if (!heatmap_flag.empty()) opt.heatmap = heatmap_flag == "on";

    try {
        if (forward->parsed()) return cmd_forward(opt);
        if (oracle->parsed()) return cmd_oracle_disk(opt);
        if (image->parsed()) return cmd_image(opt);
        return cmd_refine(opt);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const NumericError& e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return 3;
    } catch (const DegenerateError& e) {
        std::fprintf(stderr, "degenerate result: %s\n", e.what());
        return 4;
    }
}
