#include "run_config.hpp"

#include "esm/errors.hpp"
#include "esm/refdisk.hpp"

#include <json.hpp>

#include <fstream>
#include <initializer_list>

using nlohmann::json;

namespace esm::cli {

namespace {

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed)
            if (item.key() == key) {
                known = true;
                break;
            }
        if (!known)
            throw ConfigError("config: unknown key \"" + item.key() + "\" in " + where);
    }
}

double get_number(const json& obj, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number())
        throw ConfigError(std::string("config: \"") + key + "\" must be a number");
    return obj[key].get<double>();
}

std::size_t get_count(const json& obj, const char* key, std::size_t fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number_unsigned())
        throw ConfigError(std::string("config: \"") + key +
                          "\" must be a non-negative integer");
    return obj[key].get<std::size_t>();
}

Vec2 get_vec2(const json& obj, const char* key, Vec2 fallback) {
    if (!obj.contains(key)) return fallback;
    const json& j = obj[key];
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ConfigError(std::string("config: \"") + key + "\" must be [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

void parse_scene(const json& j, RunConfig& cfg) {
    check_keys(j, "scene", {"shape", "shift", "radius", "kappa"});
    if (j.contains("shape")) {
        if (!j["shape"].is_string())
            throw ConfigError("config: \"shape\" must be a string");
        cfg.shape = shape_from_name(j["shape"].get<std::string>());
    }
    cfg.shift = get_vec2(j, "shift", cfg.shift);
    cfg.disk_radius = get_number(j, "radius", cfg.disk_radius);
    cfg.kappa = get_number(j, "kappa", cfg.kappa);
    if (cfg.kappa <= 0.0) throw ConfigError("config: \"kappa\" must be positive");
    if (cfg.disk_radius <= 0.0) throw ConfigError("config: \"radius\" must be positive");
}

void parse_directions(const json& j, RunConfig& cfg) {
    check_keys(j, "directions", {"name", "angles"});
    if (j.contains("name") == j.contains("angles"))
        throw ConfigError("config: \"directions\" needs exactly one of "
                          "\"name\" or \"angles\"");
    if (j.contains("name")) {
        if (!j["name"].is_string())
            throw ConfigError("config: directions \"name\" must be a string");
        cfg.directions = named_direction_set(j["name"].get<std::string>());
        return;
    }
    const json& angles = j["angles"];
    if (!angles.is_array() || angles.empty())
        throw ConfigError("config: directions \"angles\" must be a non-empty array");
    cfg.directions.angles.clear();
    for (const json& a : angles) {
        if (!a.is_number())
            throw ConfigError("config: directions \"angles\" entries must be numbers");
        cfg.directions.angles.push_back(a.get<double>());
    }
}

void parse_noise(const json& j, RunConfig& cfg) {
    check_keys(j, "noise", {"delta", "seed"});
    cfg.delta = get_number(j, "delta", cfg.delta);
    if (cfg.delta < 0.0 || cfg.delta >= 1.0)
        throw ConfigError("config: \"delta\" must lie in [0, 1)");
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned())
            throw ConfigError("config: \"seed\" must be a non-negative integer");
        cfg.seed = j["seed"].get<std::uint64_t>();
    }
}

void parse_grid(const json& j, SamplingGrid& grid) {
    check_keys(j, "esm.grid", {"xmin", "xmax", "ymin", "ymax", "nx", "ny"});
    grid.xmin = get_number(j, "xmin", grid.xmin);
    grid.xmax = get_number(j, "xmax", grid.xmax);
    grid.ymin = get_number(j, "ymin", grid.ymin);
    grid.ymax = get_number(j, "ymax", grid.ymax);
    grid.nx = get_count(j, "nx", grid.nx);
    grid.ny = get_count(j, "ny", grid.ny);
    if (grid.xmin >= grid.xmax || grid.ymin >= grid.ymax)
        throw ConfigError("config: grid extents must satisfy min < max");
    if (grid.nx < 2 || grid.ny < 2)
        throw ConfigError("config: grid needs nx, ny >= 2");
}

void parse_esm(const json& j, RunConfig& cfg) {
    check_keys(j, "esm",
               {"kind", "R0", "gamma", "p_max", "alpha", "n_trunc", "N", "grid"});
    if (j.contains("kind")) {
        if (!j["kind"].is_string())
            throw ConfigError("config: \"kind\" must be a string");
        cfg.esm.kind = refdisk_kind_from_name(j["kind"].get<std::string>());
    }
    cfg.esm.r0 = get_number(j, "R0", cfg.esm.r0);
    cfg.esm.gamma = get_number(j, "gamma", cfg.esm.gamma);
    cfg.esm.p_max = static_cast<int>(get_count(j, "p_max", std::size_t(cfg.esm.p_max)));
    cfg.esm.alpha = get_number(j, "alpha", cfg.esm.alpha);
    cfg.esm.n_trunc =
        static_cast<int>(get_count(j, "n_trunc", std::size_t(cfg.esm.n_trunc)));
    cfg.n_obs = get_count(j, "N", cfg.n_obs);
    if (j.contains("grid")) parse_grid(j["grid"], cfg.esm.grid);
    if (cfg.esm.r0 <= 0.0) throw ConfigError("config: \"R0\" must be positive");
    if (cfg.esm.gamma <= 1.0) throw ConfigError("config: \"gamma\" must exceed 1");
    if (cfg.esm.alpha <= 0.0) throw ConfigError("config: \"alpha\" must be positive");
    if (cfg.esm.n_trunc < 1) throw ConfigError("config: \"n_trunc\" must be >= 1");
    if (cfg.n_obs < 2 * std::size_t(cfg.esm.n_trunc) + 1)
        throw ConfigError("config: \"N\" must be at least 2 * n_trunc + 1");
}

void parse_mfs(const json& j, RunConfig& cfg) {
    check_keys(j, "mfs", {"m_src", "m_col", "tau"});
    cfg.m_src = get_count(j, "m_src", cfg.m_src);
    cfg.m_col = get_count(j, "m_col", cfg.m_col);
    cfg.tau = get_number(j, "tau", cfg.tau);
    if (cfg.m_src < 8 || cfg.m_col < cfg.m_src)
        throw ConfigError("config: need m_src >= 8 and m_col >= m_src");
    if (cfg.tau <= 0.0 || cfg.tau >= 1.0)
        throw ConfigError("config: \"tau\" must lie in (0, 1)");
}

void parse_output(const json& j, RunConfig& cfg) {
    check_keys(j, "output", {"directory", "emit_heatmap"});
    if (j.contains("directory")) {
        if (!j["directory"].is_string())
            throw ConfigError("config: output \"directory\" must be a string");
        cfg.out_dir = j["directory"].get<std::string>();
    }
    if (j.contains("emit_heatmap")) {
        if (!j["emit_heatmap"].is_boolean())
            throw ConfigError("config: \"emit_heatmap\" must be a boolean");
        cfg.emit_heatmap = j["emit_heatmap"].get<bool>();
    }
}

} // namespace

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open \"" + path + "\"");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config: \"" + path + "\" is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config: top level must be an object");
    check_keys(doc, "the top level",
               {"scene", "directions", "noise", "esm", "mfs", "output"});

    RunConfig cfg;
    if (doc.contains("scene")) parse_scene(doc["scene"], cfg);
    if (doc.contains("directions")) parse_directions(doc["directions"], cfg);
    if (doc.contains("noise")) parse_noise(doc["noise"], cfg);
    if (doc.contains("esm")) parse_esm(doc["esm"], cfg);
    if (doc.contains("mfs")) parse_mfs(doc["mfs"], cfg);
    if (doc.contains("output")) parse_output(doc["output"], cfg);
    return cfg;
}

const char* const kConfigKeyHelp = R"(Config file keys (JSON, unknown keys rejected):
  scene.shape        "disk" | "star" | "peanut"        (default "disk")
  scene.shift        [x, y] translation                (default [0, 0])
  scene.radius       disk radius a                     (default 1.0)
  scene.kappa        wavenumber                        (default 2.0)
  directions.name    "S1_inc_1" | "S1_inc_2" | "S1_inc_4"  (default "S1_inc_4")
  directions.angles  explicit incident angles (alternative to name)
  noise.delta        relative noise level in [0, 1)    (default 0 = clean)
  noise.seed         RNG seed (required when delta > 0)
  esm.kind           "dirichlet" | "neumann"           (default "dirichlet")
  esm.R0             initial sampling radius           (default 0.5)
  esm.gamma          radius growth factor              (default 1.25)
  esm.p_max          max refinement steps              (default 8)
  esm.alpha          spectral cutoff                   (default 1e-4)
  esm.n_trunc        kernel truncation order           (default 10)
  esm.N              observation directions            (default 32)
  esm.grid           {xmin, xmax, ymin, ymax, nx, ny}  (default 100x100 on [-4,4]^2)
  mfs.m_src          MFS source count                  (default 320)
  mfs.m_col          MFS collocation count             (default 640)
  mfs.tau            source-curve scaling in (0, 1)    (default 0.85)
  output.directory   output directory                  (default ".")
  output.emit_heatmap  write PPM heatmaps              (default false)
Environment: ESM_THREADS caps sweep parallelism (0 or unset = auto).)";

} // namespace esm::cli
