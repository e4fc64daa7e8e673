#include "adns/config.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <sstream>

#include "adns/errors.hpp"

namespace adns {

namespace {

template <typename T>
T require(const YAML::Node& node, const std::string& key) {
    const YAML::Node child = node[key];
    if (!child) throw ConfigError("missing key '" + key + "'");
    try {
        return child.as<T>();
    } catch (const YAML::Exception&) {
        throw ConfigError("key '" + key + "' has the wrong type");
    }
}

template <typename T>
T get_or(const YAML::Node& node, const std::string& key, T fallback) {
    const YAML::Node child = node[key];
    if (!child) return fallback;
    try {
        return child.as<T>();
    } catch (const YAML::Exception&) {
        throw ConfigError("key '" + key + "' has the wrong type");
    }
}

InitSpec parse_init(const YAML::Node& node, const std::string& where) {
    InitSpec spec;
    const std::string kind = require<std::string>(node, "kind");
    if (kind == "zero") {
        spec.kind = InitSpec::Kind::zero;
    } else if (kind == "random_divfree") {
        spec.kind = InitSpec::Kind::random_divfree;
        spec.spectrum_exponent = get_or<double>(node, "spectrum_exponent", 2.0);
        spec.amplitude = get_or<double>(node, "amplitude", 1.0);
    } else if (kind == "file") {
        spec.kind = InitSpec::Kind::file;
        spec.path = require<std::string>(node, "path");
    } else {
        throw ConfigError(where + ".kind: expected zero | random_divfree | file");
    }
    spec.normalize_h1 = get_or<double>(node, "normalize_h1", 0.0);
    spec.seed_salt = get_or<std::uint64_t>(node, "seed_salt", 0);
    return spec;
}

NoiseOperator parse_noise(const YAML::Node& node, const Grid& grid) {
    if (!node) return NoiseOperator{};  // sigma == 0 is the deterministic case
    const YAML::Node modes = node["modes"];
    const YAML::Node decay = node["decay"];
    if (modes && decay) throw ConfigError("noise: give either 'modes' or 'decay', not both");
    if (modes) {
        std::vector<NoiseMode> list;
        for (const YAML::Node& entry : modes) {
            NoiseMode m;
            m.m1 = require<int>(entry, "m1");
            m.m2 = require<int>(entry, "m2");
            m.q = require<double>(entry, "q");
            list.push_back(m);
        }
        return NoiseOperator::from_modes(grid, list);
    }
    if (decay) {
        const int count = require<int>(decay, "count");
        const double exponent = require<double>(decay, "exponent");
        const double amplitude = require<double>(decay, "amplitude");
        return NoiseOperator::decay_family(grid, count, exponent, amplitude);
    }
    throw ConfigError("noise: needs a 'modes' list or a 'decay' table");
}

}  // namespace

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();

    RunConfig cfg;
    cfg.raw_text = buffer.str();

    YAML::Node root;
    try {
        root = YAML::Load(cfg.raw_text);
    } catch (const YAML::ParserException& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }

    cfg.solver.lambda = require<double>(root, "lambda");
    cfg.solver.dt = require<double>(root, "dt");
    cfg.solver.t_final = require<double>(root, "t_final");
    cfg.solver.output_every = get_or<int>(root, "output_every", 1);
    cfg.solver.seed = get_or<std::uint64_t>(root, "seed", 0);

    const YAML::Node grid = root["grid"];
    if (!grid) throw ConfigError("missing key 'grid'");
    try {
        cfg.solver.grid = Grid::make(require<int>(grid, "n_h"), require<int>(grid, "n_v"),
                                     get_or<double>(grid, "L", 2.0 * std::numbers::pi),
                                     get_or<double>(grid, "dealias", 2.0 / 3.0));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    cfg.solver.sigma = parse_noise(root["noise"], cfg.solver.grid);

    const YAML::Node init = root["init"];
    cfg.solver.init = init ? parse_init(init, "init") : InitSpec{};

    const YAML::Node output = root["output"];
    cfg.output_dir = output ? get_or<std::string>(output, "dir", "") : "";

    if (const YAML::Node c = root["couple"]) {
        CoupleSection s;
        const YAML::Node v = c["v_init"];
        if (!v) throw ConfigError("missing key 'couple.v_init'");
        s.v_init = parse_init(v, "couple.v_init");
        s.R = get_or<double>(c, "R", s.R);
        s.c0 = get_or<double>(c, "c0", s.c0);
        s.c2 = get_or<double>(c, "c2", s.c2);
        s.floor_rel = get_or<double>(c, "floor_rel", s.floor_rel);
        cfg.couple = s;
    }

    if (const YAML::Node t = root["tails"]) {
        TailsSection s;
        s.replicas = get_or<long>(t, "replicas", s.replicas);
        s.horizon = get_or<double>(t, "horizon", s.horizon);
        if (const YAML::Node cells = t["martingale_cells"])
            for (const YAML::Node& cell : cells)
                s.martingale_cells.push_back(
                    {require<double>(cell, "gamma"), require<double>(cell, "R")});
        if (const YAML::Node r = t["e0_thresholds"])
            s.e0_thresholds = r.as<std::vector<double>>();
        if (const YAML::Node r = t["e1_thresholds"])
            s.e1_thresholds = r.as<std::vector<double>>();
        cfg.tails = s;
    }

    if (const YAML::Node e = root["ergodic"]) {
        ErgodicSection s;
        const YAML::Node v = e["v_init"];
        if (!v) throw ConfigError("missing key 'ergodic.v_init'");
        s.v_init = parse_init(v, "ergodic.v_init");
        s.horizon = get_or<double>(e, "horizon", s.horizon);
        s.burn_in = get_or<double>(e, "burn_in", s.burn_in);
        s.stride = get_or<double>(e, "stride", s.stride);
        s.gap_threshold = get_or<double>(e, "gap_threshold", s.gap_threshold);
        s.c2 = get_or<double>(e, "c2", s.c2);
        s.coupled_series = get_or<bool>(e, "coupled_series", s.coupled_series);
        s.series_horizon = get_or<double>(e, "series_horizon", s.series_horizon);
        cfg.ergodic = s;
    }

    if (const YAML::Node g = root["gn"]) {
        GnSection s;
        s.pairs = get_or<long>(g, "pairs", s.pairs);
        s.spectrum_exponent = get_or<double>(g, "spectrum_exponent", s.spectrum_exponent);
        s.amplitude = get_or<double>(g, "amplitude", s.amplitude);
        cfg.gn = s;
    }

    if (const YAML::Node c = root["calibrate"]) {
        CalibrateSection s;
        if (const YAML::Node l = c["lambdas"]) s.lambdas = l.as<std::vector<double>>();
        if (const YAML::Node k = c["noise_scales"]) s.noise_scales = k.as<std::vector<double>>();
        if (const YAML::Node a = c["amplitudes"]) s.amplitudes = a.as<std::vector<double>>();
        s.seeds_per_cell = get_or<int>(c, "seeds_per_cell", s.seeds_per_cell);
        s.horizon = get_or<double>(c, "horizon", s.horizon);
        s.r_over_k = get_or<double>(c, "r_over_k", s.r_over_k);
        cfg.calibrate = s;
    }

    cfg.solver.validate();
    return cfg;
}

}  // namespace adns
