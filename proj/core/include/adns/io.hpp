#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "adns/field.hpp"

namespace adns {

// Flat binary field layout: header (n_h, n_v as little-endian u64, L as
// little-endian f64) followed by Re u1, Im u1, Re u2, Im u2 per mode in
// row-major mode order.
void save_velocity(const SpectralVelocity& u, const std::string& path);
SpectralVelocity load_velocity(const std::string& path, double dealias_fraction = 2.0 / 3.0);

// Plain-text spectral dump: one line per mode, "m1 m2 Re u1 Im u1 Re u2 Im u2".
void dump_velocity_text(const SpectralVelocity& u, const std::string& path);

// Round-trip-safe decimal rendering (17 significant digits).
std::string format_full(double v);

// Minimal CSV emitter; numeric cells go through format_full.
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns);
    void write_row(const std::vector<double>& values);
    void write_raw_row(const std::vector<std::string>& cells);

  private:
    std::ofstream out_;
    std::size_t n_columns_;
};

// Per-invocation provenance: resolved config, master seed, code version,
// timestamps, and subcommand verdicts. Written once as JSON.
class RunManifest {
  public:
    RunManifest(std::string subcommand, std::string config_path, std::uint64_t seed);
    void set_config_snapshot(const std::string& yaml_text);
    void add_verdict(const std::string& name, const std::string& value);
    void add_output(const std::string& path);
    void write(const std::string& path, int exit_code);

  private:
    struct Impl;
    std::string subcommand_, config_path_, started_at_;
    std::uint64_t seed_;
    std::string config_snapshot_;
    std::vector<std::pair<std::string, std::string>> verdicts_;
    std::vector<std::string> outputs_;
};

}  // namespace adns
