#include "adns/io.hpp"

#include <bit>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "adns/errors.hpp"
#include "adns/version.hpp"

namespace adns {

namespace {

void put_u64_le(std::ostream& out, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64_le(std::istream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

void put_f64_le(std::ostream& out, double v) { put_u64_le(out, std::bit_cast<std::uint64_t>(v)); }
double get_f64_le(std::istream& in) { return std::bit_cast<double>(get_u64_le(in)); }

std::string now_iso8601() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

}  // namespace

void save_velocity(const SpectralVelocity& u, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    const Grid& g = u.grid();
    put_u64_le(out, static_cast<std::uint64_t>(g.n_h));
    put_u64_le(out, static_cast<std::uint64_t>(g.n_v));
    put_f64_le(out, g.box_length);
    for (int i = 0; i < g.size(); ++i) {
        put_f64_le(out, u.comp1().data()[i].real());
        put_f64_le(out, u.comp1().data()[i].imag());
        put_f64_le(out, u.comp2().data()[i].real());
        put_f64_le(out, u.comp2().data()[i].imag());
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

SpectralVelocity load_velocity(const std::string& path, double dealias_fraction) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    const auto n_h = static_cast<int>(get_u64_le(in));
    const auto n_v = static_cast<int>(get_u64_le(in));
    const double L = get_f64_le(in);
    if (!in) throw std::runtime_error("truncated field header: " + path);
    const Grid g = Grid::make(n_h, n_v, L, dealias_fraction);
    SpectralVelocity u(g);
    for (int i = 0; i < g.size(); ++i) {
        const double r1 = get_f64_le(in), i1 = get_f64_le(in);
        const double r2 = get_f64_le(in), i2 = get_f64_le(in);
        u.comp1().data()[i] = Complex(r1, i1);
        u.comp2().data()[i] = Complex(r2, i2);
    }
    if (!in) throw std::runtime_error("truncated field body: " + path);
    return u;
}

void dump_velocity_text(const SpectralVelocity& u, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    const Grid& g = u.grid();
    for (int j1 = 0; j1 < g.n_h; ++j1)
        for (int j2 = 0; j2 < g.n_v; ++j2) {
            const int i = g.index(j1, j2);
            out << g.mode1(j1) << ' ' << g.mode2(j2) << ' '
                << format_full(u.comp1().data()[i].real()) << ' '
                << format_full(u.comp1().data()[i].imag()) << ' '
                << format_full(u.comp2().data()[i].real()) << ' '
                << format_full(u.comp2().data()[i].imag()) << '\n';
        }
}

std::string format_full(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& columns)
    : out_(path), n_columns_(columns.size()) {
    if (!out_) throw std::runtime_error("cannot open for writing: " + path);
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out_ << ',';
        out_ << columns[i];
    }
    out_ << '\n';
}

void CsvWriter::write_row(const std::vector<double>& values) {
    if (values.size() != n_columns_) throw std::logic_error("csv row width mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out_ << ',';
        out_ << format_full(values[i]);
    }
    out_ << '\n';
}

void CsvWriter::write_raw_row(const std::vector<std::string>& cells) {
    if (cells.size() != n_columns_) throw std::logic_error("csv row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        out_ << cells[i];
    }
    out_ << '\n';
}

RunManifest::RunManifest(std::string subcommand, std::string config_path, std::uint64_t seed)
    : subcommand_(std::move(subcommand)), config_path_(std::move(config_path)),
      started_at_(now_iso8601()), seed_(seed) {}

void RunManifest::set_config_snapshot(const std::string& yaml_text) { config_snapshot_ = yaml_text; }

void RunManifest::add_verdict(const std::string& name, const std::string& value) {
    verdicts_.emplace_back(name, value);
}

void RunManifest::add_output(const std::string& path) { outputs_.push_back(path); }

void RunManifest::write(const std::string& path, int exit_code) {
    nlohmann::json j;
    j["tool"] = "adns";
    j["version"] = kVersion;
    j["subcommand"] = subcommand_;
    j["config_path"] = config_path_;
    j["config"] = config_snapshot_;
    j["seed"] = seed_;
    j["started_at"] = started_at_;
    j["finished_at"] = now_iso8601();
    j["exit_code"] = exit_code;
    nlohmann::json verdicts = nlohmann::json::object();
    for (const auto& [k, v] : verdicts_) verdicts[k] = v;
    j["verdicts"] = verdicts;
    j["outputs"] = outputs_;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << j.dump(2) << '\n';
}

}  // namespace adns
