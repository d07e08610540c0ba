#pragma once

#include <chrono>
#include <filesystem>
#include <iomanip>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "geoflow/geoflow.hpp"
#include "geoflow/io/formats.hpp"
#include "third_party/CLI11.hpp"

#ifndef GEOFLOW_VERSION
#define GEOFLOW_VERSION "0.0.0"
#endif

namespace geoflow::cli {

namespace fs = std::filesystem;
using io::json;

/// Tokens that mean the request itself was wrong (exit 2); anything else is a
/// failure while running (exit 3).
inline bool is_config_error(const std::string& token) {
    static const std::set<std::string> config{
        "invalid-argument",        "invalid-config",     "input-not-found",  "malformed-input",
        "output-exists",           "invalid-curve",      "outside-admissible-band", "no-admissible-band",
        "unsolvable-slope",        "bad-seed-frame",     "degenerate-family", "at-singularity",
        "outside-annulus-branch",  "outside-domain",     "future-kernel",    "past-singular-time"};
    return config.count(token) > 0;
}

// ---- argument grammar -----------------------------------------------------

inline std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    for (const auto& f : io::detail::split(s, ',')) {
        try {
            out.push_back(io::parse_number(f));
        } catch (const Error&) {
            throw Error("invalid-argument", "bad number list '" + s + "'");
        }
    }
    return out;
}

/// `start:end:count` → count equally spaced values.
inline std::vector<double> parse_range(const std::string& s) {
    const auto f = io::detail::split(s, ':');
    if (f.size() != 3) throw Error("invalid-argument", "range must be start:end:count, got '" + s + "'");
    double a = 0, b = 0, n = 0;
    try {
        a = io::parse_number(f[0]);
        b = io::parse_number(f[1]);
        n = io::parse_number(f[2]);
    } catch (const Error&) {
        throw Error("invalid-argument", "bad range '" + s + "'");
    }
    if (!(n >= 1) || n != std::floor(n) || !std::isfinite(a) || !std::isfinite(b))
        throw Error("invalid-argument", "range count must be a positive integer");
    if (n == 1) return {a};
    return shapes::linspace(a, b, static_cast<std::size_t>(n));
}

inline Point parse_point(const std::string& s) {
    const auto v = parse_list(s);
    if (v.size() != 2 && v.size() != 3) throw Error("invalid-argument", "point needs 2 or 3 components");
    return Point(v[0], v[1], v.size() == 3 ? v[2] : 0.0);
}

// ---- run bookkeeping ------------------------------------------------------

inline std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw Error("output-write-failed", "sha256 digest failed");
    std::ostringstream hex;
    for (unsigned int k = 0; k < len; ++k) hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[k]);
    return hex.str();
}

/// Global flags shared by all subcommands.
struct Globals {
    std::string out = "geoflow-out";
    bool force = false;
    int threads = 1;
    std::string format = "structured-text";
};

/// One command invocation: parameters, files written, summary values.
class Run {
public:
    Run(const Globals& g, std::string command)
        : dir_(g.out), format_(io::parse_format(g.format)), command_(std::move(command)), threads_(g.threads),
          started_(std::chrono::steady_clock::now()) {
        if (g.threads < 1) throw Error("invalid-argument", "--threads must be at least 1");
        if (fs::exists(dir_ / "manifest.json") && !g.force)
            throw Error("output-exists", dir_.string() + " already holds a manifest; pass --force to append");
        fs::create_directories(dir_);
    }

    io::Format format() const { return format_; }
    const fs::path& dir() const { return dir_; }
    json& parameters() { return parameters_; }
    json& summary() { return summary_; }

    /// File name with the extension of the chosen format.
    std::string named(const std::string& stem) const { return stem + io::extension(format_); }

    void add(const fs::path& p) { artifacts_.push_back(fs::relative(p, dir_).generic_string()); }
    void add(const std::vector<fs::path>& ps) {
        for (const auto& p : ps) add(p);
    }

    void write_curve(const std::string& stem, const SampledCurve& c) {
        const fs::path p = dir_ / named(stem);
        io::write_curve(p, c, format_);
        add(p);
    }
    void write_filament(const std::string& stem, const hasimoto::FilamentFunction& f) {
        const fs::path p = dir_ / named(stem);
        io::write_filament(p, f, format_);
        add(p);
    }
    void write_table(const std::string& name, const io::Table& t) {
        io::write_table(dir_ / name, t);
        add(dir_ / name);
    }
    void write_json(const std::string& name, const json& j) {
        io::write_text(dir_ / name, j.dump(1) + "\n");
        add(dir_ / name);
    }

    /// Appends this run to `manifest.json`, hashing every artifact as written.
    void finish() {
        json files = json::array();
        for (const auto& a : artifacts_) {
            const std::string data = io::read_text(dir_ / a);
            files.push_back({{"file", a}, {"bytes", data.size()}, {"sha256", sha256_hex(data)}});
        }
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started_).count();
        json entry{{"command", command_},       {"parameters", parameters_}, {"summary", summary_},
                   {"artifacts", std::move(files)}, {"wall_clock_seconds", wall}, {"threads", threads_},
                   {"format", format_ == io::Format::csv ? "csv" : "structured-text"},
                   {"library_version", GEOFLOW_VERSION}};
        const fs::path mpath = dir_ / "manifest.json";
        json manifest{{"runs", json::array()}};
        if (fs::exists(mpath)) manifest = io::parse_json(io::read_text(mpath), mpath.string());
        manifest["runs"].push_back(std::move(entry));
        io::write_text(mpath, manifest.dump(1) + "\n");
    }

private:
    fs::path dir_;
    io::Format format_;
    std::string command_;
    int threads_;
    std::chrono::steady_clock::time_point started_;
    json parameters_ = json::object();
    json summary_ = json::object();
    std::vector<std::string> artifacts_;
};

/// Every option of a subcommand with its effective value (given or default).
inline json collect_parameters(const CLI::App& sub) {
    json p = json::object();
    for (const CLI::Option* opt : sub.get_options()) {
        const std::string name = opt->get_name(false, true);
        const std::string key = opt->get_lnames().empty() ? name : opt->get_lnames().front();
        if (name.empty() || key == "help") continue;
        if (opt->get_expected_min() == 0) {
            p[key] = opt->count() > 0;
        } else if (opt->count() > 0) {
            p[key] = opt->as<std::string>();
        } else if (!opt->get_default_str().empty()) {
            p[key] = opt->get_default_str();
        }
    }
    return p;
}

}  // namespace geoflow::cli
