#pragma once

#include <cctype>
#include <charconv>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "geoflow/geometry/curve.hpp"
#include "geoflow/hasimoto/filament.hpp"
#include "geoflow/trajectory.hpp"

namespace geoflow::io {

namespace fs = std::filesystem;
using nlohmann::json;

/// Output flavour for curves and filaments: CSV tables or a JSON document.
enum class Format { csv, structured_text };

inline Format parse_format(const std::string& s) {
    if (s == "csv") return Format::csv;
    if (s == "structured-text") return Format::structured_text;
    throw Error("invalid-argument", "format must be csv or structured-text");
}

inline const char* extension(Format f) { return f == Format::csv ? ".csv" : ".json"; }

/// Shortest decimal that reads back to the same double.
inline std::string format_number(double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

inline double parse_number(const std::string& s) {
    double v = 0.0;
    const char* b = s.data();
    const char* e = s.data() + s.size();
    while (b < e && *b == ' ') ++b;
    while (e > b && (e[-1] == ' ' || e[-1] == '\r')) --e;
    const auto r = std::from_chars(b, e, v);
    if (r.ec != std::errc() || r.ptr != e) throw Error("malformed-input", "not a number: '" + s + "'");
    return v;
}

inline std::string read_text(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error("input-not-found", p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text(const fs::path& p, const std::string& text) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw Error("output-write-failed", p.string());
}

inline json parse_json(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw Error("malformed-input", what + ": " + e.what());
    }
}

namespace detail {

inline std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

// "# key=value key=value" metadata line.
inline std::string meta_value(const std::string& line, const std::string& key) {
    std::istringstream in(line.substr(1));
    std::string tok;
    while (in >> tok) {
        const auto eq = tok.find('=');
        if (eq != std::string::npos && tok.substr(0, eq) == key) return tok.substr(eq + 1);
    }
    throw Error("malformed-input", "missing metadata '" + key + "'");
}

inline std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) out.push_back(line);
    }
    return out;
}

inline bool looks_like_json(const std::string& text) {
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) return ch == '{';
    return false;
}

}  // namespace detail

// ---- curves ---------------------------------------------------------------

inline json to_json(const SampledCurve& c) {
    json pts = json::array();
    for (const Point& p : c.points()) {
        json row = json::array({p.x(), p.y()});
        if (c.dimension() == 3) row.push_back(p.z());
        pts.push_back(std::move(row));
    }
    return {{"dimension", c.dimension()}, {"closed", c.closed()}, {"label", c.label()}, {"points", std::move(pts)}};
}

inline SampledCurve curve_from_json(const json& j) {
    try {
        const int dim = j.at("dimension").get<int>();
        if (dim != 2 && dim != 3) throw Error("malformed-input", "dimension must be 2 or 3");
        std::vector<Point> pts;
        for (const auto& row : j.at("points")) {
            if (row.size() != static_cast<std::size_t>(dim)) throw Error("malformed-input", "point arity differs from dimension");
            pts.emplace_back(row[0].get<double>(), row[1].get<double>(), dim == 3 ? row[2].get<double>() : 0.0);
        }
        return SampledCurve(dim, j.at("closed").get<bool>(), std::move(pts), j.value("label", std::string{}));
    } catch (const json::exception& e) {
        throw Error("malformed-input", std::string("curve document: ") + e.what());
    }
}

/// CSV with a `# dimension=.. closed=.. label=..` line; blanks in the label become '_'.
inline std::string curve_csv(const SampledCurve& c) {
    std::string label = c.label().empty() ? "-" : c.label();
    for (char& ch : label)
        if (std::isspace(static_cast<unsigned char>(ch))) ch = '_';
    std::string s = "# dimension=" + std::to_string(c.dimension()) + " closed=" + (c.closed() ? "true" : "false") +
                    " label=" + label + "\n";
    s += c.dimension() == 3 ? "x,y,z\n" : "x,y\n";
    for (const Point& p : c.points()) {
        s += format_number(p.x()) + "," + format_number(p.y());
        if (c.dimension() == 3) s += "," + format_number(p.z());
        s += "\n";
    }
    return s;
}

inline SampledCurve curve_from_csv(const std::string& text) {
    const auto lines = detail::lines_of(text);
    if (lines.size() < 2 || lines[0][0] != '#') throw Error("malformed-input", "curve CSV needs a metadata line and header");
    const int dim = static_cast<int>(parse_number(detail::meta_value(lines[0], "dimension")));
    const bool closed = detail::meta_value(lines[0], "closed") == "true";
    std::string label = detail::meta_value(lines[0], "label");
    if (label == "-") label.clear();
    if (dim != 2 && dim != 3) throw Error("malformed-input", "dimension must be 2 or 3");
    std::vector<Point> pts;
    for (std::size_t k = 2; k < lines.size(); ++k) {
        const auto f = detail::split(lines[k], ',');
        if (f.size() != static_cast<std::size_t>(dim)) throw Error("malformed-input", "row arity differs from dimension");
        pts.emplace_back(parse_number(f[0]), parse_number(f[1]), dim == 3 ? parse_number(f[2]) : 0.0);
    }
    return SampledCurve(dim, closed, std::move(pts), std::move(label));
}

inline void write_curve(const fs::path& p, const SampledCurve& c, Format f = Format::structured_text) {
    write_text(p, f == Format::csv ? curve_csv(c) : to_json(c).dump(1) + "\n");
}

/// Reads either format; the document kind is detected from its first character.
inline SampledCurve read_curve(const fs::path& p) {
    const std::string text = read_text(p);
    return detail::looks_like_json(text) ? curve_from_json(parse_json(text, p.string())) : curve_from_csv(text);
}

// ---- filament functions ---------------------------------------------------

inline json to_json(const hasimoto::FilamentFunction& f) {
    json vals = json::array();
    for (const auto& v : f.values) vals.push_back(json::array({v.real(), v.imag()}));
    return {{"grid_start", f.grid_start}, {"grid_step", f.grid_step}, {"gauge_A", f.gauge_A}, {"time", f.time},
            {"periodic", f.periodic},     {"flags", f.flags},         {"values", std::move(vals)}};
}

inline hasimoto::FilamentFunction filament_from_json(const json& j) {
    try {
        hasimoto::FilamentFunction f;
        f.grid_start = j.at("grid_start").get<double>();
        f.grid_step = j.at("grid_step").get<double>();
        f.gauge_A = j.at("gauge_A").get<double>();
        f.time = j.at("time").get<double>();
        f.periodic = j.value("periodic", false);
        f.flags = j.value("flags", std::vector<std::string>{});
        for (const auto& v : j.at("values")) {
            if (v.size() != 2) throw Error("malformed-input", "values must be [re, im] pairs");
            f.values.emplace_back(v[0].get<double>(), v[1].get<double>());
        }
        f.validate();
        return f;
    } catch (const json::exception& e) {
        throw Error("malformed-input", std::string("filament document: ") + e.what());
    }
}

inline std::string filament_csv(const hasimoto::FilamentFunction& f) {
    std::string s = "# grid_start=" + format_number(f.grid_start) + " grid_step=" + format_number(f.grid_step) +
                    " gauge_A=" + format_number(f.gauge_A) + " time=" + format_number(f.time) +
                    " periodic=" + (f.periodic ? "true" : "false") + "\n";
    s += "s,re,im,abs\n";
    for (std::size_t k = 0; k < f.size(); ++k)
        s += format_number(f.s(k)) + "," + format_number(f.values[k].real()) + "," + format_number(f.values[k].imag()) +
             "," + format_number(std::abs(f.values[k])) + "\n";
    return s;
}

inline hasimoto::FilamentFunction filament_from_csv(const std::string& text) {
    const auto lines = detail::lines_of(text);
    if (lines.size() < 2 || lines[0][0] != '#') throw Error("malformed-input", "filament CSV needs a metadata line and header");
    hasimoto::FilamentFunction f;
    f.grid_start = parse_number(detail::meta_value(lines[0], "grid_start"));
    f.grid_step = parse_number(detail::meta_value(lines[0], "grid_step"));
    f.gauge_A = parse_number(detail::meta_value(lines[0], "gauge_A"));
    f.time = parse_number(detail::meta_value(lines[0], "time"));
    f.periodic = detail::meta_value(lines[0], "periodic") == "true";
    for (std::size_t k = 2; k < lines.size(); ++k) {
        const auto c = detail::split(lines[k], ',');
        if (c.size() < 3) throw Error("malformed-input", "filament row needs s,re,im");
        f.values.emplace_back(parse_number(c[1]), parse_number(c[2]));
    }
    f.validate();
    return f;
}

inline void write_filament(const fs::path& p, const hasimoto::FilamentFunction& f, Format fmt = Format::structured_text) {
    write_text(p, fmt == Format::csv ? filament_csv(f) : to_json(f).dump(1) + "\n");
}

inline hasimoto::FilamentFunction read_filament(const fs::path& p) {
    const std::string text = read_text(p);
    return detail::looks_like_json(text) ? filament_from_json(parse_json(text, p.string())) : filament_from_csv(text);
}

// ---- tables ---------------------------------------------------------------

/// Numeric table; empty optionals are written as empty fields.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::optional<double>>> rows;
};

inline std::string table_csv(const Table& t) {
    std::string s;
    for (std::size_t k = 0; k < t.header.size(); ++k) s += (k ? "," : "") + t.header[k];
    s += "\n";
    for (const auto& row : t.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k) s += ",";
            if (row[k]) s += format_number(*row[k]);
        }
        s += "\n";
    }
    return s;
}

inline Table table_from_csv(const std::string& text) {
    const auto lines = detail::lines_of(text);
    if (lines.empty()) throw Error("malformed-input", "empty table");
    Table t;
    t.header = detail::split(lines[0], ',');
    for (std::size_t k = 1; k < lines.size(); ++k) {
        std::vector<std::optional<double>> row;
        for (const auto& field : detail::split(lines[k], ','))
            row.push_back(field.empty() ? std::nullopt : std::optional<double>(parse_number(field)));
        if (row.size() != t.header.size()) throw Error("malformed-input", "row width differs from header");
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline void write_table(const fs::path& p, const Table& t) { write_text(p, table_csv(t)); }

/// time,length,bending,huisken,distance_ratio,max_curvature
inline Table planar_diagnostics(const FlowTrajectory& traj) {
    Table t{{"time", "length", "bending", "huisken", "distance_ratio", "max_curvature"}, {}};
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const auto& d = traj.diagnostics[i];
        t.rows.push_back({traj.times[i], d.length, d.bending, d.huisken, d.distance_ratio, d.max_curvature});
    }
    return t;
}

/// time,length,max_curvature,max_torsion
inline Table spatial_diagnostics(const FlowTrajectory& traj) {
    Table t{{"time", "length", "max_curvature", "max_torsion"}, {}};
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const auto& d = traj.diagnostics[i];
        t.rows.push_back({traj.times[i], d.length, d.max_curvature, d.max_torsion});
    }
    return t;
}

// ---- trajectories ---------------------------------------------------------

/// Frames as numbered curve files `<stem>_NNNNN<ext>` next to an index
/// `<stem>.trajectory.json` listing times and file names. Returns every path
/// written, index last.
inline std::vector<fs::path> write_trajectory(const fs::path& dir, const std::string& stem, const FlowTrajectory& traj,
                                              Format fmt = Format::structured_text) {
    std::vector<fs::path> written;
    json frames = json::array();
    for (std::size_t i = 0; i < traj.size(); ++i) {
        char num[16];
        std::snprintf(num, sizeof num, "_%05zu", i);
        const std::string name = stem + num + extension(fmt);
        write_curve(dir / name, traj.curves[i], fmt);
        written.push_back(dir / name);
        frames.push_back({{"time", traj.times[i]}, {"file", name}});
    }
    const json index{{"stop_reason", traj.stop_reason}, {"steps", traj.steps}, {"frames", std::move(frames)}};
    const fs::path idx = dir / (stem + ".trajectory.json");
    write_text(idx, index.dump(1) + "\n");
    written.push_back(idx);
    return written;
}

/// Curves and times from a trajectory index; diagnostics are left empty.
inline FlowTrajectory read_trajectory(const fs::path& index) {
    const json j = parse_json(read_text(index), index.string());
    FlowTrajectory traj;
    try {
        traj.stop_reason = j.value("stop_reason", std::string{});
        traj.steps = j.value("steps", std::size_t{0});
        for (const auto& fr : j.at("frames")) {
            traj.times.push_back(fr.at("time").get<double>());
            traj.curves.push_back(read_curve(index.parent_path() / fr.at("file").get<std::string>()));
            traj.diagnostics.emplace_back();
        }
    } catch (const json::exception& e) {
        throw Error("malformed-input", std::string("trajectory index: ") + e.what());
    }
    return traj;
}

}  // namespace geoflow::io
