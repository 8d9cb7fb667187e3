#pragma once

// File formats.
//
// Fixed points:  {"n": 3, "points": [{"mu": "5/2", "weights": [1, -1, 1], "label": [2]}, ...]}
// Polytopes:     {"kind": "box", "sides": [[0, 2], [0, "3/2"]]}
//                {"kind": "standard_simplex", "dimension": 3, "scale": 1}
//                {"kind": "product", "factors": [<polytope>, ...]}
//                {"kind": "simplices", "simplices": [[[x, y], ...], ...], "trusted": false}
//                {"kind": "vertex_hull", "points": [[x, y, z], ...]}
// Rationals are JSON integers or strings "p", "p/q" or decimals; JSON floats
// are rejected. Labels are lists of 1-based indices.

#include "dhlab/fixed_points.hpp"
#include "dhlab/piecewise.hpp"
#include "dhlab/polytope.hpp"

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>
#include <string>

namespace dhlab {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::string line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline const Json& field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) throw InputError(where + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw InputError(where + ": missing field \"" + key + "\"");
    return *it;
}

inline const Json& array_field(const Json& j, const char* key, const std::string& where) {
    const Json& a = field(j, key, where);
    if (!a.is_array()) throw InputError(where + "." + key + ": expected an array");
    return a;
}

} // namespace detail

inline Json parse_json_text(const std::string& text, const std::string& source) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(source + ": malformed JSON at " + detail::line_col(text, e.byte == 0 ? 0 : e.byte - 1));
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Temp file in the target directory, then rename over the target.
inline void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp" + std::to_string(std::random_device{}());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError(path + ": cannot write");
        out << content;
        out.flush();
        if (!out) {
            fs::remove(tmp);
            throw InputError(path + ": write failed");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw InputError(path + ": " + ec.message());
    }
}

inline Rational rational_from_json(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return j.is_number_unsigned() ? Rational(j.get<std::uint64_t>()) : Rational(j.get<std::int64_t>());
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const InputError& e) {
            throw InputError(where + ": " + e.what());
        }
    }
    if (j.is_number_float()) throw InputError(where + ": floating-point value; write it as a \"p/q\" string");
    throw InputError(where + ": expected a rational (integer or \"p/q\" string)");
}

inline Json rational_to_json(const Rational& q) {
    if (is_integer(q) && abs(q) < Rational(std::int64_t{1} << 53)) return num(q).convert_to<std::int64_t>();
    return to_string(q);
}

inline long long integer_from_json(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) throw InputError(where + ": expected an integer");
    return j.get<long long>();
}

inline FixedPointSet fixed_points_from_json(const Json& j, const std::string& source) {
    const long long n = integer_from_json(detail::field(j, "n", source), source + ".n");
    if (n < 1 || n > kMaxHalfDimension) throw InputError(source + ".n: out of range [1, " + std::to_string(kMaxHalfDimension) + "]");
    const Json& arr = detail::array_field(j, "points", source);
    std::vector<FixedPointDatum> pts;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string where = source + ".points[" + std::to_string(i) + "]";
        const Json& p = arr[i];
        FixedPointDatum d;
        d.mu = rational_from_json(detail::field(p, "mu", where), where + ".mu");
        const Json& w = detail::array_field(p, "weights", where);
        for (std::size_t k = 0; k < w.size(); ++k) {
            const std::string wk = where + ".weights[" + std::to_string(k) + "]";
            const long long x = integer_from_json(w[k], wk);
            if (x == 0) throw InputError(wk + ": zero weight (fixed points must be isolated)");
            if (x > std::numeric_limits<int>::max() || x < std::numeric_limits<int>::min()) throw InputError(wk + ": out of range");
            d.weights.push_back(static_cast<int>(x));
        }
        if (p.contains("label") && !p["label"].is_null()) {
            const Json& l = detail::array_field(p, "label", where);
            std::vector<int> elems;
            for (std::size_t k = 0; k < l.size(); ++k) {
                const long long e = integer_from_json(l[k], where + ".label[" + std::to_string(k) + "]");
                if (e < 1 || e > n) throw InputError(where + ".label[" + std::to_string(k) + "]: index outside 1.." + std::to_string(n));
                elems.push_back(static_cast<int>(e));
            }
            d.label = make_subset(elems, static_cast<int>(n));
        }
        pts.push_back(std::move(d));
    }
    try {
        return {static_cast<int>(n), std::move(pts)};
    } catch (const InputError& e) {
        throw InputError(source + ": " + e.what());
    }
}

inline Json fixed_points_to_json(const FixedPointSet& s) {
    Json pts = Json::array();
    for (const auto& p : s.points()) {
        Json o;
        o["mu"] = rational_to_json(p.mu);
        o["weights"] = p.weights;
        if (p.label) o["label"] = subset_elements(*p.label);
        pts.push_back(std::move(o));
    }
    Json j;
    j["n"] = s.n();
    j["points"] = std::move(pts);
    return j;
}

inline FixedPointSet load_fixed_points(const std::string& path) {
    return fixed_points_from_json(parse_json_text(read_file(path), path), path);
}

inline Point point_from_json(const Json& j, const std::string& where) {
    if (!j.is_array()) throw InputError(where + ": expected an array of coordinates");
    Point p;
    for (std::size_t k = 0; k < j.size(); ++k) p.push_back(rational_from_json(j[k], where + "[" + std::to_string(k) + "]"));
    return p;
}

inline PolytopeSpec polytope_from_json(const Json& j, const std::string& where) {
    const Json& kind_field = detail::field(j, "kind", where);
    if (!kind_field.is_string()) throw InputError(where + ".kind: expected a string");
    const std::string kind = kind_field.get<std::string>();
    if (kind == "box") {
        BoxSpec b;
        const Json& sides = detail::array_field(j, "sides", where);
        for (std::size_t i = 0; i < sides.size(); ++i) {
            const std::string w = where + ".sides[" + std::to_string(i) + "]";
            if (!sides[i].is_array() || sides[i].size() != 2) throw InputError(w + ": expected [lo, hi]");
            b.sides.emplace_back(rational_from_json(sides[i][0], w + "[0]"), rational_from_json(sides[i][1], w + "[1]"));
        }
        return {b};
    }
    if (kind == "standard_simplex") {
        StandardSimplexSpec s;
        const long long d = integer_from_json(detail::field(j, "dimension", where), where + ".dimension");
        if (d < 1 || d > 64) throw InputError(where + ".dimension: out of range");
        s.dimension = static_cast<std::size_t>(d);
        if (j.contains("scale")) s.scale = rational_from_json(j["scale"], where + ".scale");
        return {s};
    }
    if (kind == "product") {
        ProductSpec pr;
        const Json& f = detail::array_field(j, "factors", where);
        for (std::size_t i = 0; i < f.size(); ++i) pr.factors.push_back(polytope_from_json(f[i], where + ".factors[" + std::to_string(i) + "]"));
        return {pr};
    }
    if (kind == "simplices") {
        SimplicesSpec s;
        const Json& list = detail::array_field(j, "simplices", where);
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string w = where + ".simplices[" + std::to_string(i) + "]";
            if (!list[i].is_array()) throw InputError(w + ": expected a list of vertices");
            Simplex x;
            for (std::size_t k = 0; k < list[i].size(); ++k) x.vertices.push_back(point_from_json(list[i][k], w + "[" + std::to_string(k) + "]"));
            s.simplices.push_back(std::move(x));
        }
        if (j.contains("trusted")) {
            if (!j["trusted"].is_boolean()) throw InputError(where + ".trusted: expected a boolean");
            s.trusted = j["trusted"].get<bool>();
        }
        return {s};
    }
    if (kind == "vertex_hull") {
        VertexHullSpec h;
        const Json& pts = detail::array_field(j, "points", where);
        for (std::size_t i = 0; i < pts.size(); ++i) h.points.push_back(point_from_json(pts[i], where + ".points[" + std::to_string(i) + "]"));
        return {h};
    }
    throw InputError(where + ".kind: unknown kind \"" + kind + "\"");
}

inline PolytopeSpec load_polytope(const std::string& path) {
    return polytope_from_json(parse_json_text(read_file(path), path), path);
}

inline Json piecewise_to_json(const PiecewisePoly& f) {
    Json bp = Json::array();
    for (const auto& b : f.breakpoints()) bp.push_back(to_string(b));
    Json pieces = Json::array();
    for (const auto& p : f.pieces()) {
        Json c = Json::array();
        for (const auto& x : p.coefficients()) c.push_back(to_string(x));
        pieces.push_back(Json{{"coefficients", std::move(c)}, {"text", to_string(p)}});
    }
    return Json{{"breakpoints", std::move(bp)}, {"pieces", std::move(pieces)}};
}

/// Grid points lower + k*step, plus every breakpoint, sorted and deduplicated.
inline std::vector<std::pair<Rational, bool>> plot_grid(const PiecewisePoly& f, const Rational& step) {
    if (step <= 0) throw InputError("plot step must be positive");
    std::map<Rational, bool> rows; // value -> is breakpoint
    for (Rational t = f.lower(); t <= f.upper(); t += step) rows.emplace(t, false);
    for (const auto& b : f.breakpoints()) rows[b] = true;
    return {rows.begin(), rows.end()};
}

/// Columns t, DH(t) as exact rationals, a decimal DH, and the row kind.
inline std::string plot_csv(const PiecewisePoly& f, const Rational& step) {
    std::ostringstream out;
    out << "t,dh,dh_decimal,kind\n";
    out << std::setprecision(17);
    for (const auto& [t, is_break] : plot_grid(f, step))
        out << to_string(t) << ',' << to_string(f(t)) << ',' << to_double(f(t)) << ',' << (is_break ? "breakpoint" : "grid") << '\n';
    return out.str();
}

/// Two stacked panels: DH(t) and log DH(t), polylines with ticks at the breakpoints.
inline std::string plot_svg(const PiecewisePoly& f, const std::string& title) {
    constexpr double width = 640;
    constexpr double panel = 240;
    constexpr double margin = 48;
    const double t0 = to_double(f.lower());
    const double t1 = to_double(f.upper());

    std::vector<double> ts;
    std::vector<double> ys;
    constexpr int per_piece = 64;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Rational a = f.breakpoints()[i];
        const Rational b = f.breakpoints()[i + 1];
        for (int k = 0; k <= per_piece; ++k) {
            const Rational t = a + (b - a) * Rational(k, per_piece);
            ts.push_back(to_double(t));
            ys.push_back(to_double(f.pieces()[i](t)));
        }
    }
    const double ymax = std::max(1e-300, *std::max_element(ys.begin(), ys.end()));
    double lmin = 0;
    double lmax = std::log(ymax);
    bool have_log = false;
    for (double y : ys)
        if (y > 0) {
            lmin = have_log ? std::min(lmin, std::log(y)) : std::log(y);
            have_log = true;
        }
    if (lmax - lmin < 1e-12) lmin = lmax - 1;

    auto sx = [&](double t) { return margin + (width - 2 * margin) * (t - t0) / (t1 - t0); };
    std::ostringstream svg;
    svg << std::fixed << std::setprecision(2);
    const double height = 2 * panel + 3 * margin;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\" viewBox=\"0 0 " << width
        << ' ' << height << "\">\n";
    svg << "<title>" << title << "</title>\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    auto draw_panel = [&](double top, const char* label, auto value, double lo, double hi, bool skip_nonpositive) {
        const double bottom = top + panel;
        auto sy = [&](double y) { return bottom - panel * (y - lo) / (hi - lo); };
        svg << "<text x=\"" << margin << "\" y=\"" << top - 8 << "\" font-family=\"sans-serif\" font-size=\"13\">" << label << "</text>\n";
        svg << "<line x1=\"" << margin << "\" y1=\"" << bottom << "\" x2=\"" << width - margin << "\" y2=\"" << bottom
            << "\" stroke=\"black\"/>\n";
        svg << "<line x1=\"" << margin << "\" y1=\"" << top << "\" x2=\"" << margin << "\" y2=\"" << bottom << "\" stroke=\"black\"/>\n";
        for (const auto& b : f.breakpoints()) {
            const double x = sx(to_double(b));
            svg << "<line x1=\"" << x << "\" y1=\"" << bottom << "\" x2=\"" << x << "\" y2=\"" << bottom + 5 << "\" stroke=\"black\"/>\n";
            svg << "<text x=\"" << x << "\" y=\"" << bottom + 18 << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
                << to_string(b) << "</text>\n";
        }
        // split the polyline wherever the value is undefined
        std::string pts;
        auto flush = [&] {
            if (!pts.empty()) svg << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.5\" points=\"" << pts << "\"/>\n";
            pts.clear();
        };
        for (std::size_t i = 0; i < ts.size(); ++i) {
            if (skip_nonpositive && ys[i] <= 0) {
                flush();
                continue;
            }
            std::ostringstream p;
            p << std::fixed << std::setprecision(2) << sx(ts[i]) << ',' << sy(value(ys[i])) << ' ';
            pts += p.str();
        }
        flush();
    };
    draw_panel(margin, "DH(t)", [](double y) { return y; }, 0.0, ymax, false);
    if (have_log) draw_panel(2 * margin + panel, "log DH(t)", [](double y) { return std::log(y); }, lmin, lmax, true);
    svg << "</svg>\n";
    return svg.str();
}

} // namespace dhlab
