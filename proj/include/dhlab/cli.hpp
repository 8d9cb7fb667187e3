#pragma once

// The dhlab command line. run() is the whole program; main() only forwards.
//
// Exit codes: 0 ok, 1 input error, 2 verdict violated, 3 internal invariant breach.

#include "dhlab/cohomology.hpp"
#include "dhlab/dh.hpp"
#include "dhlab/io.hpp"
#include "dhlab/monte_carlo.hpp"
#include "dhlab/polytope.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <ostream>
#include <string>
#include <vector>

namespace dhlab::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kViolated = 2, kInvariantBreach = 3 };

namespace detail {

inline std::vector<Rational> parse_list(const std::string& text, const char* what) {
    std::vector<Rational> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        try {
            out.push_back(parse_rational(item));
        } catch (const InputError& e) {
            throw InputError(std::string(what) + ": " + e.what());
        }
    }
    if (out.empty()) throw InputError(std::string(what) + ": empty list");
    return out;
}

inline unsigned env_threads() {
    const char* v = std::getenv("DH_LAB_THREADS");
    if (v == nullptr || *v == '\0') return 0;
    char* end = nullptr;
    const long x = std::strtol(v, &end, 10);
    if (*end != '\0' || x < 1 || x > 1024) throw InputError("DH_LAB_THREADS must be an integer in [1, 1024]");
    return static_cast<unsigned>(x);
}

/// Loads fixed points, filling in labels when the file has none.
inline FixedPointSet load_labeled(const std::string& path) {
    FixedPointSet s = load_fixed_points(path);
    if (!s.labeled()) s = reconstruct_labels(s);
    return s;
}

inline void emit(std::ostream& out, const std::string& path, const std::string& content) {
    if (path.empty())
        out << content;
    else
        write_file_atomic(path, content);
}

inline void print_betti(std::ostream& out, const std::vector<int>& betti) {
    out << "betti:";
    for (int b : betti) out << ' ' << b;
    out << '\n';
}

} // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Duistermaat-Heckman functions, log-concavity and hard Lefschetz checks"};
    app.name("dhlab");
    app.require_subcommand(1);

    std::string input;
    std::string output;
    std::string polytope_path;
    std::string at;
    std::string level;
    std::string direction;
    std::string sizes;
    std::string min_level = "0";
    std::string csv_path;
    std::string svg_path;
    std::string step = "1/4";
    std::uint64_t samples = 0;
    std::uint64_t seed = 1;
    unsigned workers = 0;
    bool ambient = false;
    bool as_json = false;

    auto* validate_cmd = app.add_subcommand("validate", "Check fixed-point data: index counts, semifreeness, levels");
    validate_cmd->add_option("-i,--input", input, "fixed-point JSON")->required();

    auto* dh_cmd = app.add_subcommand("dh", "Exact DH function, or its value at --at");
    dh_cmd->add_option("-i,--input", input, "fixed-point JSON")->required();
    dh_cmd->add_option("--at", at, "evaluation point (rational)");
    dh_cmd->add_flag("--json", as_json, "print the piecewise polynomial as JSON");

    auto* check_cmd = app.add_subcommand("check", "Decide log-concavity of DH");
    check_cmd->add_option("-i,--input", input, "fixed-point JSON")->required();

    auto* jumps_cmd = app.add_subcommand("jumps", "Check the jump of DH at every interior critical value");
    jumps_cmd->add_option("-i,--input", input, "fixed-point JSON")->required();

    auto* spheres_cmd = app.add_subcommand("gen-spheres", "Fixed points of the diagonal action on a product of spheres");
    spheres_cmd->add_option("--sizes", sizes, "comma-separated rational sizes")->required();
    spheres_cmd->add_option("--min", min_level, "moment value of the lowest point");
    spheres_cmd->add_option("-o,--output", output, "output path (default stdout)");

    auto* toric_cmd = app.add_subcommand("gen-toric", "Fixed points of a toric circle from a box/simplex/product polytope");
    toric_cmd->add_option("-p,--polytope", polytope_path, "polytope JSON")->required();
    toric_cmd->add_option("-d,--direction", direction, "comma-separated integer direction")->required();
    toric_cmd->add_option("-o,--output", output, "output path (default stdout)");

    auto* oracle_cmd = app.add_subcommand("oracle", "Exact slice density of a polytope; optional Monte Carlo estimate");
    oracle_cmd->add_option("-p,--polytope", polytope_path, "polytope JSON")->required();
    oracle_cmd->add_option("-d,--direction", direction, "comma-separated rational direction")->required();
    oracle_cmd->add_option("--at", at, "evaluation point (rational)");
    oracle_cmd->add_option("--samples", samples, "Monte Carlo samples at --at (>= 1000)");
    oracle_cmd->add_option("--seed", seed, "Monte Carlo seed");
    oracle_cmd->add_option("--workers", workers, "Monte Carlo workers (default DH_LAB_THREADS or 1)");
    oracle_cmd->add_flag("--json", as_json, "print the piecewise polynomial as JSON");

    auto* coh_cmd = app.add_subcommand("cohomology", "Kirwan kernel dimensions and Betti numbers of a reduced space");
    coh_cmd->add_option("-i,--input", input, "fixed-point JSON")->required();
    coh_cmd->add_option("--level", level, "regular value")->required();

    auto* lef_cmd = app.add_subcommand("lefschetz", "Hard Lefschetz check for a reduced space or the manifold");
    lef_cmd->add_option("-i,--input", input, "fixed-point JSON")->required();
    auto* level_opt = lef_cmd->add_option("--level", level, "regular value");
    auto* ambient_opt = lef_cmd->add_flag("--ambient", ambient, "check the manifold itself");
    level_opt->excludes(ambient_opt);

    auto* plot_cmd = app.add_subcommand("plot", "CSV and SVG of DH and log DH");
    plot_cmd->add_option("-i,--input", input, "fixed-point JSON")->required();
    plot_cmd->add_option("--csv", csv_path, "CSV output path");
    plot_cmd->add_option("--svg", svg_path, "SVG output path");
    plot_cmd->add_option("--step", step, "grid step (rational)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (validate_cmd->parsed()) {
            const auto s = load_fixed_points(input);
            const auto r = validate(s);
            out << "n: " << s.n() << '\n';
            out << "points: " << s.size() << '\n';
            out << "semifree: " << (r.is_semifree ? "true" : "false") << '\n';
            out << "index_counts:";
            for (int c : r.index_counts) out << ' ' << c;
            out << "\nbinomial_counts: " << (r.binomial_ok ? "true" : "false") << '\n';
            out << "levels:";
            for (const auto& l : r.distinct_levels) out << ' ' << to_string(l);
            out << '\n';
            for (const auto& m : r.messages) out << "note: " << m << '\n';
            return kOk;
        }
        if (dh_cmd->parsed()) {
            const auto s = load_fixed_points(input);
            const auto f = dh_piecewise(s);
            if (!at.empty()) {
                out << to_string(f(parse_rational(at))) << '\n';
            } else if (as_json) {
                out << piecewise_to_json(f).dump(2) << '\n';
            } else {
                for (std::size_t i = 0; i < f.size(); ++i)
                    out << '[' << to_string(f.breakpoints()[i]) << ", " << to_string(f.breakpoints()[i + 1]) << "]: " << f.pieces()[i] << '\n';
            }
            return kOk;
        }
        if (check_cmd->parsed()) {
            const auto s = load_fixed_points(input);
            const auto r = log_concavity_check(s);
            out << "verdict: " << to_string(r.verdict) << '\n';
            if (r.witness) out << "witness: " << to_string(*r.witness) << '\n';
            if (!r.reason.empty()) out << "reason: " << r.reason << '\n';
            for (const auto& p : r.per_piece)
                out << "piece [" << to_string(p.lower) << ", " << to_string(p.upper) << "]: G = " << p.g << "; sign " << to_string(p.sign.kind) << '\n';
            for (const auto& j : r.jump_checks)
                out << "level " << to_string(j.level) << ": value jump " << to_string(j.value_jump) << ", derivative jump "
                    << to_string(j.derivative_jump) << (j.ok ? "" : " (violation)") << '\n';
            if (!r.localization_ok) out << "note: localization identities fail; residue cross-checks skipped\n";
            for (const auto& c : r.cross_checks)
                out << "residue check at " << to_string(c.xi) << ": " << to_string(c.scaled_g) << " = " << to_string(c.coefficiented)
                    << (c.match ? "" : " MISMATCH") << '\n';
            if (!r.cross_check_ok) throw InvariantError("DH and residue sums disagree");
            return r.verdict == Verdict::log_concave ? kOk : kViolated;
        }
        if (jumps_cmd->parsed()) {
            const auto s = load_fixed_points(input);
            bool all = true;
            for (const auto& j : gls_jump_check(s)) {
                out << "level " << to_string(j.level) << ": jump " << to_string(j.jump, "(t - c)") << "; expected "
                    << to_string(j.expected, "(t - c)") << "; smoothness " << j.smoothness << "; " << (j.pass ? "pass" : "FAIL") << '\n';
                all = all && j.pass;
            }
            return all ? kOk : kViolated;
        }
        if (spheres_cmd->parsed()) {
            const auto s = gen_spheres(detail::parse_list(sizes, "--sizes"), parse_rational(min_level));
            detail::emit(out, output, fixed_points_to_json(s).dump(2) + "\n");
            return kOk;
        }
        if (toric_cmd->parsed()) {
            IntVector dir;
            for (const auto& x : detail::parse_list(direction, "--direction")) {
                if (!is_integer(x)) throw InputError("--direction: components must be integers");
                dir.push_back(num(x).convert_to<long long>());
            }
            const auto s = gen_toric(toric_data(load_polytope(polytope_path)), dir);
            detail::emit(out, output, fixed_points_to_json(s).dump(2) + "\n");
            return kOk;
        }
        if (oracle_cmd->parsed()) {
            const auto p = load_polytope(polytope_path);
            const auto xi = detail::parse_list(direction, "--direction");
            const auto g = slice_density(p, xi);
            if (at.empty()) {
                if (samples != 0) throw InputError("--samples needs --at");
                if (as_json) {
                    out << piecewise_to_json(g).dump(2) << '\n';
                } else {
                    for (std::size_t i = 0; i < g.size(); ++i)
                        out << '[' << to_string(g.breakpoints()[i]) << ", " << to_string(g.breakpoints()[i + 1]) << "]: " << g.pieces()[i] << '\n';
                }
                return kOk;
            }
            const Rational t = parse_rational(at);
            out << "density: " << to_string(g(t)) << '\n';
            if (samples != 0) {
                unsigned w = workers != 0 ? workers : std::max(1U, detail::env_threads());
                if (const unsigned cap = detail::env_threads(); cap != 0) w = std::min(w, cap);
                const auto e = mc_density(p, xi, t, samples, seed, w);
                out << std::setprecision(17);
                out << "mc_mean: " << e.mean << '\n';
                out << "mc_standard_error: " << e.standard_error << '\n';
                out << "mc_samples: " << e.samples << '\n';
                out << "mc_seed: " << e.seed << '\n';
                out << "mc_workers: " << e.workers << '\n';
            }
            return kOk;
        }
        if (coh_cmd->parsed()) {
            const auto s = detail::load_labeled(input);
            const Rational xi = parse_rational(level);
            for (int d = 0; d <= 2 * (s.n() - 1); d += 2)
                out << "kernel_dim[" << d << "]: " << kirwan_kernel_dimension(s, xi, d) << " of " << slice_basis(s.n(), d).size() << '\n';
            detail::print_betti(out, reduced_betti(s, xi));
            return kOk;
        }
        if (lef_cmd->parsed()) {
            const auto s = detail::load_labeled(input);
            if (!ambient && level.empty()) throw InputError("lefschetz: give --level or --ambient");
            const auto r = ambient ? ambient_lefschetz_check(s) : hard_lefschetz_check(s, parse_rational(level));
            out << "target: " << (r.level ? "reduced space at " + to_string(*r.level) : std::string("manifold")) << '\n';
            detail::print_betti(out, r.betti);
            out << "poincare_symmetric: " << (r.poincare_symmetric ? "true" : "false") << '\n';
            for (const auto& m : r.maps)
                out << "degree " << m.degree << ": dim " << m.source_dim << " -> " << m.target_dim << ", rank " << m.rank << ", pairing rank "
                    << m.pairing_rank << '\n';
            out << "pairing_nondegenerate: " << (r.pairing_nondegenerate ? "true" : "false") << '\n';
            out << "lefschetz_ok: " << (r.lefschetz_ok ? "true" : "false") << '\n';
            if (r.failing_degree) out << "failing_degree: " << *r.failing_degree << '\n';
            return r.lefschetz_ok ? kOk : kViolated;
        }
        if (plot_cmd->parsed()) {
            if (csv_path.empty() && svg_path.empty()) throw InputError("plot: give --csv and/or --svg");
            const auto s = load_fixed_points(input);
            const auto f = dh_piecewise(s);
            if (!csv_path.empty()) write_file_atomic(csv_path, plot_csv(f, parse_rational(step)));
            if (!svg_path.empty()) write_file_atomic(svg_path, plot_svg(f, "DH function of " + input));
            return kOk;
        }
    } catch (const InvariantError& e) {
        err << "invariant breach: " << e.what() << '\n';
        return kInvariantBreach;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInvariantBreach;
    }
    return kInputError;
}

} // namespace dhlab::cli
