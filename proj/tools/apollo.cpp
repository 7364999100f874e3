// apollo: exact-arithmetic Apollonian circle packing toolkit.
//
// Subcommands: count, reduce, primes, fit, modp, render, verify.
// Counts are exact; identical configurations give bit-identical output for
// any worker count.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "apollo/analysis.hpp"
#include "apollo/arithmetic.hpp"
#include "apollo/geometry.hpp"
#include "apollo/orbit.hpp"

using namespace apollo;
using nlohmann::json;

namespace {

constexpr int kExitInvalidInput = 2;
constexpr int kExitOverflow = 3;
constexpr int kExitInvariant = 4;
constexpr int kExitResource = 5;
constexpr int kExitNumeric = 6;

json json_int(Int v) {
    if (v >= static_cast<Int>(INT64_MIN) && v <= static_cast<Int>(INT64_MAX))
        return static_cast<std::int64_t>(v);
    return to_string(v);
}

json quad_json(const Quadruple& q) {
    json a = json::array();
    for (int i = 0; i < 4; ++i) a.push_back(json_int(q[i]));
    return a;
}

Quadruple parse_quadruple(const std::string& text) {
    std::vector<Int> vals;
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) vals.push_back(parse_int(cell));
    if (vals.size() != 4)
        throw InvalidInputError("expected four comma-separated curvatures, got: " + text);
    return Quadruple(vals[0], vals[1], vals[2], vals[3]);
}

// Accepts any packing quadruple; reduces to the root unless --strict, and
// reports the reduction so runs stay reproducible.
RootQuadruple resolve_root(const std::string& text, bool strict) {
    Quadruple q = parse_quadruple(text);
    if (!is_descartes(q))
        throw InvalidInputError("not a Descartes quadruple (form = " +
                                to_string(descartes_form(q)) + ")");
    if (is_root(q)) return RootQuadruple::from_quadruple(q);
    if (strict) throw InvalidInputError("not a root quadruple (rerun without --strict): " + q.str());
    Reduction red = reduce_to_root(q);
    std::cerr << "note: reduced " << q.str() << " -> " << red.root.quad().str() << " via "
              << red.flips.size() << " flip(s)\n";
    return red.root;
}

int default_workers() {
    if (const char* env = std::getenv("APOLLO_WORKERS")) {
        int w = std::atoi(env);
        if (w >= 1) return w;
    }
    return 1;
}

ThresholdGrid make_grid(Int tmax, Int t0, int steps, double ratio) {
    if (tmax <= 0) throw InvalidInputError("--tmax must be positive");
    if (steps <= 1 && ratio <= 0) return ThresholdGrid::single(tmax);
    if (t0 <= 0) t0 = std::min<Int>(10, tmax);
    if (ratio > 0) {
        if (ratio <= 1) throw InvalidInputError("--ratio must exceed 1");
        double span = std::log(static_cast<double>(tmax) / static_cast<double>(t0));
        steps = std::max(2, static_cast<int>(std::lround(span / std::log(ratio))) + 1);
    }
    return ThresholdGrid::geometric(t0, tmax, steps);
}

std::ostream& open_sink(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw InvalidInputError("cannot open output file: " + path);
    return file;
}

void stream_events(const RootQuadruple& root, Int bound, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InvalidInputError("cannot open events file: " + path);
    bool jsonl = path.size() > 6 && path.substr(path.size() - 6) == ".jsonl";
    if (!jsonl) out << "curvature,depth,parent1,parent2,parent3\n";
    enumerate_circles(root, bound, [&](const CircleEvent& ev) {
        if (jsonl) {
            json j = {{"curvature", json_int(ev.curvature)},
                      {"depth", ev.depth},
                      {"parents", {json_int(ev.parents[0]), json_int(ev.parents[1]),
                                   json_int(ev.parents[2])}}};
            out << j.dump() << "\n";
        } else {
            out << to_string(ev.curvature) << "," << ev.depth << "," << to_string(ev.parents[0])
                << "," << to_string(ev.parents[1]) << "," << to_string(ev.parents[2]) << "\n";
        }
    });
}

// ---------------------------------------------------------------------------
// verify: the built-in invariant suite with optional planted corruption for
// exercising the failure path.
// ---------------------------------------------------------------------------

struct VerifyState {
    bool corrupt_generator = false;
    bool corrupt_pairs = false;
    int failures = 0;

    void report(const std::string& name, bool ok, const std::string& detail = "") {
        std::cout << (ok ? "PASS " : "FAIL ") << name;
        if (!ok && !detail.empty()) std::cout << ": " << detail;
        std::cout << "\n";
        if (!ok) ++failures;
    }
};

void verify_algebra(VerifyState& st, const RootQuadruple& root) {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> slot(1, 4);
    bool ok = true;
    std::string detail;
    Quadruple q = root.quad();
    for (int step = 0; step < 4000 && ok; ++step) {
        if (step % 20 == 0) q = root.quad();
        int s = slot(rng);
        Quadruple f = flip(q, s);
        if (descartes_form(f) != 0) {
            ok = false;
            detail = "form broken at " + f.str();
        }
        if (flip(f, s) != q) {
            ok = false;
            detail = "involution broken at " + q.str();
        }
        q = f;
    }
    st.report("exact algebra (form + involution) on " + root.quad().str(), ok, detail);
}

void verify_generators(VerifyState& st, const RootQuadruple& root) {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> slot(1, 4);
    bool ok = true;
    std::string detail;
    Quadruple q = root.quad();
    for (int step = 0; step < 2000 && ok; ++step) {
        if (step % 20 == 0) q = root.quad();
        int s = slot(rng);
        Quadruple expect = flip(q, s);
        Quadruple got;
        if (st.corrupt_generator) {
            Mat4i m = generator(s);
            m[0][1] += 1;  // planted corruption
            for (int j = 0; j < 4; ++j) {
                Int acc = 0;
                for (int k = 0; k < 4; ++k) acc = checked_add(acc, checked_mul(m[j][k], q[k]));
                got[j] = acc;
            }
        } else {
            got = apply_generator(q, s);
        }
        if (got != expect) {
            ok = false;
            detail = "matrix/flip disagreement at " + q.str() + " slot " + std::to_string(s);
        }
        q = expect;
    }
    st.report("generator matrices agree with flips", ok, detail);
}

void verify_counts(VerifyState& st, const RootQuadruple& root, Int tmax) {
    ThresholdGrid grid = ThresholdGrid::geometric(4, tmax, 9);
    try {
        CountSeries s = count_series(root, grid);
        bool ok = true;
        std::string detail;
        for (std::size_t i = 0; i < s.size() && ok; ++i) {
            if (s.thresholds[i] <= root.max_entry()) continue;
            std::int64_t n2 = s.n2[i] + (st.corrupt_pairs ? 1 : 0);
            if (n2 != 3 * s.n[i] - 6) {
                ok = false;
                detail = "N2 != 3N-6 at T = " + to_string(s.thresholds[i]);
            }
        }
        st.report("pair identity N2 = 3N - 6 on " + root.quad().str(), ok, detail);
    } catch (const Error& e) {
        st.report("pair identity N2 = 3N - 6 on " + root.quad().str(), false, e.what());
    }
}

void verify_geometry(VerifyState& st, const RootQuadruple& root) {
    bool ok = true;
    std::string detail;
    try {
        struct Node {
            ConfigMatrix w;
            int last, depth;
        };
        std::vector<Node> stack{{ConfigMatrix::standard_embedding(root), 0, 0}};
        while (!stack.empty() && ok) {
            Node n = std::move(stack.back());
            stack.pop_back();
            for (int i = 1; i <= 4 && ok; ++i)
                for (int j = i + 1; j <= 4; ++j)
                    if (!tangency_check(n.w.row(i), n.w.row(j))) {
                        ok = false;
                        detail = "tangency failed at depth " + std::to_string(n.depth);
                    }
            if (ok && conjugation_check(n.w) > 1e-6) {
                ok = false;
                detail = "conjugation residual above 1e-6";
            }
            if (n.depth == 3) continue;
            for (int slot = 1; slot <= 4; ++slot) {
                if (slot == n.last) continue;
                stack.push_back(Node{propagate(n.w, slot), slot, n.depth + 1});
            }
        }
    } catch (const Error& e) {
        ok = false;
        detail = e.what();
    }
    st.report("geometry residuals (tangency + conjugation) on " + root.quad().str(), ok, detail);
}

void verify_modp(VerifyState& st, const RootQuadruple& root) {
    try {
        std::vector<bool> cone_members;
        ConeCount cone = cone_points_mod_p(7, &cone_members);
        ModOrbit orbit = orbit_mod(root.quad(), 7);
        bool good = orbit_fills_cone(orbit, cone, cone_members);
        st.report("mod-7 orbit closure equals the cone", good,
                  "orbit " + std::to_string(orbit.size) + " vs cone " + std::to_string(cone.points));
    } catch (const Error& e) {
        st.report("mod-7 orbit closure equals the cone", false, e.what());
    }
}

int run_verify(bool corrupt_generator, bool corrupt_pairs, const std::string& root_text, Int tmax) {
    VerifyState st;
    st.corrupt_generator = corrupt_generator;
    st.corrupt_pairs = corrupt_pairs;
    std::vector<RootQuadruple> roots;
    if (!root_text.empty()) {
        roots.push_back(resolve_root(root_text, false));
    } else {
        roots.push_back(RootQuadruple::from_quadruple(Quadruple(-1, 2, 2, 3)));
        roots.push_back(RootQuadruple::from_quadruple(Quadruple(0, 0, 1, 1)));
    }
    for (const RootQuadruple& r : roots) {
        verify_algebra(st, r);
        verify_generators(st, r);
        verify_counts(st, r, tmax);
        verify_geometry(st, r);
    }
    if (primitive_content(roots.front().quad()) == 1) verify_modp(st, roots.front());
    std::cout << (st.failures == 0 ? "verify: all checks passed\n"
                                   : "verify: " + std::to_string(st.failures) + " check(s) failed\n");
    return st.failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact-arithmetic Apollonian circle packing toolkit"};
    app.require_subcommand(1);

    std::string root_text;
    std::string out_path;
    std::string events_path;
    std::string series_path;
    std::string format = "csv";
    std::string primes_list;
    bool strict = false;
    bool labels = false;
    std::int64_t tmax = 0, t0 = 0, composite = 0;
    std::int64_t window_min = 0, window_max = 0;
    int steps = 1;
    double ratio = 0;
    int workers = default_workers();
    int depth = -1;
    int split_depth = 4;
    std::int64_t element_cap = 100'000;
    int size_px = 800;
    std::uint32_t mod_cap = 101;
    bool corrupt_generator = false, corrupt_pairs = false;

    auto add_root = [&](CLI::App* cmd, bool required = true) {
        auto* opt = cmd->add_option("--root", root_text, "root quadruple a,b,c,d (auto-reduced)");
        if (required) opt->required();
        cmd->add_flag("--strict", strict, "reject quadruples that are not already roots");
    };
    auto add_grid = [&](CLI::App* cmd) {
        cmd->add_option("--tmax", tmax, "curvature bound (strict, counts curvature < T)")
            ->required();
        cmd->add_option("--t0", t0, "first grid threshold (default min(10, tmax))");
        cmd->add_option("--steps", steps, "number of log-spaced thresholds up to tmax");
        cmd->add_option("--ratio", ratio, "grid ratio r > 1 (alternative to --steps)");
    };

    CLI::App* cmd_count = app.add_subcommand("count", "count circles and tangent pairs below T");
    add_root(cmd_count);
    add_grid(cmd_count);
    cmd_count->add_option("--workers", workers, "worker threads (env APOLLO_WORKERS)");
    cmd_count->add_option("--split-depth", split_depth, "subtree split depth for workers");
    cmd_count->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd_count->add_option("--out", out_path, "output file (default stdout)");
    cmd_count->add_option("--events", events_path,
                          "also stream circle events to this file (.csv or .jsonl)");

    CLI::App* cmd_reduce = app.add_subcommand("reduce", "reduce a quadruple to its root");
    cmd_reduce->add_option("quadruple", root_text, "quadruple a,b,c,d")->required();

    CLI::App* cmd_primes = app.add_subcommand("primes", "prime circle and twin pair counts");
    add_root(cmd_primes);
    add_grid(cmd_primes);
    cmd_primes->add_option("--workers", workers, "worker threads");
    cmd_primes->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd_primes->add_option("--out", out_path, "output file (default stdout)");

    CLI::App* cmd_fit = app.add_subcommand("fit", "fit the growth exponent of a count series");
    cmd_fit->add_option("--series", series_path, "CSV series file (T,N,N2,pi,pi2)")->required();
    cmd_fit->add_option("--window-min", window_min, "lowest T in the fit window");
    cmd_fit->add_option("--window-max", window_max, "highest T in the fit window");

    CLI::App* cmd_modp = app.add_subcommand("modp", "orbit closures and densities mod p");
    add_root(cmd_modp);
    cmd_modp->add_option("--primes", primes_list, "comma-separated primes")->required();
    cmd_modp->add_option("--composite", composite, "squarefree composite to cross-check via CRT");
    std::string modp_format = "json";
    cmd_modp->add_option("--cap", mod_cap, "largest allowed modulus");
    cmd_modp->add_option("--format", modp_format, "json or csv")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd_modp->add_option("--out", out_path, "output file (default stdout)");

    std::string dump_config_path;
    CLI::App* cmd_render = app.add_subcommand("render", "render the packing as SVG");
    add_root(cmd_render);
    cmd_render->add_option("--tmax", tmax, "curvature bound");
    cmd_render->add_option("--depth", depth, "depth bound (alternative to --tmax)");
    cmd_render->add_option("--out", out_path, "output SVG file")->required();
    cmd_render->add_flag("--labels", labels, "label circles with their curvature");
    cmd_render->add_option("--element-cap", element_cap, "maximum SVG elements");
    cmd_render->add_option("--size", size_px, "image width in pixels");
    cmd_render->add_option("--dump-config", dump_config_path,
                           "also write the root configuration rows as CSV");

    CLI::App* cmd_verify = app.add_subcommand("verify", "run the built-in invariant suite");
    add_root(cmd_verify, /*required=*/false);
    cmd_verify->add_option("--tmax", tmax, "count bound for the pair identity check");
    cmd_verify->add_flag("--corrupt-generator", corrupt_generator,
                         "plant a generator corruption (negative control)")
        ->group("");
    cmd_verify->add_flag("--corrupt-pairs", corrupt_pairs,
                         "plant a pair-identity mismatch (negative control)")
        ->group("");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_count->parsed()) {
            RootQuadruple root = resolve_root(root_text, strict);
            SeriesOptions opts;
            opts.workers = workers;
            opts.split_depth = split_depth;
            CountSeries series = count_series(root, make_grid(tmax, t0, steps, ratio), opts);
            std::cerr << "note: counted to " << to_string(series.thresholds.back()) << " in "
                      << series.wall_seconds << "s with " << series.workers << " worker(s)\n";
            if (!events_path.empty()) stream_events(root, tmax, events_path);
            std::ofstream file;
            std::ostream& os = open_sink(file, out_path);
            if (format == "json")
                os << report_json(series, nullptr, nullptr) << "\n";
            else
                write_series_csv(os, series);
        } else if (cmd_reduce->parsed()) {
            Quadruple q = parse_quadruple(root_text);
            Reduction red = reduce_to_root(q);
            json j = {{"schema", "1"},
                      {"input", quad_json(q)},
                      {"root", quad_json(red.root.quad())},
                      {"flips", red.flips},
                      {"class", packing_class_name(red.root.packing_class())},
                      {"primitive_content", json_int(primitive_content(q))}};
            std::cout << j.dump(2) << "\n";
        } else if (cmd_primes->parsed()) {
            RootQuadruple root = resolve_root(root_text, strict);
            if (primitive_content(root.quad()) != 1)
                throw InvalidInputError("prime counting requires a primitive root");
            SeriesOptions opts;
            opts.workers = workers;
            CountSeries series = count_series(root, make_grid(tmax, t0, steps, ratio), opts);
            FitResult fit = fit_exponent(series);
            std::vector<RatioRow> ratios = sieve_ratio_report(series, fit.alpha_hat);
            std::ofstream file;
            std::ostream& os = open_sink(file, out_path);
            if (format == "json") {
                os << report_json(series, &fit, &ratios) << "\n";
            } else {
                os << "T,pi,pi2,pi_ratio,pi2_ratio\n";
                for (std::size_t i = 0; i < series.size(); ++i)
                    os << to_string(series.thresholds[i]) << "," << series.pi[i] << ","
                       << series.pi2[i] << "," << ratios[i].pi_ratio << "," << ratios[i].pi2_ratio
                       << "\n";
            }
        } else if (cmd_fit->parsed()) {
            std::ifstream in(series_path);
            if (!in) throw InvalidInputError("cannot open series file: " + series_path);
            CountSeries series = read_series_csv(in);
            FitResult fit = fit_exponent(series, FitWindow{window_min, window_max});
            json j = {{"schema", "1"},
                      {"alpha_hat", fit.alpha_hat},
                      {"c_hat", fit.c_hat},
                      {"rms_residual", fit.rms_residual},
                      {"points", fit.points},
                      {"window", {json_int(series.thresholds[fit.first_index]),
                                  json_int(series.thresholds[fit.last_index])}},
                      {"alpha_reference", kResidualDimension},
                      {"alpha_deviation", fit.alpha_hat - kResidualDimension}};
            std::cout << j.dump(2) << "\n";
        } else if (cmd_modp->parsed()) {
            RootQuadruple root = resolve_root(root_text, strict);
            ModOrbitOptions mopts;
            mopts.max_modulus = mod_cap;
            json out = json::array();
            std::stringstream ss(primes_list);
            std::string cell;
            std::vector<std::uint32_t> primes;
            while (std::getline(ss, cell, ','))
                primes.push_back(static_cast<std::uint32_t>(parse_int(cell)));
            for (std::uint32_t p : primes) {
                if (!is_prime(static_cast<Int>(p)))
                    throw InvalidInputError("--primes entries must be prime: " + std::to_string(p));
                std::vector<bool> cone_members;
                ConeCount cone = cone_points_mod_p(p, &cone_members, mopts);
                ModOrbit orbit = orbit_mod(root.quad(), p, mopts);
                Rational g1 = local_density(orbit, SlicePoly::X1);
                Rational g2 = local_density(orbit, SlicePoly::X1X2);
                out.push_back({{"p", p},
                               {"orbit", orbit.size},
                               {"cone", cone.points},
                               {"slice_x1", orbit.slice_x1},
                               {"slice_x1x2", orbit.slice_x1x2},
                               {"good", orbit_fills_cone(orbit, cone, cone_members)},
                               {"g1", g1.str()},
                               {"g1_value", g1.value()},
                               {"g2", g2.str()},
                               {"g2_value", g2.value()}});
            }
            if (modp_format == "csv") {
                std::ofstream file;
                std::ostream& os = open_sink(file, out_path);
                os << "p,orbit,cone,slice_x1,slice_x1x2,good,g1,g2\n";
                for (const auto& row : out)
                    os << row["p"] << "," << row["orbit"] << "," << row["cone"] << ","
                       << row["slice_x1"] << "," << row["slice_x1x2"] << ","
                       << (row["good"].get<bool>() ? 1 : 0) << ","
                       << row["g1"].get<std::string>() << "," << row["g2"].get<std::string>()
                       << "\n";
                return 0;
            }
            json j = {{"schema", "1"}, {"root", quad_json(root.quad())}, {"primes", out}};
            if (composite > 0) {
                std::vector<std::uint32_t> factors;
                std::int64_t rem = composite;
                for (std::int64_t f = 2; f * f <= rem; ++f)
                    while (rem % f == 0) {
                        factors.push_back(static_cast<std::uint32_t>(f));
                        rem /= f;
                    }
                if (rem > 1) factors.push_back(static_cast<std::uint32_t>(rem));
                for (std::size_t i = 1; i < factors.size(); ++i)
                    if (factors[i] == factors[i - 1])
                        throw InvalidInputError("--composite must be squarefree");
                Rational g1 = local_density_product(root.quad(), factors, SlicePoly::X1, mopts);
                Rational g2 = local_density_product(root.quad(), factors, SlicePoly::X1X2, mopts);
                json cj = {{"d", composite},
                           {"g1_product", g1.str()},
                           {"g2_product", g2.str()}};
                if (static_cast<std::uint32_t>(composite) <= mopts.max_modulus) {
                    ModOrbit od = orbit_mod(root.quad(), static_cast<std::uint32_t>(composite), mopts);
                    cj["g1_direct"] = local_density(od, SlicePoly::X1).str();
                    cj["g2_direct"] = local_density(od, SlicePoly::X1X2).str();
                    cj["crt_consistent"] = local_density(od, SlicePoly::X1) == g1 &&
                                           local_density(od, SlicePoly::X1X2) == g2;
                }
                j["composite"] = cj;
            }
            std::ofstream file;
            std::ostream& os = open_sink(file, out_path);
            os << j.dump(2) << "\n";
        } else if (cmd_render->parsed()) {
            RootQuadruple root = resolve_root(root_text, strict);
            if (tmax <= 0 && depth < 0)
                throw InvalidInputError("render needs --tmax or --depth");
            RenderOptions ropts;
            ropts.bound = tmax;
            if (depth >= 0) ropts.max_depth = depth;
            ropts.labels = labels;
            ropts.element_cap = static_cast<std::size_t>(element_cap);
            ropts.size_px = size_px;
            std::ofstream file(out_path);
            if (!file) throw InvalidInputError("cannot open output file: " + out_path);
            file << render_svg(root, ropts);
            if (!dump_config_path.empty()) {
                std::ofstream cfg(dump_config_path);
                if (!cfg) throw InvalidInputError("cannot open config file: " + dump_config_path);
                ConfigMatrix w = ConfigMatrix::standard_embedding(root);
                cfg << "cocurv,curv,cx,cy\n";
                cfg.precision(17);
                for (int slot = 1; slot <= 4; ++slot) {
                    const CircleRow& r = w.row(slot);
                    cfg << r.cocurv << "," << r.curv << "," << r.cx << "," << r.cy << "\n";
                }
            }
        } else if (cmd_verify->parsed()) {
            return run_verify(corrupt_generator, corrupt_pairs, root_text,
                              tmax > 0 ? tmax : 2000);
        }
    } catch (const InvalidInputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const OverflowError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitOverflow;
    } catch (const InvariantError& e) {
        std::cerr << "internal invariant violated: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const ResourceError& e) {
        std::cerr << "resource cap exceeded: " << e.what() << "\n";
        return kExitResource;
    } catch (const NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
