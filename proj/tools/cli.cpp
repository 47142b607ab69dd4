#include "cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nopath/errors.hpp"
#include "nopath/svg.hpp"
#include "nopath/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace nopath::cli {

namespace {

// Missing or unreadable files; mapped to exit code 2 like usage errors.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Rect parse_window(const std::string& s) {
    std::vector<double> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw InvalidArgument("window entries must be numbers: '" + s + "'");
        }
    }
    if (v.size() != 4) throw InvalidArgument("window needs lambda_min,lambda_max,x_min,x_max");
    const Rect r{v[0], v[1], v[2], v[3]};
    if (!(r.xmin < r.xmax && r.ymin < r.ymax)) throw InvalidArgument("window bounds must increase");
    return r;
}

std::string window_string(const Rect& r) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g", r.xmin, r.xmax, r.ymin, r.ymax);
    return buf;
}

void validate(const RunConfig& c) {
    static const std::set<std::string> commands{"build", "verify", "render", "all"};
    if (!commands.count(c.command)) throw InvalidArgument("unknown command '" + c.command + "'");
    if (c.build.stage < 0 || c.build.stage > 8) throw InvalidArgument("--stage must lie in [0, 8]");
    if (c.build.K < 1 || c.build.K > 20) throw InvalidArgument("--K must lie in [1, 20]");
    if (!(c.build.shrink > 0.0 && c.build.shrink <= 0.5)) throw InvalidArgument("shrink must lie in (0, 1/2]");
    if (c.build.r_min < 0.0) throw InvalidArgument("r_min must be nonnegative");
    const int min_grid = c.example == ExampleTag::C ? 256 : 64;
    if (c.grid_n != 0 && (c.grid_n < min_grid || c.grid_n > 8192)) {
        throw InvalidArgument("--grid-n must lie in [" + std::to_string(min_grid) + ", 8192]");
    }
    if (c.tol != -1.0 && !(c.tol >= 0.0)) throw InvalidArgument("--tol must be nonnegative");
}

void apply_file(RunConfig& c, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError("config file " + path + " is not valid JSON: " + e.what());
    }
    if (!j.is_object()) throw InvalidArgument("config file must hold a JSON object");
    static const std::set<std::string> keys{"command", "example", "stage", "K", "grid_n", "tol",
                                            "window", "out", "shrink", "r_min"};
    for (const auto& [k, v] : j.items()) {
        if (!keys.count(k)) throw InvalidArgument("unknown config key '" + k + "'");
    }
    try {
        if (j.contains("command")) c.command = j["command"].get<std::string>();
        if (j.contains("example")) c.example = parse_example(j["example"].get<std::string>());
        if (j.contains("stage")) c.build.stage = j["stage"].get<int>();
        if (j.contains("K")) c.build.K = j["K"].get<int>();
        if (j.contains("grid_n")) c.grid_n = j["grid_n"].get<int>();
        if (j.contains("tol")) c.tol = j["tol"].get<double>();
        if (j.contains("out")) c.out = j["out"].get<std::string>();
        if (j.contains("shrink")) c.build.shrink = j["shrink"].get<double>();
        if (j.contains("r_min")) c.build.r_min = j["r_min"].get<double>();
        if (j.contains("window")) {
            const json& w = j["window"];
            if (w.is_string()) {
                c.build.window = parse_window(w.get<std::string>());
            } else {
                const auto v = w.get<std::vector<double>>();
                if (v.size() != 4) throw InvalidArgument("window needs four numbers");
                c.build.window = Rect{v[0], v[1], v[2], v[3]};
            }
        }
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("config value has the wrong type: ") + e.what());
    }
}

json config_json(const RunConfig& c) {
    const Rect w = c.build.effective_window(c.example);
    return {{"example", to_string(c.example)},
            {"stage", c.build.stage},
            {"K", c.build.K},
            {"shrink", c.build.shrink},
            {"grid_n", c.build.effective_grid_n(c.example)},
            {"r_min", c.build.r_min},
            {"window", window_string(w)}};
}

ExampleConfig example_config(const RunConfig& c) {
    ExampleConfig e = c.build;
    e.grid_n = c.grid_n;
    return e;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw IoError("cannot write " + p.string());
    out << text;
    if (!out) throw IoError("write failed for " + p.string());
}

std::string g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

fs::path example_dir(const RunConfig& c) { return fs::path(c.out) / to_string(c.example); }

int cmd_build(const RunConfig& c, std::ostream& log) {
    const fs::path dir = example_dir(c);
    fs::create_directories(dir);
    const ProblemInstance inst = build_instance(c.example, example_config(c));
    json files = json::object();

    if (inst.scalar) {
        const auto& tower = inst.scalar->tower();
        json stages = json::array();
        for (const Chain& ch : tower) stages.push_back(ch.to_json());
        write_file(dir / "tower.json", json{{"stages", stages}}.dump(1) + "\n");
        write_file(dir / "chain.json", tower.back().to_json().dump(1) + "\n");
        write_file(dir / "cover.json", inst.scalar->cover().to_json().dump() + "\n");
        files["tower"] = "tower.json";
        files["chain"] = "chain.json";
        files["cover"] = "cover.json";

        const double s = inst.window.width() / 256.0;
        const RegionMask lattice(inst.window, s);
        std::ostringstream members, field;
        members << "lambda,x\n";
        field << "lambda,x,r,residual\n";
        for (int r = 0; r < lattice.rows(); ++r) {
            for (int col = 0; col < lattice.cols(); ++col) {
                const Point q = lattice.node(r, col);
                if (inst.scalar->target().contains(q)) members << g17(q.x) << ',' << g17(q.y) << '\n';
                if (r % 4 == 0 && col % 4 == 0) {
                    field << g17(q.x) << ',' << g17(q.y) << ',' << g17(inst.scalar->r(q)) << ','
                          << g17(inst.scalar->residual(q)) << '\n';
                }
            }
        }
        write_file(dir / "target.csv", members.str());
        write_file(dir / "field.csv", field.str());
        files["target"] = "target.csv";
        files["field"] = "field.csv";
    }
    if (inst.profile) {
        const PeriodicProfile& pr = *inst.profile;
        write_file(dir / "cover.json", pr.cover().to_json().dump() + "\n");
        std::ostringstream kappa, grid;
        kappa << "tau,kappa_plus,kappa_minus,Phi_at_pi\n";
        for (int j = 0; j < pr.n_tau(); ++j) {
            kappa << g17(pr.tau(j)) << ',' << g17(pr.kappa_plus()[static_cast<std::size_t>(j)]) << ','
                  << g17(pr.kappa_minus()[static_cast<std::size_t>(j)]) << ',' << g17(pr.Phi(j, pr.n_sigma() - 1))
                  << '\n';
        }
        grid << "sigma,tau,psi,phi,Phi\n";
        for (int j = 0; j < pr.n_tau(); j += 4) {
            for (int i = 0; i < pr.n_sigma(); i += 4) {
                grid << g17(pr.sigma(i)) << ',' << g17(pr.tau(j)) << ',' << g17(pr.psi(j, i)) << ','
                     << g17(pr.phi(j, i)) << ',' << g17(pr.Phi(j, i)) << '\n';
            }
        }
        write_file(dir / "kappa.csv", kappa.str());
        write_file(dir / "profile.csv", grid.str());
        files["cover"] = "cover.json";
        files["kappa"] = "kappa.csv";
        files["profile"] = "profile.csv";
    }
    const json manifest{{"config", config_json(c)}, {"files", files}, {"instance", inst.manifest()}};
    write_file(dir / "manifest.json", manifest.dump(1) + "\n");
    log << "built " << to_string(c.example) << " -> " << (dir / "manifest.json").string() << "\n";
    return 0;
}

// Rebuilds the run config recorded in a manifest; verification knobs
// (--grid-n, --tol) given on the command line still apply.
RunConfig load_manifest(const RunConfig& c) {
    const fs::path path = example_dir(c) / "manifest.json";
    std::ifstream in(path);
    if (!in) throw IoError("missing manifest " + path.string() + " (run build first)");
    RunConfig m = c;
    try {
        json j;
        in >> j;
        const json& k = j.at("config");
        if (parse_example(k.at("example").get<std::string>()) != c.example) {
            throw IoError("manifest " + path.string() + " belongs to another example");
        }
        m.build.stage = k.at("stage").get<int>();
        m.build.K = k.at("K").get<int>();
        m.build.shrink = k.at("shrink").get<double>();
        m.build.r_min = k.at("r_min").get<double>();
        m.build.window = parse_window(k.at("window").get<std::string>());
        const int built_grid = k.at("grid_n").get<int>();
        m.build.grid_n = built_grid;
        m.grid_n = built_grid;
    } catch (const json::exception& e) {
        throw IoError("corrupted manifest " + path.string() + ": " + e.what());
    } catch (const InvalidArgument& e) {
        throw IoError("corrupted manifest " + path.string() + ": " + e.what());
    }
    return m;
}

int cmd_verify(const RunConfig& c, std::ostream& log) {
    const RunConfig m = load_manifest(c);
    const ProblemInstance inst = build_instance(m.example, example_config(m));
    const int grid_n = c.grid_n > 0 ? c.grid_n : m.grid_n;
    const Report rep = verify_instance(inst, grid_n, c.tol);
    json out = rep.to_json();
    if (inst.scalar) out["tower"] = path_proxy_report(inst.scalar->tower()).to_json();
    write_file(example_dir(c) / "report.json", out.dump(1) + "\n");
    for (const Check& ch : rep.checks) {
        log << (ch.pass ? "[PASS] " : "[FAIL] ") << rep.example << " " << ch.name << " measured=" << g17(ch.measured)
            << " bound=" << g17(ch.bound) << (ch.note.empty() ? "" : " (" + ch.note + ")") << "\n";
    }
    log << rep.example << ": " << rep.failures() << " failed of " << rep.checks.size() << "\n";
    return rep.failures();
}

int cmd_render(const RunConfig& c, std::ostream& log) {
    const RunConfig m = load_manifest(c);
    const ProblemInstance inst = build_instance(m.example, example_config(m));
    const fs::path dir = example_dir(c);
    const int grid_n = c.grid_n > 0 ? c.grid_n : m.grid_n;
    const double tol = c.tol >= 0.0 ? c.tol : default_tol(inst.tag);
    // KEXX sweeps lambda too; its diagram only needs the (empty) v-plane set.
    const ZeroSet z = extract_zero_set(inst, inst.tag == ExampleTag::KEXX ? 64 : grid_n, tol);
    write_file(dir / "bifurcation.svg", svg_bifurcation(inst, z, inst.window.width() / 256.0));
    if (inst.scalar) write_file(dir / "chain_stages.svg", svg_chain_stages(inst.scalar->tower()));
    if (inst.profile) write_file(dir / "phi_sign.svg", svg_phi_sign(*inst.profile, 256));
    log << "rendered " << to_string(c.example) << " -> " << dir.string() << "\n";
    return 0;
}

}  // namespace

RunConfig parse(int argc, const char* const* argv) {
    CLI::App app{"Counterexample fixtures: build, verify and render"};
    RunConfig c;
    std::string command, example, window, config;
    int stage = 0, K = 0, grid_n = 0;
    double tol = 0.0, shrink = 0.0, r_min = 0.0;
    app.add_option("command", command, "build | verify | render | all")->required();
    auto* o_ex = app.add_option("--example", example, "A, B, C or KEXX");
    auto* o_stage = app.add_option("--stage", stage, "chain stage");
    auto* o_K = app.add_option("--K", K, "tile range");
    auto* o_grid = app.add_option("--grid-n", grid_n, "grid intervals per axis");
    auto* o_tol = app.add_option("--tol", tol, "zero-set tolerance");
    auto* o_win = app.add_option("--window", window, "lambda_min,lambda_max,x_min,x_max");
    auto* o_out = app.add_option("--out", c.out, "output directory");
    auto* o_cfg = app.add_option("--config", config, "JSON config file (flags win)");
    auto* o_shrink = app.add_option("--shrink", shrink, "refinement shrink factor");
    auto* o_rmin = app.add_option("--r-min", r_min, "Whitney shell width");
    app.parse(argc, argv);

    const std::string out_flag = c.out;
    if (o_cfg->count()) apply_file(c, config);
    c.command = command;
    if (o_ex->count()) c.example = parse_example(example);
    if (o_stage->count()) c.build.stage = stage;
    if (o_K->count()) c.build.K = K;
    if (o_grid->count()) c.grid_n = grid_n;
    if (o_tol->count()) c.tol = tol;
    if (o_win->count()) c.build.window = parse_window(window);
    if (o_out->count()) c.out = out_flag;
    if (o_shrink->count()) c.build.shrink = shrink;
    if (o_rmin->count()) c.build.r_min = r_min;
    if (!o_ex->count() && !o_cfg->count()) throw InvalidArgument("--example is required");
    validate(c);
    return c;
}

int run(const RunConfig& cfg, std::ostream& log) {
    if (cfg.command == "build") return cmd_build(cfg, log);
    if (cfg.command == "verify") return cmd_verify(cfg, log);
    if (cfg.command == "render") return cmd_render(cfg, log);
    cmd_build(cfg, log);
    const int failures = cmd_verify(cfg, log);
    cmd_render(cfg, log);
    return failures;
}

int main_entry(int argc, const char* const* argv, std::ostream& log) {
    RunConfig cfg;
    try {
        cfg = parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        log << "usage: nopath {build|verify|render|all} --example {A,B,C,KEXX} [--stage N] [--K N]\n"
               "              [--grid-n N] [--tol T] [--window lmin,lmax,xmin,xmax] [--out DIR]\n"
               "              [--config FILE] [--shrink S] [--r-min R]\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    }
    try {
        return run(cfg, log);
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace nopath::cli
