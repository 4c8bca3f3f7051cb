#include "polypack/cli.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "polypack/generators.hpp"
#include "polypack/render.hpp"
#include "polypack/scoring.hpp"
#include "polypack/selection.hpp"
#include "polypack/solver.hpp"
#include "polypack/valuation.hpp"
#include "polypack/verifier.hpp"

namespace polypack {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

// Input problems the user can fix: bad files, bad flag values.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Common {
    std::uint64_t seed = 0;
    bool seed_set = false;
    unsigned jobs = 1;
    bool quiet = false;
    std::string out;
};

// Runs fn(i) for i in [0, n) on up to `jobs` threads. The first exception
// (by index) is rethrown after all workers finish.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::vector<std::string> json_files(const std::string& dir) {
    if (!fs::is_directory(dir)) throw UsageError("not a directory: " + dir);
    std::vector<std::string> out;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".json") out.push_back(e.path().string());
    std::sort(out.begin(), out.end());
    return out;
}

// Instances in a directory; files of other types (solutions) are skipped.
std::vector<Instance> load_instance_dir(const std::string& dir, unsigned jobs) {
    std::vector<std::string> files;
    for (const auto& f : json_files(dir)) {
        std::string text = read_text_file(f);
        if (text.find("cgshop2024_instance") != std::string::npos) files.push_back(f);
    }
    std::vector<std::optional<Instance>> loaded(files.size());
    parallel_for(files.size(), jobs, [&](std::size_t i) { loaded[i] = load_instance_file(files[i]); });
    std::vector<Instance> out;
    for (auto& l : loaded) out.push_back(std::move(*l));
    return out;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
    } else {
        save_text_file(path, text);
    }
}

ojson instance_summary(const Instance& inst, const std::string& path) {
    ojson j;
    j["name"] = inst.name;
    if (!path.empty()) j["path"] = path;
    j["items"] = inst.items.size();
    j["total_value"] = inst.total_value();
    j["container_area"] = to_exact_string(inst.container.area());
    return j;
}

void add_common(CLI::App* cmd, Common& c, bool with_jobs) {
    cmd->add_option("--seed", c.seed, "random seed")->each([&c](const std::string&) { c.seed_set = true; });
    if (with_jobs) cmd->add_option("--jobs", c.jobs, "worker threads across instances")->check(CLI::Range(1u, 256u));
    cmd->add_flag("--quiet", c.quiet, "suppress progress on stderr");
    cmd->add_option("-o,--out", c.out, "output path (default: stdout)");
}

// ---- generate ----

struct GenerateArgs {
    std::string family;
    std::string config;
    std::vector<std::string> sets;
    std::size_t n = 0;
    std::string name;
    std::string value_function;
    std::string noise;
    bool hide_value_function = false;
    bool no_perturb = false;
    std::string layout;
    std::size_t count = 1;
};

int cmd_generate(const GenerateArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
    Family family = parse_family(a.family);
    GenConfig cfg;
    if (!a.config.empty()) cfg = parse_gen_config(read_text_file(a.config));
    for (const auto& kv : a.sets) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw UsageError("--set expects key=value, got '" + kv + "'");
        apply_gen_option(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (c.seed_set) cfg.seed = c.seed;
    if (a.n) cfg.n_target = a.n;
    if (!a.name.empty()) cfg.name = a.name;
    if (!a.value_function.empty()) cfg.values.kind = parse_value_kind(a.value_function);
    if (!a.noise.empty()) apply_gen_option(cfg, "noise", a.noise);
    if (a.hide_value_function) cfg.values.reveal = false;
    if (a.no_perturb) cfg.jigsaw_perturb = false;

    if (a.count == 1) {
        Instance inst = [&] {
            if (family != Family::Jigsaw || a.layout.empty()) return generate(family, cfg);
            JigsawOutput j = gen_jigsaw_layout(cfg);
            save_text_file(a.layout, write_solution(j.layout));
            return j.instance;
        }();
        if (c.out.empty() || c.out == "-") {
            out << write_instance(inst);
        } else {
            save_text_file(c.out, write_instance(inst));
            out << instance_summary(inst, c.out).dump() << "\n";
        }
        return kExitOk;
    }

    // Several instances with consecutive seeds into a directory.
    if (c.out.empty()) throw UsageError("--count > 1 needs -o <directory>");
    fs::create_directories(c.out);
    std::vector<ojson> rows(a.count);
    std::mutex log_mu;
    parallel_for(a.count, c.jobs, [&](std::size_t k) {
        GenConfig local = cfg;
        local.seed = cfg.seed + k;
        if (!cfg.name.empty()) local.name = cfg.name + "_" + std::to_string(k);
        Instance inst = generate(family, local);
        std::string path = (fs::path(c.out) / (inst.name + ".json")).string();
        save_text_file(path, write_instance(inst));
        rows[k] = instance_summary(inst, path);
        if (!c.quiet) {
            std::lock_guard<std::mutex> lock(log_mu);
            err << "generated " << inst.name << " (" << inst.items.size() << " items)\n";
        }
    });
    out << ojson(rows).dump() << "\n";
    return kExitOk;
}

// ---- value ----

struct ValueArgs {
    std::string instance;
    std::string function = "area";
    std::string noise = "1/10";
    std::string scale = "1";
    bool hide = false;
};

int cmd_value(const ValueArgs& a, const Common& c, std::ostream& out) {
    Instance inst = load_instance_file(a.instance);
    ValueSpec spec;
    spec.kind = parse_value_kind(a.function);
    spec.noise = parse_rational(a.noise);
    spec.global_scale = parse_rational(a.scale);
    spec.seed = c.seed;
    spec.reveal = !a.hide;
    Instance valued = assign_values(inst, spec);
    if (c.out.empty() || c.out == "-") {
        out << write_instance(valued);
    } else {
        save_text_file(c.out, write_instance(valued));
        out << instance_summary(valued, c.out).dump() << "\n";
    }
    return kExitOk;
}

// ---- solve ----

struct SolveArgs {
    std::vector<std::string> instances;
    double budget = 10.0;
    std::string ordering = "value-density";
    std::string mode = "grid";
    int grid_levels = 4;
    Coord coarse_cells = 64;
    std::string moves = "insert,relocate,swap,eject";
    std::size_t max_no_improve = 400;
    bool greedy_only = false;
};

unsigned parse_moves(const std::string& text) {
    unsigned m = 0;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok == "insert") m |= kInsert;
        else if (tok == "relocate") m |= kRelocate;
        else if (tok == "swap") m |= kSwapPair;
        else if (tok == "eject") m |= kEjectChain;
        else if (tok == "none" || tok.empty()) continue;
        else throw UsageError("unknown move '" + tok + "' (insert, relocate, swap, eject, none)");
    }
    return m;
}

int cmd_solve(const SolveArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
    SolverConfig cfg;
    cfg.time_budget = a.budget;
    cfg.ordering = parse_ordering(a.ordering);
    if (a.mode == "grid") cfg.mode = PlacementMode::Grid;
    else if (a.mode == "shelf") cfg.mode = PlacementMode::Shelf;
    else throw UsageError("unknown mode '" + a.mode + "' (grid, shelf)");
    cfg.grid_levels = a.grid_levels;
    cfg.coarse_cells = a.coarse_cells;
    cfg.ls_moves = parse_moves(a.moves);
    cfg.ls_max_no_improve = a.max_no_improve;
    cfg.seed = c.seed;
    if (a.budget <= 0) throw UsageError("--budget must be positive");
    if (a.grid_levels < 1) throw UsageError("--grid-levels must be at least 1");

    const bool many = a.instances.size() > 1;
    if (many && c.out.empty()) throw UsageError("several instances need -o <directory>");
    if (many) fs::create_directories(c.out);

    std::vector<Instance> loaded;
    for (const auto& p : a.instances) loaded.push_back(load_instance_file(p));

    std::mutex log_mu;
    std::vector<ojson> rows(loaded.size());
    std::vector<std::string> texts(loaded.size());
    parallel_for(loaded.size(), c.jobs, [&](std::size_t k) {
        const Instance& inst = loaded[k];
        SolverConfig local = cfg;
        if (!c.quiet) {
            local.progress = [&, name = inst.name](const std::string& line) {
                std::lock_guard<std::mutex> lock(log_mu);
                err << name << ": " << line << "\n";
            };
        }
        SolveStats stats;
        Solution sol = a.greedy_only ? solve_greedy(inst, local) : solve(inst, local, &stats);
        VerifyReport rep = verify(inst, sol);
        if (!rep.valid) throw std::logic_error("solver produced an infeasible solution for " + inst.name);
        texts[k] = write_solution(sol);
        ojson row;
        row["instance"] = inst.name;
        row["placed"] = sol.placements.size();
        row["items"] = inst.items.size();
        row["packed_value"] = rep.packed_value;
        row["total_value"] = inst.total_value();
        row["iterations"] = stats.iterations;
        if (many) {
            std::string path = (fs::path(c.out) / (inst.name + ".solution.json")).string();
            save_text_file(path, texts[k]);
            row["path"] = path;
        }
        rows[k] = row;
        if (!c.quiet) {
            std::lock_guard<std::mutex> lock(log_mu);
            err << inst.name << ": packed " << rep.packed_value << " of " << inst.total_value() << "\n";
        }
    });

    if (many) {
        out << ojson(rows).dump() << "\n";
    } else if (c.out.empty() || c.out == "-") {
        out << texts[0];
    } else {
        save_text_file(c.out, texts[0]);
        rows[0]["path"] = c.out;
        out << rows[0].dump() << "\n";
    }
    return kExitOk;
}

// ---- verify ----

int cmd_verify(const std::string& inst_path, const std::string& sol_path, std::ostream& out, std::ostream& err) {
    Instance inst = load_instance_file(inst_path);
    Solution sol = load_solution_file(sol_path, true);
    VerifyReport rep = verify(inst, sol);
    out << report_to_json(rep);
    if (!rep.valid) {
        err << "invalid: " << to_string(rep.violation->kind);
        for (std::size_t i : rep.violation->item_indices) err << ' ' << i;
        err << "\n";
        return kExitInvalid;
    }
    return kExitOk;
}

// ---- score ----

struct ScoreArgs {
    std::string instances;
    std::string records;
    bool require_solutions = false;
};

int cmd_score(const ScoreArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
    std::vector<Instance> instances = load_instance_dir(a.instances, c.jobs);
    std::map<std::string, const Instance*> by_name;
    for (const auto& inst : instances) {
        if (!by_name.emplace(inst.name, &inst).second) throw UsageError("two instance files named '" + inst.name + "'");
    }
    std::vector<CsvRecord> rows = parse_records_csv(read_text_file(a.records));
    const fs::path base = fs::path(a.records).parent_path();

    std::vector<SubmissionRecord> records;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const auto& r = rows[k].record;
        auto it = by_name.find(r.instance);
        if (it == by_name.end()) throw UsageError("record " + std::to_string(k + 1) + " names unknown instance '" + r.instance + "'");
        if (r.value > it->second->total_value()) {
            throw UsageError("record " + std::to_string(k + 1) + " claims value " + std::to_string(r.value) +
                             " above the instance total " + std::to_string(it->second->total_value()));
        }
        if (rows[k].solution_path.empty()) {
            if (a.require_solutions) throw UsageError("record " + std::to_string(k + 1) + " has no solution file");
        } else {
            fs::path p = rows[k].solution_path;
            if (p.is_relative()) p = base / p;
            VerifyReport rep = verify(*it->second, load_solution_file(p.string(), true));
            if (!rep.valid || rep.packed_value != r.value) {
                err << "record " << k + 1 << " (" << r.team << ", " << r.instance << "): solution "
                    << (rep.valid ? "packs " + std::to_string(rep.packed_value) + ", not the claimed value"
                                  : std::string("is invalid: ") + std::string(to_string(rep.violation->kind)))
                    << "\n";
                return kExitInvalid;
            }
        }
        records.push_back(r);
    }
    std::vector<std::string> names;
    for (const auto& inst : instances) names.push_back(inst.name);
    Leaderboard board = build_leaderboard(records, names);
    emit(leaderboard_to_json(board), c.out, out);
    if (!c.quiet) err << leaderboard_table(board);
    return kExitOk;
}

// ---- select ----

struct SelectArgs {
    std::string candidates;
    std::size_t k = 0;
    std::size_t components = 0;
    std::size_t restarts = 10;
    std::string features_csv;
};

int cmd_select(const SelectArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
    std::vector<Instance> instances = load_instance_dir(a.candidates, c.jobs);
    std::vector<FeatureVector> features(instances.size());
    parallel_for(instances.size(), c.jobs, [&](std::size_t i) { features[i] = compute_metrics(instances[i]); });
    std::sort(features.begin(), features.end(), [](const auto& x, const auto& y) { return x.name < y.name; });
    if (!a.features_csv.empty()) save_text_file(a.features_csv, features_to_csv(features));

    SelectionConfig cfg;
    cfg.k = a.k;
    if (a.components) cfg.pca_components = a.components;
    cfg.seed = c.seed;
    cfg.kmeans_restarts = a.restarts;
    std::vector<std::string> warnings;
    SelectionResult res;
    try {
        res = select_diverse(features, cfg, &warnings);
    } catch (const DegenerateFeatures& e) {
        throw UsageError(e.what());
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (!c.quiet)
        for (const auto& w : warnings) err << "warning: " << w << "\n";

    ojson j;
    j["k"] = cfg.k;
    j["seed"] = cfg.seed;
    j["candidates"] = features.size();
    j["pca_components"] = res.components;
    j["retained_variance"] = res.retained_variance;
    j["dropped_metrics"] = res.dropped_columns;
    j["selected"] = res.selected;
    emit(j.dump(2) + "\n", c.out, out);
    return kExitOk;
}

// ---- render ----

struct RenderArgs {
    std::string instance;
    std::string solution;
    std::string scale = "1";
    int palette = 0;
    bool tray = false;
    bool force = false;
};

int cmd_render(const RenderArgs& a, const Common& c, std::ostream& out) {
    Instance inst = load_instance_file(a.instance);
    std::optional<Solution> sol;
    if (!a.solution.empty()) sol = load_solution_file(a.solution, true);
    RenderSpec spec;
    spec.scale = parse_rational(a.scale);
    spec.palette = a.palette;
    spec.tray = a.tray;
    spec.force = a.force;
    emit(render_svg(inst, sol ? &*sol : nullptr, spec), c.out, out);
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Maximum polygon packing toolkit: generate, value, solve, verify, score, select, render."};
    app.name(args.empty() ? "polypack" : fs::path(args[0]).filename().string());
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "help for every subcommand");

    Common common;

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "generate an instance of one family");
    generate->add_option("family", gen.family, "random | jigsaw | atris | satris")->required();
    generate->add_option("--config", gen.config, "key = value config file");
    generate->add_option("--set", gen.sets, "override one option, key=value (repeatable)");
    generate->add_option("--n", gen.n, "target item count");
    generate->add_option("--name", gen.name, "instance name");
    generate->add_option("--value-function", gen.value_function, "area | hull | bbox | uniform (random, jigsaw)");
    generate->add_option("--noise", gen.noise, "value noise amplitude, e.g. 0.1");
    generate->add_flag("--hide-value-function", gen.hide_value_function, "leave the value rule out of meta");
    generate->add_flag("--no-perturb", gen.no_perturb, "jigsaw: keep the exact cut pieces");
    generate->add_option("--layout", gen.layout, "jigsaw: also write the cut layout as a solution");
    generate->add_option("--count", gen.count, "instances with seeds seed, seed+1, ... into -o DIR")->check(CLI::PositiveNumber);
    add_common(generate, common, true);

    ValueArgs val;
    auto* value = app.add_subcommand("value", "reassign item values");
    value->add_option("instance", val.instance)->required()->check(CLI::ExistingFile);
    value->add_option("--function", val.function, "area | hull | bbox | uniform");
    value->add_option("--noise", val.noise, "noise amplitude in [0, 1)");
    value->add_option("--scale", val.scale, "global scale");
    value->add_flag("--hide", val.hide, "leave the value rule out of meta");
    add_common(value, common, false);

    SolveArgs sol;
    auto* solve_cmd = app.add_subcommand("solve", "greedy placement plus local search");
    solve_cmd->add_option("instances", sol.instances, "instance files")->required()->check(CLI::ExistingFile);
    solve_cmd->add_option("--budget", sol.budget, "time budget in seconds per instance");
    solve_cmd->add_option("--ordering", sol.ordering, "value-density | value | area");
    solve_cmd->add_option("--mode", sol.mode, "grid | shelf");
    solve_cmd->add_option("--grid-levels", sol.grid_levels, "coarse-to-fine refinement levels");
    solve_cmd->add_option("--coarse-cells", sol.coarse_cells, "grid samples per axis at the coarsest level")
        ->check(CLI::Range(Coord{1}, Coord{1} << 20));
    solve_cmd->add_option("--moves", sol.moves, "local search moves: insert,relocate,swap,eject or none");
    solve_cmd->add_option("--max-no-improve", sol.max_no_improve, "stop after this many idle iterations");
    solve_cmd->add_flag("--greedy-only", sol.greedy_only, "skip local search");
    add_common(solve_cmd, common, true);

    std::string v_inst, v_sol;
    auto* verify_cmd = app.add_subcommand("verify", "check a solution exactly");
    verify_cmd->add_option("instance", v_inst)->required()->check(CLI::ExistingFile);
    verify_cmd->add_option("solution", v_sol)->required()->check(CLI::ExistingFile);

    ScoreArgs sc;
    auto* score = app.add_subcommand("score", "leaderboard from submission records");
    score->add_option("--instances", sc.instances, "directory of instance files")->required();
    score->add_option("--records", sc.records, "CSV: team,instance,value,timestamp[,solution]")->required()->check(CLI::ExistingFile);
    score->add_flag("--require-solutions", sc.require_solutions, "reject records without a solution file");
    add_common(score, common, true);

    SelectArgs sel;
    auto* select = app.add_subcommand("select", "pick a diverse benchmark subset");
    select->add_option("--candidates", sel.candidates, "directory of instance files")->required();
    select->add_option("--k", sel.k, "subset size")->required();
    select->add_option("--pca-components", sel.components, "fixed component count (default: 95% variance)");
    select->add_option("--restarts", sel.restarts, "k-means restarts")->check(CLI::PositiveNumber);
    select->add_option("--features", sel.features_csv, "write the feature matrix as CSV");
    add_common(select, common, true);

    RenderArgs ren;
    auto* render = app.add_subcommand("render", "draw an instance and optional solution as SVG");
    render->add_option("instance", ren.instance)->required()->check(CLI::ExistingFile);
    render->add_option("solution", ren.solution)->check(CLI::ExistingFile);
    render->add_option("--scale", ren.scale, "pixels per grid unit");
    render->add_option("--palette", ren.palette, "0 pastel, 1 greys, 2 value heat")->check(CLI::Range(0, 2));
    render->add_flag("--tray", ren.tray, "draw unplaced items beside the container");
    render->add_flag("--force", ren.force, "draw even if the solution does not verify");
    add_common(render, common, false);

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    if (argv.empty()) argv.push_back("polypack");
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (*generate) return cmd_generate(gen, common, out, err);
        if (*value) return cmd_value(val, common, out);
        if (*solve_cmd) return cmd_solve(sol, common, out, err);
        if (*verify_cmd) return cmd_verify(v_inst, v_sol, out, err);
        if (*score) return cmd_score(sc, common, out, err);
        if (*select) return cmd_select(sel, common, out, err);
        if (*render) return cmd_render(ren, common, out);
    } catch (const RenderOfInvalidSolution& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ValidationError& e) {
        err << "error: invalid input (" << to_string(e.reason()) << "): " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ValueOverflow& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InstanceMismatch& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const GenerationFailed& e) {
        err << "error: generation failed: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::invalid_argument& e) {
        // Bad option values, config keys, value specs, records.
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace polypack
