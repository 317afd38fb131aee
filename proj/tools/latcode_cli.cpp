// Command-line front end: evaluate codes, print bounds, search for
// embeddings, simulate the noisy erasure channel, and emit plot data.
//
// Exit codes: 0 success, 1 domain error, 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "latcode/bounds.hpp"
#include "latcode/channel_sim.hpp"
#include "latcode/code_io.hpp"
#include "latcode/constructions.hpp"
#include "latcode/erasure_code.hpp"
#include "latcode/figures.hpp"
#include "latcode/search.hpp"
#include "latcode/starbody.hpp"

using namespace latcode;

namespace {

std::string fmt6(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string fmt17(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct LoadedCode {
    ErasureCode code;
    std::string display;
};

LoadedCode resolve_code(const std::string& arg) {
    if (is_builtin(arg)) return {builtin(arg).code, arg};
    CodeFile file = load_code_file(arg);
    return {std::move(file.code), file.name.value_or(arg)};
}

Lattice resolve_mother(const std::string& arg, int k) {
    if (arg.size() >= 2 && arg[0] == 'z') {
        const int dim = std::atoi(arg.c_str() + 1);
        if (dim >= 1 && dim <= 8) return Lattice(Matrix::identity(static_cast<std::size_t>(dim)));
    }
    if (arg == "a2" || arg == "hex")
        return Lattice(Matrix(2, 2, {1.0, 0.5, 0.0, std::sqrt(3.0) / 2.0}));
    if (arg == "fcc") return Lattice(Matrix(3, 3, {-1, 1, 0, -1, -1, -1, 0, 0, 1}));
    if (arg == "bcc") return Lattice(Matrix(3, 3, {1, -1, 1, -1, 1, 1, -1, -1, 1}));

    std::ifstream in(arg);
    if (!in) throw error(errc::unknown_name, "mother '" + arg + "' is neither a name nor a file");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw error(errc::bad_code_file, std::string("mother file parse failure: ") + e.what());
    }
    if (!j.contains("k") || !j.contains("v"))
        throw error(errc::bad_code_file, "mother file needs fields k and v");
    const int dim = j.at("k").get<int>();
    auto v = j.at("v").get<std::vector<double>>();
    if (v.size() != static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim))
        throw error(errc::bad_code_file, "mother file: v must hold k*k entries");
    Lattice lat(Matrix(static_cast<std::size_t>(dim), static_cast<std::size_t>(dim), std::move(v)));
    (void)k;
    return lat;
}

std::ostream& open_sink(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw error(errc::bad_params, "cannot write '" + path + "'");
    return file;
}

struct EvalBounds {
    double trace;
    bool trace_met;
    double child_density_geo; // 0 when some child is degenerate
    double det_bound;         // on beta_geo; 0 when unavailable
    bool det_met;
};

EvalBounds eval_bounds(const ErasureCode& code, const CodeReport& rep) {
    EvalBounds b{};
    b.trace = trace_bound(code.n, code.k);
    b.trace_met = std::abs(std::pow(rep.beta_min, 2.0 / code.k) - b.trace) <= 1e-9;
    bool degenerate = false;
    double log_sum = 0.0;
    for (const auto& sr : rep.per_subset) {
        if (sr.density <= 0.0) degenerate = true;
        else log_sum += std::log(sr.density);
    }
    if (!degenerate) {
        b.child_density_geo =
            std::exp(log_sum / static_cast<double>(rep.per_subset.size()));
        b.det_bound = determinant_bound(std::min(1.0, rep.mother_density),
                                        std::min(1.0, b.child_density_geo), code.n, code.k);
        b.det_met = std::abs(rep.beta_geo - b.det_bound) <= 1e-9;
    }
    return b;
}

nlohmann::json report_to_json(const std::string& name, const ErasureCode& code,
                              const CodeReport& rep, const EvalBounds& bounds) {
    nlohmann::json j;
    j["name"] = name;
    j["n"] = code.n;
    j["k"] = code.k;
    j["mother"] = {{"det", rep.mother_det},
                   {"shortest_sq", rep.mother_shortest_sq},
                   {"density", rep.mother_density}};
    nlohmann::json subsets = nlohmann::json::array();
    for (const auto& sr : rep.per_subset)
        subsets.push_back({{"subset", sr.subset},
                           {"det", sr.det},
                           {"shortest_sq", sr.shortest_sq},
                           {"beta", sr.beta},
                           {"density", sr.density}});
    j["subsets"] = std::move(subsets);
    j["beta_min"] = rep.beta_min;
    j["beta_geo"] = rep.beta_geo;
    j["beta_min_2k"] = std::pow(rep.beta_min, 2.0 / code.k);
    j["rho_min"] = rep.rho_min;
    j["bounds"] = {{"trace", bounds.trace},
                   {"trace_met", bounds.trace_met},
                   {"child_density_geo", bounds.child_density_geo},
                   {"det_bound_beta_geo", bounds.det_bound},
                   {"det_met", bounds.det_met}};
    return j;
}

int run_eval(const std::string& code_arg, bool json_mode) {
    const LoadedCode loaded = resolve_code(code_arg);
    const ErasureCode& code = loaded.code;
    const CodeReport rep = code_report(code);
    const EvalBounds bounds = eval_bounds(code, rep);

    if (json_mode) {
        std::cout << report_to_json(loaded.display, code, rep, bounds).dump(2) << "\n";
        return 0;
    }

    std::printf("code: %s (n=%d, k=%d)\n", loaded.display.c_str(), code.n, code.k);
    std::printf("mother: det=%s shortest^2=%s density=%s\n\n", fmt6(rep.mother_det).c_str(),
                fmt6(rep.mother_shortest_sq).c_str(), fmt6(rep.mother_density).c_str());
    std::printf("%-10s %-10s %-10s %-10s %-10s\n", "subset", "det", "shortest2", "beta",
                "density");
    for (const auto& sr : rep.per_subset)
        std::printf("%-10s %-10s %-10s %-10s %-10s\n", subset_label(sr.subset).c_str(),
                    fmt6(sr.det).c_str(), fmt6(sr.shortest_sq).c_str(), fmt6(sr.beta).c_str(),
                    fmt6(sr.density).c_str());
    std::printf("\n");
    std::printf("beta_min       = %s\n", fmt6(rep.beta_min).c_str());
    std::printf("beta_geo       = %s\n", fmt6(rep.beta_geo).c_str());
    std::printf("beta_min^(2/k) = %s\n", fmt6(std::pow(rep.beta_min, 2.0 / code.k)).c_str());
    std::printf("rho_min        = %s\n", fmt6(rep.rho_min).c_str());
    std::printf("trace bound (k/n)     = %-10s [%s]\n", fmt6(bounds.trace).c_str(),
                bounds.trace_met ? "MET" : "strict");
    if (bounds.child_density_geo > 0.0) {
        std::printf("det bound on beta_geo = %-10s [%s] (child density geo mean = %s)\n",
                    fmt6(bounds.det_bound).c_str(), bounds.det_met ? "MET" : "strict",
                    fmt6(bounds.child_density_geo).c_str());
    } else {
        std::printf("det bound on beta_geo = n/a (degenerate child lattice)\n");
    }
    return 0;
}

int run_bounds(int n, int k, std::optional<double> mother_density,
               std::optional<double> child_density) {
    const double mother = mother_density ? *mother_density : optimal_density(k);
    const double child = child_density ? *child_density : optimal_density(k);
    const BoundsReport r = bounds_report(n, k, mother, child);
    std::printf("n=%d k=%d\n", r.n, r.k);
    std::printf("mother density        = %s\n", fmt6(r.mother_density).c_str());
    std::printf("child density         = %s\n", fmt6(r.child_density_assumption).c_str());
    std::printf("trace bound           = %s\n", fmt6(r.trace_bound).c_str());
    std::printf("det bound on beta_geo = %s\n", fmt6(r.det_bound_beta_geo).c_str());
    std::printf("det bound^(2/k)       = %s\n", fmt6(r.det_bound_exponent_2k).c_str());
    return 0;
}

int run_search(int n, int k, const std::string& mother_arg, const std::string& objective,
               int restarts, int steps, double step_scale, std::uint64_t seed,
               const std::string& out_path, const std::string& trace_path) {
    SearchConfig cfg(n, k, resolve_mother(mother_arg, k));
    if (objective == "beta_min")
        cfg.objective = Objective::beta_min;
    else if (objective == "beta_geo")
        cfg.objective = Objective::beta_geo;
    else
        throw error(errc::bad_params, "objective must be beta_min or beta_geo");
    cfg.restarts = restarts;
    cfg.local_steps = steps;
    cfg.step_scale = step_scale;
    cfg.seed = seed;
    cfg.keep_trace = !trace_path.empty();

    const SearchResult res = search(cfg);
    std::printf("objective   = %s\n", objective_name(res.objective));
    std::printf("best value  = %s\n", fmt17(res.best_value).c_str());
    std::printf("evaluations = %llu\n", static_cast<unsigned long long>(res.evaluations));

    if (!out_path.empty()) {
        std::ostringstream name;
        name << "search-n" << n << "-k" << k << "-" << objective;
        save_code_file(out_path, res.best_code, name.str());
        std::printf("best code written to %s\n", out_path.c_str());
    }
    if (!trace_path.empty()) {
        std::ofstream trace(trace_path);
        if (!trace) throw error(errc::bad_params, "cannot write '" + trace_path + "'");
        trace << "iteration,value\n";
        for (const auto& [iter, value] : res.trace)
            trace << iter << "," << fmt17(value) << "\n";
        std::printf("trace written to %s\n", trace_path.c_str());
    }
    return 0;
}

int run_simulate(const std::string& code_arg, int M, double power, double sigma,
                 std::uint64_t trials, std::uint64_t seed, const std::string& subset_arg,
                 const std::string& out_path) {
    const LoadedCode loaded = resolve_code(code_arg);
    const Constellation cons = build_constellation(loaded.code, M, power);

    std::vector<SimResult> results;
    double worst = 0.0;
    if (subset_arg == "all") {
        SimulationSweep sweep = simulate_all(cons, sigma, trials, seed);
        results = std::move(sweep.per_subset);
        worst = sweep.worst_pe;
    } else {
        std::vector<int> subset;
        std::stringstream ss(subset_arg);
        std::string item;
        while (std::getline(ss, item, ','))
            subset.push_back(std::atoi(item.c_str()));
        results.push_back(simulate(cons, subset, sigma, trials, seed));
        worst = results.front().p_e;
    }

    std::ofstream file;
    std::ostream& os = open_sink(file, out_path);
    os << "subset,sigma,trials,errors,p_e,ci95\n";
    for (const auto& r : results)
        os << subset_label(r.subset) << "," << fmt17(r.sigma) << "," << r.trials << ","
           << r.errors << "," << fmt17(r.p_e) << "," << fmt17(r.ci95_halfwidth) << "\n";
    os << "# worst_case_p_e," << fmt17(worst) << "\n";
    if (!out_path.empty())
        std::printf("worst-case p_e = %s (results written to %s)\n", fmt6(worst).c_str(),
                    out_path.c_str());
    return 0;
}

int run_starbody(const std::string& code_arg, const std::string& radius_arg, double window,
                 const std::string& out_path) {
    const LoadedCode loaded = resolve_code(code_arg);
    const ErasureCode& code = loaded.code;

    double r;
    if (radius_arg == "2rhomin") {
        r = 2.0 * code_report(code).rho_min;
        if (!(r > 0.0)) throw error(errc::reduced_rank, "code has a degenerate child; no rho_min");
    } else {
        char* end = nullptr;
        r = std::strtod(radius_arg.c_str(), &end);
        if (end == radius_arg.c_str() || *end != '\0' || !(r > 0.0))
            throw error(errc::bad_params, "radius must be '2rhomin' or a positive real");
    }

    const PlotData data = plot_data(code, r, window);
    std::ofstream file;
    std::ostream& os = open_sink(file, out_path);
    write_plot_csv(os, data);

    if (!out_path.empty()) {
        const bool adm = admissible(code, r);
        const auto reports = contacts(code, r);
        std::printf("radius = %s, admissible = %s\n", fmt6(r).c_str(), adm ? "yes" : "no");
        for (const auto& rep : reports)
            std::printf("subset %-8s %s (%zu contact points)\n",
                        subset_label(rep.subset).c_str(),
                        rep.touched ? "touched" : "untouched", rep.contact_points.size());
        std::printf("plot data written to %s\n", out_path.c_str());
    }
    return 0;
}

int run_figure3(const std::string& out_path) {
    std::ofstream file;
    std::ostream& os = open_sink(file, out_path);
    write_figure3_csv(os);
    if (!out_path.empty()) std::printf("figure data written to %s\n", out_path.c_str());
    return 0;
}

int run_verify(bool json_mode) {
    const auto checks = verify_all();
    bool all_pass = true;
    if (json_mode) {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& c : checks) {
            j.push_back({{"construction", c.construction},
                         {"quantity", c.quantity},
                         {"expected", c.expected},
                         {"actual", c.actual},
                         {"pass", c.pass}});
            all_pass = all_pass && c.pass;
        }
        std::cout << j.dump(2) << "\n";
    } else {
        int passed = 0;
        for (const auto& c : checks) {
            if (!c.pass)
                std::printf("[FAIL] %s %s expected=%s actual=%s\n", c.construction.c_str(),
                            c.quantity.c_str(), fmt17(c.expected).c_str(),
                            fmt17(c.actual).c_str());
            all_pass = all_pass && c.pass;
            passed += c.pass ? 1 : 0;
        }
        std::printf("%d/%zu construction values verified\n", passed, checks.size());
    }
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"latcode: low-rank lattice erasure codes with noise margins"};
    app.require_subcommand(1);

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a code: per-subset metrics and bounds");
    std::string eval_code;
    bool eval_json = false;
    eval_cmd->add_option("--code", eval_code, "builtin name or code file")->required();
    eval_cmd->add_flag("--json", eval_json, "machine-readable output");

    // bounds
    auto* bounds_cmd = app.add_subcommand("bounds", "closed-form trace and determinant bounds");
    int b_n = 4, b_k = 2;
    std::optional<double> b_mother, b_child;
    bounds_cmd->add_option("--n", b_n, "ambient dimension")->required();
    bounds_cmd->add_option("--k", b_k, "code rank")->required();
    bounds_cmd->add_option("--mother-density", b_mother,
                           "mother lattice packing density (default: optimal for k)");
    bounds_cmd->add_option("--child-density", b_child,
                           "assumed child packing density (default: optimal for k)");

    // search
    auto* search_cmd =
        app.add_subcommand("search", "hill-climbing search over orthonormal embeddings");
    int s_n = 4, s_k = 2, s_restarts = 20, s_steps = 400;
    double s_scale = 0.5;
    std::uint64_t s_seed = 0;
    std::string s_mother = "z2", s_objective = "beta_min", s_out, s_trace;
    search_cmd->add_option("--n", s_n, "ambient dimension")->required();
    search_cmd->add_option("--k", s_k, "code rank")->required();
    search_cmd->add_option("--mother", s_mother,
                           "mother lattice: z<k>, a2, hex, fcc, bcc, or a JSON file {k, v}");
    search_cmd->add_option("--objective", s_objective, "beta_min or beta_geo");
    search_cmd->add_option("--restarts", s_restarts, "independent random restarts");
    search_cmd->add_option("--steps", s_steps, "hill-climbing steps per restart");
    search_cmd->add_option("--step-scale", s_scale, "initial rotation angle bound (radians)");
    search_cmd->add_option("--seed", s_seed, "random seed");
    search_cmd->add_option("--out", s_out, "write the best code to this file");
    search_cmd->add_option("--trace", s_trace, "write the incumbent trace CSV to this file");

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo noisy erasure channel");
    std::string sim_code, sim_subset = "all", sim_out;
    int sim_m = 4;
    double sim_power = 1.0, sim_sigma = 0.1;
    std::uint64_t sim_trials = 100000, sim_seed = 0;
    sim_cmd->add_option("--code", sim_code, "builtin name or code file")->required();
    sim_cmd->add_option("--M", sim_m, "coset representatives per dimension");
    sim_cmd->add_option("--power", sim_power, "power constraint P");
    sim_cmd->add_option("--sigma", sim_sigma, "noise standard deviation")->required();
    sim_cmd->add_option("--trials", sim_trials, "Monte Carlo trials per subset");
    sim_cmd->add_option("--seed", sim_seed, "random seed");
    sim_cmd->add_option("--subset", sim_subset, "'all' or a comma list such as 1,3");
    sim_cmd->add_option("--out", sim_out, "write the CSV here instead of stdout");

    // starbody
    auto* star_cmd = app.add_subcommand("starbody", "noise ellipse plot data and contacts");
    std::string star_code, star_radius = "2rhomin", star_out;
    double star_window = 2.0;
    star_cmd->add_option("--code", star_code, "builtin name or code file")->required();
    star_cmd->add_option("--radius", star_radius, "'2rhomin' or a positive real");
    star_cmd->add_option("--window", star_window, "half-width of the lattice point window");
    star_cmd->add_option("--out", star_out, "write the CSV here instead of stdout");

    // figure3
    auto* fig_cmd = app.add_subcommand("figure3", "bound curves and construction points CSV");
    std::string fig_out;
    fig_cmd->add_option("--out", fig_out, "write the CSV here instead of stdout");

    // verify
    auto* verify_cmd =
        app.add_subcommand("verify", "check every builtin construction against its references");
    bool verify_json = false;
    verify_cmd->add_flag("--json", verify_json, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help() << std::flush;
        return 2;
    }

    try {
        if (*eval_cmd) return run_eval(eval_code, eval_json);
        if (*bounds_cmd) return run_bounds(b_n, b_k, b_mother, b_child);
        if (*search_cmd)
            return run_search(s_n, s_k, s_mother, s_objective, s_restarts, s_steps, s_scale,
                              s_seed, s_out, s_trace);
        if (*sim_cmd)
            return run_simulate(sim_code, sim_m, sim_power, sim_sigma, sim_trials, sim_seed,
                                sim_subset, sim_out);
        if (*star_cmd) return run_starbody(star_code, star_radius, star_window, star_out);
        if (*fig_cmd) return run_figure3(fig_out);
        if (*verify_cmd) return run_verify(verify_json);
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
