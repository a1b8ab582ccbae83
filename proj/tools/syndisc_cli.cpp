#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "syndisc/syndisc.hpp"

namespace {

using namespace syndisc;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;
constexpr int kExitInfeasibleAlpha = 3;
constexpr int kExitCapacity = 4;

/// Alpha parsing in two stages so syntax errors (exit 2) are distinguished
/// from specs that are well-formed but infeasible for this distribution
/// (exit 3).
SourceSet parse_alpha_for(const std::string& spec, std::size_t n) {
    try {
        parse_source_set(spec, 9);
    } catch (const input_error& e) {
        throw input_error(std::string("--alpha: ") + e.what());
    }
    return parse_source_set(spec, n);
}

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return std::string(buf);
}

std::map<std::string, std::string> parse_params(const std::string& text) {
    std::map<std::string, std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw input_error("--params: expected key=value: " + item);
        out[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return out;
}

double param_double(const std::map<std::string, std::string>& p, const std::string& key,
                    double fallback) {
    auto it = p.find(key);
    if (it == p.end()) return fallback;
    try {
        return std::stod(it->second);
    } catch (...) {
        throw input_error("--params: " + key + " must be numeric");
    }
}

std::size_t param_size(const std::map<std::string, std::string>& p, const std::string& key,
                       std::size_t fallback) {
    auto it = p.find(key);
    if (it == p.end()) return fallback;
    try {
        long v = std::stol(it->second);
        if (v < 0) throw input_error("");
        return static_cast<std::size_t>(v);
    } catch (...) {
        throw input_error("--params: " + key + " must be a non-negative integer");
    }
}

void emit_table(const ResultTable& table, const std::string& out_path) {
    if (out_path.empty())
        write_csv(std::cout, table);
    else
        write_csv(out_path, table);
}

ResultTable decomposition_table(const DecompositionReport& rep) {
    ResultTable t;
    t.columns = {"node", "cumulative_bits", "atom_bits"};
    double atom_sum = 0.0;
    for (std::size_t i = 0; i < rep.nodes.size(); ++i) {
        t.add_row({to_string(rep.nodes[i]), csv_number(rep.cumulative[i]), csv_number(rep.atoms[i])});
        atom_sum += rep.atoms[i];
    }
    t.add_row({"TOTAL", csv_number(rep.total_information), csv_number(atom_sum)});
    return t;
}

ResultTable backbone_table(const BackboneReport& rep) {
    ResultTable t;
    t.columns = {"node", "cumulative_bits", "atom_bits"};
    double atom_sum = 0.0;
    for (std::size_t m = 0; m < rep.cumulative.size(); ++m) {
        std::string atom = m == 0 ? "" : csv_number(rep.atoms[m - 1]);
        if (m > 0) atom_sum += rep.atoms[m - 1];
        t.add_row({"B" + std::to_string(m), csv_number(rep.cumulative[m]), atom});
    }
    t.add_row({"TOTAL", csv_number(rep.total_information), csv_number(atom_sum)});
    return t;
}

SystemDistribution sources_only(const SystemDistribution& dist) {
    if (dist.target_alphabet() == 1) return dist;
    // marginalize the target away, keeping the source tuple pmf
    auto px = dist.source_marginal();
    return SystemDistribution(dist.source_alphabets(), 1, std::move(px));
}

// ---------------------------------------------------------------------------
// Sweep experiments
// ---------------------------------------------------------------------------

ResultTable sweep_correlated_and(const std::map<std::string, std::string>& params,
                                 Objective objective) {
    double r_min = param_double(params, "r_min", 0.0);
    double r_max = param_double(params, "r_max", 1.0);
    double r_step = param_double(params, "r_step", 0.05);
    if (r_step <= 0.0) throw input_error("--params: r_step must be > 0");

    std::vector<double> grid;
    for (double r = r_min; r <= r_max + 1e-12; r += r_step) grid.push_back(std::min(r, r_max));

    auto lat = enumerate_lattice(2);
    ResultTable t;
    t.columns = {"r", "total_bits"};
    for (const auto& node : lat.nodes) t.columns.push_back("atom_" + to_string(node));
    t.columns.push_back("bottom_atom_frac");

    std::vector<std::vector<std::string>> rows(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        auto rep = full_decomposition(correlated_and(grid[i]), objective);
        std::vector<std::string> row = {csv_number(grid[i]), csv_number(rep.total_information)};
        for (const auto& node : lat.nodes) row.push_back(csv_number(rep.atom_of(node)));
        double bottom = rep.atom_of(bottom_source_set(2));
        double frac = rep.total_information > 1e-12 ? bottom / rep.total_information
                                                    : (grid[i] >= 1.0 - 1e-12 ? 1.0 : 0.0);
        row.push_back(csv_number(frac));
        rows[i] = std::move(row);
    });
    for (auto& row : rows) t.add_row(std::move(row));
    return t;
}

ResultTable sweep_self_disclosure(const std::map<std::string, std::string>& params,
                                  Objective objective) {
    double p_min = param_double(params, "p_min", 0.05);
    double p_max = param_double(params, "p_max", 0.95);
    double p_step = param_double(params, "p_step", 0.05);
    double r_step = param_double(params, "r_step", 0.05);
    if (p_step <= 0.0 || r_step <= 0.0) throw input_error("--params: steps must be > 0");

    std::vector<std::pair<double, double>> grid;
    for (double p = p_min; p <= p_max + 1e-12; p += p_step)
        for (double r = 0.0; r <= 1.0 + 1e-12; r += r_step)
            if (r <= p + 1e-12 && r >= 2.0 * p - 1.0 - 1e-12) grid.emplace_back(p, std::min(r, p));

    auto alpha = parse_source_set("{1}{2}", 2);
    ResultTable t;
    t.columns = {"p", "r", "self_synergy_bits"};
    std::vector<std::vector<std::string>> rows(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        auto [p, r] = grid[i];
        double s = self_synergy_value(correlated_bits(p, r), alpha, objective);
        rows[i] = {csv_number(p), csv_number(r), csv_number(s)};
    });
    for (auto& row : rows) t.add_row(std::move(row));
    return t;
}

ResultTable sweep_ising(const std::map<std::string, std::string>& params, std::uint64_t seed,
                        Objective objective, bool full_backbone) {
    GibbsSpec base;
    base.n = param_size(params, "n", 4);
    base.beta = param_double(params, "beta", 1.0);
    base.coupling_std = param_double(params, "coupling_std", 0.1);
    std::size_t k_min = param_size(params, "k_min", 1);
    std::size_t k_max = param_size(params, "k_max", base.n);
    std::size_t reps = param_size(params, "reps", 25);
    auto mode_it = params.find("mode");
    std::string mode = mode_it != params.end() ? mode_it->second
                                               : (full_backbone ? "only" : "upto");
    if (mode == "upto")
        base.mode = GibbsSpec::Mode::UpToK;
    else if (mode == "only")
        base.mode = GibbsSpec::Mode::OnlyK;
    else
        throw input_error("--params: mode must be upto or only");
    if (k_min < 1 || k_max < k_min) throw input_error("--params: need 1 <= k_min <= k_max");

    struct Job {
        std::size_t k, rep;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (std::size_t k = k_min; k <= k_max; ++k)
        for (std::size_t rep = 0; rep < reps; ++rep)
            jobs.push_back({k, rep, split_seed(seed, (k - 1) * reps + rep)});

    ResultTable t;
    t.columns = {"k", "replicate", "seed", "total_bits"};
    if (full_backbone)
        for (std::size_t m = 1; m <= base.n; ++m)
            t.columns.push_back("backbone_atom_" + std::to_string(m));
    else
        t.columns.push_back("B1_bits");

    std::vector<std::vector<std::string>> rows(jobs.size());
    parallel_for(jobs.size(), [&](std::size_t i) {
        GibbsSpec spec = base;
        spec.order = jobs[i].k;
        spec.seed = jobs[i].seed;
        auto dist = gibbs(spec);
        std::vector<std::string> row = {std::to_string(jobs[i].k), std::to_string(jobs[i].rep),
                                        std::to_string(jobs[i].seed)};
        if (full_backbone) {
            auto rep = backbone_decomposition(dist, objective);
            row.push_back(csv_number(rep.total_information));
            for (double atom : rep.atoms) row.push_back(csv_number(atom));
        } else {
            double total = total_mutual_information(dist);
            double b1 = solve_synergy(dist, backbone_level(base.n, 1), objective).value;
            row.push_back(csv_number(total));
            row.push_back(csv_number(b1));
        }
        rows[i] = std::move(row);
    });
    for (auto& row : rows) t.add_row(std::move(row));
    return t;
}

// ---------------------------------------------------------------------------
// Subcommand bodies
// ---------------------------------------------------------------------------

struct SynergyArgs {
    std::string dist_path, alpha_spec, objective = "kl";
    std::string emit_channel, debug_dump;
    bool bounds = false;
};

int run_synergy(const SynergyArgs& a) {
    auto file = load_distribution(a.dist_path);
    Objective objective = parse_objective(a.objective);
    SourceSet alpha;
    try {
        alpha = parse_alpha_for(a.alpha_spec, file.dist.num_sources());
    } catch (const input_error& e) {
        std::string what = e.what();
        if (what.rfind("--alpha:", 0) == 0) throw; // syntax error, exit 2
        std::cerr << "error: alpha infeasible for this distribution: " << what << "\n";
        return kExitInfeasibleAlpha;
    }
    auto sol = solve_synergy(file.dist, alpha, objective);
    std::cout << fixed6(sol.value) << "\n";
    if (sol.degeneracy_warning)
        std::cerr << "warning: degenerate polytope basis detected; vertex set may be redundant\n";
    if (a.bounds) {
        auto cb = capacity_bounds(file.dist, alpha, objective);
        std::cerr << "bounds: lower=" << fixed6(cb.lower) << " upper=" << fixed6(cb.upper) << "\n";
    }
    if (!a.emit_channel.empty()) save_json(a.emit_channel, channel_to_json(sol));
    if (!a.debug_dump.empty()) save_json(a.debug_dump, debug_dump_to_json(sol));
    return kExitOk;
}

int run_decompose(const std::string& dist_path, bool backbone_only, const std::string& objective,
                  const std::string& out_path, bool self_target) {
    auto file = load_distribution(dist_path);
    Objective obj = parse_objective(objective);
    SystemDistribution dist = self_target ? self_target_distribution(sources_only(file.dist))
                                          : file.dist;
    if (backbone_only) {
        emit_table(backbone_table(backbone_decomposition(dist, obj)), out_path);
    } else {
        emit_table(decomposition_table(full_decomposition(dist, obj)), out_path);
    }
    return kExitOk;
}

int run_sweep(const std::string& experiment, const std::string& params_text, std::uint64_t seed,
              const std::string& objective, const std::string& out_path) {
    auto params = parse_params(params_text);
    Objective obj = parse_objective(objective);
    ResultTable table;
    if (experiment == "correlated-and")
        table = sweep_correlated_and(params, obj);
    else if (experiment == "self-disclosure")
        table = sweep_self_disclosure(params, obj);
    else if (experiment == "ising-b1")
        table = sweep_ising(params, seed, obj, false);
    else if (experiment == "ising-backbone")
        table = sweep_ising(params, seed, obj, true);
    else
        throw input_error("unknown experiment: " + experiment);
    emit_table(table, out_path);
    return kExitOk;
}

int run_gen(const std::string& gate_name, const std::string& gibbs_spec,
            const std::string& nsb_spec, std::uint64_t seed, const std::string& out_path) {
    int chosen = (!gate_name.empty()) + (!gibbs_spec.empty()) + (!nsb_spec.empty());
    if (chosen != 1) throw input_error("gen: choose exactly one of --gate, --gibbs, --nsb");
    if (out_path.empty()) throw input_error("gen: --out is required");

    DistributionFile file{SystemDistribution({1}, 1, {1.0}), {}, {}};
    if (!gate_name.empty()) {
        file.dist = gate(gate_name);
        file.metadata.generator = "gate";
        file.metadata.params["name"] = gate_name;
    } else if (!gibbs_spec.empty()) {
        auto p = parse_params(gibbs_spec);
        GibbsSpec spec;
        spec.n = param_size(p, "n", 4);
        spec.order = param_size(p, "k", 2);
        spec.beta = param_double(p, "beta", 1.0);
        spec.coupling_std = param_double(p, "coupling_std", 0.1);
        auto it = p.find("mode");
        std::string mode = it != p.end() ? it->second : "upto";
        if (mode == "upto")
            spec.mode = GibbsSpec::Mode::UpToK;
        else if (mode == "only")
            spec.mode = GibbsSpec::Mode::OnlyK;
        else
            throw input_error("--gibbs: mode must be upto or only");
        spec.seed = seed;
        file.dist = gibbs(spec);
        file.metadata.generator = "gibbs";
        file.metadata.params = {{"n", std::to_string(spec.n)},
                                {"k", std::to_string(spec.order)},
                                {"mode", mode},
                                {"beta", csv_number(spec.beta)},
                                {"coupling_std", csv_number(spec.coupling_std)}};
        file.metadata.seed = seed;
        file.metadata.has_seed = true;
        file.metadata.prng = kPrngName;
    } else {
        auto p = parse_params(nsb_spec);
        std::size_t n = param_size(p, "n", 2);
        file.dist = dirichlet_nsb(n, seed);
        file.metadata.generator = "dirichlet-nsb";
        file.metadata.params = {{"n", std::to_string(n)}};
        file.metadata.seed = seed;
        file.metadata.has_seed = true;
        file.metadata.prng = kPrngName;
    }
    save_distribution(out_path, file);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Synergistic-disclosure calculator for discrete joint distributions.\n"
        "Correlation parameters of binary generators are spin correlations over\n"
        "values {-1,+1} (bit b maps to spin 2b-1)."};
    app.require_subcommand(1);

    SynergyArgs sa;
    auto* synergy = app.add_subcommand("synergy", "Compute S^alpha(X -> Y) for one alpha");
    synergy->add_option("--dist", sa.dist_path, "Distribution JSON file")->required();
    synergy->add_option("--alpha", sa.alpha_spec, "Alpha spec, e.g. {1}{2} or {12}{3}")->required();
    synergy->add_option("--objective", sa.objective, "Objective: kl or tv (default kl)");
    synergy->add_option("--emit-channel", sa.emit_channel, "Write the optimal channel as JSON");
    synergy->add_option("--debug-dump", sa.debug_dump, "Write all polytope vertices + LP solution");
    synergy->add_flag("--bounds", sa.bounds, "Also print capacity bounds to stderr");

    std::string d_dist, d_objective = "kl", d_out;
    bool d_backbone = false;
    auto* decompose = app.add_subcommand("decompose", "Full lattice or backbone decomposition");
    decompose->add_option("--dist", d_dist, "Distribution JSON file")->required();
    decompose->add_flag("--backbone", d_backbone, "Backbone chain only (allows n > 4)");
    decompose->add_option("--objective", d_objective, "Objective: kl or tv");
    decompose->add_option("--out", d_out, "Write CSV here instead of stdout");

    std::string s_dist, s_objective = "kl", s_out;
    bool s_backbone = false;
    auto* selfsyn = app.add_subcommand("selfsyn", "Self-synergy decomposition (target := sources)");
    selfsyn->add_option("--dist", s_dist, "Distribution JSON file (target marginalized away)")
        ->required();
    selfsyn->add_flag("--backbone", s_backbone, "Backbone chain only");
    selfsyn->add_option("--objective", s_objective, "Objective: kl or tv");
    selfsyn->add_option("--out", s_out, "Write CSV here instead of stdout");

    std::string w_experiment, w_params, w_objective = "kl", w_out;
    std::uint64_t w_seed = 0;
    auto* sweep = app.add_subcommand("sweep", "Parameter sweeps and ensemble experiments");
    sweep->add_option("--experiment", w_experiment,
                      "correlated-and | self-disclosure | ising-b1 | ising-backbone")
        ->required();
    sweep->add_option("--params", w_params, "Comma-separated key=value overrides");
    sweep->add_option("--seed", w_seed, "Base seed for randomized experiments");
    sweep->add_option("--objective", w_objective, "Objective: kl or tv");
    sweep->add_option("--out", w_out, "Write CSV here instead of stdout");

    std::string g_gate, g_gibbs, g_nsb, g_out;
    std::uint64_t g_seed = 0;
    auto* gen = app.add_subcommand("gen", "Emit a distribution file");
    gen->add_option("--gate", g_gate, "XOR | AND | COPY | UNQ1 | TBC");
    gen->add_option("--gibbs", g_gibbs, "Gibbs spec, e.g. n=4,k=2,mode=upto,beta=1.0");
    gen->add_option("--nsb", g_nsb, "Dirichlet spec, e.g. n=3");
    gen->add_option("--seed", g_seed, "Seed (echoed in file metadata)");
    gen->add_option("--out", g_out, "Output distribution JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*synergy) return run_synergy(sa);
        if (*decompose) return run_decompose(d_dist, d_backbone, d_objective, d_out, false);
        if (*selfsyn) return run_decompose(s_dist, s_backbone, s_objective, s_out, true);
        if (*sweep) return run_sweep(w_experiment, w_params, w_seed, w_objective, w_out);
        if (*gen) return run_gen(g_gate, g_gibbs, g_nsb, g_seed, g_out);
        return kExitInput;
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const capacity_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
