// gridcell - batch front-end for the coverage analytics, purchase policies,
// the DP oracle, the prediction-error study and the scheme comparison.
//
// Every command is a pure function of (config, profiles, seed, overrides):
// identical inputs produce byte-identical output files. Results are staged
// in memory and written atomically, so failed runs leave nothing behind.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gridcell/analytic.hpp"
#include "gridcell/energy.hpp"
#include "gridcell/errors.hpp"
#include "gridcell/io.hpp"
#include "gridcell/montecarlo.hpp"
#include "gridcell/policy.hpp"
#include "gridcell/profile.hpp"
#include "gridcell/scenario.hpp"

namespace fs = std::filesystem;
using gridcell::format_double;
using ordered_json = nlohmann::ordered_json;

namespace {

struct RunManifest {
    std::string command;
    fs::path config_path;
    fs::path profile_path;
    fs::path out_dir;
    std::uint64_t seed = 0;
    std::vector<std::string> overrides; // "key=value"
};

struct Inputs {
    gridcell::ConfigFile cfg;
    std::vector<gridcell::HorizonProfile> profiles;
    std::map<std::string, std::string> params; // command-scoped overrides
};

Inputs load_inputs(const RunManifest& m) {
    Inputs in;
    in.cfg = gridcell::load_config(m.config_path);
    in.profiles = gridcell::load_profiles(m.profile_path);
    for (const auto& kv : m.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw gridcell::ValidationError("override must be key=value, got '" + kv + "'");
        const std::string key = kv.substr(0, eq);
        const std::string value = kv.substr(eq + 1);
        if (key.find('.') != std::string::npos)
            in.params[key] = value; // command parameter, validated by the command
        else
            gridcell::apply_override(in.cfg, key, value);
    }
    return in;
}

double param_double(const Inputs& in, const std::string& key, double fallback) {
    const auto it = in.params.find(key);
    return it == in.params.end() ? fallback : std::stod(it->second);
}

std::vector<double> param_list(const Inputs& in, const std::string& key,
                               std::vector<double> fallback) {
    const auto it = in.params.find(key);
    if (it == in.params.end()) return fallback;
    std::vector<double> out;
    std::stringstream ss(it->second);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    if (out.empty()) throw gridcell::ValidationError("empty list for '" + key + "'");
    return out;
}

void write_outputs(const fs::path& out_dir, const std::map<std::string, std::string>& files) {
    fs::create_directories(out_dir);
    for (const auto& [name, content] : files) gridcell::atomic_write(out_dir / name, content);
}

// ---------------------------------------------------------------- analyze

void cmd_analyze(const RunManifest& m) {
    const Inputs in = load_inputs(m);
    const auto& net = in.cfg.net;
    const int grid_n = static_cast<int>(param_double(in, "analyze.grid_n", 10));

    std::string per_horizon = "t,rho,lambda_m,p_suc_closed,p_suc_quadrature,rho_min\n";
    for (const auto& p : in.profiles) {
        const double lambda_m = in.cfg.lambda_m_all * p.theta;
        const double rmin = gridcell::rho_min(net, lambda_m);
        const gridcell::CoverageInputs cov{rmin, lambda_m};
        per_horizon += std::to_string(p.t) + "," + format_double(rmin) + "," +
                       format_double(lambda_m) + "," +
                       format_double(gridcell::success_probability(net, cov)) + "," +
                       format_double(gridcell::success_probability_quadrature(net, cov)) + "," +
                       format_double(rmin) + "\n";
    }

    std::string grid = "rho,lambda_m,p_suc_closed,p_suc_quadrature\n";
    const double lm_lo = 1e-4, lm_hi = 8e-3;
    for (int i = 0; i < grid_n; ++i) {
        const double rho = 0.1 + (1.0 - 0.1) * i / (grid_n - 1);
        for (int j = 0; j < grid_n; ++j) {
            const double lm = lm_lo + (lm_hi - lm_lo) * j / (grid_n - 1);
            const gridcell::CoverageInputs cov{rho, lm};
            grid += format_double(rho) + "," + format_double(lm) + "," +
                    format_double(gridcell::success_probability(net, cov)) + "," +
                    format_double(gridcell::success_probability_quadrature(net, cov)) + "\n";
        }
    }

    ordered_json summary;
    summary["command"] = "analyze";
    summary["horizons"] = in.profiles.size();
    summary["grid_points"] = grid_n * grid_n;
    summary["g0"] = gridcell::solve_g0(net.epsilon);
    summary["v"] = gridcell::interference_factor_v(net.beta, net.alpha);

    write_outputs(m.out_dir, {{"coverage.csv", per_horizon},
                              {"coverage_grid.csv", grid},
                              {"analyze_summary.json", summary.dump(2) + "\n"}});
}

// --------------------------------------------------------------- schedule

void cmd_schedule(const RunManifest& m) {
    const Inputs in = load_inputs(m);
    const auto rule_name = in.params.count("schedule.rule") ? in.params.at("schedule.rule")
                                                            : std::string("suboptimal");
    gridcell::PurchaseRule rule;
    if (rule_name == "myopic") rule = gridcell::PurchaseRule::myopic;
    else if (rule_name == "suboptimal") rule = gridcell::PurchaseRule::suboptimal;
    else throw gridcell::ValidationError("schedule.rule must be myopic or suboptimal");

    const auto schedule =
        gridcell::run_policy(in.cfg.net, in.profiles, in.cfg.lambda_m_all, rule);

    std::string csv = "t,rho_star,G,B,price,lambda_e,theta\n";
    for (std::size_t i = 0; i < in.profiles.size(); ++i) {
        csv += std::to_string(in.profiles[i].t) + "," + format_double(schedule.rho[i]) + "," +
               format_double(schedule.g[i]) + "," + format_double(schedule.storage[i]) + "," +
               format_double(in.profiles[i].price) + "," +
               format_double(in.profiles[i].lambda_e) + "," +
               format_double(in.profiles[i].theta) + "\n";
    }

    ordered_json summary;
    summary["command"] = "schedule";
    summary["rule"] = rule_name;
    summary["horizons"] = in.profiles.size();
    summary["total_cost"] = schedule.total_cost;
    summary["final_storage"] = schedule.storage.back();

    write_outputs(m.out_dir,
                  {{"schedule.csv", csv}, {"schedule_summary.json", summary.dump(2) + "\n"}});
}

// ----------------------------------------------------------------- oracle

void cmd_oracle(const RunManifest& m) {
    const Inputs in = load_inputs(m);
    const int t_max = static_cast<int>(param_double(in, "oracle.t_max", 5));
    const double grid_step = param_double(in, "oracle.grid_step", 1e-4);
    const auto budget =
        static_cast<std::uint64_t>(param_double(in, "oracle.budget", 4e9));
    if (t_max < 1 || t_max > static_cast<int>(in.profiles.size()))
        throw gridcell::ValidationError("oracle.t_max out of range");

    const auto demand_full =
        gridcell::DemandProfile::from_profiles(in.cfg.net, in.profiles, in.cfg.lambda_m_all);

    std::string csv = "T,optimal_cost,suboptimal_cost,abs_gap\n";
    ordered_json rows = ordered_json::array();
    for (int T = 1; T <= t_max; ++T) {
        gridcell::DemandProfile demand;
        demand.capacity = demand_full.capacity;
        demand.e_min.assign(demand_full.e_min.begin(), demand_full.e_min.begin() + T);
        demand.lambda_e.assign(demand_full.lambda_e.begin(), demand_full.lambda_e.begin() + T);
        demand.price.assign(demand_full.price.begin(), demand_full.price.begin() + T);

        const double opt = gridcell::dp_optimal_search(demand, grid_step, budget).schedule.total_cost;
        const double sub =
            gridcell::run_purchase_schedule(demand, gridcell::PurchaseRule::suboptimal).total_cost;
        csv += std::to_string(T) + "," + format_double(opt) + "," + format_double(sub) + "," +
               format_double(sub - opt) + "\n";
        rows.push_back({{"T", T}, {"optimal", opt}, {"suboptimal", sub}, {"abs_gap", sub - opt}});
    }

    ordered_json summary;
    summary["command"] = "oracle";
    summary["grid_step"] = grid_step;
    summary["rows"] = rows;

    write_outputs(m.out_dir,
                  {{"oracle.csv", csv}, {"oracle_summary.json", summary.dump(2) + "\n"}});
}

// ----------------------------------------------------------------- errors

void cmd_errors(const RunManifest& m) {
    const Inputs in = load_inputs(m);
    const double eta = param_double(in, "errors.eta", 0.1);
    const int n_real = static_cast<int>(param_double(in, "errors.n_real", 1000));
    const auto t_list = param_list(in, "errors.t_list", {6, 12, 18, 24});

    std::string csv = "T,error_free_cost,mean_cost,std_cost,eta,realizations\n";
    for (double t_val : t_list) {
        const int T = static_cast<int>(t_val);
        if (T < 1 || T > static_cast<int>(in.profiles.size()))
            throw gridcell::ValidationError("errors.t_list entry out of range");
        std::vector<gridcell::HorizonProfile> prefix(in.profiles.begin(),
                                                     in.profiles.begin() + T);
        const auto res = gridcell::run_with_errors(in.cfg.net, prefix, in.cfg.lambda_m_all,
                                                   {eta, m.seed}, n_real);
        csv += std::to_string(T) + "," + format_double(res.error_free_cost) + "," +
               format_double(res.mean_cost) + "," + format_double(res.std_cost) + "," +
               format_double(eta) + "," + std::to_string(n_real) + "\n";
    }

    ordered_json summary;
    summary["command"] = "errors";
    summary["eta"] = eta;
    summary["realizations"] = n_real;
    summary["seed"] = m.seed;

    write_outputs(m.out_dir,
                  {{"errors.csv", csv}, {"errors_summary.json", summary.dump(2) + "\n"}});
}

// ---------------------------------------------------------------- compare

void cmd_compare(const RunManifest& m) {
    const Inputs in = load_inputs(m);
    const int T = static_cast<int>(param_double(in, "compare.T", 3));
    const int n_real = static_cast<int>(param_double(in, "compare.n_real", 500));
    const double L = param_double(in, "compare.L", 100.0);
    const double window = param_double(in, "compare.window", 1000.0);
    const int start = static_cast<int>(param_double(in, "compare.start", 7));
    const auto sweep = param_list(in, "compare.sweep", {2e-3, 4e-3, 6e-3, 8e-3});

    if (start < 1 || start + T - 1 > static_cast<int>(in.profiles.size()))
        throw gridcell::ValidationError("compare window exceeds the profile");
    std::vector<gridcell::HorizonProfile> window_profiles(
        in.profiles.begin() + (start - 1), in.profiles.begin() + (start - 1) + T);

    std::string csv =
        "lambda_m_all,proposed,proposed_ci,cluster,cluster_ci,no_coordination,"
        "no_coordination_ci,proposed_p_suc,realizations\n";
    for (double lm_all : sweep) {
        const auto cmp = gridcell::compare_schemes(in.cfg.net, window_profiles, lm_all, T,
                                                   n_real, L, m.seed, window);
        csv += format_double(lm_all) + "," + format_double(cmp.proposed.total_cost) + "," +
               format_double(cmp.proposed.ci_half_width) + "," +
               format_double(cmp.cluster.total_cost) + "," +
               format_double(cmp.cluster.ci_half_width) + "," +
               format_double(cmp.no_coordination.total_cost) + "," +
               format_double(cmp.no_coordination.ci_half_width) + "," +
               format_double(cmp.proposed.empirical_p_suc) + "," + std::to_string(n_real) + "\n";
    }

    ordered_json summary;
    summary["command"] = "compare";
    summary["T"] = T;
    summary["start"] = start;
    summary["L"] = L;
    summary["window"] = window;
    summary["realizations"] = n_real;
    summary["seed"] = m.seed;

    write_outputs(m.out_dir,
                  {{"compare.csv", csv}, {"compare_summary.json", summary.dump(2) + "\n"}});
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hybrid-energy cellular network scheduling toolkit"};
    app.require_subcommand(1);

    RunManifest manifest;
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", manifest.config_path, "network config file")->required();
        sub->add_option("--profiles", manifest.profile_path, "profile CSV/JSON")->required();
        sub->add_option("--seed", manifest.seed, "RNG seed")->default_val(1);
        sub->add_option("--out", manifest.out_dir, "output directory")->required();
        sub->add_option("--set", manifest.overrides, "key=value overrides");
    };

    add_common(app.add_subcommand("analyze", "coverage and rho_min sweeps"));
    add_common(app.add_subcommand("schedule", "on/off and purchase schedule"));
    add_common(app.add_subcommand("oracle", "suboptimal rule vs DP optimum"));
    add_common(app.add_subcommand("errors", "prediction-error robustness study"));
    add_common(app.add_subcommand("compare", "reference-scheme comparison"));

    CLI11_PARSE(app, argc, argv);
    manifest.command = app.get_subcommands().front()->get_name();

    try {
        if (manifest.command == "analyze") cmd_analyze(manifest);
        else if (manifest.command == "schedule") cmd_schedule(manifest);
        else if (manifest.command == "oracle") cmd_oracle(manifest);
        else if (manifest.command == "errors") cmd_errors(manifest);
        else if (manifest.command == "compare") cmd_compare(manifest);
    } catch (const gridcell::BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const gridcell::InfeasibleLoad& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const gridcell::DemandViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const gridcell::PreconditionViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const gridcell::UnsupportedRegime& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const gridcell::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const gridcell::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
