// Copyright 2026 The Cascade Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <complex>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cascade/delays.hpp"
#include "cascade/fock.hpp"
#include "cascade/gaussian.hpp"
#include "cascade/geometries.hpp"
#include "cascade/meq.hpp"
#include "cascade/metrics.hpp"
#include "cascade/sweep.hpp"
#include "cascade/version.hpp"

namespace {

using namespace cascade;

constexpr double kPi = std::numbers::pi;

// The fig8 trajectory window: steady values of unstable squeezing runs are
// read at this horizon, matching the finite-window protocol of the reference
// curves. Stable chains use the exact Lyapunov solution instead.
constexpr double kEntangleHorizon = 300.0;

struct CommonArgs {
    std::string preset;
    std::string config_path;
    std::string out_path;
    std::vector<std::string> params;  // key=value
    std::optional<double> eta;
    std::optional<double> g;
    std::optional<double> phi;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool chain_source = true) {
    if (chain_source) {
        cmd->add_option("--preset", args.preset, "named chain preset");
        cmd->add_option("--config", args.config_path, "chain configuration file (JSON)");
        cmd->add_option("--param", args.params, "extra preset parameter key=value");
        cmd->add_option("--eta", args.eta, "link transmission parameter");
        cmd->add_option("--g", args.g, "coupling parameter");
        cmd->add_option("--phi", args.phi, "loop phase parameter");
    }
    cmd->add_option("--out", args.out_path, "output CSV path (default stdout)");
}

std::map<std::string, double> collect_params(const CommonArgs& args) {
    std::map<std::string, double> params;
    for (const auto& kv : args.params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw ChainError("--param expects key=value, got \"" + kv + "\"");
        try {
            params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
        } catch (const std::exception&) {
            throw ChainError("--param: bad number in \"" + kv + "\"");
        }
    }
    if (args.eta) params["eta"] = *args.eta;
    if (args.g) params["g"] = *args.g;
    if (args.phi) params["phi"] = *args.phi;
    return params;
}

InteractionChain load_chain(const CommonArgs& args) {
    if (!args.config_path.empty()) {
        std::ifstream in(args.config_path);
        if (!in) throw ChainError("cannot read config file " + args.config_path);
        std::stringstream buffer;
        buffer << in.rdbuf();
        return parse_chain(buffer.str());
    }
    if (args.preset.empty())
        throw ChainError("need --preset or --config");
    return preset_chain(preset_from_name(args.preset), collect_params(args));
}

void emit(const CommonArgs& args, CsvTable table, bool plotscript, int plot_columns = 0) {
    table.comments.insert(table.comments.begin(), std::string("cascade ") + kVersion);
    if (args.out_path.empty()) {
        write_csv(std::cout, table);
        return;
    }
    std::ofstream out(args.out_path, std::ios::binary);
    if (!out) throw ChainError("cannot write " + args.out_path);
    write_csv(out, table);
    if (plotscript) {
        const std::string script_path = args.out_path + ".gp";
        std::ofstream gp(script_path);
        if (!gp) throw ChainError("cannot write " + script_path);
        gp << "set datafile separator ','\n"
           << "set key autotitle columnhead\n"
           << "set grid\n";
        const int cols = plot_columns > 0
                             ? plot_columns
                             : static_cast<int>(table.columns.size()) - 1;
        gp << "plot";
        for (int c = 2; c <= cols + 1; ++c) {
            gp << (c > 2 ? "," : "") << " '" << args.out_path << "' using 1:" << c
               << " with lines";
        }
        gp << "\n";
    }
}

std::vector<std::string> upper_triangle_names(std::size_t n_modes) {
    std::vector<std::string> names;
    const std::size_t dim = 2 * n_modes;
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i; j < dim; ++j) {
            names.push_back("C_" + std::to_string(i + 1) + std::to_string(j + 1));
        }
    }
    return names;
}

std::vector<double> upper_triangle(const Eigen::MatrixXd& c) {
    std::vector<double> values;
    for (Eigen::Index i = 0; i < c.rows(); ++i) {
        for (Eigen::Index j = i; j < c.cols(); ++j) values.push_back(c(i, j));
    }
    return values;
}

void append_matrix(CsvTable& table, const std::string& name, const Eigen::MatrixXcd& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            table.add_row(std::vector<std::string>{name, std::to_string(i),
                                                   std::to_string(j),
                                                   format_double(m(i, j).real()),
                                                   format_double(m(i, j).imag())});
        }
    }
}

std::vector<double> time_grid(double t_max, std::size_t points) {
    auto grid = linspace(0.0, t_max, points + 1);
    grid.erase(grid.begin());
    return grid;
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

int run_build(const CommonArgs& args, bool plotscript) {
    const auto chain = load_chain(args);
    CsvTable table;
    table.comments.push_back("command=build");
    table.columns = {"matrix", "i", "j", "re", "im"};
    append_matrix(table, "A", pass_coupling_matrix(chain).cast<std::complex<double>>());
    const auto parts = split_hamiltonian_dissipator(quadrature_matrix(chain));
    append_matrix(table, "R", parts.R);
    append_matrix(table, "L", parts.L);
    const auto jumps = jump_operators(parts.L);
    for (std::size_t k = 0; k < jumps.size(); ++k) {
        table.add_row(std::vector<std::string>{"jump_rate", std::to_string(k), "0",
                                               format_double(jumps[k].rate), "0"});
    }
    emit(args, std::move(table), plotscript);
    return 0;
}

int run_rates(const CommonArgs& args, bool plotscript) {
    const auto chain = load_chain(args);
    const auto rates = rates_from_chain(chain);
    const auto [alpha, beta] =
        bs_tms_weights(chain.passes.at(0).theta,
                       chain.passes.at(chain.passes.size() > 1 ? 1 : 0).theta);
    CsvTable table;
    table.comments.push_back("command=rates");
    table.columns = {"g",          "Gamma_1",     "Gamma_2",    "Gamma_12",
                     "self",       "gamma_th_1",  "gamma_th_2", "gamma_tot_1",
                     "gamma_tot_2", "alpha",      "beta",       "cooperativity"};
    double coop = std::numeric_limits<double>::quiet_NaN();
    try {
        coop = cooperativity(rates);
    } catch (const NumericalError&) {
    }
    table.add_row({rates.g, rates.Gamma[0], rates.Gamma[1], rates.gamma12,
                   rates.self_interaction, rates.gamma_th[0], rates.gamma_th[1],
                   rates.gamma_tot[0], rates.gamma_tot[1], alpha, beta, coop});
    emit(args, std::move(table), plotscript);
    return 0;
}

int run_evolve(const CommonArgs& args, double t_max, double dt, std::size_t points,
               const std::vector<double>& delays, bool plotscript) {
    auto chain = load_chain(args);
    DriftDiffusion fd;
    if (delays.empty()) {
        fd = drift_diffusion(chain);
    } else {
        fd = drift_diffusion(chain.systems,
                             delay_corrected_matrix(chain, DelaySpec{delays}));
    }
    EvolveOptions opts;
    opts.dt = dt;
    const auto grid = time_grid(t_max, points);
    const auto traj = evolve(fd, thermal_state(chain.systems), grid, opts);

    CsvTable table;
    table.comments.push_back("command=evolve");
    table.columns = {"t"};
    for (const auto& name : upper_triangle_names(chain.systems.size()))
        table.columns.push_back(name);
    for (std::size_t i = 0; i < chain.systems.size(); ++i)
        table.columns.push_back("n_" + std::to_string(i + 1));
    for (std::size_t k = 0; k < grid.size(); ++k) {
        std::vector<double> row{grid[k]};
        for (double v : upper_triangle(traj[k])) row.push_back(v);
        for (double n : phonon_numbers(traj[k])) row.push_back(n);
        table.add_row(row);
    }
    emit(args, std::move(table), plotscript);
    return 0;
}

int run_steady(const CommonArgs& args, bool plotscript) {
    const auto chain = load_chain(args);
    const auto c = steady_state(drift_diffusion(chain));
    CsvTable table;
    table.comments.push_back("command=steady");
    for (std::size_t i = 0; i < chain.systems.size(); ++i)
        table.columns.push_back("n_" + std::to_string(i + 1));
    for (const auto& name : upper_triangle_names(chain.systems.size()))
        table.columns.push_back(name);
    std::vector<double> row = phonon_numbers(c);
    for (double v : upper_triangle(c)) row.push_back(v);
    table.add_row(row);
    emit(args, std::move(table), plotscript);
    return 0;
}

int run_cooperativity(const CommonArgs& args, const std::string& scheme, double c1,
                      double c2, bool plotscript) {
    CsvTable table;
    table.comments.push_back("command=cooperativity");
    if (!scheme.empty()) {
        const double eta = args.eta.value_or(1.0);
        CoopScheme s;
        if (scheme == "loop121") s = CoopScheme::loop121;
        else if (scheme == "loop121_pump") s = CoopScheme::loop121_pump;
        else if (scheme == "double_loop") s = CoopScheme::double_loop;
        else throw ChainError("unknown cooperativity scheme \"" + scheme + "\"");
        table.columns = {"eta_sq_loss", "C"};
        table.add_row({1.0 - eta * eta, cooperativity_closed_form(s, eta, c1, c2)});
    } else {
        const auto chain = load_chain(args);
        const auto rates = rates_from_chain(chain);
        double loss = std::numeric_limits<double>::quiet_NaN();
        if (!chain.link_etas.empty())
            loss = 1.0 - chain.link_etas[0] * chain.link_etas[0];
        table.columns = {"eta_sq_loss", "C"};
        table.add_row({loss, cooperativity(rates)});
    }
    emit(args, std::move(table), plotscript);
    return 0;
}

int run_entangle(const CommonArgs& args, double t_max, double dt, std::size_t points,
                 bool plotscript) {
    const auto chain = load_chain(args);
    if (chain.systems.size() != 2)
        throw ChainError("entangle: chain must have exactly two systems");
    EvolveOptions opts;
    opts.dt = dt;
    opts.check_physical = false;
    const auto grid = time_grid(t_max, points);
    const auto traj =
        evolve(drift_diffusion(chain), thermal_state(chain.systems), grid, opts);

    CsvTable table;
    table.comments.push_back("command=entangle");
    table.columns = {"t", "E_N", "Delta_EPR", "n_1", "n_2"};
    for (std::size_t k = 0; k < grid.size(); ++k) {
        double en = std::numeric_limits<double>::quiet_NaN();
        try {
            en = log_negativity(traj[k]);
        } catch (const NumericalError&) {
        }
        const auto n = phonon_numbers(traj[k]);
        table.add_row({grid[k], en, epr_variance(traj[k]), n[0], n[1]});
    }
    emit(args, std::move(table), plotscript);
    return 0;
}

int run_squeeze(const CommonArgs& args, const std::string& scheme, double phi2,
                bool plotscript) {
    const double eta = args.eta.value_or(1.0);
    const double phi = args.phi.value_or(2.0 * kPi / 3.0);
    geometries::MultipassScheme s;
    if (scheme == "two_pass") s = geometries::MultipassScheme::two_pass;
    else if (scheme == "three_pass") s = geometries::MultipassScheme::three_pass;
    else throw ChainError("unknown squeeze scheme \"" + scheme + "\"");
    const double phi23 = std::isnan(phi2) ? phi : phi2;
    const auto rep = geometries::multipass_squeeze(s, eta, phi, phi23);

    CsvTable table;
    table.comments.push_back("command=squeeze scheme=" + scheme);
    table.columns = {"eta", "phi12", "phi23", "g_sq", "Gamma", "r", "re_alpha", "im_alpha"};
    table.add_row({eta, phi, phi23, rep.g_sq, rep.Gamma, rep.r, rep.alpha.real(),
                   rep.alpha.imag()});
    emit(args, std::move(table), plotscript);
    return 0;
}

int run_delays_cmd(const CommonArgs& args, const std::vector<double>& taus,
                   bool plotscript) {
    const auto chain = load_chain(args);
    const DelaySpec delays{taus};
    const auto reports = delay_validity(chain, delays);
    CsvTable table;
    table.comments.push_back("command=delays");
    table.comments.push_back("max_delay_phase=" +
                             format_double(max_delay_phase(chain, delays)));
    // the loop pair's residual if the chain revisits its first system
    for (std::size_t j = 2; j < chain.passes.size(); ++j) {
        if (chain.passes[j].system == chain.passes[0].system) {
            const auto& sys = chain.systems[chain.system_index(chain.passes[0].system)];
            const auto s = suppression_factor(
                transmittance(chain, j, 0), 1.0, sys.omega, delays.tau(j, 0),
                chain.passes[j].phi - chain.passes[0].phi);
            table.comments.push_back("suppression_abs=" + format_double(std::abs(s.factor)));
            table.comments.push_back("phi_compensated=" +
                                     format_double(s.phi_compensated));
            break;
        }
    }
    table.columns = {"j", "k", "epsilon", "margin", "ok", "note"};
    for (const auto& rep : reports) {
        table.add_row(std::vector<std::string>{
            std::to_string(rep.j), std::to_string(rep.k), format_double(rep.epsilon),
            format_double(rep.margin), rep.ok ? "1" : "0", rep.note});
    }
    emit(args, std::move(table), plotscript);
    return 0;
}

int run_oracle_check(const CommonArgs& args, std::vector<int> dims, double tol,
                     double t_max, std::size_t points, bool plotscript) {
    std::vector<std::pair<std::string, InteractionChain>> cases;
    if (!args.preset.empty() || !args.config_path.empty()) {
        cases.emplace_back(args.preset.empty() ? "config" : args.preset, load_chain(args));
    } else {
        // built-in scaled-down suite
        InteractionChain decoupled;
        decoupled.systems = {{1, 1.0, 0.15, 0.25}, {2, -1.0, 0.05, 0.0}};
        cases.emplace_back("decoupled_damped", decoupled);

        cases.emplace_back("single_pass",
                           preset_chain(Preset::single_pass,
                                        {{"g1", 0.15}, {"g2", 0.12}, {"eta", 0.8},
                                         {"theta2", 0.8 * kPi / 4}, {"gamma1", 1e-2},
                                         {"gamma2", 1e-3}, {"nbar2", 0.5}}));
        cases.emplace_back("loop121",
                           preset_chain(Preset::loop121,
                                        {{"g1", 0.15}, {"g2", 0.1}, {"eta", 0.9},
                                         {"gamma1", 1e-2}, {"gamma2", 1e-3},
                                         {"nbar2", 0.5}}));
        InteractionChain tms = preset_chain(
            Preset::loop121, {{"g1", 0.12}, {"g2", 0.1}, {"eta", 0.9},
                              {"theta2", -0.8 * kPi / 4}, {"gamma1", 1e-2},
                              {"gamma2", 1e-3}, {"nbar2", 0.5}});
        tms.systems[0].omega = -1.0;
        cases.emplace_back("loop121_inverted", tms);

        cases.emplace_back("double_loop",
                           preset_chain(Preset::double_loop,
                                        {{"g1", 0.12}, {"g2", 0.1}, {"eta", 0.85},
                                         {"gamma1", 5e-3}, {"gamma2", 1e-3}}));
    }

    CsvTable table;
    table.comments.push_back("command=oracle-check");
    table.columns = {"case", "max_abs_deviation", "top_population", "pass"};
    const auto grid = time_grid(t_max, points);
    bool all_pass = true;
    for (const auto& [name, chain] : cases) {
        fock::FockConfig cfg;
        cfg.dims.assign(chain.systems.size(), dims.empty() ? 10 : dims[0]);
        if (dims.size() == chain.systems.size())
            cfg.dims.assign(dims.begin(), dims.end());
        const auto rep = fock::oracle_compare(chain, cfg, grid, tol);
        all_pass = all_pass && rep.pass;
        table.add_row(std::vector<std::string>{name, format_double(rep.max_abs_deviation),
                                               format_double(rep.max_top_population),
                                               rep.pass ? "1" : "0"});
    }
    emit(args, std::move(table), plotscript);
    if (!all_pass) throw NumericalError("oracle-check: deviation above tolerance");
    return 0;
}

int run_sweep_cmd(const CommonArgs& args, const std::string& axis,
                  const std::string& grid_spec, int jobs, double t_max, double dt,
                  bool plotscript) {
    if (axis.empty() || grid_spec.empty())
        throw ChainError("sweep: need --axis and --grid");
    const auto grid = parse_grid(grid_spec);
    auto params = collect_params(args);
    const bool is_fig6 = args.preset == "fig6";
    const bool is_fig8 = args.preset.starts_with("fig8");
    const bool is_fig7 = args.preset == "fig7";

    std::vector<std::string> names;
    RowFunction fn;

    if (axis == "time") {
        // one trajectory, sampled on the grid
        const auto chain = load_chain(args);
        if (chain.systems.size() != 2)
            throw ChainError("sweep --axis time: chain must have two systems");
        EvolveOptions opts;
        opts.dt = dt;
        opts.check_physical = false;
        const auto traj =
            evolve(drift_diffusion(chain), thermal_state(chain.systems), grid, opts);
        names = {"E_N", "Delta_EPR", "n_1", "n_2"};
        std::vector<SweepRow> rows;
        for (std::size_t k = 0; k < grid.size(); ++k) {
            SweepRow row;
            row.x = grid[k];
            double en = std::numeric_limits<double>::quiet_NaN();
            try {
                en = log_negativity(traj[k]);
            } catch (const NumericalError&) {
            }
            const auto n = phonon_numbers(traj[k]);
            row.values = {en, epr_variance(traj[k]), n[0], n[1]};
            rows.push_back(std::move(row));
        }
        auto table = sweep_table("t", names, rows);
        table.comments.push_back("command=sweep axis=time preset=" + args.preset);
        emit(args, std::move(table), plotscript, static_cast<int>(names.size()));
        return 0;
    }

    if (axis == "loss") {
        if (is_fig6) {
            names = {"C_single_loop", "C_double_loop"};
            fn = [](double loss) -> std::vector<double> {
                const double eta = std::sqrt(1.0 - loss);
                const double inf = std::numeric_limits<double>::infinity();
                return {cooperativity_closed_form(CoopScheme::loop121, eta, inf, inf),
                        cooperativity_closed_form(CoopScheme::double_loop, eta, inf, inf)};
            };
        } else if (is_fig8) {
            names = {"E_N"};
            const std::string preset = args.preset;
            fn = [preset, params](double loss) -> std::vector<double> {
                auto p = params;
                p["eta"] = std::sqrt(1.0 - loss);
                const auto chain = preset_chain(preset_from_name(preset), p);
                StationaryOptions opts;
                opts.horizon = kEntangleHorizon;
                return {steady_log_negativity(chain, opts)};
            };
        } else if (is_fig7) {
            names = {"n_1", "n_2"};
            fn = [params](double loss) -> std::vector<double> {
                auto p = params;
                p["eta"] = std::sqrt(1.0 - loss);
                const auto chain = preset_chain(Preset::fig7, p);
                return phonon_numbers(steady_state(drift_diffusion(chain)));
            };
        } else {
            names = {"g", "Gamma_1", "Gamma_2", "Gamma_12"};
            const std::string preset = args.preset;
            fn = [preset, params](double loss) -> std::vector<double> {
                auto p = params;
                p["eta"] = std::sqrt(1.0 - loss);
                const auto rates =
                    rates_from_chain(preset_chain(preset_from_name(preset), p));
                return {rates.g, rates.Gamma[0], rates.Gamma[1], rates.gamma12};
            };
        }
    } else if (axis == "coupling") {
        if (is_fig7) {
            names = {"n_1", "n_2"};
            fn = [params](double g) -> std::vector<double> {
                auto p = params;
                p["g"] = g;
                const auto chain = preset_chain(Preset::fig7, p);
                return phonon_numbers(steady_state(drift_diffusion(chain)));
            };
        } else {
            names = {"g", "Gamma_1", "Gamma_2", "Gamma_12"};
            const std::string preset = args.preset;
            fn = [preset, params](double g) -> std::vector<double> {
                auto p = params;
                p["g1"] = g;
                p["g2"] = g;
                const auto rates =
                    rates_from_chain(preset_chain(preset_from_name(preset), p));
                return {rates.g, rates.Gamma[0], rates.Gamma[1], rates.gamma12};
            };
        }
    } else if (axis == "phase") {
        names = {"g", "Gamma_1", "Gamma_2", "Gamma_12", "self"};
        const std::string preset = args.preset;
        fn = [preset, params](double phi) -> std::vector<double> {
            auto p = params;
            p["phi"] = phi;
            const auto rates = rates_from_chain(preset_chain(preset_from_name(preset), p));
            return {rates.g, rates.Gamma[0], rates.Gamma[1], rates.gamma12,
                    rates.self_interaction};
        };
    } else {
        throw ChainError("sweep: unknown axis \"" + axis + "\"");
    }

    const auto rows = run_sweep(fn, grid, names.size(), jobs);
    auto table = sweep_table(axis == "loss" ? "loss" : (axis == "coupling" ? "g" : "phi"),
                             names, rows);
    table.comments.push_back("command=sweep axis=" + axis + " preset=" + args.preset);
    emit(args, std::move(table), plotscript, static_cast<int>(names.size()));
    (void)t_max;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"simulator for light-mediated interactions in looped optical chains"};
    app.require_subcommand(1);

    CommonArgs args;
    bool plotscript = false;
    double t_max = 100.0, dt = 0.0, tol = 1e-3;
    std::size_t points = 200;
    int jobs = 0;
    std::string axis, grid_spec, scheme;
    double c1 = 25.0, c2 = 4.0;
    double phi2 = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> delay_taus;
    std::vector<int> dims;

    auto* build = app.add_subcommand("build", "pass matrix, Hamiltonian/dissipator, jump rates");
    add_common(build, args);

    auto* rates = app.add_subcommand("rates", "derived coupling and noise rates");
    add_common(rates, args);

    auto* evolve_cmd = app.add_subcommand("evolve", "covariance trajectory from the thermal state");
    add_common(evolve_cmd, args);
    evolve_cmd->add_option("--t-max", t_max, "final time");
    evolve_cmd->add_option("--dt", dt, "integrator step (0 = auto)");
    evolve_cmd->add_option("--points", points, "number of samples");
    evolve_cmd->add_option("--delays", delay_taus, "per-pass arrival times")->delimiter(',');

    auto* steady = app.add_subcommand("steady", "Lyapunov steady state");
    add_common(steady, args);

    auto* coop = app.add_subcommand("cooperativity", "closed-form or chain cooperativity");
    add_common(coop, args);
    coop->add_option("--scheme", scheme, "loop121 | loop121_pump | double_loop");
    coop->add_option("--c1", c1, "single-pass cooperativity of system 1");
    coop->add_option("--c2", c2, "single-pass cooperativity of system 2");

    auto* entangle = app.add_subcommand("entangle", "entanglement measures along a trajectory");
    add_common(entangle, args);
    entangle->add_option("--t-max", t_max, "final time");
    entangle->add_option("--dt", dt, "integrator step (0 = auto)");
    entangle->add_option("--points", points, "number of samples");

    auto* squeeze = app.add_subcommand("squeeze", "multipass single-system squeezing report");
    add_common(squeeze, args, false);
    squeeze->add_option("--scheme", scheme, "two_pass | three_pass")->required();
    squeeze->add_option("--eta", args.eta, "per-pass transmission");
    squeeze->add_option("--phi", args.phi, "loop phase (phi12)");
    squeeze->add_option("--phi2", phi2, "second loop phase (phi23, default = phi12)");

    auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweep to CSV");
    add_common(sweep_cmd, args);
    sweep_cmd->add_option("--axis", axis, "loss | coupling | phase | time")->required();
    sweep_cmd->add_option("--grid", grid_spec, "start:stop:count or log:start:stop:count")
        ->required();
    sweep_cmd->add_option("--jobs", jobs, "worker threads (0 = all cores)");
    sweep_cmd->add_option("--dt", dt, "integrator step for time sweeps");

    auto* oracle = app.add_subcommand("oracle-check", "Fock-space cross-check of the Gaussian pipeline");
    add_common(oracle, args);
    oracle->add_option("--dims", dims, "per-mode truncation")->delimiter(',');
    oracle->add_option("--tol", tol, "max covariance deviation");
    oracle->add_option("--t-max", t_max, "final time")->default_val(10.0);
    oracle->add_option("--points", points, "number of samples")->default_val(5);

    auto* delays_cmd = app.add_subcommand("delays", "delay validity and suppression report");
    add_common(delays_cmd, args);
    delays_cmd->add_option("--delays", delay_taus, "per-pass arrival times")
        ->delimiter(',')
        ->required();

    for (auto* cmd : {build, rates, evolve_cmd, steady, coop, entangle, squeeze,
                      sweep_cmd, oracle, delays_cmd}) {
        cmd->add_flag("--emit-plotscript", plotscript, "write a companion gnuplot script");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (build->parsed()) return run_build(args, plotscript);
        if (rates->parsed()) return run_rates(args, plotscript);
        if (evolve_cmd->parsed())
            return run_evolve(args, t_max, dt, points, delay_taus, plotscript);
        if (steady->parsed()) return run_steady(args, plotscript);
        if (coop->parsed()) return run_cooperativity(args, scheme, c1, c2, plotscript);
        if (entangle->parsed()) return run_entangle(args, t_max, dt, points, plotscript);
        if (squeeze->parsed()) return run_squeeze(args, scheme, phi2, plotscript);
        if (sweep_cmd->parsed())
            return run_sweep_cmd(args, axis, grid_spec, jobs, t_max, dt, plotscript);
        if (oracle->parsed())
            return run_oracle_check(args, dims, tol, t_max, points, plotscript);
        if (delays_cmd->parsed()) return run_delays_cmd(args, delay_taus, plotscript);
    } catch (const ChainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
