// Copyright 2026 The diffchem Authors
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
#include "diffchem/cli/cli.hpp"

#include "diffchem/autodiff/derivatives.hpp"
#include "diffchem/error.hpp"
#include "diffchem/hamiltonian/molecular.hpp"
#include "diffchem/io/io.hpp"
#include "diffchem/workflows/workflows.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

namespace diffchem::cli {

using io::json;

namespace {

const std::vector<std::string> kCommands = {"hf",      "hamiltonian", "vqe", "forces",
                                            "hessian", "optimize",    "scan"};

struct OptionDef {
    const char *name;
    const char *help;
    bool flag = false;
};

const std::vector<OptionDef> kCommon = {
    {"output", "write the JSON report to this file instead of stdout"},
    {"scf-tol", "SCF density tolerance (default 1e-10)"},
    {"scf-max-iter", "SCF iteration cap (default 200)"},
};

const std::vector<OptionDef> kCircuitOptions = {
    {"ansatz", "circuit template: all-singles-doubles (default)"},
    {"circuit", "circuit JSON file (overrides --ansatz)"},
    {"step", "gradient-descent step for circuit parameters (default 0.1)"},
    {"tol", "convergence threshold on max |gradient| (default 1e-7)"},
    {"max-steps", "maximum optimizer steps (default 500)"},
    {"theta0", "initial parameters: zeros (default) or random"},
    {"seed", "seed for randomized options (default 0)"},
};

std::vector<OptionDef> options_for(const std::string &cmd) {
    std::vector<OptionDef> out = kCommon;
    auto add = [&out](const std::vector<OptionDef> &more) {
        out.insert(out.end(), more.begin(), more.end());
    };
    if (cmd == "hf") {
        add({{"grad", "comma list of coordinates,exponents,coefficients to differentiate"},
             {"dump-integrals", "include S, T, V and ERI tables", true}});
    } else if (cmd == "hamiltonian") {
        add({{"threshold", "coefficient prune threshold (default 1e-12)"},
             {"sparse", "include the sparse matrix as [row, col, re, im] entries", true},
             {"groups", "include qubit-wise commuting groups", true}});
    } else {
        add(kCircuitOptions);
        if (cmd == "vqe") {
            add({{"excited", "number of penalized excited states to compute (default 0)"}});
        } else if (cmd == "hessian") {
            add({{"mass-weighted", "diagonalize the mass-weighted Hessian", true}});
        } else if (cmd == "optimize") {
            add({{"what", "comma list: circuit,coordinates,exponents,coefficients"},
                 {"rounds", "maximum rounds (default 3000)"},
                 {"coord-step", "coordinate step (default 0.05)"},
                 {"basis-step", "exponent/coefficient step (default 0.01)"},
                 {"circuit-steps", "circuit steps per round (default 1)"}});
        } else if (cmd == "scan") {
            add({{"atom", "index of the atom to move (default last)"},
                 {"axis", "x, y or z (default z)"},
                 {"start", "first coordinate value in bohr"},
                 {"stop", "last coordinate value in bohr"},
                 {"points", "number of grid points (default 9)"},
                 {"no-warm-start", "start every point from theta0", true}});
        }
    }
    return out;
}

[[noreturn]] void usage(const std::string &msg) { fail(ErrorKind::Usage, msg); }

double opt_double(const RunSpec &s, const std::string &key, double fallback) {
    const auto it = s.options.find(key);
    if (it == s.options.end()) {
        return fallback;
    }
    try {
        std::size_t used = 0;
        const double v = std::stod(it->second, &used);
        if (used != it->second.size() || !std::isfinite(v)) {
            throw std::invalid_argument("trailing");
        }
        return v;
    } catch (const std::exception &) {
        usage("--" + key + " expects a number, got '" + it->second + "'");
    }
}

int opt_int(const RunSpec &s, const std::string &key, int fallback) {
    const double v = opt_double(s, key, fallback);
    if (v != std::floor(v) || std::abs(v) > 1e9) {
        usage("--" + key + " expects an integer");
    }
    return static_cast<int>(v);
}

std::string opt_str(const RunSpec &s, const std::string &key, const std::string &fallback) {
    const auto it = s.options.find(key);
    return it == s.options.end() ? fallback : it->second;
}

bool opt_flag(const RunSpec &s, const std::string &key) { return s.options.count(key) > 0; }

std::vector<std::string> split_list(const std::string &text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

double round10(double v) { return std::round(v * 1e10) / 1e10; }

json rounded(const std::vector<double> &v) {
    json out = json::array();
    for (double x : v) {
        out.push_back(round10(x));
    }
    return out;
}

json matrix_json(const std::vector<std::vector<double>> &m) {
    json out = json::array();
    for (const auto &row : m) {
        out.push_back(rounded(row));
    }
    return out;
}

json matrix_json(const linalg::Matrix<double> &m) {
    json out = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            row.push_back(round10(m(i, j)));
        }
        out.push_back(row);
    }
    return out;
}

std::string kind_name(ParameterKind k) {
    switch (k) {
    case ParameterKind::Coordinate: return "coordinate";
    case ParameterKind::Exponent: return "exponent";
    case ParameterKind::Coefficient: return "coefficient";
    }
    return "?";
}

json layout_json(const Molecule &mol) {
    json out = json::array();
    for (const auto &s : mol.layout()) {
        out.push_back({{"kind", kind_name(s.kind)}, {"owner", s.owner}, {"component", s.component}});
    }
    return out;
}

scf::ScfConfig scf_config(const RunSpec &s) {
    scf::ScfConfig c;
    c.tol_density = opt_double(s, "scf-tol", c.tol_density);
    c.max_iterations = opt_int(s, "scf-max-iter", c.max_iterations);
    return c;
}

wf::OptimizerConfig optimizer_config(const RunSpec &s) {
    wf::OptimizerConfig c;
    c.step = opt_double(s, "step", c.step);
    c.tolerance = opt_double(s, "tol", c.tolerance);
    c.max_steps = opt_int(s, "max-steps", c.max_steps);
    return c;
}

DiffFlags parse_classes(const std::string &text, bool *circuit) {
    DiffFlags f;
    for (const auto &item : split_list(text)) {
        if (item == "coordinates") {
            f.coordinates = true;
        } else if (item == "exponents") {
            f.exponents = true;
        } else if (item == "coefficients") {
            f.coefficients = true;
        } else if (item == "circuit" && circuit != nullptr) {
            *circuit = true;
        } else {
            usage("unknown parameter class '" + item + "'");
        }
    }
    return f;
}

circ::Circuit make_circuit(const RunSpec &s, const Molecule &mol, unsigned n_qubits) {
    if (opt_flag(s, "circuit")) {
        return io::circuit_from_json(json::parse(io::read_file(opt_str(s, "circuit", ""))));
    }
    const std::string ansatz = opt_str(s, "ansatz", "all-singles-doubles");
    if (ansatz != "all-singles-doubles") {
        usage("unknown ansatz '" + ansatz + "'");
    }
    return circ::all_singles_doubles(mol.n_electrons(), n_qubits);
}

std::vector<double> make_theta0(const RunSpec &s, std::size_t n) {
    const std::string mode = opt_str(s, "theta0", "zeros");
    std::vector<double> theta(n, 0.0);
    if (mode == "random") {
        std::mt19937_64 rng(static_cast<std::uint64_t>(opt_int(s, "seed", 0)));
        for (auto &t : theta) {
            // Deterministic map of raw engine output to [-0.1, 0.1).
            t = 0.2 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 0.1;
        }
    } else if (mode != "zeros") {
        usage("--theta0 must be 'zeros' or 'random'");
    }
    return theta;
}

json vqe_json(const wf::VQEResult &r) {
    return {{"energy", round10(r.energy)},
            {"cost", round10(r.cost)},
            {"iterations", r.iterations},
            {"converged", r.converged},
            {"gradient_norm_final", r.gradient_norm},
            {"optimal_parameters", rounded(r.parameters)},
            {"energy_history", rounded(r.energy_history)}};
}

// Standard atomic weights (u) for H-Ne, converted to electron masses.
double atomic_mass(int z) {
    static const double weights[] = {0.0,    1.008,  4.0026, 6.94,   9.0122, 10.81,
                                     12.011, 14.007, 15.999, 18.998, 20.180};
    if (z < 1 || z > 10) {
        fail(ErrorKind::UnsupportedElement, "no mass table entry for Z = " + std::to_string(z));
    }
    return weights[z] * 1822.888486;
}

struct Context {
    RunSpec spec;
    io::MoleculeSpec mol_spec;
    Molecule molecule;
};

json cmd_hf(const Context &c) {
    const auto &s = c.spec;
    const auto scf_cfg = scf_config(s);
    const auto res = scf::scf_solve(c.molecule.system<double>(), scf_cfg);
    json out = {{"total_energy", round10(res.total_energy)},
                {"electronic_energy", round10(res.electronic_energy)},
                {"nuclear_repulsion", round10(res.nuclear_repulsion)},
                {"orbital_energies", rounded(res.state.orbital_energies)},
                {"iterations", res.iterations},
                {"n_basis", c.molecule.n_basis()},
                {"n_electrons", c.molecule.n_electrons()},
                {"degenerate_orbitals", res.degenerate_orbitals}};
    if (opt_flag(s, "grad")) {
        const Molecule mol = c.molecule.with_flags(parse_classes(opt_str(s, "grad", ""), nullptr));
        const auto x0 = pack_parameters(mol).values;
        const auto g = ad::grad(
            [&](const std::vector<ad::Grad> &x) {
                return scf::hf_energy(mol.lift<ad::Grad>(std::span<const ad::Grad>(x)), scf_cfg);
            },
            x0);
        out["gradient"] = {{"layout", layout_json(mol)}, {"values", rounded(g)}};
    }
    if (opt_flag(s, "dump-integrals")) {
        const auto &ints = res.integrals;
        json eri = json::array();
        const std::size_t n = c.molecule.n_basis();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j <= i; ++j) {
                for (std::size_t k = 0; k < n; ++k) {
                    for (std::size_t l = 0; l <= k; ++l) {
                        if (i * (i + 1) / 2 + j >= k * (k + 1) / 2 + l) {
                            eri.push_back({i, j, k, l, round10(ints.repulsion(i, j, k, l))});
                        }
                    }
                }
            }
        }
        out["integrals"] = {{"overlap", matrix_json(ints.overlap)},
                            {"kinetic", matrix_json(ints.kinetic)},
                            {"attraction", matrix_json(ints.attraction)},
                            {"core_hamiltonian", matrix_json(res.core_hamiltonian)},
                            {"repulsion", eri}};
    }
    return out;
}

json cmd_hamiltonian(const Context &c) {
    const auto &s = c.spec;
    const double threshold = opt_double(s, "threshold", ham::kPruneThreshold);
    const auto qh = ham::build_qubit_hamiltonian(c.molecule, scf_config(s), threshold);
    json out = {{"n_qubits", qh.pauli.n_qubits()},
                {"n_terms", qh.pauli.size()},
                {"core_constant", round10(qh.core_constant)},
                {"hf_energy", round10(qh.scf.total_energy)},
                {"pauli_text", ham::to_text(qh.pauli, qh.core_constant)}};
    if (opt_flag(s, "groups")) {
        json groups = json::array();
        for (const auto &g : ham::group_commuting(qh.pauli)) {
            json words = json::array();
            for (const auto &t : g.terms()) {
                words.push_back(ham::to_string(t.word));
            }
            groups.push_back(words);
        }
        out["groups"] = groups;
    }
    if (opt_flag(s, "sparse")) {
        out["sparse"] = io::sparse_to_json(ham::to_sparse(qh.pauli));
    }
    return out;
}

json cmd_vqe(const Context &c) {
    const auto &s = c.spec;
    const auto prob = wf::molecular_problem(c.molecule, scf_config(s));
    const auto circuit = make_circuit(s, c.molecule, prob.hamiltonian.pauli.n_qubits());
    const auto opt = optimizer_config(s);
    const auto r = wf::vqe_minimize(prob.sparse, circuit, prob.initial,
                                    make_theta0(s, circuit.n_parameters()), opt);
    json out = {{"n_qubits", prob.hamiltonian.pauli.n_qubits()},
                {"hf_energy", round10(prob.hamiltonian.scf.total_energy)},
                {"circuit", io::circuit_to_json(circuit)},
                {"ground", vqe_json(r)}};
    const int n_excited = opt_int(s, "excited", 0);
    if (n_excited < 0) {
        usage("--excited must be non-negative");
    }
    if (n_excited > 0) {
        std::vector<circ::StateVector> lower{circ::run(circuit, r.parameters, prob.initial)};
        json excited = json::array();
        for (int k = 0; k < n_excited; ++k) {
            const auto pen = wf::default_penalty(prob.sparse, lower);
            // A symmetric start can be stationary for the penalized cost; use a
            // fixed small offset instead of the zero vector.
            std::vector<double> theta0(circuit.n_parameters());
            for (std::size_t a = 0; a < theta0.size(); ++a) {
                theta0[a] = 0.1 * static_cast<double>(a + 1);
            }
            const auto ex = wf::excited_state_minimize(prob.sparse, circuit, prob.initial,
                                                       theta0, pen, opt);
            json e = vqe_json(ex);
            e["beta"] = round10(pen.betas.front());
            excited.push_back(e);
            lower.push_back(circ::run(circuit, ex.parameters, prob.initial));
        }
        out["excited"] = excited;
    }
    return out;
}

struct Optimized {
    wf::MolecularProblem prob;
    circ::Circuit circuit;
    wf::VQEResult vqe;
};

Optimized optimize_circuit(const Context &c) {
    const auto &s = c.spec;
    Optimized o{wf::molecular_problem(c.molecule, scf_config(s)), {}, {}};
    o.circuit = make_circuit(s, c.molecule, o.prob.hamiltonian.pauli.n_qubits());
    o.vqe = wf::vqe_minimize(o.prob.sparse, o.circuit, o.prob.initial,
                             make_theta0(s, o.circuit.n_parameters()), optimizer_config(s));
    return o;
}

json cmd_forces(const Context &c) {
    const auto o = optimize_circuit(c);
    const auto f = wf::nuclear_forces(c.molecule, o.circuit, o.vqe.parameters, o.prob.initial,
                                      scf_config(c.spec));
    json out = {{"energy", round10(f.energy)},
                {"forces", rounded(f.forces)},
                {"circuit_gradient_norm", f.circuit_gradient_norm},
                {"vqe", vqe_json(o.vqe)}};
    if (!f.warning.empty()) {
        out["warning"] = f.warning;
    }
    return out;
}

json cmd_hessian(const Context &c) {
    const auto o = optimize_circuit(c);
    wf::HessianConfig hc;
    hc.scf = scf_config(c.spec);
    hc.stationarity_tolerance = std::max(hc.stationarity_tolerance, o.vqe.gradient_norm * 1.0001);
    const auto h = wf::energy_hessian(c.molecule, o.circuit, o.vqe.parameters, o.prob.initial, hc);
    std::vector<double> masses;
    if (opt_flag(c.spec, "mass-weighted")) {
        for (const auto &a : c.molecule.atoms()) {
            masses.push_back(atomic_mass(a.atomic_number));
        }
    }
    const auto nm = wf::normal_modes(h.hessian, masses);
    json imag = json::array();
    for (bool b : nm.imaginary) {
        imag.push_back(b);
    }
    return {{"energy", round10(o.vqe.energy)},
            {"hessian", matrix_json(h.hessian)},
            {"asymmetry_before_symmetrization", h.asymmetry},
            {"response_residual", h.response_residual},
            {"response_singular", h.singular},
            {"response", matrix_json(h.response)},
            {"mass_weighted", !masses.empty()},
            {"frequencies_squared", rounded(nm.frequencies_squared)},
            {"imaginary", imag},
            {"modes", matrix_json(nm.modes)},
            {"vqe", vqe_json(o.vqe)}};
}

json cmd_optimize(const Context &c) {
    const auto &s = c.spec;
    wf::JointConfig jc;
    jc.circuit = false;
    const DiffFlags f = parse_classes(opt_str(s, "what", "circuit,coordinates"), &jc.circuit);
    jc.coordinates = f.coordinates;
    jc.exponents = f.exponents;
    jc.coefficients = f.coefficients;
    jc.scf = scf_config(s);
    jc.circuit_step = opt_double(s, "step", jc.circuit_step);
    jc.tolerance = opt_double(s, "tol", jc.tolerance);
    jc.max_rounds = opt_int(s, "rounds", jc.max_rounds);
    jc.coordinate_step = opt_double(s, "coord-step", jc.coordinate_step);
    jc.basis_step = opt_double(s, "basis-step", jc.basis_step);
    jc.circuit_steps = opt_int(s, "circuit-steps", jc.circuit_steps);
    const unsigned nq = 2 * static_cast<unsigned>(c.molecule.n_basis());
    const auto circuit = make_circuit(s, c.molecule, nq);
    const auto init = circ::prepare_hf_state(c.molecule.n_electrons(), nq);
    const auto r = wf::joint_optimize(c.molecule, circuit, make_theta0(s, circuit.n_parameters()),
                                      init, jc);
    json basis = json::array();
    for (const auto &bf : r.molecule.basis()) {
        basis.push_back({{"atom", bf.atom},
                         {"exponents", rounded(bf.exponents)},
                         {"coefficients", rounded(bf.coefficients)}});
    }
    return {{"energy", round10(r.energy)},
            {"rounds", r.rounds},
            {"converged", r.converged},
            {"circuit_gradient_norm", r.circuit_gradient_norm},
            {"hamiltonian_gradient_norm", r.hamiltonian_gradient_norm},
            {"parameters", rounded(r.parameters)},
            {"coordinates_bohr", rounded(r.molecule.coordinates())},
            {"basis", basis},
            {"energy_trace", rounded(r.energy_trace)}};
}

json cmd_scan(const Context &c) {
    const auto &s = c.spec;
    const std::size_t n_atoms = c.molecule.atoms().size();
    const int atom = opt_int(s, "atom", static_cast<int>(n_atoms) - 1);
    if (atom < 0 || static_cast<std::size_t>(atom) >= n_atoms) {
        usage("--atom out of range");
    }
    const std::string axis = opt_str(s, "axis", "z");
    if (axis != "x" && axis != "y" && axis != "z") {
        usage("--axis must be x, y or z");
    }
    if (!opt_flag(s, "start") || !opt_flag(s, "stop")) {
        usage("scan needs --start and --stop");
    }
    const double start = opt_double(s, "start", 0.0);
    const double stop = opt_double(s, "stop", 0.0);
    const int points = opt_int(s, "points", 9);
    if (points < 1) {
        usage("--points must be positive");
    }
    const std::size_t comp = static_cast<std::size_t>(atom) * 3 + static_cast<std::size_t>(axis[0] - 'x');
    std::vector<std::vector<double>> grid;
    std::vector<double> values;
    for (int k = 0; k < points; ++k) {
        const double v = points == 1 ? start : start + (stop - start) * k / (points - 1);
        auto coords = c.molecule.coordinates();
        coords[comp] = v;
        grid.push_back(coords);
        values.push_back(v);
    }
    wf::ScanConfig sc;
    sc.optimizer = optimizer_config(s);
    sc.scf = scf_config(s);
    sc.warm_start = !opt_flag(s, "no-warm-start");
    const auto pts = wf::pes_scan(c.molecule, grid, sc);
    json table = json::array();
    for (std::size_t k = 0; k < pts.size(); ++k) {
        json p = {{"value", round10(values[k])}, {"coordinates_bohr", rounded(pts[k].coordinates)}};
        p["energy"] = pts[k].energy ? json(round10(*pts[k].energy)) : json(nullptr);
        p["hf_energy"] = pts[k].hf_energy ? json(round10(*pts[k].hf_energy)) : json(nullptr);
        p["iterations"] = pts[k].iterations;
        p["converged"] = pts[k].converged;
        if (!pts[k].error.empty()) {
            p["error"] = pts[k].error;
        }
        table.push_back(p);
    }
    return {{"atom", atom}, {"axis", axis}, {"points", table}};
}

json error_json(std::string_view kind, const std::string &message) {
    return {{"error", {{"kind", kind}, {"message", message}}}};
}

} // namespace

RunSpec parse_args(const std::vector<std::string> &args) {
    RunSpec spec;
    CLI::App app{"Differentiable quantum-chemistry workflows", "diffchem"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    std::map<std::string, std::map<std::string, std::string>> values;
    std::map<std::string, std::map<std::string, bool>> flags;
    std::map<std::string, std::string> files;
    std::map<std::string, CLI::App *> subs;
    for (const auto &cmd : kCommands) {
        CLI::App *sub = app.add_subcommand(cmd, "run the " + cmd + " workflow");
        subs[cmd] = sub;
        sub->add_option("molecule", files[cmd], "molecule JSON file")->required();
        for (const auto &o : options_for(cmd)) {
            const std::string name = std::string("--") + o.name;
            if (o.flag) {
                sub->add_flag(name, flags[cmd][o.name], o.help);
            } else {
                sub->add_option(name, values[cmd][o.name], o.help);
            }
        }
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        spec.help = true;
        spec.help_text = app.help();
        return spec;
    } catch (const CLI::CallForAllHelp &) {
        spec.help = true;
        spec.help_text = app.help("", CLI::AppFormatMode::All);
        return spec;
    } catch (const CLI::Success &) {
        spec.help = true;
        spec.help_text = std::string(kVersion) + "\n";
        return spec;
    } catch (const CLI::ParseError &e) {
        std::string msg = e.what();
        if (msg.empty()) {
            msg = e.get_name();
        }
        fail(ErrorKind::Usage, msg);
    }
    for (const auto &cmd : kCommands) {
        CLI::App *sub = subs[cmd];
        if (!sub->parsed()) {
            continue;
        }
        spec.command = cmd;
        spec.molecule_file = files[cmd];
        for (const auto &o : options_for(cmd)) {
            const std::string name = std::string("--") + o.name;
            if (sub->get_option(name)->count() == 0) {
                continue;
            }
            spec.options[o.name] = o.flag ? "true" : values[cmd][o.name];
        }
    }
    return spec;
}

Outcome execute(const RunSpec &spec) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    json report;
    try {
        auto mol_spec = io::parse_molecule_text(io::read_file(spec.molecule_file));
        Molecule molecule = io::build(mol_spec);
        const Context c{spec, std::move(mol_spec), std::move(molecule)};
        json result;
        if (spec.command == "hf") {
            result = cmd_hf(c);
        } else if (spec.command == "hamiltonian") {
            result = cmd_hamiltonian(c);
        } else if (spec.command == "vqe") {
            result = cmd_vqe(c);
        } else if (spec.command == "forces") {
            result = cmd_forces(c);
        } else if (spec.command == "hessian") {
            result = cmd_hessian(c);
        } else if (spec.command == "optimize") {
            result = cmd_optimize(c);
        } else if (spec.command == "scan") {
            result = cmd_scan(c);
        } else {
            usage("unknown command '" + spec.command + "'");
        }
        json options = json::object();
        for (const auto &[k, v] : spec.options) {
            options[k] = v;
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        report = {{"command", spec.command},
                  {"version", kVersion},
                  {"inputs_echo",
                   {{"molecule_file", spec.molecule_file},
                    {"molecule", io::to_json(c.mol_spec)},
                    {"options", options}}},
                  {"result", result},
                  {"timing", {{"wall_seconds", seconds}}}};
        out.exit_code = 0;
    } catch (const Error &e) {
        report = error_json(to_string(e.kind()), e.what());
        out.exit_code = 1;
    } catch (const std::exception &e) {
        report = error_json("internal", e.what());
        out.exit_code = 2;
    }
    out.report = report.dump(2) + "\n";
    return out;
}

int run_main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    RunSpec spec;
    try {
        spec = parse_args(args);
    } catch (const Error &e) {
        out << error_json(to_string(e.kind()), e.what()).dump(2) << "\n";
        err << "usage: diffchem <hf|hamiltonian|vqe|forces|hessian|optimize|scan> "
               "<molecule.json> [options]; see --help\n";
        return 2;
    }
    if (spec.help) {
        out << spec.help_text;
        return 0;
    }
    const Outcome o = execute(spec);
    const auto it = spec.options.find("output");
    if (o.exit_code == 0 && it != spec.options.end()) {
        try {
            io::write_file(it->second, o.report);
        } catch (const Error &e) {
            out << error_json(to_string(e.kind()), e.what()).dump(2) << "\n";
            return 1;
        }
        return 0;
    }
    out << o.report;
    return o.exit_code;
}

} // namespace diffchem::cli
