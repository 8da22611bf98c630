/*
 * Copyright 2026 The gammachain Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// gammachain: batch front end emitting CSV/JSON data tables.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <gammachain/gammachain.hpp>
#include <gammachain/table.hpp>

namespace gc = gammachain;

namespace {

struct Options {
    gc::ModelParams p;
    int r = 1;
    std::string sector = "antiperiodic";
    double step = 1e-3;
    std::string format = "csv";
    std::string out;

    std::string alpha_range = "-1:1:200";
    std::string h_range;
    bool contour = false;
    std::string wrt = "h";
    std::string mode = "finite";
    std::vector<int> sizes;
    bool richardson = false;
    std::string target = "sqc";
    std::string boundary = "CP1";
    std::string side = "symmetric";
    std::string input;
    double threshold = 0.01;
    int n = 10;
    int draws = 30;
    unsigned long long seed = 20240611ull;
    double min_gap = 1e-6;
};

/// start:stop:count, or a single value.
std::vector<double> parse_range(const std::string& s, const std::string& flag) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    try {
        if (parts.size() == 1) return {std::stod(parts[0])};
        if (parts.size() == 3) {
            const double a = std::stod(parts[0]), b = std::stod(parts[1]);
            const int n = std::stoi(parts[2]);
            if (n < 1) throw gc::invalid_parameter(flag + ": count must be >= 1");
            if (n > 1 && !(a < b)) throw gc::invalid_parameter(flag + ": range must be strictly ordered");
            return gc::detail::linspace(a, b, n);
        }
    } catch (const std::logic_error& e) {
        if (dynamic_cast<const gc::invalid_parameter*>(&e)) throw;
    }
    throw gc::invalid_parameter(flag + ": expected start:stop:count, got '" + s + "'");
}

gc::Filling filling_of(const Options& o) {
    if (o.sector == "antiperiodic") return gc::Filling::antiperiodic;
    if (o.sector == "exact") return gc::Filling::exact;
    throw gc::invalid_parameter("--sector must be antiperiodic or exact for this subcommand");
}

gc::Param param_of(const std::string& s) {
    if (s == "h") return gc::Param::h;
    if (s == "alpha") return gc::Param::alpha;
    throw gc::invalid_parameter("--wrt must be h or alpha");
}

gc::Side side_of(const std::string& s) {
    if (s == "below") return gc::Side::below;
    if (s == "above") return gc::Side::above;
    if (s == "symmetric") return gc::Side::symmetric;
    throw gc::invalid_parameter("--side must be below, above or symmetric");
}

gc::Boundary boundary_of(const std::string& s) {
    if (s == "CP1") return gc::Boundary::CP1;
    if (s == "CP2") return gc::Boundary::CP2;
    if (s == "CP3") return gc::Boundary::CP3;
    throw gc::invalid_parameter("--boundary must be CP1, CP2 or CP3");
}

void describe(gc::Table& t, const std::string& cmd, const Options& o) {
    t.set("subcommand", cmd);
    t.set("J", o.p.J);
    t.set("gamma", o.p.gamma);
    t.set("Gamma", o.p.Gamma);
    t.set("alpha", o.p.alpha);
    t.set("h", o.p.h);
    t.set("N", std::to_string(o.p.N));
    t.set("sector", o.sector);
}

gc::Table cmd_spectrum(const Options& o) {
    gc::Sector sec;
    if (o.sector == "antiperiodic")
        sec = gc::Sector::antiperiodic;
    else if (o.sector == "periodic")
        sec = gc::Sector::periodic;
    else
        throw gc::invalid_parameter("--sector must be antiperiodic or periodic for spectrum");
    const gc::Spectrum sp = gc::spectrum(o.p, sec);
    const gc::GapResult g = gc::excitation_gap(o.p);
    gc::Table t;
    describe(t, "spectrum", o);
    t.set("phase", gc::to_string(gc::classify_phase(o.p)));
    t.set("signed_min", g.signed_min);
    t.set("gap", g.gap);
    t.columns = {"k", "eps", "u", "v", "phi", "filled"};
    for (std::size_t i = 0; i < sp.energies.size(); ++i)
        t.add({sp.grid.k[i], sp.energies[i], sp.bogoliubov[i].u, sp.bogoliubov[i].v, sp.bogoliubov[i].phi,
               static_cast<long long>(sp.filled[i])});
    return t;
}

gc::Table cmd_phase_diagram(const Options& o) {
    const std::vector<double> as = parse_range(o.alpha_range, "--alpha-range");
    const std::vector<double> hs = parse_range(o.h_range.empty() ? "0:2:200" : o.h_range, "--h-range");
    gc::validate_couplings(o.p);
    const std::vector<gc::PhasePoint> grid = gc::phase_grid(o.p, as, hs);
    gc::Table t;
    describe(t, "phase-diagram", o);
    t.set("alpha_range", o.alpha_range);
    t.set("h_range", o.h_range.empty() ? "0:2:200" : o.h_range);
    if (o.contour) {
        t.columns = {"alpha", "h", "kind"};
        for (const gc::ContourPoint& c : gc::zero_gap_contour(o.p, as, hs, grid))
            t.add({c.alpha, c.h, c.kind == gc::ContourKind::sign_change ? "sign_change" : "gap_minimum"});
        return t;
    }
    t.columns = {"alpha", "h", "signed_min", "gap", "phase"};
    for (const gc::PhasePoint& pt : grid) t.add({pt.alpha, pt.h, pt.signed_min, pt.gap, gc::to_string(pt.phase)});
    return t;
}

gc::Table cmd_energy_curvature(const Options& o) {
    const gc::Param wrt = param_of(o.wrt);
    const std::string range = wrt == gc::Param::h ? (o.h_range.empty() ? "0.5:1.5:201" : o.h_range) : o.alpha_range;
    const std::vector<double> xs = parse_range(range, wrt == gc::Param::h ? "--h-range" : "--alpha-range");
    gc::EnergyMode mode;
    if (o.mode == "finite")
        mode = gc::EnergyMode::finite_n;
    else if (o.mode == "exact")
        mode = gc::EnergyMode::finite_n_exact;
    else if (o.mode == "thermodynamic")
        mode = gc::EnergyMode::thermodynamic;
    else
        throw gc::invalid_parameter("--mode must be finite, exact or thermodynamic");
    const std::vector<int> sizes = o.sizes.empty() ? std::vector<int>{o.p.N} : o.sizes;
    gc::Table t;
    describe(t, "energy-curvature", o);
    t.set("wrt", o.wrt);
    t.set("range", range);
    t.set("mode", o.mode);
    t.set("step", o.step);
    t.set("richardson", o.richardson ? "true" : "false");
    t.columns = {o.wrt, "N", "e0", "curvature"};
    if (o.step < 1e-8) std::cerr << "warning: derivative step below 1e-8 is ill-conditioned\n";
    for (int N : sizes) {
        gc::ModelParams p = o.p;
        p.N = N;
        struct Row { double e0, curv; };
        const auto rows = gc::detail::parallel_map<Row>(xs.size(), [&](std::size_t i) {
            const gc::ModelParams q = gc::with(p, wrt, xs[i]);
            return Row{gc::ground_state_energy_density(q, mode),
                       -gc::energy_second_derivative(q, wrt, o.step, mode, o.richardson).value};
        });
        for (std::size_t i = 0; i < xs.size(); ++i) t.add({xs[i], static_cast<long long>(N), rows[i].e0, rows[i].curv});
    }
    return t;
}

gc::Table cmd_correlate(const Options& o) {
    const std::vector<double> hs = o.h_range.empty() ? std::vector<double>{o.p.h} : parse_range(o.h_range, "--h-range");
    const gc::Filling fill = filling_of(o);
    gc::Table t;
    describe(t, "correlate", o);
    t.set("h_range", o.h_range.empty() ? gc::format_double(o.p.h) : o.h_range);
    t.set("step", o.step);
    t.columns = {"h", "r", "mz", "xx", "yy", "zz", "xy", "yx", "dxx_dh"};
    using Row = std::vector<gc::Cell>;
    const auto blocks = gc::detail::parallel_map<std::vector<Row>>(hs.size(), [&](std::size_t i) {
        const gc::ModelParams p = gc::with(o.p, gc::Param::h, hs[i]);
        const gc::ContractionSet cs = gc::contractions(p, o.r, fill);
        const gc::ContractionSet up = gc::contractions(gc::with(p, gc::Param::h, hs[i] + o.step), o.r, fill);
        const gc::ContractionSet dn = gc::contractions(gc::with(p, gc::Param::h, hs[i] - o.step), o.r, fill);
        std::vector<Row> rows;
        for (int r = 1; r <= o.r; ++r) {
            Row row{hs[i], static_cast<long long>(r), gc::magnetization_z(cs)};
            for (const gc::Component& c : gc::all_components()) row.push_back(gc::two_point(cs, c, r).value);
            const gc::Component xx{gc::Pauli::x, gc::Pauli::x};
            row.push_back((gc::two_point(up, xx, r).value - gc::two_point(dn, xx, r).value) / (2 * o.step));
            rows.push_back(std::move(row));
        }
        return rows;
    });
    for (const auto& b : blocks)
        for (const auto& row : b) t.add(row);
    return t;
}

gc::Table cmd_chiral(const Options& o) {
    const gc::ContractionSet cs = gc::contractions(o.p, o.r, filling_of(o));
    gc::Table t;
    describe(t, "chiral", o);
    t.columns = {"r", "Gxy", "Gyx", "chiral"};
    for (int r = 1; r <= o.r; ++r) {
        const double xy = gc::two_point(cs, {gc::Pauli::x, gc::Pauli::y}, r).value;
        const double yx = gc::two_point(cs, {gc::Pauli::y, gc::Pauli::x}, r).value;
        t.add({static_cast<long long>(r), xy, yx, std::abs(xy) - std::abs(yx)});
    }
    return t;
}

gc::Table cmd_dimer(const Options& o) {
    const gc::ContractionSet cs = gc::contractions(o.p, o.r, filling_of(o));
    gc::Table t;
    describe(t, "dimer", o);
    t.columns = {"r", "re", "im", "abs"};
    for (int r = 1; r <= o.r; ++r) {
        const gc::cplx d = gc::dimer_correlation(cs, r);
        t.add({static_cast<long long>(r), d.real(), d.imag(), std::abs(d)});
    }
    return t;
}

gc::Table cmd_sqc(const Options& o) {
    const std::vector<double> hs = parse_range(o.h_range.empty() ? "0:3:301" : o.h_range, "--h-range");
    const gc::Filling fill = filling_of(o);
    gc::Table t;
    describe(t, "sqc", o);
    t.set("h_range", o.h_range.empty() ? "0:3:301" : o.h_range);
    t.set("step", o.step);
    t.columns = {"h", "r", "sqc", "chi"};
    struct Row { double sqc, chi; };
    for (int r = 1; r <= o.r; ++r) {
        const auto rows = gc::detail::parallel_map<Row>(hs.size(), [&](std::size_t i) {
            const gc::ModelParams p = gc::with(o.p, gc::Param::h, hs[i]);
            return Row{gc::steered_quantum_coherence(p, r, fill), gc::coherence_susceptibility(p, r, o.step, fill).value};
        });
        for (std::size_t i = 0; i < hs.size(); ++i) t.add({hs[i], static_cast<long long>(r), rows[i].sqc, rows[i].chi});
    }
    return t;
}

void add_fit(gc::Table& t, const std::string& name, const gc::FitResult& f) {
    t.add({name, f.slope, f.slope_stderr, f.intercept, f.intercept_stderr, static_cast<long long>(f.n_points),
           f.window_lo, f.window_hi});
    for (const std::string& w : f.warnings) std::cerr << "warning: " << name << ": " << w << '\n';
}

gc::Table cmd_scaling_fit(const Options& o) {
    gc::Table t;
    describe(t, "scaling-fit", o);
    t.set("target", o.target);
    t.columns = {"fit", "slope", "slope_stderr", "intercept", "intercept_stderr", "n_points", "window_lo", "window_hi"};
    if (o.target == "gap") {
        const gc::Side side = side_of(o.side == "symmetric" ? "above" : o.side);
        t.set("boundary", o.boundary);
        t.set("side", gc::to_string(side));
        add_fit(t, "nu_z", gc::gap_scaling_fit(o.p, boundary_of(o.boundary), side));
        return t;
    }
    if (o.target == "z") {
        const gc::Side side = side_of(o.side == "symmetric" ? "above" : o.side);
        t.set("side", gc::to_string(side));
        add_fit(t, "z", gc::dispersion_exponent_z(o.p, side));
        return t;
    }
    gc::QuantitySpec q;
    if (o.target == "energy")
        q.quantity = gc::Quantity::energy_curvature;
    else if (o.target == "correlation")
        q.quantity = gc::Quantity::correlation_derivative;
    else if (o.target == "sqc")
        q.quantity = gc::Quantity::sqc_susceptibility;
    else
        throw gc::invalid_parameter("--target must be energy, correlation, sqc, gap or z");
    q.r = o.r;
    q.wrt = param_of(o.wrt);
    gc::ScalingOptions opt;
    if (!o.sizes.empty()) opt.sizes = o.sizes;
    else if (q.quantity == gc::Quantity::sqc_susceptibility) opt.sizes = {1000, 2000, 4000, 8000, 16000};
    opt.side = side_of(o.side);
    const gc::CriticalPoint cp = gc::critical_point(o.p, boundary_of(o.boundary));
    if (cp.parameter != q.wrt) throw gc::invalid_parameter("--wrt does not tune the chosen --boundary");
    const gc::ScalingReport rep = gc::scaling_fit(q, o.p, cp.value, opt);
    t.set("r", std::to_string(o.r));
    t.set("lambda_c", cp.value);
    t.set("side", gc::to_string(opt.side));
    t.set("nu", rep.nu.value);
    t.set("nu_uncertainty", rep.nu.uncertainty);
    for (const gc::Peak& pk : rep.peaks)
        t.set("peak_N" + std::to_string(pk.N), gc::format_double(pk.location) + " " + gc::format_double(pk.value));
    add_fit(t, "a", rep.a);
    add_fit(t, "b", rep.b);
    return t;
}

gc::cplx complex_of(const nlohmann::json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
    throw gc::invalid_parameter("complex values are numbers or [re, im] pairs");
}

gc::AtomLightParams read_atom_light(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw gc::invalid_parameter("cannot read " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw gc::invalid_parameter(path + ": " + e.what());
    }
    gc::AtomLightParams p;
    try {
        p.delta1 = j.at("delta1").get<double>();
        p.delta2 = j.at("delta2").get<double>();
        p.delta = j.value("delta", 0.0);
        p.occupation_s = j.value("occupation_s", 0.5);
        p.occupation_g = j.value("occupation_g", 0.5);
        p.ratio_threshold = j.value("ratio_threshold", 10.0);
        p.periodic = j.value("periodic", false);
        for (const auto& s : j.at("sites")) {
            p.omega1.push_back(complex_of(s.at("omega1")));
            p.omega2.push_back(complex_of(s.at("omega2")));
        }
        for (const auto& m : j.at("modes")) {
            gc::CavityMode mode;
            mode.detuning = m.at("detuning").get<double>();
            mode.kappa = m.value("kappa", 0.0);
            for (const auto& g : m.at("G")) mode.G.push_back(complex_of(g));
            p.modes.push_back(std::move(mode));
        }
    } catch (const nlohmann::json::exception& e) {
        throw gc::invalid_parameter(path + ": " + e.what());
    }
    return p;
}

gc::Table cmd_couplings(const Options& o) {
    if (o.input.empty()) throw gc::invalid_parameter("couplings needs --input <file.json>");
    const gc::SpinCouplings c = gc::spin_couplings(read_atom_light(o.input));
    gc::Table t;
    t.set("subcommand", "couplings");
    t.set("input", o.input);
    t.set("anti_hermitian_residual", c.anti_hermitian_residual);
    try {
        const gc::ChainReduction red = gc::chain_params_from_couplings(c, o.threshold);
        t.set("reducible", "true");
        t.set("J", red.params.J);
        t.set("gamma", red.params.gamma);
        t.set("Gamma", red.params.Gamma);
        t.set("alpha", red.alpha_defined ? gc::format_double(red.params.alpha) : "undefined");
        t.set("h", red.params.h);
        t.set("beyond_nn_ratio", red.beyond_nn_ratio);
    } catch (const gc::not_reducible& e) {
        t.set("reducible", "false");
        t.set("reason", e.what());
    }
    t.columns = {"i", "j", "Jx", "Jy", "JDM", "JSO", "hz_i"};
    for (int i = 0; i < c.sites(); ++i)
        for (int j = 0; j < c.sites(); ++j)
            t.add({static_cast<long long>(i), static_cast<long long>(j), c.Jx(i, j), c.Jy(i, j), c.JDM(i, j),
                   c.JSO(i, j), c.hz[i]});
    return t;
}

gc::Table cmd_oracle_check(const Options& o, bool& failed) {
    gc::Table t;
    t.set("subcommand", "oracle-check");
    t.set("N", std::to_string(o.n));
    t.set("draws", std::to_string(o.draws));
    t.set("seed", std::to_string(o.seed));
    t.set("min_gap", o.min_gap);
    t.columns = {"draw", "gamma", "Gamma", "alpha", "h", "ed_gap", "d_energy", "d_correlator", "d_rdm", "d_sqc"};
    gc::ParamSampler sample(o.seed);
    std::vector<gc::ModelParams> ps;
    for (int tries = 0; static_cast<int>(ps.size()) < o.draws && tries < 100 * o.draws; ++tries) {
        const gc::ModelParams p = sample(o.n);
        if (gc::ground_state(gc::build_hamiltonian(p)).gap > o.min_gap) ps.push_back(p);
    }
    const auto reps = gc::detail::parallel_map<gc::OracleReport>(ps.size(), [&](std::size_t i) { return gc::oracle_compare(ps[i]); });
    double worst = 0;
    for (std::size_t i = 0; i < reps.size(); ++i) {
        const gc::OracleReport& r = reps[i];
        t.add({static_cast<long long>(i), r.params.gamma, r.params.Gamma, r.params.alpha, r.params.h, r.ed_gap, r.energy,
               r.correlator, r.rdm, r.sqc});
        worst = std::max({worst, r.energy, r.correlator, r.rdm, r.sqc});
    }
    t.set("max_abs_deviation", worst);
    failed = worst > 1e-8;
    return t;
}

void emit(const gc::Table& t, const Options& o) {
    if (o.format != "csv" && o.format != "json") throw gc::invalid_parameter("--format must be csv or json");
    auto write = [&](std::ostream& os) { o.format == "csv" ? gc::write_csv(os, t) : gc::write_json(os, t); };
    if (o.out.empty() || o.out == "-") {
        write(std::cout);
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw gc::invalid_parameter("cannot write " + o.out);
    write(f);
    if (!f) throw gc::invalid_parameter("write failed for " + o.out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"XY-Gamma chain: free-fermion solution, correlations, coherence and scaling"};
    app.set_help_flag("--help", "print help and exit");
    app.require_subcommand(1, 1);
    app.fallthrough();
    app.set_config("--config", "", "TOML-style key = value file; [subcommand] tables hold subcommand options");
    Options o;
    app.add_option("--J", o.p.J, "exchange scale J")->capture_default_str();
    app.add_option("--gamma", o.p.gamma, "XY anisotropy")->capture_default_str();
    app.add_option("--Gamma", o.p.Gamma, "off-diagonal coupling strength")->capture_default_str();
    app.add_option("--alpha", o.p.alpha, "off-diagonal ratio")->capture_default_str();
    app.add_option("--h", o.p.h, "transverse field")->capture_default_str();
    app.add_option("--N", o.p.N, "chain length")->capture_default_str();
    app.add_option("--r", o.r, "separation (largest r for tables over r)")->capture_default_str();
    app.add_option("--sector", o.sector, "antiperiodic | periodic | exact")->capture_default_str();
    app.add_option("--step", o.step, "finite-difference step")->capture_default_str();
    app.add_option("--format", o.format, "csv | json")->capture_default_str();
    app.add_option("--out", o.out, "output file (default stdout)");

    auto* spectrum = app.add_subcommand("spectrum", "quasiparticle spectrum on a momentum grid");
    auto* phase = app.add_subcommand("phase-diagram", "gap and phase labels over an alpha-h grid");
    phase->add_option("--alpha-range", o.alpha_range, "start:stop:count")->capture_default_str();
    phase->add_option("--h-range", o.h_range, "start:stop:count (default 0:2:200)");
    phase->add_flag("--contour", o.contour, "emit the refined zero-gap contour instead of the grid");
    auto* energy = app.add_subcommand("energy-curvature", "ground-state energy density and its curvature");
    energy->add_option("--wrt", o.wrt, "h | alpha")->capture_default_str();
    energy->add_option("--h-range", o.h_range, "start:stop:count (default 0.5:1.5:201)");
    energy->add_option("--alpha-range", o.alpha_range, "start:stop:count")->capture_default_str();
    energy->add_option("--sizes", o.sizes, "chain lengths (default --N)")->delimiter(',');
    energy->add_option("--mode", o.mode, "finite | exact | thermodynamic")->capture_default_str();
    energy->add_flag("--richardson", o.richardson, "Richardson-extrapolate the difference");
    auto* correlate = app.add_subcommand("correlate", "connected two-point correlators for r = 1..--r");
    correlate->add_option("--h-range", o.h_range, "start:stop:count (default --h)");
    auto* chiral = app.add_subcommand("chiral", "chiral order |G^xy| - |G^yx| for r = 1..--r");
    auto* dimer = app.add_subcommand("dimer", "dimer correlation for r = 1..--r");
    auto* sqc = app.add_subcommand("sqc", "steered quantum coherence and its h-derivative");
    sqc->add_option("--h-range", o.h_range, "start:stop:count (default 0:3:301)");
    auto* scaling = app.add_subcommand("scaling-fit", "finite-size and distance scaling fits");
    scaling->add_option("--target", o.target, "energy | correlation | sqc | gap | z")->capture_default_str();
    scaling->add_option("--boundary", o.boundary, "CP1 | CP2 | CP3")->capture_default_str();
    scaling->add_option("--side", o.side, "below | above | symmetric")->capture_default_str();
    scaling->add_option("--wrt", o.wrt, "h | alpha")->capture_default_str();
    scaling->add_option("--sizes", o.sizes, "chain lengths for peak fits")->delimiter(',');
    auto* couplings = app.add_subcommand("couplings", "cavity-mediated couplings from an atom-light JSON file");
    couplings->add_option("--input", o.input, "atom-light parameter file");
    couplings->add_option("--threshold", o.threshold, "beyond-nearest-neighbour tolerance / J")->capture_default_str();
    auto* oracle = app.add_subcommand("oracle-check", "compare against exact diagonalization on random draws");
    oracle->add_option("--n", o.n, "chain length for ED (3..12)")->capture_default_str();
    oracle->add_option("--draws", o.draws, "number of accepted draws")->capture_default_str();
    oracle->add_option("--seed", o.seed, "random seed")->capture_default_str();
    oracle->add_option("--min-gap", o.min_gap, "minimum ED gap for a draw")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    try {
        bool failed = false;
        gc::Table t;
        if (*spectrum) t = cmd_spectrum(o);
        else if (*phase) t = cmd_phase_diagram(o);
        else if (*energy) t = cmd_energy_curvature(o);
        else if (*correlate) t = cmd_correlate(o);
        else if (*chiral) t = cmd_chiral(o);
        else if (*dimer) t = cmd_dimer(o);
        else if (*sqc) t = cmd_sqc(o);
        else if (*scaling) t = cmd_scaling_fit(o);
        else if (*couplings) t = cmd_couplings(o);
        else if (*oracle) t = cmd_oracle_check(o, failed);
        emit(t, o);
        return failed ? 2 : 0;
    } catch (const gc::invalid_parameter& e) {
        std::cerr << "parameter error: " << e.what() << '\n';
        return 1;
    } catch (const gc::numeric_error& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return 2;
    }
}
