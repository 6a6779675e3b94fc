#include "sgact/cli.hpp"

#include <algorithm>
#include <chrono>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sgact/periodic.hpp"
#include "sgact/pressure.hpp"
#include "sgact/simulate.hpp"
#include "sgact/spec_io.hpp"
#include "sgact/transfer.hpp"
#include "sgact/zeta.hpp"

namespace sgact::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

void ensure_parent(const std::string& path) {
    fs::path p(path);
    if (p.has_parent_path() && !p.parent_path().empty())
        fs::create_directories(p.parent_path());
}

std::ofstream open_output(const std::string& path) {
    ensure_parent(path);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("out: cannot write '" + path + "'");
    return out;
}

/// Records resolved config and written files; the manifest goes last so a
/// complete manifest implies complete outputs.
struct RunManifest {
    std::string subcommand;
    json config;
    std::uint64_t seed = 0;
    std::vector<std::string> outputs;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    void write(const std::string& primary_out) const {
        if (primary_out.empty()) return;
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        json doc;
        doc["tool"] = "sgact";
        doc["version"] = kVersion;
        doc["subcommand"] = subcommand;
        doc["config"] = config;
        doc["seed"] = seed;
        doc["wall_clock_seconds"] = elapsed;
        doc["outputs"] = outputs;
        std::string path = primary_out + ".manifest.json";
        auto out = open_output(path);
        out << doc.dump(2) << "\n";
    }
};

RandomWalk parse_walk(const std::string& csv, int p) {
    if (csv.empty()) return RandomWalk::symmetric(p);
    std::vector<double> w;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            w.push_back(std::stod(item));
        } catch (...) {
            throw ValidationError("walk: cannot parse weight '" + item + "'");
        }
    }
    if (static_cast<int>(w.size()) != p)
        throw ValidationError("walk: expected " + std::to_string(p) + " weights, got " +
                              std::to_string(w.size()));
    return RandomWalk(std::move(w));
}

Potential parse_potential(const std::string& name) {
    if (name == "zero") return Potential::zero();
    if (name == "mlogd") return Potential::minus_log_derivative();
    throw ValidationError("phi: must be 'zero' or 'mlogd'");
}

std::complex<double> parse_complex(const std::string& text) {
    // accepts "a", "a+bi", "a-bi", "bi"
    std::string s = text;
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    if (s.empty()) throw ValidationError("eval: empty complex literal");
    if (s.back() == 'i') {
        s.pop_back();
        // the separating sign; skip exponent signs as in 1e-5
        size_t split = std::string::npos;
        for (size_t i = s.size(); i-- > 1;) {
            if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
                split = i;
                break;
            }
        }
        if (split == std::string::npos || split == 0) {
            // pure imaginary
            std::string im = s.empty() || s == "+" || s == "-" ? s + "1" : s;
            try {
                return {0.0, std::stod(im)};
            } catch (...) {
                throw ValidationError("eval: cannot parse '" + text + "'");
            }
        }
        std::string re = s.substr(0, split);
        std::string im = s.substr(split);
        if (im == "+" || im == "-") im += "1";
        try {
            return {std::stod(re), std::stod(im)};
        } catch (...) {
            throw ValidationError("eval: cannot parse '" + text + "'");
        }
    }
    try {
        return {std::stod(s), 0.0};
    } catch (...) {
        throw ValidationError("eval: cannot parse '" + text + "'");
    }
}

int resolve_threads(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("SGACT_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 0;
}

json walk_to_json(const RandomWalk& w) {
    json arr = json::array();
    for (double a : w.weights) arr.push_back(a);
    return arr;
}

// ---- subcommand bodies ----------------------------------------------------

int cmd_periodic(const std::string& spec_path, int nmax, const std::string& out) {
    RunManifest man;
    man.subcommand = "periodic";
    SemigroupSpec spec = load_spec_file(spec_path);
    PeriodicCountSeries series = periodic_series(spec, nmax);
    man.config = {{"spec", spec_path}, {"spec_json", json::parse(spec_to_json(spec))},
                  {"nmax", nmax}, {"out", out}};

    auto f = open_output(out);
    f << "n,N_n_num,N_n_den,Per_n,slope\n";
    for (int n = 1; n <= nmax; ++n) {
        const Rational& N = series.N(n);
        double slope = std::log(std::max(N.to_double(), 1.0)) / double(n);
        f << n << "," << to_string(N.num()) << "," << to_string(N.den()) << ","
          << to_string(series.per(n)) << "," << format_double(slope) << "\n";
    }
    f.close();
    man.outputs.push_back(out);
    man.write(out);
    std::cout << "periodic: wrote " << out << " (n_max = " << nmax << ")\n";
    return 0;
}

int cmd_zeta(const std::string& spec_path, int nmax, const std::vector<std::string>& evals,
             const std::string& out) {
    RunManifest man;
    man.subcommand = "zeta";
    SemigroupSpec spec = load_spec_file(spec_path);
    PeriodicCountSeries series = periodic_series(spec, nmax);
    ZetaSeries zs = zeta_series(series);
    man.config = {{"spec", spec_path}, {"spec_json", json::parse(spec_to_json(spec))},
                  {"nmax", nmax}, {"eval", evals}, {"out", out}};

    json doc;
    doc["n_max"] = zs.n_max;
    json coeffs = json::array();
    for (int n = 1; n <= zs.n_max; ++n) {
        const Rational& c = zs.coeffs[size_t(n - 1)];
        coeffs.push_back({{"n", n}, {"num", to_string(c.num())}, {"den", to_string(c.den())}});
    }
    doc["coefficients"] = coeffs;
    doc["radius_estimate"] = zs.radius_estimate;
    if (zs.rational_form) {
        json num = json::array(), den = json::array();
        for (const auto& c : zs.rational_form->numerator.coeffs) num.push_back(c.str());
        for (const auto& c : zs.rational_form->denominator.coeffs) den.push_back(c.str());
        doc["rational_form"] = {{"numerator", num}, {"denominator", den},
                                {"pole", zs.rational_form->pole()}};
    }
    json evaluations = json::array();
    for (const auto& text : evals) {
        std::complex<double> z = parse_complex(text);
        std::complex<double> v = zeta_eval(zs, z);
        evaluations.push_back({{"z", text},
                               {"re", v.real()},
                               {"im", v.imag()},
                               {"mode", zs.rational_form ? "rational" : "series"}});
    }
    doc["evaluations"] = evaluations;

    auto f = open_output(out);
    f << doc.dump(2) << "\n";
    f.close();
    man.outputs.push_back(out);
    man.write(out);
    std::cout << "zeta: wrote " << out;
    if (zs.rational_form)
        std::cout << "  [rational form available, pole at " << zs.rational_form->pole() << "]";
    std::cout << "\n";
    return 0;
}

int cmd_transfer(const std::string& spec_path, const std::string& walk_csv,
                 const std::string& phi_name, int grid, double tol, const std::string& out) {
    RunManifest man;
    man.subcommand = "transfer";
    SemigroupSpec spec = load_spec_file(spec_path);
    RandomWalk walk = parse_walk(walk_csv, spec.p());
    Potential phi = parse_potential(phi_name);
    man.config = {{"spec", spec_path}, {"spec_json", json::parse(spec_to_json(spec))},
                  {"walk", walk_to_json(walk)}, {"phi", phi_name}, {"grid", grid},
                  {"tol", tol}, {"out", out}};

    UlamOperator op = build_ulam(spec, walk, phi, grid);
    SpectralResult sr = power_iterate(op, tol);

    json doc;
    doc["grid"] = grid;
    doc["phi"] = phi_name;
    doc["walk"] = walk_to_json(walk);
    doc["eigenvalue"] = sr.eigenvalue;
    doc["annealed_pressure"] = sr.annealed_pressure();
    doc["residual"] = sr.residual;
    doc["iterations"] = sr.iterations;
    auto minmax_f = std::minmax_element(sr.eigenfunction.begin(), sr.eigenfunction.end());
    doc["eigenfunction_min"] = *minmax_f.first;
    doc["eigenfunction_max"] = *minmax_f.second;

    auto f = open_output(out);
    f << doc.dump(2) << "\n";
    f.close();
    man.outputs.push_back(out);
    man.write(out);
    std::cout << "transfer: lambda = " << format_double(sr.eigenvalue)
              << ", log lambda = " << format_double(sr.annealed_pressure()) << ", residual = "
              << sr.residual << "\n";
    return 0;
}

int cmd_stationary(const std::string& spec_path, const std::string& walk_csv, int grid,
                   double tol, const std::string& out) {
    RunManifest man;
    man.subcommand = "stationary";
    SemigroupSpec spec = load_spec_file(spec_path);
    RandomWalk walk = parse_walk(walk_csv, spec.p());
    man.config = {{"spec", spec_path}, {"spec_json", json::parse(spec_to_json(spec))},
                  {"walk", walk_to_json(walk)}, {"grid", grid}, {"tol", tol}, {"out", out}};

    DensityFunction f = stationary_density(spec, walk, grid, tol);
    auto o = open_output(out);
    o << "bin_left,density\n";
    for (int k = 0; k < grid; ++k)
        o << format_double(double(k) / grid) << "," << format_double(f.values[size_t(k)]) << "\n";
    o.close();
    man.outputs.push_back(out);
    man.write(out);
    std::cout << "stationary: wrote " << out << " (grid " << grid << ")\n";
    return 0;
}

int cmd_equidistribute(const std::string& spec_path, const std::string& mode,
                       const std::string& walk_csv, const std::string& phi_name, double x, int n,
                       int bins, const std::string& out) {
    RunManifest man;
    man.subcommand = "equidistribute";
    SemigroupSpec spec = load_spec_file(spec_path);
    man.config = {{"spec", spec_path}, {"spec_json", json::parse(spec_to_json(spec))},
                  {"mode", mode}, {"x", x}, {"n", n}, {"bins", bins}, {"out", out}};

    EmpiricalMeasure m = EmpiricalMeasure::zeros(bins, 1);
    if (mode == "preimage") {
        RandomWalk walk = parse_walk(walk_csv, spec.p());
        Potential phi = parse_potential(phi_name);
        man.config["walk"] = walk_to_json(walk);
        man.config["phi"] = phi_name;
        m = preimage_measure(spec, walk, phi, x, n, bins);
    } else if (mode == "periodic") {
        m = periodic_mass_measure(spec, n, bins);
    } else {
        throw ValidationError("mode: must be 'preimage' or 'periodic'");
    }

    auto o = open_output(out);
    o << "bin_left,mass\n";
    for (int b = 0; b < bins; ++b)
        o << format_double(double(b) / bins) << "," << format_double(m.masses[size_t(b)]) << "\n";
    o.close();
    man.outputs.push_back(out);
    man.write(out);
    std::cout << "equidistribute: wrote " << out << " (mode " << mode << ", n = " << n << ")\n";
    return 0;
}

int cmd_pressure(const std::string& spec_path, const std::string& walk_csv, bool maximize,
                 int grid, bool matching, const std::string& out) {
    RunManifest man;
    man.subcommand = "pressure";
    SemigroupSpec spec = load_spec_file(spec_path);
    man.config = {{"spec", spec_path}, {"spec_json", json::parse(spec_to_json(spec))},
                  {"maximize", maximize}, {"matching_walk", matching}, {"out", out}};

    json doc;
    if (maximize) {
        EntropyMaxResult res = entropy_map_maximize(spec, grid);
        man.config["grid"] = grid;
        doc["maximize"] = {{"value", res.value},
                           {"maximizer", walk_to_json(res.maximizer)},
                           {"max_face", res.max_face},
                           {"grid_max", res.grid_max},
                           {"grid_argmax", walk_to_json(res.grid_argmax)}};
    } else if (matching) {
        MatchingWalkResult res = matching_walk(spec);
        json j;
        j["description"] = res.description;
        j["whole_simplex"] = res.whole_simplex;
        j["unique"] = res.unique;
        if (res.walk) j["walk"] = walk_to_json(*res.walk);
        doc["matching_walk"] = j;
    } else {
        RandomWalk walk = parse_walk(walk_csv, spec.p());
        man.config["walk"] = walk_to_json(walk);
        PressureReport pr = pressure_report(spec, walk);
        doc["report"] = {{"walk", walk_to_json(pr.walk)},
                         {"relative_entropy", pr.relative_entropy},
                         {"annealed", pr.annealed},
                         {"quenched", pr.quenched},
                         {"fibered", pr.fibered},
                         {"shannon", pr.shannon},
                         {"skew_measure_entropy", pr.skew_measure_entropy}};
    }
    doc["distinguished_m"] = walk_to_json(distinguished_vector_m(spec));

    if (out.empty()) {
        std::cout << doc.dump(2) << "\n";
    } else {
        auto f = open_output(out);
        f << doc.dump(2) << "\n";
        f.close();
        man.outputs.push_back(out);
        man.write(out);
        std::cout << "pressure: wrote " << out << "\n";
    }
    return 0;
}

int cmd_simulate(const std::string& spec_path, const std::string& walk_csv, long long samples,
                 int orbits, int bins, long long burnin, std::uint64_t seed, int threads,
                 const std::string& out) {
    RunManifest man;
    man.subcommand = "simulate";
    man.seed = seed;
    SemigroupSpec spec = load_spec_file(spec_path);
    RandomWalk walk = parse_walk(walk_csv, spec.p());
    man.config = {{"spec", spec_path},   {"spec_json", json::parse(spec_to_json(spec))},
                  {"walk", walk_to_json(walk)}, {"samples", samples},
                  {"orbits", orbits},    {"bins", bins},
                  {"burnin", burnin},    {"seed", seed},
                  {"out", out}};

    SimConfig cfg{spec, walk, burnin, samples, orbits, bins, seed, resolve_threads(threads)};
    EmpiricalMeasure m = simulate_empirical(cfg);

    auto o = open_output(out);
    if (m.dim == 1) {
        o << "bin_left,mass\n";
        for (size_t b = 0; b < m.masses.size(); ++b)
            o << format_double(double(b) / double(m.masses.size())) << ","
              << format_double(m.masses[b]) << "\n";
    } else {
        // flattened row-major over bins^dim cells
        o << "bin_index,mass\n";
        for (size_t b = 0; b < m.masses.size(); ++b)
            o << b << "," << format_double(m.masses[b]) << "\n";
    }
    o.close();
    man.outputs.push_back(out);
    man.write(out);
    std::cout << "simulate: wrote " << out << " (" << orbits << " orbits x " << samples
              << " samples)\n";
    return 0;
}

int cmd_info(const std::string& spec_path) {
    SemigroupSpec spec = load_spec_file(spec_path);
    auto deg = spec.degrees();
    std::cout << "p = " << spec.p() << "\n";
    std::cout << "degrees = [";
    for (size_t i = 0; i < deg.size(); ++i) std::cout << (i ? ", " : "") << deg[i];
    std::cout << "]\n";
    std::cout << "phase space = " << (spec.all_circle() ? "circle" : "torus") << " (dim "
              << spec.dim() << ")\n";
    std::cout << "all linear = " << (spec.all_linear() ? "yes" : "no") << "\n";
    double h = std::log(double(spec.degree_sum()) / spec.p());
    std::cout << "h_top(S) = log(" << spec.degree_sum() << "/" << spec.p() << ") = "
              << format_double(h) << "\n";
    std::cout << "h_top(F_G) = log(" << spec.degree_sum() << ") = "
              << format_double(std::log(double(spec.degree_sum()))) << "\n";
    RandomWalk m = distinguished_vector_m(spec);
    std::cout << "m = (";
    for (int i = 0; i < m.p(); ++i) std::cout << (i ? ", " : "") << format_double(m.weights[size_t(i)]);
    std::cout << ")\n";
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"sgact - thermodynamic quantities of expanding-map semigroups"};
    app.require_subcommand(1);

    std::string spec_path, out, walk_csv, phi_name = "zero", mode = "preimage";
    std::vector<std::string> evals;
    int nmax = 12, grid = 4096, bins = 64, orbits = 64, threads = 0;
    int pressure_grid = 1000, sim_bins = 256;
    long long samples = 1000000, burnin = 1000;
    double tol = 1e-10, x = 0.0;
    std::uint64_t seed = 0;
    bool maximize = false, matching = false;

    auto add_spec = [&](CLI::App* sub) {
        sub->add_option("--spec", spec_path, "semigroup config (JSON)")->required();
    };

    CLI::App* periodic = app.add_subcommand("periodic", "averaged periodic-point counts");
    add_spec(periodic);
    periodic->add_option("--nmax", nmax, "largest word length");
    periodic->add_option("--out", out, "CSV output")->required();
    periodic->add_option("--threads", threads, "worker cap");

    CLI::App* zeta = app.add_subcommand("zeta", "semigroup zeta function");
    add_spec(zeta);
    zeta->add_option("--nmax", nmax, "series truncation");
    zeta->add_option("--eval", evals, "evaluate at complex points, e.g. 0.2+0i");
    zeta->add_option("--out", out, "JSON output")->required();
    zeta->add_option("--threads", threads, "worker cap");

    CLI::App* transfer = app.add_subcommand("transfer", "averaged Ulam operator spectrum");
    add_spec(transfer);
    transfer->add_option("--walk", walk_csv, "weights, comma separated (default symmetric)");
    transfer->add_option("--phi", phi_name, "potential: zero | mlogd");
    transfer->add_option("--grid", grid, "Ulam bins (power of 2)");
    transfer->add_option("--tol", tol, "power-iteration tolerance");
    transfer->add_option("--out", out, "JSON output")->required();
    transfer->add_option("--threads", threads, "worker cap");

    CLI::App* stationary = app.add_subcommand("stationary", "stationary density");
    add_spec(stationary);
    stationary->add_option("--walk", walk_csv, "weights (default symmetric)");
    stationary->add_option("--grid", grid, "Ulam bins (power of 2)");
    stationary->add_option("--tol", tol, "fixed-point tolerance");
    stationary->add_option("--out", out, "CSV output")->required();
    stationary->add_option("--threads", threads, "worker cap");

    CLI::App* equi = app.add_subcommand("equidistribute", "preimage / periodic-mass measures");
    add_spec(equi);
    equi->add_option("--mode", mode, "preimage | periodic");
    equi->add_option("--walk", walk_csv, "weights for preimage mode");
    equi->add_option("--phi", phi_name, "potential for preimage mode");
    equi->add_option("--x", x, "base point (preimage mode)");
    equi->add_option("--n", nmax, "word length")->required();
    equi->add_option("--bins", bins, "histogram bins");
    equi->add_option("--out", out, "CSV output")->required();
    equi->add_option("--threads", threads, "worker cap");

    CLI::App* pressure = app.add_subcommand("pressure", "entropy and pressure identities");
    add_spec(pressure);
    pressure->add_option("--walk", walk_csv, "weights (default symmetric)");
    pressure->add_flag("--maximize", maximize, "maximize the entropy map over the simplex");
    pressure->add_option("--grid", pressure_grid, "simplex grid for --maximize");
    pressure->add_flag("--matching-walk", matching, "walk matching h_top(S) to fibered entropy");
    pressure->add_option("--out", out, "JSON output (stdout if omitted)");
    pressure->add_option("--threads", threads, "worker cap");

    CLI::App* simulate = app.add_subcommand("simulate", "Monte-Carlo random orbits");
    add_spec(simulate);
    simulate->add_option("--walk", walk_csv, "weights (default symmetric)");
    simulate->add_option("--samples", samples, "recorded samples per orbit");
    simulate->add_option("--orbits", orbits, "independent orbits");
    simulate->add_option("--bins", sim_bins, "histogram bins (power of 2)");
    simulate->add_option("--burnin", burnin, "discarded steps per orbit");
    simulate->add_option("--seed", seed, "master seed");
    simulate->add_option("--threads", threads, "worker cap");
    simulate->add_option("--out", out, "CSV output")->required();

    CLI::App* info = app.add_subcommand("info", "summary of a semigroup config");
    add_spec(info);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (periodic->parsed()) return cmd_periodic(spec_path, nmax, out);
        if (zeta->parsed()) return cmd_zeta(spec_path, nmax, evals, out);
        if (transfer->parsed()) return cmd_transfer(spec_path, walk_csv, phi_name, grid, tol, out);
        if (stationary->parsed()) return cmd_stationary(spec_path, walk_csv, grid, tol, out);
        if (equi->parsed())
            return cmd_equidistribute(spec_path, mode, walk_csv, phi_name, x, nmax, bins, out);
        if (pressure->parsed())
            return cmd_pressure(spec_path, walk_csv, maximize, pressure_grid, matching, out);
        if (simulate->parsed())
            return cmd_simulate(spec_path, walk_csv, samples, orbits, sim_bins, burnin, seed,
                                threads, out);
        if (info->parsed()) return cmd_info(spec_path);
    } catch (const ConvergenceError& e) {
        std::cerr << "sgact: non-convergence: " << e.what()
                  << " (last residual " << e.last_residual << ")\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "sgact: " << e.what() << "\n";
        return 1;
    } catch (const OverflowError& e) {
        std::cerr << "sgact: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

} // namespace sgact::cli
