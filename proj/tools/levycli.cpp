// Command-line front end: classify | transform | factorize | sample |
// verify | catalog over declarative spec documents.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "levy/expression.hpp"
#include "levy/factorization.hpp"
#include "levy/membership.hpp"
#include "levy/simulate.hpp"
#include "levy/spectral_transforms.hpp"
#include "levy/specdoc.hpp"
#include "levy/version.hpp"

using nlohmann::json;
using namespace levy;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecParseError("cannot open spec file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json result_header(const std::string& command, const SpecDocument& doc) {
    json j;
    j["tool"] = "levycli";
    j["version"] = kVersion;
    j["command"] = command;
    j["spec"] = json::parse(to_json_text(doc));
    return j;
}

json verdicts_json(const MembershipReport& rep) {
    json v = json::object();
    for (const auto& [cls, verdict] : rep.verdicts) v[cls] = to_string(verdict);
    return v;
}

json witnesses_json(const std::vector<Witness>& ws) {
    json arr = json::array();
    for (const auto& w : ws)
        arr.push_back({{"class", w.cls},
                       {"direction", to_string(w.direction)},
                       {"r_lo", w.r_lo},
                       {"r_hi", w.r_hi},
                       {"magnitude", w.magnitude}});
    return arr;
}

void emit(const json& j, const std::string& format) {
    if (format == "csv") {
        // flat key,value rows; grid tables keep their own CSV files
        std::cout << "key,value\n";
        for (const auto& [k, v] : j.items()) {
            if (v.is_primitive()) std::cout << k << "," << v.dump() << "\n";
        }
        if (j.contains("verdicts"))
            for (const auto& [k, v] : j.at("verdicts").items())
                std::cout << "verdict." << k << "," << v.get<std::string>() << "\n";
        return;
    }
    std::cout << j.dump(2) << "\n";
}

void write_cf_csv(const std::string& path, const std::vector<double>& grid,
                  const std::vector<std::pair<std::string, ComplexFn>>& curves) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write CSV file '" + path + "'");
    out << "t";
    for (const auto& [name, fn] : curves) out << ",re_" << name << ",im_" << name;
    out << "\n";
    out.precision(17);
    for (double t : grid) {
        out << t;
        for (const auto& [name, fn] : curves) {
            const Complex v = fn(t);
            out << "," << v.real() << "," << v.imag();
        }
        out << "\n";
    }
}

int cmd_classify(const std::string& file, int max_n, const std::string& format) {
    auto doc = parse_spec_document(slurp(file));
    auto spec = resolve_spec(doc);
    auto rep = classify(spec.triple, max_n);
    json j = result_header("classify", doc);
    j["max_n"] = max_n;
    j["verdicts"] = verdicts_json(rep);
    j["witnesses"] = witnesses_json(rep.witnesses);
    bool undecided = false;
    for (const auto& [cls, v] : rep.verdicts)
        if (v == Verdict::undecided) undecided = true;
    emit(j, format);
    return undecided ? 2 : 0;
}

int cmd_transform(const std::string& file, const std::string& map, const std::string& format,
                  const std::string& emit_cf, int grid_nodes) {
    auto doc = parse_spec_document(slurp(file));
    auto spec = resolve_spec(doc);

    LevyExponent phi;
    SpectralDensityPair out_spectral;
    if (map == "I") {
        phi = apply_I(spec.exponent).exponent;
        out_spectral = spectral_I(spec.triple.spectral).spectral;
    } else if (map == "J") {
        phi = apply_J(spec.exponent).exponent;
        out_spectral = spectral_J(spec.triple.spectral).spectral;
    } else if (map == "IJ") {
        phi = apply_IJ(spec.exponent).exponent;
        out_spectral = spectral_IJ(spec.triple.spectral).spectral;
    } else if (map == "invI") {
        phi = invert_I(spec.exponent).exponent;
        out_spectral = spectral_invert_I(spec.triple.spectral).spectral;
    } else if (map == "invJ") {
        phi = invert_J(spec.exponent).exponent;
        out_spectral = spectral_invert_J(spec.triple.spectral).spectral;
    } else if (map == "invIJ") {
        phi = invert_IJ(spec.exponent).exponent;
        out_spectral =
            spectral_invert_J(spectral_invert_I(spec.triple.spectral).spectral).spectral;
    } else {
        throw SpecParseError("unknown --map '" + map + "'");
    }

    json j = result_header("transform", doc);
    j["map"] = map;
    auto t_grid = symmetric_t_grid(10.0, grid_nodes);
    json exp_table = json::array();
    for (double t : t_grid) {
        const Complex v = phi(t);
        exp_table.push_back({{"t", t}, {"re", v.real()}, {"im", v.imag()}});
    }
    j["exponent"] = exp_table;
    json dens = json::array();
    for (double r : log_spaced_grid(1e-4, 1e2, grid_nodes)) {
        dens.push_back({{"r", r},
                        {"pos", out_spectral.pos.is_zero ? 0.0 : out_spectral.pos(r)},
                        {"neg", out_spectral.neg.is_zero ? 0.0 : out_spectral.neg(r)}});
    }
    j["density"] = dens;
    json atoms = json::array();
    for (const Atom& a : out_spectral.atoms)
        atoms.push_back({{"location", a.location}, {"mass", a.mass}});
    j["atoms"] = atoms;
    if (!emit_cf.empty())
        write_cf_csv(emit_cf, t_grid, {{"phi", [phi](double t) { return phi(t); }}});
    emit(j, format);
    return 0;
}

int cmd_factorize(const std::string& file, double tol, const std::string& emit_cf,
                  const std::string& format) {
    auto doc = parse_spec_document(slurp(file));
    auto spec = resolve_spec(doc);
    FactorizeOptions opt;
    opt.tol = tol;
    auto cert = factorize(spec.triple, spec.exponent, opt);

    json j = result_header("factorize", doc);
    j["tol"] = tol;
    j["valid"] = cert.valid;
    j["identity_residual"] = cert.identity_residual;
    j["route_disagreement"] = cert.route_disagreement;
    j["nu_verdicts"] = verdicts_json(cert.nu_report);
    j["rho_id_log"] = to_string(cert.rho_idlog);
    j["witnesses"] = witnesses_json(cert.witnesses);

    if (!emit_cf.empty()) {
        std::vector<std::pair<std::string, ComplexFn>> curves;
        curves.emplace_back("mu", cert.mu.exponent.eval);
        curves.emplace_back("nu", cert.nu.exponent.eval);
        if (cert.rho) {
            LevyExponent i_rho = apply_I(cert.rho->exponent).exponent;
            curves.emplace_back("I_rho", i_rho.eval);
        }
        write_cf_csv(emit_cf, cert.t_grid, curves);
    }
    emit(j, format);
    return cert.valid ? 0 : 4;
}

int cmd_sample(const std::string& file, long n, std::uint64_t seed, double t_max, double tol,
               const std::string& format) {
    auto doc = parse_spec_document(slurp(file));
    auto spec = resolve_spec(doc);
    if (n < 1000) throw Error("sample: need --n >= 1000");

    // n unit-time increments of Y_spec, compared against the exponent
    LevySampler sampler(spec, 1e-3);
    std::vector<double> draws(static_cast<std::size_t>(n));
    double jumps = 0.0;
    for (long c = 0; c * 4096 < n; ++c) {
        std::mt19937_64 rng(
            (0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(c) + 1)) ^ seed);
        const long lo = c * 4096, hi = std::min(n, lo + 4096);
        for (long k = lo; k < hi; ++k)
            draws[static_cast<std::size_t>(k)] = sampler.increment(1.0, rng, &jumps);
    }
    auto grid = symmetric_t_grid(t_max, 101);
    auto ecf = empirical_cf(draws, grid);
    double worst = 0.0;
    for (double t : grid) worst = std::max(worst, std::abs(ecf(t) - std::exp(spec.exponent(t))));

    double mean = 0.0, var = 0.0;
    for (double x : draws) mean += x;
    mean /= static_cast<double>(n);
    for (double x : draws) var += (x - mean) * (x - mean);
    var /= static_cast<double>(n - 1);

    json j = result_header("sample", doc);
    j["n"] = n;
    j["seed"] = seed;
    j["mean"] = mean;
    j["variance"] = var;
    j["mean_jump_count"] = jumps / static_cast<double>(n);
    j["cf_distance"] = worst;
    j["tol"] = tol;
    j["pass"] = worst <= tol;
    emit(j, format);
    return worst <= tol ? 0 : 4;
}

int cmd_verify(const std::string& file, long n, std::uint64_t seed, double t_max, double tol,
               double mesh, double jump_eps, const std::string& format) {
    auto doc = parse_spec_document(slurp(file));
    auto spec = resolve_spec(doc);
    if (n < 1000) throw Error("verify: need --n >= 1000");
    SimConfig cfg;
    cfg.n_samples = n;
    cfg.seed = seed;
    cfg.t_max = t_max;
    cfg.mesh = mesh;
    cfg.jump_eps = jump_eps;
    auto rep = verify_factorization_mc(spec, cfg, tol);

    json j = result_header("verify", doc);
    j["n"] = n;
    j["seed"] = seed;
    j["t_max"] = t_max;
    j["tol"] = tol;
    j["mesh"] = rep.batch.mesh_used;
    j["jump_eps"] = jump_eps;
    j["mean_jump_count"] = rep.batch.mean_jump_count;
    j["small_jump_var"] = rep.batch.discarded_small_jump_var;
    j["sup_cf_distance"] = rep.sup_cf_distance;
    j["pass"] = rep.pass;
    emit(j, format);
    return rep.pass ? 0 : 4;
}

int cmd_catalog(const std::string& format) {
    json j;
    j["tool"] = "levycli";
    j["version"] = kVersion;
    j["command"] = "catalog";
    json entries = json::array();
    for (const auto& name : catalog_names()) {
        auto spec = make_by_name(name, {});
        json e;
        e["name"] = name;
        json p = json::object();
        for (const auto& [k, v] : spec.params) p[k] = v;
        e["default_params"] = p;
        json kc = json::object();
        for (const auto& [cls, v] : spec.known_classes) kc[cls] = to_string(v);
        e["known_classes"] = kc;
        e["note"] = spec.note;
        entries.push_back(e);
    }
    j["entries"] = entries;
    emit(j, format);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"one-dimensional infinitely divisible laws: classification, random-integral "
                 "maps and the selfdecomposable factorization identity"};
    app.require_subcommand(1);

    std::string spec_file, format = "json", map = "I", emit_cf;
    int max_n = 2, grid_nodes = 101;
    long n = 200000;
    std::uint64_t seed = 1;
    double tol = 1e-6, mc_tol = 0.03, t_max = 5.0, mesh = 0.1, jump_eps = 1e-3;

    auto* classify_cmd = app.add_subcommand("classify", "class membership verdicts");
    classify_cmd->add_option("spec", spec_file)->required();
    classify_cmd->add_option("--max-n", max_n);
    classify_cmd->add_option("--format", format);

    auto* transform_cmd = app.add_subcommand("transform", "apply I/J maps or their inverses");
    transform_cmd->add_option("spec", spec_file)->required();
    transform_cmd->add_option("--map", map);
    transform_cmd->add_option("--format", format);
    transform_cmd->add_option("--emit-cf", emit_cf);
    transform_cmd->add_option("--grid-nodes", grid_nodes);

    auto* factorize_cmd = app.add_subcommand("factorize", "factorization certificate");
    factorize_cmd->add_option("spec", spec_file)->required();
    factorize_cmd->add_option("--tol", tol);
    factorize_cmd->add_option("--emit-cf", emit_cf);
    factorize_cmd->add_option("--format", format);

    auto* sample_cmd = app.add_subcommand("sample", "draw unit-time increments");
    sample_cmd->add_option("spec", spec_file)->required();
    sample_cmd->add_option("--n", n);
    sample_cmd->add_option("--seed", seed);
    sample_cmd->add_option("--t-max", t_max);
    sample_cmd->add_option("--tol", mc_tol);
    sample_cmd->add_option("--format", format);

    auto* verify_cmd = app.add_subcommand("verify", "Monte Carlo factorization check");
    verify_cmd->add_option("spec", spec_file)->required();
    verify_cmd->add_option("--n", n);
    verify_cmd->add_option("--seed", seed);
    verify_cmd->add_option("--t-max", t_max);
    verify_cmd->add_option("--tol", mc_tol);
    verify_cmd->add_option("--mesh", mesh);
    verify_cmd->add_option("--jump-eps", jump_eps);
    verify_cmd->add_option("--format", format);

    auto* catalog_cmd = app.add_subcommand("catalog", "list built-in fixtures");
    catalog_cmd->add_option("--format", format);

    CLI11_PARSE(app, argc, argv);

    try {
        if (classify_cmd->parsed()) return cmd_classify(spec_file, max_n, format);
        if (transform_cmd->parsed())
            return cmd_transform(spec_file, map, format, emit_cf, grid_nodes);
        if (factorize_cmd->parsed()) return cmd_factorize(spec_file, tol, emit_cf, format);
        if (sample_cmd->parsed()) return cmd_sample(spec_file, n, seed, t_max, mc_tol, format);
        if (verify_cmd->parsed())
            return cmd_verify(spec_file, n, seed, t_max, mc_tol, mesh, jump_eps, format);
        if (catalog_cmd->parsed()) return cmd_catalog(format);
    } catch (const SpecParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NotClassL& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const NonConvergent& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
