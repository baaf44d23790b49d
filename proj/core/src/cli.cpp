#include "yamabe/cli.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "yamabe/errors.hpp"
#include "yamabe/exponents.hpp"
#include "yamabe/field_io.hpp"
#include "yamabe/functional.hpp"
#include "yamabe/rearrange.hpp"
#include "yamabe/solver.hpp"
#include "yamabe/verify.hpp"

namespace yamabe {

namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct SolverConfig {
    ManifoldFactor manifold = ManifoldFactor::homogeneous(1.0, 1.0);
    ConformalExponents ce;
    double r_max = 0.0;
    int cells = 0;
    SolveOptions opts;
    std::optional<double> s;
    std::vector<double> s_list;
};

SolverConfig read_solver_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw FormatError(std::string("invalid config JSON: ") + e.what());
    }
    try {
        SolverConfig cfg;
        const auto& man = j.at("manifold");
        cfg.manifold = ManifoldFactor::homogeneous(
            man.at("volume").get<double>(), man.at("scalar_curvature").get<double>());
        const auto& dims = j.at("dims");
        cfg.ce = conformal_exponents(dims.at("m").get<int>(), dims.at("n").get<int>());
        const auto& grid = j.at("grid");
        cfg.r_max = grid.at("r_max").get<double>();
        cfg.cells = grid.at("cells").get<int>();
        if (j.contains("solver")) {
            const auto& sol = j.at("solver");
            if (sol.contains("tol")) cfg.opts.tol = sol.at("tol").get<double>();
            if (sol.contains("max_iter"))
                cfg.opts.max_iter = sol.at("max_iter").get<int>();
            if (sol.contains("s")) cfg.s = sol.at("s").get<double>();
            if (sol.contains("s_list"))
                cfg.s_list = sol.at("s_list").get<std::vector<double>>();
        }
        return cfg;
    } catch (const json::exception& e) {
        throw FormatError(std::string("bad config: ") + e.what());
    }
}

void write_profile_csv(const RadialProblem& prob, const std::vector<double>& profile,
                       const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    out << "k,r,value\n";
    for (std::size_t k = 0; k < profile.size(); ++k)
        out << k << "," << fmt(prob.node_r(static_cast<int>(k))) << ","
            << fmt(profile[k]) << "\n";
}

json report_to_json(const SolveReport& rep) {
    return {{"s", rep.s},
            {"lambda_s", rep.lambda_s},
            {"iterations", rep.iterations},
            {"final_residual", rep.final_residual},
            {"final_quotient", rep.final_quotient},
            {"norm_check", rep.norm_check},
            {"boundary_mass", rep.boundary_mass}};
}

int cmd_constants(int m, int n, const std::string& format, std::ostream& out) {
    const auto ce = conformal_exponents(m, n);
    const double vol = sphere_volume(ce.d);
    const double yd = yamabe_sphere_constant(ce.d);
    if (format == "json") {
        json j = {{"m", ce.m},   {"n", ce.n},           {"d", ce.d},
                  {"a", ce.a},   {"p", ce.p},           {"sphere_volume", vol},
                  {"Y_d", yd}};
        out << j.dump(2) << "\n";
    } else {
        out << "m,n,d,a,p,sphere_volume,Y_d\n";
        out << ce.m << "," << ce.n << "," << ce.d << "," << fmt(ce.a) << ","
            << fmt(ce.p) << "," << fmt(vol) << "," << fmt(yd) << "\n";
    }
    return 0;
}

int cmd_verify(std::uint64_t seed, int trials, const std::string& format,
               std::ostream& out) {
    const auto report = run_verification(seed, trials);
    if (format == "json") {
        json props = json::array();
        for (const auto& p : report.properties)
            props.push_back({{"name", p.name},
                             {"statement", p.statement},
                             {"trials", p.trials},
                             {"failures", p.failures},
                             {"worst", p.worst}});
        json j = {{"seed", seed}, {"pass", report.pass()}, {"properties", props}};
        out << j.dump(2) << "\n";
    } else {
        for (const auto& p : report.properties)
            out << (p.failures == 0 ? "PASS " : "FAIL ") << p.name
                << ": trials=" << p.trials << " failures=" << p.failures
                << " worst=" << fmt(p.worst) << " :: " << p.statement << "\n";
        out << (report.pass() ? "VERIFY PASS" : "VERIFY FAIL") << " seed=" << seed
            << "\n";
    }
    return report.pass() ? 0 : 2;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"numerical laboratory for the Yamabe quotient on M x R^n"};
    app.require_subcommand(1);
    std::string format = "csv";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    // constants
    auto* c_const = app.add_subcommand(
        "constants", "conformal constants a, p and the sphere constant Y_d");
    c_const->fallthrough();
    int opt_m = 2, opt_n = 1;
    c_const->add_option("--m", opt_m, "dimension of the closed factor")->required();
    c_const->add_option("--n", opt_n, "dimension of the Euclidean factor")
        ->required();

    // symmetrize
    auto* c_sym = app.add_subcommand("symmetrize",
                                     "Steiner symmetrization of a field file");
    c_sym->fallthrough();
    std::string in_path, out_path, trace_path;
    c_sym->add_option("--in", in_path, "input field")->required();
    c_sym->add_option("--out", out_path, "output field")->required();

    // polarize
    auto* c_pol = app.add_subcommand("polarize", "polarization by one half-space");
    c_pol->fallthrough();
    double center = 0.0;
    c_pol->add_option("--in", in_path, "input field")->required();
    c_pol->add_option("--out", out_path, "output field")->required();
    c_pol->add_option("--center", center, "polarizer center on (h/2)Z")->required();

    // polarize-seq
    auto* c_seq = app.add_subcommand(
        "polarize-seq", "greedy polarization sequence toward the symmetrization");
    c_seq->fallthrough();
    double kappa = 1.0;
    int max_iter = 0;
    c_seq->add_option("--in", in_path, "input field")->required();
    c_seq->add_option("--out", out_path, "final field (optional)");
    c_seq->add_option("--kappa", kappa, "greedy selection fraction in (0,1]")
        ->capture_default_str();
    c_seq->add_option("--max-iter", max_iter,
                      "step limit (default 10*(2J+1)^2)");
    c_seq->add_option("--trace", trace_path, "per-step trace CSV");

    // quotient
    auto* c_quot = app.add_subcommand("quotient", "Yamabe quotient Q_s of a field");
    c_quot->fallthrough();
    double s_value = 0.0;
    c_quot->add_option("--in", in_path, "input field")->required();
    c_quot->add_option("--s", s_value, "exponent s in (2, p]")->required();
    c_quot->add_option("--m", opt_m, "dimension of the closed factor")
        ->capture_default_str();
    c_quot->add_option("--n", opt_n, "dimension of the Euclidean factor")
        ->capture_default_str();

    // mass-profile
    auto* c_mass = app.add_subcommand("mass-profile",
                                      "captured mass fractions on M x B_t");
    c_mass->fallthrough();
    std::vector<double> radii;
    c_mass->add_option("--in", in_path, "input field")->required();
    c_mass->add_option("--s", s_value, "mass exponent")->required();
    c_mass->add_option("--radii", radii, "increasing radii t")
        ->required()
        ->delimiter(',');

    // minimize
    auto* c_min = app.add_subcommand(
        "minimize", "subcritical quotient minimization on the radial model");
    c_min->fallthrough();
    double opt_tol = 0.0;
    int opt_max_iter = 0;
    std::vector<double> s_list;
    c_min->add_option("--in", in_path, "solver config JSON")->required();
    c_min->add_option("--out", out_path, "minimizer profile CSV");
    c_min->add_option("--s", s_value, "override config s");
    c_min->add_option("--tol", opt_tol, "override config tolerance");
    c_min->add_option("--max-iter", opt_max_iter, "override config max_iter");

    // lambda-curve
    auto* c_curve = app.add_subcommand(
        "lambda-curve", "continuation of lambda_s toward the critical exponent");
    c_curve->fallthrough();
    c_curve->add_option("--in", in_path, "solver config JSON")->required();
    c_curve->add_option("--out", out_path, "curve CSV");
    c_curve->add_option("--s-list", s_list, "override config s_list")
        ->delimiter(',');
    c_curve->add_option("--tol", opt_tol, "override config tolerance");
    c_curve->add_option("--max-iter", opt_max_iter, "override config max_iter");

    // verify
    auto* c_verify = app.add_subcommand("verify",
                                        "run the full invariant battery");
    c_verify->fallthrough();
    std::uint64_t seed = 42;
    int trials = 500;
    c_verify->add_option("--seed", seed, "random seed")->capture_default_str();
    c_verify->add_option("--trials", trials, "number of random fields")
        ->capture_default_str();

    std::vector<const char*> argv;
    argv.push_back("yamabe");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*c_const) return cmd_constants(opt_m, opt_n, format, out);

        if (*c_sym) {
            save_field(steiner_symmetrize(load_field(in_path)), out_path);
            out << "wrote " << out_path << "\n";
            return 0;
        }

        if (*c_pol) {
            const Field u = load_field(in_path);
            const Polarizer h(center, u.euclidean());
            save_field(polarize(u, h), out_path);
            out << "wrote " << out_path << "\n";
            return 0;
        }

        if (*c_seq) {
            const Field u = load_field(in_path);
            const int cells = static_cast<int>(u.cell_count());
            const int limit = max_iter > 0 ? max_iter : 10 * cells * cells;
            const auto run = greedy_polarization_sequence(u, kappa, limit);
            if (!trace_path.empty()) {
                std::ofstream tf(trace_path);
                if (!tf) throw IoError("cannot open '" + trace_path + "'");
                tf << "step,center,improvement,distance,mirror_distance\n";
                for (std::size_t i = 0; i < run.trace.steps.size(); ++i) {
                    const auto& st = run.trace.steps[i];
                    tf << i << "," << fmt(st.center) << "," << fmt(st.improvement)
                       << "," << fmt(st.distance) << ","
                       << fmt(st.mirror_distance) << "\n";
                }
            }
            if (!out_path.empty()) save_field(run.field, out_path);
            const auto& tr = run.trace;
            if (format == "json") {
                json j = {{"status", to_string(tr.status)},
                          {"steps", tr.steps.size()},
                          {"initial_distance", tr.initial_distance},
                          {"final_distance", tr.steps.empty()
                                                 ? tr.initial_distance
                                                 : tr.steps.back().distance}};
                out << j.dump(2) << "\n";
            } else {
                out << "status,steps,initial_distance,final_distance\n"
                    << to_string(tr.status) << "," << tr.steps.size() << ","
                    << fmt(tr.initial_distance) << ","
                    << fmt(tr.steps.empty() ? tr.initial_distance
                                            : tr.steps.back().distance)
                    << "\n";
            }
            return (tr.status == GreedyStatus::ReachedTarget ||
                    tr.status == GreedyStatus::ReachedMirror)
                       ? 0
                       : 1;
        }

        if (*c_quot) {
            const Field u = load_field(in_path);
            const auto ce = conformal_exponents(opt_m, opt_n);
            const auto q = yamabe_quotient(u, s_value, ce);
            if (format == "json") {
                json j = {{"s", q.s},
                          {"numerator", q.numerator},
                          {"denominator", q.denominator},
                          {"value", q.value}};
                out << j.dump(2) << "\n";
            } else {
                out << "s,numerator,denominator,value\n"
                    << fmt(q.s) << "," << fmt(q.numerator) << ","
                    << fmt(q.denominator) << "," << fmt(q.value) << "\n";
            }
            return 0;
        }

        if (*c_mass) {
            const Field u = load_field(in_path);
            const auto fractions = mass_profile(u, s_value, radii);
            if (format == "json") {
                json j = json::array();
                for (std::size_t i = 0; i < radii.size(); ++i)
                    j.push_back({{"t", radii[i]}, {"fraction", fractions[i]}});
                out << j.dump(2) << "\n";
            } else {
                out << "t,fraction\n";
                for (std::size_t i = 0; i < radii.size(); ++i)
                    out << fmt(radii[i]) << "," << fmt(fractions[i]) << "\n";
            }
            return 0;
        }

        if (*c_min) {
            auto cfg = read_solver_config(in_path);
            if (c_min->count("--s")) cfg.s = s_value;
            if (c_min->count("--tol")) cfg.opts.tol = opt_tol;
            if (c_min->count("--max-iter")) cfg.opts.max_iter = opt_max_iter;
            if (!cfg.s.has_value())
                throw DomainError("minimize: no s given (config solver.s or --s)");
            const RadialProblem prob(cfg.manifold, cfg.ce, cfg.r_max, cfg.cells);
            const auto rep = minimize_subcritical(prob, *cfg.s, cfg.opts);
            if (!out_path.empty()) write_profile_csv(prob, rep.profile, out_path);
            if (format == "json") {
                out << report_to_json(rep).dump(2) << "\n";
            } else {
                out << "s,lambda_s,iterations,final_residual,norm_check,"
                       "boundary_mass\n"
                    << fmt(rep.s) << "," << fmt(rep.lambda_s) << ","
                    << rep.iterations << "," << fmt(rep.final_residual) << ","
                    << fmt(rep.norm_check) << "," << fmt(rep.boundary_mass) << "\n";
            }
            return 0;
        }

        if (*c_curve) {
            auto cfg = read_solver_config(in_path);
            if (c_curve->count("--s-list")) cfg.s_list = s_list;
            if (c_curve->count("--tol")) cfg.opts.tol = opt_tol;
            if (c_curve->count("--max-iter")) cfg.opts.max_iter = opt_max_iter;
            if (cfg.s_list.empty())
                throw DomainError(
                    "lambda-curve: no s values (config solver.s_list or --s-list)");
            const RadialProblem prob(cfg.manifold, cfg.ce, cfg.r_max, cfg.cells);
            const auto rep = continuation(prob, cfg.s_list, cfg.opts);
            std::ostringstream csv;
            csv << "s,lambda_s,residual,subcritical,converged,warm_started,"
                   "iterations\n";
            for (const auto& e : rep.entries)
                csv << fmt(e.s) << "," << fmt(e.lambda_s) << "," << fmt(e.residual)
                    << "," << (e.subcritical ? 1 : 0) << ","
                    << (e.converged ? 1 : 0) << "," << (e.warm_started ? 1 : 0)
                    << "," << e.iterations << "\n";
            if (!out_path.empty()) {
                std::ofstream cf(out_path);
                if (!cf) throw IoError("cannot open '" + out_path + "'");
                cf << csv.str();
            }
            if (format == "json") {
                json entries = json::array();
                for (const auto& e : rep.entries)
                    entries.push_back({{"s", e.s},
                                       {"lambda_s", e.lambda_s},
                                       {"residual", e.residual},
                                       {"subcritical", e.subcritical},
                                       {"converged", e.converged},
                                       {"warm_started", e.warm_started},
                                       {"iterations", e.iterations}});
                json j = {{"Y_d", rep.sphere_constant}, {"entries", entries}};
                out << j.dump(2) << "\n";
            } else {
                out << csv.str();
            }
            return 0;
        }

        if (*c_verify) return cmd_verify(seed, trials, format, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

} // namespace yamabe
