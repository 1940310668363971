// cohfrac: coherence-fraction toolkit front end.
//
// Subcommands: fraction (single state), channel (single channel report),
// verify (property suites), sweep (parameter sweeps to CSV/JSON).
// Exit codes: 0 success, 1 verify violation, 2 parse/validation/bad spec or
// unwritable output, 3 fraction optimizer did not converge (value printed).

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cohfrac/chan_analysis.hpp"
#include "cohfrac/io.hpp"
#include "cohfrac/measures.hpp"
#include "cohfrac/verify.hpp"

namespace {

using cohfrac::Channel;
using cohfrac::ChannelSpec;
using cohfrac::DensityMatrix;
using cohfrac::OptimizerConfig;
using json = nlohmann::json;

struct Options {
    std::string input;
    std::string channel_path;
    std::string out;
    std::string format = "json";
    std::uint64_t seed = 0;
    int restarts = 0; // 0: context default (16; 32 for bipartite work)
    int iters = 500;
    double tol = 1e-10;
    int grid = 0;
    int count = 100;
    int precision = 9;

    std::string suite;

    std::string kind;
    std::string param;
    std::string sides = "one_sided";
    std::string kind2;
    std::string param2;
    double start = 0.0, stop = 1.0, step = 0.1;
    double start2 = 0.0, stop2 = 1.0, step2 = 0.1;
    double gamma = 1.0;
    double phi = 0.0;
    double theta = std::numbers::pi / 2.0;
    double p_fixed = 0.5;
    std::vector<double> axis = {0.0, 0.0, 1.0};
};

OptimizerConfig make_cfg(const Options& o, int default_restarts) {
    OptimizerConfig cfg;
    cfg.restarts = o.restarts > 0 ? o.restarts : default_restarts;
    cfg.max_iters = o.iters;
    cfg.tol = o.tol;
    cfg.seed = o.seed;
    cfg.grid_points = o.grid;
    return cfg;
}

void require_precision(const Options& o) {
    if (o.precision < 3 || o.precision > 17)
        throw cohfrac::ParamOutOfRange("precision must lie in [3, 17]");
}

// Round through the significant-digit formatter so JSON numbers honor the
// configured precision too.
json num(double x, int precision) {
    return std::stod(cohfrac::io::format_sig(x, precision));
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw cohfrac::Error("cannot open output file: " + out_path);
    f << text;
    if (!f.good()) throw cohfrac::Error("write failed: " + out_path);
}

std::string join_phases(const cohfrac::PhaseVector& phases, int precision) {
    std::string s;
    for (int i = 0; i < phases.dim(); ++i) {
        if (i) s += ';';
        s += cohfrac::io::format_sig(phases[i], precision);
    }
    return s;
}

int cmd_fraction(const Options& o) {
    require_precision(o);
    const DensityMatrix rho = cohfrac::io::load_state(o.input);
    const OptimizerConfig cfg = make_cfg(o, 16);
    const cohfrac::FractionResult res = cohfrac::coherence_fraction(rho, cfg);
    const double ub = cohfrac::coherence_fraction_upper_bound(rho);
    const bool aligned = cohfrac::check_phase_alignment(rho).aligned;

    std::ostringstream text;
    if (o.format == "json") {
        json j;
        j["value"] = num(res.value, o.precision);
        json phases = json::array();
        for (int i = 0; i < res.argmax_phases.dim(); ++i)
            phases.push_back(num(res.argmax_phases[i], o.precision));
        j["argmax_phases"] = phases;
        j["upper_bound"] = num(ub, o.precision);
        j["aligned"] = aligned;
        j["iterations_used"] = res.iterations_used;
        j["converged"] = res.converged;
        if (rho.dim() == 2)
            j["distillable_coherence"] =
                num(cohfrac::distillable_coherence_pure_qubit(res.value),
                    o.precision);
        text << j.dump(2) << "\n";
    } else {
        auto row = [&](const char* k, const std::string& v) {
            text << k << "," << v << "\n";
        };
        row("value", cohfrac::io::format_sig(res.value, o.precision));
        row("argmax_phases", join_phases(res.argmax_phases, o.precision));
        row("upper_bound", cohfrac::io::format_sig(ub, o.precision));
        row("aligned", aligned ? "true" : "false");
        row("iterations_used", std::to_string(res.iterations_used));
        row("converged", res.converged ? "true" : "false");
        if (rho.dim() == 2)
            row("distillable_coherence",
                cohfrac::io::format_sig(
                    cohfrac::distillable_coherence_pure_qubit(res.value),
                    o.precision));
    }
    emit(text.str(), o.out);
    return res.converged ? 0 : 3;
}

bool named_spec(const Channel& c) {
    return c.spec && c.spec->kind != cohfrac::ChannelKind::kraus &&
           c.spec->kind != cohfrac::ChannelKind::identity;
}

int cmd_channel(const Options& o) {
    require_precision(o);
    const Channel c = cohfrac::io::load_channel(o.channel_path);
    const OptimizerConfig cfg = make_cfg(o, 16);

    json j;
    if (c.dim == 2) {
        const cohfrac::ComplementarityReport rep =
            cohfrac::complementarity_report(c, cfg);
        const cohfrac::PowerValue kp = cohfrac::cohering_power(c, cfg);
        j["F"] = num(rep.F, o.precision);
        j["D"] = num(rep.D, o.precision);
        j["cohering_power"] = num(kp.value, o.precision);
        j["sum"] = num(rep.sum, o.precision);
        j["K"] = num(rep.K, o.precision);
        j["bounds_hold"] = rep.bounds_hold;
        j["method"] = "qubit_theorem3";
        if (named_spec(c)) {
            const double cf = cohfrac::closed_form_ocf(*c.spec);
            const double cd = cohfrac::closed_form_decohering_power(*c.spec);
            j["closed_form_F"] = num(cf, o.precision);
            j["closed_form_D"] = num(cd, o.precision);
            j["F_gap"] = num(std::abs(rep.F - cf), o.precision);
            j["D_gap"] = num(std::abs(rep.D - cd), o.precision);
            if (c.spec->kind == cohfrac::ChannelKind::self_complementary)
                j["closed_form_D_corrected"] =
                    num(cohfrac::self_complementary_corrected_decohering_power(
                            c.spec->theta),
                        o.precision);
        }
    } else {
        const cohfrac::ChannelFractionResult res =
            cohfrac::optimal_coherence_fraction(c, cfg);
        const cohfrac::PowerValue d = cohfrac::decohering_power(c, cfg);
        const cohfrac::PowerValue k = cohfrac::cohering_power(c, cfg);
        j["F"] = num(res.value, o.precision);
        j["D"] = num(d.value, o.precision);
        j["cohering_power"] = num(k.value, o.precision);
        j["method"] = "general_search";
        j["decohering_power_method"] = "general";
    }

    std::ostringstream text;
    if (o.format == "json") {
        text << j.dump(2) << "\n";
    } else {
        for (auto it = j.begin(); it != j.end(); ++it) {
            text << it.key() << ",";
            if (it.value().is_string())
                text << it.value().get<std::string>();
            else if (it.value().is_boolean())
                text << (it.value().get<bool>() ? "true" : "false");
            else
                text << cohfrac::io::format_sig(it.value().get<double>(),
                                                o.precision);
            text << "\n";
        }
    }
    emit(text.str(), o.out);
    return 0;
}

int cmd_verify(const Options& o) {
    require_precision(o);
    std::vector<std::string> suites;
    if (o.suite == "all") {
        suites = cohfrac::verify::suite_names();
    } else {
        suites = {o.suite};
    }

    const std::string out_dir = o.out.empty() ? "." : o.out;
    bool all_passed = true;
    for (const std::string& name : suites) {
        const int default_restarts =
            name == "bipartite_observations" ? 32 : 16;
        const OptimizerConfig cfg = make_cfg(o, default_restarts);
        const cohfrac::verify::SuiteResult res =
            cohfrac::verify::run_suite(name, o.seed, o.count, cfg);

        std::cout << "[verify] " << res.suite << ": " << res.checks
                  << " checks, " << res.failures.size() << " failures  "
                  << (res.passed() ? "PASS" : "FAIL") << "\n";
        for (const std::string& note : res.notes)
            std::cout << "  note: " << note << "\n";

        if (!res.passed()) {
            all_passed = false;
            std::filesystem::create_directories(out_dir);
            int i = 0;
            for (const cohfrac::verify::Failure& f : res.failures) {
                std::cout << "  failure: " << f.description << "\n";
                if (!f.payload.empty()) {
                    const std::string path =
                        out_dir + "/verify_" + res.suite + "_failure_" +
                        std::to_string(i) + ".json";
                    std::ofstream pf(path);
                    if (pf) pf << f.payload << "\n";
                    std::cout << "    input written to " << path << "\n";
                }
                ++i;
            }
        }
    }
    return all_passed ? 0 : 1;
}

std::string default_param(const std::string& kind) {
    if (kind == "depolarizing" || kind == "bit_flip" || kind == "gad")
        return "p";
    if (kind == "self_complementary") return "theta";
    if (kind == "unitary") return "angle";
    return "";
}

ChannelSpec spec_at(const std::string& kind, const std::string& param,
                    double v, const Options& o) {
    if (kind == "depolarizing" && param == "p")
        return ChannelSpec::depolarizing(v);
    if (kind == "bit_flip" && param == "p") return ChannelSpec::bit_flip(v);
    if (kind == "gad") {
        if (param == "p") return ChannelSpec::gad(v, o.gamma);
        if (param == "gamma") return ChannelSpec::gad(o.p_fixed, v);
    }
    if (kind == "self_complementary") {
        if (param == "theta") return ChannelSpec::self_complementary(v, o.phi);
        if (param == "phi") return ChannelSpec::self_complementary(o.theta, v);
    }
    if (kind == "unitary" && param == "angle") {
        if (o.axis.size() != 3)
            throw cohfrac::ParamOutOfRange("--axis needs three components");
        return ChannelSpec::unitary({o.axis[0], o.axis[1], o.axis[2]}, v);
    }
    throw cohfrac::ParamOutOfRange("sweep: unsupported kind/parameter \"" +
                                   kind + "/" + param + "\"");
}

std::vector<double> sweep_grid(double start, double stop, double step) {
    if (step <= 0.0)
        throw cohfrac::ParamOutOfRange("sweep: step must be positive");
    if (start > stop)
        throw cohfrac::ParamOutOfRange("sweep: start must not exceed stop");
    const int n = static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i) grid[i] = std::min(start + i * step, stop);
    return grid;
}

int cmd_sweep(const Options& o) {
    require_precision(o);
    const OptimizerConfig cfg = make_cfg(o, 32);
    const Channel id2 = cohfrac::make_channel(ChannelSpec::identity(2));
    const std::string param =
        o.param.empty() ? default_param(o.kind) : o.param;

    std::ostringstream text;
    json rows = json::array();

    if (o.sides == "cross") {
        const std::string param2 =
            o.param2.empty() ? default_param(o.kind2) : o.param2;
        const std::vector<double> ps = sweep_grid(o.start, o.stop, o.step);
        const std::vector<double> qs = sweep_grid(o.start2, o.stop2, o.step2);
        text << "p,q,ocf\n";
        for (double p : ps) {
            const Channel c1 =
                cohfrac::make_channel(spec_at(o.kind, param, p, o));
            for (double q : qs) {
                const Channel c2 =
                    cohfrac::make_channel(spec_at(o.kind2, param2, q, o));
                const double ocf = cohfrac::bipartite_ocf(c1, c2, cfg).value;
                text << cohfrac::io::format_sig(p, o.precision) << ","
                     << cohfrac::io::format_sig(q, o.precision) << ","
                     << cohfrac::io::format_sig(ocf, o.precision) << "\n";
                rows.push_back({{"p", num(p, o.precision)},
                                {"q", num(q, o.precision)},
                                {"ocf", num(ocf, o.precision)}});
            }
        }
    } else {
        const std::vector<double> ps = sweep_grid(o.start, o.stop, o.step);
        text << "param,ocf_one_sided,ocf_two_sided,closed_form\n";
        for (double v : ps) {
            const ChannelSpec spec = spec_at(o.kind, param, v, o);
            const Channel c = cohfrac::make_channel(spec);
            const double one = cohfrac::bipartite_ocf(c, id2, cfg).value;
            const double two = cohfrac::bipartite_ocf(c, c, cfg).value;
            std::string cf;
            json cf_json;
            try {
                const double x = cohfrac::closed_form_ocf(spec);
                cf = cohfrac::io::format_sig(x, o.precision);
                cf_json = num(x, o.precision);
            } catch (const cohfrac::UnsupportedKind&) {
                cf_json = nullptr;
            }
            text << cohfrac::io::format_sig(v, o.precision) << ","
                 << cohfrac::io::format_sig(one, o.precision) << ","
                 << cohfrac::io::format_sig(two, o.precision) << "," << cf
                 << "\n";
            rows.push_back({{"param", num(v, o.precision)},
                            {"ocf_one_sided", num(one, o.precision)},
                            {"ocf_two_sided", num(two, o.precision)},
                            {"closed_form", cf_json}});
        }
    }

    if (o.format == "json")
        emit(rows.dump(2) + "\n", o.out);
    else
        emit(text.str(), o.out);
    return 0;
}

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--out", o.out, "output file (default: stdout)");
    sub->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--seed", o.seed, "optimizer seed (default 0)");
    sub->add_option("--restarts", o.restarts,
                    "optimizer restarts (default 16; 32 for bipartite work)");
    sub->add_option("--iters", o.iters, "max coordinate sweeps (default 500)");
    sub->add_option("--tol", o.tol, "convergence tolerance (default 1e-10)");
    sub->add_option("--grid", o.grid, "grid points (0 = per-context default)");
    sub->add_option("--count", o.count,
                    "instances per verify class (default 100)");
    sub->add_option("--precision", o.precision,
                    "output significant digits, 3..17 (default 9)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"coherence fraction toolkit"};
    app.require_subcommand(1);
    Options o;

    CLI::App* frac = app.add_subcommand(
        "fraction", "coherence fraction of a state file");
    frac->add_option("--input", o.input, "state JSON file")->required();
    add_common(frac, o);

    CLI::App* chan = app.add_subcommand(
        "channel", "optimal coherence fraction and powers of a channel file");
    chan->add_option("--channel", o.channel_path, "channel JSON file")
        ->required();
    add_common(chan, o);

    CLI::App* verify =
        app.add_subcommand("verify", "run a property suite");
    verify->add_option("suite", o.suite, "suite name or \"all\"")->required();
    add_common(verify, o);

    CLI::App* sweep = app.add_subcommand(
        "sweep", "parameter sweep of bipartite optimal coherence fractions");
    sweep->add_option("--kind", o.kind, "channel kind")->required();
    sweep->add_option("--param", o.param,
                      "swept parameter (default: the kind's main parameter)");
    sweep->add_option("--start", o.start, "sweep start (default 0)");
    sweep->add_option("--stop", o.stop, "sweep stop (default 1)");
    sweep->add_option("--step", o.step, "sweep step (default 0.1)");
    sweep->add_option("--sides", o.sides, "one_sided | two_sided | cross")
        ->check(CLI::IsMember({"one_sided", "two_sided", "cross"}));
    sweep->add_option("--kind2", o.kind2, "second channel kind (cross)");
    sweep->add_option("--param2", o.param2, "second swept parameter (cross)");
    sweep->add_option("--start2", o.start2, "second sweep start (cross)");
    sweep->add_option("--stop2", o.stop2, "second sweep stop (cross)");
    sweep->add_option("--step2", o.step2, "second sweep step (cross)");
    sweep->add_option("--gamma", o.gamma, "fixed gad gamma (default 1)");
    sweep->add_option("--phi", o.phi, "fixed self-complementary phi");
    sweep->add_option("--theta", o.theta,
                      "fixed self-complementary theta (default pi/2)");
    sweep->add_option("--p", o.p_fixed, "fixed gad p (default 0.5)");
    sweep->add_option("--axis", o.axis, "unitary axis components")
        ->delimiter(',')
        ->expected(3);
    add_common(sweep, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (frac->parsed()) return cmd_fraction(o);
        if (chan->parsed()) return cmd_channel(o);
        if (verify->parsed()) return cmd_verify(o);
        if (sweep->parsed()) return cmd_sweep(o);
    } catch (const cohfrac::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
