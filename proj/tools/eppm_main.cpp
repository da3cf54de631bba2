// Command-line front end: construct difference-set designs, evaluate union
// bounds, run Monte-Carlo BER sweeps, and compute the spectral-efficiency
// frontier, with CSV and optional SVG output.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "eppm/analysis.hpp"
#include "eppm/bibd.hpp"
#include "eppm/channel.hpp"
#include "eppm/constellation.hpp"
#include "eppm/csv.hpp"
#include "eppm/errors.hpp"
#include "eppm/svg.hpp"

namespace {

using namespace eppm;

constexpr int exit_usage = 2;
constexpr int exit_construction = 3;

int exit_code_for(const Error& e) {
    switch (e.code()) {
    case errc::verification_failed:
    case errc::not_bracketed:
        return exit_construction;
    default:
        return exit_usage;
    }
}

struct Options {
    std::string scheme = "eppm";
    std::string set;     // fig3 | fig4 multi-scheme presets (bounds)
    int q = 0;
    int k = 0;
    int lambda = -1;     // -1 = not given
    int m = 0;           // 0 = largest power of two that fits
    double gamma_start_db = 0.0;
    double gamma_stop_db = 24.0;
    double gamma_step_db = 0.5;
    std::uint64_t seed = 1;
    long long max_trials = 10'000'000;
    long long target_errors = 100;
    double target_ber = 0.0;
    int workers = 1;
    std::string out;
    std::string svg;
    std::string design_file;
};

std::ofstream open_output(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw Error(errc::parse_error, "cannot open output file " + path);
    return f;
}

DifferenceSet design_for(const Options& opt) {
    if (!opt.design_file.empty()) {
        std::ifstream in(opt.design_file);
        if (!in) throw Error(errc::parse_error, "cannot open design file " + opt.design_file);
        return load_difference_set(in);
    }
    if (opt.q <= 0) throw Error(errc::bad_params, "--q is required for this scheme");
    return auto_difference_set(opt.q);
}

int pow2_floor(long long n) {
    int p = 1;
    while (2LL * p <= n) p *= 2;
    return p;
}

SchemeSpec resolve_spec(const Options& opt) {
    const Scheme scheme = scheme_from_name(opt.scheme);
    SchemeSpec spec;
    spec.scheme = scheme;
    switch (scheme) {
    case Scheme::ppm:
        if (opt.q < 2) throw Error(errc::bad_params, "PPM needs --q >= 2");
        spec.q = opt.q;
        spec.k = 1;
        spec.lambda = 0;
        spec.m = opt.m > 0 ? opt.m : pow2_floor(opt.q);
        break;
    case Scheme::mppm:
        if (opt.q < 2 || opt.k < 1)
            throw Error(errc::bad_params, "MPPM needs --q and --k");
        spec.q = opt.q;
        spec.k = opt.k;
        spec.lambda = 0;
        spec.m = opt.m > 0 ? opt.m : pow2_floor(binomial(opt.q, opt.k));
        break;
    case Scheme::eppm:
    case Scheme::aeppm: {
        BibdParams p{};
        if (!opt.design_file.empty())
            p = design_for(opt).params;
        else if (opt.k > 0 && opt.lambda >= 0)
            p = BibdParams{opt.q, opt.k, opt.lambda};
        else
            p = family_params(opt.q);
        p.require_admissible();
        spec.q = p.q;
        spec.k = p.k;
        spec.lambda = p.lambda;
        const long long base = scheme == Scheme::aeppm ? 2LL * p.q : p.q;
        spec.m = opt.m > 0 ? opt.m : pow2_floor(base);
        break;
    }
    case Scheme::ook:
        spec.q = 1;
        spec.k = 1;
        spec.lambda = 0;
        spec.m = 2;
        break;
    }
    return spec;
}

std::vector<SchemeSpec> resolve_spec_set(const Options& opt) {
    if (opt.set.empty()) return {resolve_spec(opt)};
    if (opt.set == "fig3")
        return {
            {Scheme::ppm, 8, 1, 0, 8},
            {Scheme::mppm, 12, 2, 0, 64},
            {Scheme::eppm, 11, 5, 2, 8},
            {Scheme::aeppm, 11, 5, 2, 16},
        };
    if (opt.set == "fig4")
        return {
            {Scheme::ppm, 64, 1, 0, 64},
            {Scheme::mppm, 12, 2, 0, 64},
            {Scheme::eppm, 67, 33, 16, 64},
            {Scheme::aeppm, 67, 33, 16, 128},
        };
    throw Error(errc::bad_params, "unknown preset '" + opt.set + "' (use fig3 or fig4)");
}

Constellation build_from_spec(const Options& opt, const SchemeSpec& spec) {
    Constellation c;
    switch (spec.scheme) {
    case Scheme::ppm:
        c = build_ppm(spec.q);
        break;
    case Scheme::mppm:
        c = build_mppm(spec.q, spec.k);
        break;
    case Scheme::eppm:
    case Scheme::aeppm: {
        Options design_opt = opt;
        design_opt.q = spec.q;
        const DifferenceSet ds = design_for(design_opt);
        if (ds.params.q != spec.q || ds.params.k != spec.k || ds.params.lambda != spec.lambda)
            throw Error(errc::bad_params, "design file parameters do not match the scheme spec");
        const IncidenceMatrix cm = expand_incidence(ds);
        c = spec.scheme == Scheme::eppm ? build_eppm(cm) : build_aeppm(cm);
        break;
    }
    case Scheme::ook:
        c = build_ook();
        break;
    }
    if (spec.m != c.mapped_count()) restrict_mapping(c, spec.m);
    return c;
}

std::string spec_label(const SchemeSpec& spec) {
    std::ostringstream s;
    s << scheme_name(spec.scheme) << " q=" << spec.q;
    if (spec.scheme == Scheme::mppm || spec.scheme == Scheme::eppm ||
        spec.scheme == Scheme::aeppm)
        s << " k=" << spec.k;
    s << " M=" << spec.m;
    return s.str();
}

void emit(const std::string& path, const std::function<void(std::ostream&)>& writer) {
    if (path.empty()) {
        writer(std::cout);
    } else {
        auto f = open_output(path);
        writer(f);
    }
}

int cmd_design(const Options& opt) {
    std::optional<DifferenceSet> ds;
    if (!opt.design_file.empty() || opt.k <= 0) {
        ds = design_for(opt);
    } else {
        if (opt.lambda < 0) throw Error(errc::bad_params, "--lambda is required with --k");
        BibdParams params{opt.q, opt.k, opt.lambda};
        params.require_admissible();
        ds = brute_force_search(params);
        if (!ds) {
            std::cerr << "error: no (" << params.q << "," << params.k << "," << params.lambda
                      << ") difference set found\n";
            return exit_construction;
        }
    }

    const VerificationReport report = verify_difference_set(*ds);
    std::cout << format_difference_set(*ds);
    std::cout << "# verification: " << (report.pass ? "PASS" : "FAIL") << " - "
              << ds->params.q - 1 << " nonzero differences, each covered " << ds->params.lambda
              << " time(s)\n";
    if (!report.pass) {
        for (const auto& f : report.failures) std::cerr << "error: " << f << '\n';
        return exit_construction;
    }
    if (!opt.out.empty()) {
        auto f = open_output(opt.out);
        save_difference_set(*ds, f);
    }
    return 0;
}

int cmd_bounds(const Options& opt) {
    const auto specs = resolve_spec_set(opt);
    const auto grid = make_gamma_grid(opt.gamma_start_db, opt.gamma_stop_db, opt.gamma_step_db);

    std::vector<ResultRow> rows;
    std::vector<PlotSeries> series;
    for (const auto& spec : specs) {
        const BoundCurve curve = bound_curve(spec, grid);
        PlotSeries s{spec_label(spec), {}, true, false};
        for (const auto& p : curve.points) {
            ResultRow row;
            row.scheme = scheme_name(spec.scheme);
            row.q = spec.q;
            row.k = spec.k;
            row.lambda = spec.lambda;
            row.m = spec.m;
            row.gamma_db = p.gamma_db;
            row.eta = spec.eta();
            row.ser_bound = p.ser_bound;
            row.ber_bound = p.ber_bound;
            rows.push_back(std::move(row));
            s.xy.emplace_back(p.gamma_db, p.ber_bound);
        }
        series.push_back(std::move(s));
    }

    emit(opt.out, [&](std::ostream& os) { write_results_csv(os, rows); });
    if (!opt.svg.empty()) {
        auto f = open_output(opt.svg);
        write_plot_svg(f, {"Union bounds on bit error probability", "average SNR (dB)",
                           "BER bound", true, series});
    }
    return 0;
}

int cmd_simulate(const Options& opt) {
    const SchemeSpec spec = resolve_spec_set(opt).front();
    const Constellation c = build_from_spec(opt, spec);
    const auto grid = make_gamma_grid(opt.gamma_start_db, opt.gamma_stop_db, opt.gamma_step_db);

    MonteCarloConfig cfg;
    cfg.seed = opt.seed;
    cfg.max_trials = opt.max_trials;
    cfg.target_errors = opt.target_errors;
    cfg.target_ber = opt.target_ber;
    cfg.workers = opt.workers;

    const auto estimates = run_ber_sweep(c, grid, cfg);

    std::vector<ResultRow> rows;
    PlotSeries bound_series{spec_label(spec) + " bound", {}, true, false};
    PlotSeries sim_series{spec_label(spec) + " simulated", {}, false, true};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double gamma = std::pow(10.0, grid[i] / 10.0);
        ResultRow row;
        row.scheme = scheme_name(spec.scheme);
        row.q = spec.q;
        row.k = spec.k;
        row.lambda = spec.lambda;
        row.m = spec.m;
        row.gamma_db = grid[i];
        row.eta = spec.eta();
        row.ser_bound = scheme_ser_bound(spec, gamma);
        row.ber_bound = scheme_ber_bound(spec, gamma);
        row.trials = estimates[i].trials;
        row.symbol_errors = estimates[i].symbol_errors;
        row.bit_errors = estimates[i].bit_errors;
        row.ser_sim = estimates[i].ser;
        row.ber_sim = estimates[i].ber;
        row.ci95 = estimates[i].ci95_halfwidth;
        bound_series.xy.emplace_back(grid[i], *row.ber_bound);
        if (estimates[i].ber > 0.0) sim_series.xy.emplace_back(grid[i], estimates[i].ber);
        rows.push_back(std::move(row));
    }

    emit(opt.out, [&](std::ostream& os) { write_results_csv(os, rows); });
    if (!opt.svg.empty()) {
        auto f = open_output(opt.svg);
        write_plot_svg(f, {"Monte-Carlo BER vs union bound", "average SNR (dB)", "BER", true,
                           {bound_series, sim_series}});
    }
    return 0;
}

int cmd_frontier(const Options& opt) {
    const double target = opt.target_ber > 0.0 ? opt.target_ber : 1e-5;
    const auto points = spectral_efficiency_frontier(default_frontier_specs(), target);

    emit(opt.out, [&](std::ostream& os) { write_frontier_csv(os, points); });
    if (!opt.svg.empty()) {
        std::vector<PlotSeries> series;
        for (const Scheme s :
             {Scheme::ppm, Scheme::mppm, Scheme::eppm, Scheme::aeppm, Scheme::ook}) {
            PlotSeries ps{std::string(scheme_name(s)), {}, true, true};
            for (const auto& p : points)
                if (p.scheme == s) ps.xy.emplace_back(p.eta, p.required_gamma_db);
            series.push_back(std::move(ps));
        }
        auto f = open_output(opt.svg);
        write_plot_svg(f, {"Required SNR vs spectral efficiency", "spectral efficiency (bits/slot)",
                           "required SNR (dB)", false, series});
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"EPPM constellation designer, union-bound calculator and link simulator"};
    app.require_subcommand(1);
    app.set_config("--config", "", "plain key=value configuration file (flags take precedence)");

    Options opt;
    int exit_code = 0;

    const auto add_scheme_flags = [&](CLI::App* sub, bool with_set) {
        sub->add_option("--scheme", opt.scheme, "ppm|mppm|eppm|aeppm|ook")
            ->check(CLI::IsMember({"ppm", "mppm", "eppm", "aeppm", "ook"}));
        if (with_set)
            sub->add_option("--set", opt.set, "preset scheme set: fig3|fig4");
        sub->add_option("--q", opt.q, "slots per symbol");
        sub->add_option("--k", opt.k, "pulses per symbol");
        sub->add_option("--lambda", opt.lambda, "design cross-correlation");
        sub->add_option("--m", opt.m, "mapped alphabet size (power of two)");
        sub->add_option("--design-file", opt.design_file, "load a difference set from file");
    };
    const auto add_grid_flags = [&](CLI::App* sub) {
        sub->add_option("--gamma-start-db", opt.gamma_start_db, "sweep start (dB)");
        sub->add_option("--gamma-stop-db", opt.gamma_stop_db, "sweep stop (dB)");
        sub->add_option("--gamma-step-db", opt.gamma_step_db, "sweep step (dB)");
    };
    const auto add_output_flags = [&](CLI::App* sub) {
        sub->add_option("--out", opt.out, "CSV output path (default stdout)");
        sub->add_option("--svg", opt.svg, "SVG plot output path");
    };

    CLI::App* design = app.add_subcommand("design", "construct and verify a difference set");
    design->add_option("--q", opt.q, "design size (auto-selects the construction)");
    design->add_option("--k", opt.k, "block size for exhaustive search");
    design->add_option("--lambda", opt.lambda, "index for exhaustive search");
    design->add_option("--out", opt.out, "write the design to this file");
    design->add_option("--design-file", opt.design_file, "verify an existing design file");
    design->callback([&] { exit_code = cmd_design(opt); });

    CLI::App* bounds = app.add_subcommand("bounds", "closed-form SER/BER union bounds");
    add_scheme_flags(bounds, true);
    add_grid_flags(bounds);
    add_output_flags(bounds);
    bounds->callback([&] { exit_code = cmd_bounds(opt); });

    CLI::App* simulate = app.add_subcommand("simulate", "Monte-Carlo BER sweep over AWGN");
    add_scheme_flags(simulate, false);
    add_grid_flags(simulate);
    add_output_flags(simulate);
    simulate->add_option("--seed", opt.seed, "RNG seed")->envname("EPPM_SEED");
    simulate->add_option("--max-trials", opt.max_trials, "trial cap per SNR point");
    simulate->add_option("--target-errors", opt.target_errors, "stop after this many bit errors");
    simulate->add_option("--target-ber", opt.target_ber,
                         "enforce the >= 10/BER trial floor for this BER");
    simulate->add_option("--workers", opt.workers, "worker threads (results identical for any count)");
    simulate->callback([&] { exit_code = cmd_simulate(opt); });

    CLI::App* frontier =
        app.add_subcommand("frontier", "required SNR vs spectral efficiency point sets");
    frontier->add_option("--target-ber", opt.target_ber, "frontier target BER (default 1e-5)");
    add_output_flags(frontier);
    frontier->callback([&] { exit_code = cmd_frontier(opt); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return exit_code;
}
