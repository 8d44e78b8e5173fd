#include "sp2spec/cli.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "sp2spec/envelope.hpp"
#include "sp2spec/numerics.hpp"
#include "sp2spec/operators.hpp"
#include "sp2spec/quasimorphism.hpp"
#include "sp2spec/symplectic.hpp"

namespace sp2spec {
namespace {

using ConfigEcho = std::vector<std::pair<std::string, std::string>>;

// Uniform report shape: named numeric columns, data rows, and trailing
// key=value summary lines. CSV renders it directly; JSON mirrors it
// field-for-field.
struct Report {
    struct SummaryItem {
        std::string key;
        double number = 0.0;
        std::string text;
        bool is_text = false;
    };

    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<SummaryItem> summary;
    int status = 0;

    void add_summary(const std::string& key, double value) {
        summary.push_back({key, value, {}, false});
    }
    void add_summary_text(const std::string& key, const std::string& text) {
        summary.push_back({key, 0.0, text, true});
    }
};

std::string half_text(Half h) { return format_shortest(h.twice / 2.0); }

void emit_csv(std::ostream& out, const RunConfig& config, const ConfigEcho& echo,
              const Report& report) {
    out << "# sp2spec " << kVersion << "\n";
    out << "# seed=" << config.seed << "\n";
    out << "# config: subcommand=" << config.subcommand;
    for (const auto& [key, value] : echo) out << ' ' << key << '=' << value;
    out << " format=" << (config.format == OutputFormat::csv ? "csv" : "json")
        << "\n";

    for (std::size_t i = 0; i < report.columns.size(); ++i) {
        out << (i ? "," : "") << report.columns[i];
    }
    out << "\n";
    for (const auto& row : report.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << format_g15(row[i]);
        }
        out << "\n";
    }
    for (const auto& item : report.summary) {
        out << item.key << '='
            << (item.is_text ? item.text : format_g15(item.number)) << "\n";
    }
}

void emit_json(std::ostream& out, const RunConfig& config, const ConfigEcho& echo,
               const Report& report) {
    nlohmann::ordered_json doc;
    doc["provenance"]["version"] = kVersion;
    doc["provenance"]["seed"] = config.seed;
    nlohmann::ordered_json cfg;
    cfg["subcommand"] = config.subcommand;
    for (const auto& [key, value] : echo) cfg[key] = value;
    cfg["format"] = config.format == OutputFormat::csv ? "csv" : "json";
    doc["provenance"]["config"] = cfg;
    doc["columns"] = report.columns;
    doc["rows"] = report.rows;
    nlohmann::ordered_json summary = nlohmann::ordered_json::object();
    for (const auto& item : report.summary) {
        if (item.is_text) {
            summary[item.key] = item.text;
        } else {
            summary[item.key] = item.number;
        }
    }
    doc["summary"] = summary;
    out << doc.dump(2) << "\n";
}

Report run_cpl(const RunConfig& config, ConfigEcho& echo) {
    echo.emplace_back("lmax", half_text(config.lmax));
    Report report;
    report.columns = {"ell", "p", "c"};
    const CplTable table(config.lmax);
    for (int tl = 0; tl <= config.lmax.twice; ++tl) {
        const Half ell = Half::from_twice(tl);
        for (int i = 0; i <= tl; ++i) {
            const Half p = Half::from_twice(-tl + 2 * i);
            report.rows.push_back({tl / 2.0, p.twice / 2.0, table.c(ell, p)});
        }
    }
    return report;
}

Report run_bounds_cpl(const RunConfig& config, ConfigEcho& echo) {
    echo.emplace_back("lmax", half_text(config.lmax));
    Report report;
    report.columns = {"ell", "max_ratio"};

    const int tmax = config.lmax.twice;
    std::vector<double> per_ell(static_cast<std::size_t>(tmax) + 1, 0.0);
    for (int tp = 0; tp <= tmax; ++tp) {
        CplStream stream(tp);
        while (stream.ell().twice <= tmax) {
            const Half ell = stream.ell();
            const double env = cpl_envelope(ell, Half::from_twice(tp));
            const double ratio = std::fabs(stream.value()) / env;
            auto& slot = per_ell[static_cast<std::size_t>(ell.twice)];
            slot = std::max(slot, ratio);
            stream.advance();
        }
    }

    // Fitted constant from the lower half of the range; the upper half may
    // exceed it by at most 5% (stabilization form of the envelope bound).
    const int boundary = tmax / 2;
    double c_fit = 0.0;
    double c_check = 0.0;
    for (int tl = 0; tl <= tmax; ++tl) {
        report.rows.push_back({tl / 2.0, per_ell[static_cast<std::size_t>(tl)]});
        (tl <= boundary ? c_fit : c_check) =
            std::max(tl <= boundary ? c_fit : c_check,
                     per_ell[static_cast<std::size_t>(tl)]);
    }
    const double excess =
        c_fit > 0.0 ? 100.0 * std::max(0.0, c_check / c_fit - 1.0) : 0.0;
    report.add_summary("c_fit", c_fit);
    report.add_summary("c_check", c_check);
    report.add_summary("excess_percent", excess);
    report.status = excess <= 5.0 ? 0 : 1;
    return report;
}

Report run_schatten(const RunConfig& config, ConfigEcho& echo) {
    SP2_DOMAIN_CHECK(config.kind == "S" || config.kind == "T",
                     "kind must be S or T");
    echo.emplace_back("kind", config.kind);
    echo.emplace_back("q", format_shortest(config.q));
    echo.emplace_back("theta1", format_shortest(config.theta1));
    if (config.kind == "S") {
        echo.emplace_back("theta2", format_shortest(config.theta2));
    }
    if (config.tol_given) echo.emplace_back("tol", format_shortest(config.tol));

    const SchattenResult result =
        config.kind == "T" ? schatten_T(config.q, config.theta1)
                           : schatten_S(config.q, config.theta1, config.theta2);
    const double theta2 = config.kind == "T" ? M_PI / 4.0 : config.theta2;

    Report report;
    report.columns = {"q", "theta1", "theta2", "value", "tail", "lmax"};
    report.rows.push_back({result.q, config.theta1, theta2, result.value,
                           result.tail, result.lmax.twice / 2.0});
    report.add_summary("interval_low", result.certified_value_interval[0]);
    report.add_summary("interval_high", result.certified_value_interval[1]);
    if (result.truncated) report.add_summary("truncated", 1.0);
    if (!result.warning.empty()) report.add_summary_text("warning", result.warning);

    if (config.tol_given) {
        const double width = result.certified_value_interval[1] -
                             result.certified_value_interval[0];
        SP2_DOMAIN_CHECK(width <= config.tol,
                         "unreachable tolerance: certified interval is wider "
                         "than --tol");
    }
    return report;
}

Report run_holder_fit(const RunConfig& config, ConfigEcho& echo) {
    SP2_DOMAIN_CHECK(config.kind == "S" || config.kind == "T",
                     "kind must be S or T");
    echo.emplace_back("kind", config.kind);
    echo.emplace_back("q", format_shortest(config.q));

    const bool is_s = config.kind == "S";
    const HolderFitResult fit =
        holder_fit(is_s ? NormKind::S : NormKind::T, config.q,
                   is_s ? holder_grid_s() : holder_grid_t());

    Report report;
    report.columns = {"q", "exponent", "max_ratio"};
    report.rows.push_back({config.q, fit.exponent_expected, fit.max_ratio});
    int skipped = 0;
    for (const auto& point : fit.points) skipped += point.skipped ? 1 : 0;
    if (skipped > 0) report.add_summary("skipped_points", double(skipped));
    return report;
}

Report run_kak(const RunConfig& config, ConfigEcho& echo) {
    SpMatrix g;
    if (config.random_input) {
        SP2_DOMAIN_CHECK(config.matrix.empty(),
                         "malformed matrix input: give 16 entries or --random, "
                         "not both");
        echo.emplace_back("input", "random");
        Rng rng(config.seed);
        g = random_symplectic(rng);
    } else {
        SP2_DOMAIN_CHECK(config.matrix.size() == 16,
                         "malformed matrix input: expected 16 row-major entries "
                         "or --random");
        echo.emplace_back("input", "matrix");
        for (int i = 0; i < 16; ++i) g.e[static_cast<std::size_t>(i)] = config.matrix[static_cast<std::size_t>(i)];
    }

    const KAKResult f = kak(g);
    const double residual = frobenius_distance(f.reconstruct(), g);

    Report report;
    report.columns = {"beta", "gamma"};
    std::vector<double> row{f.beta, f.gamma};
    for (int part = 0; part < 2; ++part) {
        const CMat2& u = (part == 0 ? f.k1 : f.k2).u;
        const std::string base = part == 0 ? "k1_" : "k2_";
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                const std::string cell = base + std::to_string(i) + std::to_string(j);
                report.columns.push_back(cell + "_re");
                report.columns.push_back(cell + "_im");
                row.push_back(u.at(i, j).real());
                row.push_back(u.at(i, j).imag());
            }
        }
    }
    report.columns.push_back("residual");
    row.push_back(residual);
    report.rows.push_back(std::move(row));
    return report;
}

Report run_quasi(const RunConfig& config, ConfigEcho& echo) {
    const bool defects = config.defect_sweep > 0;
    const bool etas = config.eta_sweep > 0;
    SP2_DOMAIN_CHECK(defects != etas,
                     "quasi needs exactly one of --defect-sweep or --eta-sweep");

    Report report;
    Rng rng(config.seed);
    if (defects) {
        echo.emplace_back("defect_sweep", std::to_string(config.defect_sweep));
        report.columns = {"phi_xy", "phi_x", "phi_y", "defect"};
        double max_defect = 0.0;
        for (int i = 0; i < config.defect_sweep; ++i) {
            const CoverElement x = random_cover(rng);
            const CoverElement y = random_cover(rng);
            const double phi_xy = phi(cover_mul(x, y));
            const double defect = std::fabs(phi_xy - phi(x) - phi(y));
            report.rows.push_back({phi_xy, phi(x), phi(y), defect});
            max_defect = std::max(max_defect, defect);
        }
        report.add_summary("max_defect", max_defect);
        report.status = max_defect < 0.5 * M_PI ? 0 : 1;
    } else {
        echo.emplace_back("eta_sweep", std::to_string(config.eta_sweep));
        report.columns = {"eta", "near_branch_cut"};
        double max_abs = 0.0;
        for (int i = 0; i < config.eta_sweep; ++i) {
            const SpMatrix g1 = random_symplectic(rng);
            const SpMatrix g2 = random_symplectic(rng);
            const EtaResult e = eta(g1, g2);
            report.rows.push_back({e.value, e.near_branch_cut ? 1.0 : 0.0});
            max_abs = std::max(max_abs, std::fabs(e.value));
        }
        report.add_summary("max_abs_eta", max_abs);
        report.status = max_abs < M_PI ? 0 : 1;
    }
    return report;
}

Report run_envelope(const RunConfig& config, ConfigEcho& echo) {
    echo.emplace_back("s1", format_shortest(config.s1));
    echo.emplace_back("s2", format_shortest(config.s2));
    echo.emplace_back("s", format_shortest(config.s));
    echo.emplace_back("kappa", format_shortest(config.kappa));

    const EnvelopeParams params =
        make_envelope_params(config.s1, config.s2, config.s, config.kappa);

    Report report;
    report.columns = {"beta", "gamma", "epsilon"};
    if (config.sweep) {
        echo.emplace_back("sweep_max", format_shortest(config.sweep_max));
        echo.emplace_back("sweep_steps", std::to_string(config.sweep_steps));
        SP2_DOMAIN_CHECK(config.sweep_steps > 0 && config.sweep_max > 0.0,
                         "envelope sweep grid must be positive");
        for (int i = 0; i <= config.sweep_steps; ++i) {
            const double beta = config.sweep_max * i / config.sweep_steps;
            for (int j = 0; j <= i; ++j) {
                const double gamma = config.sweep_max * j / config.sweep_steps;
                report.rows.push_back({beta, gamma, epsilon(params, beta, gamma)});
            }
        }
    } else {
        echo.emplace_back("beta", format_shortest(config.beta));
        echo.emplace_back("gamma", format_shortest(config.gamma));
        report.rows.push_back(
            {config.beta, config.gamma, epsilon(params, config.beta, config.gamma)});
    }
    if (!params.warning.empty()) report.add_summary_text("warning", params.warning);
    return report;
}

Report run_ridge(const RunConfig& config, ConfigEcho& echo) {
    echo.emplace_back("max", format_shortest(config.ridge_max));
    echo.emplace_back("step", format_shortest(config.ridge_step));
    SP2_DOMAIN_CHECK(config.ridge_max > 0.0 && config.ridge_step > 0.0,
                     "ridge grid must be positive");

    Report report;
    report.columns = {"u", "v", "ratio"};
    const int n = static_cast<int>(std::lround(config.ridge_max / config.ridge_step));
    SP2_DOMAIN_CHECK(n >= 2, "ridge grid must hold at least two steps");
    double sup_half = 0.0;
    double sup_full = 0.0;
    for (int iu = 0; iu <= n; ++iu) {
        const double u = config.ridge_step * iu;
        for (int iv = 0; iv <= n; ++iv) {
            const double v = config.ridge_step * iv;
            const double ratio = gaussian_ridge_ratio(u, v);
            report.rows.push_back({u, v, ratio});
            sup_full = std::max(sup_full, ratio);
            if (iu <= n / 2 && iv <= n / 2) sup_half = std::max(sup_half, ratio);
        }
    }
    const double excess =
        sup_half > 0.0 ? 100.0 * std::max(0.0, sup_full / sup_half - 1.0) : 0.0;
    report.add_summary("sup_half", sup_half);
    report.add_summary("sup_full", sup_full);
    report.add_summary("excess_percent", excess);
    report.status = excess <= 5.0 ? 0 : 1;
    return report;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out) {
    SP2_DOMAIN_CHECK(config.tol > 0.0, "tol must be positive");
    SP2_DOMAIN_CHECK(config.lmax.twice >= 0, "lmax must be nonnegative");

    ConfigEcho echo;
    Report report;
    if (config.subcommand == "cpl") {
        report = run_cpl(config, echo);
    } else if (config.subcommand == "bounds-cpl") {
        report = run_bounds_cpl(config, echo);
    } else if (config.subcommand == "schatten") {
        report = run_schatten(config, echo);
    } else if (config.subcommand == "holder-fit") {
        report = run_holder_fit(config, echo);
    } else if (config.subcommand == "kak") {
        report = run_kak(config, echo);
    } else if (config.subcommand == "quasi") {
        report = run_quasi(config, echo);
    } else if (config.subcommand == "envelope") {
        report = run_envelope(config, echo);
    } else if (config.subcommand == "ridge") {
        report = run_ridge(config, echo);
    } else {
        SP2_DOMAIN_CHECK(false, "unknown subcommand");
    }

    if (config.format == OutputFormat::csv) {
        emit_csv(out, config, echo, report);
    } else {
        emit_json(out, config, echo, report);
    }
    return report.status;
}

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
    RunConfig config;
    int threads = 0;
    double lmax_cpl = 10.0;
    double lmax_bounds = 200.0;

    CLI::App app{"sp2spec: symplectic decay-estimate verification toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    const std::map<std::string, OutputFormat> formats{
        {"csv", OutputFormat::csv}, {"json", OutputFormat::json}};
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", config.seed, "RNG seed for randomized inputs");
        sub->add_option("--threads", threads, "worker thread override")
            ->check(CLI::PositiveNumber);
        sub->add_option("--output", config.output,
                        "write the report to this file instead of stdout");
        sub->add_option("--format", config.format, "report format")
            ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    };

    CLI::App* cpl = app.add_subcommand("cpl", "emit the c_p^l coefficient table");
    cpl->add_option("--lmax", lmax_cpl, "largest l (half-integers allowed)");
    add_common(cpl);

    CLI::App* bounds = app.add_subcommand(
        "bounds-cpl", "check the decay envelope of the c table");
    bounds->add_option("--lmax", lmax_bounds,
                       "largest l; the fit uses the lower half");
    add_common(bounds);

    CLI::App* schatten = app.add_subcommand(
        "schatten", "certified Schatten norm of one operator difference");
    schatten->add_option("--kind", config.kind, "S or T");
    schatten->add_option("--q,--p", config.q, "Schatten exponent (inf allowed)");
    schatten->add_option("--theta1,--theta", config.theta1, "first angle");
    schatten->add_option("--theta2", config.theta2,
                         "second angle (S only; T compares against pi/4)");
    auto* tol_opt = schatten->add_option(
        "--tol", config.tol, "largest acceptable certified interval width");
    tol_opt->check(CLI::PositiveNumber);
    add_common(schatten);

    CLI::App* holder = app.add_subcommand(
        "holder-fit", "fit the Holder constant over the standard angle grid");
    holder->add_option("--kind", config.kind, "S or T");
    holder->add_option("--q,--p", config.q, "Schatten exponent");
    add_common(holder);

    CLI::App* kak_cmd =
        app.add_subcommand("kak", "KAK-decompose one symplectic matrix");
    kak_cmd->add_option("matrix", config.matrix,
                        "16 row-major entries of the matrix")
        ->expected(16);
    kak_cmd->add_flag("--random", config.random_input,
                      "decompose a random symplectic matrix instead");
    add_common(kak_cmd);

    CLI::App* quasi = app.add_subcommand(
        "quasi", "randomized sweeps over the universal cover");
    quasi->add_option("--defect-sweep", config.defect_sweep,
                      "sample this many quasi-morphism defects");
    quasi->add_option("--eta-sweep", config.eta_sweep,
                      "sample this many cocycle values");
    add_common(quasi);

    CLI::App* envelope = app.add_subcommand(
        "envelope", "evaluate the decay envelope epsilon(beta, gamma)");
    envelope->add_option("--s1", config.s1, "first decay rate");
    envelope->add_option("--s2", config.s2, "second decay rate");
    envelope->add_option("--s", config.s, "slack (must stay below s_minus)");
    envelope->add_option("--kappa", config.kappa, "cover correction rate");
    envelope->add_option("--beta", config.beta, "chamber coordinate beta");
    envelope->add_option("--gamma", config.gamma, "chamber coordinate gamma");
    envelope->add_flag("--sweep", config.sweep,
                       "emit a triangular (beta, gamma) grid instead");
    envelope->add_option("--sweep-max", config.sweep_max, "largest beta");
    envelope->add_option("--sweep-steps", config.sweep_steps, "grid steps");
    add_common(envelope);

    CLI::App* ridge = app.add_subcommand(
        "ridge", "Gaussian-ridge ratio sweep with stabilization check");
    ridge->add_option("--max", config.ridge_max, "largest u and v");
    ridge->add_option("--step", config.ridge_step, "grid step");
    add_common(ridge);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    }

    CLI::App* selected = app.get_subcommands().front();
    config.subcommand = selected->get_name();
    config.tol_given = schatten->count("--tol") > 0;
    if (threads > 0) set_thread_override(threads);

    const double lmax_in =
        config.subcommand == "bounds-cpl" ? lmax_bounds : lmax_cpl;
    const double twice = 2.0 * lmax_in;
    if (!(lmax_in >= 0.0) || std::fabs(twice - std::round(twice)) > 1e-9 ||
        twice > 1e9) {
        err << "input error: lmax must be a nonnegative half-integer\n";
        return 2;
    }
    config.lmax = Half::from_twice(static_cast<int>(std::lround(twice)));

    try {
        if (!config.output.empty()) {
            std::ofstream file(config.output);
            if (!file) {
                err << "input error: cannot open output file '" << config.output
                    << "'\n";
                return 2;
            }
            return run(config, file);
        }
        return run(config, out);
    } catch (const std::domain_error& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace sp2spec
