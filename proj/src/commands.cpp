#include "zeno/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zeno/errors.hpp"

namespace zeno::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string fmt_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Evaluates fn(i) for i in [0, count) across threads; results land by index,
// so the assembled output is deterministic.
template <typename Fn>
void parallel_for_index(long count, Fn&& fn) {
    const long workers =
        std::min<long>(count, std::max(1u, std::thread::hardware_concurrency()));
    if (workers <= 1) {
        for (long i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (long w = 0; w < workers; ++w) {
        pool.emplace_back([count, workers, w, &fn] {
            for (long i = w; i < count; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

struct SweepRow {
    long n = 0;
    double p_exact = 0.0;
    std::optional<double> p_first_order;
    std::optional<double> p_dominant;
    double p_ideal = 0.0;
};

std::vector<SweepRow> compute_sweep(const RunConfig& cfg) {
    const MirrorModel& mirror = *cfg.mirror;
    const bool diagonal_like = !std::holds_alternative<SpinFlipMirror>(mirror);
    const double t_up2 = transmit_up_mod2(mirror);
    const long count = cfg.n_max - cfg.n_min + 1;
    std::vector<SweepRow> rows(static_cast<std::size_t>(count));
    parallel_for_index(count, [&](long i) {
        const long n = cfg.n_min + i;
        SweepRow& row = rows[static_cast<std::size_t>(i)];
        row.n = n;
        const ZenoRun run{cfg.theta, n, mirror};
        row.p_exact = survival_exact(run);
        if (diagonal_like && n >= 2) {
            row.p_first_order = survival_first_order(run);
        }
        if (t_up2 > 0.0) {
            row.p_dominant = survival_dominant(cfg.theta, t_up2, n);
        }
        row.p_ideal = survival_ideal(cfg.theta, n);
    });
    return rows;
}

std::string render_sweep(const RunConfig& cfg) {
    const auto rows = compute_sweep(cfg);
    if (cfg.format == OutputFormat::Csv) {
        std::ostringstream out;
        out << "n,p_exact,p_first_order,p_dominant,p_ideal\n";
        for (const auto& row : rows) {
            out << row.n << ',' << fmt_real(row.p_exact) << ','
                << (row.p_first_order ? fmt_real(*row.p_first_order) : "") << ','
                << (row.p_dominant ? fmt_real(*row.p_dominant) : "") << ','
                << fmt_real(row.p_ideal) << '\n';
        }
        return out.str();
    }
    Json doc;
    doc["command"] = "sweep";
    doc["theta"] = cfg.theta;
    doc["rows"] = Json::array();
    for (const auto& row : rows) {
        Json r;
        r["n"] = row.n;
        r["p_exact"] = row.p_exact;
        r["p_first_order"] = row.p_first_order ? Json(*row.p_first_order) : Json(nullptr);
        r["p_dominant"] = row.p_dominant ? Json(*row.p_dominant) : Json(nullptr);
        r["p_ideal"] = row.p_ideal;
        doc["rows"].push_back(std::move(r));
    }
    return doc.dump(2) + "\n";
}

struct Table1Row {
    double t_up2 = 0.0;
    long n_opt_estimate = 0;
    long n_opt_exact = 0;
    double p_estimate = 0.0;
    double p_exact = 0.0;
};

std::vector<Table1Row> compute_table1(double theta) {
    std::vector<Table1Row> rows;
    for (const double t_up2 : {0.99, 0.999, 0.9999}) {
        const MirrorModel mirror{
            DiagonalMirror::conservative(std::sqrt(t_up2), Complex{0.0, 0.0})};
        const auto search = n_opt_search(
            [&](long n) { return survival_exact_diagonal(ZenoRun{theta, n, mirror}); },
            default_search_ceiling(theta, t_up2));
        rows.push_back({t_up2, n_opt_estimate(theta, t_up2), search.n_opt,
                        p_opt_estimate(theta, t_up2), search.p_at_opt});
    }
    return rows;
}

std::string render_table1(const RunConfig& cfg) {
    const auto rows = compute_table1(cfg.theta);
    if (cfg.format == OutputFormat::Csv) {
        std::ostringstream out;
        out << "t_up2,n_opt_estimate,n_opt_exact,p_estimate,p_exact\n";
        for (const auto& row : rows) {
            out << fmt_real(row.t_up2) << ',' << row.n_opt_estimate << ',' << row.n_opt_exact
                << ',' << fmt_real(row.p_estimate) << ',' << fmt_real(row.p_exact) << '\n';
        }
        return out.str();
    }
    Json doc;
    doc["command"] = "table1";
    doc["theta"] = cfg.theta;
    doc["rows"] = Json::array();
    for (const auto& row : rows) {
        Json r;
        r["t_up2"] = row.t_up2;
        r["n_opt_estimate"] = row.n_opt_estimate;
        r["n_opt_exact"] = row.n_opt_exact;
        r["p_estimate"] = row.p_estimate;
        r["p_exact"] = row.p_exact;
        doc["rows"].push_back(std::move(r));
    }
    return doc.dump(2) + "\n";
}

const char* mirror_kind(const MirrorModel& m) {
    if (std::holds_alternative<IdealMirror>(m)) return "ideal";
    if (std::holds_alternative<DiagonalMirror>(m)) return "diagonal";
    return "spinflip";
}

std::string render_opt(const RunConfig& cfg) {
    const MirrorModel& mirror = *cfg.mirror;
    const double t_up2 = transmit_up_mod2(mirror);
    const bool lossless = t_up2 >= 1.0;

    const long ceiling = cfg.search_ceiling
                             ? *cfg.search_ceiling
                             : default_search_ceiling(cfg.theta, t_up2);
    const auto survival = [&](long n) { return survival_exact(ZenoRun{cfg.theta, n, mirror}); };

    Json doc;
    doc["command"] = "opt";
    doc["theta"] = cfg.theta;
    doc["beyond_standard_regime"] =
        ZenoRun{cfg.theta, 1, mirror}.beyond_standard_regime();
    doc["mirror"] = mirror_kind(mirror);
    doc["t_up_mod2"] = t_up2;
    doc["no_finite_optimum"] = lossless;
    if (lossless) {
        const auto search = n_opt_search(survival, ceiling);
        doc["n_opt_exact"] = search.n_opt;
        doc["p_at_exact"] = search.p_at_opt;
        doc["search_ceiling"] = search.search_ceiling;
        doc["ceiling_hit"] = search.ceiling_hit;
        doc["n_opt_estimate"] = nullptr;
        doc["p_estimate"] = nullptr;
        doc["note"] = "lossless transmission: survival increases with N without bound (ideal QZE)";
        return doc.dump(2) + "\n";
    }
    try {
        const OptimumReport report = optimum_report(cfg.theta, t_up2, survival, ceiling);
        doc["n_opt_exact"] = report.n_opt_exact;
        doc["p_at_exact"] = report.p_at_exact;
        doc["search_ceiling"] = report.search_ceiling;
        doc["ceiling_hit"] = report.ceiling_hit;
        doc["n_opt_estimate"] = report.n_opt_estimate;
        doc["p_estimate"] = report.p_estimate;
    } catch (const OutOfRegimeError&) {
        // the asymptotic probability estimate does not apply this far from
        // the small-loss regime; the exact search still does
        const auto search = n_opt_search(survival, ceiling);
        doc["n_opt_exact"] = search.n_opt;
        doc["p_at_exact"] = search.p_at_opt;
        doc["search_ceiling"] = search.search_ceiling;
        doc["ceiling_hit"] = search.ceiling_hit;
        doc["n_opt_estimate"] = n_opt_estimate(cfg.theta, t_up2);
        doc["p_estimate"] = nullptr;
        doc["estimate_out_of_regime"] = true;
    }
    return doc.dump(2) + "\n";
}

std::string render_general(const RunConfig& cfg) {
    const LossModel& model = *cfg.loss_model;
    Json doc;
    doc["command"] = "general";
    doc["model"] = {{"a", model.a},         {"b", model.b},
                    {"c", model.c},         {"tau_z", model.tau_z},
                    {"alpha1", model.alpha1}, {"alpha2", model.alpha2},
                    {"t_total", model.t_total}, {"t1", model.t1()},
                    {"t2", model.t2()}};
    if (model.a >= 1.0) {
        doc["infinite_frequency"] = true;
        doc["n_opt_analytic"] = nullptr;
        doc["p_opt_analytic"] = general_p_opt(model);
        doc["stationarity_residual"] = nullptr;
        doc["n_opt_oracle"] = nullptr;
        doc["p_opt_oracle"] = nullptr;
        doc["note"] = "a = 1: optimal frequency is infinite; quoted probability is the "
                      "infinitely-frequent limit exp(-|b| t1)";
    } else {
        const auto opt = general_n_opt(model);
        const auto oracle = maximize_log_survival(model);
        doc["infinite_frequency"] = false;
        doc["n_opt_analytic"] = opt.n_opt;
        doc["p_opt_analytic"] = general_p_opt(model);
        doc["stationarity_residual"] = opt.stationarity_residual;
        doc["n_opt_oracle"] = oracle.n;
        doc["p_opt_oracle"] = std::exp(oracle.log_value);
    }
    return doc.dump(2) + "\n";
}

struct FlagValues {
    std::string config, theta, t_up2, t_down2, phase_up, phase_down, n_min, n_max, out, format;
};

void attach_options(CLI::App* sub, FlagValues& flags) {
    sub->add_option("--config", flags.config, "flat key = value config file");
    sub->add_option("--theta", flags.theta, "total precession half-angle in radians");
    sub->add_option("--t-up2", flags.t_up2, "|T_up|^2 of a diagonal mirror");
    sub->add_option("--t-down2", flags.t_down2, "|T_down|^2 of a diagonal mirror");
    sub->add_option("--phase-up", flags.phase_up, "phase of T_up in radians");
    sub->add_option("--phase-down", flags.phase_down, "phase of T_down in radians");
    sub->add_option("--n-min", flags.n_min, "first stage count of the sweep");
    sub->add_option("--n-max", flags.n_max, "last stage count of the sweep / search ceiling");
    sub->add_option("--out", flags.out, "output path (stdout when omitted)");
    sub->add_option("--format", flags.format, "csv or json");
}

void merge_flag(KeyValues& kv, const CLI::App* sub, const char* flag, const std::string& key,
                const std::string& value) {
    if (sub->count(flag) > 0) kv[key] = value;
}

} // namespace

std::string render(const RunConfig& cfg) {
    switch (cfg.command) {
        case Command::Sweep: return render_sweep(cfg);
        case Command::Opt: return render_opt(cfg);
        case Command::Table1: return render_table1(cfg);
        case Command::General: return render_general(cfg);
    }
    throw std::logic_error("render: unknown command");
}

void write_output(const RunConfig& cfg, const std::string& text, std::ostream& fallback) {
    if (cfg.output_path.empty()) {
        fallback << text;
        if (!fallback) throw IoError("failed to write output stream");
        return;
    }
    std::ofstream file(cfg.output_path, std::ios::binary);
    if (!file) {
        throw IoError("cannot open output file '" + cfg.output_path + "'");
    }
    file << text;
    file.flush();
    if (!file) {
        throw IoError("failed while writing '" + cfg.output_path + "'");
    }
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"quantum Zeno survival probabilities with lossy measurement stages"};
    app.require_subcommand(1);

    struct SubEntry {
        Command command;
        CLI::App* sub;
        FlagValues flags;
    };
    std::vector<SubEntry> subs;
    subs.push_back({Command::Sweep,
                    app.add_subcommand("sweep", "survival probability for a range of N"),
                    {}});
    subs.push_back({Command::Opt,
                    app.add_subcommand("opt", "optimal stage count report"),
                    {}});
    subs.push_back({Command::Table1,
                    app.add_subcommand("table1", "estimates vs exact search for reference losses"),
                    {}});
    subs.push_back({Command::General,
                    app.add_subcommand("general", "general lossy-framework optimum"),
                    {}});
    for (auto& entry : subs) attach_options(entry.sub, entry.flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 1;
    }

    try {
        const auto it = std::find_if(subs.begin(), subs.end(),
                                     [](const SubEntry& s) { return s.sub->parsed(); });
        const SubEntry& entry = *it;
        KeyValues kv;
        if (entry.sub->count("--config") > 0) {
            kv = parse_config_file(entry.flags.config);
        }
        const FlagValues& f = entry.flags;
        merge_flag(kv, entry.sub, "--theta", "theta", f.theta);
        merge_flag(kv, entry.sub, "--t-up2", "t_up2", f.t_up2);
        merge_flag(kv, entry.sub, "--t-down2", "t_down2", f.t_down2);
        merge_flag(kv, entry.sub, "--phase-up", "t_up_phase", f.phase_up);
        merge_flag(kv, entry.sub, "--phase-down", "t_down_phase", f.phase_down);
        merge_flag(kv, entry.sub, "--n-min", "n_min", f.n_min);
        merge_flag(kv, entry.sub, "--n-max", "n_max", f.n_max);
        merge_flag(kv, entry.sub, "--out", "out", f.out);
        merge_flag(kv, entry.sub, "--format", "format", f.format);

        const RunConfig cfg = build_run_config(entry.command, kv);
        if (cfg.command != Command::General &&
            ZenoRun{cfg.theta, 1, cfg.mirror.value_or(MirrorModel{IdealMirror{}})}
                .beyond_standard_regime()) {
            err << "warning: theta = " << cfg.theta << " is beyond the standard regime [0, pi/2]\n";
        }
        write_output(cfg, render(cfg), out);
        return 0;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << '\n';
        return 2;
    } catch (const NumericalError& e) {
        err << "numerical error: " << e.what() << '\n';
        return 3;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::domain_error& e) {
        err << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 3;
    }
}

} // namespace zeno::cli
