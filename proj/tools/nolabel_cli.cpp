// nolabel: evaluate, sweep and validate two-identical-particle entanglement.
//
// Exit codes: 0 success, 1 validation failure, 2 config error,
// 3 degenerate math, 4 I/O error.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <unistd.h>

#include <CLI11.hpp>

#include "nolabel/nolabel.hpp"

namespace {

namespace sc = nolabel::scenario;

enum ExitCode : int { ok = 0, validation_failed = 1, config_error = 2, degenerate = 3, io_error = 4 };

struct ScenarioFlags {
    std::optional<std::string> config_path;
    std::optional<std::string> stats;
    std::optional<std::string> a2;
    std::optional<std::string> theta;
    std::optional<std::string> chi;
    std::optional<std::string> measure;
    std::optional<std::string> out;
    std::optional<std::string> format;
    std::optional<std::string> threads;
    bool fig3c = false;
};

void add_scenario_flags(CLI::App &cmd, ScenarioFlags &f, bool sweep) {
    cmd.add_option("--config", f.config_path, "key = value config file; flags override it");
    cmd.add_option("--stats", f.stats, "boson | fermion | both | distinguishable");
    cmd.add_option("--a2", f.a2, "a^2, scalar or start:stop:steps");
    cmd.add_option("--theta", f.theta, "relative phase in radians (suffix deg for degrees)");
    cmd.add_option("--chi", f.chi, "overlap |<L|B>|^2");
    cmd.add_option("--measure", f.measure, "L | R | LR | LL | nonlocal | full");
    cmd.add_option("--out", f.out, "output path (default stdout)");
    cmd.add_option("--format", f.format, "csv | json");
    if (sweep) {
        cmd.add_option("--threads", f.threads, "worker threads (0 = all cores)");
        cmd.add_flag("--fig3c", f.fig3c, "emit boson - fermion entropy difference");
    }
}

sc::ScenarioConfig build_config(const ScenarioFlags &f) {
    sc::ScenarioConfig config;
    if (f.config_path) {
        sc::apply_settings(config, sc::parse_config_text(sc::read_file(*f.config_path)));
    }
    auto set = [&](const char *key, const std::optional<std::string> &v) {
        if (v) sc::apply_setting(config, key, *v);
    };
    set("stats", f.stats);
    set("a2", f.a2);
    set("theta", f.theta);
    set("chi", f.chi);
    set("measure", f.measure);
    set("out", f.out);
    set("format", f.format);
    set("threads", f.threads);
    if (f.fig3c) config.fig3c = true;
    config.validate();
    return config;
}

void emit(const sc::ScenarioConfig &config, const std::string &text) {
    if (config.output_path.empty() || config.output_path == "-") {
        std::cout << text;
    } else {
        sc::write_file(config.output_path, text);
    }
}

bool use_color() { return std::getenv("NO_COLOR") == nullptr && isatty(STDOUT_FILENO); }

std::string verdict(bool pass) {
    if (!use_color()) return pass ? "PASS" : "FAIL";
    return pass ? "\033[32mPASS\033[0m" : "\033[31mFAIL\033[0m";
}

int cmd_eval(const ScenarioFlags &flags) {
    auto config = build_config(flags);
    if (config.has_grid()) {
        throw sc::ConfigError("eval takes scalar parameters; use sweep for grids");
    }
    if (config.statistics == sc::StatisticsChoice::both) {
        throw sc::ConfigError("eval needs a single statistics");
    }
    emit(config, sc::render(sc::run_sweep(config), config.format));
    return ok;
}

int cmd_sweep(const ScenarioFlags &flags) {
    auto config = build_config(flags);
    if (!config.has_grid()) {
        throw sc::ConfigError("sweep needs at least one grid parameter (start:stop:steps)");
    }
    emit(config, sc::render_sweep(config));
    return ok;
}

int cmd_extract(double r2, const std::string &stats, const std::string &input, const std::optional<std::string> &out) {
    sc::ExtractConfig config;
    config.r_squared = r2;
    const auto choice = sc::parse_statistics(stats);
    if (choice != sc::StatisticsChoice::boson && choice != sc::StatisticsChoice::fermion) {
        throw sc::ConfigError("extract needs --stats boson or fermion");
    }
    config.statistics = choice == sc::StatisticsChoice::boson ? nolabel::Statistics::boson
                                                              : nolabel::Statistics::fermion;
    config.input = input;
    const std::string text = sc::run_extract(config).dump(2) + "\n";
    if (out && *out != "-") {
        sc::write_file(*out, text);
    } else {
        std::cout << text;
    }
    return ok;
}

int cmd_oracle_check(std::uint64_t seed, long trials, bool corrupt) {
    const auto result = sc::run_oracle_check({seed, trials, corrupt});
    for (const auto &d : result.identities) {
        char line[160];
        std::snprintf(line, sizeof line, "%-22s max_deviation=%.3e  ", d.name.c_str(), d.max_deviation);
        std::cout << line << verdict(d.max_deviation < sc::oracle_tolerance) << "\n";
    }
    if (!result.passed()) {
        for (const auto &d : result.identities) {
            if (d.max_deviation >= sc::oracle_tolerance) {
                std::cout << "worst case for " << d.name << ":\n" << d.worst_case.dump(2) << "\n";
            }
        }
        return validation_failed;
    }
    return ok;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Entanglement of two identical particles without particle labels"};
    app.require_subcommand(1);

    ScenarioFlags eval_flags;
    auto *eval = app.add_subcommand("eval", "evaluate one parameter point");
    add_scenario_flags(*eval, eval_flags, false);

    ScenarioFlags sweep_flags;
    auto *sweep = app.add_subcommand("sweep", "evaluate a parameter grid");
    add_scenario_flags(*sweep, sweep_flags, true);

    double r2 = 0.5;
    std::string extract_stats = "boson";
    std::string extract_input = "L:up,L:down";
    std::optional<std::string> extract_out;
    auto *extract = app.add_subcommand("extract", "split a same-site pair into modes C and D");
    extract->add_option("--r2", r2, "splitter reflectivity |r|^2")->required();
    extract->add_option("--stats", extract_stats, "boson | fermion");
    extract->add_option("--input", extract_input, "same-site input 'L:spin,L:spin'");
    extract->add_option("--out", extract_out, "output path (default stdout)");

    std::uint64_t seed = 42;
    long trials = 200;
    bool corrupt = false;
    auto *oracle = app.add_subcommand("oracle-check", "randomized check against the labeled oracle");
    oracle->add_option("--seed", seed, "random seed");
    oracle->add_option("--trials", trials, "random states per statistics");
    oracle->add_flag("--corrupt-eta", corrupt)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return config_error;
    }

    try {
        if (*eval) return cmd_eval(eval_flags);
        if (*sweep) return cmd_sweep(sweep_flags);
        if (*extract) return cmd_extract(r2, extract_stats, extract_input, extract_out);
        if (*oracle) return cmd_oracle_check(seed, trials, corrupt);
    } catch (const sc::ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return config_error;
    } catch (const sc::IoError &e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return io_error;
    } catch (const nolabel::DomainError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return config_error;
    } catch (const nolabel::BasisError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return config_error;
    } catch (const nolabel::Error &e) {
        std::cerr << "degenerate: " << e.what() << "\n";
        return degenerate;
    }
    return config_error;
}
