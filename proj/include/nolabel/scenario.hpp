#pragma once

/**
 * @file
 * Scenario configuration and the evaluations behind the command-line tool:
 * single points, parameter sweeps over the overlap family, the splitter
 * extraction report and the randomized oracle check.
 *
 * Config files are flat `key = value` lines; `[section]` headers prefix the
 * keys that follow with `section.`. Parameters take a scalar or a grid
 * `start:stop:steps`; angles accept an optional `deg` suffix on each number.
 */

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "entanglement.hpp"
#include "oracle.hpp"
#include "random.hpp"

namespace nolabel::scenario {

class ConfigError : public Error {
  public:
    using Error::Error;
};

class IoError : public Error {
  public:
    using Error::Error;
};

enum class StatisticsChoice { boson, fermion, both, distinguishable };
enum class Measurement { L, R, LR, LL, nonlocal, full };
enum class OutputFormat { csv, json };

inline StatisticsChoice parse_statistics(std::string_view s) {
    if (s == "boson" || s == "bosons") return StatisticsChoice::boson;
    if (s == "fermion" || s == "fermions") return StatisticsChoice::fermion;
    if (s == "both") return StatisticsChoice::both;
    if (s == "distinguishable" || s == "distinguishable-reference") return StatisticsChoice::distinguishable;
    throw ConfigError("unknown statistics '" + std::string(s) + "'");
}

inline Measurement parse_measurement(std::string_view s) {
    if (s == "L") return Measurement::L;
    if (s == "R") return Measurement::R;
    if (s == "LR") return Measurement::LR;
    if (s == "LL") return Measurement::LL;
    if (s == "nonlocal") return Measurement::nonlocal;
    if (s == "full") return Measurement::full;
    throw ConfigError("unknown measurement '" + std::string(s) + "'");
}

inline const char *to_string(Measurement m) {
    switch (m) {
    case Measurement::L: return "L";
    case Measurement::R: return "R";
    case Measurement::LR: return "LR";
    case Measurement::LL: return "LL";
    case Measurement::nonlocal: return "nonlocal";
    case Measurement::full: return "full";
    }
    return "?";
}

inline OutputFormat parse_format(std::string_view s) {
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    throw ConfigError("unknown output format '" + std::string(s) + "'");
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

/// A real number; with `angle`, a trailing `deg` converts degrees to radians.
inline double parse_number(std::string_view text, bool angle) {
    text = trim(text);
    bool degrees = false;
    if (angle && text.size() > 3 && text.substr(text.size() - 3) == "deg") {
        degrees = true;
        text = trim(text.substr(0, text.size() - 3));
    }
    double value = 0.0;
    const auto *end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || text.empty() || !std::isfinite(value)) {
        throw ConfigError("not a number: '" + std::string(text) + "'");
    }
    return degrees ? value * std::numbers::pi / 180.0 : value;
}

/// One parameter: a single value or an inclusive linear grid.
struct Axis {
    std::vector<double> values{0.0};
    bool grid = false;

    static Axis scalar(double v) { return {{v}, false}; }

    static Axis linspace(double start, double stop, int steps) {
        if (steps < 2) {
            throw ConfigError("grid needs at least 2 steps");
        }
        if (!(start <= stop)) {
            throw ConfigError("grid needs start <= stop");
        }
        Axis axis;
        axis.grid = true;
        axis.values.resize(static_cast<std::size_t>(steps));
        for (int i = 0; i < steps; ++i) {
            axis.values[static_cast<std::size_t>(i)] =
                i == steps - 1 ? stop : start + (stop - start) * static_cast<double>(i) / (steps - 1);
        }
        return axis;
    }

    static Axis parse(std::string_view text, bool angle) {
        text = trim(text);
        const auto first = text.find(':');
        if (first == std::string_view::npos) {
            return scalar(parse_number(text, angle));
        }
        const auto second = text.find(':', first + 1);
        if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos) {
            throw ConfigError("grid must be start:stop:steps, got '" + std::string(text) + "'");
        }
        const double start = parse_number(text.substr(0, first), angle);
        const double stop = parse_number(text.substr(first + 1, second - first - 1), angle);
        const double steps = parse_number(text.substr(second + 1), false);
        if (steps != std::floor(steps) || steps > 1e7) {
            throw ConfigError("grid steps must be an integer");
        }
        return linspace(start, stop, static_cast<int>(steps));
    }
};

struct ScenarioConfig {
    StatisticsChoice statistics = StatisticsChoice::boson;
    Axis a_squared = Axis::scalar(1.0);
    Axis theta = Axis::scalar(0.0);
    Axis chi = Axis::scalar(0.0);
    Measurement measurement = Measurement::L;
    std::string output_path;
    OutputFormat format = OutputFormat::csv;
    std::uint64_t seed = 42;
    long trials = 200;
    bool fig3c = false;
    /// 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;

    [[nodiscard]] bool has_grid() const { return a_squared.grid || theta.grid || chi.grid; }

    void validate() const {
        for (const double v : a_squared.values) {
            if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("a2 must lie in [0, 1]");
        }
        for (const double v : chi.values) {
            if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("chi must lie in [0, 1]");
        }
        if (trials < 1) {
            throw ConfigError("trials must be >= 1");
        }
    }
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

inline KeyValues parse_config_text(std::string_view text) {
    KeyValues out;
    std::string section;
    std::size_t line_no = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto c = line.find_first_of("#;"); c != std::string_view::npos) {
            line = line.substr(0, c);
        }
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("line " + std::to_string(line_no) + ": unterminated section header");
            }
            section = std::string(trim(line.substr(1, line.size() - 2)));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        }
        std::string key(trim(line.substr(0, eq)));
        if (key.empty()) {
            throw ConfigError("line " + std::to_string(line_no) + ": empty key");
        }
        if (!section.empty()) key = section + "." + key;
        out.emplace_back(std::move(key), std::string(trim(line.substr(eq + 1))));
    }
    return out;
}

inline bool parse_bool(std::string_view v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("not a boolean: '" + std::string(v) + "'");
}

inline std::uint64_t parse_unsigned(std::string_view v) {
    v = trim(v);
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
    if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
        throw ConfigError("not a non-negative integer: '" + std::string(v) + "'");
    }
    return value;
}

/// Applies one `key = value` setting. Unknown keys are an error.
inline void apply_setting(ScenarioConfig &config, std::string_view key, std::string_view value) {
    if (key == "stats" || key == "statistics") {
        config.statistics = parse_statistics(value);
    } else if (key == "a2" || key == "a_squared") {
        config.a_squared = Axis::parse(value, false);
    } else if (key == "theta") {
        config.theta = Axis::parse(value, true);
    } else if (key == "chi") {
        config.chi = Axis::parse(value, false);
    } else if (key == "measure" || key == "measurement") {
        config.measurement = parse_measurement(value);
    } else if (key == "out" || key == "output.path") {
        config.output_path = std::string(value);
    } else if (key == "format" || key == "output.format") {
        config.format = parse_format(value);
    } else if (key == "seed") {
        config.seed = parse_unsigned(value);
    } else if (key == "trials") {
        config.trials = static_cast<long>(parse_unsigned(value));
    } else if (key == "fig3c") {
        config.fig3c = parse_bool(value);
    } else if (key == "threads") {
        config.threads = static_cast<unsigned>(parse_unsigned(value));
    } else {
        throw ConfigError("unknown config key '" + std::string(key) + "'");
    }
}

inline void apply_settings(ScenarioConfig &config, const KeyValues &settings) {
    for (const auto &[k, v] : settings) {
        apply_setting(config, k, v);
    }
}

inline std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write '" + path + "'");
    }
    out << content;
    out.flush();
    if (!out) {
        throw IoError("write to '" + path + "' failed");
    }
}

struct SweepRecord {
    double a_squared = 0.0;
    double theta = 0.0;
    double chi = 0.0;
    int eta = 0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double entropy_bits = 0.0;
    double entropy_ni_bits = 0.0;
};

struct DifferenceRecord {
    double a_squared = 0.0;
    double theta = 0.0;
    double chi = 0.0;
    double entropy_boson_bits = 0.0;
    double entropy_fermion_bits = 0.0;
    double difference_bits = 0.0;
};

inline EntropyResult measured_entropy(const BellLikeParams &p, Measurement m) {
    switch (m) {
    case Measurement::L:
        (void)closed_form_lambda(p); // DegenerateError at the zero state
        return entanglement_L(p);
    case Measurement::R: return entanglement_R(p);
    case Measurement::LR: return entanglement_LR(p);
    case Measurement::LL: return entanglement_LL(p);
    case Measurement::nonlocal: return entanglement_mi(p);
    case Measurement::full: return entanglement_full(p);
    }
    throw ConfigError("unknown measurement");
}

/**
 * One grid point. `statistics` empty means the distinguishable reference,
 * whose reduced spectrum is (a^2, b^2) for every overlap and measurement.
 * lambda1 >= lambda2 are the two largest eigenvalues.
 */
inline SweepRecord evaluate_point(std::optional<Statistics> statistics, double a_squared, double theta, double chi,
                                  Measurement measurement) {
    SweepRecord r;
    r.a_squared = a_squared;
    r.theta = theta;
    r.chi = chi;
    const double a = std::sqrt(a_squared);
    r.entropy_ni_bits = entanglement_ni(a);
    if (!statistics) {
        (void)ModeOverlap{chi}; // domain check
        r.eta = 0;
        r.lambda1 = std::max(a_squared, 1.0 - a_squared);
        r.lambda2 = std::min(a_squared, 1.0 - a_squared);
        r.entropy_bits = r.entropy_ni_bits;
        return r;
    }
    const auto p = BellLikeParams::from_a_squared(a_squared, theta, chi, *statistics);
    const auto result = measured_entropy(p, measurement);
    r.eta = eta(*statistics);
    r.lambda1 = result.eigenvalues.at(0);
    r.lambda2 = result.eigenvalues.size() > 1 ? result.eigenvalues[1] : 0.0;
    r.entropy_bits = result.entropy;
    return r;
}

inline std::vector<std::optional<Statistics>> statistics_axis(StatisticsChoice c) {
    switch (c) {
    case StatisticsChoice::boson: return {Statistics::boson};
    case StatisticsChoice::fermion: return {Statistics::fermion};
    case StatisticsChoice::both: return {Statistics::boson, Statistics::fermion};
    case StatisticsChoice::distinguishable: return {std::nullopt};
    }
    return {};
}

/// Runs fn(i) for i in [0, n) on up to `threads` workers. If any call throws,
/// the exception of the lowest failing index is rethrown.
template <class Fn> void parallel_for(std::size_t n, unsigned threads, Fn &&fn) {
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
    std::vector<std::exception_ptr> errors(n);
    auto worker = [&](unsigned w) {
        for (std::size_t i = w; i < n; i += threads) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (threads <= 1) {
        worker(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back(worker, w);
        }
    }
    for (const auto &e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

/// Grid points in row-major order: statistics, a2, theta, chi (chi fastest).
inline std::vector<SweepRecord> run_sweep(const ScenarioConfig &config) {
    config.validate();
    const auto stats = statistics_axis(config.statistics);
    const auto &a2 = config.a_squared.values;
    const auto &th = config.theta.values;
    const auto &ch = config.chi.values;
    const std::size_t n = stats.size() * a2.size() * th.size() * ch.size();
    std::vector<SweepRecord> records(n);
    parallel_for(n, config.threads, [&](std::size_t idx) {
        std::size_t rest = idx;
        const std::size_t k = rest % ch.size();
        rest /= ch.size();
        const std::size_t j = rest % th.size();
        rest /= th.size();
        const std::size_t i = rest % a2.size();
        const std::size_t s = rest / a2.size();
        records[idx] = evaluate_point(stats[s], a2[i], th[j], ch[k], config.measurement);
    });
    return records;
}

/// Boson minus fermion entropy on the a2 x theta x chi grid.
inline std::vector<DifferenceRecord> run_difference_sweep(const ScenarioConfig &config) {
    ScenarioConfig bosons = config;
    bosons.statistics = StatisticsChoice::both;
    const auto both = run_sweep(bosons);
    const std::size_t half = both.size() / 2;
    std::vector<DifferenceRecord> out(half);
    for (std::size_t i = 0; i < half; ++i) {
        const auto &b = both[i];
        const auto &f = both[half + i];
        out[i] = {b.a_squared, b.theta, b.chi, b.entropy_bits, f.entropy_bits, b.entropy_bits - f.entropy_bits};
    }
    return out;
}

/// Fixed 15-significant-digit rendering shared by all CSV output.
inline std::string format_number(double v) {
    if (v == 0.0) v = 0.0; // no "-0"
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

inline std::string to_csv(const std::vector<SweepRecord> &records) {
    std::string out = "a_squared,theta,chi,eta,lambda1,lambda2,entropy_bits,entropy_ni_bits\n";
    for (const auto &r : records) {
        out += format_number(r.a_squared) + ',' + format_number(r.theta) + ',' + format_number(r.chi) + ',' +
               std::to_string(r.eta) + ',' + format_number(r.lambda1) + ',' + format_number(r.lambda2) + ',' +
               format_number(r.entropy_bits) + ',' + format_number(r.entropy_ni_bits) + '\n';
    }
    return out;
}

inline std::string to_csv(const std::vector<DifferenceRecord> &records) {
    std::string out = "a_squared,theta,chi,entropy_boson_bits,entropy_fermion_bits,difference_bits\n";
    for (const auto &r : records) {
        out += format_number(r.a_squared) + ',' + format_number(r.theta) + ',' + format_number(r.chi) + ',' +
               format_number(r.entropy_boson_bits) + ',' + format_number(r.entropy_fermion_bits) + ',' +
               format_number(r.difference_bits) + '\n';
    }
    return out;
}

inline nlohmann::ordered_json to_json(const SweepRecord &r) {
    return {{"a_squared", r.a_squared}, {"theta", r.theta},     {"chi", r.chi},
            {"eta", r.eta},             {"lambda1", r.lambda1}, {"lambda2", r.lambda2},
            {"entropy_bits", r.entropy_bits}, {"entropy_ni_bits", r.entropy_ni_bits}};
}

inline nlohmann::ordered_json to_json(const DifferenceRecord &r) {
    return {{"a_squared", r.a_squared},
            {"theta", r.theta},
            {"chi", r.chi},
            {"entropy_boson_bits", r.entropy_boson_bits},
            {"entropy_fermion_bits", r.entropy_fermion_bits},
            {"difference_bits", r.difference_bits}};
}

template <class Record> std::string to_json_text(const std::vector<Record> &records) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto &r : records) arr.push_back(to_json(r));
    return arr.dump(2) + "\n";
}

template <class Record> std::string render(const std::vector<Record> &records, OutputFormat format) {
    return format == OutputFormat::csv ? to_csv(records) : to_json_text(records);
}

/// Sweep rendered in the configured format (boson-fermion difference with fig3c).
inline std::string render_sweep(const ScenarioConfig &config) {
    if (config.fig3c) {
        return render(run_difference_sweep(config), config.format);
    }
    return render(run_sweep(config), config.format);
}

inline nlohmann::ordered_json to_json(const SingleParticleState &s) {
    auto arr = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < s.amplitudes().size(); ++i) {
        arr.push_back({s.amplitudes()(i).real(), s.amplitudes()(i).imag()});
    }
    return arr;
}

inline nlohmann::ordered_json to_json(const TwoParticleState &state) {
    nlohmann::ordered_json j;
    j["statistics"] = to_string(state.statistics());
    auto labels = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < state.basis()->dimension(); ++i) labels.push_back(state.basis()->label(i));
    j["basis"] = labels;
    auto terms = nlohmann::ordered_json::array();
    for (const auto &t : state.terms()) {
        terms.push_back({{"coefficient", {t.coefficient.real(), t.coefficient.imag()}},
                         {"first", to_json(t.first)},
                         {"second", to_json(t.second)}});
    }
    j["terms"] = terms;
    return j;
}

// ---------------------------------------------------------------- extract

struct ExtractConfig {
    double r_squared = 0.5;
    Statistics statistics = Statistics::boson;
    /// Two comma-separated `mode:spin` slots, both in the source mode L.
    std::string input = "L:up,L:down";
};

inline BasisPtr splitter_basis() {
    static const BasisPtr basis = make_basis({"L", "C", "D"});
    return basis;
}

inline TwoParticleState parse_same_site_input(const std::string &spec, Statistics statistics,
                                              const BasisPtr &basis) {
    const auto comma = spec.find(',');
    if (comma == std::string::npos || spec.find(',', comma + 1) != std::string::npos) {
        throw ConfigError("input must list two slots 'mode:spin,mode:spin'");
    }
    auto slot = [&](std::string_view text) {
        text = trim(text);
        const auto colon = text.find(':');
        if (colon == std::string_view::npos) {
            throw ConfigError("slot must be mode:spin, got '" + std::string(text) + "'");
        }
        const auto mode = trim(text.substr(0, colon));
        if (mode != "L") {
            throw ConfigError("extraction input must be a same-site state in mode L");
        }
        try {
            return basis_state(basis, mode, trim(text.substr(colon + 1)));
        } catch (const BasisError &e) {
            throw ConfigError(e.what());
        }
    };
    return TwoParticleState(statistics, slot(std::string_view(spec).substr(0, comma)),
                            slot(std::string_view(spec).substr(comma + 1)));
}

inline nlohmann::ordered_json run_extract(const ExtractConfig &config) {
    if (!(config.r_squared >= 0.0 && config.r_squared <= 1.0)) {
        throw ConfigError("r2 must lie in [0, 1]");
    }
    const auto basis = splitter_basis();
    const auto input = normalize(parse_same_site_input(config.input, config.statistics, basis));
    SplitterParams params{std::sqrt(config.r_squared), std::sqrt(1.0 - config.r_squared)};
    const auto output = apply_splitter(params, input);
    const auto report = extraction_report(output, params.out1, params.out2);

    nlohmann::ordered_json j;
    j["r_squared"] = config.r_squared;
    j["statistics"] = to_string(config.statistics);
    j["input"] = config.input;
    j["probabilities"] = {{"same_mode_1", report.same_mode_1},
                          {"same_mode_2", report.same_mode_2},
                          {"split", report.split}};
    if (report.split_component) {
        const auto rho = localized_partial_trace(*report.split_component, LocalizedSubspace(basis, {params.out1}));
        j["split_entropy_bits"] = von_neumann_entropy(rho).entropy;
        auto terms = nlohmann::ordered_json::array();
        for (const auto &t : report.split_component->terms()) {
            Eigen::Index i = 0;
            Eigen::Index k = 0;
            t.first.amplitudes().cwiseAbs().maxCoeff(&i);
            t.second.amplitudes().cwiseAbs().maxCoeff(&k);
            terms.push_back({{"coefficient", {t.coefficient.real(), t.coefficient.imag()}},
                             {"first", basis->label(static_cast<std::size_t>(i))},
                             {"second", basis->label(static_cast<std::size_t>(k))}});
        }
        j["split_component"] = terms;
    } else {
        j["split_entropy_bits"] = nullptr;
        j["split_component"] = nullptr;
    }
    return j;
}

// ----------------------------------------------------------- oracle check

inline constexpr double oracle_tolerance = 1e-10;

struct OracleCheckOptions {
    std::uint64_t seed = 42;
    long trials = 200;
    /// Negative control: the oracle symmetrizes with the wrong eta.
    bool corrupt_eta = false;
};

struct IdentityDeviation {
    std::string name;
    double max_deviation = 0.0;
    nlohmann::ordered_json worst_case;
};

struct OracleCheckResult {
    std::vector<IdentityDeviation> identities;
    [[nodiscard]] bool passed() const {
        return std::all_of(identities.begin(), identities.end(),
                           [](const auto &d) { return d.max_deviation < oracle_tolerance; });
    }
};

/**
 * Per statistics and trial: the factor-2 amplitude identity against the
 * labeled oracle, the probability identity p_k = <Pi (x) I + I (x) Pi>/2,
 * completeness of p_k over a random orthonormal basis, and swap symmetry.
 */
inline OracleCheckResult run_oracle_check(const OracleCheckOptions &options) {
    if (options.trials < 1) {
        throw ConfigError("trials must be >= 1");
    }
    const auto basis = make_basis({"L", "R", "C"});
    const auto dim = static_cast<Eigen::Index>(basis->dimension());
    Rng rng(options.seed);

    IdentityDeviation amplitude{"amplitude_factor_2", 0.0, nullptr};
    IdentityDeviation probability{"projector_probability", 0.0, nullptr};
    IdentityDeviation completeness{"completeness", 0.0, nullptr};
    IdentityDeviation exchange{"swap_symmetry", 0.0, nullptr};
    auto track = [](IdentityDeviation &d, double dev, auto &&describe) {
        if (!(dev <= d.max_deviation)) {
            d.max_deviation = std::isnan(dev) ? INFINITY : dev;
            d.worst_case = describe();
        }
    };

    for (const auto stats : {Statistics::boson, Statistics::fermion}) {
        const int oracle_eta = options.corrupt_eta ? -eta(stats) : eta(stats);
        for (long trial = 0; trial < options.trials; ++trial) {
            const auto x = normalize(random_two_particle_state(basis, stats, rng));
            const auto y = normalize(random_two_particle_state(basis, stats, rng));
            const auto sx = oracle::symmetrize(x, oracle_eta);
            const auto sy = oracle::symmetrize(y, oracle_eta);

            const Complex direct = two_particle_amplitude(x, y);
            const double dev_amp = std::abs(oracle::labeled_amplitude(sx, sy) - 2.0 * direct);
            track(amplitude, dev_amp, [&] { return nlohmann::ordered_json{{"bra", to_json(x)}, {"ket", to_json(y)}}; });

            const double dev_swap = std::abs(two_particle_amplitude(x, swap(y)) - double(eta(stats)) * direct);
            track(exchange, dev_swap, [&] { return nlohmann::ordered_json{{"bra", to_json(x)}, {"ket", to_json(y)}}; });

            const auto k = random_single_particle_state(basis, rng);
            const double p = measure(k, x).probability;
            double dev_prob = INFINITY;
            try {
                dev_prob = std::abs(oracle::labeled_projector_expectation(k, sx.normalized()) / 2.0 - p);
            } catch (const ZeroNormError &) {
            }
            track(probability, dev_prob,
                  [&] { return nlohmann::ordered_json{{"state", to_json(x)}, {"projector", to_json(k)}}; });

            const Matrix u = random_unitary(dim, rng);
            double total = 0.0;
            for (Eigen::Index c = 0; c < dim; ++c) {
                total += measure(SingleParticleState(basis, u.col(c)), x).probability;
            }
            track(completeness, std::abs(total - 1.0), [&] { return nlohmann::ordered_json{{"state", to_json(x)}}; });
        }
    }
    return {{amplitude, probability, completeness, exchange}};
}

} // namespace nolabel::scenario
