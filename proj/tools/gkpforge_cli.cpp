// Copyright 2026 The gkpforge Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// gkpforge command-line front end. Talks to the library only through the C API.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "gkpforge/gkpforge.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Failures

struct LibraryFailure : std::runtime_error {
    LibraryFailure(gkp_status s, const std::string &what) : std::runtime_error(what), status(s) {}
    gkp_status status;
};

struct UsageFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check(gkp_status status) {
    if (status != GKP_OK) {
        throw LibraryFailure(status, gkp_last_error());
    }
}

// ---------------------------------------------------------------------------
// Handles

struct StateDeleter {
    void operator()(gkp_state *s) const { gkp_state_free(s); }
};
struct ParamsDeleter {
    void operator()(gkp_params *p) const { gkp_params_free(p); }
};
struct RecordDeleter {
    void operator()(gkp_record *r) const { gkp_record_free(r); }
};
using State = std::unique_ptr<gkp_state, StateDeleter>;
using Params = std::unique_ptr<gkp_params, ParamsDeleter>;
using Record = std::unique_ptr<gkp_record, RecordDeleter>;

std::string take_string(char *text) {
    std::string out(text);
    gkp_string_free(text);
    return out;
}

State make_target(double delta, gkp_label mu, int cutoff, double max_leakage) {
    gkp_state *raw = nullptr;
    const gkp_status status = gkp_state_target(delta, mu, cutoff, max_leakage, &raw);
    if (status == GKP_ERR_CUTOFF_TOO_SMALL) {
        throw LibraryFailure(status, std::string(gkp_last_error()) + " (about " +
                                         std::to_string(gkp_last_required_cutoff()) +
                                         " levels needed; raise --cutoff or --max-leakage)");
    }
    check(status);
    return State(raw);
}

std::string state_json(const gkp_state *s) {
    char *text = nullptr;
    check(gkp_state_to_json(s, &text));
    return take_string(text);
}

double error_probability(const gkp_state *s) {
    double p = 0.0;
    check(gkp_error_probability(s, nullptr, &p));
    return p;
}

double fidelity(const gkp_state *a, const gkp_state *b) {
    double f = 0.0;
    check(gkp_fidelity(a, b, &f));
    return f;
}

State forward(const gkp_params *p) {
    gkp_state *raw = nullptr;
    check(gkp_forward(p, &raw));
    return State(raw);
}

int converged_cutoff(double delta, gkp_label mu) {
    int n = 0;
    check(gkp_converged_cutoff(delta, mu, 1e-6, &n));
    return n;
}

int selected_cutoff(double delta, gkp_label mu) {
    int n = 0;
    check(gkp_select_cutoff(delta, mu, &n));
    return n;
}

// ---------------------------------------------------------------------------
// Output

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

class Csv {
  public:
    explicit Csv(const std::vector<std::string> &header) { row_strings(header); }
    void row(const std::vector<double> &values) {
        std::vector<std::string> cells;
        cells.reserve(values.size());
        for (double v : values) {
            cells.push_back(fmt(v));
        }
        row_strings(cells);
    }
    [[nodiscard]] const std::string &str() const noexcept { return text_; }

  private:
    void row_strings(const std::vector<std::string> &cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            text_ += (i ? "," : "") + cells[i];
        }
        text_ += '\n';
    }
    std::string text_;
};

std::string read_text(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw LibraryFailure(GKP_ERR_IO, "cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Params params_from_file(const fs::path &path) {
    gkp_params *raw = nullptr;
    check(gkp_params_from_json(read_text(path).c_str(), &raw));
    return Params(raw);
}

/// Every output of a command is staged here and written only after the whole
/// command succeeded, each file via a temporary sibling and a rename.
class Outputs {
  public:
    void add(fs::path path, std::string content) { files_.emplace_back(std::move(path), std::move(content)); }
    [[nodiscard]] std::vector<std::string> paths() const {
        std::vector<std::string> out;
        for (const auto &f : files_) {
            out.push_back(f.first.string());
        }
        return out;
    }
    void commit() const {
        for (const auto &[path, content] : files_) {
            write_atomic(path, content);
        }
    }

  private:
    static void write_atomic(const fs::path &path, const std::string &content) {
        fs::path tmp = path;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) {
                throw LibraryFailure(GKP_ERR_IO, "cannot open " + tmp.string() + " for writing");
            }
            out << content;
            out.flush();
            if (!out) {
                std::error_code ignored;
                fs::remove(tmp, ignored);
                throw LibraryFailure(GKP_ERR_IO, "failed writing " + tmp.string());
            }
        }
        std::error_code ec;
        fs::rename(tmp, path, ec);
        if (ec) {
            fs::remove(tmp, ec);
            throw LibraryFailure(GKP_ERR_IO, "cannot move output into place at " + path.string());
        }
    }

    std::vector<std::pair<fs::path, std::string>> files_;
};

/// `<out>` with its extension replaced by `suffix` (for example ".trace0.csv").
fs::path sibling(const fs::path &out, const std::string &suffix) {
    fs::path p = out;
    p.replace_extension();
    p += suffix;
    return p;
}

// ---------------------------------------------------------------------------
// Argument parsing helpers

gkp_label parse_mu(const std::string &text) {
    gkp_label mu{};
    if (gkp_label_parse(text.c_str(), &mu) != GKP_OK) {
        throw UsageFailure("--mu must be 0, 1 or H, got '" + text + "'");
    }
    return mu;
}

/// "auto" or a positive integer.
std::optional<int> parse_auto_int(const std::string &text, const std::string &flag) {
    if (text == "auto") {
        return std::nullopt;
    }
    try {
        std::size_t used = 0;
        const int v = std::stoi(text, &used);
        if (used == text.size() && v > 0) {
            return v;
        }
    } catch (const std::exception &) {
    }
    throw UsageFailure(flag + " must be 'auto' or a positive integer, got '" + text + "'");
}

double parse_double(const std::string &text, const std::string &flag) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == text.size() && std::isfinite(v)) {
            return v;
        }
    } catch (const std::exception &) {
    }
    throw UsageFailure(flag + ": '" + text + "' is not a number");
}

std::vector<std::string> split(const std::string &text, char sep) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) {
        parts.push_back(item);
    }
    return parts;
}

/// Comma list ("0.1,0.2") or inclusive range ("0.10:0.35:0.05").
std::vector<double> parse_deltas(const std::string &text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3) {
            throw UsageFailure("--deltas range must be start:stop:step");
        }
        const double start = parse_double(parts[0], "--deltas");
        const double stop = parse_double(parts[1], "--deltas");
        const double step = parse_double(parts[2], "--deltas");
        if (step <= 0.0 || stop < start) {
            throw UsageFailure("--deltas range needs step > 0 and stop >= start");
        }
        const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
        for (long i = 0; i <= count; ++i) {
            out.push_back(start + static_cast<double>(i) * step);
        }
    } else {
        for (const std::string &item : split(text, ',')) {
            if (!item.empty()) {
                out.push_back(parse_double(item, "--deltas"));
            }
        }
    }
    if (out.empty()) {
        throw UsageFailure("--deltas is empty");
    }
    return out;
}

/// Comma list or inclusive "a..b".
std::vector<std::uint64_t> parse_seeds(const std::string &text) {
    std::vector<std::uint64_t> out;
    const auto dots = text.find("..");
    try {
        if (dots != std::string::npos) {
            const std::uint64_t lo = std::stoull(text.substr(0, dots));
            const std::uint64_t hi = std::stoull(text.substr(dots + 2));
            if (hi < lo || hi - lo > 1000000) {
                throw UsageFailure("--seeds range is empty or too long");
            }
            for (std::uint64_t s = lo; s <= hi; ++s) {
                out.push_back(s);
            }
        } else {
            for (const std::string &item : split(text, ',')) {
                if (!item.empty()) {
                    out.push_back(std::stoull(item));
                }
            }
        }
    } catch (const UsageFailure &) {
        throw;
    } catch (const std::exception &) {
        throw UsageFailure("--seeds must be a comma list or a..b, got '" + text + "'");
    }
    if (out.empty()) {
        throw UsageFailure("--seeds is empty");
    }
    return out;
}

int resolve_threads(int flag) {
    if (flag >= 0) {
        return flag;
    }
    if (const char *env = std::getenv("GKP_FORGE_THREADS")) {
        try {
            const int v = std::stoi(env);
            if (v >= 0) {
                return v;
            }
        } catch (const std::exception &) {
        }
        throw UsageFailure(std::string("GKP_FORGE_THREADS must be a non-negative integer, got '") + env + "'");
    }
    return 1;
}

// ---------------------------------------------------------------------------
// Commands

struct Common {
    std::string out;
    int threads = -1;
};

struct TargetArgs {
    double delta = 0.3;
    std::string mu = "0";
    std::string cutoff = "auto";
    double max_leakage = 0.005;
};

struct OptimizeArgs {
    double delta = 0.3;
    std::string mu = "0";
    std::string blocks = "auto";
    std::string trials = "auto";
    std::string cutoff = "auto";
    std::uint64_t seed = 0;
    int iters = 2000;
    double max_leakage = 0.005;
    int leakage_margin = 30;
};

struct SweepArgs {
    std::string deltas;
    std::vector<std::string> params;
};

struct CutoffArgs {
    std::string deltas = "0.08,0.12,0.2,0.3,0.4";
};

struct ThresholdArgs {
    std::string deltas = "0.05:0.5:0.005";
};

struct EcArgs {
    double delta = 0.3;
    std::string seeds = "1..100";
    int cutoff = 36;
    double max_leakage = 0.05;
    std::string data;
};

/// Stages a command's outputs; returns the settings it resolved (auto cutoffs, seeds).
using Runner = std::function<json(Outputs &)>;

json run_target(const TargetArgs &a, const Common &c, Outputs &out) {
    const gkp_label mu = parse_mu(a.mu);
    const std::optional<int> explicit_cutoff = parse_auto_int(a.cutoff, "--cutoff");
    const int cutoff = explicit_cutoff ? *explicit_cutoff : converged_cutoff(a.delta, mu);
    const State s = make_target(a.delta, mu, cutoff, a.max_leakage);
    out.add(c.out, state_json(s.get()));

    std::size_t count = 0;
    check(gkp_state_density(s.get(), GKP_BASIS_POSITION, nullptr, nullptr, 0, &count));
    std::vector<double> x(count), q(count), p(count);
    check(gkp_state_density(s.get(), GKP_BASIS_POSITION, x.data(), q.data(), count, &count));
    check(gkp_state_density(s.get(), GKP_BASIS_MOMENTUM, x.data(), p.data(), count, &count));
    Csv csv({"x", "position_density", "momentum_density"});
    for (std::size_t i = 0; i < count; ++i) {
        csv.row({x[i], q[i], p[i]});
    }
    out.add(sibling(c.out, ".density.csv"), csv.str());
    std::cout << "target delta=" << fmt(a.delta) << " mu=" << a.mu << " cutoff=" << cutoff
              << " p_error=" << fmt(error_probability(s.get())) << '\n';
    return {{"cutoff", cutoff}};
}

json run_optimize(const OptimizeArgs &a, const Common &c, Outputs &out) {
    const gkp_label mu = parse_mu(a.mu);
    const std::optional<int> explicit_cutoff = parse_auto_int(a.cutoff, "--cutoff");
    const int cutoff = explicit_cutoff ? *explicit_cutoff : selected_cutoff(a.delta, mu);
    const int blocks = parse_auto_int(a.blocks, "--blocks").value_or(gkp_default_blocks(a.delta));
    gkp_optimizer_config cfg;
    gkp_optimizer_config_default(&cfg);
    cfg.trials = parse_auto_int(a.trials, "--trials").value_or(gkp_default_trials(a.delta));
    cfg.max_iters = a.iters;
    cfg.seed = a.seed;
    cfg.threads = resolve_threads(c.threads);

    gkp_record *raw = nullptr;
    check(gkp_optimize(a.delta, mu, cutoff, blocks, a.max_leakage, &cfg, &raw));
    const Record rec(raw);
    gkp_params *praw = nullptr;
    check(gkp_record_best_params(rec.get(), &praw));
    const Params params(praw);

    char *text = nullptr;
    check(gkp_params_to_json(params.get(), &text));
    out.add(c.out, take_string(text));
    for (int t = 0; t < gkp_record_trial_count(rec.get()); ++t) {
        check(gkp_record_trace_csv(rec.get(), t, &text));
        out.add(sibling(c.out, ".trace" + std::to_string(t) + ".csv"), take_string(text));
    }

    const State target = make_target(a.delta, mu, cutoff, a.max_leakage);
    const State generated = forward(params.get());
    double leakage = 0.0;
    check(gkp_target_leakage(a.delta, mu, cutoff, &leakage));
    double retained = 0.0;
    check(gkp_validate_leakage(params.get(), a.leakage_margin, &retained));
    const double f = fidelity(generated.get(), target.get());
    const double p_error = error_probability(generated.get());
    json trials = json::array();
    check(gkp_record_to_json(rec.get(), &text));
    json record = json::parse(take_string(text));
    for (auto &t : record.at("trials")) {
        trials.push_back(t);
    }
    const json report = {{"delta", a.delta},
                         {"mu", a.mu},
                         {"blocks", blocks},
                         {"target_cutoff", cutoff},
                         {"window_cutoff", gkp_params_cutoff(params.get())},
                         {"fidelity", f},
                         {"infidelity", 1.0 - f},
                         {"optimizer_fidelity", gkp_record_best_fidelity(rec.get())},
                         {"p_error", p_error},
                         {"p_error_target", error_probability(target.get())},
                         {"p_threshold", gkp_threshold_error_probability()},
                         {"squeezing_db", gkp_squeezing_db(a.delta)},
                         {"target_leakage", leakage},
                         {"retained", retained},
                         {"leakage_margin", a.leakage_margin},
                         {"leakage_pass", retained >= 0.996},
                         {"best_trial", gkp_record_best_trial(rec.get())},
                         {"trials", trials}};
    out.add(sibling(c.out, ".report.json"), report.dump(1));
    out.add(sibling(c.out, ".state.json"), state_json(generated.get()));

    std::cout << "optimize delta=" << fmt(a.delta) << " blocks=" << blocks << " cutoff=" << cutoff
              << " trials=" << cfg.trials << " infidelity=" << fmt(1.0 - f) << " p_error=" << fmt(p_error)
              << " retained=" << fmt(retained) << " (" << fmt(gkp_record_wallclock(rec.get())) << " s)\n";
    return {{"rng_seed", a.seed}, {"threads", cfg.threads}, {"trials", cfg.trials}, {"blocks", blocks},
            {"cutoff", cutoff}};
}

json run_sweep(const SweepArgs &a, const Common &c, Outputs &out) {
    const std::vector<double> deltas = parse_deltas(a.deltas);
    struct Generated {
        Params params;
        State state;
    };
    std::vector<Generated> generated;
    for (const std::string &path : a.params) {
        Params p = params_from_file(path);
        State s = forward(p.get());
        generated.push_back({std::move(p), std::move(s)});
    }
    const double p_th = gkp_threshold_error_probability();
    Csv csv({"delta", "squeezing_db", "p_error_target", "p_error_generated", "p_error_twirled", "infidelity",
             "p_threshold"});
    for (double delta : deltas) {
        const State target = make_target(delta, GKP_LABEL_ZERO, converged_cutoff(delta, GKP_LABEL_ZERO), 1e-6);
        double twirled = 0.0;
        check(gkp_twirled_error_probability(delta, &twirled, nullptr));
        double p_gen = std::nan("");
        double infidelity = std::nan("");
        for (const Generated &g : generated) {
            if (std::abs(gkp_params_delta(g.params.get()) - delta) < 1e-9) {
                p_gen = error_probability(g.state.get());
                infidelity = 1.0 - fidelity(g.state.get(), target.get());
            }
        }
        csv.row({delta, gkp_squeezing_db(delta), error_probability(target.get()), p_gen, twirled, infidelity, p_th});
    }
    out.add(c.out, csv.str());
    std::cout << "sweep: " << deltas.size() << " rows\n";
    return json::object();
}

json run_cutoff(const CutoffArgs &a, const Common &c, Outputs &out) {
    Csv csv({"delta", "cutoff", "leakage"});
    for (double delta : parse_deltas(a.deltas)) {
        const int n = selected_cutoff(delta, GKP_LABEL_ZERO);
        double leakage = 0.0;
        check(gkp_target_leakage(delta, GKP_LABEL_ZERO, n, &leakage));
        csv.row({delta, static_cast<double>(n), leakage});
        std::cout << "delta=" << fmt(delta) << " cutoff=" << n << '\n';
    }
    out.add(c.out, csv.str());
    return json::object();
}

json run_threshold(const ThresholdArgs &a, const Common &c, Outputs &out) {
    Csv csv({"delta", "squeezing_db", "p_error_twirled", "p_error_twirled_quadrature"});
    for (double delta : parse_deltas(a.deltas)) {
        double closed = 0.0;
        double quad = 0.0;
        check(gkp_twirled_error_probability(delta, &closed, &quad));
        csv.row({delta, gkp_squeezing_db(delta), closed, quad});
    }
    out.add(c.out, csv.str());
    std::cout << "threshold P_th=" << fmt(gkp_threshold_error_probability()) << '\n';
    return json::object();
}

json run_ec(const EcArgs &a, const Common &c, Outputs &out) {
    const std::vector<std::uint64_t> seeds = parse_seeds(a.seeds);
    State data = a.data.empty() ? make_target(a.delta, GKP_LABEL_ZERO, a.cutoff, a.max_leakage)
                                : forward(params_from_file(a.data).get());
    const State ancilla = make_target(a.delta, GKP_LABEL_ZERO, a.cutoff, a.max_leakage);
    Csv csv({"seed", "p_sample", "correction", "p_error_before", "p_error_after", "marginal_norm"});
    for (std::uint64_t seed : seeds) {
        gkp_ec_result r{};
        check(gkp_ec_round(data.get(), ancilla.get(), seed, 0.0, &r, nullptr));
        csv.row({static_cast<double>(seed), r.p_sample, r.correction, r.p_error_before, r.p_error_after,
                 r.marginal_norm});
    }
    out.add(c.out, csv.str());
    std::cout << "ec-demo: " << seeds.size() << " rounds\n";
    return {{"seeds", a.seeds}};
}

json options_snapshot(const CLI::App &sub) {
    json snap = json::object();
    for (const CLI::Option *opt : sub.get_options()) {
        if (opt->get_name() == "--help" || opt->count() == 0) {
            continue;
        }
        snap[opt->get_name()] = opt->results();
    }
    return snap;
}

int dispatch(std::vector<std::string> args);

/// Parses and runs one invocation; `args` excludes the program name.
int run(const std::vector<std::string> &args) {
    CLI::App app{"GKP state synthesis from vacuum with Lloyd-Braunstein circuits"};
    app.require_subcommand(1);
    Common common;
    app.add_option("--threads", common.threads, "Worker threads (default: GKP_FORGE_THREADS, else 1)")
        ->check(CLI::NonNegativeNumber);
    app.set_version_flag("--version", std::string(gkp_version()));

    TargetArgs target;
    CLI::App *target_cmd = app.add_subcommand("target", "Write a target GKP state and its densities");
    target_cmd->add_option("--delta", target.delta)->required()->check(CLI::PositiveNumber);
    target_cmd->add_option("--mu", target.mu, "0, 1 or H")->capture_default_str();
    target_cmd->add_option("--cutoff", target.cutoff, "auto or a positive integer")->capture_default_str();
    target_cmd->add_option("--max-leakage", target.max_leakage)->capture_default_str();
    target_cmd->add_option("--out", common.out, "state JSON path")->required();

    OptimizeArgs opt;
    CLI::App *opt_cmd = app.add_subcommand("optimize", "Optimize a circuit for a target GKP state");
    opt_cmd->add_option("--delta", opt.delta)->required()->check(CLI::PositiveNumber);
    opt_cmd->add_option("--mu", opt.mu)->capture_default_str();
    opt_cmd->add_option("--blocks", opt.blocks)->capture_default_str();
    opt_cmd->add_option("--trials", opt.trials)->capture_default_str();
    opt_cmd->add_option("--cutoff", opt.cutoff)->capture_default_str();
    opt_cmd->add_option("--seed", opt.seed)->capture_default_str();
    opt_cmd->add_option("--iters", opt.iters)->capture_default_str()->check(CLI::PositiveNumber);
    opt_cmd->add_option("--max-leakage", opt.max_leakage)->capture_default_str();
    opt_cmd->add_option("--leakage-margin", opt.leakage_margin)->capture_default_str();
    opt_cmd->add_option("--out", common.out, "parameter JSON path")->required();

    SweepArgs sweep;
    CLI::App *sweep_cmd = app.add_subcommand("sweep", "Error probability against delta");
    sweep_cmd->add_option("--deltas", sweep.deltas, "comma list or start:stop:step")->required();
    sweep_cmd->add_option("--params", sweep.params, "optimized parameter files")->delimiter(',');
    sweep_cmd->add_option("--out", common.out)->required();

    CutoffArgs cut;
    CLI::App *cut_cmd = app.add_subcommand("cutoff", "Selected Fock cutoff against delta");
    cut_cmd->add_option("--deltas", cut.deltas)->capture_default_str();
    cut_cmd->add_option("--out", common.out)->required();

    ThresholdArgs thr;
    CLI::App *thr_cmd = app.add_subcommand("threshold", "Twirled error-probability curve");
    thr_cmd->add_option("--deltas", thr.deltas)->capture_default_str();
    thr_cmd->add_option("--out", common.out)->required();

    EcArgs ec;
    CLI::App *ec_cmd = app.add_subcommand("ec-demo", "Batch of momentum error-correction rounds");
    ec_cmd->add_option("--delta", ec.delta)->capture_default_str()->check(CLI::PositiveNumber);
    ec_cmd->add_option("--seeds", ec.seeds, "comma list or a..b")->capture_default_str();
    ec_cmd->add_option("--cutoff", ec.cutoff)->capture_default_str()->check(CLI::PositiveNumber);
    ec_cmd->add_option("--max-leakage", ec.max_leakage)->capture_default_str();
    ec_cmd->add_option("--data", ec.data, "optimized parameters for the data mode");
    ec_cmd->add_option("--out", common.out)->required();

    std::string manifest_path;
    std::string rerun_out;
    CLI::App *rerun_cmd = app.add_subcommand("rerun", "Re-execute the command recorded in a manifest");
    rerun_cmd->add_option("manifest", manifest_path)->required();
    rerun_cmd->add_option("--out", rerun_out, "write to a different output path");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    }

    if (rerun_cmd->parsed()) {
        const json manifest = json::parse(read_text(manifest_path));
        std::vector<std::string> argv = manifest.at("argv").get<std::vector<std::string>>();
        if (!rerun_out.empty()) {
            for (std::size_t i = 0; i + 1 < argv.size(); ++i) {
                if (argv[i] == "--out") {
                    argv[i + 1] = rerun_out;
                }
            }
        }
        return dispatch(argv);
    }

    const CLI::App *sub = app.get_subcommands().front();
    Runner runner;
    if (sub == target_cmd) {
        runner = [&](Outputs &o) { return run_target(target, common, o); };
    } else if (sub == opt_cmd) {
        runner = [&](Outputs &o) { return run_optimize(opt, common, o); };
    } else if (sub == sweep_cmd) {
        runner = [&](Outputs &o) { return run_sweep(sweep, common, o); };
    } else if (sub == cut_cmd) {
        runner = [&](Outputs &o) { return run_cutoff(cut, common, o); };
    } else if (sub == thr_cmd) {
        runner = [&](Outputs &o) { return run_threshold(thr, common, o); };
    } else {
        runner = [&](Outputs &o) { return run_ec(ec, common, o); };
    }

    const auto start = std::chrono::steady_clock::now();
    Outputs outputs;
    const json extra = runner(outputs);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    json inputs = json::array();
    if (sub == sweep_cmd) {
        inputs = sweep.params;
    } else if (sub == ec_cmd && !ec.data.empty()) {
        inputs.push_back(ec.data);
    }
    const fs::path manifest_file = fs::path(common.out + ".manifest.json");
    const json manifest = {{"command", sub->get_name()},
                           {"argv", args},
                           {"config", options_snapshot(*sub)},
                           {"resolved", extra},
                           {"library_version", gkp_version()},
                           {"inputs", inputs},
                           {"outputs", outputs.paths()},
                           {"wallclock_seconds", seconds}};
    outputs.add(manifest_file, manifest.dump(1));
    outputs.commit();
    return 0;
}

int dispatch(std::vector<std::string> args) {
    try {
        return run(args);
    } catch (const UsageFailure &e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const LibraryFailure &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace

int main(int argc, char **argv) { return dispatch(std::vector<std::string>(argv + 1, argv + argc)); }
