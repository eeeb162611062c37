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

#include "gkpforge/serialization.hpp"
#include "gkpforge/error.hpp"

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

namespace gkpforge {

using nlohmann::json;

namespace {

json parse(std::string_view text, std::string_view what) {
    try {
        return json::parse(text);
    } catch (const json::exception &e) {
        fail(ErrorCode::InvalidArgument, std::string(what) + " is not valid JSON: " + e.what());
    }
}

template <typename T> T field(const json &j, const char *key) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &e) {
        fail(ErrorCode::InvalidArgument, std::string("missing or malformed field '") + key + "': " + e.what());
    }
}

json params_json(const CircuitParams &params) {
    json blocks = json::array();
    for (const BlockParams &b : params.blocks) {
        blocks.push_back({{"c", b.c}, {"d", b.d}, {"k", b.k}, {"r", b.r}});
    }
    return {{"delta", params.target_delta},
            {"mu", std::string(label_name(params.target))},
            {"cutoff", params.cutoff},
            {"seed", params.seed},
            {"gate_order", "X(c) Z(d) K(k) S(r), circuit time order"},
            {"blocks", blocks}};
}

} // namespace

std::string state_to_json(const StateRecord &record) {
    json amps = json::array();
    for (int n = 0; n < record.state.cutoff(); ++n) {
        amps.push_back({record.state[n].real(), record.state[n].imag()});
    }
    const json j = {{"delta", record.delta},
                    {"mu", std::string(label_name(record.mu))},
                    {"cutoff", record.state.cutoff()},
                    {"amplitudes", amps}};
    return j.dump(1);
}

StateRecord state_from_json(std::string_view text) {
    const json j = parse(text, "state");
    StateRecord out;
    out.delta = field<double>(j, "delta");
    out.mu = parse_label(field<std::string>(j, "mu"));
    const auto amps = field<std::vector<std::array<double, 2>>>(j, "amplitudes");
    const int cutoff = field<int>(j, "cutoff");
    require(cutoff >= 1 && static_cast<std::size_t>(cutoff) == amps.size(), ErrorCode::InvalidDimension,
            "state cutoff does not match the number of amplitudes");
    Eigen::VectorXcd v(cutoff);
    for (int n = 0; n < cutoff; ++n) {
        v[n] = {amps[static_cast<std::size_t>(n)][0], amps[static_cast<std::size_t>(n)][1]};
    }
    out.state = FockVector(std::move(v));
    return out;
}

std::string params_to_json(const CircuitParams &params) { return params_json(params).dump(1); }

CircuitParams params_from_json(std::string_view text) {
    const json j = parse(text, "circuit parameters");
    CircuitParams p;
    p.target_delta = field<double>(j, "delta");
    p.cutoff = field<int>(j, "cutoff");
    p.seed = field<std::uint64_t>(j, "seed");
    if (j.contains("mu")) {
        p.target = parse_label(field<std::string>(j, "mu"));
    }
    for (const json &b : field<json>(j, "blocks")) {
        p.blocks.push_back({field<double>(b, "c"), field<double>(b, "d"), field<double>(b, "k"), field<double>(b, "r")});
    }
    p.validate();
    return p;
}

std::string record_to_json(const OptimizationRecord &record) {
    json trials = json::array();
    for (const TrialResult &t : record.trials) {
        trials.push_back({{"index", t.index},
                          {"seed", t.seed},
                          {"best_fidelity", t.best_fidelity},
                          {"iterations", t.iterations},
                          {"aborted", t.aborted},
                          {"note", t.note}});
    }
    const json j = {{"best_fidelity", record.best_fidelity},
                    {"best_trial", record.best_trial},
                    {"target_cutoff", record.target_cutoff},
                    {"wallclock_seconds", record.wallclock_seconds},
                    {"best_params", params_json(record.best_params)},
                    {"trials", trials}};
    return j.dump(1);
}

std::string report_to_json(const QualitySummary &s) {
    const json j = {{"delta", s.quality.delta},
                    {"fidelity", s.quality.fidelity},
                    {"infidelity", 1.0 - s.quality.fidelity},
                    {"p_error", s.quality.p_error},
                    {"squeezing_db", s.quality.squeezing_db},
                    {"leakage", s.quality.leakage},
                    {"retained", s.retained},
                    {"leakage_margin", s.leakage_margin},
                    {"leakage_pass", s.retained >= kRetainedThreshold},
                    {"blocks", s.blocks},
                    {"cutoff", s.cutoff}};
    return j.dump(1);
}

std::string format_number(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : columns_(header.size()) {
    require(!header.empty(), ErrorCode::InvalidArgument, "CSV header must not be empty");
    for (std::size_t i = 0; i < header.size(); ++i) {
        text_ += (i ? "," : "") + header[i];
    }
    text_ += '\n';
}

void CsvTable::add_row(const std::vector<double> &values) {
    require(values.size() == columns_, ErrorCode::InvalidDimension, "CSV row width does not match the header");
    for (std::size_t i = 0; i < values.size(); ++i) {
        text_ += (i ? "," : "") + format_number(values[i]);
    }
    text_ += '\n';
    ++rows_;
}

std::string CsvTable::str() const { return text_; }

CsvTable trace_table(const TrialResult &trial) {
    CsvTable table({"iteration", "infidelity", "best_infidelity"});
    for (const TraceRow &row : trial.trace) {
        table.add_row({static_cast<double>(row.iteration), row.infidelity, row.best_infidelity});
    }
    return table;
}

void write_file_atomic(const std::filesystem::path &path, std::string_view content) {
    namespace fs = std::filesystem;
    const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
    std::random_device entropy;
    const fs::path tmp = dir / ("." + path.filename().string() + ".tmp" + std::to_string(entropy()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        require(static_cast<bool>(out), ErrorCode::Io, "cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            std::error_code ignored;
            fs::remove(tmp, ignored);
            fail(ErrorCode::Io, "failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        std::error_code ignored;
        fs::remove(tmp, ignored);
        fail(ErrorCode::Io, "cannot move output into place at " + path.string() + ": " + ec.message());
    }
}

std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), ErrorCode::Io, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace gkpforge
