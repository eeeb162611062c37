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

#include "doctest.h"

#include <filesystem>

#include "gkpforge/error.hpp"
#include "gkpforge/serialization.hpp"
#include "helpers.hpp"
#include "json.hpp"

using namespace gkpforge;

TEST_CASE("state JSON round trip is exact") {
    StateRecord rec{0.27, LogicalLabel::H, testing::random_state(25, 8)};
    const StateRecord back = state_from_json(state_to_json(rec));
    CHECK(back.delta == rec.delta);
    CHECK(back.mu == LogicalLabel::H);
    CHECK(back.state.amplitudes() == rec.state.amplitudes());

    const auto j = nlohmann::json::parse(state_to_json(rec));
    CHECK(j.at("cutoff") == 25);
    CHECK(j.at("amplitudes").size() == 25);
    CHECK(j.at("amplitudes")[0].size() == 2);

    CHECK_THROWS_AS(state_from_json("{"), Error);
    CHECK_THROWS_AS(state_from_json(R"({"delta":0.3,"mu":"0","cutoff":2,"amplitudes":[[1,0]]})"), Error);
    CHECK_THROWS_AS(state_from_json(R"({"delta":0.3,"mu":"7","cutoff":1,"amplitudes":[[1,0]]})"), Error);
}

TEST_CASE("circuit parameter round trip") {
    CircuitParams p;
    p.cutoff = 39;
    p.target_delta = 0.3;
    p.target = LogicalLabel::One;
    p.seed = 12345678901234ull;
    p.blocks = {{0.1, -0.2, 0.003, 0.4}, {1.0 / 3.0, 2e-9, -0.01, -2.9}};
    const CircuitParams back = params_from_json(params_to_json(p));
    CHECK(back.blocks == p.blocks);
    CHECK(back.cutoff == 39);
    CHECK(back.seed == p.seed);
    CHECK(back.target == LogicalLabel::One);
    CHECK(back.target_delta == 0.3);
    CHECK(forward(back).amplitudes() == forward(p).amplitudes());

    const auto j = nlohmann::json::parse(params_to_json(p));
    CHECK(j.at("gate_order").get<std::string>().starts_with("X(c) Z(d) K(k) S(r)"));
    CHECK_THROWS_AS(params_from_json(R"({"delta":0.3,"cutoff":10,"seed":1})"), Error);
}

TEST_CASE("CSV formatting") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(123456789012345.0) == "1.23456789012e+14");
    CsvTable t({"a", "b"});
    t.add_row({1.0, 2.5});
    t.add_row({-0.125, 1e-20});
    CHECK(t.rows() == 2);
    CHECK(t.str() == "a,b\n1,2.5\n-0.125,1e-20\n");
    CHECK_THROWS_AS(t.add_row({1.0}), Error);

    TrialResult trial;
    trial.trace = {{0, 0.5, 0.5}, {1, 0.6, 0.5}};
    CHECK(trace_table(trial).str() == "iteration,infidelity,best_infidelity\n0,0.5,0.5\n1,0.6,0.5\n");
}

TEST_CASE("atomic writes") {
    const auto dir = std::filesystem::temp_directory_path() / "gkpforge_serialization_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    const auto path = dir / "out.json";
    write_file_atomic(path, "first");
    write_file_atomic(path, "second");
    CHECK(read_file(path) == "second");
    std::size_t entries = 0;
    for ([[maybe_unused]] const auto &e : std::filesystem::directory_iterator(dir)) {
        ++entries;
    }
    CHECK(entries == 1);
    CHECK_THROWS_AS(write_file_atomic(dir / "missing" / "x.json", "x"), Error);
    CHECK_THROWS_AS(read_file(dir / "absent"), Error);
    std::filesystem::remove_all(dir);
}

TEST_CASE("optimization record carries every trial") {
    OptimizationRecord rec;
    rec.best_params.cutoff = 30;
    rec.best_params.blocks = {{0, 0, 0, 0}};
    rec.target_cutoff = 20;
    rec.best_fidelity = 0.9;
    rec.best_trial = 1;
    rec.trials.resize(3);
    const auto j = nlohmann::json::parse(record_to_json(rec));
    CHECK(j.at("trials").size() == 3);
    CHECK(j.at("target_cutoff") == 20);
    CHECK(j.at("best_params").at("cutoff") == 30);
}
