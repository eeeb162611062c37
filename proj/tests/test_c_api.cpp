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

// Exercises the shared library through its C header only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "gkpforge/gkpforge.h"

namespace {

struct StateGuard {
    gkp_state *ptr = nullptr;
    ~StateGuard() { gkp_state_free(ptr); }
};

std::string take(char *text) {
    std::string out(text);
    gkp_string_free(text);
    return out;
}

} // namespace

TEST_CASE("version and labels") {
    CHECK(std::strlen(gkp_version()) > 0);
    gkp_label mu{};
    CHECK(gkp_label_parse("H", &mu) == GKP_OK);
    CHECK(mu == GKP_LABEL_H);
    CHECK(gkp_label_parse("2", &mu) == GKP_ERR_INVALID_ARGUMENT);
    CHECK(std::string(gkp_last_error()).size() > 0);
    CHECK(gkp_label_parse(nullptr, &mu) == GKP_ERR_INVALID_ARGUMENT);
}

TEST_CASE("threshold values") {
    double closed = 0.0;
    double quad = 0.0;
    CHECK(gkp_twirled_error_probability(0.32, &closed, &quad) == GKP_OK);
    CHECK(std::abs(closed - 0.347) < 0.002);
    CHECK(std::abs(quad - closed) < 1e-8);
    CHECK(gkp_twirled_error_probability(0.32, nullptr, nullptr) == GKP_OK);
    CHECK(gkp_threshold_error_probability() == doctest::Approx(closed));
    CHECK(gkp_squeezing_db(0.32) == doctest::Approx(9.897).epsilon(1e-3));
    CHECK(gkp_delta_from_db(gkp_squeezing_db(0.2)) == doctest::Approx(0.2));
}

TEST_CASE("target handles") {
    StateGuard s;
    REQUIRE(gkp_state_target(0.3, GKP_LABEL_ZERO, 60, 0.005, &s.ptr) == GKP_OK);
    CHECK(gkp_state_cutoff(s.ptr) == 60);
    CHECK(gkp_state_delta(s.ptr) == 0.3);

    std::vector<double> amps(120);
    CHECK(gkp_state_amplitudes(s.ptr, amps.data(), amps.size()) == GKP_OK);
    CHECK(gkp_state_amplitudes(s.ptr, amps.data(), 10) == GKP_ERR_INVALID_DIMENSION);
    double norm = 0.0;
    for (double a : amps) {
        norm += a * a;
    }
    CHECK(norm == doctest::Approx(1.0));

    size_t count = 0;
    CHECK(gkp_state_density(s.ptr, GKP_BASIS_POSITION, nullptr, nullptr, 0, &count) == GKP_OK);
    REQUIRE(count > 100);
    std::vector<double> x(count);
    std::vector<double> rho(count);
    CHECK(gkp_state_density(s.ptr, GKP_BASIS_POSITION, x.data(), rho.data(), count, &count) == GKP_OK);
    double total = 0.0;
    for (size_t i = 0; i + 1 < count; ++i) {
        total += 0.5 * (x[i + 1] - x[i]) * (rho[i] + rho[i + 1]);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-6));

    double p = 0.0;
    CHECK(gkp_error_probability(s.ptr, nullptr, &p) == GKP_OK);
    CHECK(p > 0.2);
    CHECK(p < 0.5);
    gkp_error_config cfg;
    gkp_error_config_default(&cfg);
    CHECK(cfg.quad_nodes == 64);
    CHECK(cfg.reference == GKP_LABEL_ZERO);
    cfg.reference = GKP_LABEL_ONE;
    double p_one = 0.0;
    CHECK(gkp_error_probability(s.ptr, &cfg, &p_one) == GKP_OK);
    CHECK(p_one > 0.9);
    gkp_error_config_default(&cfg);
    cfg.quad_nodes = 2;
    CHECK(gkp_error_probability(s.ptr, &cfg, &p) == GKP_ERR_CONFIGURATION);

    StateGuard small;
    CHECK(gkp_state_target(0.12, GKP_LABEL_ZERO, 40, 0.005, &small.ptr) == GKP_ERR_CUTOFF_TOO_SMALL);
    CHECK(small.ptr == nullptr);
    CHECK(gkp_last_required_cutoff() > 40);
    CHECK(gkp_state_target(-1.0, GKP_LABEL_ZERO, 40, 0.005, &small.ptr) != GKP_OK);
}

TEST_CASE("state JSON and logical gates") {
    StateGuard zero;
    StateGuard one;
    REQUIRE(gkp_state_target(0.2, GKP_LABEL_ZERO, 150, 0.005, &zero.ptr) == GKP_OK);
    REQUIRE(gkp_state_target(0.2, GKP_LABEL_ONE, 150, 0.005, &one.ptr) == GKP_OK);
    char *text = nullptr;
    REQUIRE(gkp_state_to_json(zero.ptr, &text) == GKP_OK);
    StateGuard back;
    REQUIRE(gkp_state_from_json(take(text).c_str(), &back.ptr) == GKP_OK);
    double f = 0.0;
    CHECK(gkp_fidelity(zero.ptr, back.ptr, &f) == GKP_OK);
    CHECK(f == doctest::Approx(1.0));
    CHECK(gkp_state_from_json("not json", &back.ptr) == GKP_ERR_INVALID_ARGUMENT);

    StateGuard flipped;
    REQUIRE(gkp_state_apply_logical(zero.ptr, GKP_LOGICAL_XBAR, 0.0, &flipped.ptr) == GKP_OK);
    CHECK(gkp_fidelity(flipped.ptr, one.ptr, &f) == GKP_OK);
    CHECK(f == doctest::Approx(std::exp(-M_PI * 0.04 / 2.0)).epsilon(1e-3));
}

TEST_CASE("optimize and replay") {
    gkp_optimizer_config cfg;
    gkp_optimizer_config_default(&cfg);
    CHECK(cfg.trials == 10);
    CHECK(cfg.max_iters == 2000);
    cfg.trials = 2;
    cfg.max_iters = 40;
    cfg.seed = 5;
    gkp_record *rec = nullptr;
    REQUIRE(gkp_optimize(0.4, GKP_LABEL_ZERO, 20, 2, 0.05, &cfg, &rec) == GKP_OK);
    CHECK(gkp_record_trial_count(rec) == 2);
    CHECK(gkp_record_target_cutoff(rec) == 20);
    CHECK(gkp_record_best_fidelity(rec) > 0.0);
    CHECK(gkp_record_best_trial(rec) >= 0);

    gkp_params *params = nullptr;
    REQUIRE(gkp_record_best_params(rec, &params) == GKP_OK);
    CHECK(gkp_params_blocks(params) == 2);
    CHECK(gkp_params_cutoff(params) == 20 + cfg.working_margin);
    CHECK(gkp_params_delta(params) == 0.4);

    char *text = nullptr;
    REQUIRE(gkp_params_to_json(params, &text) == GKP_OK);
    gkp_params *again = nullptr;
    REQUIRE(gkp_params_from_json(take(text).c_str(), &again) == GKP_OK);
    StateGuard a;
    StateGuard b;
    REQUIRE(gkp_forward(params, &a.ptr) == GKP_OK);
    REQUIRE(gkp_forward(again, &b.ptr) == GKP_OK);
    double f = 0.0;
    CHECK(gkp_fidelity(a.ptr, b.ptr, &f) == GKP_OK);
    CHECK(f == doctest::Approx(1.0));

    double retained = 0.0;
    CHECK(gkp_validate_leakage(params, 30, &retained) == GKP_OK);
    CHECK(retained > 0.0);
    CHECK(retained <= 1.0 + 1e-12);

    REQUIRE(gkp_record_trace_csv(rec, 0, &text) == GKP_OK);
    CHECK(take(text).rfind("iteration,infidelity,best_infidelity\n", 0) == 0);
    CHECK(gkp_record_trace_csv(rec, 7, &text) == GKP_ERR_INVALID_ARGUMENT);
    REQUIRE(gkp_record_to_json(rec, &text) == GKP_OK);
    CHECK(take(text).find("\"trials\"") != std::string::npos);

    gkp_params_free(again);
    gkp_params_free(params);
    gkp_record_free(rec);

    cfg.trials = 0;
    CHECK(gkp_optimize(0.4, GKP_LABEL_ZERO, 20, 2, 0.05, &cfg, &rec) == GKP_ERR_CONFIGURATION);
}

TEST_CASE("error-correction round") {
    StateGuard data;
    REQUIRE(gkp_state_target(0.3, GKP_LABEL_ZERO, 36, 0.05, &data.ptr) == GKP_OK);
    gkp_ec_result r{};
    StateGuard post;
    REQUIRE(gkp_ec_round(data.ptr, data.ptr, 11, 0.0, &r, &post.ptr) == GKP_OK);
    CHECK(std::abs(r.marginal_norm - 1.0) < 1e-4);
    CHECK(std::abs(r.correction) <= std::sqrt(M_PI) / 2 + 1e-12);
    CHECK(r.correction == doctest::Approx(gkp_ec_correction(r.p_sample)));
    CHECK(gkp_state_cutoff(post.ptr) == 36);
    gkp_ec_result again{};
    REQUIRE(gkp_ec_round(data.ptr, data.ptr, 11, 0.0, &again, nullptr) == GKP_OK);
    CHECK(again.p_sample == r.p_sample);
    CHECK(gkp_ec_round(data.ptr, nullptr, 11, 0.0, &r, nullptr) == GKP_ERR_INVALID_ARGUMENT);
}
