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

#include "gkpforge/gkpforge.h"

#include <cstring>
#include <new>
#include <string>

#include "gkpforge/circuit.hpp"
#include "gkpforge/error.hpp"
#include "gkpforge/error_metrics.hpp"
#include "gkpforge/gkp_states.hpp"
#include "gkpforge/logical_ec.hpp"
#include "gkpforge/optimizer.hpp"
#include "gkpforge/serialization.hpp"

struct gkp_state {
    gkpforge::StateRecord record;
};

struct gkp_params {
    gkpforge::CircuitParams params;
};

struct gkp_record {
    gkpforge::OptimizationRecord record;
};

namespace {

thread_local std::string last_error;
thread_local int last_required_cutoff = 0;

gkp_status to_status(gkpforge::ErrorCode code) {
    // ErrorCode and gkp_status share their numbering.
    return static_cast<gkp_status>(static_cast<int>(code));
}

template <typename F> gkp_status guarded(F &&body) {
    last_error.clear();
    last_required_cutoff = 0;
    try {
        body();
        return GKP_OK;
    } catch (const gkpforge::CutoffTooSmallError &e) {
        last_error = e.what();
        last_required_cutoff = e.required_cutoff();
        return GKP_ERR_CUTOFF_TOO_SMALL;
    } catch (const gkpforge::Error &e) {
        last_error = e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc &) {
        last_error = "out of memory";
        return GKP_ERR_RESOURCE_LIMIT;
    } catch (const std::exception &e) {
        last_error = e.what();
        return GKP_ERR_INTERNAL;
    }
}

void check_out(const void *ptr, const char *name) {
    gkpforge::require(ptr != nullptr, gkpforge::ErrorCode::InvalidArgument, std::string(name) + " must not be NULL");
}

gkpforge::LogicalLabel to_label(gkp_label mu) {
    switch (mu) {
    case GKP_LABEL_ZERO:
        return gkpforge::LogicalLabel::Zero;
    case GKP_LABEL_ONE:
        return gkpforge::LogicalLabel::One;
    case GKP_LABEL_H:
        return gkpforge::LogicalLabel::H;
    }
    gkpforge::fail(gkpforge::ErrorCode::InvalidArgument, "unknown logical label");
}

gkp_label from_label(gkpforge::LogicalLabel mu) {
    switch (mu) {
    case gkpforge::LogicalLabel::Zero:
        return GKP_LABEL_ZERO;
    case gkpforge::LogicalLabel::One:
        return GKP_LABEL_ONE;
    case gkpforge::LogicalLabel::H:
        break;
    }
    return GKP_LABEL_H;
}

char *copy_string(const std::string &text) {
    char *out = new char[text.size() + 1];
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

gkpforge::ErrorProbabilityConfig to_error_config(const gkp_error_config *cfg) {
    gkpforge::ErrorProbabilityConfig out;
    if (cfg != nullptr) {
        out.bound = cfg->bound;
        out.quad_nodes = cfg->quad_nodes;
        out.convergence_tol = cfg->convergence_tol;
        out.reference = to_label(cfg->reference);
    }
    return out;
}

gkp_state *wrap(gkpforge::FockVector state, double delta, gkpforge::LogicalLabel mu) {
    return new gkp_state{{delta, mu, std::move(state)}};
}

} // namespace

extern "C" {

const char *gkp_version(void) { return GKPFORGE_VERSION_STRING; }
const char *gkp_last_error(void) { return last_error.c_str(); }
int gkp_last_required_cutoff(void) { return last_required_cutoff; }
void gkp_string_free(char *text) { delete[] text; }

gkp_status gkp_label_parse(const char *text, gkp_label *out) {
    return guarded([&] {
        check_out(text, "text");
        check_out(out, "out");
        *out = from_label(gkpforge::parse_label(text));
    });
}

gkp_status gkp_state_target(double delta, gkp_label mu, int cutoff, double max_leakage, gkp_state **out) {
    return guarded([&] {
        check_out(out, "out");
        const gkpforge::GkpTargetSpec spec{to_label(mu), delta, cutoff};
        *out = wrap(gkpforge::target_state(spec, max_leakage), delta, spec.mu);
    });
}

gkp_status gkp_target_leakage(double delta, gkp_label mu, int cutoff, double *out) {
    return guarded([&] {
        check_out(out, "out");
        *out = gkpforge::target_leakage({to_label(mu), delta, cutoff});
    });
}

gkp_status gkp_converged_cutoff(double delta, gkp_label mu, double tol, int *out) {
    return guarded([&] {
        check_out(out, "out");
        *out = gkpforge::converged_cutoff(delta, to_label(mu), tol);
    });
}

gkp_status gkp_select_cutoff(double delta, gkp_label mu, int *out) {
    return guarded([&] {
        check_out(out, "out");
        *out = gkpforge::select_cutoff(delta, to_label(mu));
    });
}

double gkp_squeezing_db(double delta) { return gkpforge::squeezing_db(delta); }
double gkp_delta_from_db(double s_db) { return gkpforge::delta_from_db(s_db); }

gkp_status gkp_twirled_error_probability(double delta, double *closed_form, double *quadrature) {
    return guarded([&] {
        gkpforge::require(delta > 0.0, gkpforge::ErrorCode::InvalidArgument, "delta must be positive");
        if (closed_form != nullptr) {
            *closed_form = gkpforge::twirled_error_probability({delta});
        }
        if (quadrature != nullptr) {
            *quadrature = gkpforge::twirled_error_probability_quadrature({delta});
        }
    });
}

double gkp_threshold_error_probability(void) { return gkpforge::threshold_error_probability(); }

gkp_status gkp_state_from_json(const char *json, gkp_state **out) {
    return guarded([&] {
        check_out(json, "json");
        check_out(out, "out");
        *out = new gkp_state{gkpforge::state_from_json(json)};
    });
}

gkp_status gkp_state_to_json(const gkp_state *state, char **out) {
    return guarded([&] {
        check_out(state, "state");
        check_out(out, "out");
        *out = copy_string(gkpforge::state_to_json(state->record));
    });
}

void gkp_state_free(gkp_state *state) { delete state; }
int gkp_state_cutoff(const gkp_state *state) { return state ? state->record.state.cutoff() : 0; }
double gkp_state_delta(const gkp_state *state) { return state ? state->record.delta : 0.0; }

gkp_status gkp_state_amplitudes(const gkp_state *state, double *re_im, size_t capacity) {
    return guarded([&] {
        check_out(state, "state");
        check_out(re_im, "re_im");
        const auto &amps = state->record.state.amplitudes();
        gkpforge::require(capacity >= 2 * static_cast<size_t>(amps.size()), gkpforge::ErrorCode::InvalidDimension,
                          "amplitude buffer too small");
        for (Eigen::Index n = 0; n < amps.size(); ++n) {
            re_im[2 * n] = amps[n].real();
            re_im[2 * n + 1] = amps[n].imag();
        }
    });
}

gkp_status gkp_state_density(const gkp_state *state, gkp_basis basis, double *x, double *rho, size_t capacity,
                             size_t *count) {
    return guarded([&] {
        check_out(state, "state");
        check_out(count, "count");
        const auto grid = gkpforge::QuadratureGrid::for_cutoff(state->record.state.cutoff());
        *count = grid.size();
        if (x == nullptr) {
            return;
        }
        check_out(rho, "rho");
        gkpforge::require(capacity >= grid.size(), gkpforge::ErrorCode::InvalidDimension, "density buffer too small");
        const auto values = gkpforge::density(state->record.state, grid,
                                              basis == GKP_BASIS_MOMENTUM ? gkpforge::Basis::Momentum
                                                                          : gkpforge::Basis::Position);
        std::copy(grid.points.begin(), grid.points.end(), x);
        std::copy(values.begin(), values.end(), rho);
    });
}

gkp_status gkp_state_apply_logical(const gkp_state *state, gkp_logical_gate gate, double parameter, gkp_state **out) {
    return guarded([&] {
        check_out(state, "state");
        check_out(out, "out");
        gkpforge::LogicalGate g;
        switch (gate) {
        case GKP_LOGICAL_XBAR:
            g.kind = gkpforge::LogicalGateKind::Xbar;
            break;
        case GKP_LOGICAL_ZBAR:
            g.kind = gkpforge::LogicalGateKind::Zbar;
            break;
        case GKP_LOGICAL_FOURIER:
            g.kind = gkpforge::LogicalGateKind::Fourier;
            if (parameter != 0.0) {
                g.angle = parameter;
            }
            break;
        case GKP_LOGICAL_SBAR:
            g.kind = gkpforge::LogicalGateKind::Sbar;
            g.s = parameter;
            break;
        default:
            gkpforge::fail(gkpforge::ErrorCode::UnsupportedGate, "unknown logical gate");
        }
        *out = wrap(gkpforge::apply_logical(state->record.state, g), state->record.delta, state->record.mu);
    });
}

void gkp_error_config_default(gkp_error_config *cfg) {
    if (cfg == nullptr) {
        return;
    }
    const gkpforge::ErrorProbabilityConfig d;
    *cfg = {d.bound, d.quad_nodes, d.convergence_tol, from_label(d.reference)};
}

gkp_status gkp_fidelity(const gkp_state *a, const gkp_state *b, double *out) {
    return guarded([&] {
        check_out(a, "a");
        check_out(b, "b");
        check_out(out, "out");
        *out = gkpforge::fidelity(a->record.state, b->record.state);
    });
}

gkp_status gkp_error_probability(const gkp_state *state, const gkp_error_config *cfg, double *out) {
    return guarded([&] {
        check_out(state, "state");
        check_out(out, "out");
        *out = gkpforge::error_probability(state->record.state, to_error_config(cfg));
    });
}

void gkp_optimizer_config_default(gkp_optimizer_config *cfg) {
    if (cfg == nullptr) {
        return;
    }
    const gkpforge::OptimizerConfig d;
    cfg->trials = d.trials;
    cfg->max_iters = d.max_iters;
    cfg->step_size = d.step_size;
    cfg->final_step_ratio = d.final_step_ratio;
    cfg->kerr_step_scale = d.kerr_step_scale;
    cfg->beta1 = d.beta1;
    cfg->beta2 = d.beta2;
    cfg->init_c = d.init_scale.c;
    cfg->init_d = d.init_scale.d;
    cfg->init_k = d.init_scale.k;
    cfg->init_r = d.init_scale.r;
    cfg->seed = d.rng_seed;
    cfg->early_stop_infidelity = d.early_stop_infidelity;
    cfg->plateau_window = d.plateau_window;
    cfg->plateau_tol = d.plateau_tol;
    cfg->working_margin = d.working_margin;
    cfg->guard_band = d.guard_band;
    cfg->threads = d.threads;
}

int gkp_default_blocks(double delta) { return gkpforge::default_blocks(delta); }
int gkp_default_trials(double delta) { return gkpforge::default_trials(delta); }

gkp_status gkp_optimize(double delta, gkp_label mu, int cutoff, int blocks, double max_leakage,
                        const gkp_optimizer_config *cfg, gkp_record **out) {
    return guarded([&] {
        check_out(cfg, "cfg");
        check_out(out, "out");
        gkpforge::OptimizerConfig c;
        c.trials = cfg->trials;
        c.max_iters = cfg->max_iters;
        c.step_size = cfg->step_size;
        c.final_step_ratio = cfg->final_step_ratio;
        c.kerr_step_scale = cfg->kerr_step_scale;
        c.beta1 = cfg->beta1;
        c.beta2 = cfg->beta2;
        c.init_scale = {cfg->init_c, cfg->init_d, cfg->init_k, cfg->init_r};
        c.rng_seed = cfg->seed;
        c.early_stop_infidelity = cfg->early_stop_infidelity;
        c.plateau_window = cfg->plateau_window;
        c.plateau_tol = cfg->plateau_tol;
        c.working_margin = cfg->working_margin;
        c.guard_band = cfg->guard_band;
        c.threads = cfg->threads;
        *out = new gkp_record{gkpforge::optimize({to_label(mu), delta, cutoff}, blocks, c, max_leakage)};
    });
}

void gkp_record_free(gkp_record *record) { delete record; }
double gkp_record_best_fidelity(const gkp_record *record) { return record ? record->record.best_fidelity : 0.0; }
int gkp_record_best_trial(const gkp_record *record) { return record ? record->record.best_trial : -1; }
int gkp_record_target_cutoff(const gkp_record *record) { return record ? record->record.target_cutoff : 0; }
int gkp_record_trial_count(const gkp_record *record) {
    return record ? static_cast<int>(record->record.trials.size()) : 0;
}
double gkp_record_wallclock(const gkp_record *record) { return record ? record->record.wallclock_seconds : 0.0; }

gkp_status gkp_record_best_params(const gkp_record *record, gkp_params **out) {
    return guarded([&] {
        check_out(record, "record");
        check_out(out, "out");
        *out = new gkp_params{record->record.best_params};
    });
}

gkp_status gkp_record_to_json(const gkp_record *record, char **out) {
    return guarded([&] {
        check_out(record, "record");
        check_out(out, "out");
        *out = copy_string(gkpforge::record_to_json(record->record));
    });
}

gkp_status gkp_record_trace_csv(const gkp_record *record, int trial, char **out) {
    return guarded([&] {
        check_out(record, "record");
        check_out(out, "out");
        const auto &trials = record->record.trials;
        gkpforge::require(trial >= 0 && static_cast<size_t>(trial) < trials.size(),
                          gkpforge::ErrorCode::InvalidArgument, "trial index out of range");
        *out = copy_string(gkpforge::trace_table(trials[static_cast<size_t>(trial)]).str());
    });
}

gkp_status gkp_params_from_json(const char *json, gkp_params **out) {
    return guarded([&] {
        check_out(json, "json");
        check_out(out, "out");
        *out = new gkp_params{gkpforge::params_from_json(json)};
    });
}

gkp_status gkp_params_to_json(const gkp_params *params, char **out) {
    return guarded([&] {
        check_out(params, "params");
        check_out(out, "out");
        *out = copy_string(gkpforge::params_to_json(params->params));
    });
}

void gkp_params_free(gkp_params *params) { delete params; }
int gkp_params_blocks(const gkp_params *params) {
    return params ? static_cast<int>(params->params.blocks.size()) : 0;
}
int gkp_params_cutoff(const gkp_params *params) { return params ? params->params.cutoff : 0; }
double gkp_params_delta(const gkp_params *params) { return params ? params->params.target_delta : 0.0; }
gkp_label gkp_params_label(const gkp_params *params) {
    return params ? from_label(params->params.target) : GKP_LABEL_ZERO;
}

gkp_status gkp_forward(const gkp_params *params, gkp_state **out) {
    return guarded([&] {
        check_out(params, "params");
        check_out(out, "out");
        *out = wrap(gkpforge::forward(params->params), params->params.target_delta, params->params.target);
    });
}

gkp_status gkp_validate_leakage(const gkp_params *params, int margin, double *retained) {
    return guarded([&] {
        check_out(params, "params");
        check_out(retained, "retained");
        *retained = gkpforge::validate_leakage(params->params, margin).retained;
    });
}

double gkp_ec_correction(double p) { return gkpforge::ec_correction(p); }

gkp_status gkp_ec_round(const gkp_state *data, const gkp_state *ancilla, uint64_t seed, double momentum_spacing,
                        gkp_ec_result *out, gkp_state **post_state) {
    return guarded([&] {
        check_out(data, "data");
        check_out(ancilla, "ancilla");
        check_out(out, "out");
        gkpforge::EcConfig cfg;
        if (momentum_spacing > 0.0) {
            cfg.momentum_spacing = momentum_spacing;
        }
        gkpforge::EcOutcome r = gkpforge::ec_round(data->record.state, ancilla->record.state, seed, cfg);
        *out = {r.p_sample, r.correction, r.p_error_before, r.p_error_after, r.marginal_norm};
        if (post_state != nullptr) {
            *post_state = wrap(std::move(r.post_state), data->record.delta, data->record.mu);
        }
    });
}

} // extern "C"
