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

#include "gkpforge/gkp_states.hpp"
#include "gkpforge/error.hpp"
#include "gkpforge/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace gkpforge {

namespace {

// Envelope weights below this (relative to 1) are dropped from the lattice sum.
constexpr double kEnvelopeFloor = 1e-18;
// Peak profiles are evaluated within this many widths of their centre.
constexpr double kPeakReach = 40.0;

struct Lattice {
    std::vector<double> centres;
    std::vector<double> weights;
};

double lattice_reach(double delta) { return std::sqrt(-2.0 * std::log(kEnvelopeFloor)) / delta; }

Lattice lattice(double delta, int parity) {
    Lattice lat;
    const double reach = lattice_reach(delta);
    const auto k_max = static_cast<long>(std::ceil(reach / (2.0 * kSqrtPi))) + 1;
    for (long k = -k_max; k <= k_max; ++k) {
        const double x = static_cast<double>(2 * k + parity) * kSqrtPi;
        if (std::abs(x) > reach) {
            continue;
        }
        lat.centres.push_back(x);
        lat.weights.push_back(std::exp(-0.5 * delta * delta * x * x));
    }
    return lat;
}

// <Psi(a)|Psi(b)> for two width-delta squeezed states.
double peak_overlap(double a, double b, double delta) {
    const double d = a - b;
    return std::exp(-d * d / (4.0 * delta * delta));
}

double gram(const Lattice &a, const Lattice &b, double delta) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.centres.size(); ++i) {
        for (std::size_t j = 0; j < b.centres.size(); ++j) {
            sum += a.weights[i] * b.weights[j] * peak_overlap(a.centres[i], b.centres[j], delta);
        }
    }
    return sum;
}

// Unnormalized real wavefunction sum_k w_k Psi(x_k)(q).
double lattice_wavefunction(const Lattice &lat, double delta, double q) {
    const double prefactor = 1.0 / std::sqrt(std::sqrt(std::numbers::pi * delta * delta));
    const double reach = kPeakReach * delta;
    // Centres are ascending and 2 sqrt(pi) apart.
    const double first = lat.centres.front();
    const double step = 2.0 * kSqrtPi;
    const auto lo = static_cast<long>(std::max(0.0, std::floor((q - reach - first) / step)));
    const auto hi = std::min(static_cast<long>(lat.centres.size()) - 1,
                             static_cast<long>(std::ceil((q + reach - first) / step)));
    double sum = 0.0;
    for (long k = lo; k <= hi; ++k) {
        const double d = q - lat.centres[static_cast<std::size_t>(k)];
        sum += lat.weights[static_cast<std::size_t>(k)] * std::exp(-0.5 * d * d / (delta * delta));
    }
    return prefactor * sum;
}

void check_delta(double delta) {
    require(std::isfinite(delta) && delta > 0.0 && delta <= 1.0, ErrorCode::InvalidArgument,
            "delta must lie in (0, 1], got " + std::to_string(delta));
}

Eigen::VectorXd real_coefficients(double delta, int parity, int count, const ProjectionOptions &opts) {
    const Lattice lat = lattice(delta, parity);
    const double norm = std::sqrt(gram(lat, lat, delta));
    const double spacing = opts.max_spacing > 0.0 ? opts.max_spacing : std::min(0.01, delta / 10.0);
    // Beyond the turning point of h_{count-1} plus a margin every h_n is negligible.
    const double extent = std::min(lattice_reach(delta) + 12.0 * delta, std::sqrt(2.0 * count + 1.0) + 12.0);
    const QuadratureGrid grid = QuadratureGrid::uniform(extent, spacing);
    Eigen::VectorXd coeff = Eigen::VectorXd::Zero(count);
    std::vector<double> h(static_cast<std::size_t>(count));
    Eigen::Map<const Eigen::VectorXd> hv(h.data(), count);
    for (double x : grid.points) {
        const double psi = lattice_wavefunction(lat, delta, x);
        if (psi == 0.0) {
            continue;
        }
        hermite_functions(x, h);
        coeff.noalias() += psi * hv;
    }
    return coeff * (grid.spacing / norm);
}

} // namespace

LogicalLabel parse_label(std::string_view text) {
    if (text == "0") {
        return LogicalLabel::Zero;
    }
    if (text == "1") {
        return LogicalLabel::One;
    }
    if (text == "H" || text == "h") {
        return LogicalLabel::H;
    }
    fail(ErrorCode::InvalidArgument, "logical label must be 0, 1 or H, got '" + std::string(text) + "'");
}

std::string_view label_name(LogicalLabel label) {
    switch (label) {
    case LogicalLabel::Zero:
        return "0";
    case LogicalLabel::One:
        return "1";
    case LogicalLabel::H:
        return "H";
    }
    return "?";
}

void GkpTargetSpec::validate() const {
    check_delta(delta);
    require(cutoff >= 1, ErrorCode::InvalidDimension, "cutoff must be >= 1");
}

Complex analytic_wavefunction(double delta, LogicalLabel mu, double x) {
    check_delta(delta);
    const Lattice even = lattice(delta, 0);
    const Lattice odd = lattice(delta, 1);
    const double n0 = std::sqrt(gram(even, even, delta));
    const double n1 = std::sqrt(gram(odd, odd, delta));
    switch (mu) {
    case LogicalLabel::Zero:
        return lattice_wavefunction(even, delta, x) / n0;
    case LogicalLabel::One:
        return lattice_wavefunction(odd, delta, x) / n1;
    case LogicalLabel::H: {
        const double overlap = gram(even, odd, delta) / (n0 * n1);
        const Complex a = std::polar(1.0, -std::numbers::pi / 8.0);
        const Complex b = std::polar(1.0, std::numbers::pi / 8.0);
        const double norm = std::sqrt(1.0 + std::real(std::conj(a) * b) * overlap);
        return (a * lattice_wavefunction(even, delta, x) / n0 + b * lattice_wavefunction(odd, delta, x) / n1) /
               (std::numbers::sqrt2 * norm);
    }
    }
    return {};
}

Eigen::VectorXcd target_coefficients(double delta, LogicalLabel mu, int count, const ProjectionOptions &opts) {
    check_delta(delta);
    require(count >= 1, ErrorCode::InvalidDimension, "coefficient count must be >= 1");
    if (mu != LogicalLabel::H) {
        return real_coefficients(delta, mu == LogicalLabel::One ? 1 : 0, count, opts).cast<Complex>();
    }
    const Lattice even = lattice(delta, 0);
    const Lattice odd = lattice(delta, 1);
    const double overlap =
        gram(even, odd, delta) / std::sqrt(gram(even, even, delta) * gram(odd, odd, delta));
    const Complex a = std::polar(1.0, -std::numbers::pi / 8.0);
    const Complex b = std::polar(1.0, std::numbers::pi / 8.0);
    const double norm = std::sqrt(1.0 + std::real(std::conj(a) * b) * overlap);
    const Eigen::VectorXcd c0 = real_coefficients(delta, 0, count, opts).cast<Complex>();
    const Eigen::VectorXcd c1 = real_coefficients(delta, 1, count, opts).cast<Complex>();
    return (a * c0 + b * c1) / (std::numbers::sqrt2 * norm);
}

double target_leakage(const GkpTargetSpec &spec, const ProjectionOptions &opts) {
    spec.validate();
    const Eigen::VectorXcd c = target_coefficients(spec.delta, spec.mu, spec.cutoff, opts);
    return std::max(0.0, 1.0 - c.squaredNorm());
}

int converged_cutoff(double delta, LogicalLabel mu, double tol, int cap, const ProjectionOptions &opts) {
    check_delta(delta);
    require(tol > 0.0, ErrorCode::InvalidArgument, "leakage tolerance must be positive");
    int count = 64;
    while (true) {
        count = std::min(count, cap);
        const Eigen::VectorXcd c = target_coefficients(delta, mu, count, opts);
        double kept = 0.0;
        for (int n = 0; n < count; ++n) {
            kept += std::norm(c[n]);
            if (1.0 - kept <= tol) {
                return n + 1;
            }
        }
        require(count < cap, ErrorCode::ResourceLimit,
                "no cutoff up to " + std::to_string(cap) + " reaches leakage " + std::to_string(tol));
        count *= 2;
    }
}

FockVector target_state(const GkpTargetSpec &spec, double max_leakage, const ProjectionOptions &opts) {
    spec.validate();
    const Eigen::VectorXcd c = target_coefficients(spec.delta, spec.mu, spec.cutoff, opts);
    const double leakage = std::max(0.0, 1.0 - c.squaredNorm());
    if (leakage > max_leakage) {
        const int needed = converged_cutoff(spec.delta, spec.mu, max_leakage, 4000, opts);
        std::ostringstream msg;
        msg << "cutoff " << spec.cutoff << " too small for delta " << spec.delta << ": " << leakage
            << " of the probability lies above it (allowed " << max_leakage << "); need cutoff >= " << needed;
        throw CutoffTooSmallError(msg.str(), needed);
    }
    return FockVector(Eigen::VectorXcd(c / c.norm()));
}

double squeezing_db(double delta) {
    require(delta > 0.0, ErrorCode::InvalidArgument, "delta must be positive");
    return -10.0 * std::log10(delta * delta);
}

double delta_from_db(double s_db) {
    require(std::isfinite(s_db), ErrorCode::InvalidArgument, "squeezing must be finite");
    return std::pow(10.0, -s_db / 20.0);
}

double twirled_error_probability(const TwirledModel &model, double bound) {
    require(model.delta > 0.0, ErrorCode::InvalidArgument, "delta must be positive");
    const double keep = std::erf(bound / model.delta);
    return 1.0 - keep * keep;
}

double twirled_error_probability_quadrature(const TwirledModel &model, double bound) {
    const double delta = model.delta;
    require(delta > 0.0, ErrorCode::InvalidArgument, "delta must be positive");
    // One period q in (-sqrt(pi), sqrt(pi)] of the Gaussian comb with spacing 2 sqrt(pi).
    auto comb = [delta](double u) {
        double sum = 0.0;
        for (int k = -4; k <= 4; ++k) {
            const double d = u - 2.0 * k * kSqrtPi;
            sum += std::exp(-d * d / (delta * delta));
        }
        return sum;
    };
    auto integrate = [&](double lo, double hi) {
        const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / (0.5 * delta))));
        const MappedRule rule = gauss_legendre_on(lo, hi, 20, panels);
        double sum = 0.0;
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
            sum += rule.w[i] * comb(rule.x[i]);
        }
        return sum;
    };
    const double keep = integrate(-bound, bound) / integrate(-kSqrtPi, kSqrtPi);
    return 1.0 - keep * keep;
}

double threshold_error_probability() { return twirled_error_probability(TwirledModel{kThresholdDelta}); }

} // namespace gkpforge
