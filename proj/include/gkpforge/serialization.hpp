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

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "gkpforge/circuit.hpp"
#include "gkpforge/error_metrics.hpp"
#include "gkpforge/optimizer.hpp"

namespace gkpforge {

struct StateRecord {
    double delta = 0.0;
    LogicalLabel mu = LogicalLabel::Zero;
    FockVector state{1};
};

std::string state_to_json(const StateRecord &record);
StateRecord state_from_json(std::string_view text);

std::string params_to_json(const CircuitParams &params);
CircuitParams params_from_json(std::string_view text);

std::string record_to_json(const OptimizationRecord &record);

struct QualitySummary {
    QualityReport quality;
    double retained = 1.0;
    int leakage_margin = 0;
    int blocks = 0;
    int cutoff = 0;
};
std::string report_to_json(const QualitySummary &summary);

/// 12 significant digits, the format of every CSV value.
std::string format_number(double value);

class CsvTable {
  public:
    explicit CsvTable(std::vector<std::string> header);
    void add_row(const std::vector<double> &values);
    [[nodiscard]] std::string str() const;
    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }

  private:
    std::size_t columns_;
    std::size_t rows_ = 0;
    std::string text_;
};

/// (iteration, infidelity, best_infidelity) rows of one trial.
CsvTable trace_table(const TrialResult &trial);

/// Writes through a temporary file in the same directory and renames it into
/// place, so readers never see a partial file.
void write_file_atomic(const std::filesystem::path &path, std::string_view content);
std::string read_file(const std::filesystem::path &path);

} // namespace gkpforge
