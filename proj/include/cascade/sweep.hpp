// Copyright 2026 The Cascade Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace cascade {

/// One evaluated grid point. On failure `values` holds NaNs and `error`
/// carries the message; a failed row never aborts the sweep.
struct SweepRow {
    double x = 0.0;
    std::vector<double> values;
    std::string error;
};

/// Pure function evaluated per grid point; must not touch shared state.
using RowFunction = std::function<std::vector<double>(double)>;

/// Reference implementation: evaluates rows one by one, in order.
std::vector<SweepRow> run_sweep_serial(const RowFunction& fn,
                                       const std::vector<double>& grid,
                                       std::size_t n_values);

/// OpenMP-parallel sweep over the grid. Row i of the result is always grid
/// point i regardless of scheduling, and each row is bitwise identical to the
/// serial path. jobs <= 0 uses all cores, jobs == 1 falls back to serial.
std::vector<SweepRow> run_sweep(const RowFunction& fn, const std::vector<double>& grid,
                                std::size_t n_values, int jobs = 0);

std::vector<double> linspace(double start, double stop, std::size_t count);
std::vector<double> logspace(double start, double stop, std::size_t count);

/// Grid syntax "start:stop:count" (linear) or "log:start:stop:count".
std::vector<double> parse_grid(std::string_view text);

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double x);

/// Plot-ready CSV: '#'-prefixed metadata lines, a header, one line per row.
struct CsvTable {
    std::vector<std::string> comments;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> cells;

    void add_row(const std::vector<double>& values);
    void add_row(std::vector<std::string> row);
};

void write_csv(std::ostream& out, const CsvTable& table);
std::string to_csv_string(const CsvTable& table);

/// Assembles the sweep result into a table: axis column, value columns, and a
/// trailing `error` column.
CsvTable sweep_table(std::string_view axis_name, const std::vector<std::string>& value_names,
                     const std::vector<SweepRow>& rows);

} // namespace cascade
