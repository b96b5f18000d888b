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

#include "cascade/sweep.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cascade/errors.hpp"

namespace cascade {

namespace {

SweepRow evaluate_row(const RowFunction& fn, double x, std::size_t n_values) {
    SweepRow row;
    row.x = x;
    try {
        row.values = fn(x);
        if (row.values.size() != n_values)
            throw NumericalError("row produced " + std::to_string(row.values.size()) +
                                 " values, expected " + std::to_string(n_values));
    } catch (const std::exception& e) {
        row.values.assign(n_values, std::numeric_limits<double>::quiet_NaN());
        row.error = e.what();
    }
    return row;
}

} // namespace

std::vector<SweepRow> run_sweep_serial(const RowFunction& fn,
                                       const std::vector<double>& grid,
                                       std::size_t n_values) {
    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (double x : grid) rows.push_back(evaluate_row(fn, x, n_values));
    return rows;
}

std::vector<SweepRow> run_sweep(const RowFunction& fn, const std::vector<double>& grid,
                                std::size_t n_values, int jobs) {
    if (grid.empty()) throw ChainError("sweep: empty grid");
#ifdef _OPENMP
    if (jobs != 1) {
        std::vector<SweepRow> rows(grid.size());
        const auto count = static_cast<long>(grid.size());
#pragma omp parallel for schedule(dynamic) num_threads(jobs > 0 ? jobs : omp_get_max_threads())
        for (long i = 0; i < count; ++i) {
            rows[i] = evaluate_row(fn, grid[i], n_values);
        }
        return rows;
    }
#else
    (void)jobs;
#endif
    return run_sweep_serial(fn, grid, n_values);
}

std::vector<double> linspace(double start, double stop, std::size_t count) {
    if (count == 0) throw ChainError("grid: count must be >= 1");
    std::vector<double> grid(count);
    if (count == 1) {
        grid[0] = start;
        return grid;
    }
    for (std::size_t i = 0; i < count; ++i) {
        grid[i] = start + (stop - start) * static_cast<double>(i) /
                              static_cast<double>(count - 1);
    }
    return grid;
}

std::vector<double> logspace(double start, double stop, std::size_t count) {
    if (!(start > 0.0) || !(stop > 0.0))
        throw ChainError("grid: log spacing needs positive endpoints");
    auto grid = linspace(std::log(start), std::log(stop), count);
    for (double& x : grid) x = std::exp(x);
    return grid;
}

std::vector<double> parse_grid(std::string_view text) {
    bool log_scale = false;
    if (text.starts_with("log:")) {
        log_scale = true;
        text.remove_prefix(4);
    }
    std::array<std::string_view, 3> parts;
    std::size_t n_parts = 0, pos = 0;
    while (n_parts < 3) {
        const std::size_t colon = text.find(':', pos);
        if (colon == std::string_view::npos) {
            parts[n_parts++] = text.substr(pos);
            break;
        }
        parts[n_parts++] = text.substr(pos, colon - pos);
        pos = colon + 1;
    }
    if (n_parts != 3) throw ChainError("grid: expected start:stop:count");
    const auto to_double = [](std::string_view s) {
        double v = 0.0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
            throw ChainError("grid: bad number \"" + std::string(s) + "\"");
        return v;
    };
    const double start = to_double(parts[0]);
    const double stop = to_double(parts[1]);
    const double count_d = to_double(parts[2]);
    if (!(count_d >= 1.0) || count_d != std::floor(count_d))
        throw ChainError("grid: count must be a positive integer");
    const auto count = static_cast<std::size_t>(count_d);
    return log_scale ? logspace(start, stop, count) : linspace(start, stop, count);
}

std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

void CsvTable::add_row(const std::vector<double>& values) {
    std::vector<std::string> row;
    row.reserve(values.size());
    for (double v : values) row.push_back(format_double(v));
    cells.push_back(std::move(row));
}

void CsvTable::add_row(std::vector<std::string> row) { cells.push_back(std::move(row)); }

namespace {

std::string csv_escape(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string quoted = "\"";
    for (char ch : cell) {
        if (ch == '"') quoted += '"';
        quoted += ch;
    }
    quoted += '"';
    return quoted;
}

} // namespace

void write_csv(std::ostream& out, const CsvTable& table) {
    for (const auto& c : table.comments) out << "# " << c << "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out << table.columns[i] << (i + 1 < table.columns.size() ? "," : "");
    }
    out << "\n";
    for (const auto& row : table.cells) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << csv_escape(row[i]) << (i + 1 < row.size() ? "," : "");
        }
        out << "\n";
    }
}

std::string to_csv_string(const CsvTable& table) {
    std::ostringstream out;
    write_csv(out, table);
    return out.str();
}

CsvTable sweep_table(std::string_view axis_name, const std::vector<std::string>& value_names,
                     const std::vector<SweepRow>& rows) {
    CsvTable table;
    table.columns.push_back(std::string(axis_name));
    for (const auto& name : value_names) table.columns.push_back(name);
    table.columns.push_back("error");
    for (const auto& row : rows) {
        std::vector<std::string> cells;
        cells.push_back(format_double(row.x));
        for (double v : row.values) cells.push_back(format_double(v));
        cells.push_back(row.error);
        table.add_row(std::move(cells));
    }
    return table;
}

} // namespace cascade
