#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "explab/lab/sweep.hpp"

namespace explab::lab {

/// UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string iso_timestamp_now();

/// Line 1 "# explab v<version> <timestamp>", line 2 a deterministic metadata
/// comment, then "step_size,<norm>_error,<norm>_order,..." and one row per
/// step size. Orders of the first row and of failed rows are left empty.
void write_csv(const ConvergenceReport& report, std::ostream& out, std::string_view timestamp);
void write_csv_file(const ConvergenceReport& report, const std::string& path);

/// Plain-text table: step size, then error and order per norm. Rows below
/// the error floor are marked with '*'.
void print_table(const ConvergenceReport& report, std::ostream& out);

/// Several methods side by side in one norm, one column pair per report.
void print_side_by_side(const std::vector<ConvergenceReport>& reports, const NormKind& norm, std::ostream& out);

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::optional<double>>> rows;

    std::size_t column(std::string_view name) const;
};

/// Reads a CSV written by write_csv, skipping '#' comment lines.
CsvTable read_csv(std::istream& in);

}  // namespace explab::lab
