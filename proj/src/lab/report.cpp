#include "explab/lab/report.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "explab/errors.hpp"

namespace explab::lab {

namespace {

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string pad(const std::string& text, int width) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-*s", width, text.c_str());
    return buf;
}

std::string metadata_line(const ConvergenceReport& r) {
    std::ostringstream os;
    os << "# problem=" << r.problem << " n=" << r.n << " horizon=" << fmt("%.10g", r.horizon)
       << " method=" << r.method << " correction=" << r.correction << " reference=" << r.reference
       << " steps=" << r.step_kind;
    for (std::size_t k = 0; k < r.floor.size(); ++k) os << " floor_" << r.norms[k].name() << '=' << fmt("%.3e", r.floor[k]);
    std::string flagged;
    std::string failed;
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        auto& target = r.rows[i].failed ? failed : flagged;
        if (r.rows[i].failed || r.rows[i].below_floor) target += (target.empty() ? "" : ";") + std::to_string(i + 1);
    }
    os << " below_floor_rows=" << (flagged.empty() ? "none" : flagged);
    os << " failed_rows=" << (failed.empty() ? "none" : failed);
    return os.str();
}

}  // namespace

std::string iso_timestamp_now() {
    const std::time_t now = std::time(nullptr);
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buf;
}

void write_csv(const ConvergenceReport& report, std::ostream& out, std::string_view timestamp) {
    if (report.rows.empty()) throw InvalidArgument("cannot write an empty report");
    out << "# explab v" << EXPLAB_VERSION << ' ' << timestamp << '\n';
    out << metadata_line(report) << '\n';
    out << "step_size";
    for (const auto& kind : report.norms) out << ',' << kind.name() << "_error," << kind.name() << "_order";
    out << '\n';
    for (const auto& row : report.rows) {
        out << fmt("%.16e", row.step_size);
        for (std::size_t k = 0; k < report.norms.size(); ++k) {
            out << ',' << (row.failed ? std::string("nan") : fmt("%.16e", row.errors[k])) << ',';
            if (k < row.orders.size() && row.orders[k]) out << fmt("%.16e", *row.orders[k]);
        }
        out << '\n';
    }
}

void write_csv_file(const ConvergenceReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error("cannot open " + path + " for writing");
    write_csv(report, out, iso_timestamp_now());
    if (!out) throw Error("write to " + path + " failed");
}

void print_table(const ConvergenceReport& report, std::ostream& out) {
    out << report.problem << "  method " << report.method << "  correction " << report.correction << "  n "
        << report.n << "  reference " << report.reference << '\n';
    out << "   step size";
    for (const auto& kind : report.norms) {
        char head[64];
        std::snprintf(head, sizeof head, "  %12s  %6s", (kind.name() + " error").c_str(), "order");
        out << head;
    }
    out << '\n';
    for (const auto& row : report.rows) {
        out << fmt("%12.3e", row.step_size);
        for (std::size_t k = 0; k < report.norms.size(); ++k) {
            if (row.failed) {
                out << "        failed        ";
                continue;
            }
            out << "  " << fmt("%12.3e", row.errors[k]) << "  ";
            out << (row.orders[k] ? fmt("%6.2f", *row.orders[k]) : std::string("    --"));
        }
        if (row.below_floor) out << "  *";
        if (row.failed) out << "  " << row.failure;
        out << '\n';
    }
    if (!report.floor.empty()) {
        out << "floor:";
        for (std::size_t k = 0; k < report.floor.size(); ++k)
            out << ' ' << report.norms[k].name() << '=' << fmt("%.3e", report.floor[k]);
        out << "  (* = error below 10x floor)\n";
    }
    out << fmt("wall time %.2f s\n", report.wall_seconds);
}

void print_side_by_side(const std::vector<ConvergenceReport>& reports, const NormKind& norm, std::ostream& out) {
    if (reports.empty()) return;
    std::vector<std::size_t> column;
    for (const auto& r : reports) {
        std::size_t k = 0;
        while (k < r.norms.size() && !(r.norms[k] == norm)) ++k;
        if (k == r.norms.size()) throw InvalidArgument("report lacks norm " + norm.name());
        column.push_back(k);
    }
    out << "            ";
    for (const auto& r : reports) out << "  " << pad(r.method, 20);
    out << "\n   step size";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        char head[64];
        std::snprintf(head, sizeof head, "  %12s  %6s", (norm.name() + " error").c_str(), "order");
        out << head;
    }
    out << '\n';
    for (std::size_t i = 0; i < reports.front().rows.size(); ++i) {
        out << fmt("%12.3e", reports.front().rows[i].step_size);
        for (std::size_t r = 0; r < reports.size(); ++r) {
            if (i >= reports[r].rows.size() || reports[r].rows[i].failed) {
                out << "        failed        ";
                continue;
            }
            const auto& row = reports[r].rows[i];
            out << "  " << fmt("%12.3e", row.errors[column[r]]) << "  "
                << (row.orders[column[r]] ? fmt("%6.2f", *row.orders[column[r]]) : std::string("    --"));
        }
        out << '\n';
    }
}

std::size_t CsvTable::column(std::string_view name) const {
    for (std::size_t k = 0; k < columns.size(); ++k)
        if (columns[k] == name) return k;
    throw UnknownName("column " + std::string(name));
}

CsvTable read_csv(std::istream& in) {
    CsvTable table;
    std::string line;
    auto cells = [](const std::string& text) {
        std::vector<std::string> out;
        std::stringstream ss(text);
        std::string cell;
        while (std::getline(ss, cell, ',')) out.push_back(cell);
        if (!text.empty() && text.back() == ',') out.emplace_back();
        return out;
    };
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        if (table.columns.empty()) {
            table.columns = cells(line);
            continue;
        }
        std::vector<std::optional<double>> row;
        for (const auto& c : cells(line)) row.push_back(c.empty() ? std::nullopt : std::optional<double>(std::stod(c)));
        row.resize(table.columns.size());
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace explab::lab
