#include "snelfs/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace snelfs {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_cell(const std::string& raw, std::size_t line_no, const std::string& col_name) {
    const std::string cell = trim(raw);
    const auto fail = [&](const char* why) -> DataError {
        return DataError("csv: " + std::string(why) + " at line " + std::to_string(line_no) +
                         ", column '" + col_name + "' (value '" + cell + "')");
    };
    if (cell.empty()) throw fail("empty cell");
    double value = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) throw fail("non-numeric cell");
    if (!std::isfinite(value)) throw fail("non-finite cell");
    return value;
}

bool is_integer_valued(const Vector& y) {
    return std::all_of(y.begin(), y.end(), [](double v) { return std::round(v) == v; });
}

} // namespace

Dataset load_csv(const std::string& path, const CsvOptions& options, CsvLoadReport* report) {
    std::ifstream in(path);
    if (!in) throw DataError("csv: cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw DataError("csv: '" + path + "' is empty");
    std::vector<std::string> header = split_line(line);
    for (auto& h : header) h = trim(h);

    std::size_t target_idx = header.size();
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (header[j] == options.target_column) target_idx = j;
    }
    if (target_idx == header.size()) {
        throw DataError("csv: no column named '" + options.target_column + "' in '" + path + "'");
    }

    std::vector<std::string> feature_names;
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (j != target_idx) feature_names.push_back(header[j]);
    }

    std::vector<double> values;
    Vector y;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cells = split_line(line);
        if (cells.size() != header.size()) {
            throw DataError("csv: line " + std::to_string(line_no) + " has " +
                            std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(header.size()));
        }
        for (std::size_t j = 0; j < cells.size(); ++j) {
            const double v = parse_cell(cells[j], line_no, header[j]);
            if (j == target_idx) {
                y.push_back(v);
            } else {
                values.push_back(v);
            }
        }
    }

    const std::size_t n = y.size();
    const std::size_t m = feature_names.size();
    Dataset ds;
    ds.x = Matrix(n, m, std::move(values));
    ds.y = std::move(y);
    ds.feature_names = std::move(feature_names);

    if (options.forced_task) {
        ds.task = *options.forced_task;
    } else {
        std::map<double, std::size_t> levels;
        for (double v : ds.y) levels.emplace(v, levels.size());
        if (is_integer_valued(ds.y) && levels.size() >= 2 && levels.size() <= options.class_cap) {
            ds.task = levels.size() == 2 ? Task::binary() : Task::multiclass(levels.size());
        } else {
            ds.task = Task::regression();
        }
    }

    if (ds.task.is_classification()) {
        std::map<double, std::size_t> levels;
        for (double v : ds.y) levels.emplace(v, 0);
        std::size_t next = 0;
        bool contiguous = true;
        for (auto& [value, label] : levels) {
            label = next++;
            if (value != static_cast<double>(label)) contiguous = false;
        }
        if (ds.task.class_count() != levels.size()) {
            throw DataError("csv: target has " + std::to_string(levels.size()) +
                            " distinct values but the task expects " +
                            std::to_string(ds.task.class_count()) + " classes");
        }
        if (!contiguous) {
            for (double& v : ds.y) v = static_cast<double>(levels.at(v));
            if (report) {
                report->class_labels.resize(levels.size());
                for (const auto& [value, label] : levels) report->class_labels[label] = value;
                report->warnings.push_back("csv: target labels remapped onto 0.." +
                                           std::to_string(levels.size() - 1));
            }
        }
    }

    validate(ds);
    return ds;
}

void save_csv(const Dataset& ds, const std::string& path, const std::string& target_column) {
    std::ofstream out(path);
    if (!out) throw DataError("csv: cannot write '" + path + "'");
    const auto names =
        ds.feature_names.empty() ? default_feature_names(ds.n_features()) : ds.feature_names;

    for (const auto& name : names) out << name << ',';
    out << target_column << '\n';

    char buf[64];
    const auto write_value = [&](double v) {
        const int len = std::snprintf(buf, sizeof(buf), "%.17g", v);
        out.write(buf, len);
    };
    for (std::size_t i = 0; i < ds.n_samples(); ++i) {
        const double* xi = ds.x.row(i);
        for (std::size_t j = 0; j < ds.n_features(); ++j) {
            write_value(xi[j]);
            out << ',';
        }
        write_value(ds.y[i]);
        out << '\n';
    }
    if (!out) throw DataError("csv: write to '" + path + "' failed");
}

} // namespace snelfs
