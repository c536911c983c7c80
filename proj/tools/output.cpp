#include "output.hpp"

#include <algorithm>

namespace tracecoeff::cli {

namespace {

int g_digits = 30;

void render_table(const Table& t, std::ostream& out) {
    if (!t.title.empty()) out << t.title << '\n';
    std::vector<std::size_t> width(t.headers.size(), 0);
    for (std::size_t c = 0; c < t.headers.size(); ++c) width[c] = t.headers[c].size();
    for (const auto& row : t.rows)
        for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) width[c] = std::max(width[c], row[c].size());
    auto line = [&](const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c) s += "  ";
            s += cells[c];
            if (c + 1 < cells.size()) s.append(width[c] - cells[c].size(), ' ');
        }
        out << s << '\n';
    };
    line(t.headers);
    std::vector<std::string> rule;
    for (auto w : width) rule.emplace_back(w, '-');
    line(rule);
    for (const auto& row : t.rows) line(row);
}

}  // namespace

Format parse_format(const std::string& name) {
    if (name == "table") return Format::table;
    if (name == "json") return Format::json;
    if (name == "csv") return Format::csv;
    throw UsageError("unknown output format '" + name + "' (table, json, csv)");
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void render(const Report& report, Format format, std::ostream& out) {
    switch (format) {
        case Format::json:
            out << report.json.dump(2) << '\n';
            return;
        case Format::csv:
            for (std::size_t i = 0; i < report.tables.size(); ++i) {
                if (i) out << '\n';
                const auto& t = report.tables[i];
                auto line = [&](const std::vector<std::string>& cells) {
                    for (std::size_t c = 0; c < cells.size(); ++c) out << (c ? "," : "") << csv_field(cells[c]);
                    out << '\n';
                };
                line(t.headers);
                for (const auto& row : t.rows) line(row);
            }
            return;
        case Format::table:
            for (std::size_t i = 0; i < report.tables.size(); ++i) {
                if (i) out << '\n';
                render_table(report.tables[i], out);
            }
            if (!report.notes.empty() && !report.tables.empty()) out << '\n';
            for (const auto& n : report.notes) out << n << '\n';
            return;
    }
}

void set_output_digits(int digits) { g_digits = std::clamp(digits, 6, 40); }

std::string num(const Real& x) { return to_decimal(x, g_digits); }

}  // namespace tracecoeff::cli
