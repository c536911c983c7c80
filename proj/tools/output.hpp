#pragma once

#include "json.hpp"
#include "tracecoeff/real.hpp"

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tracecoeff::cli {

using ordered_json = nlohmann::ordered_json;

enum class Format { table, json, csv };

Format parse_format(const std::string& name);

struct Table {
    std::string title;
    std::vector<std::string> headers;
    std::vector<std::vector<std::string>> rows;
};

struct Report {
    ordered_json json = ordered_json::object();
    std::vector<Table> tables;
    std::vector<std::string> notes;  // extra lines for the table format only
};

void render(const Report& report, Format format, std::ostream& out);
std::string csv_field(const std::string& s);

/// Significant digits used for every printed real.
void set_output_digits(int digits);
std::string num(const Real& x);

/// Thrown for malformed or inconsistent command-line input (exit code 2).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace tracecoeff::cli
