#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace rankint {

using Cell = std::variant<double, long long, std::string>;

/// A sampled table with self-describing metadata. Written either as CSV with
/// a `#`-prefixed header or as JSON {meta, columns, rows}.
struct Curve {
    nlohmann::ordered_json meta = nlohmann::ordered_json::object();
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// %.12g for reals so repeated runs are byte-identical.
std::string format_cell(const Cell& c);

void write_csv(std::ostream& os, const Curve& curve);
void write_json(std::ostream& os, const Curve& curve);

}  // namespace rankint
