#include "rankint/curve.hpp"

#include <cmath>
#include <cstdio>

namespace rankint {

namespace {

nlohmann::ordered_json cell_json(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) {
        if (!std::isfinite(*d)) return nullptr;
        return *d;
    }
    if (const auto* i = std::get_if<long long>(&c)) return *i;
    return std::get<std::string>(c);
}

std::string meta_value(const nlohmann::ordered_json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace

std::string format_cell(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.12g", *d);
        return buf;
    }
    if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
    return std::get<std::string>(c);
}

void write_csv(std::ostream& os, const Curve& curve) {
    for (const auto& [key, value] : curve.meta.items()) {
        if (value.is_array()) {
            for (const auto& item : value) os << "# " << key << ": " << meta_value(item) << '\n';
        } else {
            os << "# " << key << ": " << meta_value(value) << '\n';
        }
    }
    for (std::size_t i = 0; i < curve.columns.size(); ++i) os << (i ? "," : "") << curve.columns[i];
    os << '\n';
    for (const auto& row : curve.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_cell(row[i]);
        os << '\n';
    }
}

void write_json(std::ostream& os, const Curve& curve) {
    nlohmann::ordered_json j;
    j["meta"] = curve.meta;
    j["columns"] = curve.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : curve.rows) {
        auto r = nlohmann::ordered_json::array();
        for (const auto& c : row) r.push_back(cell_json(c));
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    os << j.dump(2) << '\n';
}

}  // namespace rankint
