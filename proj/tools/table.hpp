// table.hpp: row tables emitted as CSV or JSON
#pragma once

#include <json.hpp>

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace jcqed::cli {

using Cell = std::variant<double, long long, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

// 15 significant digits, C locale; non-finite values print as nan/inf.
std::string format_number(double v);

void write_csv(std::ostream& out, const Table& table);

nlohmann::json to_json(const Table& table);

} // namespace jcqed::cli
