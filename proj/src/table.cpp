#include "ioncav/table.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ioncav {

ResultTable::ResultTable(std::vector<std::string> names, std::vector<std::string> units)
    : names_(std::move(names)), units_(std::move(units)) {
    if (names_.size() != units_.size())
        throw std::logic_error("ResultTable: names/units size mismatch");
}

void ResultTable::meta(const std::string& key, const std::string& value) {
    meta_.emplace_back(key, value);
}

void ResultTable::add_row(const std::vector<std::string>& cells) {
    if (cells.size() != names_.size())
        throw std::logic_error("ResultTable: row width mismatch");
    rows_.push_back(cells);
}

std::string ResultTable::num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void ResultTable::write(const std::string& path, const std::string& tool,
                        const std::string& config_text) const {
    std::ostringstream os;
    os << "# " << tool << "\n";
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char ts[64];
    std::strftime(ts, sizeof ts, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    os << "# generated = " << ts << "\n";
    for (const auto& [k, v] : meta_) os << "# " << k << " = " << v << "\n";
    os << "# config-begin\n";
    std::istringstream cfg(config_text);
    std::string line;
    while (std::getline(cfg, line)) os << "#   " << line << "\n";
    os << "# config-end\n";
    for (std::size_t i = 0; i < names_.size(); ++i)
        os << (i ? "\t" : "") << names_[i];
    os << "\n";
    for (std::size_t i = 0; i < units_.size(); ++i)
        os << (i ? "\t" : "") << units_[i];
    os << "\n";
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "\t" : "") << row[i];
        os << "\n";
    }

    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot write " + tmp);
        f << os.str();
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename " + tmp + " -> " + path);
}

} // namespace ioncav
