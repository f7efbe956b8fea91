#pragma once

#include <string>
#include <vector>

namespace ioncav {

/// Tab-separated table with a name line and a unit line, preceded by comment
/// metadata and the full config that produced it. Written atomically
/// (temp file + rename). Deterministic except for the timestamp line.
class ResultTable {
  public:
    ResultTable(std::vector<std::string> names, std::vector<std::string> units);

    void meta(const std::string& key, const std::string& value);
    void add_row(const std::vector<std::string>& cells);
    void write(const std::string& path, const std::string& tool,
               const std::string& config_text) const;

    static std::string num(double v);  // %.17g

  private:
    std::vector<std::string> names_, units_;
    std::vector<std::pair<std::string, std::string>> meta_;
    std::vector<std::vector<std::string>> rows_;
};

} // namespace ioncav
