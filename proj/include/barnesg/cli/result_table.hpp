#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace barnesg::cli {

using Cell = std::variant<double, bool, std::string>;

struct Column {
    std::string name;
    std::vector<Cell> values;
};

/// Named columns plus ordered key/value metadata. Complex series are stored
/// as a pair of real columns with _re and _im suffixes.
class ResultTable {
  public:
    void set_meta(const std::string& key, const std::string& value);
    std::optional<std::string> meta(const std::string& key) const;
    const std::vector<std::pair<std::string, std::string>>& metadata() const { return metadata_; }

    /// Declare the columns; only allowed while the table has no rows.
    void set_columns(std::vector<std::string> names);
    void add_row(std::vector<Cell> row);

    const std::vector<Column>& columns() const { return columns_; }
    const Column* column(const std::string& name) const;
    std::size_t row_count() const;

    /// True when every cell of every column named "pass" is true.
    bool all_pass() const;

    std::string to_csv() const;
    std::string to_json() const;
    static ResultTable from_csv(const std::string& text);
    static ResultTable from_json(const std::string& text);

  private:
    std::vector<std::pair<std::string, std::string>> metadata_;
    std::vector<Column> columns_;
};

/// 17 significant digits, "." decimal, no locale; nan and inf spelled out.
std::string format_double(double v);

}  // namespace barnesg::cli
