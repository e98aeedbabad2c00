#include "barnesg/cli/result_table.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace barnesg::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string quote_csv(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string cell_to_csv(const Cell& c)
{
    if (const auto* d = std::get_if<double>(&c))
        return format_double(*d);
    if (const auto* b = std::get_if<bool>(&c))
        return *b ? "true" : "false";
    return quote_csv(std::get<std::string>(c));
}

std::optional<double> parse_double(const std::string& s)
{
    if (s == "nan")
        return std::nan("");
    if (s == "inf")
        return INFINITY;
    if (s == "-inf")
        return -INFINITY;
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto res = std::from_chars(s.data(), end, v);
    if (res.ec != std::errc() || res.ptr != end || s.empty())
        return std::nullopt;
    return v;
}

// Split one CSV record. Quoted fields may contain commas and doubled quotes,
// but not newlines (the writer never emits them).
std::vector<std::pair<std::string, bool>> split_csv(const std::string& line)
{
    std::vector<std::pair<std::string, bool>> out;
    std::size_t i = 0;
    while (true) {
        std::string field;
        bool quoted = false;
        if (i < line.size() && line[i] == '"') {
            quoted = true;
            ++i;
            while (i < line.size()) {
                if (line[i] == '"') {
                    if (i + 1 < line.size() && line[i + 1] == '"') {
                        field += '"';
                        i += 2;
                        continue;
                    }
                    ++i;
                    break;
                }
                field += line[i++];
            }
        } else {
            while (i < line.size() && line[i] != ',')
                field += line[i++];
        }
        out.emplace_back(field, quoted);
        if (i >= line.size())
            break;
        if (line[i] != ',')
            throw std::runtime_error("csv: malformed field");
        ++i;
    }
    return out;
}

Cell cell_from_csv(const std::string& s, bool quoted)
{
    if (quoted)
        return s;
    if (s == "true")
        return true;
    if (s == "false")
        return false;
    if (auto d = parse_double(s))
        return *d;
    return s;
}

}  // namespace

std::string format_double(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

void ResultTable::set_meta(const std::string& key, const std::string& value)
{
    for (auto& kv : metadata_) {
        if (kv.first == key) {
            kv.second = value;
            return;
        }
    }
    metadata_.emplace_back(key, value);
}

std::optional<std::string> ResultTable::meta(const std::string& key) const
{
    for (const auto& kv : metadata_)
        if (kv.first == key)
            return kv.second;
    return std::nullopt;
}

void ResultTable::set_columns(std::vector<std::string> names)
{
    if (row_count() != 0)
        throw std::logic_error("ResultTable: columns are fixed once rows exist");
    columns_.clear();
    for (auto& n : names)
        columns_.push_back({std::move(n), {}});
}

void ResultTable::add_row(std::vector<Cell> row)
{
    if (row.size() != columns_.size())
        throw std::logic_error("ResultTable: row width " + std::to_string(row.size())
                               + " does not match " + std::to_string(columns_.size()) + " columns");
    for (std::size_t i = 0; i < row.size(); ++i)
        columns_[i].values.push_back(std::move(row[i]));
}

const Column* ResultTable::column(const std::string& name) const
{
    for (const auto& c : columns_)
        if (c.name == name)
            return &c;
    return nullptr;
}

std::size_t ResultTable::row_count() const
{
    return columns_.empty() ? 0 : columns_.front().values.size();
}

bool ResultTable::all_pass() const
{
    for (const auto& c : columns_) {
        if (c.name != "pass")
            continue;
        for (const auto& v : c.values) {
            const auto* b = std::get_if<bool>(&v);
            if (!b || !*b)
                return false;
        }
    }
    return true;
}

std::string ResultTable::to_csv() const
{
    std::string out;
    for (const auto& [k, v] : metadata_)
        out += "# " + k + "=" + v + "\n";
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (i)
            out += ',';
        out += columns_[i].name;
    }
    out += '\n';
    const std::size_t rows = row_count();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t i = 0; i < columns_.size(); ++i) {
            if (i)
                out += ',';
            out += cell_to_csv(columns_[i].values[r]);
        }
        out += '\n';
    }
    return out;
}

std::string ResultTable::to_json() const
{
    ordered_json j;
    j["metadata"] = ordered_json::object();
    for (const auto& [k, v] : metadata_)
        j["metadata"][k] = v;
    j["columns"] = ordered_json::object();
    for (const auto& c : columns_) {
        ordered_json arr = ordered_json::array();
        for (const auto& v : c.values) {
            if (const auto* d = std::get_if<double>(&v)) {
                // JSON has no NaN or infinity; keep them as strings
                if (std::isfinite(*d))
                    arr.push_back(*d);
                else
                    arr.push_back(format_double(*d));
            } else if (const auto* b = std::get_if<bool>(&v)) {
                arr.push_back(*b);
            } else {
                arr.push_back(std::get<std::string>(v));
            }
        }
        j["columns"][c.name] = std::move(arr);
    }
    return j.dump(2) + "\n";
}

ResultTable ResultTable::from_csv(const std::string& text)
{
    ResultTable t;
    std::istringstream in(text);
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        if (line.rfind("# ", 0) == 0) {
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw std::runtime_error("csv: metadata line without '='");
            t.set_meta(line.substr(2, eq - 2), line.substr(eq + 1));
            continue;
        }
        if (line.empty())
            continue;
        const auto fields = split_csv(line);
        if (!header) {
            std::vector<std::string> names;
            for (const auto& f : fields)
                names.push_back(f.first);
            t.set_columns(std::move(names));
            header = true;
            continue;
        }
        std::vector<Cell> row;
        for (const auto& [s, quoted] : fields)
            row.push_back(cell_from_csv(s, quoted));
        t.add_row(std::move(row));
    }
    return t;
}

ResultTable ResultTable::from_json(const std::string& text)
{
    const auto j = ordered_json::parse(text);
    ResultTable t;
    for (const auto& [k, v] : j.at("metadata").items())
        t.set_meta(k, v.get<std::string>());
    std::vector<std::string> names;
    std::vector<std::vector<Cell>> cols;
    for (const auto& [k, arr] : j.at("columns").items()) {
        names.push_back(k);
        std::vector<Cell> vals;
        for (const auto& v : arr) {
            if (v.is_boolean()) {
                vals.emplace_back(v.get<bool>());
            } else if (v.is_number()) {
                vals.emplace_back(v.get<double>());
            } else {
                const auto s = v.get<std::string>();
                if (s == "nan" || s == "inf" || s == "-inf")
                    vals.emplace_back(*parse_double(s));
                else
                    vals.emplace_back(s);
            }
        }
        cols.push_back(std::move(vals));
    }
    t.set_columns(names);
    const std::size_t rows = cols.empty() ? 0 : cols.front().size();
    for (const auto& c : cols)
        if (c.size() != rows)
            throw std::runtime_error("json: column lengths differ");
    for (std::size_t r = 0; r < rows; ++r) {
        std::vector<Cell> row;
        for (const auto& c : cols)
            row.push_back(c[r]);
        t.add_row(std::move(row));
    }
    return t;
}

}  // namespace barnesg::cli
