#include "hmp/records.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <stdexcept>

namespace hmp {

namespace {

constexpr double kJsonExactLimit = 1e15;

double as_double(const Cell& c) {
  if (std::holds_alternative<double>(c)) return std::get<double>(c);
  if (std::holds_alternative<long long>(c)) return static_cast<double>(std::get<long long>(c));
  throw std::invalid_argument("plot data: non-numeric cell");
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

std::string cell_text(const Cell& c) {
  if (std::holds_alternative<long long>(c)) return std::to_string(std::get<long long>(c));
  if (std::holds_alternative<double>(c)) return format_number(std::get<double>(c));
  return std::get<std::string>(c);
}

// Recognises strings produced for large or non-finite numbers.
bool parse_number(const std::string& s, Cell& out) {
  if (s.empty()) return false;
  if (s == "nan" || s == "inf" || s == "-inf") {
    out = s == "nan" ? std::nan("") : (s == "inf" ? HUGE_VAL : -HUGE_VAL);
    return true;
  }
  std::size_t used = 0;
  try {
    if (s.find_first_of(".eE") == std::string::npos) {
      const long long v = std::stoll(s, &used);
      if (used == s.size() && std::llabs(v) > static_cast<long long>(kJsonExactLimit)) {
        out = v;
        return true;
      }
      return false;
    }
    const double v = std::stod(s, &used);
    if (used == s.size() && std::abs(v) > kJsonExactLimit) {
      out = v;
      return true;
    }
  } catch (const std::exception&) {
  }
  return false;
}

bool cells_equal(const Cell& a, const Cell& b) {
  if (a.index() != b.index()) return false;
  if (std::holds_alternative<double>(a)) {
    const double x = std::get<double>(a), y = std::get<double>(b);
    return x == y || (std::isnan(x) && std::isnan(y));
  }
  return a == b;
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::invalid_argument("Table: row width does not match the header");
  rows.push_back(std::move(row));
}

std::size_t Table::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  throw std::invalid_argument("Table: no column '" + name + "' in " + command);
}

bool operator==(const Table& a, const Table& b) {
  if (a.command != b.command || a.columns != b.columns || a.rows.size() != b.rows.size()) return false;
  for (std::size_t r = 0; r < a.rows.size(); ++r)
    for (std::size_t c = 0; c < a.columns.size(); ++c)
      if (!cells_equal(a.rows[r][c], b.rows[r][c])) return false;
  return true;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(const Table& t, std::ostream& os) {
  for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << csv_escape(t.columns[c]);
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_escape(cell_text(row[c]));
    os << '\n';
  }
}

void write_json(const Table& t, std::ostream& os) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      const Cell& cell = row[c];
      if (std::holds_alternative<std::string>(cell)) {
        obj[t.columns[c]] = std::get<std::string>(cell);
      } else if (std::holds_alternative<long long>(cell)) {
        const long long v = std::get<long long>(cell);
        if (std::llabs(v) > static_cast<long long>(kJsonExactLimit)) obj[t.columns[c]] = std::to_string(v);
        else obj[t.columns[c]] = v;
      } else {
        const double v = std::get<double>(cell);
        if (!std::isfinite(v) || std::abs(v) > kJsonExactLimit) obj[t.columns[c]] = format_number(v);
        else obj[t.columns[c]] = v;
      }
    }
    arr.push_back(std::move(obj));
  }
  os << arr.dump(2) << '\n';
}

std::vector<CellKind> column_kinds(const Table& t) {
  std::vector<CellKind> kinds;
  if (t.rows.empty()) return kinds;
  for (const Cell& c : t.rows.front())
    kinds.push_back(std::holds_alternative<long long>(c) ? CellKind::Integer
                    : std::holds_alternative<double>(c)  ? CellKind::Real
                                                         : CellKind::Text);
  return kinds;
}

Table read_json(const std::string& text, const std::string& command, const std::vector<std::string>& columns,
                const std::vector<CellKind>& kinds) {
  if (!kinds.empty() && kinds.size() != columns.size())
    throw std::invalid_argument("read_json: kinds do not match the columns");
  const nlohmann::ordered_json arr = nlohmann::ordered_json::parse(text);
  if (!arr.is_array()) throw std::invalid_argument("read_json: expected an array");
  Table t(command, columns);
  for (const auto& obj : arr) {
    std::vector<Cell> row;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      const auto& v = obj.at(columns[c]);
      if (!kinds.empty() && kinds[c] == CellKind::Text) {
        row.emplace_back(v.get<std::string>());
      } else if (!kinds.empty() && v.is_string()) {
        Cell parsed;
        if (!parse_number(v.get<std::string>(), parsed))
          throw std::invalid_argument("read_json: column " + columns[c] + " holds non-numeric text");
        if (kinds[c] == CellKind::Real && std::holds_alternative<long long>(parsed))
          parsed = static_cast<double>(std::get<long long>(parsed));
        row.push_back(parsed);
      } else if (v.is_number_integer()) {
        row.emplace_back(v.get<long long>());
      } else if (v.is_number()) {
        row.emplace_back(v.get<double>());
      } else {
        const std::string s = v.get<std::string>();
        Cell parsed;
        if (parse_number(s, parsed)) row.push_back(parsed);
        else row.emplace_back(s);
      }
    }
    t.add_row(std::move(row));
  }
  return t;
}

std::vector<std::filesystem::path> emit_plotdata(const Table& t, const std::vector<SeriesSpec>& series,
                                                 const std::filesystem::path& dir) {
  if (t.rows.empty()) throw std::invalid_argument("emit_plotdata: no records for " + t.command);
  if (series.empty()) throw std::invalid_argument("emit_plotdata: no series requested");
  std::vector<std::pair<std::size_t, std::size_t>> cols;
  for (const auto& s : series) {
    if (s.name.empty()) throw std::invalid_argument("emit_plotdata: unnamed series");
    cols.emplace_back(t.column_index(s.x), t.column_index(s.y));
  }
  for (const auto& row : t.rows)
    for (const auto& [x, y] : cols) {
      as_double(row[x]);
      as_double(row[y]);
    }
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto path = dir / (t.command + "_" + series[k].name + ".dat");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_plotdata: cannot open " + path.string());
    out << "# " << series[k].x << ' ' << series[k].y << '\n';
    for (const auto& row : t.rows)
      out << format_number(as_double(row[cols[k].first])) << ' ' << format_number(as_double(row[cols[k].second])) << '\n';
    written.push_back(path);
  }
  return written;
}

}  // namespace hmp
