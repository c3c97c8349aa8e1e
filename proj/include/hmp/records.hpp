#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace hmp {

using Cell = std::variant<long long, double, std::string>;

/// One experiment output: named columns, one row per parameter point.
struct Table {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  Table() = default;
  Table(std::string cmd, std::vector<std::string> cols) : command(std::move(cmd)), columns(std::move(cols)) {}
  void add_row(std::vector<Cell> row);
  std::size_t column_index(const std::string& name) const;
};

bool operator==(const Table& a, const Table& b);

/// %.17g, with nan/inf spelled out.
std::string format_number(double v);

/// Header row, comma separated, LF line endings.
void write_csv(const Table& t, std::ostream& os);

/// Array of flat objects; numbers with |v| > 1e15 are written as decimal strings.
void write_json(const Table& t, std::ostream& os);

enum class CellKind { Integer, Real, Text };

/// Kinds of the first row; empty for an empty table.
std::vector<CellKind> column_kinds(const Table& t);

/// Inverse of write_json. With `kinds`, string cells in numeric columns are decoded
/// and text columns stay text; without, only strings encoding |v| > 1e15 or
/// non-finite values become numbers.
Table read_json(const std::string& text, const std::string& command, const std::vector<std::string>& columns,
                const std::vector<CellKind>& kinds = {});

struct SeriesSpec {
  std::string name;
  std::string x;
  std::string y;
};

/// Writes one two-column file `<command>_<series>.dat` per series into `dir`.
/// Returns the written paths. Empty tables and unknown columns are rejected before any write.
std::vector<std::filesystem::path> emit_plotdata(const Table& t, const std::vector<SeriesSpec>& series,
                                                 const std::filesystem::path& dir);

}  // namespace hmp
