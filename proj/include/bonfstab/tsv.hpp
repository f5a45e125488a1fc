#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace bonfstab {

/// Shortest-exact rendering with 17 significant digits ("%.17g"); values round-trip bit-exactly.
std::string format_number(double v);

/// Tab-separated table with one header row.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const;
  double number(std::size_t row, std::string_view name) const;
  std::size_t count(std::size_t row, std::string_view name) const;
  const std::string& text(std::size_t row, std::string_view name) const;
};

class TableWriter {
 public:
  explicit TableWriter(std::vector<std::string> header);

  TableWriter& cell(double v);
  TableWriter& cell(std::size_t v);
  TableWriter& cell(std::string_view v);
  void end_row();

  std::string str() const { return body_; }

 private:
  std::size_t columns_;
  std::size_t pending_ = 0;
  std::string body_;
};

/// Writes the whole file at once; throws IoError naming the path on failure.
void write_text_file(const std::filesystem::path& path, std::string_view contents);
std::string read_text_file(const std::filesystem::path& path);

Table parse_table(std::string_view text, const std::string& origin);
Table read_table(const std::filesystem::path& path);

}  // namespace bonfstab
