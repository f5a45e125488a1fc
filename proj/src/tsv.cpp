#include "bonfstab/tsv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "bonfstab/errors.hpp"

namespace bonfstab {

std::string format_number(double v) {
  if (std::isnan(v)) return "NA";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::size_t Table::column(std::string_view name) const {
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == name) return c;
  }
  throw InvalidInput("table has no column '" + std::string(name) + "'");
}

const std::string& Table::text(std::size_t row, std::string_view name) const {
  return rows.at(row).at(column(name));
}

double Table::number(std::size_t row, std::string_view name) const {
  const std::string& s = text(row, name);
  if (s == "NA") return std::nan("");
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') {
    throw InvalidInput("column '" + std::string(name) + "' holds a non-numeric value '" + s + "'");
  }
  return v;
}

std::size_t Table::count(std::size_t row, std::string_view name) const {
  const std::string& s = text(row, name);
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (s.empty() || end == s.c_str() || *end != '\0' || s.front() == '-') {
    throw InvalidInput("column '" + std::string(name) + "' holds a non-integer value '" + s + "'");
  }
  return static_cast<std::size_t>(v);
}

TableWriter::TableWriter(std::vector<std::string> header) : columns_(header.size()) {
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c > 0) body_ += '\t';
    body_ += header[c];
  }
  body_ += '\n';
}

TableWriter& TableWriter::cell(double v) { return cell(std::string_view(format_number(v))); }

TableWriter& TableWriter::cell(std::size_t v) { return cell(std::string_view(std::to_string(v))); }

TableWriter& TableWriter::cell(std::string_view v) {
  if (pending_ > 0) body_ += '\t';
  body_ += v;
  ++pending_;
  return *this;
}

void TableWriter::end_row() {
  if (pending_ != columns_) {
    throw std::logic_error("table row has " + std::to_string(pending_) + " cells, expected " +
                           std::to_string(columns_));
  }
  body_ += '\n';
  pending_ = 0;
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open '" + path.string() + "' for writing");
  }
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.close();
  if (!out) {
    throw IoError("failed writing '" + path.string() + "'");
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path.string() + "' for reading");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Table parse_table(std::string_view text, const std::string& origin) {
  Table table;
  bool have_header = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t tab = line.find('\t', start);
      fields.emplace_back(line.substr(start, tab == std::string_view::npos ? tab : tab - start));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    if (!have_header) {
      table.header = std::move(fields);
      have_header = true;
    } else {
      if (fields.size() != table.header.size()) {
        throw InvalidInput(origin + ":" + std::to_string(line_no) + ": expected " +
                           std::to_string(table.header.size()) + " fields, found " +
                           std::to_string(fields.size()));
      }
      table.rows.push_back(std::move(fields));
    }
  }
  if (!have_header) {
    throw InvalidInput(origin + ": missing header row");
  }
  return table;
}

Table read_table(const std::filesystem::path& path) {
  return parse_table(read_text_file(path), path.string());
}

}  // namespace bonfstab
