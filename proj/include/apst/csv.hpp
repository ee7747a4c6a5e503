#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "apst/errors.hpp"
#include "apst/series.hpp"

namespace apst {

// How a price file is laid out. Columns are addressed by 0-based index or,
// when the file has a header, by name.
struct CsvSchema {
  std::string price_column = "0";
  std::optional<std::string> date_column;
  bool has_header = true;
  char delimiter = ',';
  bool skip_bad_rows = false;
};

namespace detail {

// RFC-4180-style record reader: quoted fields may contain the delimiter,
// doubled quotes and line breaks; records end at unquoted LF or CRLF.
inline std::vector<std::vector<std::string>> parse_csv_records(const std::string& text,
                                                               char delimiter) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool field_started = false;

  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(record));
    record.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"' && !field_started) {
      quoted = true;
      field_started = true;
    } else if (c == delimiter) {
      end_field();
    } else if (c == '\n') {
      if (!field.empty() || field_started || !record.empty()) end_record();
    } else if (c == '\r') {
      // consumed by the following '\n'; a bare CR is kept literal
      if (i + 1 < text.size() && text[i + 1] == '\n') continue;
      field += c;
      field_started = true;
    } else {
      field += c;
      field_started = true;
    }
  }
  if (!field.empty() || field_started || !record.empty()) end_record();
  return records;
}

inline bool parse_price(const std::string& raw, double& out) {
  std::size_t begin = 0;
  std::size_t end = raw.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(raw[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(raw[end - 1]))) --end;
  if (begin == end) return false;
  const auto result = std::from_chars(raw.data() + begin, raw.data() + end, out);
  return result.ec == std::errc() && result.ptr == raw.data() + end && std::isfinite(out);
}

inline std::size_t resolve_column(const std::string& spec,
                                  const std::vector<std::string>& header, bool has_header,
                                  const char* role) {
  bool digits = !spec.empty();
  for (char c : spec) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      digits = false;
      break;
    }
  }
  if (digits) return std::stoul(spec);
  if (!has_header) {
    throw Error(ErrorCode::ParseError,
                std::string(role) + " column '" + spec + "' is a name but the file has no header");
  }
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == spec) return i;
  }
  throw Error(ErrorCode::ParseError,
              std::string(role) + " column '" + spec + "' not found in header");
}

}  // namespace detail

// Reads prices (and date labels, when configured) in file order. Rows whose
// price fails to parse as a finite decimal are counted; the first offender
// aborts the load unless skip_bad_rows is set, in which case bad rows are
// dropped and the count is reported through bad_rows.
inline PriceSeries load_csv(const std::filesystem::path& path, const CsvSchema& schema,
                            std::size_t* bad_rows = nullptr) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw Error(ErrorCode::FileNotFound, path.string());
  }
  std::ostringstream buffer;
  buffer << file.rdbuf();
  const std::string text = buffer.str();

  const auto records = detail::parse_csv_records(text, schema.delimiter);
  if (records.empty()) {
    throw Error(ErrorCode::EmptyFile, path.string());
  }

  std::vector<std::string> header;
  std::size_t first_data = 0;
  if (schema.has_header) {
    header = records.front();
    first_data = 1;
  }
  const std::size_t price_col =
      detail::resolve_column(schema.price_column, header, schema.has_header, "price");
  std::optional<std::size_t> date_col;
  if (schema.date_column) {
    date_col = detail::resolve_column(*schema.date_column, header, schema.has_header, "date");
  }

  std::vector<double> values;
  std::vector<std::string> labels;
  std::size_t bad = 0;
  std::optional<std::string> first_bad;

  for (std::size_t r = first_data; r < records.size(); ++r) {
    const auto& record = records[r];
    const std::size_t row_number = r + 1;  // 1-based, header included
    double price = 0.0;
    bool ok = price_col < record.size() && detail::parse_price(record[price_col], price);
    if (ok && date_col && *date_col >= record.size()) ok = false;
    if (!ok) {
      ++bad;
      if (!first_bad) {
        const std::string content =
            price_col < record.size() ? record[price_col] : "<missing>";
        first_bad = "row " + std::to_string(row_number) + ", column " +
                    std::to_string(price_col) + ", content '" + content + "'";
      }
      continue;
    }
    values.push_back(price);
    if (date_col) labels.push_back(record[*date_col]);
  }

  if (bad > 0 && !schema.skip_bad_rows) {
    throw Error(ErrorCode::ParseError,
                *first_bad + " (" + std::to_string(bad) + " unparsable row(s) total)");
  }
  if (bad_rows != nullptr) *bad_rows = bad;
  return PriceSeries(std::move(values), std::move(labels));
}

}  // namespace apst
