#pragma once

// ============================================================================
// csv.hpp
//
// CSV output primitives: shortest round-trip numeric formatting, a streaming
// row writer (LF line endings, UTF-8, '.' decimal separator), and FNV-1a
// content hashing for run.meta config stamps.  Every simulation artifact
// funnels through format_double, so identical runs produce byte-identical
// files.
// ============================================================================

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "auvkit/rng.hpp"

namespace auvkit {

// ============================================================================
// Errors
// ============================================================================

/** @brief Thrown on CSV file I/O failures. */
class CsvIoError : public std::runtime_error {
 public:
  explicit CsvIoError(const std::string& what) : std::runtime_error(what) {}
};

// ============================================================================
// Formatting
// ============================================================================

/**
 * @brief Shortest decimal string that parses back to exactly this double.
 */
inline std::string format_double(double v) {
  char buf[32];
  const std::to_chars_result r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

/** @brief Join cells with commas into one CSV line (no trailing newline). */
inline std::string csv_line(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  return line;
}

// ============================================================================
// Writing
// ============================================================================

/** @brief Streaming CSV writer: header on open, one row per call. */
class CsvWriter {
 public:
  /** @throws CsvIoError when the file cannot be created. */
  CsvWriter(const std::string& path, const std::vector<std::string>& header)
      : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw CsvIoError("cannot create CSV file: " + path);
    out_ << csv_line(header) << '\n';
  }

  /** @brief Write one row of preformatted cells. */
  void row(const std::vector<std::string>& cells) {
    out_ << csv_line(cells) << '\n';
  }

  /** @brief Write one row of numeric cells. */
  void row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_double(v));
    row(cells);
  }

  /** @brief Flush and verify the stream. @throws CsvIoError on failure. */
  void close() {
    out_.flush();
    if (!out_) throw CsvIoError("write failure on CSV file: " + path_);
    out_.close();
  }

 private:
  std::string path_;
  std::ofstream out_;
};

// ============================================================================
// Reading
// ============================================================================

/** @brief A loaded CSV file: header names plus string-valued rows. */
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /** @brief Column index by name. @throws CsvIoError when absent. */
  std::size_t col(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw CsvIoError("CSV column not found: " + name);
  }
};

/**
 * @brief Load a CSV written by this toolkit (plain comma separation, no
 *        quoting).  @throws CsvIoError on I/O problems or a missing header.
 */
inline CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CsvIoError("cannot open CSV file: " + path);
  CsvTable table;
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(s);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!s.empty() && s.back() == ',') cells.push_back("");
    return cells;
  };
  if (!std::getline(in, line)) throw CsvIoError("empty CSV file: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  table.header = split(line);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    table.rows.push_back(split(line));
  }
  return table;
}

// ============================================================================
// Hashing
// ============================================================================

/** @brief Whole file as bytes. @throws CsvIoError when unreadable. */
inline std::string read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CsvIoError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/** @brief FNV-1a 64-bit content hash, zero-padded lowercase hex. */
inline std::string content_hash_hex(std::string_view bytes) {
  const std::uint64_t h = fnv1a64(bytes);
  char buf[17];
  for (int i = 0; i < 16; ++i) {
    buf[15 - i] = "0123456789abcdef"[(h >> (4 * i)) & 0xF];
  }
  buf[16] = '\0';
  return std::string(buf);
}

/** @brief Content hash of a file on disk. @throws CsvIoError */
inline std::string file_hash_hex(const std::string& path) {
  return content_hash_hex(read_file_bytes(path));
}

}  // namespace auvkit
