// File formats: PGM images (P2/P5), headerless CSV matrices, Matrix Market
// (coordinate and array, real general), and the run manifest embedded as
// comment lines in every emitted file.  Writes go to a temp file renamed on
// success, so partial outputs never appear under the target name.
#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rsvd/core.hpp"
#include "rsvd/sketch.hpp"
#include "rsvd/testmats.hpp"
#include "rsvd/version.hpp"

namespace rsvd {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class MatrixFormat { csv, matrix_market };

/// Provenance header written into every output file as comment lines.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;
  std::string generator{Rng::identity()};
  std::string version{kVersion};
  std::string timestamp;

  static std::string now_iso8601() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
  }

  std::string comment_block(char prefix = '#') const {
    std::ostringstream os;
    os << prefix << " tool: " << kToolName << ' ' << version << '\n';
    os << prefix << " command: " << command << '\n';
    for (const auto& [key, value] : params) {
      os << prefix << ' ' << key << ": " << value << '\n';
    }
    os << prefix << " generator: " << generator << '\n';
    os << prefix << " timestamp: "
       << (timestamp.empty() ? now_iso8601() : timestamp) << '\n';
    return os.str();
  }
};

namespace detail {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_file_atomic(const std::filesystem::path& path,
                              const std::string& content, bool binary) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, binary ? std::ios::binary : std::ios::out);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw IoError("rename to " + path.string() + " failed: " + ec.message());
}

inline std::string read_whole_file(const std::filesystem::path& path, bool binary) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline double parse_double(std::string_view text, const std::string& where) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  const auto [ptr, err] = std::from_chars(begin, end, value);
  if (err != std::errc{} || ptr != end) {
    // Allow trailing whitespace only.
    const char* rest = ptr;
    while (rest < end && (*rest == ' ' || *rest == '\t' || *rest == '\r')) ++rest;
    if (err != std::errc{} || rest != end) {
      throw IoError("bad number '" + std::string(text) + "' at " + where);
    }
  }
  return value;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// CSV (headerless rows of decimals; '#' lines are manifest comments)

inline void write_matrix_csv(const DenseMatrix& m, const std::filesystem::path& path,
                             const std::string& comment_block = {}) {
  std::ostringstream os;
  os << comment_block;
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) os << ',';
      os << detail::format_double(m(i, j));
    }
    os << '\n';
  }
  detail::write_file_atomic(path, os.str(), false);
}

inline DenseMatrix read_matrix_csv(const std::filesystem::path& path) {
  const std::string text = detail::read_whole_file(path, false);
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::vector<double> row;
    std::size_t start = 0;
    std::size_t col_no = 1;
    while (true) {
      const std::size_t comma = line.find(',', start);
      const std::string_view cell =
          std::string_view(line).substr(start, comma == std::string::npos
                                                   ? std::string::npos
                                                   : comma - start);
      row.push_back(detail::parse_double(
          cell, path.string() + ":" + std::to_string(line_no) + ":" +
                    std::to_string(col_no)));
      if (comma == std::string::npos) break;
      start = comma + 1;
      ++col_no;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw IoError("ragged row at " + path.string() + ":" + std::to_string(line_no));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw IoError("no data rows in " + path.string());
  DenseMatrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Matrix Market ("array real general" for dense, "coordinate real general"
// for triplets; '%' lines are comments)

inline void write_matrix_mm(const DenseMatrix& m, const std::filesystem::path& path,
                            const std::string& comment_block = {}) {
  std::ostringstream os;
  os << "%%MatrixMarket matrix array real general\n";
  os << comment_block;
  os << m.rows() << ' ' << m.cols() << '\n';
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      os << detail::format_double(m(i, j)) << '\n';
    }
  }
  detail::write_file_atomic(path, os.str(), false);
}

inline void write_triplets_mm(const SparseTriplets& t, const std::filesystem::path& path,
                              const std::string& comment_block = {}) {
  std::ostringstream os;
  os << "%%MatrixMarket matrix coordinate real general\n";
  os << comment_block;
  os << t.rows << ' ' << t.cols << ' ' << t.entries.size() << '\n';
  for (const auto& e : t.entries) {
    os << (e.row + 1) << ' ' << (e.col + 1) << ' ' << detail::format_double(e.value)
       << '\n';
  }
  detail::write_file_atomic(path, os.str(), false);
}

inline DenseMatrix read_matrix_mm(const std::filesystem::path& path) {
  const std::string text = detail::read_whole_file(path, false);
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty file " + path.string());

  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  for (auto* s : {&object, &format, &field, &symmetry}) {
    for (char& c : *s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  if (banner != "%%MatrixMarket" || object != "matrix") {
    throw IoError("not a Matrix Market file: " + path.string());
  }
  if (field != "real" || symmetry != "general") {
    throw IoError("unsupported Matrix Market variant '" + field + ' ' + symmetry +
                  "' in " + path.string());
  }
  const bool coordinate = format == "coordinate";
  if (!coordinate && format != "array") {
    throw IoError("unsupported Matrix Market format '" + format + "' in " +
                  path.string());
  }

  auto next_data_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      if (!out.empty() && out.back() == '\r') out.pop_back();
      if (out.empty() || out.front() == '%') continue;
      return true;
    }
    return false;
  };

  if (!next_data_line(line)) throw IoError("missing size line in " + path.string());
  std::istringstream size_line(line);
  long rows = 0, cols = 0, nnz = 0;
  if (coordinate) {
    if (!(size_line >> rows >> cols >> nnz)) {
      throw IoError("bad coordinate size line in " + path.string());
    }
  } else {
    if (!(size_line >> rows >> cols)) {
      throw IoError("bad array size line in " + path.string());
    }
  }
  if (rows < 1 || cols < 1) throw IoError("bad dimensions in " + path.string());

  DenseMatrix m = DenseMatrix::Zero(rows, cols);
  if (coordinate) {
    for (long e = 0; e < nnz; ++e) {
      if (!next_data_line(line)) {
        throw IoError("truncated coordinate data in " + path.string());
      }
      std::istringstream entry(line);
      long i = 0, j = 0;
      double v = 0.0;
      if (!(entry >> i >> j >> v) || i < 1 || i > rows || j < 1 || j > cols) {
        throw IoError("bad coordinate entry '" + line + "' in " + path.string());
      }
      m(i - 1, j - 1) += v;
    }
  } else {
    for (long j = 0; j < cols; ++j) {
      for (long i = 0; i < rows; ++i) {
        if (!next_data_line(line)) {
          throw IoError("truncated array data in " + path.string());
        }
        m(i, j) = detail::parse_double(line, path.string());
      }
    }
  }
  return m;
}

inline void write_matrix(const DenseMatrix& m, const std::filesystem::path& path,
                         MatrixFormat format, const std::string& comment_block = {}) {
  if (format == MatrixFormat::csv) {
    write_matrix_csv(m, path, comment_block);
  } else {
    write_matrix_mm(m, path, comment_block);
  }
}

inline DenseMatrix read_matrix(const std::filesystem::path& path, MatrixFormat format) {
  return format == MatrixFormat::csv ? read_matrix_csv(path) : read_matrix_mm(path);
}

// ---------------------------------------------------------------------------
// PGM (read P2/P5 up to maxval 65535; write P5 maxval 255)

namespace detail {

// Pulls header tokens across lines, skipping '#' comments.
class PgmTokenizer {
 public:
  PgmTokenizer(const std::string& data, std::size_t pos) : data_(data), pos_(pos) {}

  std::string next(const std::string& file) {
    while (pos_ < data_.size()) {
      const char c = data_[pos_];
      if (c == '#') {
        while (pos_ < data_.size() && data_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
    if (pos_ >= data_.size()) throw IoError("truncated PGM header in " + file);
    const std::size_t start = pos_;
    while (pos_ < data_.size() &&
           !std::isspace(static_cast<unsigned char>(data_[pos_]))) {
      ++pos_;
    }
    return data_.substr(start, pos_ - start);
  }

  std::size_t pos() const { return pos_; }

 private:
  const std::string& data_;
  std::size_t pos_;
};

inline long parse_pgm_int(const std::string& token, const std::string& file) {
  long v = 0;
  const auto [ptr, err] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (err != std::errc{} || ptr != token.data() + token.size()) {
    throw IoError("bad PGM header token '" + token + "' in " + file);
  }
  return v;
}

}  // namespace detail

inline DenseMatrix read_pgm(const std::filesystem::path& path) {
  const std::string data = detail::read_whole_file(path, true);
  if (data.size() < 2 || data[0] != 'P' || (data[1] != '2' && data[1] != '5')) {
    throw IoError("not a PGM (P2/P5) file: " + path.string());
  }
  const bool binary = data[1] == '5';
  detail::PgmTokenizer tok(data, 2);
  const long width = detail::parse_pgm_int(tok.next(path.string()), path.string());
  const long height = detail::parse_pgm_int(tok.next(path.string()), path.string());
  const long maxval = detail::parse_pgm_int(tok.next(path.string()), path.string());
  if (width < 1 || height < 1 || maxval < 1 || maxval > 65535) {
    throw IoError("bad PGM dimensions/maxval in " + path.string());
  }

  DenseMatrix m(height, width);
  if (binary) {
    std::size_t pos = tok.pos();
    if (pos >= data.size()) throw IoError("truncated PGM data in " + path.string());
    ++pos;  // single whitespace after maxval
    const int bytes = maxval > 255 ? 2 : 1;
    const std::size_t need = static_cast<std::size_t>(width) *
                             static_cast<std::size_t>(height) *
                             static_cast<std::size_t>(bytes);
    if (data.size() - pos < need) {
      throw IoError("truncated PGM pixel data in " + path.string());
    }
    for (long i = 0; i < height; ++i) {
      for (long j = 0; j < width; ++j) {
        const auto b0 = static_cast<unsigned char>(data[pos++]);
        long v = b0;
        if (bytes == 2) {
          const auto b1 = static_cast<unsigned char>(data[pos++]);
          v = (v << 8) | b1;  // big-endian per the format
        }
        if (v > maxval) throw IoError("PGM sample exceeds maxval in " + path.string());
        m(i, j) = static_cast<double>(v);
      }
    }
  } else {
    for (long i = 0; i < height; ++i) {
      for (long j = 0; j < width; ++j) {
        const long v = detail::parse_pgm_int(tok.next(path.string()), path.string());
        if (v < 0 || v > maxval) {
          throw IoError("PGM sample out of range in " + path.string());
        }
        m(i, j) = static_cast<double>(v);
      }
    }
  }
  return m;
}

/// Write as binary P5 with maxval 255; entries are clamped to [0, 255] and
/// rounded half-up.
inline void write_pgm(const DenseMatrix& m, const std::filesystem::path& path,
                      const std::string& comment_block = {}) {
  detail::require_finite(m, "write_pgm");
  std::string out;
  out += "P5\n";
  for (std::size_t i = 0; i < comment_block.size();) {
    // Re-prefix manifest lines with '#' (PGM comment syntax).
    std::size_t end = comment_block.find('\n', i);
    if (end == std::string::npos) end = comment_block.size();
    out += comment_block.substr(i, end - i) + "\n";
    i = end + 1;
  }
  out += std::to_string(m.cols()) + " " + std::to_string(m.rows()) + "\n255\n";
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      double v = std::clamp(m(i, j), 0.0, 255.0);
      long q = static_cast<long>(std::floor(v + 0.5));
      if (q > 255) q = 255;
      out += static_cast<char>(static_cast<unsigned char>(q));
    }
  }
  detail::write_file_atomic(path, out, true);
}

}  // namespace rsvd
