#include "arenstorf/checkpoint_csv.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <bit>
#include <cerrno>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "arenstorf/error.hpp"

namespace arenstorf::io {

std::string double_to_hex(double v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(std::bit_cast<std::uint64_t>(v)));
  return buf;
}

double double_from_hex(const std::string& text) {
  std::uint64_t bits = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) first += 2;
  auto [ptr, ec] = std::from_chars(first, last, bits, 16);
  if (ec != std::errc{} || ptr != last || last - first != 16) {
    fail(ErrorCode::parse, "expected 16 hex digits, got '" + text + "'");
  }
  return std::bit_cast<double>(bits);
}

namespace {

std::string g12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return c != ' ' && c != '\t' && c != '\r'; };
  while (!s.empty() && !not_space(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && !not_space(static_cast<unsigned char>(s[i]))) ++i;
  return s.substr(i);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::uint64_t parse_u64(const std::string& text, std::size_t line_no) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    fail(ErrorCode::parse, "line " + std::to_string(line_no) + ": bad integer '" + text + "'");
  }
  return v;
}

double parse_double(const std::string& text, std::size_t line_no) {
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE) {
    fail(ErrorCode::parse, "line " + std::to_string(line_no) + ": bad number '" + text + "'");
  }
  return v;
}

}  // namespace

void write_checkpoints_csv(std::ostream& out, std::span<const Checkpoint> checkpoints) {
  out << kCheckpointCsvHeader << '\n';
  for (const auto& c : checkpoints) {
    out << c.n << ',' << g12(c.sum.total()) << ',' << g12(c.mean) << ',' << g12(c.ratio) << ','
        << double_to_hex(c.sum.value) << ',' << double_to_hex(c.sum.compensation) << '\n';
  }
}

std::string checkpoints_csv(std::span<const Checkpoint> checkpoints) {
  std::ostringstream out;
  write_checkpoints_csv(out, checkpoints);
  return out.str();
}

std::vector<Checkpoint> read_checkpoints_csv(std::istream& in, double c2) {
  std::string line;
  std::size_t line_no = 0;
  std::map<std::string, std::size_t> columns;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto header = split(line);
    for (std::size_t i = 0; i < header.size(); ++i) columns[header[i]] = i;
    break;
  }
  if (columns.empty()) fail(ErrorCode::parse, "checkpoint CSV has no header");
  auto col = [&](const char* name) -> std::optional<std::size_t> {
    auto it = columns.find(name);
    if (it == columns.end()) return std::nullopt;
    return it->second;
  };
  const auto n_col = col("N");
  const auto sum_col = col("sum");
  const auto mean_col = col("mean");
  const auto ratio_col = col("ratio");
  const auto sum_hex_col = col("sum_hex");
  const auto comp_hex_col = col("comp_hex");
  const bool exact = sum_hex_col && comp_hex_col;
  if (!n_col) fail(ErrorCode::parse, "checkpoint CSV lacks an N column");
  if (!exact && !mean_col) fail(ErrorCode::parse, "checkpoint CSV needs either mean or sum_hex and comp_hex");

  std::vector<Checkpoint> out;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto cells = split(line);
    auto cell = [&](std::size_t i) -> const std::string& {
      if (i >= cells.size()) fail(ErrorCode::parse, "line " + std::to_string(line_no) + ": too few columns");
      return cells[i];
    };

    Checkpoint c;
    c.n = parse_u64(cell(*n_col), line_no);
    if (c.n == 0) fail(ErrorCode::parse, "line " + std::to_string(line_no) + ": N must be positive");
    if (exact) {
      c.sum.value = double_from_hex(cell(*sum_hex_col));
      c.sum.compensation = double_from_hex(cell(*comp_hex_col));
      const MeanRatio mr = mean_and_ratio(c.sum, c.n, c2);
      c.mean = mr.mean;
      c.ratio = mr.ratio;
    } else {
      c.mean = parse_double(cell(*mean_col), line_no);
      c.sum.value = sum_col ? parse_double(cell(*sum_col), line_no) : c.mean * static_cast<double>(c.n);
      c.ratio = ratio_col ? parse_double(cell(*ratio_col), line_no) : c.mean / c2;
    }
    out.push_back(c);
  }
  return out;
}

std::vector<Checkpoint> read_checkpoints_csv(const std::filesystem::path& path, double c2) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot open " + path.string());
  return read_checkpoints_csv(in, c2);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) fail(ErrorCode::io, "cannot create " + tmp.string() + ": " + std::strerror(errno));

  const char* data = contents.data();
  std::size_t left = contents.size();
  while (left > 0) {
    const ssize_t n = ::write(fd, data, left);
    if (n < 0) {
      if (errno == EINTR) continue;
      const std::string why = std::strerror(errno);
      ::close(fd);
      ::unlink(tmp.c_str());
      fail(ErrorCode::io, "write to " + tmp.string() + " failed: " + why);
    }
    data += n;
    left -= static_cast<std::size_t>(n);
  }
  if (::fsync(fd) != 0 || ::close(fd) != 0) {
    ::unlink(tmp.c_str());
    fail(ErrorCode::io, "cannot flush " + tmp.string());
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    const std::string why = std::strerror(errno);
    ::unlink(tmp.c_str());
    fail(ErrorCode::io, "cannot rename onto " + path.string() + ": " + why);
  }

  std::filesystem::path dir = path.parent_path();
  if (dir.empty()) dir = ".";
  const int dfd = ::open(dir.c_str(), O_RDONLY | O_DIRECTORY | O_CLOEXEC);
  if (dfd >= 0) {
    ::fsync(dfd);
    ::close(dfd);
  }
}

}  // namespace arenstorf::io
