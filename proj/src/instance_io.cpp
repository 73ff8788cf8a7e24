#include "subq/instance_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace subq {

namespace {

// Whitespace-separated integer tokens with the line number of each, so
// parse errors can point at the offending line.
class TokenReader {
 public:
  explicit TokenReader(std::istream& in, int line_offset = 0)
      : in_(in), line_(line_offset) {}

  // The next token, or nullopt at end of input.  line() afterwards names
  // the line the token came from (or the last line, at end of input).
  std::optional<std::string> next() {
    while (pos_ >= line_text_.size()) {
      if (!std::getline(in_, line_text_)) return std::nullopt;
      ++line_;
      pos_ = 0;
      skip_spaces();
      if (pos_ >= line_text_.size()) line_text_.clear();
    }
    const std::size_t start = pos_;
    while (pos_ < line_text_.size() &&
           !std::isspace(static_cast<unsigned char>(line_text_[pos_]))) {
      ++pos_;
    }
    std::string token = line_text_.substr(start, pos_ - start);
    skip_spaces();
    return token;
  }

  int line() const { return line_; }

 private:
  void skip_spaces() {
    while (pos_ < line_text_.size() &&
           std::isspace(static_cast<unsigned char>(line_text_[pos_]))) {
      ++pos_;
    }
  }

  std::istream& in_;
  std::string line_text_;
  std::size_t pos_ = 0;
  int line_ = 0;
};

std::int64_t require_int(TokenReader& reader, const char* what,
                         std::int64_t lo, std::int64_t hi) {
  const auto token = reader.next();
  if (!token) {
    throw ParseError(reader.line(),
                     std::string("unexpected end of file, expected ") + what);
  }
  std::int64_t value = 0;
  const char* begin = token->data();
  const char* end = begin + token->size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(reader.line(), std::string("expected an integer ") +
                                        what + ", got \"" + *token + "\"");
  }
  if (value < lo || value > hi) {
    throw ParseError(reader.line(), std::string(what) + " " + *token +
                                        " outside [" + std::to_string(lo) +
                                        ", " + std::to_string(hi) + "]");
  }
  return value;
}

// One 1-indexed triplet line from the stream, bounds-checked, converted to
// the 0-indexed internal form.
Triplet read_triplet(TokenReader& reader, int n) {
  Triplet t;
  t.i = static_cast<int>(require_int(reader, "row index", 1, n)) - 1;
  t.j = static_cast<int>(require_int(reader, "column index", 1, n)) - 1;
  t.value = require_int(reader, "coefficient", -kMaxAbsCoefficient,
                        kMaxAbsCoefficient);
  return t;
}

void write_triplets(std::ostream& out, const QuboProblem& problem) {
  const int n = problem.size();
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const std::int64_t v = problem.q(i, j);
      if (v != 0) {
        out << (i + 1) << ' ' << (j + 1) << ' ' << -v << '\n';
      }
    }
  }
}

int count_upper_nonzeros(const QuboProblem& problem) {
  const int n = problem.size();
  int count = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      if (problem.q(i, j) != 0) ++count;
    }
  }
  return count;
}

std::string stem_of(const std::string& path) {
  const std::size_t slash = path.find_last_of("/\\");
  std::string base =
      slash == std::string::npos ? path : path.substr(slash + 1);
  const std::size_t dot = base.find_last_of('.');
  if (dot != std::string::npos && dot > 0) base.resize(dot);
  return base;
}

}  // namespace

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what),
      line_(line) {}

InstanceFile parse_orlib(std::istream& in, const std::string& stem) {
  InstanceFile file;
  file.format = InstanceFormat::orlib;

  TokenReader reader(in);
  const int count =
      static_cast<int>(require_int(reader, "problem count", 0, 1000000));
  for (int p = 1; p <= count; ++p) {
    const int n =
        static_cast<int>(require_int(reader, "problem size", 1, kMaxVariables));
    const std::int64_t max_entries =
        static_cast<std::int64_t>(n) * (n + 1) / 2;
    const int nnz = static_cast<int>(
        require_int(reader, "nonzero count", 0, max_entries));
    std::vector<Triplet> triplets;
    triplets.reserve(nnz);
    for (int k = 0; k < nnz; ++k) triplets.push_back(read_triplet(reader, n));
    file.problems.push_back(QuboProblem::from_triplets(
        stem + "." + std::to_string(p), n, triplets, true));
  }
  if (reader.next()) {
    throw ParseError(reader.line(),
                     "content after the declared problems; nonzero or "
                     "problem counts do not match the file");
  }
  return file;
}

InstanceFile parse_palubeckis(std::istream& in, const std::string& stem) {
  InstanceFile file;
  file.format = InstanceFormat::palubeckis;

  // Header line: n, optionally followed by density and seed fields.
  std::string header;
  int header_line = 0;
  while (std::getline(in, header)) {
    ++header_line;
    if (header.find_first_not_of(" \t\r\n") != std::string::npos) break;
    header.clear();
  }
  std::istringstream header_in(header);
  std::string token;
  std::vector<std::string> fields;
  while (header_in >> token) fields.push_back(token);
  if (fields.empty()) {
    throw ParseError(header_line, "unexpected end of file, expected a header");
  }
  if (fields.size() > 3) {
    throw ParseError(header_line, "header has more than three fields");
  }
  int n = 0;
  {
    const char* begin = fields[0].data();
    const char* end = begin + fields[0].size();
    const auto [ptr, ec] = std::from_chars(begin, end, n);
    if (ec != std::errc() || ptr != end || n < 1 || n > kMaxVariables) {
      throw ParseError(header_line, "header problem size \"" + fields[0] +
                                        "\" outside [1, " +
                                        std::to_string(kMaxVariables) + "]");
    }
  }

  std::vector<Triplet> triplets;
  TokenReader reader(in, header_line);
  // The triplet section runs to end of file; peek one token at a time.
  for (;;) {
    const auto first = reader.next();
    if (!first) break;
    Triplet t;
    {
      const char* begin = first->data();
      const char* end = begin + first->size();
      std::int64_t value = 0;
      const auto [ptr, ec] = std::from_chars(begin, end, value);
      if (ec != std::errc() || ptr != end || value < 1 || value > n) {
        throw ParseError(reader.line(), "row index \"" + *first +
                                            "\" outside [1, " +
                                            std::to_string(n) + "]");
      }
      t.i = static_cast<int>(value) - 1;
    }
    t.j = static_cast<int>(require_int(reader, "column index", 1, n)) - 1;
    t.value = require_int(reader, "coefficient", -kMaxAbsCoefficient,
                          kMaxAbsCoefficient);
    triplets.push_back(t);
  }
  if (triplets.empty()) {
    file.warnings.push_back(stem + ": no triplets, zero matrix assumed");
  }
  file.problems.push_back(QuboProblem::from_triplets(stem, n, triplets, true));
  return file;
}

void write_orlib(std::ostream& out, const std::vector<QuboProblem>& problems) {
  out << problems.size() << '\n';
  for (const QuboProblem& problem : problems) {
    out << problem.size() << ' ' << count_upper_nonzeros(problem) << '\n';
    write_triplets(out, problem);
  }
}

void write_palubeckis(std::ostream& out, const QuboProblem& problem) {
  // The nonzero count doubles as the second header field, which keeps the
  // canonical form on the multi-field side of format auto-detection.
  out << problem.size() << ' ' << count_upper_nonzeros(problem) << '\n';
  write_triplets(out, problem);
}

InstanceFile load_instances(const std::string& path,
                            std::optional<InstanceFormat> format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string bytes = buffer.str();

  if (!format) {
    std::istringstream probe(bytes);
    std::string line;
    int fields = 0;
    while (std::getline(probe, line)) {
      std::istringstream tokens(line);
      std::string token;
      while (tokens >> token) ++fields;
      if (fields > 0) break;
    }
    if (fields == 0) throw ParseError(1, "empty file");
    format = fields == 1 ? InstanceFormat::orlib : InstanceFormat::palubeckis;
  }

  std::istringstream content(bytes);
  InstanceFile file = *format == InstanceFormat::orlib
                          ? parse_orlib(content, stem_of(path))
                          : parse_palubeckis(content, stem_of(path));
  file.path = path;
  file.checksum = fnv1a(bytes);
  return file;
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (const char c : bytes) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ull;
  }
  return hash;
}

std::map<std::string, ReferenceEntry> load_reference_table(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::map<std::string, ReferenceEntry> table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (line_no == 1 && line.rfind("instance,", 0) == 0) continue;
    const std::size_t c1 = line.find(',');
    const std::size_t c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
      throw ParseError(line_no, "expected instance,best_known,source");
    }
    const std::string name = line.substr(0, c1);
    const std::string value = line.substr(c1 + 1, c2 - c1 - 1);
    ReferenceEntry entry;
    entry.source = line.substr(c2 + 1);
    const char* begin = value.data();
    const char* end = begin + value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, entry.best_known);
    if (ec != std::errc() || ptr != end) {
      throw ParseError(line_no, "best_known \"" + value + "\" is not an integer");
    }
    table[name] = std::move(entry);
  }
  return table;
}

}  // namespace subq
