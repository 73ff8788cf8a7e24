#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "subq/qubo.hpp"

namespace subq {

// Both supported formats state the objective as a maximization, so the
// loaders negate every coefficient; published maxima correspond to the
// negated minima of the parsed problems.
enum class InstanceFormat { orlib, palubeckis };

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_ = 0;
};

struct InstanceFile {
  InstanceFormat format = InstanceFormat::orlib;
  std::vector<QuboProblem> problems;
  std::string path;           // empty when parsed from a bare stream
  std::uint64_t checksum = 0;  // FNV-1a over the raw file bytes
  std::vector<std::string> warnings;
};

// Multi-problem format: a problem count, then per problem a "n nnz" header
// and nnz "i j v" triplets, 1-indexed, each unordered pair stated once.
// Problems are named stem.1, stem.2, ...
InstanceFile parse_orlib(std::istream& in, const std::string& stem);

// Single-problem format: a header line "n" optionally followed by density
// and seed fields (ignored), then "i j v" triplets to end of file.  A file
// with no triplets parses to the zero matrix, with a warning.
InstanceFile parse_palubeckis(std::istream& in, const std::string& stem);

// Canonical serialization: upper-triangle nonzero triplets in ascending
// (i, j) order, 1-indexed, signs restored to the source convention.
// Parsing a canonical file and writing it again reproduces it byte for
// byte.
void write_orlib(std::ostream& out, const std::vector<QuboProblem>& problems);
void write_palubeckis(std::ostream& out, const QuboProblem& problem);

// Reads the file, checksums it, and parses it.  Without an explicit format
// the first content line decides: a single field is an orlib problem
// count, two or more fields are a palubeckis header.  The stem naming the
// problems is the file name without directory or extension.
InstanceFile load_instances(const std::string& path,
                            std::optional<InstanceFormat> format = {});

// 64-bit FNV-1a, used for file checksums and for folding instance names
// into the benchmark seed schedule.
std::uint64_t fnv1a(std::string_view bytes);

// One row of the reference-optimum table: the best known objective of the
// parsed (minimization) problem, so minus the published maximum, plus a
// free-text citation.  Comparison data, not ground truth.
struct ReferenceEntry {
  std::int64_t best_known = 0;
  std::string source;
};

// CSV with an "instance,best_known,source" header.  The third field runs
// to the end of the line, so citations may contain commas.
std::map<std::string, ReferenceEntry> load_reference_table(
    const std::string& path);

}  // namespace subq
