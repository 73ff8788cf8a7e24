#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "subq/instance_io.hpp"
#include "subq/qubo.hpp"

using namespace subq;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() /
                       ("subq_io_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

fs::path write_file(const std::string& name, const std::string& content) {
  const fs::path p = scratch_dir() / name;
  std::ofstream out(p, std::ios::binary);
  out << content;
  return p;
}

int error_line(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("a small maximization file parses with negated coefficients") {
  std::istringstream in("1\n2 2\n1 1 5\n1 2 -3\n");
  const InstanceFile file = parse_orlib(in, "small");
  REQUIRE(file.problems.size() == 1);
  const QuboProblem& p = file.problems[0];
  CHECK(p.name() == "small.1");
  CHECK(p.size() == 2);
  CHECK(p.q(0, 0) == -5);
  CHECK(p.q(0, 1) == 3);
  CHECK(p.q(1, 0) == 3);
  CHECK(p.q(1, 1) == 0);
  CHECK(p.negated());
  // The published maximum 5 sits at [1,0]; minimized here it reads -5.
  CHECK(evaluate(p, {1, 0}) == -5);
}

TEST_CASE("a zero problem count yields an empty list") {
  std::istringstream in("0\n");
  const InstanceFile file = parse_orlib(in, "none");
  CHECK(file.problems.empty());

  std::istringstream padded("0\n\n   \n");
  CHECK(parse_orlib(padded, "none").problems.empty());
}

TEST_CASE("multiple problems get numbered names") {
  std::istringstream in("2\n1 1\n1 1 2\n3 1\n2 3 7\n");
  const InstanceFile file = parse_orlib(in, "multi");
  REQUIRE(file.problems.size() == 2);
  CHECK(file.problems[0].name() == "multi.1");
  CHECK(file.problems[0].size() == 1);
  CHECK(file.problems[1].name() == "multi.2");
  CHECK(file.problems[1].size() == 3);
  CHECK(file.problems[1].q(1, 2) == -7);
  CHECK(file.problems[1].q(2, 1) == -7);
}

TEST_CASE("parse errors carry the offending line number") {
  CHECK(error_line([] {
          std::istringstream in("1\n2 2\n1 1 5\n");
          parse_orlib(in, "s");
        }) == 3);
  CHECK(error_line([] {
          std::istringstream in("1\n2 1\n1 x 5\n");
          parse_orlib(in, "s");
        }) == 3);
  CHECK(error_line([] {
          std::istringstream in("1\n2 1\n1 3 5\n");
          parse_orlib(in, "s");
        }) == 3);
  CHECK(error_line([] {
          std::istringstream in("1\n2 1\n1 2 10001\n");
          parse_orlib(in, "s");
        }) == 3);
  CHECK(error_line([] {
          std::istringstream in("1\n10001 0\n");
          parse_orlib(in, "s");
        }) == 2);
  CHECK(error_line([] {
          std::istringstream in("1\n2 4\n");
          parse_orlib(in, "s");
        }) == 2);
  // Leftover content means the declared counts were wrong.
  CHECK(error_line([] {
          std::istringstream in("1\n1 0\n7 7 7\n");
          parse_orlib(in, "s");
        }) == 3);
  // A missing second problem is reported at the end of input.
  CHECK(error_line([] {
          std::istringstream in("2\n1 1\n1 1 2\n");
          parse_orlib(in, "s");
        }) == 3);
}

TEST_CASE("single-problem headers accept density and seed fields") {
  std::istringstream in("3 50 123\n1 2 -5\n2 3 4\n");
  const InstanceFile file = parse_palubeckis(in, "gen");
  REQUIRE(file.problems.size() == 1);
  const QuboProblem& p = file.problems[0];
  CHECK(p.name() == "gen");
  CHECK(p.size() == 3);
  CHECK(p.q(0, 1) == 5);
  CHECK(p.q(1, 2) == -4);
  CHECK(p.q(0, 0) == 0);
  CHECK(file.warnings.empty());
}

TEST_CASE("a header without triplets parses to the zero matrix") {
  std::istringstream in("7\n");
  const InstanceFile file = parse_palubeckis(in, "empty");
  REQUIRE(file.problems.size() == 1);
  CHECK(file.problems[0].size() == 7);
  CHECK(evaluate(file.problems[0], Bits(7, 1)) == 0);
  REQUIRE(file.warnings.size() == 1);
  CHECK(file.warnings[0].find("zero matrix") != std::string::npos);
}

TEST_CASE("single-problem parse errors carry line numbers too") {
  CHECK(error_line([] {
          std::istringstream in("3\n1 2 999999\n");
          parse_palubeckis(in, "s");
        }) == 2);
  CHECK(error_line([] {
          std::istringstream in("\n\n5 3\n0 1 2\n");
          parse_palubeckis(in, "s");
        }) == 4);
  CHECK(error_line([] {
          std::istringstream in("1 2 3 4\n");
          parse_palubeckis(in, "s");
        }) == 1);
  CHECK(error_line([] {
          std::istringstream in("");
          parse_palubeckis(in, "s");
        }) == 0);
}

TEST_CASE("canonical serialization round-trips byte for byte") {
  std::istringstream in("1\n3 3\n1 1 5\n1 3 -2\n2 3 4\n");
  const InstanceFile file = parse_orlib(in, "rt");

  std::ostringstream first;
  write_orlib(first, file.problems);
  std::istringstream again(first.str());
  const InstanceFile reparsed = parse_orlib(again, "rt");
  REQUIRE(reparsed.problems.size() == 1);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(reparsed.problems[0].q(i, j) == file.problems[0].q(i, j));

  std::ostringstream second;
  write_orlib(second, reparsed.problems);
  CHECK(first.str() == second.str());
}

TEST_CASE("the single-problem writer stays on the multi-field side") {
  std::istringstream in("4 10\n1 2 3\n3 4 -1\n");
  const InstanceFile file = parse_palubeckis(in, "w");

  std::ostringstream out;
  write_palubeckis(out, file.problems[0]);
  const std::string text = out.str();
  // First line has two fields, so a written file auto-detects correctly.
  CHECK(text.substr(0, text.find('\n')) == "4 2");

  const fs::path path = write_file("canon.txt", text);
  const InstanceFile loaded = load_instances(path.string());
  CHECK(loaded.format == InstanceFormat::palubeckis);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(loaded.problems[0].q(i, j) == file.problems[0].q(i, j));

  std::ostringstream rewritten;
  write_palubeckis(rewritten, loaded.problems[0]);
  CHECK(rewritten.str() == text);
}

TEST_CASE("loading detects the format from the first content line") {
  const std::string orlib_text = "1\n2 1\n1 2 4\n";
  const fs::path orlib_path = write_file("auto_multi.txt", orlib_text);
  const InstanceFile a = load_instances(orlib_path.string());
  CHECK(a.format == InstanceFormat::orlib);
  REQUIRE(a.problems.size() == 1);
  CHECK(a.problems[0].name() == "auto_multi.1");
  CHECK(a.checksum == fnv1a(orlib_text));
  CHECK(a.path == orlib_path.string());

  const std::string single_text = "5 3\n1 2 2\n";
  const fs::path single_path = write_file("auto_single.dat", single_text);
  const InstanceFile b = load_instances(single_path.string());
  CHECK(b.format == InstanceFormat::palubeckis);
  REQUIRE(b.problems.size() == 1);
  CHECK(b.problems[0].name() == "auto_single");

  // A bare "n" header looks like a problem count; the override settles it.
  const fs::path bare = write_file("bare.txt", "3\n");
  const InstanceFile c =
      load_instances(bare.string(), InstanceFormat::palubeckis);
  CHECK(c.problems.size() == 1);
  CHECK(c.problems[0].size() == 3);

  CHECK_THROWS_AS(load_instances((scratch_dir() / "missing.txt").string()),
                  std::runtime_error);
  const fs::path empty = write_file("empty.txt", "   \n\n");
  CHECK_THROWS_AS(load_instances(empty.string()), ParseError);
}

TEST_CASE("fnv1a matches the published test vectors") {
  CHECK(fnv1a("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cull);
}

TEST_CASE("the reference table parses values and free-text sources") {
  const fs::path path = write_file(
      "refs.csv",
      "instance,best_known,source\n"
      "# maxima from the literature, negated\n"
      "bqp2500.1,-1515944,OR-Library, Beasley (1998)\r\n"
      "toy.1,7,hand computed\n");
  const auto table = load_reference_table(path.string());
  REQUIRE(table.size() == 2);
  CHECK(table.at("bqp2500.1").best_known == -1515944);
  CHECK(table.at("bqp2500.1").source == "OR-Library, Beasley (1998)");
  CHECK(table.at("toy.1").best_known == 7);

  const fs::path bad = write_file(
      "bad_refs.csv", "instance,best_known,source\nx,notanumber,y\n");
  CHECK(error_line([&] { load_reference_table(bad.string()); }) == 2);

  CHECK_THROWS_AS(load_reference_table((scratch_dir() / "nope.csv").string()),
                  std::runtime_error);
}
