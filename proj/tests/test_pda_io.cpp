#include <doctest.h>

#include <fstream>
#include <sstream>

#include "oracle.hpp"
#include "pdakit/constructions.hpp"
#include "pdakit/errors.hpp"
#include "pdakit/pda_io.hpp"

using namespace pdakit;

namespace {

const char* const kMn =
    "4 6 3 4\n"
    "* * 1 2\n"
    "* 1 * 3\n"
    "* 2 3 *\n"
    "1 * * 4\n"
    "2 * 4 *\n"
    "3 4 * *\n";

// Returns (line, column) of the parse error, or (0, 0) if none is thrown.
std::pair<std::size_t, std::size_t> error_at(const std::string& text) {
  try {
    parse_pda(text);
  } catch (const ParseError& e) {
    return {e.line(), e.column()};
  }
  return {0, 0};
}

}  // namespace

TEST_SUITE("pda_io") {

TEST_CASE("parses the four-user MN array") {
  const auto doc = parse_pda_document(kMn);
  CHECK(doc.header.users == 4);
  CHECK(doc.header.subpackets == 6);
  CHECK(doc.header.stars == 3);
  CHECK(doc.header.symbols == 4);
  CHECK(doc.array == oracle::load_fixture("mn_4_2.pda"));
  CHECK(doc.array.at(3, 0) == Cell::symbol(1));
  CHECK(doc.array.at(0, 0).is_star());
}

TEST_CASE("one-cell symbol-only array") {
  const auto arr = parse_pda("1 1 0 1\n1\n");
  CHECK(arr.rows() == 1);
  CHECK(arr.cols() == 1);
  CHECK(arr.at(0, 0) == Cell::symbol(1));
}

TEST_CASE("comments, blank lines and extra whitespace are accepted") {
  const auto arr = parse_pda("# leading comment\n\n1 2 1 1\n  *\n# between rows\n\t1  \n");
  CHECK(arr == PdaArray::from_rows({{0}, {1}}));
}

TEST_CASE("errors carry line and column") {
  CHECK(error_at("4 6 3 4\n* * 1 2\n* 1 3\n") == std::pair<std::size_t, std::size_t>{3, 6});
  CHECK(error_at("1 2 1 1\n*\nx\n") == std::pair<std::size_t, std::size_t>{3, 1});
  CHECK(error_at("2 1 1 1\n* 0\n") == std::pair<std::size_t, std::size_t>{2, 3});
  CHECK(error_at("1 2 1 1\n*\n0\n") == std::pair<std::size_t, std::size_t>{3, 1});
  CHECK(error_at("1 2 1 1\n*\n-1\n") == std::pair<std::size_t, std::size_t>{3, 1});
  CHECK(error_at("2 1 0 2\n1 1.5\n") == std::pair<std::size_t, std::size_t>{2, 3});
  CHECK(error_at("2 2 1 2\n* 1\n1\n") == std::pair<std::size_t, std::size_t>{3, 2});
  CHECK(error_at("2 2 1 2\n* 1\n1 *\n* 1\n") == std::pair<std::size_t, std::size_t>{4, 1});
  CHECK(error_at("1 2 0 2\n1\n") == std::pair<std::size_t, std::size_t>{2, 1});
  CHECK(error_at("1 1 0\n1\n") == std::pair<std::size_t, std::size_t>{1, 1});
  CHECK(error_at("0 1 0 1\n\n").first == 1);
  CHECK(error_at("1 1 2 1\n*\n") == std::pair<std::size_t, std::size_t>{1, 5});
}

TEST_CASE("symbol gaps are located at the first symbol above the gap") {
  // Symbol 2 is missing; 3 first appears on line 3, column 3.
  CHECK(error_at("2 2 0 3\n1 1\n* 3\n") == std::pair<std::size_t, std::size_t>{3, 3});
  // A symbol above K*F can never be gap-free.
  CHECK(error_at("1 2 1 1\n*\n7\n") == std::pair<std::size_t, std::size_t>{3, 1});
}

TEST_CASE("missing trailing newline and empty input") {
  CHECK_THROWS_AS(parse_pda("1 1 0 1\n1"), ParseError);
  CHECK_THROWS_AS(parse_pda(""), ParseError);
  CHECK_THROWS_AS(parse_pda("# only a comment\n"), ParseError);
}

TEST_CASE("error message names the position") {
  try {
    parse_pda("4 6 3 4\n* * 1 2\n* 1 3\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).rfind("line 3, column 6: ", 0) == 0);
  }
}

TEST_CASE("emit writes the canonical text") {
  CHECK(emit_pda(parse_pda(kMn)) == kMn);
}

TEST_CASE("parse after emit is the identity") {
  for (auto family : {Family::General, Family::Special, Family::ExtGeneral, Family::ExtSpecial}) {
    for (std::uint32_t q = 2; q <= 4; ++q) {
      for (std::uint32_t z = 1; z < q; ++z) {
        const auto arr = construct(family, {q, z, 2, 1});
        const auto text = emit_pda(arr);
        CHECK(parse_pda(text) == arr);
        CHECK(emit_pda(parse_pda(text)) == text);
      }
    }
  }
  const auto mn = construct_mn(6, 3);
  CHECK(parse_pda(emit_pda(mn)) == mn);
}

TEST_CASE("file round trip") {
  const auto path = std::filesystem::temp_directory_path() / "pdakit_io_roundtrip.pda";
  const auto arr = construct_special({3, 2, 2, 1});
  write_pda_file(path, arr);
  const auto doc = read_pda_file(path);
  CHECK(doc.array == arr);
  CHECK(doc.header.users == 9);
  CHECK(doc.header.subpackets == 18);
  CHECK(doc.header.stars == 12);
  CHECK(doc.header.symbols == 9);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_pda_file(path), Error);
}

}  // TEST_SUITE
