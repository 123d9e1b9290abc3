#include <doctest.h>

#include <cstdint>
#include <filesystem>
#include <string>

#include "riskminer/error.hpp"
#include "riskminer/text_format.hpp"

using namespace riskminer;

TEST_CASE("format_double round-trips and is shortest") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-0.5753641449035617) == "-0.5753641449035617");
  CHECK(parse_double(format_double(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(parse_double(format_double(1e-300)) == 1e-300);
}

TEST_CASE("parse_double rejects junk and trailing text") {
  CHECK(parse_double("2.5") == 2.5);
  CHECK(parse_double("-1e3") == -1000.0);
  CHECK_THROWS_AS(parse_double("abc"), Error);
  CHECK_THROWS_AS(parse_double("1.5x"), Error);
  CHECK_THROWS_AS(parse_double(""), Error);
}

TEST_CASE("parse_int rejects junk") {
  CHECK(parse_int("42") == 42);
  CHECK(parse_int("-7") == -7);
  CHECK_THROWS_AS(parse_int("4.2"), Error);
  CHECK_THROWS_AS(parse_int(""), Error);
}

TEST_CASE("fnv1a64 matches the reference constants") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(to_hex(fnv1a64("")) == "cbf29ce484222325");
  CHECK(to_hex(0) == "0000000000000000");
}

TEST_CASE("encode_field/decode_field round-trip awkward strings") {
  for (const std::string& s :
       {std::string("plain"), std::string("two words"), std::string("50%"),
        std::string("tab\there"), std::string("line\nbreak"), std::string("")}) {
    std::string encoded = encode_field(s);
    CHECK(encoded.find(' ') == std::string::npos);
    CHECK(encoded.find('\n') == std::string::npos);
    CHECK(decode_field(encoded) == s);
  }
  CHECK(encode_field("a b") == "a%20b");
  CHECK_THROWS_AS(decode_field("bad%2"), Error);
  CHECK_THROWS_AS(decode_field("bad%zz"), Error);
}

TEST_CASE("split and trim") {
  auto parts = split_whitespace("  one  two\tthree ");
  REQUIRE(parts.size() == 3);
  CHECK(parts[0] == "one");
  CHECK(parts[2] == "three");
  CHECK(split_whitespace("").empty());

  auto cells = split_char("a,b,,c", ',');
  REQUIRE(cells.size() == 4);
  CHECK(cells[2] == "");

  CHECK(trim("  x  ") == "x");
  CHECK(trim("\t\n") == "");
}

TEST_CASE("parse_csv handles quoting, comments and CRLF") {
  auto rows = parse_csv("a,b\n\"x,y\",\"he said \"\"hi\"\"\"\r\n\n# note\nlast,row\n");
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == std::vector<std::string>{"a", "b"});
  CHECK(rows[1] == std::vector<std::string>{"x,y", "he said \"hi\""});
  CHECK(rows[2] == std::vector<std::string>{"last", "row"});

  CHECK_THROWS_AS(parse_csv("\"unterminated"), Error);
  CHECK_THROWS_AS(parse_csv("\"embedded\nnewline\""), Error);
}

TEST_CASE("csv_escape quotes only when needed") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  // round trip through the parser
  auto rows = parse_csv(csv_escape("a,\"b\"") + "," + csv_escape("c") + "\n");
  REQUIRE(rows.size() == 1);
  CHECK(rows[0][0] == "a,\"b\"");
}

TEST_CASE("atomic_write_file then read_file round-trips") {
  auto dir = std::filesystem::temp_directory_path() / "riskminer_tf_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "blob.txt").string();
  atomic_write_file(path, "hello\nworld\n");
  CHECK(read_file(path) == "hello\nworld\n");
  CHECK(!std::filesystem::exists(path + ".tmp"));

  auto lines = read_lines(path);
  REQUIRE(lines.size() == 2);
  CHECK(lines[1] == "world");

  atomic_write_file(path, "win1\r\nwin2");
  auto crlf = read_lines(path);
  REQUIRE(crlf.size() == 2);
  CHECK(crlf[0] == "win1");
  CHECK(crlf[1] == "win2");
  std::filesystem::remove_all(dir);
}

TEST_CASE("read_file fails loudly on a missing path") {
  CHECK_THROWS_AS(read_file("/nonexistent/riskminer/file"), Error);
  try {
    read_file("/nonexistent/riskminer/file");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IoError);
  }
}
