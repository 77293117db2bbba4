#include <string>

#include "artin/groupfile.hpp"
#include "doctest.h"

using namespace artin;

namespace {

std::string parse_error(const std::string& text) {
  try {
    parse_group_file(text);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::parse);
    return e.what();
  }
  FAIL("accepted: " << text);
  return {};
}

}  // namespace

TEST_CASE("E7 and classification flags") {
  auto e7 = parse_group_file("n 3\nm 1 2 7\nm 1 3 7\nm 2 3 7\n");
  CHECK(e7.rank() == 3);
  CHECK(e7.is_theorem_scope());
  CHECK(e7.is_extra_large());
  CHECK(e7.label(2, 1) == Label::finite(7));

  auto small = parse_group_file("n 3\nm 1 2 3\nm 1 3 7\nm 2 3 7\n");
  CHECK_FALSE(small.is_theorem_scope());
  CHECK_FALSE(small.is_extra_large());

  auto m5 = parse_group_file("n 3\nm 1 2 5 # comment\n\n  m 1 3 7\nm 2 3 inf\n");
  CHECK_FALSE(m5.is_theorem_scope());
  CHECK(m5.is_extra_large());
  CHECK(m5.label(2, 3).is_infinite());

  auto free3 = parse_group_file("# nothing but the rank\nn 3\n");
  for (Gen i = 1; i <= 3; ++i)
    for (Gen j = i + 1; j <= 3; ++j) CHECK(free3.label(i, j).is_infinite());
}

TEST_CASE("duplicates") {
  CHECK(parse_group_file("n 2\nm 1 2 7\nm 2 1 7\n").label(1, 2) == Label::finite(7));
  auto msg = parse_error("n 2\nm 1 2 7\nm 2 1 8\n");
  CHECK(msg.find("line 3") != std::string::npos);
  CHECK(msg.find("line 2") != std::string::npos);
}

TEST_CASE("malformed lines carry their line number") {
  CHECK(parse_error("n 3\nm 1 2 1\n").find("line 2") != std::string::npos);
  CHECK(parse_error("n 3\n\nm 1 1 7\n").find("line 3") != std::string::npos);
  CHECK(parse_error("n 3\nm 1 4 7\n").find("line 2") != std::string::npos);
  CHECK(parse_error("n 3\nm 1 2 seven\n").find("line 2") != std::string::npos);
  CHECK(parse_error("n 3\nm 1 2\n").find("line 2") != std::string::npos);
  CHECK(parse_error("n 3\nk 1 2 7\n").find("line 2") != std::string::npos);
  CHECK(parse_error("m 1 2 7\nn 3\n").find("line 1") != std::string::npos);
  CHECK(parse_error("n 3\nn 3\n").find("line 2") != std::string::npos);
  CHECK(parse_error("n 0\n").find("line 1") != std::string::npos);
  CHECK(parse_error("n 3x\n").find("line 1") != std::string::npos);
  parse_error("# empty\n");
}

TEST_CASE("round trip and shipped files") {
  auto spec = parse_group_file("n 4\nm 1 2 7\nm 2 3 10\nm 3 4 7\nm 1 4 inf\n");
  CHECK(parse_group_file(format_group_file(spec)).finite_pairs() == spec.finite_pairs());
  for (const char* f : {"e7", "e8", "e9", "e789", "e7_n4", "free2", "m5", "mixed_inf"})
    CHECK_NOTHROW(load_group_file(std::string(ARTIN_GROUPS_DIR) + "/" + f + ".grp"));
  CHECK(load_group_file(std::string(ARTIN_GROUPS_DIR) + "/e7_n4.grp").is_theorem_scope());
  try {
    load_group_file("/nonexistent.grp");
    FAIL("loaded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::argument);
  }
}
