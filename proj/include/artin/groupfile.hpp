#pragma once

// Group files: `n <rank>` then `m <i> <j> <value|inf>` lines, `#` comments.

#include <string>
#include <string_view>

#include "artin/words.hpp"

namespace artin {

// Throws Error(parse) naming the offending line.
GroupSpec parse_group_file(std::string_view text);
GroupSpec load_group_file(const std::string& path);
// Canonical text: every finite pair listed, infinite pairs omitted.
std::string format_group_file(const GroupSpec& spec);

}  // namespace artin
