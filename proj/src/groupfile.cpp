#include "artin/groupfile.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace artin {

namespace {

Error at_line(int line, const std::string& what) {
  return Error(ErrorKind::parse, "line " + std::to_string(line) + ": " + what);
}

std::optional<long> to_int(const std::string& s) {
  long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace

GroupSpec parse_group_file(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  std::optional<int> n;
  std::map<std::pair<int, int>, std::pair<Label, int>> seen;  // value and line
  std::optional<GroupSpec> spec;
  while (std::getline(in, raw)) {
    ++line;
    if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok[0] == "n") {
      if (tok.size() != 2) throw at_line(line, "expected `n <rank>`");
      if (n) throw at_line(line, "rank given twice");
      auto v = to_int(tok[1]);
      if (!v || *v < 1 || *v > 64) throw at_line(line, "rank must be an integer in 1..64");
      n = static_cast<int>(*v);
      spec.emplace(*n);
    } else if (tok[0] == "m") {
      if (!n) throw at_line(line, "`m` before `n`");
      if (tok.size() != 4) throw at_line(line, "expected `m <i> <j> <value>`");
      auto i = to_int(tok[1]), j = to_int(tok[2]);
      if (!i || !j || *i < 1 || *j < 1 || *i > *n || *j > *n)
        throw at_line(line, "generator index out of range");
      if (*i == *j) throw at_line(line, "m_ii is not a parameter");
      Label lab = Label::infinity();
      if (tok[3] != "inf") {
        auto v = to_int(tok[3]);
        if (!v) throw at_line(line, "value must be an integer or `inf`");
        if (*v < 2) throw at_line(line, "m must be at least 2");
        if (*v > 1000000) throw at_line(line, "m too large");
        lab = Label::finite(static_cast<int>(*v));
      }
      std::pair<int, int> key(static_cast<int>(std::min(*i, *j)), static_cast<int>(std::max(*i, *j)));
      if (auto it = seen.find(key); it != seen.end()) {
        if (!(it->second.first == lab))
          throw at_line(line, "conflicts with the entry for the same pair on line " +
                                  std::to_string(it->second.second));
        continue;
      }
      seen.emplace(key, std::make_pair(lab, line));
      spec->set_label(key.first, key.second, lab);
    } else {
      throw at_line(line, "unknown directive `" + tok[0] + "`");
    }
  }
  if (!spec) throw Error(ErrorKind::parse, "missing `n <rank>` line");
  return *spec;
}

GroupSpec load_group_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::argument, "cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  try {
    return parse_group_file(ss.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

std::string format_group_file(const GroupSpec& spec) {
  std::ostringstream out;
  out << "n " << spec.rank() << "\n";
  for (auto [i, j] : spec.finite_pairs()) out << "m " << i << " " << j << " " << spec.label(i, j).value() << "\n";
  return out.str();
}

}  // namespace artin
