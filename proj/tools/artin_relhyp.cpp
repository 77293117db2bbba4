// artin-relhyp: command-line front end over the C interface.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "artin_relhyp.h"

namespace {

enum Exit { ok = 0, assertion = 1, usage = 2, resource = 3 };

int exit_code(arh_status s) {
  switch (s) {
    case ARH_OK: return ok;
    case ARH_ASSERTION:
    case ARH_INTERNAL: return assertion;
    case ARH_RESOURCE: return resource;
    default: return usage;
  }
}

struct Group {
  arh_group* g = nullptr;
  ~Group() { arh_group_free(g); }
};

std::string join(const std::vector<std::string>& tokens) {
  std::string s;
  for (const auto& t : tokens) s += (s.empty() ? "" : " ") + t;
  return s;
}

// Prints the report (if any) and the error (if any); returns the exit code.
int finish(arh_status s, char* out) {
  if (out) {
    std::fputs(out, stdout);
    arh_string_free(out);
  }
  if (s != ARH_OK && s != ARH_ASSERTION) std::fprintf(stderr, "error: %s\n", arh_last_error());
  if (s == ARH_ASSERTION) std::fprintf(stderr, "check failed\n");
  return exit_code(s);
}

int load(const std::string& path, Group& g) {
  arh_status s = arh_group_load(path.c_str(), &g.g);
  if (s != ARH_OK) {
    std::fprintf(stderr, "error: %s\n", arh_last_error());
    return exit_code(s);
  }
  return ok;
}

void progress(const char* record, void*) {
  std::fputs(record, stderr);
  std::fflush(stderr);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Artin groups with large labels: word problem, coned-off Cayley graph balls, thin bigons"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(arh_version()));

  arh_options opt;
  arh_options_default(&opt);
  std::string group_file;
  bool machine = false;
  std::vector<std::string> words;
  std::vector<int> pair, with;
  std::string from, to, equals;
  bool have_equals = false, export_ball = false, no_timing = false;
  bool small_labels = false, strong = false, extra_large = false, per_pair = false;
  std::string mode = "vertex";
  std::vector<std::string> groups;
  std::vector<int> only;
  int intersect_radius = 4;

  auto common = [&](CLI::App* sub, bool needs_group = true) {
    auto* g = sub->add_option("--group", group_file, "group file");
    if (needs_group) g->required();
    sub->add_flag("--machine", machine, "one key=value record per line");
    sub->add_flag("--allow-small-labels", small_labels,
                  "run outside the extra-large class (results are heuristic)");
  };
  auto ball_flags = [&](CLI::App* sub) {
    sub->add_option("--radius", opt.radius, "ball radius R")->check(CLI::NonNegativeNumber);
    sub->add_option("--slack", opt.slack, "slack S for coset detection")->check(CLI::NonNegativeNumber);
    sub->add_option("--threads", opt.threads, "worker threads (0: all cores)");
  };

  auto* info = app.add_subcommand("info", "group summary and labels");
  common(info);

  auto* relator = app.add_subcommand("relator", "the relator u_ij u_ji^-1");
  common(relator);
  relator->add_option("--pair", pair, "generators i j")->expected(2)->allow_extra_args(false)->required();

  auto* nf = app.add_subcommand("nf", "Garside and amalgam normal forms in G_ij");
  common(nf);
  nf->add_option("--pair", pair, "generators i j")->expected(2)->allow_extra_args(false)->required();
  nf->add_option("word", words, "word tokens, e.g. a1 a2^-1")->required();

  auto* minsyll = app.add_subcommand("minsyll", "syllable-minimal representative in G_ij");
  common(minsyll);
  minsyll->add_option("--pair", pair, "generators i j")->expected(2)->allow_extra_args(false)->required();
  minsyll->add_option("word", words, "word tokens")->required();

  auto* wp = app.add_subcommand("wp", "word problem with the reduction trace");
  common(wp);
  wp->add_option("word", words, "word tokens")->required();
  wp->add_option("--equals", equals, "decide word = this word instead of word = 1");

  auto* reduce = app.add_subcommand("reduce", "Artin-reduction violations of a word");
  common(reduce);
  reduce->add_option("word", words, "word tokens")->required();
  reduce->add_flag("--strong", strong, "strongly Artin-reduced (pieces of length 4)");

  auto* intersect = app.add_subcommand("intersect", "common elements of G_ij and G_st");
  common(intersect);
  intersect->add_option("--pair", pair, "generators i j")->expected(2)->allow_extra_args(false)->required();
  intersect->add_option("--with", with, "generators s t")->expected(2)->allow_extra_args(false)->required();
  intersect->add_option("--radius", intersect_radius, "letter length bound")->check(CLI::NonNegativeNumber);

  auto* ball = app.add_subcommand("ball", "ball of the coned-off Cayley graph");
  common(ball);
  ball_flags(ball);
  ball->add_flag("--export", export_ball, "one record per node and edge");

  auto* dist = app.add_subcommand("dist", "distance in the coned-off graph (doubled units)");
  common(dist);
  ball_flags(dist);
  dist->add_option("--from", from, "word")->required();
  dist->add_option("--to", to, "word")->required();

  auto* geo = app.add_subcommand("geo", "geodesics between two vertices");
  common(geo);
  ball_flags(geo);
  geo->add_option("--from", from, "word")->required();
  geo->add_option("--to", to, "word")->required();
  geo->add_option("--cap-geodesics", opt.geodesic_cap, "paths to list")->check(CLI::PositiveNumber);

  auto* pipeline = app.add_subcommand("pipeline", "block decomposition and condensation checks");
  common(pipeline);
  ball_flags(pipeline);
  auto* pf = pipeline->add_option("--from", from, "word (default: sampled stable pairs)");
  pipeline->add_option("--to", to, "word")->needs(pf);
  pf->needs(pipeline->get_option("--to"));
  pipeline->add_option("--samples", opt.samples, "sampled geodesics");
  pipeline->add_option("--seed", opt.seed, "random seed");
  pipeline->add_flag("--allow-extra-large", extra_large, "also run when some 4 <= m_ij < 7");

  auto* bigons = app.add_subcommand("bigons", "thinness scan of geodesic bigons");
  common(bigons);
  ball_flags(bigons);
  bigons->add_option("--mode", mode, "vertex or claim")->check(CLI::IsMember({"vertex", "claim"}));
  bigons->add_option("--seed", opt.seed, "random seed");
  bigons->add_option("--cap-geodesics", opt.geodesic_cap, "geodesics per endpoint pair")->check(CLI::PositiveNumber);
  bigons->add_option("--cap-quadrilaterals", opt.quadrilateral_cap, "claim-mode items");
  bigons->add_flag("--per-pair", per_pair, "one record per scanned item");

  auto* delta = app.add_subcommand("delta", "common thinness bound over several groups");
  delta->add_option("--group", groups, "group files (repeatable)")->required();
  delta->add_flag("--machine", machine, "one key=value record per line");
  ball_flags(delta);
  delta->add_option("--seed", opt.seed, "random seed");
  delta->add_option("--cap-geodesics", opt.geodesic_cap, "geodesics per endpoint pair")->check(CLI::PositiveNumber);
  delta->add_option("--cap-quadrilaterals", opt.quadrilateral_cap, "claim-mode items");

  auto* accept = app.add_subcommand("accept", "acceptance suite");
  common(accept);
  ball_flags(accept);
  accept->add_option("--only", only, "criteria to run (1..8)")->delimiter(',')->check(CLI::Range(1, 8));
  accept->add_option("--seed", opt.seed, "random seed");
  accept->add_option("--cap-geodesics", opt.geodesic_cap, "geodesics per endpoint pair")->check(CLI::PositiveNumber);
  accept->add_option("--cap-quadrilaterals", opt.quadrilateral_cap, "claim-mode items");
  accept->add_flag("--no-timing", no_timing, "omit runtimes (byte-identical reruns)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? ok : usage;
  }
  have_equals = wp->get_option("--equals")->count() > 0;
  opt.format = machine ? ARH_MACHINE : ARH_TEXT;
  opt.mode = mode == "claim" ? ARH_CLAIM : ARH_VERTEX;
  opt.search_radius = intersect_radius;
  opt.timing = !no_timing;
  opt.allow_small_labels = small_labels;
  opt.strong = strong;
  opt.allow_extra_large = extra_large;
  opt.per_pair = per_pair;
  if (opt.allow_small_labels)
    std::fprintf(stderr, "warning: small-label override: outside the extra-large class results are heuristic\n");

  char* out = nullptr;
  if (delta->parsed()) {
    std::vector<Group> loaded(groups.size());
    std::vector<const arh_group*> ptrs;
    std::vector<const char*> names;
    for (std::size_t k = 0; k < groups.size(); ++k) {
      if (int rc = load(groups[k], loaded[k])) return rc;
      ptrs.push_back(loaded[k].g);
      names.push_back(groups[k].c_str());
    }
    arh_status s = arh_delta(ptrs.data(), names.data(), ptrs.size(), &opt, &out);
    return finish(s, out);
  }

  Group g;
  if (int rc = load(group_file, g)) return rc;
  const std::string word = join(words);
  arh_status s = ARH_OK;
  if (info->parsed()) {
    s = arh_info(g.g, &opt, &out);
  } else if (relator->parsed()) {
    s = arh_relator(g.g, pair[0], pair[1], &opt, &out);
  } else if (nf->parsed()) {
    s = arh_nf(g.g, pair[0], pair[1], word.c_str(), &opt, &out);
  } else if (minsyll->parsed()) {
    s = arh_minsyll(g.g, pair[0], pair[1], word.c_str(), &opt, &out);
  } else if (wp->parsed()) {
    s = arh_wp(g.g, word.c_str(), have_equals ? equals.c_str() : nullptr, &opt, &out);
  } else if (reduce->parsed()) {
    s = arh_reduce(g.g, word.c_str(), &opt, &out);
  } else if (intersect->parsed()) {
    s = arh_intersect(g.g, pair[0], pair[1], with[0], with[1], &opt, &out);
  } else if (ball->parsed()) {
    arh_ball* b = nullptr;
    s = arh_ball_build(g.g, &opt, &b);
    if (s == ARH_OK) {
      s = export_ball ? arh_ball_export(b, &opt, &out) : arh_ball_summary(b, &opt, &out);
      arh_ball_free(b);
    }
  } else if (dist->parsed()) {
    s = arh_dist(g.g, from.c_str(), to.c_str(), &opt, &out);
  } else if (geo->parsed()) {
    s = arh_geo(g.g, from.c_str(), to.c_str(), &opt, &out);
  } else if (pipeline->parsed()) {
    bool ends = pipeline->get_option("--from")->count() > 0;
    s = arh_pipeline(g.g, ends ? from.c_str() : nullptr, ends ? to.c_str() : nullptr, &opt, &out);
  } else if (bigons->parsed()) {
    s = arh_bigons(g.g, &opt, &out);
  } else if (accept->parsed()) {
    s = arh_accept(g.g, only.data(), only.size(), &opt, machine ? nullptr : progress, nullptr, &out);
  }
  return finish(s, out);
}
