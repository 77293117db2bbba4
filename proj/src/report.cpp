#include "artin/report.hpp"

#include <algorithm>
#include <iomanip>
#include <random>
#include <sstream>

namespace artin {

Record& Record::add(const std::string& key, const std::string& value) {
  fields.emplace_back(key, value);
  return *this;
}

const std::string* Record::get(const std::string& key) const {
  for (const auto& [k, v] : fields)
    if (k == key) return &v;
  return nullptr;
}

namespace {

std::string quoted(const std::string& v) {
  bool plain = !v.empty() && v.find_first_of(" \t\"=\\\n") == std::string::npos;
  if (plain) return v;
  std::string out = "\"";
  for (char c : v) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string render_machine(const Records& records) {
  std::string out;
  for (const auto& r : records) {
    out += "type=" + quoted(r.type);
    for (const auto& [k, v] : r.fields) out += " " + k + "=" + quoted(v);
    out += '\n';
  }
  return out;
}

std::string render_text(const Records& records) {
  std::ostringstream out;
  for (const auto& r : records) {
    std::size_t width = 0;
    for (const auto& f : r.fields) width = std::max(width, f.first.size());
    out << r.type << '\n';
    for (const auto& [k, v] : r.fields) out << "  " << std::left << std::setw(int(width) + 2) << k << v << '\n';
  }
  return out.str();
}

std::string word_field(const Word& w) { return w.empty() ? "1" : w.compact(); }

namespace {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::trivial: return "trivial";
    case Verdict::nontrivial: return "nontrivial";
    case Verdict::stalled: return "stalled";
  }
  return "?";
}

const char* mode_name(ScanMode m) { return m == ScanMode::vertex ? "vertex" : "claim"; }

std::string flags(const GroupSpec& spec) {
  std::string f = spec.is_theorem_scope() ? "theorem_scope" : spec.is_extra_large() ? "extra_large" : "small_labels";
  return f;
}

std::string span_field(const SyllableSpan& s) {
  return std::to_string(s.first) + ":" + std::to_string(s.first_exp) + "-" + std::to_string(s.last) + ":" +
         std::to_string(s.last_exp);
}

BallOptions ball_options(const CommandConfig& cfg) {
  BallOptions o;
  o.allow_small_labels = cfg.allow_small_labels;
  return o;
}

VertexId locate(const ConedBall& b, const Word& w, const char* what) {
  auto v = b.find(w);
  if (!v)
    throw Error(ErrorKind::argument, std::string(what) + " word " + word_field(w) + " lies outside the ball of radius " +
                                         std::to_string(b.radius()));
  return *v;
}

void add_pipeline(Records& out, const ConedBall& b, const XPath& alpha, const PipelineReport& rep,
                  std::size_t index) {
  Record r("pipeline");
  r.add("index", index)
      .add("source", word_field(b.vertex(rep.blocks.source).word))
      .add("target", word_field(b.vertex(rep.blocks.target).word))
      .add("length", alpha.length())
      .add("blocks", rep.blocks.blocks.size())
      .add("beta", word_field(rep.beta))
      .add("gamma", word_field(rep.gamma.word))
      .add("h_alpha_beta", rep.hausdorff_alpha_beta)
      .add("h_beta_gamma", rep.hausdorff_beta_gamma)
      .add("h_alpha_gamma", rep.hausdorff_alpha_gamma)
      .flag("strongly_reduced", rep.strongly_reduced)
      .add("outside_points", rep.outside_points)
      .flag("ok", rep.ok)
      .add("path", format_path(b, alpha));
  out.push_back(r);
  for (std::size_t k = 0; k < rep.blocks.blocks.size(); ++k) {
    const Block& bl = rep.blocks.blocks[k];
    Record br("block");
    br.add("index", index).add("block", k + 1).add("kind", bl.kind == BlockKind::gamma ? "gamma" : "cone");
    if (bl.kind == BlockKind::cone)
      br.add("pair", std::to_string(bl.pair.i) + "," + std::to_string(bl.pair.j))
          .add("element", word_field(bl.element))
          .add("minimality", bl.minimality == Minimality::exhaustive ? "exhaustive" : "bounded");
    br.add("label", word_field(bl.label)).add("part", word_field(rep.gamma.parts[k]));
    out.push_back(br);
  }
  for (const auto& f : rep.failures) out.push_back(Record("failure").add("index", index).add("check", f));
}

}  // namespace

Records cmd_info(const GroupSpec& spec) {
  Record r("info");
  r.add("rank", spec.rank()).add("finite_pairs", spec.finite_pairs().size()).add("class", flags(spec));
  r.flag("extra_large", spec.is_extra_large()).flag("theorem_scope", spec.is_theorem_scope());
  r.add("abelian_classes", spec.abelian_class_count());
  Records out{r};
  for (Gen i = 1; i <= spec.rank(); ++i)
    for (Gen j = i + 1; j <= spec.rank(); ++j)
      out.push_back(Record("label").add("i", i).add("j", j).add("m", spec.label(i, j).str()));
  return out;
}

Records cmd_relator(const GroupSpec& spec, Gen i, Gen j) {
  auto p = dihedral_pair(spec, i, j);
  Word r = build_relator(p);
  Record rec("relator");
  rec.add("i", i).add("j", j).add("m", p.m).add("word", word_field(r));
  rec.add("syllables", r.syllable_length()).add("letters", r.letter_length());
  rec.add("u_ij", word_field(alternating_word(p, i, p.m))).add("u_ji", word_field(alternating_word(p, j, p.m)));
  return {rec};
}

Records cmd_nf(const GroupSpec& spec, Gen i, Gen j, const Word& w) {
  auto p = dihedral_pair(spec, i, j);
  require_pair_word(w, p);
  auto g = garside_nf(w, p);
  auto a = amalgam_nf(w, p);
  Record rec("nf");
  rec.add("word", word_field(w)).add("pair", std::to_string(i) + "," + std::to_string(j)).add("m", p.m);
  rec.add("inf", g.inf).add("factors", g.factors.size()).add("garside", format_nf(g, p));
  rec.add("amalgam", format_amalgam(a, p));
  rec.flag("trivial", g.is_identity()).flag("oracles_agree", g.is_identity() == a.is_identity());
  return {rec};
}

Records cmd_minsyll(const GroupSpec& spec, Gen i, Gen j, const Word& w) {
  auto p = dihedral_pair(spec, i, j);
  require_pair_word(w, p);
  auto res = min_syllable_rep(w, p);
  Record rec("minsyll");
  rec.add("word", word_field(w)).add("syllables", w.syllable_length());
  rec.add("minimal", word_field(res.word)).add("minimal_syllables", res.word.syllable_length());
  rec.add("minimality", res.minimality == Minimality::exhaustive ? "exhaustive" : "bounded");
  return {rec};
}

Records cmd_wp(const GroupSpec& spec, const Word& w, const std::optional<Word>& other,
               const CommandConfig& cfg) {
  Word input = other ? w * other->inverse() : w;
  auto res = dehn_solve(input, spec, cfg.allow_small_labels);
  Records out;
  for (std::size_t k = 0; k < res.trace.size(); ++k) {
    const auto& s = res.trace[k];
    out.push_back(Record("step")
                      .add("step", k + 1)
                      .add("before", word_field(s.before))
                      .add("span", span_field(s.violation.span))
                      .add("pair", std::to_string(s.violation.pair.i) + "," + std::to_string(s.violation.pair.j))
                      .add("piece", word_field(subword(s.before, s.violation.span)))
                      .add("completion", word_field(s.violation.completion))
                      .add("after", word_field(s.after)));
  }
  Record r("wp");
  r.add("word", word_field(w));
  if (other) r.add("other", word_field(*other));
  r.add("verdict", verdict_name(res.verdict)).add("steps", res.trace.size()).add("residual", word_field(res.residual));
  if (other && res.verdict != Verdict::stalled) r.flag("equal", res.verdict == Verdict::trivial);
  out.push_back(r);
  return out;
}

Records cmd_reduce(const GroupSpec& spec, const Word& w, const CommandConfig& cfg) {
  ScanOptions opt{cfg.strong ? 4 : 3, cfg.allow_small_labels};
  auto vs = all_violations(w, spec, opt);
  Records out;
  for (std::size_t k = 0; k < vs.size(); ++k)
    out.push_back(Record("violation")
                      .add("index", k + 1)
                      .add("span", span_field(vs[k].span))
                      .add("pair", std::to_string(vs[k].pair.i) + "," + std::to_string(vs[k].pair.j))
                      .add("piece", word_field(subword(w, vs[k].span)))
                      .add("completion", word_field(vs[k].completion)));
  Record r("reduce");
  r.add("word", word_field(w)).add("level", opt.k).add("violations", vs.size());
  r.flag("artin_reduced", is_artin_reduced(w, spec, cfg.allow_small_labels));
  r.flag("strongly_artin_reduced", is_strongly_artin_reduced(w, spec, cfg.allow_small_labels));
  out.push_back(r);
  return out;
}

Records cmd_intersect(const GroupSpec& spec, Gen i, Gen j, Gen s, Gen t, const CommandConfig& cfg) {
  auto rep = parabolic_intersection_check(spec, i, j, s, t, cfg.search_radius);
  Records out;
  for (const auto& c : rep.common)
    out.push_back(
        Record("common").add("left", word_field(c.left)).add("right", word_field(c.right)).flag("allowed", c.allowed));
  Record r("intersect");
  r.add("first", std::to_string(i) + "," + std::to_string(j)).add("second", std::to_string(s) + "," + std::to_string(t));
  r.add("shared", rep.shared ? "a" + std::to_string(*rep.shared) : std::string("none"));
  r.add("radius", rep.radius).add("first_elements", rep.first_elements).add("second_elements", rep.second_elements);
  r.add("candidate_pairs", rep.candidate_pairs).add("common", rep.common.size()).flag("ok", rep.ok);
  out.push_back(r);
  return out;
}

Records ball_records(const ConedBall& b) {
  auto s = b.summary();
  Record r("ball");
  r.add("radius", s.radius).add("slack", s.slack).add("group_vertices", s.group_vertices);
  r.add("slack_vertices", s.slack_vertices).add("gamma_edges", s.gamma_edges);
  r.add("cone_vertices", s.cone_vertices).add("cone_edges", s.cone_edges).add("nodes", b.node_count());
  r.flag("stabilized", s.stabilized);
  return {r};
}

Records cmd_dist(const GroupSpec& spec, const Word& from, const Word& to, const CommandConfig& cfg) {
  auto b = build_ball(spec, cfg.radius, cfg.slack, ball_options(cfg));
  auto big = build_ball(spec, cfg.radius + 1, cfg.slack + 1, ball_options(cfg));
  int d = distance_X(b, locate(b, from, "source"), locate(b, to, "target"));
  int d2 = distance_X(big, locate(big, from, "source"), locate(big, to, "target"));
  Record r("dist");
  r.add("from", word_field(from)).add("to", word_field(to)).add("radius", cfg.radius).add("slack", cfg.slack);
  r.add("distance", d).add("enlarged_distance", d2).flag("stable", d == d2);
  return {r};
}

Records cmd_geo(const GroupSpec& spec, const Word& from, const Word& to, const CommandConfig& cfg) {
  auto b = build_ball(spec, cfg.radius, cfg.slack, ball_options(cfg));
  auto set = all_geodesics(b, locate(b, from, "source"), locate(b, to, "target"), cfg.geodesic_cap);
  Records out;
  for (std::size_t k = 0; k < set.paths.size(); ++k)
    out.push_back(Record("path").add("index", k + 1).add("nodes", format_path(b, set.paths[k])));
  Record r("geo");
  r.add("from", word_field(from)).add("to", word_field(to)).add("length", set.length);
  r.add("count", set.count_saturated ? std::string("saturated") : std::to_string(set.count));
  r.add("listed", set.paths.size()).flag("capped", set.capped);
  out.push_back(r);
  return out;
}

Records cmd_pipeline(const GroupSpec& spec, const std::optional<std::pair<Word, Word>>& ends,
                     const CommandConfig& cfg) {
  PipelineOptions po{cfg.allow_extra_large};
  std::mt19937_64 rng(cfg.seed);
  Records out;
  std::size_t failed = 0, paths = 0;
  int worst = 0;
  auto run = [&](const ConedBall& b, VertexId x, VertexId y) {
    XPath alpha = sample_geodesic(b, x, y, rng);
    auto rep = verify_pipeline(b, alpha, po);
    ++paths;
    failed += !rep.ok;
    worst = std::max(worst, rep.hausdorff_alpha_gamma);
    add_pipeline(out, b, alpha, rep, paths);
  };
  if (ends) {
    auto b = build_ball(spec, cfg.radius, cfg.slack, ball_options(cfg));
    VertexId x = locate(b, ends->first, "source"), y = locate(b, ends->second, "target");
    if (x == y) throw Error(ErrorKind::argument, "source and target coincide");
    run(b, x, y);
  } else {
    if (!spec.is_theorem_scope() && !(cfg.allow_extra_large && spec.is_extra_large()))
      throw Error(ErrorKind::scope, "pipeline requires all m_ij >= 7");
    StableBall sb(spec, cfg.radius, cfg.slack, ball_options(cfg));
    const ConedBall& b = sb.ball();
    std::vector<std::pair<VertexId, VertexId>> pairs;
    for (VertexId x = 0; x < b.group_count(); ++x)
      for (VertexId y = 0; y < b.group_count(); ++y)
        if (x != y && sb.stable(x, y)) pairs.emplace_back(x, y);
    if (pairs.empty()) throw Error(ErrorKind::argument, "ball has no stable pairs");
    std::uniform_int_distribution<std::size_t> pick(0, pairs.size() - 1);
    for (std::size_t t = 0; t < cfg.samples; ++t) {
      auto [x, y] = pairs[pick(rng)];
      run(b, x, y);
    }
  }
  Record r("pipeline_summary");
  r.add("paths", paths).add("failures", failed).add("max_h_alpha_gamma", worst).add("bound", 8).flag("ok", failed == 0);
  out.push_back(r);
  return out;
}

Records cmd_bigons(const GroupSpec& spec, const CommandConfig& cfg) {
  if (!spec.is_extra_large() && !cfg.allow_small_labels)
    throw Error(ErrorKind::scope, "bigon scans require an extra-large group (all m_ij >= 4)");
  StableBall sb(spec, cfg.radius, cfg.slack, ball_options(cfg));
  BigonScanOptions o;
  o.mode = cfg.mode;
  o.geodesic_cap = cfg.geodesic_cap;
  o.quadrilateral_cap = cfg.quadrilateral_cap;
  o.seed = cfg.seed;
  o.threads = cfg.threads;
  o.keep_records = cfg.per_pair;
  auto rep = bigon_scan(sb, o);
  const ConedBall& b = sb.ball();
  Records out;
  for (const auto& rec : rep.records) {
    Record r("pair");
    r.add("x", word_field(b.vertex(rec.x1).word)).add("y", word_field(b.vertex(rec.y1).word));
    if (cfg.mode == ScanMode::claim)
      r.add("x2", word_field(b.vertex(rec.x2).word)).add("y2", word_field(b.vertex(rec.y2).word));
    r.add("distance", sb.distance(rec.x1, rec.y1)).add("geodesics", rec.geodesics).add("delta", rec.delta);
    out.push_back(r);
  }
  std::string hist;
  for (const auto& [d, c] : rep.histogram) hist += (hist.empty() ? "" : ",") + std::to_string(d) + ":" + std::to_string(c);
  Record s("bigons");
  s.add("mode", mode_name(rep.mode)).add("radius", cfg.radius).add("slack", cfg.slack).add("seed", cfg.seed);
  s.add("scanned", rep.scanned).add("skipped_unstable", rep.skipped_unstable);
  s.add("sampled_geodesic_sets", rep.geodesic_sets_sampled).flag("capped", rep.capped);
  s.add("max_delta", rep.max_delta).add("histogram", hist.empty() ? std::string("none") : hist).add("bound", 28);
  s.flag("within_bound", rep.max_delta <= 28);
  out.push_back(s);
  if (rep.scanned) {
    Record w("witness");
    w.add("x", word_field(b.vertex(rep.witness.x1).word)).add("y", word_field(b.vertex(rep.witness.y1).word));
    if (cfg.mode == ScanMode::claim)
      w.add("x2", word_field(b.vertex(rep.witness.x2).word)).add("y2", word_field(b.vertex(rep.witness.y2).word));
    w.add("delta", rep.max_delta).add("first", format_path(b, rep.witness_first));
    w.add("second", format_path(b, rep.witness_second));
    out.push_back(w);
  }
  return out;
}

Records cmd_delta(const std::vector<std::pair<std::string, GroupSpec>>& specs, const CommandConfig& cfg) {
  for (const auto& [name, spec] : specs)
    if (!spec.is_extra_large() && !cfg.allow_small_labels)
      throw Error(ErrorKind::scope, name + ": bigon scans require an extra-large group (all m_ij >= 4)");
  BigonScanOptions o;
  o.geodesic_cap = cfg.geodesic_cap;
  o.quadrilateral_cap = cfg.quadrilateral_cap;
  o.seed = cfg.seed;
  o.threads = cfg.threads;
  auto rep = delta_report(specs, cfg.radius, cfg.slack, o);
  Records out;
  for (const auto& row : rep.rows)
    out.push_back(Record("delta_row")
                      .add("name", row.name)
                      .add("rank", row.spec.rank())
                      .add("vertex_delta", row.vertex_delta)
                      .add("claim_delta", row.claim_delta)
                      .flag("sampled", row.capped));
  out.push_back(Record("delta")
                    .add("radius", cfg.radius)
                    .add("slack", cfg.slack)
                    .add("common_bound", rep.common_bound)
                    .add("bound", 28)
                    .flag("within_bound", rep.within_bound));
  return out;
}

Record accept_record(const CriterionResult& c, bool timing) {
  Record r("criterion");
  r.add("id", c.id).add("name", c.name).add("status", status_name(c.status));
  r.add("observed", c.observed.empty() ? std::string("none") : c.observed);
  r.add("bound", c.bound.empty() ? std::string("none") : c.bound);
  if (!c.note.empty()) r.add("note", c.note);
  if (timing) {
    std::ostringstream t;
    t << std::fixed << std::setprecision(2) << c.seconds;
    r.add("seconds", t.str());
  }
  return r;
}

Records accept_records(const AcceptanceReport& report, bool timing) {
  Records out;
  std::size_t pass = 0, fail = 0, skip = 0;
  for (const auto& c : report.results) {
    out.push_back(accept_record(c, timing));
    pass += c.status == CriterionStatus::pass;
    skip += c.status == CriterionStatus::skip;
    fail += c.status == CriterionStatus::fail || c.status == CriterionStatus::resource;
  }
  out.push_back(Record("accept")
                    .add("passed", pass)
                    .add("failed", fail)
                    .add("skipped", skip)
                    .flag("resource_cap", report.resource_hit())
                    .flag("ok", report.ok()));
  return out;
}

}  // namespace artin
