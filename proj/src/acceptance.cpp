#include "artin/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <memory>
#include <random>
#include <sstream>
#include <unordered_map>

#include "artin/relhyp.hpp"

namespace artin {

namespace {

using Rng = std::mt19937_64;

std::string str(long v) { return std::to_string(v); }

// Keys of every element a_s^e1 a_t^e2 ... with `len` syllables, |e| <= 2,
// starting at local letter `start`.
template <class State>
void half_keys(int m, int start, int len, std::unordered_map<std::string, std::size_t>& out) {
  std::vector<State> stack(len + 1, State(m));
  std::function<void(int)> rec = [&](int depth) {
    if (depth == len) {
      ++out[stack[depth].key()];
      return;
    }
    for (int e : {-2, -1, 1, 2}) {
      stack[depth + 1] = stack[depth];
      stack[depth + 1].multiply((start + depth) % 2, e);
      rec(depth + 1);
    }
  };
  rec(0);
}

// Number of trivial words w = w1 w2 with `len` syllables starting at `start`:
// pairs with key(w1) = key(w2^-1).
template <class State>
std::size_t trivial_count(int m, int start, int len) {
  int l1 = len / 2, l2 = len - l1;
  // w2 starts at start + l1; w2^-1 starts at the letter of its last syllable
  int t = (start + l1 + l2 - 1) % 2;
  std::unordered_map<std::string, std::size_t> a, b;
  half_keys<State>(m, start, l1, a);
  half_keys<State>(m, t, l2, b);
  std::size_t hits = 0;
  for (const auto& [k, c] : a)
    if (auto it = b.find(k); it != b.end()) hits += c * it->second;
  return hits;
}

void exhaustive_nontriviality(const AcceptanceConfig& cfg, CriterionResult& r) {
  std::size_t words = 0, garside_hits = 0, amalgam_hits = 0;
  for (int m = 2; m <= cfg.exhaustive_max_m; ++m) {
    for (int start : {0, 1}) {
      for (int e : {-2, -1, 1, 2}) {
        GarsideState g(m);
        AmalgamState am(m);
        g.multiply(start, e);
        am.multiply(start, e);
        garside_hits += g.is_identity();
        amalgam_hits += am.is_identity();
        ++words;
      }
      for (int len = 2; len < 2 * m; len += 2) {
        garside_hits += trivial_count<GarsideState>(m, start, len);
        amalgam_hits += trivial_count<AmalgamState>(m, start, len);
        words += std::size_t(1) << (2 * len);
      }
    }
  }
  r.observed = "counterexamples=" + str(long(garside_hits + amalgam_hits)) + " words=" + str(long(words));
  r.bound = "counterexamples=0";
  r.note = "m=2.." + str(cfg.exhaustive_max_m) + ", syllable length 1 and even lengths below 2m";
  r.status = garside_hits + amalgam_hits == 0 ? CriterionStatus::pass : CriterionStatus::fail;
}

Word random_pair_word(Rng& rng, const DihedralPair& p, int max_len) {
  std::uniform_int_distribution<int> len(1, max_len), coin(0, 1);
  std::vector<int> letters;
  int n = len(rng);
  while (static_cast<int>(letters.size()) < n) {
    int x = (coin(rng) ? p.i : p.j) * (coin(rng) ? 1 : -1);
    if (!letters.empty() && letters.back() == -x) continue;
    letters.push_back(x);
  }
  return free_reduce(letters);
}

void oracle_equivalence(const AcceptanceConfig& cfg, CriterionResult& r) {
  Rng rng(cfg.seed);
  std::size_t disagreements = 0, trivial = 0, total = 0;
  for (int m : {2, 3, 4, 7, 8}) {
    auto p = dihedral_pair(1, 2, m);
    for (std::size_t t = 0; t < cfg.oracle_words; ++t) {
      Word w = random_pair_word(rng, p, 12);
      bool g = garside_nf(w, p).is_identity();
      bool a = amalgam_nf(w, p).is_identity();
      disagreements += g != a;
      trivial += g;
      ++total;
    }
  }
  r.observed = "disagreements=" + str(long(disagreements)) + " words=" + str(long(total)) +
               " trivial=" + str(long(trivial));
  r.bound = "disagreements=0";
  r.note = str(long(cfg.oracle_words)) + " words of length <= 12 per m in {2,3,4,7,8}";
  r.status = disagreements == 0 ? CriterionStatus::pass : CriterionStatus::fail;
}

Word random_word(Rng& rng, int n, int len) {
  std::uniform_int_distribution<int> gen(1, n), coin(0, 1);
  std::vector<int> letters;
  while (static_cast<int>(letters.size()) < len) {
    int x = gen(rng) * (coin(rng) ? 1 : -1);
    if (!letters.empty() && letters.back() == -x) continue;
    letters.push_back(x);
  }
  return free_reduce(letters);
}

Word conjugated_relator(Rng& rng, const GroupSpec& spec) {
  auto pairs = spec.finite_pairs();
  auto [i, j] = pairs[std::uniform_int_distribution<std::size_t>(0, pairs.size() - 1)(rng)];
  Word r = build_relator(dihedral_pair(spec, i, j));
  if (std::uniform_int_distribution<int>(0, 1)(rng)) r = r.inverse();
  Word c = random_word(rng, spec.rank(), std::uniform_int_distribution<int>(0, 5)(rng));
  return c * r * c.inverse();
}

bool scope_gate(const GroupSpec& spec, bool theorem, CriterionResult& r) {
  if (theorem ? spec.is_theorem_scope() : spec.is_extra_large()) return true;
  r.status = CriterionStatus::skip;
  r.note = theorem ? "theorem-scope required (all m_ij >= 7)" : "extra-large group required (all m_ij >= 4)";
  return false;
}

void dehn_completeness(const AcceptanceConfig& cfg, CriterionResult& r) {
  const GroupSpec& spec = cfg.spec;
  if (!scope_gate(spec, false, r)) return;
  Rng rng(cfg.seed);
  std::size_t products = 0, product_fail = 0, reduced = 0, reduced_fail = 0, steps = 0;
  if (!spec.finite_pairs().empty()) {
    while (products < cfg.dehn_words) {
      Word w;
      int k = std::uniform_int_distribution<int>(1, 4)(rng);
      for (int t = 0; t < k; ++t) w = w * conjugated_relator(rng, spec);
      if (w.empty()) continue;
      ++products;
      auto res = dehn_solve(w, spec);
      steps += res.trace.size();
      product_fail += res.verdict != Verdict::trivial;
    }
  }
  std::uniform_int_distribution<int> len(1, 30);
  for (std::size_t tries = 0; reduced < cfg.dehn_words && tries < 100 * cfg.dehn_words; ++tries) {
    Word w = random_word(rng, spec.rank(), len(rng));
    if (w.empty() || !is_artin_reduced(w, spec)) continue;
    ++reduced;
    auto res = dehn_solve(w, spec);
    steps += res.trace.size();
    reduced_fail += res.verdict != Verdict::nontrivial || !res.trace.empty();
  }
  r.observed = "failures=" + str(long(product_fail + reduced_fail)) + " products=" + str(long(products)) +
               " reduced_words=" + str(long(reduced));
  r.bound = "failures=0";
  if (spec.finite_pairs().empty()) r.note = "no relators: only reduced words tested";
  bool enough = reduced == cfg.dehn_words;
  if (!enough) r.note += (r.note.empty() ? "" : "; ") + std::string("too few Artin-reduced samples");
  r.status = product_fail + reduced_fail == 0 && enough ? CriterionStatus::pass : CriterionStatus::fail;
}

void pipeline(const AcceptanceConfig& cfg, const StableBall& sb, CriterionResult& r) {
  const ConedBall& b = sb.ball();
  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (VertexId x = 0; x < b.group_count(); ++x)
    for (VertexId y = 0; y < b.group_count(); ++y)
      if (x != y && sb.stable(x, y)) pairs.emplace_back(x, y);
  if (pairs.empty()) {
    r.status = CriterionStatus::fail;
    r.observed = "stable_pairs=0";
    return;
  }
  Rng rng(cfg.seed);
  std::uniform_int_distribution<std::size_t> pick(0, pairs.size() - 1);
  std::size_t failures = 0, outside = 0;
  int worst = 0;
  std::string first_failure;
  for (std::size_t t = 0; t < cfg.pipeline_paths; ++t) {
    auto [x, y] = pairs[pick(rng)];
    XPath alpha = sample_geodesic(b, x, y, rng);
    auto rep = verify_pipeline(b, alpha);
    if (!rep.ok) {
      ++failures;
      if (first_failure.empty()) first_failure = rep.failures.front();
    }
    worst = std::max(worst, rep.hausdorff_alpha_gamma);
    outside += rep.outside_points;
  }
  r.observed = "failures=" + str(long(failures)) + " paths=" + str(long(cfg.pipeline_paths)) +
               " max_hausdorff_alpha_gamma=" + str(worst);
  r.bound = "failures=0 max_hausdorff_alpha_gamma<=8";
  if (outside) r.note = str(long(outside)) + " points outside the ball bounded by anchors";
  if (!first_failure.empty()) r.note += (r.note.empty() ? "" : "; ") + first_failure;
  r.status = failures == 0 && worst <= 8 ? CriterionStatus::pass : CriterionStatus::fail;
}

BigonScanOptions scan_options(const AcceptanceConfig& cfg, ScanMode mode) {
  BigonScanOptions o;
  o.mode = mode;
  o.geodesic_cap = cfg.geodesic_cap;
  o.quadrilateral_cap = cfg.quadrilateral_cap;
  o.seed = cfg.seed;
  o.threads = cfg.threads;
  return o;
}

void thin_bigons(const AcceptanceConfig& cfg, const StableBall& sb, CriterionResult& r) {
  auto v = bigon_scan(sb, scan_options(cfg, ScanMode::vertex));
  auto c = bigon_scan(sb, scan_options(cfg, ScanMode::claim));
  r.observed = "vertex_max=" + str(v.max_delta) + " claim_max=" + str(c.max_delta) +
               " pairs=" + str(long(v.scanned)) + " quadrilaterals=" + str(long(c.scanned));
  r.bound = "max<=" + str(cfg.delta_bound);
  std::ostringstream note;
  note << "stable pairs only; " << v.geodesic_sets_sampled << " vertex-mode geodesic sets sampled";
  if (c.capped) note << "; quadrilaterals sampled at cap " << cfg.quadrilateral_cap;
  r.note = note.str();
  r.status = v.max_delta <= cfg.delta_bound && c.max_delta <= cfg.delta_bound ? CriterionStatus::pass
                                                                             : CriterionStatus::fail;
}

void uniformity(const AcceptanceConfig& cfg, CriterionResult& r) {
  auto d = delta_report({{"n3_m7", GroupSpec::uniform(3, 7)},
                         {"n3_m8", GroupSpec::uniform(3, 8)},
                         {"n3_m9", GroupSpec::uniform(3, 9)},
                         {"n4_m7", GroupSpec::uniform(4, 7)}},
                        cfg.radius, cfg.slack, scan_options(cfg, ScanMode::vertex));
  std::ostringstream obs;
  obs << "common_bound=" << d.common_bound;
  for (const auto& row : d.rows) obs << " " << row.name << "=" << row.vertex_delta << "/" << row.claim_delta;
  r.observed = obs.str();
  r.bound = "common_bound<=" + str(cfg.delta_bound);
  r.note = "vertex/claim maxima per spec";
  r.status = d.common_bound <= cfg.delta_bound ? CriterionStatus::pass : CriterionStatus::fail;
}

void intersections(const AcceptanceConfig& cfg, CriterionResult& r) {
  auto a = parabolic_intersection_check(GroupSpec::uniform(3, 7), 1, 2, 1, 3, cfg.intersection_radius);
  auto b = parabolic_intersection_check(GroupSpec::uniform(4, 7), 1, 2, 3, 4, cfg.intersection_radius);
  std::size_t bad = 0;
  for (const auto& c : a.common) bad += !c.allowed;
  for (const auto& c : b.common) bad += !c.allowed;
  r.observed = "violations=" + str(long(bad)) + " common_12_13=" + str(long(a.common.size())) +
               " common_12_34=" + str(long(b.common.size()));
  r.bound = "violations=0 common_12_34=1";
  r.note = "radius " + str(cfg.intersection_radius);
  r.status = a.ok && b.ok && bad == 0 && b.common.size() == 1 ? CriterionStatus::pass : CriterionStatus::fail;
}

void free_degeneracy(const AcceptanceConfig& cfg, CriterionResult& r) {
  std::size_t mismatches = 0;
  for (int n : {2, 3})
    for (int R = 0; R <= 4; ++R) {
      auto b = build_ball(GroupSpec(n), R, 1);
      std::size_t expect = 1, layer = 2 * n;
      for (int k = 1; k <= R; ++k, layer *= 2 * n - 1) expect += layer;
      mismatches += b.group_count() != expect || b.edges().size() + 1 != expect || !b.cones().empty();
    }
  GroupSpec f2(2);
  StableBall sb(f2, cfg.radius, cfg.slack);
  auto v = bigon_scan(sb, scan_options(cfg, ScanMode::vertex));
  Rng rng(cfg.seed);
  std::size_t steps = 0;
  for (int t = 0; t < 200; ++t) steps += dehn_solve(random_word(rng, 2, 1 + t % 20), f2).trace.size();
  r.observed = "count_mismatches=" + str(long(mismatches)) + " delta=" + str(v.max_delta) +
               " dehn_steps=" + str(long(steps));
  r.bound = "count_mismatches=0 delta=0 dehn_steps=0";
  r.status = mismatches == 0 && v.max_delta == 0 && steps == 0 ? CriterionStatus::pass : CriterionStatus::fail;
}

}  // namespace

std::size_t trivial_pair_words(int m, int syllables, bool garside) {
  if (m < 2 || syllables < 1) throw Error(ErrorKind::argument, "need m >= 2 and syllables >= 1");
  std::size_t total = 0;
  for (int start : {0, 1})
    total += garside ? trivial_count<GarsideState>(m, start, syllables)
                     : trivial_count<AmalgamState>(m, start, syllables);
  return total;
}

bool AcceptanceReport::ok() const {
  for (const auto& r : results)
    if (r.status == CriterionStatus::fail || r.status == CriterionStatus::resource) return false;
  return true;
}

bool AcceptanceReport::resource_hit() const {
  for (const auto& r : results)
    if (r.status == CriterionStatus::resource) return true;
  return false;
}

const char* status_name(CriterionStatus s) {
  switch (s) {
    case CriterionStatus::pass: return "PASS";
    case CriterionStatus::fail: return "FAIL";
    case CriterionStatus::skip: return "SKIP";
    case CriterionStatus::resource: return "RESOURCE";
  }
  return "?";
}

AcceptanceReport run_acceptance(const AcceptanceConfig& cfg,
                                const std::function<void(const CriterionResult&)>& progress) {
  static const char* names[] = {"",
                                "exhaustive nontriviality of short two-generator words",
                                "normal form oracle equivalence",
                                "Dehn solver completeness",
                                "block pipeline on sampled geodesics",
                                "thin bigons",
                                "uniformity across groups",
                                "parabolic intersections",
                                "free-group degeneracy"};
  auto wanted = [&](int id) {
    return cfg.only.empty() || std::find(cfg.only.begin(), cfg.only.end(), id) != cfg.only.end();
  };
  AcceptanceReport rep;
  std::unique_ptr<StableBall> sb;
  auto stable_ball = [&]() -> const StableBall& {
    if (!sb) sb = std::make_unique<StableBall>(cfg.spec, cfg.radius, cfg.slack);
    return *sb;
  };
  for (int id = 1; id <= 8; ++id) {
    if (!wanted(id)) continue;
    CriterionResult r;
    r.id = id;
    r.name = names[id];
    auto t0 = std::chrono::steady_clock::now();
    try {
      switch (id) {
        case 1: exhaustive_nontriviality(cfg, r); break;
        case 2: oracle_equivalence(cfg, r); break;
        case 3: dehn_completeness(cfg, r); break;
        case 4:
          if (scope_gate(cfg.spec, true, r)) pipeline(cfg, stable_ball(), r);
          break;
        case 5:
          if (scope_gate(cfg.spec, false, r)) thin_bigons(cfg, stable_ball(), r);
          break;
        case 6: uniformity(cfg, r); break;
        case 7: intersections(cfg, r); break;
        case 8: free_degeneracy(cfg, r); break;
      }
    } catch (const Error& e) {
      r.status = e.kind() == ErrorKind::resource ? CriterionStatus::resource : CriterionStatus::fail;
      r.note = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.results.push_back(r);
    if (progress) progress(r);
    if (r.status == CriterionStatus::resource) break;
  }
  return rep;
}

}  // namespace artin
