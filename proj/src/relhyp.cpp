#include "artin/relhyp.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <sstream>
#include <thread>

namespace artin {

namespace {

Error malformed(const std::string& what) { return Error(ErrorKind::argument, "malformed path: " + what); }

bool adjacent(const ConedBall& ball, NodeId a, NodeId b) {
  auto nb = ball.neighbors(a);
  return std::find(nb.begin(), nb.end(), b) != nb.end();
}

std::size_t member_index(const ConeVertex& c, VertexId v) {
  auto it = std::lower_bound(c.members.begin(), c.members.end(), v);
  if (it == c.members.end() || *it != v) throw malformed("vertex is not a member of the cone");
  return static_cast<std::size_t>(it - c.members.begin());
}

}  // namespace

BlockPath decompose_blocks(const ConedBall& ball, const XPath& path) {
  const auto& nodes = path.nodes;
  if (nodes.empty()) throw malformed("empty");
  for (NodeId x : nodes)
    if (x >= ball.node_count()) throw malformed("node out of range");
  if (ball.kind(nodes.front()) != NodeKind::group || ball.kind(nodes.back()) != NodeKind::group)
    throw malformed("endpoints must be group vertices");
  BlockPath bp;
  bp.source = nodes.front();
  bp.target = nodes.back();
  std::optional<Block> run;
  auto close_run = [&] {
    if (run) bp.blocks.push_back(std::move(*run));
    run.reset();
  };
  std::size_t pos = 0;
  while (pos + 1 < nodes.size()) {
    NodeId x = nodes[pos], y = nodes[pos + 1];
    if (pos + 2 >= nodes.size()) throw malformed("path ends inside an edge");
    NodeId z = nodes[pos + 2];
    if (ball.kind(z) != NodeKind::group || !adjacent(ball, x, y) || !adjacent(ball, y, z))
      throw malformed("consecutive nodes are not adjacent");
    if (ball.kind(y) == NodeKind::midpoint) {
      const GammaEdge& e = ball.edges()[ball.edge_index(y)];
      Gen g = e.gen;
      int s;
      if (e.from == x && e.to == z) {
        s = e.sign;
      } else if (e.to == x && e.from == z) {
        s = -e.sign;
      } else {
        throw malformed("edge traversed back to its start");
      }
      if (!run) {
        run.emplace();
        run->kind = BlockKind::gamma;
        run->first = pos;
        run->from = x;
      }
      run->label.append(g, s);
      run->last = pos + 2;
      run->to = z;
    } else if (ball.kind(y) == NodeKind::cone) {
      close_run();
      if (x == z) throw malformed("cone block returns to its start");
      std::size_t ci = ball.cone_index(y);
      const ConeVertex& c = ball.cones()[ci];
      Block b;
      b.kind = BlockKind::cone;
      b.first = pos;
      b.last = pos + 2;
      b.from = x;
      b.to = z;
      b.cone = ci;
      b.pair = c.pair;
      b.element = c.offsets[member_index(c, x)].inverse() * c.offsets[member_index(c, z)];
      if (garside_nf(b.element, c.pair).is_identity())
        throw malformed("cone block joins equal elements");
      auto rep = min_syllable_rep(b.element, c.pair);
      b.label = rep.word;
      b.minimality = rep.minimality;
      bp.blocks.push_back(std::move(b));
    } else {
      throw malformed("two group vertices in a row");
    }
    pos += 2;
  }
  close_run();
  return bp;
}

Word build_beta(const BlockPath& bp) {
  Word v;
  for (const auto& b : bp.blocks) v.append(b.label);
  return v;
}

CondensedPath condense(const BlockPath& bp) {
  const auto& bl = bp.blocks;
  CondensedPath out;
  const std::size_t t = bl.size();
  out.parts.resize(t);
  if (t == 0) return out;
  out.parts[0] = bl[0].label;
  for (std::size_t k = 0; k + 1 < t; ++k) {
    const Word& next = bl[k + 1].label;
    if (bl[k].kind == BlockKind::cone && bl[k + 1].kind == BlockKind::cone) {
      const Word& cur = bl[k].label;
      if (!cur.empty() && !next.empty() && cur.back().gen == next.front().gen) {
        out.parts[k].append(next.front().gen, next.front().exp);
        std::vector<Syllable> rest(next.syllables().begin() + 1, next.syllables().end());
        out.parts[k + 1] = Word::from_syllables(rest);
        continue;
      }
    }
    out.parts[k + 1] = next;
  }
  for (const auto& p : out.parts) out.word.append(p);
  return out;
}

namespace {

// A point of a path in X: a node of the ball, or a point outside the ball
// known to be within `offset` of the node `anchor`.
struct Point {
  std::optional<NodeId> node;
  NodeId anchor = 0;
  int offset = 0;
};

std::vector<int> field(const ConedBall& ball, const std::vector<Point>& pts) {
  std::vector<std::vector<NodeId>> levels(3);
  for (const auto& p : pts) levels[p.node ? 0 : p.offset].push_back(p.node ? *p.node : p.anchor);
  std::vector<int> dist(ball.node_count(), -1);
  for (std::size_t d = 0; d < levels.size(); ++d) {
    std::vector<NodeId> next;
    for (NodeId x : levels[d]) {
      if (dist[x] >= 0) continue;
      dist[x] = static_cast<int>(d);
      for (NodeId y : ball.neighbors(x))
        if (dist[y] < 0) next.push_back(y);
    }
    if (next.empty()) continue;
    if (levels.size() <= d + 1) levels.resize(d + 2);
    levels[d + 1].insert(levels[d + 1].end(), next.begin(), next.end());
  }
  return dist;
}

int one_side(const std::vector<Point>& a, const std::vector<int>& fb) {
  int worst = 0;
  for (const auto& p : a) worst = std::max(worst, p.node ? fb[*p.node] : fb[p.anchor] + p.offset);
  return worst;
}

int hausdorff_points(const ConedBall& ball, const std::vector<Point>& a,
                     const std::vector<Point>& b) {
  return std::max(one_side(a, field(ball, b)), one_side(b, field(ball, a)));
}

// Points of the path reading `w` from the element `start`; points outside the
// ball lie in one coset and are anchored at its cone vertex.
void walk_in_coset(const ConedBall& ball, Word start, const Word& w, NodeId cone,
                   std::vector<Point>& out, std::size_t& outside) {
  auto vertex_point = [&](const Word& x) {
    Point p;
    if (auto v = ball.find(x)) {
      p.node = ball.group_node(*v);
    } else {
      p.anchor = cone;
      p.offset = 1;
      ++outside;
    }
    return p;
  };
  Point prev = vertex_point(start);
  out.push_back(prev);
  Word cur = std::move(start);
  for (int l : w.letters()) {
    Gen g = std::abs(l);
    int s = l > 0 ? 1 : -1;
    cur.append(g, s);
    Point next = vertex_point(cur);
    Point mid;
    std::optional<std::size_t> e;
    if (prev.node && next.node) e = ball.edge_at(*prev.node, g, s);
    if (e) {
      mid.node = ball.midpoint_node(*e);
    } else {
      mid.anchor = cone;
      mid.offset = 2;
      ++outside;
    }
    out.push_back(mid);
    out.push_back(next);
    prev = next;
  }
}

std::vector<Point> exact_points(const XPath& p, std::size_t first, std::size_t last) {
  std::vector<Point> out;
  for (std::size_t k = first; k <= last; ++k) out.push_back({p.nodes[k], 0, 0});
  return out;
}

int gamma_distance(const ConedBall& ball, VertexId a, VertexId b) {
  std::vector<int> d(ball.group_count(), -1);
  std::vector<VertexId> q{a};
  d[a] = 0;
  for (std::size_t h = 0; h < q.size(); ++h)
    for (Gen g = 1; g <= ball.spec().rank(); ++g)
      for (int s : {1, -1})
        if (auto y = ball.step(q[h], g, s); y && d[*y] < 0) {
          d[*y] = d[q[h]] + 1;
          q.push_back(*y);
        }
  return d[b];
}

bool in_finite_pair(const GroupSpec& spec, Gen g) {
  for (Gen h = 1; h <= spec.rank(); ++h)
    if (h != g && spec.label(g, h).is_finite()) return true;
  return false;
}

}  // namespace

PipelineReport verify_pipeline(const ConedBall& ball, const XPath& alpha,
                               const PipelineOptions& options) {
  const GroupSpec& spec = ball.spec();
  if (!spec.is_theorem_scope() && !(options.allow_extra_large && spec.is_extra_large()))
    throw Error(ErrorKind::scope, "pipeline requires all m_ij >= 7");
  PipelineReport rep;
  auto fail = [&](std::string what) {
    rep.ok = false;
    rep.failures.push_back(std::move(what));
  };
  rep.blocks = decompose_blocks(ball, alpha);
  const auto& bl = rep.blocks.blocks;
  const Word& src = ball.vertex(rep.blocks.source).word;
  const Word& dst = ball.vertex(rep.blocks.target).word;

  // block structure
  for (std::size_t k = 0; k < bl.size(); ++k) {
    const Block& b = bl[k];
    std::string at = " (block " + std::to_string(k + 1) + ")";
    if (b.kind == BlockKind::gamma) {
      if (b.label.letter_length() != gamma_distance(ball, b.from, b.to))
        fail("gamma-block label is not geodesic" + at);
      auto letters = b.label.letters();
      for (std::size_t q = 0; q + 1 < letters.size(); ++q) {
        Gen x = std::abs(letters[q]), y = std::abs(letters[q + 1]);
        if (x == y ? in_finite_pair(spec, x) : spec.label(x, y).is_finite())
          fail("gamma-block has a two-letter parabolic subword" + at);
      }
      if (k > 0 && bl[k - 1].kind == BlockKind::cone && bl[k - 1].pair.contains(b.label.front().gen))
        fail("first syllable after a cone-block lies in its parabolic" + at);
      if (k + 1 < bl.size() && bl[k + 1].kind == BlockKind::cone &&
          bl[k + 1].pair.contains(b.label.back().gen))
        fail("last syllable before a cone-block lies in its parabolic" + at);
      if (k + 1 < bl.size() && bl[k + 1].kind == BlockKind::gamma)
        fail("gamma-blocks are not maximal" + at);
    } else {
      if (b.minimality != Minimality::exhaustive)
        fail("cone-block label minimality not certified" + at);
      if (k + 1 < bl.size() && bl[k + 1].kind == BlockKind::cone && bl[k + 1].pair == b.pair)
        fail("consecutive cone-blocks share a parabolic" + at);
      // cone triples
      if (k > 0 && k + 1 < bl.size() && bl[k - 1].kind == BlockKind::cone &&
          bl[k + 1].kind == BlockKind::cone) {
        Gen f = b.label.front().gen, l = b.label.back().gen;
        if (f != l && bl[k - 1].pair.contains(f) && bl[k + 1].pair.contains(l) &&
            b.label.syllable_length() < 3)
          fail("middle cone-block of a triple has fewer than 3 syllables" + at);
      }
    }
  }
  rep.beta = build_beta(rep.blocks);
  if (!equal_in_G(src * rep.beta, dst, spec, true)) fail("beta does not end at the target");

  // condensation
  rep.gamma = condense(rep.blocks);
  const auto& parts = rep.gamma.parts;
  const Word& u = rep.gamma.word;
  long total_letters = 0;
  for (const auto& p : parts) total_letters += p.letter_length();
  bool free_concat = u.letter_length() == total_letters;
  if (!free_concat) fail("u is not freely reduced");
  for (std::size_t k = 0; k + 1 < parts.size(); ++k)
    if ((parts[k] * parts[k + 1]).syllable_length() !=
        parts[k].syllable_length() + parts[k + 1].syllable_length())
      fail("syllables of consecutive parts merge (part " + std::to_string(k + 1) + ")");
  for (std::size_t k = 0; k < bl.size(); ++k) {
    if (bl[k].kind == BlockKind::gamma) {
      if (parts[k] != bl[k].label) fail("gamma part changed by condensation");
      continue;
    }
    if (!uses_only_pair(parts[k], bl[k].pair)) {
      fail("cone part leaves its parabolic (part " + std::to_string(k + 1) + ")");
      continue;
    }
    if (!parts[k].empty()) {
      auto best = min_syllable_rep(parts[k], bl[k].pair);
      if (parts[k].syllable_length() > best.word.syllable_length() + 1)
        fail("cone part is not nearly syllable-minimal (part " + std::to_string(k + 1) + ")");
    }
  }
  if (!equal_in_G(rep.beta, u, spec, true)) fail("condensation changed the element");

  // Hausdorff distances, with beta and gamma points outside the ball anchored
  std::vector<Point> pa = exact_points(alpha, 0, alpha.nodes.size() - 1), pb, pg;
  {
    for (const auto& b : bl) {
      if (b.kind == BlockKind::gamma) {
        auto pts = exact_points(alpha, b.first, b.last);
        pb.insert(pb.end(), pts.begin(), pts.end());
      } else {
        walk_in_coset(ball, ball.vertex(b.from).word, b.label, ball.cone_node(*b.cone), pb,
                      rep.outside_points);
      }
    }
    Word cur = src;
    for (std::size_t k = 0; k < bl.size(); ++k) {
      if (bl[k].kind == BlockKind::gamma) {
        auto pts = exact_points(alpha, bl[k].first, bl[k].last);
        pg.insert(pg.end(), pts.begin(), pts.end());
      } else {
        walk_in_coset(ball, cur, parts[k], ball.cone_node(*bl[k].cone), pg, rep.outside_points);
      }
      cur.append(parts[k]);
    }
    if (!equal_in_G(cur, dst, spec, true)) fail("gamma does not end at the target");
  }
  rep.hausdorff_alpha_beta = hausdorff_points(ball, pa, pb);
  rep.hausdorff_beta_gamma = hausdorff_points(ball, pb, pg);
  rep.hausdorff_alpha_gamma = hausdorff_points(ball, pa, pg);
  if (rep.hausdorff_alpha_beta > 4) fail("alpha and beta are not 2-close");
  if (rep.hausdorff_beta_gamma > 4) fail("beta and gamma are not 2-close");
  if (rep.hausdorff_alpha_gamma > 8) fail("alpha and gamma are not 4-close");

  rep.strongly_reduced = is_strongly_artin_reduced(u, spec, true);
  if (!rep.strongly_reduced) fail("u is not strongly Artin-reduced");

  // cores of long two-generator subwords sit inside one cone part
  if (free_concat) {
    std::vector<long> part_start{0};
    for (const auto& p : parts) part_start.push_back(part_start.back() + p.letter_length());
    const auto& syl = u.syllables();
    std::vector<long> syl_start{0};
    for (const auto& s : syl) syl_start.push_back(syl_start.back() + std::abs(s.exp));
    for (std::size_t a = 0; a + 1 < syl.size(); ++a) {
      Gen x = syl[a].gen, y = syl[a + 1].gen;
      if (spec.label(x, y).is_infinite()) continue;
      if (a > 0 && (syl[a - 1].gen == x || syl[a - 1].gen == y)) continue;  // not maximal
      std::size_t b = a + 1;
      while (b + 1 < syl.size() && (syl[b + 1].gen == x || syl[b + 1].gen == y)) ++b;
      if (b - a + 1 < 4) continue;
      long lo = syl_start[a + 1], hi = syl_start[b];
      bool inside = false;
      for (std::size_t k = 0; k < parts.size(); ++k)
        if (bl[k].kind == BlockKind::cone && part_start[k] <= lo && hi <= part_start[k + 1])
          inside = true;
      if (!inside) fail("core of a two-generator subword spans several parts");
    }
  }
  return rep;
}

StableBall::StableBall(const GroupSpec& spec, int R, int S, const BallOptions& options)
    : base_(std::make_unique<ConedBall>(build_ball(spec, R, S, options))),
      big_(std::make_unique<ConedBall>(build_ball(spec, R + 1, S + 1, options))) {
  n_ = base_->group_count();
  std::vector<VertexId> map(n_);
  for (VertexId v = 0; v < n_; ++v) {
    auto m = big_->find(base_->vertex(v).word);
    if (!m) throw Error(ErrorKind::internal, "enlarged ball misses a vertex");
    map[v] = *m;
  }
  dist_.assign(n_ * n_, 0);
  stable_.assign(n_ * n_, false);
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  std::atomic<VertexId> next{0};
  auto worker = [&] {
    for (VertexId v; (v = next++) < n_;) {
      NodeId s1[1] = {v};
      NodeId s2[1] = {map[v]};
      auto d1 = distances_from(*base_, s1);
      auto d2 = distances_from(*big_, s2);
      for (VertexId u = 0; u < n_; ++u) {
        dist_[index(v, u)] = static_cast<std::int16_t>(d1[u]);
        // vector<bool> is not safe for concurrent writes; filled below
        if (d1[u] != d2[map[u]]) dist_[index(v, u)] = static_cast<std::int16_t>(-d1[u] - 1);
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < hw; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (std::size_t k = 0; k < dist_.size(); ++k) {
    stable_[k] = dist_[k] >= 0;
    if (dist_[k] < 0) dist_[k] = static_cast<std::int16_t>(-dist_[k] - 1);
  }
}

std::size_t StableBall::stable_pair_count() const {
  std::size_t c = 0;
  for (VertexId x = 0; x < n_; ++x)
    for (VertexId y = x + 1; y < n_; ++y) c += stable(x, y);
  return c;
}

namespace {

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t h = a * 0x9e3779b97f4a7c15ull ^ (b + 0x632be59bd9b14e5bull + (a << 6) + (a >> 2));
  h ^= h >> 31;
  h *= 0xbf58476d1ce4e5b9ull;
  return h ^ (h >> 29);
}

struct PathSet {
  std::vector<XPath> paths;
  std::uint64_t count = 0;
  bool sampled = false;
};

PathSet geodesics_for(const ConedBall& ball, VertexId x, VertexId y, std::size_t cap,
                      std::uint64_t seed) {
  PathSet ps;
  auto gs = all_geodesics(ball, x, y, cap);
  ps.count = gs.count;
  if (!gs.capped) {
    ps.paths = std::move(gs.paths);
    return ps;
  }
  ps.sampled = true;
  std::mt19937_64 rng(mix(seed, mix(x, y)));
  std::set<std::vector<NodeId>> seen;
  for (auto& p : sample_geodesics(ball, x, y, 4 * cap, rng)) {
    if (ps.paths.size() >= cap) break;
    if (seen.insert(p.nodes).second) ps.paths.push_back(std::move(p));
  }
  return ps;
}

struct Item {
  VertexId x1, y1, x2, y2;
};

struct Outcome {
  int delta = 0;
  std::uint64_t geodesics = 0;
  bool sampled = false;
  std::size_t first = 0, second = 0;  // witness paths
  XPath p, q;
};

// All-pairs node distances when the ball is small enough, else per-path BFS.
class NodeDistances {
 public:
  explicit NodeDistances(const ConedBall& ball) : ball_(ball), n_(ball.node_count()) {
    if (n_ > 20000) return;
    d_.resize(n_ * n_);
    for (NodeId x = 0; x < n_; ++x) {
      NodeId src[1] = {x};
      auto row = distances_from(ball, src);
      for (std::size_t y = 0; y < n_; ++y) d_[x * n_ + y] = static_cast<std::uint8_t>(std::min(row[y], 255));
    }
  }
  // distance from each of `at` to the path
  std::vector<int> field(const XPath& p, const std::vector<NodeId>& at) const {
    std::vector<int> out(at.size());
    if (d_.empty()) {
      auto f = distances_from(ball_, p.nodes);
      for (std::size_t k = 0; k < at.size(); ++k) out[k] = f[at[k]];
      return out;
    }
    for (std::size_t k = 0; k < at.size(); ++k) {
      int best = 255;
      const std::uint8_t* row = &d_[std::size_t(at[k]) * n_];
      for (NodeId b : p.nodes) best = std::min<int>(best, row[b]);
      out[k] = best;
    }
    return out;
  }

 private:
  const ConedBall& ball_;
  std::size_t n_;
  std::vector<std::uint8_t> d_;
};

// max over pairs (p in A, q in B, p != q when B is null) of the Hausdorff distance
Outcome thinness(const NodeDistances& nd, const PathSet& A, const PathSet* B) {
  Outcome o;
  const PathSet& other = B ? *B : A;
  std::vector<NodeId> at;
  for (const auto* s : {&A, &other})
    for (const auto& p : s->paths) at.insert(at.end(), p.nodes.begin(), p.nodes.end());
  std::sort(at.begin(), at.end());
  at.erase(std::unique(at.begin(), at.end()), at.end());
  auto local = [&](const XPath& p) {
    std::vector<std::size_t> idx;
    for (NodeId x : p.nodes) idx.push_back(std::lower_bound(at.begin(), at.end(), x) - at.begin());
    return idx;
  };
  std::vector<std::vector<int>> fa, fb;
  std::vector<std::vector<std::size_t>> la, lb;
  for (const auto& p : A.paths) {
    fa.push_back(nd.field(p, at));
    la.push_back(local(p));
  }
  if (B)
    for (const auto& q : B->paths) {
      fb.push_back(nd.field(q, at));
      lb.push_back(local(q));
    }
  const auto& fo = B ? fb : fa;
  const auto& lo = B ? lb : la;
  auto side = [](const std::vector<std::size_t>& p, const std::vector<int>& f) {
    int w = 0;
    for (std::size_t x : p) w = std::max(w, f[x]);
    return w;
  };
  bool have = false;
  for (std::size_t i = 0; i < A.paths.size(); ++i)
    for (std::size_t j = 0; j < other.paths.size(); ++j) {
      if (!B && j <= i) continue;
      int h = std::max(side(la[i], fo[j]), side(lo[j], fa[i]));
      if (!have || h > o.delta) {
        have = true;
        o.delta = h;
        o.p = A.paths[i];
        o.q = other.paths[j];
      }
    }
  if (!have && !A.paths.empty()) o.p = o.q = A.paths[0];
  o.geodesics = A.count + (B ? B->count : 0);
  o.sampled = A.sampled || (B && B->sampled);
  return o;
}

std::vector<VertexId> claim_neighbours(const ConedBall& ball, VertexId x) {
  std::set<VertexId> n{x};
  for (Gen g = 1; g <= ball.spec().rank(); ++g)
    for (int s : {1, -1})
      if (auto y = ball.step(x, g, s)) n.insert(*y);
  for (auto c : ball.cones_of(x))
    for (VertexId m : ball.cones()[c].members) n.insert(m);
  return {n.begin(), n.end()};
}

}  // namespace

ScanReport bigon_scan(const StableBall& sb, const BigonScanOptions& options) {
  const ConedBall& ball = sb.ball();
  const auto n = static_cast<VertexId>(ball.group_count());
  if (options.geodesic_cap == 0) throw Error(ErrorKind::argument, "geodesic cap must be positive");
  ScanReport rep;
  rep.mode = options.mode;
  std::vector<Item> items;
  if (options.mode == ScanMode::vertex) {
    for (VertexId x = 0; x < n; ++x)
      for (VertexId y = x + 1; y < n; ++y) {
        if (sb.stable(x, y))
          items.push_back({x, y, x, y});
        else
          ++rep.skipped_unstable;
      }
  } else {
    std::vector<std::vector<VertexId>> nb(n);
    for (VertexId x = 0; x < n; ++x) nb[x] = claim_neighbours(ball, x);
    std::size_t total = 0;
    for (VertexId x = 0; x < n; ++x)
      for (VertexId y = x + 1; y < n; ++y) {
        if (!sb.stable(x, y)) {
          ++rep.skipped_unstable;
          continue;
        }
        for (VertexId x2 : nb[x])
          for (VertexId y2 : nb[y])
            if (x2 != y2 && sb.stable(x2, y2)) ++total;
      }
    if (total <= options.quadrilateral_cap) {
      for (VertexId x = 0; x < n; ++x)
        for (VertexId y = x + 1; y < n; ++y) {
          if (!sb.stable(x, y)) continue;
          for (VertexId x2 : nb[x])
            for (VertexId y2 : nb[y])
              if (x2 != y2 && sb.stable(x2, y2)) items.push_back({x, y, x2, y2});
        }
    } else {
      rep.capped = true;
      std::vector<std::pair<VertexId, VertexId>> pairs;
      for (VertexId x = 0; x < n; ++x)
        for (VertexId y = x + 1; y < n; ++y)
          if (sb.stable(x, y)) pairs.emplace_back(x, y);
      std::mt19937_64 rng(options.seed);
      std::set<std::tuple<VertexId, VertexId, VertexId, VertexId>> seen;
      std::uniform_int_distribution<std::size_t> pick(0, pairs.size() - 1);
      for (std::size_t t = 0; t < 20 * options.quadrilateral_cap &&
                              items.size() < options.quadrilateral_cap;
           ++t) {
        auto [x, y] = pairs[pick(rng)];
        VertexId x2 = nb[x][std::uniform_int_distribution<std::size_t>(0, nb[x].size() - 1)(rng)];
        VertexId y2 = nb[y][std::uniform_int_distribution<std::size_t>(0, nb[y].size() - 1)(rng)];
        if (x2 == y2 || !sb.stable(x2, y2)) continue;
        if (seen.emplace(x, y, x2, y2).second) items.push_back({x, y, x2, y2});
      }
      std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
        return std::tie(a.x1, a.y1, a.x2, a.y2) < std::tie(b.x1, b.y1, b.x2, b.y2);
      });
    }
  }

  // items sharing (x1, y1) are contiguous and handled by one worker
  std::vector<std::size_t> groups;
  for (std::size_t k = 0; k < items.size(); ++k)
    if (k == 0 || items[k].x1 != items[k - 1].x1 || items[k].y1 != items[k - 1].y1)
      groups.push_back(k);
  groups.push_back(items.size());

  const NodeDistances nd(ball);
  auto evaluate = [&](const Item& it, const PathSet& a) {
    if (options.mode == ScanMode::vertex) return thinness(nd, a, nullptr);
    PathSet b = geodesics_for(ball, it.x2, it.y2, options.geodesic_cap, options.seed);
    return thinness(nd, a, &b);
  };

  std::vector<int> deltas(items.size());
  std::vector<std::uint64_t> counts(items.size());
  std::vector<char> sampled(items.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t g; (g = next++) + 1 < groups.size();) {
      const Item& head = items[groups[g]];
      PathSet a = geodesics_for(ball, head.x1, head.y1, options.geodesic_cap, options.seed);
      for (std::size_t k = groups[g]; k < groups[g + 1]; ++k) {
        Outcome o = evaluate(items[k], a);
        deltas[k] = o.delta;
        counts[k] = o.geodesics;
        sampled[k] = o.sampled;
      }
    }
  };
  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  std::optional<std::size_t> best;
  for (std::size_t k = 0; k < items.size(); ++k) {
    ++rep.histogram[deltas[k]];
    rep.geodesic_sets_sampled += sampled[k] ? 1 : 0;
    if (!best || deltas[k] > deltas[*best]) best = k;
    if (options.keep_records)
      rep.records.push_back({items[k].x1, items[k].y1, items[k].x2, items[k].y2, deltas[k], counts[k]});
  }
  rep.scanned = items.size();
  if (best) {
    const Item& it = items[*best];
    rep.max_delta = deltas[*best];
    rep.witness = {it.x1, it.y1, it.x2, it.y2, deltas[*best], counts[*best]};
    // recompute the witness paths
    PathSet a = geodesics_for(ball, it.x1, it.y1, options.geodesic_cap, options.seed);
    Outcome o = evaluate(it, a);
    rep.witness_first = o.p;
    rep.witness_second = o.q;
  }
  return rep;
}

DeltaReport delta_report(const std::vector<std::pair<std::string, GroupSpec>>& specs, int R, int S,
                         const BigonScanOptions& options) {
  if (specs.empty()) throw Error(ErrorKind::argument, "no specs given");
  DeltaReport rep;
  for (const auto& [name, spec] : specs) {
    StableBall sb(spec, R, S);
    BigonScanOptions vo = options, co = options;
    vo.mode = ScanMode::vertex;
    co.mode = ScanMode::claim;
    vo.keep_records = co.keep_records = false;
    auto v = bigon_scan(sb, vo);
    auto c = bigon_scan(sb, co);
    rep.rows.push_back({name, spec, v.max_delta, c.max_delta, v.geodesic_sets_sampled > 0 || c.capped ||
                                                                  c.geodesic_sets_sampled > 0});
    rep.common_bound = std::max({rep.common_bound, v.max_delta, c.max_delta});
  }
  rep.within_bound = rep.common_bound <= 28;
  return rep;
}

}  // namespace artin
