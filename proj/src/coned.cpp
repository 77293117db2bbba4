#include "artin/coned.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <functional>
#include <numeric>
#include <sstream>

namespace artin {

namespace {

struct UnionFind {
  std::vector<std::uint32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

int letter_index(Gen g, int sign) { return 2 * (g - 1) + (sign > 0 ? 0 : 1); }

}  // namespace

std::size_t vertex_cap_from_env() {
  if (const char* env = std::getenv("ARTIN_RELHYP_VERTEX_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    throw Error(ErrorKind::argument, "ARTIN_RELHYP_VERTEX_CAP must be a positive integer");
  }
  return 2'000'000;
}

std::optional<VertexId> ConedBall::lookup_all(const Word& w, std::string* key_out) {
  if (auto it = words_.find(w); it != words_.end()) return it->second;
  std::string key = image_.key(w);
  if (auto it = buckets_.find(key); it != buckets_.end())
    for (VertexId id : it->second)
      if (equal_in_G(w, vertices_[id].word, spec_, allow_small_labels_)) {
        words_.emplace(w, id);
        return id;
      }
  if (key_out) *key_out = std::move(key);
  return std::nullopt;
}

std::optional<VertexId> ConedBall::find(const Word& w) const {
  for (const auto& s : w.syllables()) spec_.check_generator(s.gen);
  std::optional<VertexId> id;
  if (auto it = words_.find(w); it != words_.end()) {
    id = it->second;
  } else if (auto b = buckets_.find(image_.key(w)); b != buckets_.end()) {
    for (VertexId c : b->second)
      if (equal_in_G(w, vertices_[c].word, spec_, allow_small_labels_)) id = c;
  }
  if (id && *id < core_) return id;
  return std::nullopt;
}

std::optional<VertexId> ConedBall::step(VertexId v, Gen gen, int sign) const {
  spec_.check_generator(gen);
  std::int32_t u = step_[static_cast<std::size_t>(v) * 2 * spec_.rank() + letter_index(gen, sign)];
  if (u < 0 || static_cast<std::size_t>(u) >= core_) return std::nullopt;
  return static_cast<VertexId>(u);
}

std::optional<std::size_t> ConedBall::edge_at(VertexId v, Gen gen, int sign) const {
  spec_.check_generator(gen);
  if (v >= core_) return std::nullopt;
  std::int32_t e = edge_at_[static_cast<std::size_t>(v) * 2 * spec_.rank() + letter_index(gen, sign)];
  if (e < 0) return std::nullopt;
  return static_cast<std::size_t>(e);
}

std::span<const std::uint32_t> ConedBall::cones_of(VertexId v) const {
  return {cone_list_.data() + cone_offsets_[v], cone_list_.data() + cone_offsets_[v + 1]};
}

NodeKind ConedBall::kind(NodeId x) const {
  if (x < core_) return NodeKind::group;
  if (x < core_ + edges_.size()) return NodeKind::midpoint;
  return NodeKind::cone;
}

std::string ConedBall::node_label(NodeId x) const {
  switch (kind(x)) {
    case NodeKind::group:
      return vertices_[x].word.compact();
    case NodeKind::midpoint: {
      const auto& e = edges_[edge_index(x)];
      return "mid(" + vertices_[e.from].word.compact() + ";a" + std::to_string(e.gen) +
             (e.sign > 0 ? "" : "^-1") + ")";
    }
    case NodeKind::cone: {
      const auto& c = cones_[cone_index(x)];
      return "cone(" + vertices_[c.members[0]].word.compact() + ";G" + std::to_string(c.pair.i) +
             "," + std::to_string(c.pair.j) + ")";
    }
  }
  return {};
}

BallSummary ConedBall::summary() const {
  BallSummary s;
  s.radius = radius_;
  s.slack = slack_;
  s.group_vertices = core_;
  s.slack_vertices = vertices_.size() - core_;
  s.gamma_edges = edges_.size();
  s.cone_vertices = cones_.size();
  for (const auto& c : cones_) s.cone_edges += c.members.size();
  s.stabilized = stabilized_;
  return s;
}

namespace {

// Partition of the depth <= R vertices into cosets of one pair, using the
// two-generator edges among vertices of depth <= limit.
std::vector<std::uint32_t> coset_roots(const std::vector<GroupVertex>& vs,
                                       const std::vector<std::int32_t>& step, int rank,
                                       const DihedralPair& p, int limit, std::size_t core) {
  UnionFind uf(vs.size());
  for (std::size_t v = 0; v < vs.size(); ++v) {
    if (vs[v].depth > limit) continue;
    for (Gen g : {p.i, p.j})
      for (int s : {1, -1}) {
        std::int32_t u = step[v * 2 * rank + letter_index(g, s)];
        if (u >= 0 && vs[u].depth <= limit) uf.unite(static_cast<std::uint32_t>(v), u);
      }
  }
  std::vector<std::uint32_t> roots(core);
  for (std::size_t v = 0; v < core; ++v) roots[v] = uf.find(static_cast<std::uint32_t>(v));
  return roots;
}

// Canonical form of a partition: each element mapped to its smallest member.
std::vector<std::uint32_t> canonical_partition(const std::vector<std::uint32_t>& roots) {
  std::unordered_map<std::uint32_t, std::uint32_t> first;
  std::vector<std::uint32_t> out(roots.size());
  for (std::size_t v = 0; v < roots.size(); ++v)
    out[v] = first.emplace(roots[v], static_cast<std::uint32_t>(v)).first->second;
  return out;
}

}  // namespace

ConedBall build_ball(const GroupSpec& spec, int R, int S, const BallOptions& options) {
  if (R < 0 || S < 0) throw Error(ErrorKind::argument, "radius and slack must be nonnegative");
  if (!spec.is_extra_large() && !options.allow_small_labels)
    throw Error(ErrorKind::scope, "group is not extra-large (some m_ij < 4)");
  const std::size_t cap = options.vertex_cap ? options.vertex_cap : vertex_cap_from_env();
  const int n = spec.rank();
  const int depth_limit = R + S;

  ConedBall ball(spec);
  ball.radius_ = R;
  ball.slack_ = S;
  ball.allow_small_labels_ = options.allow_small_labels;
  auto& vs = ball.vertices_;

  auto add_vertex = [&](Word w, int depth, std::string key) {
    if (vs.size() >= cap)
      throw Error(ErrorKind::resource,
                  "ball exceeds the vertex cap of " + std::to_string(cap) + " vertices");
    auto id = static_cast<VertexId>(vs.size());
    ball.words_.emplace(w, id);
    ball.buckets_[std::move(key)].push_back(id);
    vs.push_back({std::move(w), depth});
    ball.step_.resize(vs.size() * 2 * n, -1);
    return id;
  };
  add_vertex(Word(), 0, ball.image_.key(Word()));

  for (std::size_t v = 0; v < vs.size(); ++v) {
    for (Gen g = 1; g <= n; ++g)
      for (int s : {1, -1}) {
        Word w = vs[v].word * Word::generator(g, s);
        std::string key;
        auto found = ball.lookup_all(w, &key);
        VertexId u;
        if (found) {
          u = *found;
        } else if (vs[v].depth < depth_limit) {
          u = add_vertex(std::move(w), vs[v].depth + 1, std::move(key));
        } else {
          continue;
        }
        ball.step_[v * 2 * n + letter_index(g, s)] = static_cast<std::int32_t>(u);
      }
  }

  std::size_t core = 0;
  while (core < vs.size() && vs[core].depth <= R) ++core;
  ball.core_ = core;
  ball.edge_at_.assign(core * 2 * n, -1);

  for (VertexId v = 0; v < core; ++v)
    for (Gen g = 1; g <= n; ++g)
      for (int s : {1, -1}) {
        std::int32_t u = ball.step_[static_cast<std::size_t>(v) * 2 * n + letter_index(g, s)];
        if (u < 0 || static_cast<std::size_t>(u) >= core) continue;
        if (static_cast<VertexId>(u) > v) {
          ball.edge_at_[static_cast<std::size_t>(v) * 2 * n + letter_index(g, s)] =
              static_cast<std::int32_t>(ball.edges_.size());
          ball.edge_at_[static_cast<std::size_t>(u) * 2 * n + letter_index(g, -s)] =
              static_cast<std::int32_t>(ball.edges_.size());
          ball.edges_.push_back({v, static_cast<VertexId>(u), g, s});
        }
      }

  bool stable = S > 0;
  for (auto [i, j] : spec.finite_pairs()) {
    DihedralPair p = dihedral_pair(spec, i, j);
    auto roots = coset_roots(vs, ball.step_, n, p, depth_limit, core);
    if (S > 0) {
      auto prev = coset_roots(vs, ball.step_, n, p, depth_limit - 1, core);
      if (canonical_partition(prev) != canonical_partition(roots)) stable = false;
    }
    // group core vertices by component, in order of their smallest member
    std::unordered_map<std::uint32_t, std::size_t> index;
    std::vector<ConeVertex> local;
    for (VertexId v = 0; v < core; ++v) {
      auto [it, fresh] = index.emplace(roots[v], local.size());
      if (fresh) local.push_back({p, {}, {}});
      local[it->second].members.push_back(v);
    }
    // two-generator words from each root member, by BFS inside the component
    for (auto& c : local) {
      std::unordered_map<VertexId, Word> reach{{c.members[0], Word()}};
      std::deque<VertexId> queue{c.members[0]};
      std::size_t wanted = c.members.size(), got = 1;
      while (!queue.empty() && got < wanted) {
        VertexId x = queue.front();
        queue.pop_front();
        for (Gen g : {p.i, p.j})
          for (int s : {1, -1}) {
            std::int32_t u = ball.step_[static_cast<std::size_t>(x) * 2 * n + letter_index(g, s)];
            if (u < 0 || vs[u].depth > depth_limit) continue;
            auto [it, fresh] = reach.emplace(static_cast<VertexId>(u), Word());
            if (!fresh) continue;
            it->second = reach.at(x) * Word::generator(g, s);
            queue.push_back(static_cast<VertexId>(u));
            if (static_cast<std::size_t>(u) < core) ++got;
          }
      }
      for (VertexId m : c.members) c.offsets.push_back(reach.at(m));
    }
    for (auto& c : local) ball.cones_.push_back(std::move(c));
  }
  ball.stabilized_ = stable;

  // vertex -> cones
  std::vector<std::uint32_t> count(core + 1, 0);
  for (const auto& c : ball.cones_)
    for (VertexId m : c.members) ++count[m + 1];
  std::partial_sum(count.begin(), count.end(), count.begin());
  ball.cone_offsets_ = count;
  ball.cone_list_.resize(count.back());
  for (std::uint32_t ci = 0; ci < ball.cones_.size(); ++ci)
    for (VertexId m : ball.cones_[ci].members) ball.cone_list_[count[m]++] = ci;

  // subdivided graph in CSR form
  const std::size_t nodes = core + ball.edges_.size() + ball.cones_.size();
  std::vector<std::pair<NodeId, NodeId>> links;
  links.reserve(2 * ball.edges_.size() + ball.cone_list_.size());
  for (std::size_t e = 0; e < ball.edges_.size(); ++e) {
    links.emplace_back(ball.edges_[e].from, ball.midpoint_node(e));
    links.emplace_back(ball.edges_[e].to, ball.midpoint_node(e));
  }
  for (std::size_t c = 0; c < ball.cones_.size(); ++c)
    for (VertexId m : ball.cones_[c].members) links.emplace_back(m, ball.cone_node(c));
  std::vector<std::uint32_t> deg(nodes + 1, 0);
  for (auto [a, b] : links) {
    ++deg[a + 1];
    ++deg[b + 1];
  }
  std::partial_sum(deg.begin(), deg.end(), deg.begin());
  ball.offsets_ = deg;
  ball.adj_.resize(deg.back());
  for (auto [a, b] : links) {
    ball.adj_[deg[a]++] = b;
    ball.adj_[deg[b]++] = a;
  }
  return ball;
}

std::vector<int> distances_from(const ConedBall& ball, std::span<const NodeId> sources) {
  std::vector<int> dist(ball.node_count(), -1);
  std::vector<NodeId> queue;
  queue.reserve(ball.node_count());
  for (NodeId s : sources) {
    if (s >= ball.node_count()) throw Error(ErrorKind::argument, "node out of range");
    if (dist[s] < 0) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  for (std::size_t h = 0; h < queue.size(); ++h) {
    NodeId x = queue[h];
    for (NodeId y : ball.neighbors(x))
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
  }
  return dist;
}

int distance_X(const ConedBall& ball, NodeId u, NodeId v) {
  NodeId src[1] = {u};
  int d = distances_from(ball, src).at(v);
  if (d < 0) throw Error(ErrorKind::internal, "ball graph is disconnected");
  return d;
}

namespace {

struct GeodesicDag {
  std::vector<int> dist;
  std::vector<long double> weight;  // number of geodesics from u
  std::vector<std::uint64_t> count;
  std::vector<bool> saturated;
};

GeodesicDag geodesic_dag(const ConedBall& ball, NodeId u, NodeId v) {
  GeodesicDag g;
  NodeId src[1] = {u};
  g.dist = distances_from(ball, src);
  if (v >= ball.node_count()) throw Error(ErrorKind::argument, "node out of range");
  if (g.dist[v] < 0) throw Error(ErrorKind::internal, "ball graph is disconnected");
  const std::size_t n = ball.node_count();
  g.weight.assign(n, 0);
  g.count.assign(n, 0);
  g.saturated.assign(n, false);
  std::vector<NodeId> order;
  for (NodeId x = 0; x < n; ++x)
    if (g.dist[x] >= 0 && g.dist[x] <= g.dist[v]) order.push_back(x);
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return g.dist[a] < g.dist[b]; });
  g.weight[u] = 1;
  g.count[u] = 1;
  for (NodeId x : order) {
    if (x == u) continue;
    for (NodeId y : ball.neighbors(x))
      if (g.dist[y] == g.dist[x] - 1) {
        g.weight[x] += g.weight[y];
        std::uint64_t c = g.count[x] + g.count[y];
        if (c < g.count[x] || g.saturated[y]) g.saturated[x] = true;
        g.count[x] = c < g.count[x] ? UINT64_MAX : c;
      }
  }
  return g;
}

}  // namespace

GeodesicSet all_geodesics(const ConedBall& ball, NodeId u, NodeId v, std::size_t cap) {
  GeodesicDag g = geodesic_dag(ball, u, v);
  GeodesicSet out;
  out.length = g.dist[v];
  out.count = g.saturated[v] ? UINT64_MAX : g.count[v];
  out.count_saturated = g.saturated[v];
  // backwards DFS from v through predecessors
  std::vector<NodeId> stack{v};
  std::function<void(NodeId)> walk = [&](NodeId x) {
    if (out.paths.size() >= cap) {
      out.capped = true;
      return;
    }
    if (x == u) {
      XPath p;
      p.nodes.assign(stack.rbegin(), stack.rend());
      out.paths.push_back(std::move(p));
      return;
    }
    for (NodeId y : ball.neighbors(x))
      if (g.dist[y] == g.dist[x] - 1) {
        stack.push_back(y);
        walk(y);
        stack.pop_back();
        if (out.capped) return;
      }
  };
  walk(v);
  if (out.count_saturated || out.count > out.paths.size()) out.capped = true;
  return out;
}

namespace {

XPath draw(const ConedBall& ball, const GeodesicDag& g, NodeId u, NodeId v, std::mt19937_64& rng) {
  XPath p;
  p.nodes.push_back(v);
  NodeId x = v;
  std::uniform_real_distribution<long double> unit(0, 1);
  while (x != u) {
    long double r = unit(rng) * g.weight[x];
    NodeId pick = x;
    for (NodeId y : ball.neighbors(x))
      if (g.dist[y] == g.dist[x] - 1) {
        pick = y;
        r -= g.weight[y];
        if (r < 0) break;
      }
    x = pick;
    p.nodes.push_back(x);
  }
  std::reverse(p.nodes.begin(), p.nodes.end());
  return p;
}

}  // namespace

XPath sample_geodesic(const ConedBall& ball, NodeId u, NodeId v, std::mt19937_64& rng) {
  return draw(ball, geodesic_dag(ball, u, v), u, v, rng);
}

std::vector<XPath> sample_geodesics(const ConedBall& ball, NodeId u, NodeId v, std::size_t count,
                                    std::mt19937_64& rng) {
  GeodesicDag g = geodesic_dag(ball, u, v);
  std::vector<XPath> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(draw(ball, g, u, v, rng));
  return out;
}

int hausdorff_nodes(const ConedBall& ball, std::span<const NodeId> p, std::span<const NodeId> q) {
  if (p.empty() || q.empty()) throw Error(ErrorKind::argument, "empty path");
  auto one_side = [&](std::span<const NodeId> a, std::span<const NodeId> b) {
    auto d = distances_from(ball, b);
    int worst = 0;
    for (NodeId x : a) worst = std::max(worst, d[x]);
    return worst;
  };
  return std::max(one_side(p, q), one_side(q, p));
}

int hausdorff_X(const ConedBall& ball, const XPath& p, const XPath& q) {
  return hausdorff_nodes(ball, p.nodes, q.nodes);
}

std::optional<XPath> gamma_path(const ConedBall& ball, VertexId start, const Word& w) {
  XPath p;
  p.nodes.push_back(ball.group_node(start));
  VertexId cur = start;
  for (int l : w.letters()) {
    Gen g = std::abs(l);
    int s = l > 0 ? 1 : -1;
    auto e = ball.edge_at(cur, g, s);
    if (!e) return std::nullopt;
    const GammaEdge& ed = ball.edges()[*e];
    VertexId next = ed.from == cur ? ed.to : ed.from;
    p.nodes.push_back(ball.midpoint_node(*e));
    p.nodes.push_back(ball.group_node(next));
    cur = next;
  }
  return p;
}

std::string export_ball(const ConedBall& ball) {
  std::ostringstream out;
  auto s = ball.summary();
  out << "type=ball radius=" << s.radius << " slack=" << s.slack << " group_vertices=" << s.group_vertices
      << " gamma_edges=" << s.gamma_edges << " cone_vertices=" << s.cone_vertices
      << " cone_edges=" << s.cone_edges << " stabilized=" << (s.stabilized ? "yes" : "no") << '\n';
  for (VertexId v = 0; v < ball.group_count(); ++v)
    out << "type=node id=" << v << " kind=group depth=" << ball.vertex(v).depth
        << " word=" << ball.vertex(v).word.compact() << '\n';
  for (std::size_t e = 0; e < ball.edges().size(); ++e)
    out << "type=node id=" << ball.midpoint_node(e) << " kind=midpoint edge=" << e << '\n';
  for (std::size_t c = 0; c < ball.cones().size(); ++c)
    out << "type=node id=" << ball.cone_node(c) << " kind=cone pair=" << ball.cones()[c].pair.i << ','
        << ball.cones()[c].pair.j << " members=" << ball.cones()[c].members.size() << '\n';
  for (std::size_t e = 0; e < ball.edges().size(); ++e) {
    const auto& ed = ball.edges()[e];
    out << "type=edge kind=gamma from=" << ed.from << " to=" << ed.to << " label=a" << ed.gen
        << (ed.sign > 0 ? "" : "^-1") << " length=2\n";
  }
  for (std::size_t c = 0; c < ball.cones().size(); ++c)
    for (VertexId m : ball.cones()[c].members)
      out << "type=edge kind=cone from=" << ball.cone_node(c) << " to=" << m << " length=1\n";
  return out.str();
}

std::string format_path(const ConedBall& ball, const XPath& p) {
  std::string out;
  for (std::size_t k = 0; k < p.nodes.size(); ++k) {
    if (k) out += " -> ";
    out += ball.node_label(p.nodes[k]);
  }
  return out;
}

}  // namespace artin
