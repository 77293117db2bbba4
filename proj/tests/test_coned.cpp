#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <random>

#include "artin/coned.hpp"
#include "doctest.h"

using namespace artin;

namespace {

const GroupSpec e7 = GroupSpec::uniform(3, 7);

// Dijkstra on the unsubdivided graph: Cayley edges weigh 2, cone edges 1.
std::vector<int> weighted_distances(const ConedBall& b, VertexId src) {
  std::size_t nv = b.group_count(), nc = b.cones().size();
  std::vector<std::vector<std::pair<std::size_t, int>>> adj(nv + nc);
  for (const auto& e : b.edges()) {
    adj[e.from].push_back({e.to, 2});
    adj[e.to].push_back({e.from, 2});
  }
  for (std::size_t c = 0; c < nc; ++c)
    for (VertexId m : b.cones()[c].members) {
      adj[m].push_back({nv + c, 1});
      adj[nv + c].push_back({m, 1});
    }
  std::vector<int> d(nv + nc, 1 << 29);
  std::priority_queue<std::pair<int, std::size_t>, std::vector<std::pair<int, std::size_t>>,
                      std::greater<>>
      pq;
  d[src] = 0;
  pq.push({0, src});
  while (!pq.empty()) {
    auto [dd, x] = pq.top();
    pq.pop();
    if (dd > d[x]) continue;
    for (auto [y, w] : adj[x])
      if (d[x] + w < d[y]) {
        d[y] = d[x] + w;
        pq.push({d[y], y});
      }
  }
  return d;
}

std::size_t free_ball_size(int n, int R) {
  std::size_t total = 1, layer = 2 * n;
  for (int r = 1; r <= R; ++r) {
    total += layer;
    layer *= 2 * n - 1;
  }
  return total;
}

}  // namespace

TEST_CASE("free group balls") {
  GroupSpec free2(2);
  auto b = build_ball(free2, 2, 0);
  CHECK(b.group_count() == 17);
  CHECK(b.cones().empty());
  for (int n : {2, 3})
    for (int R : {0, 1, 2, 3, 4}) {
      auto fb = build_ball(GroupSpec(n), R, 1);
      CHECK(fb.group_count() == free_ball_size(n, R));
      CHECK(fb.edges().size() == fb.group_count() - 1);
    }
}

TEST_CASE("E7 small balls") {
  auto b0 = build_ball(e7, 0, 0);
  CHECK(b0.group_count() == 1);
  CHECK(b0.cones().size() == 3);
  for (const auto& c : b0.cones()) CHECK(c.members.size() == 1);

  auto b1 = build_ball(e7, 1, 0);
  CHECK(b1.group_count() == 7);
  CHECK(b1.cones().size() == 9);
  std::map<std::size_t, int> sizes;
  for (const auto& c : b1.cones()) ++sizes[c.members.size()];
  CHECK(sizes[5] == 3);
  CHECK(sizes[1] == 6);
  CHECK_FALSE(b1.stabilized());
}

TEST_CASE("cosets agree with an algebraic membership oracle") {
  auto b = build_ball(e7, 2, 1);
  CHECK(b.stabilized());
  // same cone iff g^-1 h lies in G_ij, tested against all of G_ij up to length 4
  for (auto [i, j] : e7.finite_pairs()) {
    auto p = dihedral_pair(e7, i, j);
    auto elems = pair_ball(p, 4);
    std::map<VertexId, std::size_t> cone_of;
    for (std::size_t c = 0; c < b.cones().size(); ++c)
      if (b.cones()[c].pair == p)
        for (VertexId m : b.cones()[c].members) cone_of[m] = c;
    for (VertexId g = 0; g < b.group_count(); g += 3)
      for (VertexId h = 0; h < b.group_count(); ++h) {
        Word q = b.vertex(g).word.inverse() * b.vertex(h).word;
        bool member = false;
        for (const Word& x : elems)
          if (equal_in_G(q, x, e7)) {
            member = true;
            break;
          }
        CHECK(member == (cone_of.at(g) == cone_of.at(h)));
      }
  }
}

TEST_CASE("cone offsets certify coset membership") {
  auto b = build_ball(GroupSpec::uniform(3, 8), 3, 1);
  for (const auto& c : b.cones())
    for (std::size_t k = 0; k < c.members.size(); ++k) {
      CHECK(uses_only_pair(c.offsets[k], c.pair));
      CHECK(equal_in_G(b.vertex(c.members[0]).word * c.offsets[k], b.vertex(c.members[k]).word,
                       b.spec()));
    }
}

TEST_CASE("distances") {
  auto b = build_ball(e7, 5, 0);
  auto a1 = b.find(Word::generator(1));
  auto a15 = b.find(Word::generator(1, 5));
  REQUIRE(a1);
  REQUIRE(a15);
  CHECK(distance_X(b, 0, *a1) == 2);
  CHECK(distance_X(b, 0, *a15) == 2);

  auto b3 = build_ball(e7, 3, 1);
  auto g = b3.find(parse_word("a1 a2 a3", 3));
  REQUIRE(g);
  CHECK(distance_X(b3, 0, *g) == 4);
  CHECK(weighted_distances(b3, 0)[*g] == 4);
}

TEST_CASE("subdivided BFS matches weighted Dijkstra") {
  for (GroupSpec spec : {e7, GroupSpec::uniform(4, 7), GroupSpec(2)}) {
    auto b = build_ball(spec, 3, 0);
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<VertexId> pick(0, static_cast<VertexId>(b.group_count() - 1));
    for (int t = 0; t < 10; ++t) {
      VertexId s = pick(rng);
      NodeId src[1] = {s};
      auto bfs = distances_from(b, src);
      auto dij = weighted_distances(b, s);
      for (VertexId v = 0; v < b.group_count(); ++v) CHECK(bfs[v] == dij[v]);
      for (std::size_t c = 0; c < b.cones().size(); ++c)
        CHECK(bfs[b.cone_node(c)] == dij[b.group_count() + c]);
    }
  }
}

TEST_CASE("metric axioms and cone consistency") {
  auto b = build_ball(e7, 2, 0);
  std::vector<std::vector<int>> d(b.group_count());
  for (VertexId v = 0; v < b.group_count(); ++v) {
    NodeId src[1] = {v};
    d[v] = distances_from(b, src);
  }
  for (VertexId x = 0; x < b.group_count(); x += 2)
    for (VertexId y = 0; y < b.group_count(); ++y) {
      CHECK(d[x][y] == d[y][x]);
      CHECK((d[x][y] == 0) == (x == y));
      for (VertexId z = 0; z < b.group_count(); z += 5) CHECK(d[x][z] <= d[x][y] + d[y][z]);
    }
  for (const auto& c : b.cones())
    for (VertexId m : c.members)
      for (VertexId k : c.members) CHECK(d[m][k] <= 2);
}

TEST_CASE("distances never increase when the ball grows") {
  auto small = build_ball(e7, 2, 0);
  auto big = build_ball(e7, 3, 0);
  auto bigger = build_ball(e7, 2, 1);
  for (VertexId v = 0; v < small.group_count(); v += 4) {
    NodeId s1[1] = {v};
    auto ds = distances_from(small, s1);
    for (const ConedBall* other : {&big, &bigger}) {
      auto ov = other->find(small.vertex(v).word);
      REQUIRE(ov);
      NodeId s2[1] = {*ov};
      auto dl = distances_from(*other, s2);
      for (VertexId u = 0; u < small.group_count(); ++u) {
        auto ou = other->find(small.vertex(u).word);
        REQUIRE(ou);
        CHECK(dl[*ou] <= ds[u]);
      }
    }
  }
}

TEST_CASE("geodesic enumeration") {
  auto b = build_ball(e7, 3, 0);
  auto g = b.find(parse_word("a1 a2 a3", 3));
  REQUIRE(g);
  auto set = all_geodesics(b, 0, *g, 1000);
  CHECK(set.length == 4);
  CHECK_FALSE(set.capped);
  CHECK(set.count == set.paths.size());
  // brute force: every path of that length through adjacent nodes
  std::uint64_t brute = 0;
  std::function<void(NodeId, int)> dfs = [&](NodeId x, int left) {
    if (left == 0) {
      brute += x == *g;
      return;
    }
    for (NodeId y : b.neighbors(x)) dfs(y, left - 1);
  };
  dfs(0, 4);
  CHECK(brute == set.count);
  for (const auto& p : set.paths) {
    CHECK(p.length() == 4);
    CHECK(p.nodes.front() == 0);
    CHECK(p.nodes.back() == *g);
  }
  auto capped = all_geodesics(b, 0, *g, 1);
  CHECK(capped.paths.size() == 1);
  CHECK(capped.capped == (set.count > 1));

  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    XPath p = sample_geodesic(b, 0, *g, rng);
    CHECK(std::find(set.paths.begin(), set.paths.end(), p) != set.paths.end());
  }
}

TEST_CASE("hausdorff distances") {
  auto b = build_ball(e7, 5, 0);
  auto a15 = b.find(Word::generator(1, 5));
  REQUIRE(a15);
  auto gp = gamma_path(b, 0, Word::generator(1, 5));
  REQUIRE(gp);
  CHECK(gp->length() == 10);
  CHECK(hausdorff_X(b, *gp, *gp) == 0);
  // cone detour through v(G_12)
  std::optional<std::size_t> cone;
  for (auto c : b.cones_of(0))
    if (b.cones()[c].pair == dihedral_pair(1, 2, 7)) cone = c;
  REQUIRE(cone);
  XPath detour{{0, b.cone_node(*cone), *a15}};
  CHECK(detour.length() == 2);
  CHECK(hausdorff_X(b, *gp, detour) == 2);
  CHECK_FALSE(gamma_path(b, 0, Word::generator(1, 6)).has_value());
}

TEST_CASE("vertex cap and export") {
  BallOptions opt;
  opt.vertex_cap = 50;
  CHECK_THROWS_AS(build_ball(e7, 3, 0, opt), Error);
  try {
    build_ball(e7, 3, 0, opt);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::resource);
  }
  auto b = build_ball(e7, 1, 0);
  std::string text = export_ball(b);
  CHECK(text.find("group_vertices=7") != std::string::npos);
  CHECK(text.find("kind=cone") != std::string::npos);
  CHECK_THROWS_AS(build_ball(GroupSpec::uniform(3, 3), 1, 0), Error);
}
