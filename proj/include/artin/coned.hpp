#pragma once

// Finite balls of the Cayley graph and of the coned-off Cayley graph X.
// Lengths are doubled: a Cayley edge is split at its midpoint into two unit
// steps and a cone edge is one unit step, so plain BFS computes d_X exactly.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "artin/artin.hpp"

namespace artin {

using VertexId = std::uint32_t;
using NodeId = std::uint32_t;

struct GroupVertex {
  Word word;  // shortlex-least word found by the BFS
  int depth = 0;
};

struct GammaEdge {
  VertexId from = 0;  // to = from * a_gen^sign
  VertexId to = 0;
  Gen gen = 1;
  int sign = 1;
};

struct ConeVertex {
  DihedralPair pair;
  std::vector<VertexId> members;  // sorted, all of depth <= R
  // offsets[k]: two-generator word with word(members[0]) * offsets[k] = word(members[k])
  std::vector<Word> offsets;
};

enum class NodeKind { group, midpoint, cone };

struct BallOptions {
  std::size_t vertex_cap = 0;  // 0: ARTIN_RELHYP_VERTEX_CAP or 2,000,000
  bool allow_small_labels = false;
};

struct BallSummary {
  int radius = 0, slack = 0;
  std::size_t group_vertices = 0;  // depth <= R
  std::size_t slack_vertices = 0;  // R < depth <= R + S
  std::size_t gamma_edges = 0;
  std::size_t cone_vertices = 0;
  std::size_t cone_edges = 0;
  bool stabilized = false;
};

class ConedBall {
 public:
  const GroupSpec& spec() const { return spec_; }
  int radius() const { return radius_; }
  int slack() const { return slack_; }
  bool stabilized() const { return stabilized_; }
  BallSummary summary() const;

  // Vertices of depth <= R come first, in BFS (shortlex) order.
  std::size_t group_count() const { return core_; }
  const GroupVertex& vertex(VertexId v) const { return vertices_[v]; }
  const std::vector<GammaEdge>& edges() const { return edges_; }
  const std::vector<ConeVertex>& cones() const { return cones_; }
  // Cones containing group vertex v.
  std::span<const std::uint32_t> cones_of(VertexId v) const;
  // Vertex of depth <= R representing w, if any.
  std::optional<VertexId> find(const Word& w) const;
  // Neighbour of v along a_gen^sign, if it lies within depth <= R.
  std::optional<VertexId> step(VertexId v, Gen gen, int sign) const;
  // Index of the edge leaving v along a_gen^sign, if it lies in the ball.
  std::optional<std::size_t> edge_at(VertexId v, Gen gen, int sign) const;

  // The subdivided graph: group vertices, edge midpoints, cone vertices.
  std::size_t node_count() const { return offsets_.size() - 1; }
  NodeKind kind(NodeId x) const;
  NodeId group_node(VertexId v) const { return v; }
  NodeId midpoint_node(std::size_t edge) const { return static_cast<NodeId>(core_ + edge); }
  NodeId cone_node(std::size_t cone) const {
    return static_cast<NodeId>(core_ + edges_.size() + cone);
  }
  std::size_t cone_index(NodeId x) const { return x - core_ - edges_.size(); }
  std::size_t edge_index(NodeId x) const { return x - core_; }
  std::span<const NodeId> neighbors(NodeId x) const {
    return {adj_.data() + offsets_[x], adj_.data() + offsets_[x + 1]};
  }
  std::string node_label(NodeId x) const;

  friend ConedBall build_ball(const GroupSpec& spec, int R, int S, const BallOptions& options);

 private:
  explicit ConedBall(GroupSpec spec) : spec_(std::move(spec)), image_(spec_) {}
  // Lookup during construction; records aliases.
  std::optional<VertexId> lookup_all(const Word& w, std::string* key_out);

  GroupSpec spec_;
  HeckeImage image_;
  int radius_ = 0, slack_ = 0;
  bool stabilized_ = false;
  bool allow_small_labels_ = false;
  std::size_t core_ = 0;
  std::vector<GroupVertex> vertices_;  // including the slack layer
  std::vector<std::int32_t> step_;     // vertex * 2n + letter -> neighbour or -1
  std::vector<std::int32_t> edge_at_;  // core vertex * 2n + letter -> edge or -1
  std::unordered_map<Word, VertexId, WordHash> words_;
  std::unordered_map<std::string, std::vector<VertexId>> buckets_;
  std::vector<GammaEdge> edges_;  // both ends of depth <= R
  std::vector<ConeVertex> cones_;
  std::vector<std::uint32_t> cone_offsets_, cone_list_;
  std::vector<std::uint32_t> offsets_;
  std::vector<NodeId> adj_;
};

// BFS to depth R + S; cosets are components of two-generator edges in that
// range, restricted to depth <= R. Throws Error(resource) above the cap.
ConedBall build_ball(const GroupSpec& spec, int R, int S, const BallOptions& options = {});

std::size_t vertex_cap_from_env();

// Doubled distances from the given sources (-1: unreachable).
std::vector<int> distances_from(const ConedBall& ball, std::span<const NodeId> sources);
int distance_X(const ConedBall& ball, NodeId u, NodeId v);

struct XPath {
  std::vector<NodeId> nodes;
  int length() const { return nodes.empty() ? 0 : static_cast<int>(nodes.size()) - 1; }
  friend bool operator==(const XPath&, const XPath&) = default;
};

struct GeodesicSet {
  int length = 0;
  std::uint64_t count = 0;  // exact number of geodesics (saturates)
  bool count_saturated = false;
  bool capped = false;  // more geodesics than returned
  std::vector<XPath> paths;
};

GeodesicSet all_geodesics(const ConedBall& ball, NodeId u, NodeId v, std::size_t cap);
// Uniformly random geodesic from u to v.
XPath sample_geodesic(const ConedBall& ball, NodeId u, NodeId v, std::mt19937_64& rng);
// `count` independent uniform samples (the same draws as repeated sample_geodesic).
std::vector<XPath> sample_geodesics(const ConedBall& ball, NodeId u, NodeId v, std::size_t count,
                                    std::mt19937_64& rng);

// Symmetrized Hausdorff distance between node sets (doubled units).
int hausdorff_nodes(const ConedBall& ball, std::span<const NodeId> p, std::span<const NodeId> q);
int hausdorff_X(const ConedBall& ball, const XPath& p, const XPath& q);

// Path in X obtained by reading a word from a start vertex (nullopt if it
// leaves the ball).
std::optional<XPath> gamma_path(const ConedBall& ball, VertexId start, const Word& w);

// One record per node and per edge.
std::string export_ball(const ConedBall& ball);
std::string format_path(const ConedBall& ball, const XPath& p);

}  // namespace artin
