#pragma once

// Geodesics of the coned-off graph: the block decomposition alpha -> beta ->
// gamma with its structural checks, and thin-bigon scans.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "artin/coned.hpp"

namespace artin {

enum class BlockKind { gamma, cone };

struct Block {
  BlockKind kind = BlockKind::gamma;
  std::size_t first = 0, last = 0;  // node positions in the path
  VertexId from = 0, to = 0;
  Word label;                       // v_k
  std::optional<std::size_t> cone;  // cone index for cone-blocks
  DihedralPair pair;                // cone-blocks only
  Word element;                     // g_k, a two-generator word (cone-blocks only)
  Minimality minimality = Minimality::exhaustive;
};

struct BlockPath {
  VertexId source = 0, target = 0;
  std::vector<Block> blocks;
};

// Throws Error(argument) on a malformed path.
BlockPath decompose_blocks(const ConedBall& ball, const XPath& path);
// v = v_1 ... v_t, freely reduced.
Word build_beta(const BlockPath& bp);

struct CondensedPath {
  std::vector<Word> parts;  // u_1 ... u_t
  Word word;                // u
};

CondensedPath condense(const BlockPath& bp);

struct PipelineOptions {
  bool allow_extra_large = false;  // run on specs with some 4 <= m_ij < 7
};

struct PipelineReport {
  bool ok = true;
  std::vector<std::string> failures;
  BlockPath blocks;
  Word beta;
  CondensedPath gamma;
  int hausdorff_alpha_beta = 0;  // doubled units, upper bounds
  int hausdorff_beta_gamma = 0;
  int hausdorff_alpha_gamma = 0;
  bool strongly_reduced = false;
  std::size_t outside_points = 0;  // beta/gamma points beyond the ball
};

PipelineReport verify_pipeline(const ConedBall& ball, const XPath& alpha,
                               const PipelineOptions& options = {});

// A ball together with its (R+1, S+1) enlargement, used to keep only vertex
// pairs whose distance does not change on enlargement.
class StableBall {
 public:
  StableBall(const GroupSpec& spec, int R, int S, const BallOptions& options = {});
  const ConedBall& ball() const { return *base_; }
  const ConedBall& enlarged() const { return *big_; }
  int distance(VertexId x, VertexId y) const { return dist_[index(x, y)]; }
  bool stable(VertexId x, VertexId y) const { return stable_[index(x, y)]; }
  std::size_t stable_pair_count() const;  // unordered pairs x != y

 private:
  std::size_t index(VertexId x, VertexId y) const { return std::size_t(x) * n_ + y; }
  std::unique_ptr<ConedBall> base_, big_;
  std::size_t n_ = 0;
  std::vector<std::int16_t> dist_;
  std::vector<bool> stable_;
};

enum class ScanMode { vertex, claim };

struct BigonScanOptions {
  ScanMode mode = ScanMode::vertex;
  std::size_t geodesic_cap = 64;      // per endpoint pair
  std::size_t quadrilateral_cap = 50000;
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0: hardware concurrency
  bool keep_records = false;
};

struct ScanRecord {
  VertexId x1 = 0, y1 = 0, x2 = 0, y2 = 0;  // x2 = x1, y2 = y1 in vertex mode
  int delta = 0;
  std::uint64_t geodesics = 0;
};

struct ScanReport {
  ScanMode mode = ScanMode::vertex;
  int max_delta = 0;
  ScanRecord witness;
  XPath witness_first, witness_second;
  std::map<int, std::size_t> histogram;  // delta -> number of scanned items
  std::size_t scanned = 0;
  std::size_t skipped_unstable = 0;
  std::size_t geodesic_sets_sampled = 0;  // pairs with more geodesics than the cap
  bool capped = false;                    // claim mode: quadrilaterals sampled
  std::vector<ScanRecord> records;
};

ScanReport bigon_scan(const StableBall& sb, const BigonScanOptions& options = {});

struct DeltaRow {
  std::string name;
  GroupSpec spec;
  int vertex_delta = 0;
  int claim_delta = 0;
  bool capped = false;
};

struct DeltaReport {
  std::vector<DeltaRow> rows;
  int common_bound = 0;
  bool within_bound = true;  // common bound <= 28 doubled
};

DeltaReport delta_report(const std::vector<std::pair<std::string, GroupSpec>>& specs, int R, int S,
                         const BigonScanOptions& options = {});

}  // namespace artin
