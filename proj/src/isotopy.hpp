#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ptk::iso {

// ---------------------------------------------------------------------------
// Region ladder: overlapping neighborhoods Y_0, Y_1, ... of the exhaustion
// gaps.  Y_a and Y_b are disjoint whenever |a-b| >= 2, so pushes supported
// in regions two apart commute.
// ---------------------------------------------------------------------------

struct RegionLadder {
  std::optional<int> level_count;  // absent: unbounded

  bool valid_region(int r) const {
    return r >= 0 && (!level_count || r < *level_count);
  }
  static bool adjacent(int a, int b) { return std::abs(a - b) <= 1; }
};

// ---------------------------------------------------------------------------
// Nesting forests of trivial intersection curves.
//
// Every node is an intersection curve bounding a disk (circles) or cut off
// by a halfdisk (arcs) on each of the two surfaces; the parent links give
// the innermost-containment forests on the two sides.  Infinite families
// are represented by an eventually periodic generator.
// ---------------------------------------------------------------------------

enum class CurveKind { Circle, Arc };

struct ForestNode {
  int id = 0;
  CurveKind kind = CurveKind::Circle;
  int parent_p = -1;  // containing curve on the first surface, -1 = none
  int parent_q = -1;  // containing curve on the second surface
  int region = -1;    // ladder index, -1 = unassigned
  bool target = false;
  bool boundary_region = false;  // arcs: endpoints lie in the marked boundary surface
};

struct PeriodicTemplate {
  enum class Ref { None, Prefix, Period };
  struct Node {
    CurveKind kind = CurveKind::Circle;
    bool target = false;
    bool boundary_region = false;
    int region_base = 0;
    int region_step = 0;  // region of instance k is base + k * step
    Ref pref = Ref::None;
    int p_index = -1;  // prefix node id or template index
    int p_delta = 0;   // parent lives delta instances further out
    Ref qref = Ref::None;
    int q_index = -1;
    int q_delta = 0;
  };
  std::vector<Node> nodes;
};

struct NestingForest {
  std::vector<ForestNode> nodes;  // explicit prefix, ids 0..size-1
  std::optional<PeriodicTemplate> generator;
};

enum class Side { P, Q };

struct NestingReport {
  bool on_p = false;
  bool on_q = false;
  bool any() const { return on_p || on_q; }
};

// Checks ids, parent references and acyclicity; throws std::invalid_argument.
void validate_forest(const NestingForest& f);

// Target nodes with no target proper ancestor on the chosen side.
std::vector<int> maximal_nodes(const NestingForest& f, Side side);

// A generator produces infinite nesting exactly when some parent chain in
// the quotient graph closes up with positive instance drift.
NestingReport detect_infinite_nesting(const NestingForest& f);

// Materializes `instances` copies of the periodic template after the prefix.
// Parent references leaving the truncation become roots.
NestingForest unroll(const NestingForest& f, int instances);

// ---------------------------------------------------------------------------
// Push schedules.
// ---------------------------------------------------------------------------

enum class PushKind { Disk, Halfdisk, Band };

struct Push {
  PushKind kind = PushKind::Disk;
  int node = -1;  // the node removed by this push
};

struct StageEntry {
  int region = -1;
  std::vector<Push> pushes;  // innermost first
};

struct Stage {
  std::vector<StageEntry> entries;  // pairwise non-adjacent regions
};

struct PushSchedule {
  std::vector<Stage> stages;
};

enum class IsotopyErrorCode { InfiniteNesting, UnassignedRegion, BadInput };

struct IsotopyError : std::runtime_error {
  IsotopyErrorCode code;
  IsotopyError(IsotopyErrorCode c, const std::string& what) : std::runtime_error(what), code(c) {}
};

// Schedules the removal of every target node: circle targets first and then
// arc targets, each in two simultaneous passes (even-indexed regions, then
// the odd-indexed cleanup, as the disjoint-support argument requires).
// Requires an explicit finite forest; unroll a generator first.
PushSchedule schedule_removal(const NestingForest& f, const RegionLadder& ladder);

// Surviving node ids after applying the schedule; checks that every push
// removes its target and that no node ever reappears.
std::vector<int> apply_schedule(const NestingForest& f, const PushSchedule& s);

// ---------------------------------------------------------------------------
// Annulus traces of a plane in standard position.
//
// The circles of the trace are kept in nesting order; consecutive circles on
// the same frontier surface bound a redundant annulus.  Monotone position is
// one circle per level in increasing order.
// ---------------------------------------------------------------------------

struct AnnulusTrace {
  int base_level = 1;              // the standard-position index
  std::vector<int> circle_levels;  // innermost first
};

struct AnnulusMove {
  int level = 0;
  int position = 0;  // the pair (position, position+1) is removed, 0-based
};

struct AnnulusStage {
  std::vector<int> levels;  // pairwise at distance >= 2
  std::vector<AnnulusMove> moves;
};

void validate_trace(const AnnulusTrace& t);
bool is_monotone(const AnnulusTrace& t);
std::vector<int> redundant_pair_positions(const AnnulusTrace& t);

struct MonotonizeResult {
  std::vector<AnnulusStage> stages;
  AnnulusTrace trace;
};

MonotonizeResult monotonize_plane_trace(const AnnulusTrace& t);

// ---------------------------------------------------------------------------
// Patch trees of a partial plane in standard position.
//
// Vertices are the root disk and the patches; edges join patches meeting
// along a frontier arc, so edges connect consecutive depths.  A falling
// vertex is a non-root vertex with no upward edge; monotone position is the
// absence of falling vertices, which makes every depth slice connected.
// ---------------------------------------------------------------------------

struct PatchVertex {
  int id = 0;
  int depth = 0;
  int order = 2;  // frontier arcs; at the truncation depth some may dangle
};

struct PatchTree {
  std::vector<PatchVertex> vertices;
  std::vector<std::pair<int, int>> edges;
  int root_id = 0;
  int truncation_depth = 0;
};

enum class TreeMoveKind { BoundarySlide, BandPush, BandUnfolding };

struct TreeMove {
  TreeMoveKind kind = TreeMoveKind::BandPush;
  int center = -1;
  std::vector<int> consumed;  // lower neighbors merged or pushed
  int result = -1;            // new vertex id, -1 when pushed past the truncation
  int result_order = 0;
  int depth = 0;
};

struct TreeStage {
  std::vector<int> depths;  // pairwise at distance >= 2
  std::vector<TreeMove> moves;
};

struct PatchResult {
  std::vector<TreeStage> stages;
  PatchTree tree;
};

void validate_patch_tree(const PatchTree& t);
bool is_monotone(const PatchTree& t);
std::vector<int> falling_vertices(const PatchTree& t);

// Collapses every falling star: boundary slides reduce the star to two legs
// and a band push drops it one depth; a star already at the truncation depth
// is pushed beyond it.  Stages keep their supports disjoint.
PatchResult monotonize_patch_tree(const PatchTree& t, int depth_limit);

}  // namespace ptk::iso
