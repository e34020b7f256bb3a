#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

#include "tangle.hpp"

namespace ptk::engulf {

// ---------------------------------------------------------------------------
// Occupancy bookkeeping for a chosen subtangle.
//
// J_i lists the columns whose block at layer i meets the subtangle, I_i the
// same for the braid slabs, T_i and S_i their running unions.  The rows obey
// the four case transition rules and S_i = T_i throughout.
// ---------------------------------------------------------------------------

struct OccupancyTrace {
  int n = 0;
  int m = 0;
  std::vector<int> letters;                // braid letters t_1..t_m
  std::vector<std::vector<int>> J;         // rows 0..m, each sorted
  std::vector<std::vector<int>> I;         // rows 1..m stored at index 0..m-1
  std::vector<std::vector<int>> T;         // rows 0..m
  std::vector<std::vector<int>> S;         // rows 1..m stored at index 0..m-1
};

enum class CaseKind { BothIn = 1, BothOut = 2, LeftOnly = 3, RightOnly = 4 };

struct StepCase {
  int index = 0;  // i: the step carries layer i to layer i+1
  int t = 1;      // the group letter of the slab
  CaseKind kind = CaseKind::BothOut;
  bool left_neighbor_in = false;   // t-1 in J_i (cases 3 and 4)
  bool right_neighbor_in = false;  // t+2 in J_i (cases 3 and 4)
};

OccupancyTrace occupancy_trace(const tangle::Subtangle& sub);
StepCase classify_step(const std::vector<int>& row, int t, int n, int index = 0);

// ---------------------------------------------------------------------------
// Gluing checks.  An interface component that is a disk portion passes only
// with at least two punctures (chi = 1 - punctures < 0); an empty interface
// list fails outright.
// ---------------------------------------------------------------------------

struct GluingInterface {
  int punctures = 0;
  bool is_disk_portion = true;
};

struct GluingCheck {
  std::vector<GluingInterface> interfaces;
  bool passed = false;
};

GluingCheck check_gluing(std::vector<GluingInterface> interfaces);

// ---------------------------------------------------------------------------
// Excellence certificates.
//
// The box is tracked on a (2n+1) x (2m+1) grid of solids: odd x-cells are
// column bricks, even x-cells the overlaps between adjacent columns; even
// z-cells are the tangle layers, odd z-cells the braid slabs.  A certificate
// is a derivation tree over cell sets:
//   Leaf            an occupied run of columns at one layer together with
//                   the strands feeding it (excellent by the properties of
//                   the source tangle),
//   Glue            new leaves (plus tangle-free filler lumps riding on
//                   them) attached to previously certified regions along
//                   interfaces every component of which is a punctured disk,
//   BallAdjunction  a tangle-free solid meeting the region in a single disk.
// ---------------------------------------------------------------------------

struct Cell {
  int xc = 0;  // 0..2n
  int zc = 0;  // 0..2m
  auto operator<=>(const Cell&) const = default;
};

struct CertNode {
  enum class Kind { Leaf, Glue, Ball };
  Kind kind = Kind::Leaf;

  // Leaf payload
  int level = -1;
  int col_lo = 0, col_hi = 0;
  int strand_width = 0;  // arcs of the layer tangle inside the run

  // Glue payload: children = previously certified regions plus the leaves
  // being attached; cells = tangle-free filler folded into the attachment.
  std::vector<int> children;
  GluingCheck check;

  // Leaf: the piece cells.  Ball: the adjoined cells (child in children[0]).
  std::vector<Cell> cells;
  int interface_count = 0;  // Ball
};

struct ExcellenceCertificate {
  int n = 0;
  std::vector<int> j0;
  OccupancyTrace trace;
  std::vector<StepCase> cases;
  std::vector<CertNode> nodes;
  int root = -1;
  std::vector<int> untouched_columns;  // columns never entered; adjoined in the final pass
  std::vector<std::string> notes;
};

enum class VerifyError {
  CaseMismatch,
  PunctureDeficit,
  InterfaceNotDisk,
  NonBallAdjunct,
  Coverage,
  Structure,
};

struct EngulfError : std::runtime_error {
  VerifyError code;
  EngulfError(VerifyError c, const std::string& what) : std::runtime_error(what), code(c) {}
};

// Runs the downward expansion / amalgamation / adjunction bookkeeping for
// the chosen subtangle and returns the full derivation tree.  Throws
// EngulfError when the bookkeeping cannot be completed.
ExcellenceCertificate engulf_verify(const tangle::Subtangle& sub);

struct Verdict {
  bool passed = false;
  int failed_node = -1;  // -1: no node-level failure
  std::string message;
};

// Re-checks every node invariant from scratch: occupancy rows, leaf widths
// and cell sets, interface shapes and puncture counts, ball shapes, unique
// coverage, and the untouched-column list.
Verdict validate_certificate(const ExcellenceCertificate& cert);

// Grid helpers shared with the validator and the tests.
int grid_width(int n);
int grid_height(int m);
bool cell_occupied(const OccupancyTrace& tr, Cell c);
int face_punctures(const OccupancyTrace& tr, int xc, int z);

}  // namespace ptk::engulf
