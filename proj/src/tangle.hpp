#pragma once

#include <array>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "braid.hpp"

namespace ptk::tangle {

// ---------------------------------------------------------------------------
// Box decomposition.
//
// The ambient box for n components is
//   [0, 9n+1] x [-1, 1] x [0, n^2-n+1],
// with z increasing downward.  B-layers sit at z in [2i, 2i+1] and C-layers
// (the braid slabs) at z in [2i-1, 2i].  Within a layer, column j spans
// x in [9j-9, 9j+1]; adjacent columns overlap in the width-one solids
// N_{i,j} (B-layers) and K_{i,j} (C-layers).  Removing the overlaps from a
// block leaves its brick.
// ---------------------------------------------------------------------------

enum class BlockKind { BLayer, CLayer, NOverlap, KOverlap, BBrick, CBrick };

struct Box {
  // exact integer extents
  int x0, x1, z0, z1;  // y is always [-1, 1]
};

struct BlockId {
  BlockKind kind;
  int level = 0;   // i
  int column = 0;  // j (overlaps allow j = 0..n)
};

Box block_extent(const BlockId& id, int n);
void validate_block(const BlockId& id, int n, int m);

// ---------------------------------------------------------------------------
// Lattice points and level tangles.
// ---------------------------------------------------------------------------

// x_{p,q} = (3q-1, 0, p); role a/b/c of column j sits at slot 3j-2 / 3j-1 / 3j.
struct LatticePoint {
  int p = 0;  // height in [0, 2m+1]
  int q = 1;  // slot in [1, 3n]

  int x() const { return 3 * q - 1; }
  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
};

enum class Role { A, B, C };

inline int role_slot(int column, Role r) {
  return 3 * column - 2 + (r == Role::A ? 0 : r == Role::B ? 1 : 2);
}

enum class LevelKind { Top, Middle, Bottom };
LevelKind level_kind(int level, int m);

// arc roles within one column of a level tangle
enum class SegmentKind { Delta, Alpha, Gamma };

struct LevelSegment {
  int level = 0;
  int column = 1;
  SegmentKind kind = SegmentKind::Alpha;
  LatticePoint from, to;
};

// The arcs of column j at the given level, with exact endpoint lattice
// points.  Top levels have alpha+gamma, middle levels delta+alpha+gamma,
// bottom levels delta+alpha.
std::vector<LevelSegment> level_column_segments(int level, int column, int n, int m);

// ---------------------------------------------------------------------------
// The stacked tangle.
// ---------------------------------------------------------------------------

struct BraidTraverse {
  int step = 1;      // braid slab index, 1..m
  Role role;         // which of the three strands of the moving group
  bool downward;     // true: entered from above; false: traversed bottom-up
  int from_column;   // group occupied before the slab (top side)
  int to_column;     // group occupied after the slab (bottom side)
};

struct ChainElement {
  enum class Type { Level, Braid };
  Type type;
  LevelSegment level_segment;   // valid when type == Level
  BraidTraverse braid_traverse; // valid when type == Braid
};

struct ThetaComplex {
  int n = 2;
  int m = 1;
  braid::GroupBlockWord braids;                 // the half twist sequence
  std::vector<std::vector<int>> phi;            // rows 0..m, phi[i][j-1] in [1,n]
  std::vector<std::vector<ChainElement>> components;  // component j-1

  int height() const { return 2 * m + 1; }
  int phi_at(int i, int j) const { return phi[static_cast<size_t>(i)][static_cast<size_t>(j) - 1]; }
};

// Builds the stacked n-tangle: one level tangle per layer joined by the
// half-twist braid sequence, each component doubling back twice per slab
// (down the a-strand, across delta, up the b-strand, across gamma, down the
// c-strand).  Component j runs from a_{0,j} to c_{2m+1,n+1-j}.
ThetaComplex build_theta(int n);

// Occupancy table: phi[0] is the identity row and successive rows differ by
// the step's group transposition.
std::vector<std::vector<int>> phi_table(const ThetaComplex& theta);

struct Subtangle {
  std::shared_ptr<const ThetaComplex> parent;
  std::vector<int> columns;  // J0: sorted, non-empty subset of [1, n]
};

Subtangle select_subtangle(std::shared_ptr<const ThetaComplex> theta, std::vector<int> j0);

// Least i with phi(i, j') = phi(i, j) + 1.  Exists for every pair j < j'.
int adjacency_witness(const ThetaComplex& theta, int j, int jp);

// Number of points of component j on the horizontal disk at height p:
// 3 on intermediate disks, 1 at the two extremes.
int disk_incidence(const ThetaComplex& theta, int j, int p);

LatticePoint component_start(const ThetaComplex& theta, int j);
LatticePoint component_end(const ThetaComplex& theta, int j);

// ---------------------------------------------------------------------------
// Quotient wirings in a solid torus (or solid Klein bottle).
//
// The ball tangle is wired so that identifying the two meridian-disk copies
// G_1 and G_2 turns the grouped arcs into arcs proper in the solid torus.
// The three-group scheme joins beta_j, gamma_j, delta_j into one arc rho_j
// crossing the meridian disk twice.  The four-group scheme adds companion
// tori T_j with compressing-disk marks D_j; rho_j crosses D_j twice and the
// holed part of the meridian disk once, and D_i meets rho_j only for i = j.
// ---------------------------------------------------------------------------

enum class GroupScheme { ThreeGroup, FourGroup };

enum class EndSite {
  Wall,   // boundary of the ball away from the meridian-disk copies
  G1, G2, // the meridian-disk copies (three-group scheme)
  D1, D2, // the companion-disk copies, indexed per j (four-group scheme)
  H1, H2  // the holed remainder of the disk copies (four-group scheme)
};

struct ArcEndpoint {
  EndSite site = EndSite::Wall;
  int disk_index = 0;  // j for D1/D2; otherwise 0
  int mark = 0;        // distinct mark per endpoint lying on an identified site
};

enum class ArcGroup { Beta, Gamma, Delta, Omega };

struct QuotientArc {
  ArcGroup group;
  int index = 1;  // j in [1, nu]
  ArcEndpoint end0, end1;
};

struct QuotientTangle {
  GroupScheme scheme = GroupScheme::ThreeGroup;
  int nu = 1;
  std::vector<QuotientArc> arcs;
  // pairs of marks identified when G_1/G_2 (resp. D/H copies) are glued
  std::vector<std::pair<int, int>> identification;
  std::vector<std::optional<std::string>> torus_labels;  // four-group only, size nu
};

QuotientTangle wire_solid_torus(GroupScheme scheme, int nu);

// Attaches one knot label per companion torus; each labeled companion slot
// together with a neighborhood of its compressing disk forms a 3-ball.
QuotientTangle insert_knot_spaces(const QuotientTangle& qt, const std::vector<std::string>& labels);

// Crossings of the quotient arc rho_j with the meridian disk of the outer
// torus: 2 in the three-group scheme, 3 in the four-group scheme.
int meridian_crossings(const QuotientTangle& qt, int j);

// Components of the surface splitting the exterior of a k-element
// sub-collection, as (puncture count, is disk portion) pairs.  Three-group:
// one disk with 2k punctures; four-group: k twice-punctured disks plus one
// disk with 2k punctures.
std::vector<std::pair<int, bool>> splitting_surface(const QuotientTangle& qt,
                                                    const std::vector<int>& subset);

// Checks the structural invariants of a wiring: endpoint sites per group,
// identification is a bijection of marked endpoint sets, crossing counts,
// and companion-disk disjointness.  Throws std::invalid_argument on failure.
void validate_quotient(const QuotientTangle& qt);

}  // namespace ptk::tangle
