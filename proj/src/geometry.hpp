#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <string>
#include <vector>

#include "tangle.hpp"

namespace ptk::geom {

// ---------------------------------------------------------------------------
// Exact rational scalars: template coordinates use small denominators and
// every predicate (crossing detection, over/under, distances) is decided
// without rounding.
// ---------------------------------------------------------------------------

using Int = boost::multiprecision::cpp_int;

struct Rat {
  Int num = 0;
  Int den = 1;

  Rat() = default;
  Rat(long long v) : num(v) {}
  Rat(Int n, Int d);

  Rat operator+(const Rat& o) const;
  Rat operator-(const Rat& o) const;
  Rat operator*(const Rat& o) const;
  Rat operator/(const Rat& o) const;
  Rat operator-() const { return {-num, den}; }
  bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rat& o) const { return !(*this == o); }
  bool operator<(const Rat& o) const { return num * o.den < o.num * den; }
  bool operator<=(const Rat& o) const { return num * o.den <= o.num * den; }
  bool operator>(const Rat& o) const { return o < *this; }
  bool operator>=(const Rat& o) const { return o <= *this; }

  int sign() const { return num == 0 ? 0 : (num < 0 ? -1 : 1); }
  double to_double() const;
  std::string str() const;
};

Rat rat_of(const std::string& text);  // "p/q" or integer

struct Vec3 {
  Rat x, y, z;
  bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }
};

struct Polyline3 {
  std::vector<Vec3> vertices;
};

void validate_polyline(const Polyline3& p);

// ---------------------------------------------------------------------------
// Realization of the stacked tangle on the integer lattice: arc endpoints at
// exactly (3q-1, 0, p), one polyline per component, every arc built from the
// knotted-arc template of its layer with clasp fingers toward both of its
// consecutive neighbours, and braid strands monotone in z with y = ±1/2
// crossing offsets.
// ---------------------------------------------------------------------------

std::vector<Polyline3> realize(const tangle::ThetaComplex& theta);
std::vector<Polyline3> realize(const tangle::Subtangle& sub);

// A braid word alone, strands top to bottom (used for word-level diagrams).
std::vector<Polyline3> realize_braid(const braid::BraidWord& word);

// Exact disjointness: the squared distance between every pair of segments on
// distinct components is positive.  Returns the failing pair, if any.
struct ClearanceReport {
  bool disjoint = false;
  int component_a = -1, component_b = -1;
};
ClearanceReport check_disjoint(const std::vector<Polyline3>& lines);

// ---------------------------------------------------------------------------
// Projection along y: crossings listed with over/under resolved by y order
// (larger y is in front).  Degenerate configurations are retried under the
// documented shear x -> x + k*y/1024, k = 1..3.
// ---------------------------------------------------------------------------

struct Crossing {
  // position in the diagram plane
  Rat x, z;
  // the two strand passes: (component, segment index, parameter)
  int over_component = 0, under_component = 0;
  int over_segment = 0, under_segment = 0;
  Rat over_param, under_param;
  int sign = +1;  // right-handed crossing is +1
};

struct DiagramProjection {
  std::vector<Polyline3> lines;  // possibly sheared copies of the input
  int shear_applied = 0;         // numerator of the x += k*y/1024 shear
  std::vector<Crossing> crossings;
};

DiagramProjection project(const std::vector<Polyline3>& lines);

// ---------------------------------------------------------------------------
// Diagram codes: PD-style crossing tuples with open endpoint markers and a
// Gauss sequence per component.
// ---------------------------------------------------------------------------

struct PdTuple {
  // arcs counterclockwise starting at the incoming under-strand
  std::array<int, 4> arcs{};
  int sign = +1;
};

struct GaussEntry {
  bool over = false;
  int crossing = 0;  // 1-based
  int sign = +1;
};

struct DiagramCode {
  int components = 0;
  int crossings = 0;
  std::vector<PdTuple> pd;
  std::vector<std::pair<int, int>> open_ends;     // (component, arc id) at each endpoint
  std::vector<std::vector<GaussEntry>> gauss;     // per component
  int total_arc_ends() const { return 4 * crossings; }
};

DiagramCode encode_diagram(const DiagramProjection& d);

std::string pd_text(const DiagramCode& code);
std::string gauss_text(const DiagramCode& code);

// Deterministic SVG 1.1 rendering with the under strand broken at each
// crossing.
std::string render_svg(const DiagramProjection& d);

}  // namespace ptk::geom
