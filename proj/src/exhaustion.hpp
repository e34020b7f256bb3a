#pragma once

#include <optional>
#include <string>
#include <vector>

namespace ptk::exh {

// ---------------------------------------------------------------------------
// Compact surfaces are tracked by orientability, genus (or crosscap count)
// and boundary circles; everything the checkers decide is Euler
// characteristic and count arithmetic.  Topological properties that cannot
// be derived from these data (irreducibility, anannularity, excellence) are
// declared flags carried with a provenance string.
// ---------------------------------------------------------------------------

struct SurfaceDescriptor {
  bool orientable = true;
  int genus_or_crosscaps = 0;  // crosscaps >= 1 when non-orientable
  int boundary_circles = 0;
};

int euler_characteristic(const SurfaceDescriptor& s);
bool is_disk(const SurfaceDescriptor& s);
bool is_sphere(const SurfaceDescriptor& s);
void validate_surface(const SurfaceDescriptor& s);

struct PieceFlags {
  bool p2_irreducible = false;
  bool boundary_irreducible = false;
  bool anannular = false;
  bool frontier_incompressible = false;
  bool is_product = false;
  bool excellent = false;
  std::string provenance;  // where the declared flags come from
};

// One exhaustion step at one end: the inner and outer frontier surfaces and
// the annuli the step cuts out of each boundary plane.
struct PieceDescriptor {
  std::vector<SurfaceDescriptor> frontier_in;
  std::vector<SurfaceDescriptor> frontier_out;
  std::vector<int> boundary_annuli_per_plane;
  PieceFlags flags;
};

struct LevelDescriptor {
  std::vector<PieceDescriptor> pieces;  // one per end
  int complement_components = 0;
};

struct ExhaustionDescriptor {
  int ends = 1;                    // mu
  std::vector<int> planes_per_end; // nu_i, size mu
  std::vector<LevelDescriptor> levels;
};

void validate_descriptor(const ExhaustionDescriptor& ex);

struct CheckReport {
  bool passed = false;
  std::vector<std::string> failures;
};

// A good exhaustion: no frontier component is a disk or a sphere, every
// piece is P^2-irreducible with incompressible frontier, and no piece is a
// product on its frontier components.
CheckReport check_good(const ExhaustionDescriptor& ex);

// A nice exhaustion additionally needs every frontier component of negative
// Euler characteristic, positive genus when orientable, exactly one annulus
// per boundary plane per piece, the declared piece flags, and a constant
// complement count equal to the number of ends.
CheckReport check_nice(const ExhaustionDescriptor& ex);

// Assigns each ray crossing to a frontier component: piercings[end][level]
// lists one component index per ray.  An empty map pierces the unique
// component of every frontier, and is an error when a frontier has several.
struct PiercingMap {
  std::vector<std::vector<std::vector<int>>> piercings;
};

// Carves ray neighborhoods out of an open-manifold exhaustion: each pierced
// frontier component gains one boundary circle per crossing, every piece is
// flagged excellent, and each step meets each new boundary plane in one
// annulus.  The result passes check_nice; preconditions (negative Euler
// characteristic, positive orientable genus) are reported by component.
ExhaustionDescriptor carve_rays(const ExhaustionDescriptor& u_ex, const std::vector<int>& nu,
                                const std::optional<PiercingMap>& piercing = std::nullopt);

struct SplitRecord {
  int end = 0;
  SurfaceDescriptor splitting_surface;  // torus or Klein bottle minus two disks
  SurfaceDescriptor residual_surface;   // orientable, genus nu'-1, two boundary circles
};

struct DeletePlanesResult {
  ExhaustionDescriptor descriptor;
  std::vector<SplitRecord> splits;  // one per end with a reduced plane count
};

// Keeps nu'_i of the nu_i planes at each end.  Each affected step is split
// along a twice-holed torus or Klein bottle; the residual surface has genus
// nu'_i - 1 and two boundary circles, and the chi < 0 gluing condition is
// re-checked for the splitting surface.
DeletePlanesResult delete_planes(const ExhaustionDescriptor& m_ex, const std::vector<int>& keep);

}  // namespace ptk::exh
