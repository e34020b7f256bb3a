#include "engulf.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>

namespace ptk::engulf {

namespace {

bool contains(const std::vector<int>& sorted_row, int v) {
  return std::binary_search(sorted_row.begin(), sorted_row.end(), v);
}

std::vector<int> sorted_union(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<std::pair<int, int>> runs_of(const std::vector<int>& sorted_row) {
  std::vector<std::pair<int, int>> runs;
  for (int v : sorted_row) {
    if (!runs.empty() && v == runs.back().second + 1) runs.back().second = v;
    else runs.push_back({v, v});
  }
  return runs;
}

}  // namespace

OccupancyTrace occupancy_trace(const tangle::Subtangle& sub) {
  const auto& theta = *sub.parent;
  OccupancyTrace tr;
  tr.n = theta.n;
  tr.m = theta.m;
  tr.letters = theta.braids.letters;

  tr.J.resize(static_cast<size_t>(tr.m) + 1);
  for (int i = 0; i <= tr.m; ++i) {
    std::vector<int> row;
    for (int j : sub.columns) row.push_back(theta.phi_at(i, j));
    std::sort(row.begin(), row.end());
    tr.J[static_cast<size_t>(i)] = std::move(row);
  }
  tr.T.push_back(tr.J[0]);
  for (int i = 0; i < tr.m; ++i) {
    const int t = tr.letters[static_cast<size_t>(i)];
    const auto& Ji = tr.J[static_cast<size_t>(i)];
    const auto& Jn = tr.J[static_cast<size_t>(i) + 1];
    const StepCase sc = classify_step(Ji, t, tr.n, i);
    std::vector<int> In, Jn_expected;
    switch (sc.kind) {
      case CaseKind::BothIn:
      case CaseKind::BothOut:
        In = Ji;
        Jn_expected = Ji;
        break;
      case CaseKind::LeftOnly:
        In = sorted_union(Ji, {t + 1});
        Jn_expected = In;
        Jn_expected.erase(std::remove(Jn_expected.begin(), Jn_expected.end(), t),
                          Jn_expected.end());
        break;
      case CaseKind::RightOnly:
        In = sorted_union(Ji, {t});
        Jn_expected = In;
        Jn_expected.erase(std::remove(Jn_expected.begin(), Jn_expected.end(), t + 1),
                          Jn_expected.end());
        break;
    }
    if (Jn_expected != Jn)
      throw EngulfError(VerifyError::CaseMismatch,
                        "occupancy row " + std::to_string(i + 1) + " deviates from its case rule");
    tr.I.push_back(In);
    tr.T.push_back(sorted_union(tr.T.back(), Jn));
    tr.S.push_back(tr.S.empty() ? In : sorted_union(tr.S.back(), In));
  }
  for (int i = 1; i <= tr.m; ++i)
    if (tr.S[static_cast<size_t>(i) - 1] != tr.T[static_cast<size_t>(i)])
      throw EngulfError(VerifyError::CaseMismatch, "running unions disagree: S_i != T_i");
  return tr;
}

StepCase classify_step(const std::vector<int>& row, int t, int n, int index) {
  if (t < 1 || t > n - 1) throw std::invalid_argument("classify_step: letter out of range");
  StepCase sc;
  sc.index = index;
  sc.t = t;
  const bool a = contains(row, t), b = contains(row, t + 1);
  sc.kind = a ? (b ? CaseKind::BothIn : CaseKind::LeftOnly)
              : (b ? CaseKind::RightOnly : CaseKind::BothOut);
  sc.left_neighbor_in = t - 1 >= 1 && contains(row, t - 1);
  sc.right_neighbor_in = t + 2 <= n && contains(row, t + 2);
  return sc;
}

GluingCheck check_gluing(std::vector<GluingInterface> interfaces) {
  GluingCheck gc;
  gc.interfaces = std::move(interfaces);
  gc.passed = !gc.interfaces.empty();
  for (const auto& s : gc.interfaces)
    if (s.is_disk_portion && s.punctures < 2) gc.passed = false;
  return gc;
}

int grid_width(int n) { return 2 * n + 1; }
int grid_height(int m) { return 2 * m + 1; }

bool cell_occupied(const OccupancyTrace& tr, Cell c) {
  if (c.xc < 0 || c.xc > 2 * tr.n || c.zc < 0 || c.zc > 2 * tr.m) return false;
  const bool brick = c.xc % 2 == 1;
  if (c.zc % 2 == 0) {
    const auto& row = tr.J[static_cast<size_t>(c.zc / 2)];
    if (brick) return contains(row, (c.xc + 1) / 2);
    // An occupied column reaches into its overlaps: the clasp finger pokes
    // into the overlap on its right (absent for the last column) and the
    // receiving lane sits in the overlap on its left.
    const int g = c.xc / 2;
    return (g >= 1 && g < tr.n && contains(row, g)) ||
           (g + 1 <= tr.n && contains(row, g + 1));
  }
  const int i = (c.zc + 1) / 2;  // braid slab index, 1..m
  const auto& row = tr.I[static_cast<size_t>(i) - 1];
  if (brick) return contains(row, (c.xc + 1) / 2);
  const int t = tr.letters[static_cast<size_t>(i) - 1];
  const auto& above = tr.J[static_cast<size_t>(i) - 1];
  return c.xc / 2 == t && (contains(above, t) || contains(above, t + 1));
}

int face_punctures(const OccupancyTrace& tr, int xc, int z) {
  if (xc % 2 == 0) return 0;  // overlap solids carry no lattice points
  if (z < 1 || z > 2 * tr.m) return 0;
  const int level = z % 2 == 0 ? z / 2 : (z - 1) / 2;
  return contains(tr.J[static_cast<size_t>(level)], (xc + 1) / 2) ? 3 : 0;
}

// ---------------------------------------------------------------------------
// Cell geometry shared by the builder and the validator.
// ---------------------------------------------------------------------------

namespace {

using CellSet = std::set<Cell>;
using Coverage = std::map<Cell, int>;  // cell -> region root node id

std::array<Cell, 4> neighbors(Cell c) {
  return {Cell{c.xc - 1, c.zc}, Cell{c.xc + 1, c.zc}, Cell{c.xc, c.zc - 1}, Cell{c.xc, c.zc + 1}};
}

struct Face {
  // A shared cell side, stored as its grid-index segment.  Horizontal sides
  // carry (xc, z) for puncture lookup.
  int ax, az, bx, bz;
  bool horizontal = false;
  int xc = -1, z = -1;
  auto operator<=>(const Face&) const = default;
};

Face face_between(Cell a, Cell b) {
  if (a.zc == b.zc) {
    const int x = std::max(a.xc, b.xc);
    return {x, a.zc, x, a.zc + 1, false, -1, -1};
  }
  const int z = std::max(a.zc, b.zc);
  return {a.xc, z, a.xc + 1, z, true, a.xc, z};
}

std::pair<Cell, Cell> face_cells(const Face& f) {
  if (f.horizontal) return {Cell{f.xc, f.z - 1}, Cell{f.xc, f.z}};
  return {Cell{f.ax - 1, f.az}, Cell{f.ax, f.az}};
}

struct InterfaceComponent {
  std::vector<Face> faces;
  int punctures = 0;
  bool disk = false;
  std::set<int> regions;
};

// Contact faces between `cells` and `covered`, grouped into components by
// shared segment endpoints.  Such a component thickened across the y-range
// is a disk exactly when its segment complex is a tree.
std::vector<InterfaceComponent> contact_interfaces(const OccupancyTrace& tr, const CellSet& cells,
                                                   const Coverage& covered) {
  std::map<Face, int> face_region;
  for (Cell c : cells)
    for (Cell nb : neighbors(c)) {
      if (cells.count(nb)) continue;
      auto it = covered.find(nb);
      if (it == covered.end()) continue;
      face_region[face_between(c, nb)] = it->second;
    }
  std::vector<Face> faces;
  faces.reserve(face_region.size());
  for (const auto& [f, r] : face_region) faces.push_back(f);

  std::map<std::pair<int, int>, std::vector<size_t>> at_vertex;
  for (size_t i = 0; i < faces.size(); ++i) {
    at_vertex[{faces[i].ax, faces[i].az}].push_back(i);
    at_vertex[{faces[i].bx, faces[i].bz}].push_back(i);
  }
  std::vector<int> comp(faces.size(), -1);
  int ncomp = 0;
  for (size_t i = 0; i < faces.size(); ++i) {
    if (comp[i] >= 0) continue;
    std::vector<size_t> stack{i};
    comp[i] = ncomp;
    while (!stack.empty()) {
      const size_t u = stack.back();
      stack.pop_back();
      for (auto key : {std::pair{faces[u].ax, faces[u].az}, std::pair{faces[u].bx, faces[u].bz}})
        for (size_t w : at_vertex[key])
          if (comp[w] < 0) {
            comp[w] = ncomp;
            stack.push_back(w);
          }
    }
    ++ncomp;
  }
  std::vector<InterfaceComponent> out(static_cast<size_t>(ncomp));
  for (size_t i = 0; i < faces.size(); ++i) {
    auto& ic = out[static_cast<size_t>(comp[i])];
    ic.faces.push_back(faces[i]);
    if (faces[i].horizontal) ic.punctures += face_punctures(tr, faces[i].xc, faces[i].z);
    ic.regions.insert(face_region.at(faces[i]));
  }
  for (auto& ic : out) {
    std::set<std::pair<int, int>> verts;
    for (const auto& f : ic.faces) {
      verts.insert({f.ax, f.az});
      verts.insert({f.bx, f.bz});
    }
    ic.disk = verts.size() == ic.faces.size() + 1;  // components are connected by construction
  }
  std::sort(out.begin(), out.end(), [](const InterfaceComponent& a, const InterfaceComponent& b) {
    return a.faces.front() < b.faces.front();
  });
  return out;
}

std::vector<CellSet> components_of(const CellSet& cells) {
  std::vector<CellSet> comps;
  CellSet left = cells;
  while (!left.empty()) {
    CellSet comp;
    std::vector<Cell> stack{*left.begin()};
    left.erase(left.begin());
    while (!stack.empty()) {
      const Cell c = stack.back();
      stack.pop_back();
      comp.insert(c);
      for (Cell nb : neighbors(c)) {
        auto it = left.find(nb);
        if (it != left.end()) {
          left.erase(it);
          stack.push_back(nb);
        }
      }
    }
    comps.push_back(std::move(comp));
  }
  std::sort(comps.begin(), comps.end(),
            [](const CellSet& a, const CellSet& b) { return *a.begin() < *b.begin(); });
  return comps;
}

// Connected, simply connected, no pinched corner: the thickened cell set is
// a 3-ball.
bool polyomino_disk(const CellSet& cells) {
  if (cells.empty()) return false;
  if (components_of(cells).size() != 1) return false;
  std::set<std::pair<int, int>> verts;
  std::set<std::array<int, 4>> edges;
  for (Cell c : cells) {
    for (auto [dx, dz] : {std::pair{0, 0}, {1, 0}, {0, 1}, {1, 1}})
      verts.insert({c.xc + dx, c.zc + dz});
    edges.insert({c.xc, c.zc, c.xc + 1, c.zc});
    edges.insert({c.xc, c.zc + 1, c.xc + 1, c.zc + 1});
    edges.insert({c.xc, c.zc, c.xc, c.zc + 1});
    edges.insert({c.xc + 1, c.zc, c.xc + 1, c.zc + 1});
  }
  const long chi = static_cast<long>(verts.size()) - static_cast<long>(edges.size()) +
                   static_cast<long>(cells.size());
  if (chi != 1) return false;
  for (const auto& [vx, vz] : verts) {
    const bool ne = cells.count({vx, vz - 1}), nw = cells.count({vx - 1, vz - 1});
    const bool se = cells.count({vx, vz}), sw = cells.count({vx - 1, vz});
    if ((ne && sw && !nw && !se) || (nw && se && !ne && !sw)) return false;
  }
  return true;
}

bool tangle_free(const OccupancyTrace& tr, const CellSet& cells) {
  for (Cell c : cells)
    if (cell_occupied(tr, c)) return false;
  return true;
}

// Greedy maximal-box decomposition; the boxes must form a tree under
// positive-length side contact.
bool boxes_form_tree(const CellSet& cells) {
  struct BoxI {
    int x0, x1, z0, z1;  // half-open, grid-index space
  };
  CellSet left = cells;
  std::vector<BoxI> boxes;
  while (!left.empty()) {
    const Cell c = *left.begin();
    int x1 = c.xc;
    while (left.count({x1 + 1, c.zc})) ++x1;
    int z1 = c.zc;
    for (bool grow = true; grow;) {
      for (int x = c.xc; x <= x1 && grow; ++x)
        if (!left.count({x, z1 + 1})) grow = false;
      if (grow) ++z1;
    }
    for (int x = c.xc; x <= x1; ++x)
      for (int z = c.zc; z <= z1; ++z) left.erase({x, z});
    boxes.push_back({c.xc, x1 + 1, c.zc, z1 + 1});
  }
  int edges = 0;
  std::vector<std::vector<size_t>> adj(boxes.size());
  for (size_t a = 0; a < boxes.size(); ++a)
    for (size_t b = a + 1; b < boxes.size(); ++b) {
      const auto &p = boxes[a], &q = boxes[b];
      const int ox = std::min(p.x1, q.x1) - std::max(p.x0, q.x0);
      const int oz = std::min(p.z1, q.z1) - std::max(p.z0, q.z0);
      if ((ox > 0 && oz == 0) || (oz > 0 && ox == 0)) {
        ++edges;
        adj[a].push_back(b);
        adj[b].push_back(a);
      }
    }
  if (edges != static_cast<int>(boxes.size()) - 1) return false;
  std::vector<char> seen(boxes.size(), 0);
  std::vector<size_t> stack{0};
  seen[0] = 1;
  size_t cnt = 0;
  while (!stack.empty()) {
    const size_t u = stack.back();
    stack.pop_back();
    ++cnt;
    for (size_t w : adj[u])
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  return cnt == boxes.size();
}

int arcs_per_column(int level, int m) {
  return tangle::level_kind(level, m) == tangle::LevelKind::Middle ? 3 : 2;
}

// Cells of the leaf piece for the maximal run [e,f] of J_level: its full
// layer blocks (bricks with all adjacent overlaps, where the clasp
// excursions of the run live), plus the slab bricks feeding the run (the
// vacated source column rides with the run receiving the crossing).
CellSet piece_cells(const OccupancyTrace& tr, int level, int e, int f) {
  CellSet cells;
  for (int j = e; j <= f; ++j) {
    cells.insert({2 * j - 1, 2 * level});
    cells.insert({2 * (j - 1), 2 * level});
    cells.insert({2 * j, 2 * level});
  }
  if (level == 0) return cells;
  int ce = e, cf = f;
  const int t = tr.letters[static_cast<size_t>(level) - 1];
  const StepCase sc = classify_step(tr.J[static_cast<size_t>(level) - 1], t, tr.n, level - 1);
  if (sc.kind == CaseKind::LeftOnly && t + 1 >= e && t + 1 <= f) ce = std::min(ce, t);
  if (sc.kind == CaseKind::RightOnly && t >= e && t <= f) cf = std::max(cf, t + 1);
  for (int j = ce; j <= cf; ++j) {
    cells.insert({2 * j - 1, 2 * level - 1});
    if (j < cf) cells.insert({2 * j, 2 * level - 1});
  }
  return cells;
}

// ---------------------------------------------------------------------------
// Builder.
// ---------------------------------------------------------------------------

struct Builder {
  const OccupancyTrace& tr;
  int W, H;
  ExcellenceCertificate cert;
  Coverage covered;
  std::map<int, CellSet> region_cells;

  explicit Builder(const OccupancyTrace& trace)
      : tr(trace), W(grid_width(trace.n)), H(grid_height(trace.m)) {}

  int add_node(CertNode node) {
    cert.nodes.push_back(std::move(node));
    return static_cast<int>(cert.nodes.size()) - 1;
  }

  void assign_region(int root, const CellSet& cells) {
    for (Cell c : cells) covered[c] = root;
    region_cells[root].insert(cells.begin(), cells.end());
  }

  void merge_into(int new_root, const std::set<int>& old_roots, const CellSet& extra) {
    CellSet all = extra;
    for (int r : old_roots) {
      auto it = region_cells.find(r);
      all.insert(it->second.begin(), it->second.end());
      region_cells.erase(it);
    }
    assign_region(new_root, all);
  }

  CellSet target_cells(int layer) const {
    CellSet out;
    for (int zc = 0; zc <= 2 * layer; ++zc)
      for (int j : tr.T[static_cast<size_t>(layer)]) {
        out.insert({2 * j - 1, zc});
        out.insert({2 * (j - 1), zc});
        out.insert({2 * j, zc});
      }
    return out;
  }

  CellSet missing_cells(int layer) const {
    CellSet out;
    for (Cell c : target_cells(layer))
      if (!covered.count(c)) out.insert(c);
    return out;
  }

  int add_leaf(int level, int e, int f, const CellSet& cells) {
    CertNode leaf;
    leaf.kind = CertNode::Kind::Leaf;
    leaf.level = level;
    leaf.col_lo = e;
    leaf.col_hi = f;
    leaf.strand_width = arcs_per_column(level, tr.m) * (f - e + 1);
    leaf.cells.assign(cells.begin(), cells.end());
    return add_node(std::move(leaf));
  }

  void base_layer() {
    for (auto [a, b] : runs_of(tr.J[0])) {
      const CellSet cells = piece_cells(tr, 0, a, b);
      assign_region(add_leaf(0, a, b, cells), cells);
    }
    fill_pass(0, nullptr);
  }

  void glue_layer(int level) {
    const auto layer_runs = runs_of(tr.J[static_cast<size_t>(level)]);
    CellSet pending;
    for (auto [e, f] : layer_runs) {
      const CellSet cs = piece_cells(tr, level, e, f);
      pending.insert(cs.begin(), cs.end());
    }
    for (auto [e, f] : layer_runs) {
      const CellSet cells = piece_cells(tr, level, e, f);
      const int leaf_id = add_leaf(level, e, f, cells);

      // Tangle-free lumps wedged between this piece and the regions it is
      // about to be glued to ride along with the attachment; each must sit
      // on the piece along a single disk so the attached manifold is still
      // the exterior of the leaf tangle.
      std::vector<CellSet> folds;
      {
        std::set<int> piece_regions;
        for (const auto& ic : contact_interfaces(tr, cells, covered))
          piece_regions.insert(ic.regions.begin(), ic.regions.end());
        Coverage piece_cover;
        for (Cell c : cells) piece_cover[c] = leaf_id;
        CellSet candidates;
        for (Cell c : missing_cells(level))
          if (!pending.count(c)) candidates.insert(c);
        for (const CellSet& sub : components_of(candidates)) {
          if (!tangle_free(tr, sub) || !polyomino_disk(sub)) continue;
          const auto on_piece = contact_interfaces(tr, sub, piece_cover);
          if (on_piece.size() != 1 || !on_piece.front().disk) continue;
          bool regions_ok = true;
          std::set<int> sub_regions;
          for (Cell c : sub)
            for (Cell nb : neighbors(c)) {
              auto it = covered.find(nb);
              if (it == covered.end()) continue;
              sub_regions.insert(it->second);
              if (!piece_regions.count(it->second)) regions_ok = false;
            }
          // Only lumps wedged between several regions ride along; anything
          // touching at most one region stays a plain ball adjunction.
          if (regions_ok && sub_regions.size() >= 2) folds.push_back(sub);
        }
      }

      while (true) {
        CellSet unit = cells, fold_cells;
        for (const auto& s : folds) {
          unit.insert(s.begin(), s.end());
          fold_cells.insert(s.begin(), s.end());
        }
        const auto ics = contact_interfaces(tr, unit, covered);
        bool retry = false;
        for (const auto& ic : ics) {
          if (ic.punctures >= 2 && ic.disk) continue;
          bool fold_face = false;
          for (const auto& fce : ic.faces) {
            const auto [a, b] = face_cells(fce);
            if (fold_cells.count(a) || fold_cells.count(b)) fold_face = true;
          }
          if (fold_face && !folds.empty()) {
            retry = true;
          } else {
            throw EngulfError(ic.disk ? VerifyError::PunctureDeficit : VerifyError::InterfaceNotDisk,
                              "layer " + std::to_string(level) +
                                  ": gluing interface fails the Euler characteristic check");
          }
        }
        if (retry) {
          folds.pop_back();
          continue;
        }

        std::set<int> region_children;
        for (const auto& ic : ics) region_children.insert(ic.regions.begin(), ic.regions.end());
        if (region_children.empty())
          throw EngulfError(VerifyError::Structure,
                            "layer " + std::to_string(level) + ": piece touches no region");

        CertNode glue;
        glue.kind = CertNode::Kind::Glue;
        glue.children.assign(region_children.begin(), region_children.end());
        glue.children.push_back(leaf_id);
        std::vector<GluingInterface> gis;
        for (const auto& ic : ics) gis.push_back({ic.punctures, ic.disk});
        glue.check = check_gluing(std::move(gis));
        glue.cells.assign(fold_cells.begin(), fold_cells.end());
        const int gid = add_node(std::move(glue));
        merge_into(gid, region_children, unit);
        break;
      }
      // adjoin what this attachment freed up before the next run is glued,
      // so nothing gets walled in between two pieces
      for (Cell c : cells) pending.erase(c);
      fill_pass(level, &pending);
    }
    fill_pass(level, nullptr);
  }

  // Adjoins tangle-free missing lumps meeting exactly one region in one
  // disk; lumps wedged between two regions, or reaching leaves that still
  // wait to be glued, stay put until a later pass.
  void fill_pass(int layer, const CellSet* pending = nullptr) {
    bool progress = true;
    while (progress) {
      progress = false;
      CellSet candidates;
      for (Cell c : missing_cells(layer))
        if (!pending || !pending->count(c)) candidates.insert(c);
      for (const CellSet& comp : components_of(candidates)) {
        if (try_adjoin(comp, false)) progress = true;
      }
    }
  }

  bool try_adjoin(const CellSet& comp, bool final_pass) {
    std::set<int> touched;
    for (Cell c : comp)
      for (Cell nb : neighbors(c)) {
        auto it = covered.find(nb);
        if (it != covered.end()) touched.insert(it->second);
      }
    if (touched.size() != 1) {
      if (final_pass && touched.size() > 1)
        throw EngulfError(VerifyError::Structure, "final pass: regions failed to amalgamate");
      return false;
    }
    if (!tangle_free(tr, comp)) {
      // tangle material belongs to a leaf still waiting to be glued
      if (final_pass)
        throw EngulfError(VerifyError::Structure, "occupied cell left uncovered");
      return false;
    }
    if (!polyomino_disk(comp)) {
      if (final_pass)
        throw EngulfError(VerifyError::NonBallAdjunct, "final pass: adjoined lump is not a ball");
      return false;
    }
    const auto ics = contact_interfaces(tr, comp, covered);
    if (ics.size() != 1 || !ics.front().disk) {
      if (final_pass) {
        std::string cells;
        for (Cell c : comp)
          cells += " (" + std::to_string(c.xc) + "," + std::to_string(c.zc) + ")";
        throw EngulfError(VerifyError::InterfaceNotDisk,
                          "final pass: lump does not meet the region in a single disk:" + cells);
      }
      return false;
    }
    CertNode ball;
    ball.kind = CertNode::Kind::Ball;
    ball.children = {*touched.begin()};
    ball.cells.assign(comp.begin(), comp.end());
    ball.interface_count = 1;
    merge_into(add_node(std::move(ball)), touched, comp);
    return true;
  }

  void final_pass() {
    CellSet whole;
    for (int zc = 0; zc < H; ++zc)
      for (int xc = 0; xc < W; ++xc) whole.insert({xc, zc});
    while (true) {
      CellSet missing;
      for (Cell c : whole)
        if (!covered.count(c)) missing.insert(c);
      if (missing.empty()) break;
      bool progress = false;
      for (const CellSet& comp : components_of(missing))
        if (try_adjoin(comp, true)) progress = true;
      if (!progress) throw EngulfError(VerifyError::Coverage, "final pass: uncovered cells remain");
    }
    if (region_cells.size() != 1)
      throw EngulfError(VerifyError::Structure, "certificate did not end in a single region");
    cert.root = region_cells.begin()->first;
  }
};

}  // namespace

ExcellenceCertificate engulf_verify(const tangle::Subtangle& sub) {
  const OccupancyTrace tr = occupancy_trace(sub);
  Builder b(tr);
  b.cert.n = tr.n;
  b.cert.j0 = sub.columns;
  b.cert.trace = tr;
  for (int i = 0; i < tr.m; ++i)
    b.cert.cases.push_back(
        classify_step(tr.J[static_cast<size_t>(i)], tr.letters[static_cast<size_t>(i)], tr.n, i));
  b.base_layer();
  for (int level = 1; level <= tr.m; ++level) b.glue_layer(level);
  b.final_pass();

  for (int j = 1; j <= tr.n; ++j)
    if (!contains(tr.T.back(), j)) b.cert.untouched_columns.push_back(j);
  if (!b.cert.untouched_columns.empty()) {
    std::string cols;
    for (int j : b.cert.untouched_columns) cols += (cols.empty() ? "" : ", ") + std::to_string(j);
    b.cert.notes.push_back("columns {" + cols +
                           "} are never entered by the subtangle; the final pass adjoins their "
                           "full stacks as ball adjunctions");
  }
  return std::move(b.cert);
}

// ---------------------------------------------------------------------------
// Validation.
// ---------------------------------------------------------------------------

Verdict validate_certificate(const ExcellenceCertificate& cert) {
  Verdict v;
  const auto fail = [&](int node, const std::string& msg) {
    v.passed = false;
    v.failed_node = node;
    v.message = msg;
    return v;
  };
  try {
    if (cert.n < 2 || cert.j0.empty()) return fail(-1, "certificate header is malformed");
    auto theta = std::make_shared<const tangle::ThetaComplex>(tangle::build_theta(cert.n));
    const tangle::Subtangle sub = tangle::select_subtangle(theta, cert.j0);
    const OccupancyTrace tr = occupancy_trace(sub);
    if (tr.J != cert.trace.J || tr.I != cert.trace.I || tr.T != cert.trace.T ||
        tr.S != cert.trace.S || tr.letters != cert.trace.letters)
      return fail(-1, "stored occupancy trace deviates from the case rules");

    std::map<int, CellSet> acc;  // node id -> accumulated region
    Coverage covered;
    std::vector<char> consumed(cert.nodes.size(), 0);
    std::set<int> pending_leaves;
    const int W = grid_width(tr.n), H = grid_height(tr.m);

    for (size_t id = 0; id < cert.nodes.size(); ++id) {
      const CertNode& node = cert.nodes[id];
      const int nid = static_cast<int>(id);
      CellSet own(node.cells.begin(), node.cells.end());
      if (own.size() != node.cells.size()) return fail(nid, "duplicate cells in node");
      for (Cell c : own) {
        if (c.xc < 0 || c.xc >= W || c.zc < 0 || c.zc >= H)
          return fail(nid, "cell outside the box grid");
        if (covered.count(c)) return fail(nid, "cell covered twice");
      }

      switch (node.kind) {
        case CertNode::Kind::Leaf: {
          if (!node.children.empty()) return fail(nid, "leaf with children");
          if (node.level < 0 || node.level > tr.m) return fail(nid, "leaf level out of range");
          const auto rr = runs_of(tr.J[static_cast<size_t>(node.level)]);
          const bool maximal = std::any_of(rr.begin(), rr.end(), [&](auto r) {
            return r.first == node.col_lo && r.second == node.col_hi;
          });
          if (!maximal) return fail(nid, "leaf columns are not a maximal occupied run");
          const int width = arcs_per_column(node.level, tr.m) * (node.col_hi - node.col_lo + 1);
          if (node.strand_width != width || node.strand_width < 2)
            return fail(nid, "leaf strand width is wrong");
          if (own != piece_cells(tr, node.level, node.col_lo, node.col_hi))
            return fail(nid, "leaf cells do not match its level and columns");
          if (node.level == 0) {
            for (Cell c : own) covered[c] = nid;
            acc[nid] = own;
          } else {
            pending_leaves.insert(nid);
          }
          break;
        }
        case CertNode::Kind::Glue: {
          if (!tangle_free(tr, own)) return fail(nid, "glue filler meets the subtangle");
          std::vector<int> leaf_children, region_children;
          for (int ch : node.children) {
            if (ch < 0 || ch >= nid) return fail(nid, "glue child out of order");
            if (consumed[static_cast<size_t>(ch)]) return fail(nid, "node consumed twice");
            consumed[static_cast<size_t>(ch)] = 1;
            if (pending_leaves.count(ch)) {
              pending_leaves.erase(ch);
              leaf_children.push_back(ch);
            } else {
              region_children.push_back(ch);
            }
          }
          if (leaf_children.size() != 1 || region_children.empty())
            return fail(nid, "glue needs one new leaf and at least one region");
          CellSet unit = own;
          for (int ch : leaf_children)
            for (Cell c : cert.nodes[static_cast<size_t>(ch)].cells) {
              if (covered.count(c)) return fail(nid, "leaf cell covered twice");
              unit.insert(c);
            }
          Coverage restricted;
          for (int ch : region_children) {
            auto it = acc.find(ch);
            if (it == acc.end()) return fail(nid, "glue child has no accumulated region");
            for (Cell c : it->second) restricted[c] = ch;
          }
          const auto ics = contact_interfaces(tr, unit, restricted);
          std::vector<GluingInterface> expect;
          for (const auto& ic : ics) expect.push_back({ic.punctures, ic.disk});
          const auto cmp = [](const GluingInterface& a, const GluingInterface& b) {
            return std::pair(a.punctures, a.is_disk_portion) <
                   std::pair(b.punctures, b.is_disk_portion);
          };
          std::vector<GluingInterface> got = node.check.interfaces;
          std::sort(got.begin(), got.end(), cmp);
          std::sort(expect.begin(), expect.end(), cmp);
          if (got.size() != expect.size()) return fail(nid, "glue interface count mismatch");
          for (size_t k = 0; k < got.size(); ++k)
            if (got[k].punctures != expect[k].punctures ||
                got[k].is_disk_portion != expect[k].is_disk_portion)
              return fail(nid, "glue interfaces do not match recount");
          for (const auto& ic : ics) {
            if (!ic.disk) return fail(nid, "glue interface component is not a disk");
            if (ic.punctures < 2) return fail(nid, "glue interface has fewer than two punctures");
          }
          if (!node.check.passed || ics.empty()) return fail(nid, "glue check did not pass");
          std::set<int> touched;
          for (const auto& ic : ics) touched.insert(ic.regions.begin(), ic.regions.end());
          for (int ch : region_children)
            if (!touched.count(ch)) return fail(nid, "glue child region is not touched");
          CellSet total = unit;
          for (int ch : region_children) {
            total.insert(acc[ch].begin(), acc[ch].end());
            acc.erase(ch);
          }
          for (Cell c : unit) covered[c] = nid;
          acc[nid] = std::move(total);
          break;
        }
        case CertNode::Kind::Ball: {
          if (node.children.size() != 1) return fail(nid, "ball adjunction needs one child");
          const int ch = node.children[0];
          if (ch < 0 || ch >= nid || consumed[static_cast<size_t>(ch)])
            return fail(nid, "ball child invalid");
          consumed[static_cast<size_t>(ch)] = 1;
          auto it = acc.find(ch);
          if (it == acc.end()) return fail(nid, "ball child has no region");
          if (node.interface_count != 1)
            return fail(nid, "ball adjunction interface count must be 1");
          if (!tangle_free(tr, own)) return fail(nid, "ball adjunction meets the subtangle");
          if (!polyomino_disk(own) || !boxes_form_tree(own))
            return fail(nid, "ball adjunction is not a tree of blocks");
          Coverage restricted;
          for (Cell c : it->second) restricted[c] = ch;
          const auto ics = contact_interfaces(tr, own, restricted);
          if (ics.size() != 1 || !ics.front().disk)
            return fail(nid, "ball adjunction does not meet the region in a single disk");
          CellSet total = own;
          total.insert(it->second.begin(), it->second.end());
          for (Cell c : own) covered[c] = nid;
          acc.erase(it);
          acc[nid] = std::move(total);
          break;
        }
      }
    }

    if (!pending_leaves.empty()) return fail(*pending_leaves.begin(), "leaf never attached");
    if (cert.root < 0 || cert.root >= static_cast<int>(cert.nodes.size()))
      return fail(-1, "root missing");
    if (acc.size() != 1 || !acc.count(cert.root))
      return fail(cert.root, "root is not the unique region");
    if (static_cast<int>(acc.begin()->second.size()) != W * H)
      return fail(cert.root, "certificate does not cover the whole box");

    std::vector<int> untouched;
    for (int j = 1; j <= tr.n; ++j)
      if (!contains(tr.T.back(), j)) untouched.push_back(j);
    if (untouched != cert.untouched_columns) return fail(-1, "untouched-column record is wrong");

    v.passed = true;
    v.message = "certificate valid";
    return v;
  } catch (const std::exception& e) {
    return fail(-1, std::string("validation error: ") + e.what());
  }
}

}  // namespace ptk::engulf
