#include "tangle.hpp"

#include <algorithm>
#include <map>

namespace ptk::tangle {

Box block_extent(const BlockId& id, int n) {
  const int i = id.level, j = id.column;
  switch (id.kind) {
    case BlockKind::BLayer:
      return {9 * j - 9, 9 * j + 1, 2 * i, 2 * i + 1};
    case BlockKind::CLayer:
      return {9 * j - 9, 9 * j + 1, 2 * i - 1, 2 * i};
    case BlockKind::NOverlap:
      return {9 * j, 9 * j + 1, 2 * i, 2 * i + 1};
    case BlockKind::KOverlap:
      return {9 * j, 9 * j + 1, 2 * i - 1, 2 * i};
    case BlockKind::BBrick:
      return {9 * j - 8, 9 * j, 2 * i, 2 * i + 1};
    case BlockKind::CBrick:
      return {9 * j - 8, 9 * j, 2 * i - 1, 2 * i};
  }
  throw std::invalid_argument("block_extent: bad kind");
  (void)n;
}

void validate_block(const BlockId& id, int n, int m) {
  const int i = id.level, j = id.column;
  const bool c_layer = id.kind == BlockKind::CLayer || id.kind == BlockKind::KOverlap ||
                       id.kind == BlockKind::CBrick;
  const bool overlap = id.kind == BlockKind::NOverlap || id.kind == BlockKind::KOverlap;
  if (c_layer ? (i < 1 || i > m) : (i < 0 || i > m))
    throw std::invalid_argument("block level out of range");
  if (overlap ? (j < 0 || j > n) : (j < 1 || j > n))
    throw std::invalid_argument("block column out of range");
}

LevelKind level_kind(int level, int m) {
  if (level == 0) return LevelKind::Top;
  if (level == m) return LevelKind::Bottom;
  return LevelKind::Middle;
}

std::vector<LevelSegment> level_column_segments(int level, int column, int n, int m) {
  if (level < 0 || level > m) throw std::invalid_argument("level out of range");
  if (column < 1 || column > n) throw std::invalid_argument("column out of range");
  const int top = 2 * level, bot = 2 * level + 1;
  const auto pt = [&](int p, Role r) { return LatticePoint{p, role_slot(column, r)}; };
  std::vector<LevelSegment> segs;
  switch (level_kind(level, m)) {
    case LevelKind::Top:
      segs.push_back({level, column, SegmentKind::Alpha, pt(top, Role::A), pt(bot, Role::A)});
      segs.push_back({level, column, SegmentKind::Gamma, pt(bot, Role::B), pt(bot, Role::C)});
      break;
    case LevelKind::Middle:
      segs.push_back({level, column, SegmentKind::Delta, pt(top, Role::A), pt(top, Role::B)});
      segs.push_back({level, column, SegmentKind::Alpha, pt(top, Role::C), pt(bot, Role::A)});
      segs.push_back({level, column, SegmentKind::Gamma, pt(bot, Role::B), pt(bot, Role::C)});
      break;
    case LevelKind::Bottom:
      segs.push_back({level, column, SegmentKind::Delta, pt(top, Role::A), pt(top, Role::B)});
      segs.push_back({level, column, SegmentKind::Alpha, pt(top, Role::C), pt(bot, Role::C)});
      break;
  }
  return segs;
}

namespace {

LevelSegment column_segment(int level, int column, SegmentKind kind, int n, int m) {
  for (const auto& s : level_column_segments(level, column, n, m))
    if (s.kind == kind) return s;
  throw std::logic_error("segment kind absent at this level");
}

}  // namespace

ThetaComplex build_theta(int n) {
  if (n < 2) throw std::invalid_argument("build_theta: need n >= 2");
  ThetaComplex theta;
  theta.n = n;
  theta.m = braid::half_twist_length(n);
  theta.braids = braid::half_twist_sequence(n);

  theta.phi.assign(static_cast<size_t>(theta.m) + 1, std::vector<int>(static_cast<size_t>(n)));
  for (int j = 1; j <= n; ++j) theta.phi[0][static_cast<size_t>(j) - 1] = j;
  for (int i = 0; i < theta.m; ++i) {
    const int t = theta.braids.letters[static_cast<size_t>(i)];
    for (int j = 1; j <= n; ++j) {
      int c = theta.phi[static_cast<size_t>(i)][static_cast<size_t>(j) - 1];
      if (c == t) c = t + 1;
      else if (c == t + 1) c = t;
      theta.phi[static_cast<size_t>(i) + 1][static_cast<size_t>(j) - 1] = c;
    }
  }

  const int m = theta.m;
  theta.components.resize(static_cast<size_t>(n));
  for (int j = 1; j <= n; ++j) {
    auto& chain = theta.components[static_cast<size_t>(j) - 1];
    int col = j;
    chain.push_back({ChainElement::Type::Level, column_segment(0, col, SegmentKind::Alpha, n, m), {}});
    for (int i = 0; i < m; ++i) {
      const int next_col = theta.phi_at(i + 1, j);
      const auto strand = [&](Role r, bool down) {
        ChainElement e;
        e.type = ChainElement::Type::Braid;
        e.braid_traverse = {i + 1, r, down, col, next_col};
        return e;
      };
      chain.push_back(strand(Role::A, true));
      chain.push_back({ChainElement::Type::Level, column_segment(i + 1, next_col, SegmentKind::Delta, n, m), {}});
      chain.push_back(strand(Role::B, false));
      chain.push_back({ChainElement::Type::Level, column_segment(i, col, SegmentKind::Gamma, n, m), {}});
      chain.push_back(strand(Role::C, true));
      chain.push_back({ChainElement::Type::Level, column_segment(i + 1, next_col, SegmentKind::Alpha, n, m), {}});
      col = next_col;
    }
  }
  return theta;
}

std::vector<std::vector<int>> phi_table(const ThetaComplex& theta) { return theta.phi; }

Subtangle select_subtangle(std::shared_ptr<const ThetaComplex> theta, std::vector<int> j0) {
  if (!theta) throw std::invalid_argument("select_subtangle: null complex");
  if (j0.empty()) throw std::invalid_argument("select_subtangle: empty component set");
  std::sort(j0.begin(), j0.end());
  j0.erase(std::unique(j0.begin(), j0.end()), j0.end());
  for (int j : j0)
    if (j < 1 || j > theta->n) throw std::invalid_argument("select_subtangle: component out of range");
  return Subtangle{std::move(theta), std::move(j0)};
}

int adjacency_witness(const ThetaComplex& theta, int j, int jp) {
  if (!(1 <= j && j < jp && jp <= theta.n))
    throw std::invalid_argument("adjacency_witness: need 1 <= j < j' <= n");
  for (int i = 0; i <= theta.m; ++i)
    if (theta.phi_at(i, jp) == theta.phi_at(i, j) + 1) return i;
  throw std::logic_error("adjacency_witness: no witness level (construction violated)");
}

int disk_incidence(const ThetaComplex& theta, int j, int p) {
  if (j < 1 || j > theta.n) throw std::invalid_argument("disk_incidence: component out of range");
  if (p < 0 || p > theta.height()) throw std::invalid_argument("disk_incidence: height out of range");
  std::set<std::pair<int, int>> pts;
  for (const auto& e : theta.components[static_cast<size_t>(j) - 1]) {
    if (e.type != ChainElement::Type::Level) continue;
    for (const auto& q : {e.level_segment.from, e.level_segment.to})
      if (q.p == p) pts.insert({q.p, q.q});
  }
  return static_cast<int>(pts.size());
}

LatticePoint component_start(const ThetaComplex& theta, int j) {
  return LatticePoint{0, role_slot(theta.phi_at(0, j), Role::A)};
}

LatticePoint component_end(const ThetaComplex& theta, int j) {
  return LatticePoint{theta.height(), role_slot(theta.phi_at(theta.m, j), Role::C)};
}

// ---------------------------------------------------------------------------
// Quotient wirings.
// ---------------------------------------------------------------------------

QuotientTangle wire_solid_torus(GroupScheme scheme, int nu) {
  if (nu < 1) throw std::invalid_argument("wire_solid_torus: need nu >= 1");
  QuotientTangle qt;
  qt.scheme = scheme;
  qt.nu = nu;
  int mark = 0;
  const auto ep = [&](EndSite site, int disk) {
    ArcEndpoint e;
    e.site = site;
    e.disk_index = disk;
    e.mark = (site == EndSite::Wall) ? 0 : ++mark;
    return e;
  };
  if (scheme == GroupScheme::ThreeGroup) {
    for (int j = 1; j <= nu; ++j) {
      ArcEndpoint beta_g1 = ep(EndSite::G1, 0);
      ArcEndpoint gamma_g1 = ep(EndSite::G1, 0);
      ArcEndpoint delta_a = ep(EndSite::G2, 0);
      ArcEndpoint delta_b = ep(EndSite::G2, 0);
      qt.arcs.push_back({ArcGroup::Beta, j, beta_g1, ep(EndSite::Wall, 0)});
      qt.arcs.push_back({ArcGroup::Gamma, j, gamma_g1, ep(EndSite::Wall, 0)});
      qt.arcs.push_back({ArcGroup::Delta, j, delta_a, delta_b});
      qt.identification.push_back({beta_g1.mark, delta_a.mark});
      qt.identification.push_back({gamma_g1.mark, delta_b.mark});
    }
  } else {
    qt.torus_labels.assign(static_cast<size_t>(nu), std::nullopt);
    for (int j = 1; j <= nu; ++j) {
      ArcEndpoint beta_d1 = ep(EndSite::D1, j);
      ArcEndpoint gamma_a = ep(EndSite::D2, j);
      ArcEndpoint gamma_b = ep(EndSite::D2, j);
      ArcEndpoint delta_d1 = ep(EndSite::D1, j);
      ArcEndpoint delta_h1 = ep(EndSite::H1, 0);
      ArcEndpoint omega_h2 = ep(EndSite::H2, 0);
      qt.arcs.push_back({ArcGroup::Beta, j, ep(EndSite::Wall, 0), beta_d1});
      qt.arcs.push_back({ArcGroup::Gamma, j, gamma_a, gamma_b});
      qt.arcs.push_back({ArcGroup::Delta, j, delta_d1, delta_h1});
      qt.arcs.push_back({ArcGroup::Omega, j, omega_h2, ep(EndSite::Wall, 0)});
      qt.identification.push_back({beta_d1.mark, gamma_a.mark});
      qt.identification.push_back({delta_d1.mark, gamma_b.mark});
      qt.identification.push_back({delta_h1.mark, omega_h2.mark});
    }
  }
  validate_quotient(qt);
  return qt;
}

QuotientTangle insert_knot_spaces(const QuotientTangle& qt, const std::vector<std::string>& labels) {
  if (qt.scheme != GroupScheme::FourGroup)
    throw std::invalid_argument("insert_knot_spaces: companion tori need the four-group scheme");
  if (static_cast<int>(labels.size()) != qt.nu)
    throw std::invalid_argument("insert_knot_spaces: expected one label per companion torus");
  QuotientTangle out = qt;
  out.torus_labels.clear();
  for (const auto& l : labels) out.torus_labels.push_back(l);
  return out;
}

int meridian_crossings(const QuotientTangle& qt, int j) {
  if (j < 1 || j > qt.nu) throw std::invalid_argument("meridian_crossings: index out of range");
  // Each identified mark pair of rho_j is one crossing of the meridian disk.
  std::set<int> marks;
  for (const auto& a : qt.arcs)
    if (a.index == j)
      for (const auto& e : {a.end0, a.end1})
        if (e.mark != 0) marks.insert(e.mark);
  int crossings = 0;
  for (const auto& [u, v] : qt.identification)
    if (marks.count(u) && marks.count(v)) ++crossings;
  return crossings;
}

std::vector<std::pair<int, bool>> splitting_surface(const QuotientTangle& qt,
                                                    const std::vector<int>& subset) {
  if (subset.empty()) throw std::invalid_argument("splitting_surface: empty subset");
  std::set<int> chosen(subset.begin(), subset.end());
  for (int j : chosen)
    if (j < 1 || j > qt.nu) throw std::invalid_argument("splitting_surface: index out of range");
  const int k = static_cast<int>(chosen.size());
  std::vector<std::pair<int, bool>> components;
  if (qt.scheme == GroupScheme::ThreeGroup) {
    components.push_back({2 * k, true});
  } else {
    for (int i = 0; i < k; ++i) components.push_back({2, true});
    components.push_back({2 * k, true});
  }
  return components;
}

void validate_quotient(const QuotientTangle& qt) {
  if (qt.nu < 1) throw std::invalid_argument("quotient wiring: nu < 1");
  const size_t per = qt.scheme == GroupScheme::ThreeGroup ? 3u : 4u;
  if (qt.arcs.size() != per * static_cast<size_t>(qt.nu))
    throw std::invalid_argument("quotient wiring: wrong arc count");

  std::map<int, int> mark_use;
  for (const auto& a : qt.arcs)
    for (const auto& e : {a.end0, a.end1}) {
      if ((e.site == EndSite::D1 || e.site == EndSite::D2) &&
          (e.disk_index < 1 || e.disk_index > qt.nu))
        throw std::invalid_argument("quotient wiring: disk index out of range");
      if ((e.site == EndSite::D1 || e.site == EndSite::D2) && e.disk_index != a.index)
        throw std::invalid_argument("quotient wiring: arc touches a foreign companion disk");
      if (e.mark != 0) ++mark_use[e.mark];
    }
  for (const auto& [mark, uses] : mark_use)
    if (uses != 1) throw std::invalid_argument("quotient wiring: duplicate endpoint mark");

  std::set<int> identified;
  for (const auto& [u, v] : qt.identification) {
    if (!mark_use.count(u) || !mark_use.count(v))
      throw std::invalid_argument("quotient wiring: identification names unknown mark");
    if (!identified.insert(u).second || !identified.insert(v).second)
      throw std::invalid_argument("quotient wiring: identification is not a bijection");
  }
  if (identified.size() != mark_use.size())
    throw std::invalid_argument("quotient wiring: unmatched marked endpoint");

  const int expected = qt.scheme == GroupScheme::ThreeGroup ? 2 : 3;
  for (int j = 1; j <= qt.nu; ++j)
    if (meridian_crossings(qt, j) != expected)
      throw std::invalid_argument("quotient wiring: wrong meridian crossing count");

  if (qt.scheme == GroupScheme::FourGroup &&
      !qt.torus_labels.empty() && static_cast<int>(qt.torus_labels.size()) != qt.nu)
    throw std::invalid_argument("quotient wiring: label slot count mismatch");
}

}  // namespace ptk::tangle
