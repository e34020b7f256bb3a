#include "geometry.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>

namespace ptk::geom {

// ---------------------------------------------------------------------------
// Rationals.
// ---------------------------------------------------------------------------

Rat::Rat(Int n, Int d) : num(std::move(n)), den(std::move(d)) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const Int g = boost::multiprecision::gcd(num < 0 ? Int(-num) : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Rat Rat::operator+(const Rat& o) const { return {num * o.den + o.num * den, den * o.den}; }
Rat Rat::operator-(const Rat& o) const { return {num * o.den - o.num * den, den * o.den}; }
Rat Rat::operator*(const Rat& o) const { return {num * o.num, den * o.den}; }
Rat Rat::operator/(const Rat& o) const {
  if (o.num == 0) throw std::invalid_argument("rational division by zero");
  return {num * o.den, den * o.num};
}

double Rat::to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

std::string Rat::str() const {
  std::string s = num.str();
  if (den != 1) s += "/" + den.str();
  return s;
}

Rat rat_of(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return {Int(text), 1};
  return {Int(text.substr(0, slash)), Int(text.substr(slash + 1))};
}

void validate_polyline(const Polyline3& p) {
  if (p.vertices.size() < 2) throw std::invalid_argument("polyline needs at least two vertices");
  for (size_t i = 0; i + 1 < p.vertices.size(); ++i)
    if (p.vertices[i] == p.vertices[i + 1])
      throw std::invalid_argument("polyline has coincident consecutive vertices");
}

// ---------------------------------------------------------------------------
// Arc templates.
//
// Everything lives in block-local coordinates: x in tenths from the block's
// left wall, z in 1/400ths of the layer height, y in quarters.  Slot lanes
// sit at 20/50/80 (the lattice points).  Each arc passes through one
// knotted-arc box (three alternating self-crossings in the y-projection);
// clasp fingers hook the consecutive neighbour, reaching into the shared
// overlap but never past it: the left member of a pair pokes rightward at
// heights 344..368 and the right member presents a receiving lane at x=5,
// so a pair crosses twice exactly when both arcs are present.
// ---------------------------------------------------------------------------

namespace {

struct TV {
  int x, z, y;  // tenths, 1/400, quarters
};

// knotted-arc box, entry on top at x0+20, exit left at (x0+4, z0+5h/8)
std::vector<TV> box_verts(int x0, int z0, int h) {
  const auto zz = [&](int num8) { return z0 + h * num8 / 8; };  // frame z in eighths of 4
  return {
      {x0 + 20, z0, 0},       {x0 + 20, z0 + h, 0},   {x0 + 8, z0 + h, 2},
      {x0 + 8, zz(2), -2},    {x0 + 28, zz(2), -2},   {x0 + 28, zz(5), 2},
      {x0 + 4, zz(5), -2},
  };
}

std::vector<TV> reversed(std::vector<TV> v) {
  std::reverse(v.begin(), v.end());
  return v;
}

void append(std::vector<TV>& out, const std::vector<TV>& piece) {
  for (const auto& v : piece)
    if (out.empty() || out.back().x != v.x || out.back().z != v.z || out.back().y != v.y)
      out.push_back(v);
}

// delta: a -> b along the receiving lane (x=5), the hooked up-leg (x=9) and
// the knot box ending at the b slot
std::vector<TV> delta_template() {
  std::vector<TV> v{{20, 0, 0}, {20, 12, 0}, {5, 20, 0}, {5, 384, 0}, {9, 384, 0}, {9, 38, 0}};
  append(v, reversed(box_verts(30, 8, 48)));
  append(v, {{50, 8, 0}, {50, 0, 0}});
  return v;
}

// the clasp finger toward the same column's delta up-leg
void append_left_clasp(std::vector<TV>& v) {
  append(v, {{80, 64, 0}, {7, 64, 2}, {7, 96, -2}, {80, 96, 0}});
}

// the clasp finger toward the next column's receiving lane
void append_right_clasp(std::vector<TV>& v) {
  append(v, {{80, 344, 0}, {98, 344, 2}, {98, 368, -2}, {80, 368, 0}});
}

std::vector<TV> alpha_template(tangle::LevelKind kind, bool right_clasp) {
  std::vector<TV> v;
  switch (kind) {
    case tangle::LevelKind::Top:
      v = {{20, 0, 0}, {20, 112, 0}, {80, 120, 0}};
      append(v, box_verts(60, 120, 64));
      append(v, {{59, 160, -1}, {32, 188, 0}, {32, 340, 0}, {5, 340, 0}, {5, 376, 0},
                 {20, 388, 0}, {20, 400, 0}});
      break;
    case tangle::LevelKind::Middle:
      v = {{80, 0, 0}};
      append_left_clasp(v);
      append(v, box_verts(60, 120, 64));
      append(v, {{59, 160, -1}, {32, 188, 0}, {32, 392, 0}, {20, 392, 0}, {20, 400, 0}});
      break;
    case tangle::LevelKind::Bottom:
      v = {{80, 0, 0}};
      append_left_clasp(v);
      append(v, box_verts(60, 120, 64));
      append(v, {{59, 164, -1}, {59, 200, 0}, {80, 208, 0}});
      if (right_clasp) append_right_clasp(v);
      append(v, {{80, 400, 0}});
      break;
  }
  return v;
}

std::vector<TV> gamma_template(bool right_clasp) {
  std::vector<TV> v{{50, 400, 0}, {50, 328, 0}, {28, 328, 2}, {28, 304, -2}, {50, 304, 0},
                    {50, 259, -2}};
  append(v, reversed(box_verts(46, 224, 56)));
  append(v, {{80, 216, 0}});
  if (right_clasp) append_right_clasp(v);
  append(v, {{80, 400, 0}});
  return v;
}

Vec3 to_global(const TV& v, int column, int level) {
  return Vec3{Rat(Int(90 * (column - 1) + v.x), Int(10)), Rat(Int(v.y), Int(4)),
              Rat(Int(800 * level + v.z), Int(400))};
}

std::vector<Vec3> level_segment_polyline(const tangle::LevelSegment& seg, int n, int m) {
  std::vector<TV> tv;
  const bool right_clasp = seg.column < n;
  switch (seg.kind) {
    case tangle::SegmentKind::Delta:
      tv = delta_template();
      break;
    case tangle::SegmentKind::Alpha:
      tv = alpha_template(tangle::level_kind(seg.level, m),
                          tangle::level_kind(seg.level, m) == tangle::LevelKind::Bottom &&
                              right_clasp);
      break;
    case tangle::SegmentKind::Gamma:
      tv = gamma_template(right_clasp);
      break;
  }
  std::vector<Vec3> out;
  out.reserve(tv.size());
  for (const auto& v : tv) out.push_back(to_global(v, seg.column, seg.level));
  return out;
}

// Strand geometry through one braid slab: one band per letter, with the
// front strand bumped to y=+1/2 and the back strand to y=-1/2.
std::vector<Vec3> strand_polyline(const std::vector<braid::BraidLetter>& letters, int start_slot,
                                  const Rat& z_top, const Rat& z_bottom) {
  const auto slot_x = [](int q) { return Rat(Int(30 * q - 10), Int(10)); };
  const Rat height = z_bottom - z_top;
  const Rat bands =
      Rat(Int(static_cast<long long>(letters.empty() ? 1 : letters.size())), Int(1));
  std::vector<Vec3> out{{slot_x(start_slot), Rat(0), z_top}};
  int pos = start_slot;
  for (size_t k = 0; k < letters.size(); ++k) {
    const int a = letters[k].index;
    const Rat z0 = z_top + height * Rat(Int(static_cast<long long>(k)), Int(1)) / bands;
    const Rat z1 = z_top + height * Rat(Int(static_cast<long long>(k + 1)), Int(1)) / bands;
    const Rat zm = (z0 + z1) / Rat(2);
    int next = pos;
    int bump = 0;
    if (pos == a) {
      next = a + 1;
      bump = 1;  // the strand crossing in front
    } else if (pos == a + 1) {
      next = a;
      bump = -1;
    }
    if (bump != 0) {
      const Rat xm = (slot_x(pos) + slot_x(next)) / Rat(2);
      out.push_back({xm, Rat(Int(bump), Int(2)), zm});
    }
    out.push_back({slot_x(next), Rat(0), z1});
    pos = next;
  }
  return out;
}

std::vector<Vec3> cleaned(std::vector<Vec3> pts) {
  // drop repeated and collinear interior vertices
  std::vector<Vec3> out;
  for (const auto& p : pts) {
    if (!out.empty() && out.back() == p) continue;
    while (out.size() >= 2) {
      const Vec3 &a = out[out.size() - 2], &b = out.back();
      const Vec3 u{b.x - a.x, b.y - a.y, b.z - a.z};
      const Vec3 w{p.x - b.x, p.y - b.y, p.z - b.z};
      const bool parallel = (u.y * w.z == u.z * w.y) && (u.z * w.x == u.x * w.z) &&
                            (u.x * w.y == u.y * w.x);
      const bool same_dir = parallel && (u.x * w.x + u.y * w.y + u.z * w.z).sign() > 0;
      if (same_dir) out.pop_back();
      else break;
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace

std::vector<Polyline3> realize(const tangle::ThetaComplex& theta) {
  auto shared = std::make_shared<tangle::ThetaComplex>(theta);
  std::vector<int> all(static_cast<size_t>(theta.n));
  for (int j = 1; j <= theta.n; ++j) all[static_cast<size_t>(j) - 1] = j;
  return realize(tangle::Subtangle{shared, all});
}

std::vector<Polyline3> realize(const tangle::Subtangle& sub) {
  const auto& theta = *sub.parent;
  std::vector<Polyline3> out;
  for (int j : sub.columns) {
    std::vector<Vec3> pts;
    for (const auto& e : theta.components[static_cast<size_t>(j) - 1]) {
      std::vector<Vec3> piece;
      if (e.type == tangle::ChainElement::Type::Level) {
        piece = level_segment_polyline(e.level_segment, theta.n, theta.m);
      } else {
        const auto& bt = e.braid_traverse;
        const int t = theta.braids.letters[static_cast<size_t>(bt.step) - 1];
        const auto word = braid::expand_group_letter(t, theta.n);
        const int top_slot = tangle::role_slot(bt.from_column, bt.role);
        piece = strand_polyline(word.letters, top_slot, Rat(2 * bt.step - 1), Rat(2 * bt.step));
        if (!bt.downward) std::reverse(piece.begin(), piece.end());
      }
      if (!pts.empty() && pts.back() == piece.front()) piece.erase(piece.begin());
      else if (!pts.empty())
        throw std::logic_error("chain elements do not meet at a shared lattice point");
      pts.insert(pts.end(), piece.begin(), piece.end());
    }
    Polyline3 line;
    line.vertices = cleaned(std::move(pts));
    validate_polyline(line);
    out.push_back(std::move(line));
  }
  return out;
}

std::vector<Polyline3> realize_braid(const braid::BraidWord& word) {
  std::vector<Polyline3> out;
  for (int q = 1; q <= word.strand_count; ++q) {
    Polyline3 line;
    line.vertices = cleaned(strand_polyline(
        word.letters, q, Rat(0), Rat(Int(std::max<size_t>(word.letters.size(), 1)), Int(1))));
    out.push_back(std::move(line));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exact clearance.
// ---------------------------------------------------------------------------

namespace {

Rat dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

Vec3 sub3(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }

Rat clamp01(const Rat& v) {
  if (v.sign() < 0) return Rat(0);
  if (Rat(1) < v) return Rat(1);
  return v;
}

// squared distance between segments [p1,q1] and [p2,q2] (Ericson's method)
Rat segment_distance2(const Vec3& p1, const Vec3& q1, const Vec3& p2, const Vec3& q2) {
  const Vec3 d1 = sub3(q1, p1), d2 = sub3(q2, p2), r = sub3(p1, p2);
  const Rat a = dot(d1, d1), e = dot(d2, d2), f = dot(d2, r);
  Rat s(0), t(0);
  if (a.sign() == 0 && e.sign() == 0) {
    // both degenerate to points
  } else if (a.sign() == 0) {
    t = clamp01(f / e);
  } else {
    const Rat c = dot(d1, r);
    if (e.sign() == 0) {
      s = clamp01(-c / a);
    } else {
      const Rat b = dot(d1, d2);
      const Rat denom = a * e - b * b;
      if (denom.sign() != 0) s = clamp01((b * f - c * e) / denom);
      t = (b * s + f) / e;
      if (t.sign() < 0) {
        t = Rat(0);
        s = clamp01(-c / a);
      } else if (Rat(1) < t) {
        t = Rat(1);
        s = clamp01((b - c) / a);
      }
    }
  }
  const Vec3 c1{p1.x + d1.x * s, p1.y + d1.y * s, p1.z + d1.z * s};
  const Vec3 c2{p2.x + d2.x * t, p2.y + d2.y * t, p2.z + d2.z * t};
  const Vec3 g = sub3(c1, c2);
  return dot(g, g);
}

struct SegBox {
  double xlo, xhi, ylo, yhi, zlo, zhi;
};

SegBox seg_box(const Vec3& a, const Vec3& b) {
  const auto lo = [](const Rat& u, const Rat& v) { return std::min(u.to_double(), v.to_double()); };
  const auto hi = [](const Rat& u, const Rat& v) { return std::max(u.to_double(), v.to_double()); };
  return {lo(a.x, b.x), hi(a.x, b.x), lo(a.y, b.y), hi(a.y, b.y), lo(a.z, b.z), hi(a.z, b.z)};
}

bool boxes_near(const SegBox& a, const SegBox& b) {
  const double eps = 1e-6;
  return a.xlo <= b.xhi + eps && b.xlo <= a.xhi + eps && a.ylo <= b.yhi + eps &&
         b.ylo <= a.yhi + eps && a.zlo <= b.zhi + eps && b.zlo <= a.zhi + eps;
}

}  // namespace

ClearanceReport check_disjoint(const std::vector<Polyline3>& lines) {
  ClearanceReport rep;
  std::vector<std::vector<SegBox>> boxes(lines.size());
  for (size_t i = 0; i < lines.size(); ++i)
    for (size_t s = 0; s + 1 < lines[i].vertices.size(); ++s)
      boxes[i].push_back(seg_box(lines[i].vertices[s], lines[i].vertices[s + 1]));
  for (size_t i = 0; i < lines.size(); ++i)
    for (size_t j = i + 1; j < lines.size(); ++j)
      for (size_t s = 0; s + 1 < lines[i].vertices.size(); ++s)
        for (size_t t = 0; t + 1 < lines[j].vertices.size(); ++t) {
          if (!boxes_near(boxes[i][s], boxes[j][t])) continue;
          const Rat d2 = segment_distance2(lines[i].vertices[s], lines[i].vertices[s + 1],
                                           lines[j].vertices[t], lines[j].vertices[t + 1]);
          if (d2.sign() <= 0) {
            rep.disjoint = false;
            rep.component_a = static_cast<int>(i);
            rep.component_b = static_cast<int>(j);
            return rep;
          }
        }
  rep.disjoint = true;
  return rep;
}

// ---------------------------------------------------------------------------
// Projection.
// ---------------------------------------------------------------------------

namespace {

struct Pt2 {
  Rat x, z;
};

Pt2 shear_pt(const Vec3& v, int s) {
  return {v.x + v.y * Rat(Int(s), Int(1024)), v.z};
}

// segment intersection in the plane; returns parameters when the crossing is
// transversal and interior, flags degeneracy otherwise
enum class Meet { None, Proper, Degenerate };

Meet meet_segments(const Pt2& a0, const Pt2& a1, const Pt2& b0, const Pt2& b1, Rat& s, Rat& t,
                   bool adjacent_ok) {
  const Rat dax = a1.x - a0.x, daz = a1.z - a0.z;
  const Rat dbx = b1.x - b0.x, dbz = b1.z - b0.z;
  const Rat denom = dax * dbz - daz * dbx;
  const Rat rx = b0.x - a0.x, rz = b0.z - a0.z;
  if (denom.sign() == 0) {
    // parallel: degenerate only when collinear with positive overlap
    const Rat cr = rx * daz - rz * dax;
    if (cr.sign() != 0) return Meet::None;
    // collinear: compare parameter intervals along the dominant axis
    const Rat len2 = dax * dax + daz * daz;
    if (len2.sign() == 0) return Meet::None;
    const Rat t0 = (rx * dax + rz * daz) / len2;
    const Rat t1 = ((b1.x - a0.x) * dax + (b1.z - a0.z) * daz) / len2;
    const Rat lo = t0 < t1 ? t0 : t1, hi = t0 < t1 ? t1 : t0;
    if (hi.sign() <= 0 || Rat(1) <= lo) {
      if ((hi == Rat(0) || lo == Rat(1)) && !adjacent_ok) return Meet::Degenerate;
      return Meet::None;
    }
    return Meet::Degenerate;
  }
  s = (rx * dbz - rz * dbx) / denom;
  t = (rx * daz - rz * dax) / denom;
  if (s.sign() < 0 || Rat(1) < s || t.sign() < 0 || Rat(1) < t) return Meet::None;
  const bool s_interior = s.sign() > 0 && s < Rat(1);
  const bool t_interior = t.sign() > 0 && t < Rat(1);
  if (s_interior && t_interior) return Meet::Proper;
  return adjacent_ok ? Meet::None : Meet::Degenerate;
}

}  // namespace

DiagramProjection project(const std::vector<Polyline3>& lines) {
  for (const auto& l : lines) validate_polyline(l);
  for (int shear = 0; shear <= 3; ++shear) {
    DiagramProjection d;
    d.shear_applied = shear;
    d.lines = lines;
    bool degenerate = false;
    std::vector<Crossing> crossings;

    for (size_t i = 0; i < lines.size() && !degenerate; ++i)
      for (size_t j = i; j < lines.size() && !degenerate; ++j)
        for (size_t s = 0; s + 1 < lines[i].vertices.size() && !degenerate; ++s) {
          const size_t t_begin = i == j ? s + 1 : 0;
          for (size_t t = t_begin; t + 1 < lines[j].vertices.size() && !degenerate; ++t) {
            const bool consecutive = i == j && t == s + 1;
            const bool endpoints_shared = consecutive;
            const Pt2 a0 = shear_pt(lines[i].vertices[s], shear);
            const Pt2 a1 = shear_pt(lines[i].vertices[s + 1], shear);
            const Pt2 b0 = shear_pt(lines[j].vertices[t], shear);
            const Pt2 b1 = shear_pt(lines[j].vertices[t + 1], shear);
            Rat ps, pt;
            switch (meet_segments(a0, a1, b0, b1, ps, pt, endpoints_shared)) {
              case Meet::None:
                break;
              case Meet::Degenerate:
                degenerate = true;
                break;
              case Meet::Proper: {
                const auto ya = lines[i].vertices[s].y +
                                (lines[i].vertices[s + 1].y - lines[i].vertices[s].y) * ps;
                const auto yb = lines[j].vertices[t].y +
                                (lines[j].vertices[t + 1].y - lines[j].vertices[t].y) * pt;
                if (ya == yb) {
                  degenerate = true;
                  break;
                }
                Crossing c;
                c.x = a0.x + (a1.x - a0.x) * ps;
                c.z = a0.z + (a1.z - a0.z) * ps;
                const bool a_over = yb < ya;  // larger y is in front
                c.over_component = static_cast<int>(a_over ? i : j);
                c.under_component = static_cast<int>(a_over ? j : i);
                c.over_segment = static_cast<int>(a_over ? s : t);
                c.under_segment = static_cast<int>(a_over ? t : s);
                c.over_param = a_over ? ps : pt;
                c.under_param = a_over ? pt : ps;
                const Rat dox = a_over ? a1.x - a0.x : b1.x - b0.x;
                const Rat doz = a_over ? a1.z - a0.z : b1.z - b0.z;
                const Rat dux = a_over ? b1.x - b0.x : a1.x - a0.x;
                const Rat duz = a_over ? b1.z - b0.z : a1.z - a0.z;
                c.sign = (dox * duz - doz * dux).sign() >= 0 ? +1 : -1;
                crossings.push_back(std::move(c));
                break;
              }
            }
          }
        }
    if (!degenerate) {
      d.crossings = std::move(crossings);
      return d;
    }
  }
  throw std::runtime_error("projection stayed degenerate after the maximum shear");
}

// ---------------------------------------------------------------------------
// Diagram codes.
// ---------------------------------------------------------------------------

namespace {

struct Pass {
  int crossing;  // index into projection crossings
  bool over;
  int segment;
  Rat param;
};

std::vector<std::vector<Pass>> passes_by_component(const DiagramProjection& d) {
  std::vector<std::vector<Pass>> passes(d.lines.size());
  for (size_t c = 0; c < d.crossings.size(); ++c) {
    const auto& x = d.crossings[c];
    passes[static_cast<size_t>(x.over_component)].push_back(
        {static_cast<int>(c), true, x.over_segment, x.over_param});
    passes[static_cast<size_t>(x.under_component)].push_back(
        {static_cast<int>(c), false, x.under_segment, x.under_param});
  }
  for (auto& list : passes)
    std::sort(list.begin(), list.end(), [](const Pass& a, const Pass& b) {
      return a.segment != b.segment ? a.segment < b.segment : a.param < b.param;
    });
  return passes;
}

struct End {
  int arc;
  Rat dx, dz;  // outward direction in the plane
};

// counterclockwise order around the crossing, starting from a chosen end
std::vector<int> ccw_from(const std::vector<End>& ends, size_t first) {
  const auto half = [](const End& e) { return e.dz.sign() < 0 || (e.dz.sign() == 0 && e.dx.sign() > 0) ? 0 : 1; };
  std::vector<size_t> order{0, 1, 2, 3};
  const auto angle_less = [&](size_t a, size_t b) {
    if (a == b) return false;
    const int ha = half(ends[a]), hb = half(ends[b]);
    if (ha != hb) return ha < hb;
    const Rat cr = ends[a].dx * ends[b].dz - ends[a].dz * ends[b].dx;
    return cr.sign() > 0;
  };
  std::sort(order.begin(), order.end(), angle_less);
  size_t at = std::find(order.begin(), order.end(), first) - order.begin();
  std::vector<int> out;
  for (size_t k = 0; k < 4; ++k) out.push_back(ends[order[(at + k) % 4]].arc);
  return out;
}

}  // namespace

DiagramCode encode_diagram(const DiagramProjection& d) {
  DiagramCode code;
  code.components = static_cast<int>(d.lines.size());
  code.crossings = static_cast<int>(d.crossings.size());
  const auto passes = passes_by_component(d);

  // arc labels per component: arc k lies between consecutive passes
  int next_arc = 1;
  std::vector<std::vector<int>> arc_ids(d.lines.size());
  for (size_t c = 0; c < d.lines.size(); ++c) {
    arc_ids[c].resize(passes[c].size() + 1);
    for (auto& a : arc_ids[c]) a = next_arc++;
    code.open_ends.push_back({static_cast<int>(c), arc_ids[c].front()});
    code.open_ends.push_back({static_cast<int>(c), arc_ids[c].back()});
  }

  struct Incidence {
    int in_arc = 0, out_arc = 0;
    Rat in_dx, in_dz, out_dx, out_dz;
    bool seen = false;
  };
  std::vector<Incidence> under(d.crossings.size()), over(d.crossings.size());
  for (size_t c = 0; c < d.lines.size(); ++c)
    for (size_t k = 0; k < passes[c].size(); ++k) {
      const Pass& p = passes[c][k];
      const auto& v = d.lines[c].vertices;
      const auto sh = [&](const Vec3& q) { return shear_pt(q, d.shear_applied); };
      const Pt2 p0 = sh(v[static_cast<size_t>(p.segment)]);
      const Pt2 p1 = sh(v[static_cast<size_t>(p.segment) + 1]);
      Incidence& inc = p.over ? over[static_cast<size_t>(p.crossing)]
                              : under[static_cast<size_t>(p.crossing)];
      inc.in_arc = arc_ids[c][k];
      inc.out_arc = arc_ids[c][k + 1];
      inc.in_dx = p0.x - p1.x;  // pointing back along the incoming arc
      inc.in_dz = p0.z - p1.z;
      inc.out_dx = p1.x - p0.x;
      inc.out_dz = p1.z - p0.z;
      inc.seen = true;
    }

  for (size_t c = 0; c < d.crossings.size(); ++c) {
    if (!under[c].seen || !over[c].seen)
      throw std::logic_error("crossing incidence bookkeeping failed");
    std::vector<End> ends{{under[c].in_arc, under[c].in_dx, under[c].in_dz},
                          {under[c].out_arc, under[c].out_dx, under[c].out_dz},
                          {over[c].in_arc, over[c].in_dx, over[c].in_dz},
                          {over[c].out_arc, over[c].out_dx, over[c].out_dz}};
    PdTuple tuple;
    const auto order = ccw_from(ends, 0);
    std::copy(order.begin(), order.end(), tuple.arcs.begin());
    tuple.sign = d.crossings[c].sign;
    code.pd.push_back(tuple);
  }

  for (size_t c = 0; c < d.lines.size(); ++c) {
    std::vector<GaussEntry> seq;
    for (const Pass& p : passes[c])
      seq.push_back({p.over, p.crossing + 1, d.crossings[static_cast<size_t>(p.crossing)].sign});
    code.gauss.push_back(std::move(seq));
  }
  return code;
}

std::string pd_text(const DiagramCode& code) {
  std::ostringstream out;
  out << "components " << code.components << "\n";
  out << "crossings " << code.crossings << "\n";
  for (const auto& t : code.pd)
    out << "X[" << t.arcs[0] << "," << t.arcs[1] << "," << t.arcs[2] << "," << t.arcs[3] << "] "
        << (t.sign > 0 ? "+" : "-") << "\n";
  for (const auto& [comp, arc] : code.open_ends)
    out << "end component " << comp + 1 << " arc " << arc << "\n";
  return out.str();
}

std::string gauss_text(const DiagramCode& code) {
  std::ostringstream out;
  for (size_t c = 0; c < code.gauss.size(); ++c) {
    out << "component " << c + 1 << ":";
    for (const auto& e : code.gauss[c])
      out << " " << (e.over ? "O" : "U") << e.crossing << (e.sign > 0 ? "+" : "-");
    out << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// SVG.
// ---------------------------------------------------------------------------

namespace {

std::string fixed_decimal(const Rat& v, int scale_num, int offset) {
  // value * scale + offset with four decimal places, exactly rounded
  const Int num = (v.num * scale_num + Int(offset) * v.den) * 10000;
  Int q = num / v.den;
  if (num % v.den != 0 && num.sign() < 0) --q;  // floor
  const bool neg = q < 0;
  Int mag = neg ? Int(-q) : q;
  std::string digits = mag.str();
  while (digits.size() < 5) digits.insert(digits.begin(), '0');
  std::string s = (neg ? "-" : "") + digits.substr(0, digits.size() - 4) + "." +
                  digits.substr(digits.size() - 4);
  return s;
}

const char* palette(size_t i) {
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                 "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
  return colors[i % 8];
}

}  // namespace

std::string render_svg(const DiagramProjection& d) {
  // diagram bounds
  Rat xmin(0), xmax(1), zmin(0), zmax(1);
  bool first = true;
  for (const auto& line : d.lines)
    for (const auto& v : line.vertices) {
      const Pt2 p = shear_pt(v, d.shear_applied);
      if (first) {
        xmin = xmax = p.x;
        zmin = zmax = p.z;
        first = false;
      } else {
        if (p.x < xmin) xmin = p.x;
        if (xmax < p.x) xmax = p.x;
        if (p.z < zmin) zmin = p.z;
        if (zmax < p.z) zmax = p.z;
      }
    }
  const int scale = 12;
  const int margin = 20;
  const auto X = [&](const Rat& x) { return fixed_decimal(x - xmin, scale, margin); };
  const auto Z = [&](const Rat& z) { return fixed_decimal(z - zmin, scale, margin); };

  std::ostringstream out;
  const std::string width = fixed_decimal(xmax - xmin, scale, 2 * margin);
  const std::string height = fixed_decimal(zmax - zmin, scale, 2 * margin);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
      << "\" height=\"" << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  const auto path_of = [&](const std::vector<Vec3>& verts) {
    std::string s;
    for (size_t k = 0; k < verts.size(); ++k) {
      const Pt2 p = shear_pt(verts[k], d.shear_applied);
      s += (k == 0 ? "M" : " L");
      s += X(p.x) + " " + Z(p.z);
    }
    return s;
  };

  for (size_t c = 0; c < d.lines.size(); ++c)
    out << "<path d=\"" << path_of(d.lines[c].vertices) << "\" fill=\"none\" stroke=\""
        << palette(c) << "\" stroke-width=\"1.6\"/>\n";

  // over strands re-drawn with casing so the under strand breaks at each
  // crossing
  for (const auto& cr : d.crossings) {
    const auto& verts = d.lines[static_cast<size_t>(cr.over_component)].vertices;
    const Vec3& a = verts[static_cast<size_t>(cr.over_segment)];
    const Vec3& b = verts[static_cast<size_t>(cr.over_segment) + 1];
    const Rat window(Int(1), Int(12));
    Rat lo = cr.over_param - window, hi = cr.over_param + window;
    if (lo.sign() < 0) lo = Rat(0);
    if (Rat(1) < hi) hi = Rat(1);
    const Vec3 va{a.x + (b.x - a.x) * lo, a.y + (b.y - a.y) * lo, a.z + (b.z - a.z) * lo};
    const Vec3 vb{a.x + (b.x - a.x) * hi, a.y + (b.y - a.y) * hi, a.z + (b.z - a.z) * hi};
    const Pt2 pa = shear_pt(va, d.shear_applied), pb = shear_pt(vb, d.shear_applied);
    out << "<line x1=\"" << X(pa.x) << "\" y1=\"" << Z(pa.z) << "\" x2=\"" << X(pb.x)
        << "\" y2=\"" << Z(pb.z) << "\" stroke=\"white\" stroke-width=\"5\"/>\n";
    out << "<line x1=\"" << X(pa.x) << "\" y1=\"" << Z(pa.z) << "\" x2=\"" << X(pb.x)
        << "\" y2=\"" << Z(pb.z) << "\" stroke=\"" << palette(static_cast<size_t>(cr.over_component))
        << "\" stroke-width=\"1.6\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace ptk::geom
