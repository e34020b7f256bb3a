#include "serialize.hpp"

#include <algorithm>

namespace ptk::io {

using nlohmann::json;

namespace {

const json& need(const json& j, const char* key, const std::string& path) {
  if (!j.is_object() || !j.contains(key))
    throw SchemaError("missing field at " + path + "/" + key);
  return j.at(key);
}

int need_int(const json& j, const char* key, const std::string& path) {
  const json& v = need(j, key, path);
  if (!v.is_number_integer()) throw SchemaError("expected integer at " + path + "/" + key);
  return v.get<int>();
}

bool need_bool(const json& j, const char* key, const std::string& path) {
  const json& v = need(j, key, path);
  if (!v.is_boolean()) throw SchemaError("expected boolean at " + path + "/" + key);
  return v.get<bool>();
}

std::string need_str(const json& j, const char* key, const std::string& path) {
  const json& v = need(j, key, path);
  if (!v.is_string()) throw SchemaError("expected string at " + path + "/" + key);
  return v.get<std::string>();
}

const json& need_array(const json& j, const char* key, const std::string& path) {
  const json& v = need(j, key, path);
  if (!v.is_array()) throw SchemaError("expected array at " + path + "/" + key);
  return v;
}

std::vector<int> int_list(const json& arr, const std::string& path) {
  std::vector<int> out;
  for (const auto& v : arr) {
    if (!v.is_number_integer()) throw SchemaError("expected integer list at " + path);
    out.push_back(v.get<int>());
  }
  return out;
}

json rows_json(const std::vector<std::vector<int>>& rows) {
  json out = json::array();
  for (const auto& r : rows) out.push_back(r);
  return out;
}

std::vector<std::vector<int>> rows_from(const json& arr, const std::string& path) {
  std::vector<std::vector<int>> out;
  for (const auto& r : arr) {
    if (!r.is_array()) throw SchemaError("expected row array at " + path);
    out.push_back(int_list(r, path));
  }
  return out;
}

json header(const char* type) { return json{{"schema", kSchema}, {"type", type}}; }

// --- theta / subtangle ------------------------------------------------------

json theta_json(const tangle::ThetaComplex& t) {
  json j = header("theta");
  j["n"] = t.n;
  j["m"] = t.m;
  j["letters"] = t.braids.letters;
  j["phi"] = rows_json(t.phi);
  return j;
}

tangle::ThetaComplex theta_from(const json& j) {
  const int n = need_int(j, "n", "theta");
  auto t = tangle::build_theta(n);
  if (need_int(j, "m", "theta") != t.m) throw SchemaError("theta/m is inconsistent with n");
  if (int_list(need_array(j, "letters", "theta"), "theta/letters") != t.braids.letters)
    throw SchemaError("theta/letters do not match the half twist sequence");
  if (rows_from(need_array(j, "phi", "theta"), "theta/phi") != t.phi)
    throw SchemaError("theta/phi does not match the construction");
  return t;
}

json subtangle_json(const tangle::Subtangle& s) {
  json j = header("subtangle");
  j["n"] = s.parent->n;
  j["columns"] = s.columns;
  return j;
}

tangle::Subtangle subtangle_from(const json& j) {
  const int n = need_int(j, "n", "subtangle");
  auto theta = std::make_shared<const tangle::ThetaComplex>(tangle::build_theta(n));
  return tangle::select_subtangle(theta,
                                  int_list(need_array(j, "columns", "subtangle"), "subtangle"));
}

// --- occupancy trace / certificate -----------------------------------------

json trace_json(const engulf::OccupancyTrace& t) {
  json j = header("occupancy-trace");
  j["n"] = t.n;
  j["m"] = t.m;
  j["letters"] = t.letters;
  j["J"] = rows_json(t.J);
  j["I"] = rows_json(t.I);
  j["T"] = rows_json(t.T);
  j["S"] = rows_json(t.S);
  return j;
}

engulf::OccupancyTrace trace_from(const json& j) {
  engulf::OccupancyTrace t;
  t.n = need_int(j, "n", "trace");
  t.m = need_int(j, "m", "trace");
  t.letters = int_list(need_array(j, "letters", "trace"), "trace/letters");
  t.J = rows_from(need_array(j, "J", "trace"), "trace/J");
  t.I = rows_from(need_array(j, "I", "trace"), "trace/I");
  t.T = rows_from(need_array(j, "T", "trace"), "trace/T");
  t.S = rows_from(need_array(j, "S", "trace"), "trace/S");
  return t;
}

json cells_json(const std::vector<engulf::Cell>& cells) {
  json out = json::array();
  for (const auto& c : cells) out.push_back(json::array({c.xc, c.zc}));
  return out;
}

std::vector<engulf::Cell> cells_from(const json& arr, const std::string& path) {
  std::vector<engulf::Cell> out;
  for (const auto& c : arr) {
    if (!c.is_array() || c.size() != 2) throw SchemaError("expected cell pair at " + path);
    out.push_back({c[0].get<int>(), c[1].get<int>()});
  }
  return out;
}

json certificate_json(const engulf::ExcellenceCertificate& cert) {
  json j = header("excellence-certificate");
  j["n"] = cert.n;
  j["j0"] = cert.j0;
  j["trace"] = trace_json(cert.trace);
  json cases = json::array();
  for (const auto& sc : cert.cases)
    cases.push_back(json{{"index", sc.index},
                         {"t", sc.t},
                         {"case", static_cast<int>(sc.kind)},
                         {"left_neighbor_in", sc.left_neighbor_in},
                         {"right_neighbor_in", sc.right_neighbor_in}});
  j["cases"] = cases;
  json nodes = json::array();
  for (const auto& node : cert.nodes) {
    json nj;
    switch (node.kind) {
      case engulf::CertNode::Kind::Leaf:
        nj["kind"] = "leaf";
        nj["level"] = node.level;
        nj["col_lo"] = node.col_lo;
        nj["col_hi"] = node.col_hi;
        nj["strand_width"] = node.strand_width;
        break;
      case engulf::CertNode::Kind::Glue: {
        nj["kind"] = "glue";
        nj["children"] = node.children;
        json is = json::array();
        for (const auto& s : node.check.interfaces)
          is.push_back(json{{"punctures", s.punctures}, {"disk", s.is_disk_portion}});
        nj["interfaces"] = is;
        nj["passed"] = node.check.passed;
        break;
      }
      case engulf::CertNode::Kind::Ball:
        nj["kind"] = "ball";
        nj["child"] = node.children.empty() ? -1 : node.children[0];
        nj["interface_count"] = node.interface_count;
        break;
    }
    nj["cells"] = cells_json(node.cells);
    nodes.push_back(std::move(nj));
  }
  j["nodes"] = nodes;
  j["root"] = cert.root;
  j["untouched_columns"] = cert.untouched_columns;
  j["notes"] = cert.notes;
  return j;
}

engulf::ExcellenceCertificate certificate_from(const json& j) {
  engulf::ExcellenceCertificate cert;
  cert.n = need_int(j, "n", "certificate");
  cert.j0 = int_list(need_array(j, "j0", "certificate"), "certificate/j0");
  cert.trace = trace_from(need(j, "trace", "certificate"));
  for (const auto& cj : need_array(j, "cases", "certificate")) {
    engulf::StepCase sc;
    sc.index = need_int(cj, "index", "certificate/cases");
    sc.t = need_int(cj, "t", "certificate/cases");
    sc.kind = static_cast<engulf::CaseKind>(need_int(cj, "case", "certificate/cases"));
    sc.left_neighbor_in = need_bool(cj, "left_neighbor_in", "certificate/cases");
    sc.right_neighbor_in = need_bool(cj, "right_neighbor_in", "certificate/cases");
    cert.cases.push_back(sc);
  }
  for (const auto& nj : need_array(j, "nodes", "certificate")) {
    engulf::CertNode node;
    const std::string kind = need_str(nj, "kind", "certificate/nodes");
    if (kind == "leaf") {
      node.kind = engulf::CertNode::Kind::Leaf;
      node.level = need_int(nj, "level", "certificate/nodes");
      node.col_lo = need_int(nj, "col_lo", "certificate/nodes");
      node.col_hi = need_int(nj, "col_hi", "certificate/nodes");
      node.strand_width = need_int(nj, "strand_width", "certificate/nodes");
    } else if (kind == "glue") {
      node.kind = engulf::CertNode::Kind::Glue;
      node.children = int_list(need_array(nj, "children", "certificate/nodes"), "children");
      for (const auto& sj : need_array(nj, "interfaces", "certificate/nodes"))
        node.check.interfaces.push_back({need_int(sj, "punctures", "interfaces"),
                                         need_bool(sj, "disk", "interfaces")});
      node.check.passed = need_bool(nj, "passed", "certificate/nodes");
    } else if (kind == "ball") {
      node.kind = engulf::CertNode::Kind::Ball;
      node.children = {need_int(nj, "child", "certificate/nodes")};
      node.interface_count = need_int(nj, "interface_count", "certificate/nodes");
    } else {
      throw SchemaError("unknown certificate node kind '" + kind + "'");
    }
    node.cells = cells_from(need_array(nj, "cells", "certificate/nodes"), "cells");
    cert.nodes.push_back(std::move(node));
  }
  cert.root = need_int(j, "root", "certificate");
  cert.untouched_columns =
      int_list(need_array(j, "untouched_columns", "certificate"), "untouched_columns");
  for (const auto& note : need_array(j, "notes", "certificate"))
    cert.notes.push_back(note.get<std::string>());
  return cert;
}

// --- quotient tangles -------------------------------------------------------

const char* site_name(tangle::EndSite s) {
  switch (s) {
    case tangle::EndSite::Wall: return "wall";
    case tangle::EndSite::G1: return "G1";
    case tangle::EndSite::G2: return "G2";
    case tangle::EndSite::D1: return "D1";
    case tangle::EndSite::D2: return "D2";
    case tangle::EndSite::H1: return "H1";
    case tangle::EndSite::H2: return "H2";
  }
  return "wall";
}

tangle::EndSite site_from(const std::string& s) {
  if (s == "wall") return tangle::EndSite::Wall;
  if (s == "G1") return tangle::EndSite::G1;
  if (s == "G2") return tangle::EndSite::G2;
  if (s == "D1") return tangle::EndSite::D1;
  if (s == "D2") return tangle::EndSite::D2;
  if (s == "H1") return tangle::EndSite::H1;
  if (s == "H2") return tangle::EndSite::H2;
  throw SchemaError("unknown endpoint site '" + s + "'");
}

const char* group_name(tangle::ArcGroup g) {
  switch (g) {
    case tangle::ArcGroup::Beta: return "beta";
    case tangle::ArcGroup::Gamma: return "gamma";
    case tangle::ArcGroup::Delta: return "delta";
    case tangle::ArcGroup::Omega: return "omega";
  }
  return "beta";
}

tangle::ArcGroup group_from(const std::string& s) {
  if (s == "beta") return tangle::ArcGroup::Beta;
  if (s == "gamma") return tangle::ArcGroup::Gamma;
  if (s == "delta") return tangle::ArcGroup::Delta;
  if (s == "omega") return tangle::ArcGroup::Omega;
  throw SchemaError("unknown arc group '" + s + "'");
}

json endpoint_json(const tangle::ArcEndpoint& e) {
  return json{{"site", site_name(e.site)}, {"disk", e.disk_index}, {"mark", e.mark}};
}

tangle::ArcEndpoint endpoint_from(const json& j) {
  tangle::ArcEndpoint e;
  e.site = site_from(need_str(j, "site", "endpoint"));
  e.disk_index = need_int(j, "disk", "endpoint");
  e.mark = need_int(j, "mark", "endpoint");
  return e;
}

json quotient_json(const tangle::QuotientTangle& q) {
  json j = header("quotient-tangle");
  j["scheme"] = q.scheme == tangle::GroupScheme::ThreeGroup ? "three-group" : "four-group";
  j["nu"] = q.nu;
  json arcs = json::array();
  for (const auto& a : q.arcs)
    arcs.push_back(json{{"group", group_name(a.group)},
                        {"index", a.index},
                        {"end0", endpoint_json(a.end0)},
                        {"end1", endpoint_json(a.end1)}});
  j["arcs"] = arcs;
  json ident = json::array();
  for (const auto& [u, v] : q.identification) ident.push_back(json::array({u, v}));
  j["identification"] = ident;
  json labels = json::array();
  for (const auto& l : q.torus_labels) labels.push_back(l ? json(*l) : json(nullptr));
  j["labels"] = labels;
  return j;
}

tangle::QuotientTangle quotient_from(const json& j) {
  tangle::QuotientTangle q;
  const std::string scheme = need_str(j, "scheme", "quotient");
  if (scheme == "three-group") q.scheme = tangle::GroupScheme::ThreeGroup;
  else if (scheme == "four-group") q.scheme = tangle::GroupScheme::FourGroup;
  else throw SchemaError("unknown group scheme '" + scheme + "'");
  q.nu = need_int(j, "nu", "quotient");
  for (const auto& aj : need_array(j, "arcs", "quotient")) {
    tangle::QuotientArc a;
    a.group = group_from(need_str(aj, "group", "quotient/arcs"));
    a.index = need_int(aj, "index", "quotient/arcs");
    a.end0 = endpoint_from(need(aj, "end0", "quotient/arcs"));
    a.end1 = endpoint_from(need(aj, "end1", "quotient/arcs"));
    q.arcs.push_back(a);
  }
  for (const auto& p : need_array(j, "identification", "quotient")) {
    if (!p.is_array() || p.size() != 2) throw SchemaError("bad identification pair");
    q.identification.push_back({p[0].get<int>(), p[1].get<int>()});
  }
  for (const auto& l : need_array(j, "labels", "quotient"))
    q.torus_labels.push_back(l.is_null() ? std::nullopt
                                         : std::optional<std::string>(l.get<std::string>()));
  tangle::validate_quotient(q);
  return q;
}

// --- nesting forests / schedules --------------------------------------------

json forest_json(const iso::NestingForest& f) {
  json j = header("nesting-forest");
  json nodes = json::array();
  for (const auto& n : f.nodes)
    nodes.push_back(json{{"id", n.id},
                         {"kind", n.kind == iso::CurveKind::Circle ? "circle" : "arc"},
                         {"parent_p", n.parent_p},
                         {"parent_q", n.parent_q},
                         {"region", n.region},
                         {"target", n.target},
                         {"boundary_region", n.boundary_region}});
  j["nodes"] = nodes;
  if (f.generator) {
    json tmpl = json::array();
    const auto ref_json = [](iso::PeriodicTemplate::Ref r, int index, int delta) {
      json out;
      out["ref"] = r == iso::PeriodicTemplate::Ref::None
                       ? "none"
                       : (r == iso::PeriodicTemplate::Ref::Prefix ? "prefix" : "period");
      out["index"] = index;
      out["delta"] = delta;
      return out;
    };
    for (const auto& n : f.generator->nodes)
      tmpl.push_back(json{{"kind", n.kind == iso::CurveKind::Circle ? "circle" : "arc"},
                          {"target", n.target},
                          {"boundary_region", n.boundary_region},
                          {"region_base", n.region_base},
                          {"region_step", n.region_step},
                          {"parent_p", ref_json(n.pref, n.p_index, n.p_delta)},
                          {"parent_q", ref_json(n.qref, n.q_index, n.q_delta)}});
    j["generator"] = tmpl;
  } else {
    j["generator"] = nullptr;
  }
  return j;
}

iso::NestingForest forest_from(const json& j) {
  iso::NestingForest f;
  for (const auto& nj : need_array(j, "nodes", "forest")) {
    iso::ForestNode n;
    n.id = need_int(nj, "id", "forest/nodes");
    n.kind = need_str(nj, "kind", "forest/nodes") == "arc" ? iso::CurveKind::Arc
                                                           : iso::CurveKind::Circle;
    n.parent_p = need_int(nj, "parent_p", "forest/nodes");
    n.parent_q = need_int(nj, "parent_q", "forest/nodes");
    n.region = need_int(nj, "region", "forest/nodes");
    n.target = need_bool(nj, "target", "forest/nodes");
    n.boundary_region = need_bool(nj, "boundary_region", "forest/nodes");
    f.nodes.push_back(n);
  }
  const json& gen = need(j, "generator", "forest");
  if (!gen.is_null()) {
    iso::PeriodicTemplate tmpl;
    const auto ref_from = [](const json& rj, iso::PeriodicTemplate::Ref& r, int& index,
                             int& delta) {
      const std::string kind = need_str(rj, "ref", "forest/generator");
      r = kind == "none" ? iso::PeriodicTemplate::Ref::None
          : kind == "prefix" ? iso::PeriodicTemplate::Ref::Prefix
                             : iso::PeriodicTemplate::Ref::Period;
      index = need_int(rj, "index", "forest/generator");
      delta = need_int(rj, "delta", "forest/generator");
    };
    for (const auto& nj : gen) {
      iso::PeriodicTemplate::Node n;
      n.kind = need_str(nj, "kind", "forest/generator") == "arc" ? iso::CurveKind::Arc
                                                                 : iso::CurveKind::Circle;
      n.target = need_bool(nj, "target", "forest/generator");
      n.boundary_region = need_bool(nj, "boundary_region", "forest/generator");
      n.region_base = need_int(nj, "region_base", "forest/generator");
      n.region_step = need_int(nj, "region_step", "forest/generator");
      ref_from(need(nj, "parent_p", "forest/generator"), n.pref, n.p_index, n.p_delta);
      ref_from(need(nj, "parent_q", "forest/generator"), n.qref, n.q_index, n.q_delta);
      tmpl.nodes.push_back(n);
    }
    f.generator = std::move(tmpl);
  }
  iso::validate_forest(f);
  return f;
}

json schedule_json(const iso::PushSchedule& s) {
  json j = header("push-schedule");
  json stages = json::array();
  for (const auto& stage : s.stages) {
    json entries = json::array();
    for (const auto& e : stage.entries) {
      json pushes = json::array();
      for (const auto& p : e.pushes)
        pushes.push_back(json{{"kind", p.kind == iso::PushKind::Disk
                                           ? "disk"
                                           : (p.kind == iso::PushKind::Halfdisk ? "halfdisk"
                                                                                : "band")},
                              {"node", p.node}});
      entries.push_back(json{{"region", e.region}, {"pushes", pushes}});
    }
    stages.push_back(json{{"entries", entries}});
  }
  j["stages"] = stages;
  return j;
}

iso::PushSchedule schedule_from(const json& j) {
  iso::PushSchedule s;
  for (const auto& sj : need_array(j, "stages", "schedule")) {
    iso::Stage stage;
    for (const auto& ej : need_array(sj, "entries", "schedule/stages")) {
      iso::StageEntry e;
      e.region = need_int(ej, "region", "schedule/entries");
      for (const auto& pj : need_array(ej, "pushes", "schedule/entries")) {
        iso::Push p;
        const std::string kind = need_str(pj, "kind", "schedule/pushes");
        p.kind = kind == "disk" ? iso::PushKind::Disk
                 : kind == "halfdisk" ? iso::PushKind::Halfdisk
                                      : iso::PushKind::Band;
        p.node = need_int(pj, "node", "schedule/pushes");
        e.pushes.push_back(p);
      }
      stage.entries.push_back(std::move(e));
    }
    s.stages.push_back(std::move(stage));
  }
  return s;
}

// --- annulus traces and patch trees -----------------------------------------

json annulus_json(const iso::AnnulusTrace& t) {
  json j = header("annulus-trace");
  j["base_level"] = t.base_level;
  j["circles"] = t.circle_levels;
  return j;
}

iso::AnnulusTrace annulus_from(const json& j) {
  iso::AnnulusTrace t;
  t.base_level = need_int(j, "base_level", "annulus-trace");
  t.circle_levels = int_list(need_array(j, "circles", "annulus-trace"), "circles");
  iso::validate_trace(t);
  return t;
}

json monotonize_json(const iso::MonotonizeResult& r) {
  json j = header("plane-monotonization");
  json stages = json::array();
  for (const auto& st : r.stages) {
    json moves = json::array();
    for (const auto& m : st.moves)
      moves.push_back(json{{"level", m.level}, {"position", m.position}});
    stages.push_back(json{{"levels", st.levels}, {"moves", moves}});
  }
  j["stages"] = stages;
  j["trace"] = annulus_json(r.trace);
  return j;
}

iso::MonotonizeResult monotonize_from(const json& j) {
  iso::MonotonizeResult r;
  for (const auto& sj : need_array(j, "stages", "plane-monotonization")) {
    iso::AnnulusStage st;
    st.levels = int_list(need_array(sj, "levels", "stages"), "levels");
    for (const auto& mj : need_array(sj, "moves", "stages"))
      st.moves.push_back({need_int(mj, "level", "moves"), need_int(mj, "position", "moves")});
    r.stages.push_back(std::move(st));
  }
  r.trace = annulus_from(need(j, "trace", "plane-monotonization"));
  return r;
}

json patch_tree_json(const iso::PatchTree& t) {
  json j = header("patch-tree");
  j["root"] = t.root_id;
  j["truncation_depth"] = t.truncation_depth;
  json verts = json::array();
  for (const auto& v : t.vertices)
    verts.push_back(json{{"id", v.id}, {"depth", v.depth}, {"order", v.order}});
  j["vertices"] = verts;
  json edges = json::array();
  for (const auto& [a, b] : t.edges) edges.push_back(json::array({a, b}));
  j["edges"] = edges;
  return j;
}

iso::PatchTree patch_tree_from(const json& j) {
  iso::PatchTree t;
  t.root_id = need_int(j, "root", "patch-tree");
  t.truncation_depth = need_int(j, "truncation_depth", "patch-tree");
  for (const auto& vj : need_array(j, "vertices", "patch-tree"))
    t.vertices.push_back({need_int(vj, "id", "vertices"), need_int(vj, "depth", "vertices"),
                          need_int(vj, "order", "vertices")});
  for (const auto& ej : need_array(j, "edges", "patch-tree")) {
    if (!ej.is_array() || ej.size() != 2) throw SchemaError("bad edge at patch-tree/edges");
    t.edges.push_back({ej[0].get<int>(), ej[1].get<int>()});
  }
  iso::validate_patch_tree(t);
  return t;
}

json patch_result_json(const iso::PatchResult& r) {
  json j = header("tree-monotonization");
  json stages = json::array();
  for (const auto& st : r.stages) {
    json moves = json::array();
    for (const auto& m : st.moves)
      moves.push_back(json{{"kind", m.kind == iso::TreeMoveKind::BoundarySlide
                                        ? "boundary-slide"
                                        : (m.kind == iso::TreeMoveKind::BandPush
                                               ? "band-push"
                                               : "band-unfolding")},
                           {"center", m.center},
                           {"consumed", m.consumed},
                           {"result", m.result},
                           {"result_order", m.result_order},
                           {"depth", m.depth}});
    stages.push_back(json{{"depths", st.depths}, {"moves", moves}});
  }
  j["stages"] = stages;
  j["tree"] = patch_tree_json(r.tree);
  return j;
}

iso::PatchResult patch_result_from(const json& j) {
  iso::PatchResult r;
  for (const auto& sj : need_array(j, "stages", "tree-monotonization")) {
    iso::TreeStage st;
    st.depths = int_list(need_array(sj, "depths", "stages"), "depths");
    for (const auto& mj : need_array(sj, "moves", "stages")) {
      iso::TreeMove m;
      const std::string kind = need_str(mj, "kind", "moves");
      m.kind = kind == "boundary-slide" ? iso::TreeMoveKind::BoundarySlide
               : kind == "band-push" ? iso::TreeMoveKind::BandPush
                                     : iso::TreeMoveKind::BandUnfolding;
      m.center = need_int(mj, "center", "moves");
      m.consumed = int_list(need_array(mj, "consumed", "moves"), "consumed");
      m.result = need_int(mj, "result", "moves");
      m.result_order = need_int(mj, "result_order", "moves");
      m.depth = need_int(mj, "depth", "moves");
      st.moves.push_back(std::move(m));
    }
    r.stages.push_back(std::move(st));
  }
  r.tree = patch_tree_from(need(j, "tree", "tree-monotonization"));
  return r;
}

// --- exhaustions -------------------------------------------------------------

json surface_json(const exh::SurfaceDescriptor& s) {
  return json{{"orientable", s.orientable},
              {"genus_or_crosscaps", s.genus_or_crosscaps},
              {"boundary_circles", s.boundary_circles}};
}

exh::SurfaceDescriptor surface_from(const json& j) {
  exh::SurfaceDescriptor s;
  s.orientable = need_bool(j, "orientable", "surface");
  s.genus_or_crosscaps = need_int(j, "genus_or_crosscaps", "surface");
  s.boundary_circles = need_int(j, "boundary_circles", "surface");
  return s;
}

json exhaustion_json(const exh::ExhaustionDescriptor& ex) {
  json j = header("exhaustion");
  j["ends"] = ex.ends;
  j["planes_per_end"] = ex.planes_per_end;
  json levels = json::array();
  for (const auto& level : ex.levels) {
    json pieces = json::array();
    for (const auto& p : level.pieces) {
      json fin = json::array(), fout = json::array();
      for (const auto& s : p.frontier_in) fin.push_back(surface_json(s));
      for (const auto& s : p.frontier_out) fout.push_back(surface_json(s));
      pieces.push_back(json{{"frontier_in", fin},
                            {"frontier_out", fout},
                            {"boundary_annuli_per_plane", p.boundary_annuli_per_plane},
                            {"flags",
                             json{{"p2_irreducible", p.flags.p2_irreducible},
                                  {"boundary_irreducible", p.flags.boundary_irreducible},
                                  {"anannular", p.flags.anannular},
                                  {"frontier_incompressible", p.flags.frontier_incompressible},
                                  {"is_product", p.flags.is_product},
                                  {"excellent", p.flags.excellent},
                                  {"provenance", p.flags.provenance}}}});
    }
    levels.push_back(
        json{{"pieces", pieces}, {"complement_components", level.complement_components}});
  }
  j["levels"] = levels;
  return j;
}

exh::ExhaustionDescriptor exhaustion_from(const json& j) {
  exh::ExhaustionDescriptor ex;
  ex.ends = need_int(j, "ends", "exhaustion");
  ex.planes_per_end = int_list(need_array(j, "planes_per_end", "exhaustion"), "planes_per_end");
  for (const auto& lj : need_array(j, "levels", "exhaustion")) {
    exh::LevelDescriptor level;
    level.complement_components = need_int(lj, "complement_components", "levels");
    for (const auto& pj : need_array(lj, "pieces", "levels")) {
      exh::PieceDescriptor p;
      for (const auto& sj : need_array(pj, "frontier_in", "pieces"))
        p.frontier_in.push_back(surface_from(sj));
      for (const auto& sj : need_array(pj, "frontier_out", "pieces"))
        p.frontier_out.push_back(surface_from(sj));
      p.boundary_annuli_per_plane =
          int_list(need_array(pj, "boundary_annuli_per_plane", "pieces"), "annuli");
      const json& fj = need(pj, "flags", "pieces");
      p.flags.p2_irreducible = need_bool(fj, "p2_irreducible", "flags");
      p.flags.boundary_irreducible = need_bool(fj, "boundary_irreducible", "flags");
      p.flags.anannular = need_bool(fj, "anannular", "flags");
      p.flags.frontier_incompressible = need_bool(fj, "frontier_incompressible", "flags");
      p.flags.is_product = need_bool(fj, "is_product", "flags");
      p.flags.excellent = need_bool(fj, "excellent", "flags");
      p.flags.provenance = need_str(fj, "provenance", "flags");
      level.pieces.push_back(std::move(p));
    }
    ex.levels.push_back(std::move(level));
  }
  exh::validate_descriptor(ex);
  return ex;
}

// --- labelings ---------------------------------------------------------------

std::string bits_str(const std::vector<uint8_t>& bits) {
  std::string s;
  for (uint8_t b : bits) s += b ? '1' : '0';
  return s;
}

std::vector<uint8_t> bits_from(const std::string& s, const std::string& path) {
  std::vector<uint8_t> out;
  for (char c : s) {
    if (c != '0' && c != '1') throw SchemaError("expected bit string at " + path);
    out.push_back(c == '1');
  }
  return out;
}

json labeling_json(const label::BinaryLabeling& l) {
  json j = header("labeling");
  j["ends"] = l.ends;
  j["planes_per_end"] = l.planes_per_end;
  json slots = json::array();
  for (const auto& s : l.slots)
    slots.push_back(json{{"prefix", bits_str(s.prefix)}, {"period", bits_str(s.period)}});
  j["slots"] = slots;
  return j;
}

label::BinaryLabeling labeling_from(const json& j) {
  label::BinaryLabeling l;
  l.ends = need_int(j, "ends", "labeling");
  l.planes_per_end = int_list(need_array(j, "planes_per_end", "labeling"), "planes_per_end");
  for (const auto& sj : need_array(j, "slots", "labeling")) {
    label::BitSequence s;
    s.prefix = bits_from(need_str(sj, "prefix", "slots"), "labeling/slots/prefix");
    s.period = bits_from(need_str(sj, "period", "slots"), "labeling/slots/period");
    l.slots.push_back(std::move(s));
  }
  label::validate_labeling(l);
  return l;
}

json family_json(const std::vector<label::BinaryLabeling>& fam) {
  json j = header("labeling-family");
  json members = json::array();
  for (const auto& l : fam) members.push_back(labeling_json(l));
  j["members"] = members;
  return j;
}

std::vector<label::BinaryLabeling> family_from(const json& j) {
  std::vector<label::BinaryLabeling> fam;
  for (const auto& lj : need_array(j, "members", "labeling-family"))
    fam.push_back(labeling_from(lj));
  return fam;
}

// --- diagram codes and polylines ----------------------------------------------

json code_json(const geom::DiagramCode& c) {
  json j = header("diagram-code");
  j["components"] = c.components;
  j["crossings"] = c.crossings;
  json pd = json::array();
  for (const auto& t : c.pd)
    pd.push_back(json{{"arcs", t.arcs}, {"sign", t.sign}});
  j["pd"] = pd;
  json ends = json::array();
  for (const auto& [comp, arc] : c.open_ends) ends.push_back(json::array({comp, arc}));
  j["open_ends"] = ends;
  json gauss = json::array();
  for (const auto& seq : c.gauss) {
    json sj = json::array();
    for (const auto& e : seq)
      sj.push_back(json{{"over", e.over}, {"crossing", e.crossing}, {"sign", e.sign}});
    gauss.push_back(sj);
  }
  j["gauss"] = gauss;
  return j;
}

geom::DiagramCode code_from(const json& j) {
  geom::DiagramCode c;
  c.components = need_int(j, "components", "diagram-code");
  c.crossings = need_int(j, "crossings", "diagram-code");
  for (const auto& tj : need_array(j, "pd", "diagram-code")) {
    geom::PdTuple t;
    const json& arcs = need_array(tj, "arcs", "pd");
    if (arcs.size() != 4) throw SchemaError("pd tuple needs four arcs");
    for (size_t k = 0; k < 4; ++k) t.arcs[k] = arcs[k].get<int>();
    t.sign = need_int(tj, "sign", "pd");
    c.pd.push_back(t);
  }
  for (const auto& ej : need_array(j, "open_ends", "diagram-code")) {
    if (!ej.is_array() || ej.size() != 2) throw SchemaError("bad open end");
    c.open_ends.push_back({ej[0].get<int>(), ej[1].get<int>()});
  }
  for (const auto& sj : need_array(j, "gauss", "diagram-code")) {
    std::vector<geom::GaussEntry> seq;
    for (const auto& ej : sj)
      seq.push_back({need_bool(ej, "over", "gauss"), need_int(ej, "crossing", "gauss"),
                     need_int(ej, "sign", "gauss")});
    c.gauss.push_back(std::move(seq));
  }
  return c;
}

json polylines_json(const std::vector<geom::Polyline3>& lines) {
  json j = header("polylines");
  json out = json::array();
  for (const auto& line : lines) {
    json lj = json::array();
    for (const auto& v : line.vertices)
      lj.push_back(json::array({v.x.str(), v.y.str(), v.z.str()}));
    out.push_back(lj);
  }
  j["lines"] = out;
  return j;
}

std::vector<geom::Polyline3> polylines_from(const json& j) {
  std::vector<geom::Polyline3> lines;
  for (const auto& lj : need_array(j, "lines", "polylines")) {
    geom::Polyline3 line;
    for (const auto& vj : lj) {
      if (!vj.is_array() || vj.size() != 3) throw SchemaError("bad vertex in polylines");
      line.vertices.push_back({geom::rat_of(vj[0].get<std::string>()),
                               geom::rat_of(vj[1].get<std::string>()),
                               geom::rat_of(vj[2].get<std::string>())});
    }
    geom::validate_polyline(line);
    lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace

std::string type_name(const AnyValue& v) {
  return std::visit(
      [](const auto& value) -> std::string {
        using T = std::decay_t<decltype(value)>;
        if constexpr (std::is_same_v<T, tangle::ThetaComplex>) return "theta";
        else if constexpr (std::is_same_v<T, tangle::Subtangle>) return "subtangle";
        else if constexpr (std::is_same_v<T, engulf::OccupancyTrace>) return "occupancy-trace";
        else if constexpr (std::is_same_v<T, engulf::ExcellenceCertificate>)
          return "excellence-certificate";
        else if constexpr (std::is_same_v<T, tangle::QuotientTangle>) return "quotient-tangle";
        else if constexpr (std::is_same_v<T, iso::NestingForest>) return "nesting-forest";
        else if constexpr (std::is_same_v<T, iso::PushSchedule>) return "push-schedule";
        else if constexpr (std::is_same_v<T, iso::AnnulusTrace>) return "annulus-trace";
        else if constexpr (std::is_same_v<T, iso::MonotonizeResult>)
          return "plane-monotonization";
        else if constexpr (std::is_same_v<T, iso::PatchTree>) return "patch-tree";
        else if constexpr (std::is_same_v<T, iso::PatchResult>) return "tree-monotonization";
        else if constexpr (std::is_same_v<T, exh::ExhaustionDescriptor>) return "exhaustion";
        else if constexpr (std::is_same_v<T, label::BinaryLabeling>) return "labeling";
        else if constexpr (std::is_same_v<T, std::vector<label::BinaryLabeling>>)
          return "labeling-family";
        else if constexpr (std::is_same_v<T, geom::DiagramCode>) return "diagram-code";
        else return "polylines";
      },
      v);
}

json to_json(const AnyValue& v) {
  return std::visit(
      [](const auto& value) -> json {
        using T = std::decay_t<decltype(value)>;
        if constexpr (std::is_same_v<T, tangle::ThetaComplex>) return theta_json(value);
        else if constexpr (std::is_same_v<T, tangle::Subtangle>) return subtangle_json(value);
        else if constexpr (std::is_same_v<T, engulf::OccupancyTrace>) return trace_json(value);
        else if constexpr (std::is_same_v<T, engulf::ExcellenceCertificate>)
          return certificate_json(value);
        else if constexpr (std::is_same_v<T, tangle::QuotientTangle>) return quotient_json(value);
        else if constexpr (std::is_same_v<T, iso::NestingForest>) return forest_json(value);
        else if constexpr (std::is_same_v<T, iso::PushSchedule>) return schedule_json(value);
        else if constexpr (std::is_same_v<T, iso::AnnulusTrace>) return annulus_json(value);
        else if constexpr (std::is_same_v<T, iso::MonotonizeResult>)
          return monotonize_json(value);
        else if constexpr (std::is_same_v<T, iso::PatchTree>) return patch_tree_json(value);
        else if constexpr (std::is_same_v<T, iso::PatchResult>) return patch_result_json(value);
        else if constexpr (std::is_same_v<T, exh::ExhaustionDescriptor>)
          return exhaustion_json(value);
        else if constexpr (std::is_same_v<T, label::BinaryLabeling>) return labeling_json(value);
        else if constexpr (std::is_same_v<T, std::vector<label::BinaryLabeling>>)
          return family_json(value);
        else if constexpr (std::is_same_v<T, geom::DiagramCode>) return code_json(value);
        else return polylines_json(value);
      },
      v);
}

AnyValue value_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("document root must be an object");
  const std::string schema = need_str(j, "schema", "");
  if (schema != kSchema) throw SchemaError("unsupported schema '" + schema + "'");
  const std::string type = need_str(j, "type", "");
  if (type == "theta") return theta_from(j);
  if (type == "subtangle") return subtangle_from(j);
  if (type == "occupancy-trace") return trace_from(j);
  if (type == "excellence-certificate") return certificate_from(j);
  if (type == "quotient-tangle") return quotient_from(j);
  if (type == "nesting-forest") return forest_from(j);
  if (type == "push-schedule") return schedule_from(j);
  if (type == "annulus-trace") return annulus_from(j);
  if (type == "plane-monotonization") return monotonize_from(j);
  if (type == "patch-tree") return patch_tree_from(j);
  if (type == "tree-monotonization") return patch_result_from(j);
  if (type == "exhaustion") return exhaustion_from(j);
  if (type == "labeling") return labeling_from(j);
  if (type == "labeling-family") return family_from(j);
  if (type == "diagram-code") return code_from(j);
  if (type == "polylines") return polylines_from(j);
  throw SchemaError("unknown document type '" + type + "'");
}

std::string serialize(const AnyValue& v) { return to_json(v).dump(2) + "\n"; }

AnyValue deserialize(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("JSON parse error: ") + e.what());
  }
  return value_from_json(j);
}

bool equal(const AnyValue& a, const AnyValue& b) { return to_json(a) == to_json(b); }

}  // namespace ptk::io
