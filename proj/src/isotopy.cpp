#include "isotopy.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ptk::iso {

// ---------------------------------------------------------------------------
// Forests.
// ---------------------------------------------------------------------------

namespace {

int parent_of(const ForestNode& n, Side s) { return s == Side::P ? n.parent_p : n.parent_q; }

void check_acyclic(const NestingForest& f, Side s) {
  const int n = static_cast<int>(f.nodes.size());
  std::vector<int> state(static_cast<size_t>(n), 0);  // 0 fresh, 1 on path, 2 done
  for (int start = 0; start < n; ++start) {
    int u = start;
    std::vector<int> path;
    while (u >= 0 && state[static_cast<size_t>(u)] == 0) {
      state[static_cast<size_t>(u)] = 1;
      path.push_back(u);
      u = parent_of(f.nodes[static_cast<size_t>(u)], s);
      if (u >= 0 && state[static_cast<size_t>(u)] == 1)
        throw std::invalid_argument("nesting forest has a parent cycle");
    }
    for (int v : path) state[static_cast<size_t>(v)] = 2;
  }
}

}  // namespace

void validate_forest(const NestingForest& f) {
  const int n = static_cast<int>(f.nodes.size());
  for (int i = 0; i < n; ++i) {
    const auto& node = f.nodes[static_cast<size_t>(i)];
    if (node.id != i) throw std::invalid_argument("forest node ids must be 0..size-1 in order");
    for (int p : {node.parent_p, node.parent_q})
      if (p < -1 || p >= n || p == i) throw std::invalid_argument("forest parent out of range");
  }
  check_acyclic(f, Side::P);
  check_acyclic(f, Side::Q);
  if (f.generator) {
    const int t = static_cast<int>(f.generator->nodes.size());
    for (const auto& node : f.generator->nodes) {
      const auto check_ref = [&](PeriodicTemplate::Ref ref, int index) {
        switch (ref) {
          case PeriodicTemplate::Ref::None:
            break;
          case PeriodicTemplate::Ref::Prefix:
            if (index < 0 || index >= n) throw std::invalid_argument("generator prefix ref out of range");
            break;
          case PeriodicTemplate::Ref::Period:
            if (index < 0 || index >= t) throw std::invalid_argument("generator period ref out of range");
            break;
        }
      };
      check_ref(node.pref, node.p_index);
      check_ref(node.qref, node.q_index);
    }
  }
}

std::vector<int> maximal_nodes(const NestingForest& f, Side side) {
  validate_forest(f);
  std::vector<int> out;
  for (const auto& node : f.nodes) {
    if (!node.target) continue;
    bool maximal = true;
    for (int a = parent_of(node, side); a >= 0;
         a = parent_of(f.nodes[static_cast<size_t>(a)], side))
      if (f.nodes[static_cast<size_t>(a)].target) {
        maximal = false;
        break;
      }
    if (maximal) out.push_back(node.id);
  }
  return out;
}

NestingReport detect_infinite_nesting(const NestingForest& f) {
  validate_forest(f);
  NestingReport report;
  if (!f.generator) return report;
  const auto& tmpl = f.generator->nodes;
  const int t = static_cast<int>(tmpl.size());

  const auto side_has_cycle = [&](Side s) {
    for (int start = 0; start < t; ++start) {
      // follow the quotient parent chain, tracking instance drift
      std::map<int, long> seen;  // template index -> cumulative drift at first visit
      int idx = start;
      long drift = 0;
      while (idx >= 0) {
        auto it = seen.find(idx);
        if (it != seen.end()) {
          if (drift - it->second > 0) return true;  // ascends one instance per loop
          break;                                    // closed with no drift: finite family
        }
        seen[idx] = drift;
        const auto& node = tmpl[static_cast<size_t>(idx)];
        const auto ref = s == Side::P ? node.pref : node.qref;
        if (ref != PeriodicTemplate::Ref::Period) break;  // exits into prefix or stops
        drift += s == Side::P ? node.p_delta : node.q_delta;
        idx = s == Side::P ? node.p_index : node.q_index;
      }
    }
    return false;
  };
  report.on_p = side_has_cycle(Side::P);
  report.on_q = side_has_cycle(Side::Q);
  return report;
}

NestingForest unroll(const NestingForest& f, int instances) {
  validate_forest(f);
  if (instances < 0) throw std::invalid_argument("unroll: negative instance count");
  NestingForest out;
  out.nodes = f.nodes;
  if (!f.generator) return out;
  const auto& tmpl = f.generator->nodes;
  const int prefix = static_cast<int>(f.nodes.size());
  const int t = static_cast<int>(tmpl.size());
  const auto instance_id = [&](int k, int idx) { return prefix + k * t + idx; };
  for (int k = 0; k < instances; ++k)
    for (int idx = 0; idx < t; ++idx) {
      const auto& src = tmpl[static_cast<size_t>(idx)];
      ForestNode node;
      node.id = instance_id(k, idx);
      node.kind = src.kind;
      node.target = src.target;
      node.boundary_region = src.boundary_region;
      node.region = src.region_base + k * src.region_step;
      if (node.region < 0) throw std::invalid_argument("unroll: generator region leaves the ladder");
      const auto resolve = [&](PeriodicTemplate::Ref ref, int index, int delta) {
        switch (ref) {
          case PeriodicTemplate::Ref::None:
            return -1;
          case PeriodicTemplate::Ref::Prefix:
            return index;
          case PeriodicTemplate::Ref::Period: {
            const int ki = k + delta;
            return (ki < 0 || ki >= instances) ? -1 : instance_id(ki, index);
          }
        }
        return -1;
      };
      node.parent_p = resolve(src.pref, src.p_index, src.p_delta);
      node.parent_q = resolve(src.qref, src.q_index, src.q_delta);
      out.nodes.push_back(node);
    }
  validate_forest(out);
  return out;
}

// ---------------------------------------------------------------------------
// Scheduling.
// ---------------------------------------------------------------------------

namespace {

// Depth of a node in the union of the two containment forests: pushes are
// emitted innermost first, so a push never removes another pending target.
int nesting_depth(const NestingForest& f, int id) {
  int depth = 0;
  for (Side s : {Side::P, Side::Q}) {
    int d = 0;
    for (int a = parent_of(f.nodes[static_cast<size_t>(id)], s); a >= 0;
         a = parent_of(f.nodes[static_cast<size_t>(a)], s))
      ++d;
    depth += d;
  }
  return depth;
}

void remove_with_insides(const NestingForest& f, int id, std::vector<char>& removed) {
  removed[static_cast<size_t>(id)] = 1;
  for (const auto& node : f.nodes) {
    if (removed[static_cast<size_t>(node.id)]) continue;
    for (Side s : {Side::P, Side::Q}) {
      for (int a = parent_of(node, s); a >= 0; a = parent_of(f.nodes[static_cast<size_t>(a)], s))
        if (a == id) {
          removed[static_cast<size_t>(node.id)] = 1;
          break;
        }
      if (removed[static_cast<size_t>(node.id)]) break;
    }
  }
}

}  // namespace

PushSchedule schedule_removal(const NestingForest& f, const RegionLadder& ladder) {
  validate_forest(f);
  if (f.generator)
    throw IsotopyError(IsotopyErrorCode::BadInput,
                       "schedule_removal needs an explicit forest; unroll the generator first");
  if (detect_infinite_nesting(f).any())
    throw IsotopyError(IsotopyErrorCode::InfiniteNesting, "infinite nesting among the targets");

  std::vector<int> targets;
  for (const auto& node : f.nodes)
    if (node.target) {
      if (node.region < 0 || !ladder.valid_region(node.region))
        throw IsotopyError(IsotopyErrorCode::UnassignedRegion,
                           "target node " + std::to_string(node.id) + " has no ladder region");
      if (node.kind == CurveKind::Arc && !node.boundary_region)
        throw IsotopyError(IsotopyErrorCode::BadInput,
                           "arc target " + std::to_string(node.id) +
                               " lacks the boundary-region flag");
      targets.push_back(node.id);
    }

  PushSchedule schedule;
  // Circle targets first, then arc targets; within each, the even-indexed
  // regions are pushed simultaneously and the odd-indexed regions clean up
  // the gaps in a second simultaneous pass.
  for (CurveKind kind : {CurveKind::Circle, CurveKind::Arc}) {
    for (int parity : {0, 1}) {
      std::map<int, std::vector<int>> by_region;
      for (int id : targets) {
        const auto& node = f.nodes[static_cast<size_t>(id)];
        if (node.kind != kind || node.region % 2 != parity) continue;
        by_region[node.region].push_back(id);
      }
      if (by_region.empty()) continue;
      Stage stage;
      for (auto& [region, ids] : by_region) {
        StageEntry entry;
        entry.region = region;
        std::sort(ids.begin(), ids.end(), [&](int a, int b) {
          const int da = nesting_depth(f, a), db = nesting_depth(f, b);
          return da != db ? da > db : a < b;  // innermost first, then by id
        });
        for (int id : ids)
          entry.pushes.push_back({kind == CurveKind::Circle ? PushKind::Disk : PushKind::Halfdisk, id});
        stage.entries.push_back(std::move(entry));
      }
      schedule.stages.push_back(std::move(stage));
    }
  }
  return schedule;
}

std::vector<int> apply_schedule(const NestingForest& f, const PushSchedule& s) {
  validate_forest(f);
  std::vector<char> removed(f.nodes.size(), 0);
  for (const auto& stage : s.stages) {
    for (size_t a = 0; a < stage.entries.size(); ++a)
      for (size_t b = a + 1; b < stage.entries.size(); ++b)
        if (RegionLadder::adjacent(stage.entries[a].region, stage.entries[b].region))
          throw IsotopyError(IsotopyErrorCode::BadInput,
                             "stage uses adjacent regions; supports are not disjoint");
    for (const auto& entry : stage.entries)
      for (const auto& push : entry.pushes) {
        if (push.node < 0 || push.node >= static_cast<int>(f.nodes.size()))
          throw IsotopyError(IsotopyErrorCode::BadInput, "push names an unknown node");
        if (removed[static_cast<size_t>(push.node)])
          throw IsotopyError(IsotopyErrorCode::BadInput, "push removes an already removed node");
        remove_with_insides(f, push.node, removed);
      }
  }
  std::vector<int> survivors;
  for (const auto& node : f.nodes)
    if (!removed[static_cast<size_t>(node.id)]) survivors.push_back(node.id);
  return survivors;
}

// ---------------------------------------------------------------------------
// Annulus traces.
// ---------------------------------------------------------------------------

void validate_trace(const AnnulusTrace& t) {
  if (t.base_level < 0) throw std::invalid_argument("trace base level negative");
  if (t.circle_levels.empty()) throw std::invalid_argument("trace has no circles");
  if (t.circle_levels.front() != t.base_level)
    throw std::invalid_argument("trace must start on the standard-position frontier");
  // Reconstruct the gap walk: after each crossing the plane sits between
  // consecutive frontiers, so successive circles differ by at most one.
  int gap = t.base_level;  // between F_gap and F_{gap+1}
  for (size_t k = 1; k < t.circle_levels.size(); ++k) {
    const int level = t.circle_levels[k];
    if (level == gap + 1) ++gap;       // crossed upward
    else if (level == gap) --gap;      // doubled back
    else throw std::invalid_argument("trace is not in standard position (level jump)");
    if (gap < t.base_level - 1)
      throw std::invalid_argument("trace re-enters the standard-position core");
  }
  const int top = *std::max_element(t.circle_levels.begin(), t.circle_levels.end());
  if (gap != top) throw std::invalid_argument("trace must end outward at its top frontier");
}

bool is_monotone(const AnnulusTrace& t) {
  for (size_t k = 0; k < t.circle_levels.size(); ++k)
    if (t.circle_levels[k] != t.base_level + static_cast<int>(k)) return false;
  return true;
}

std::vector<int> redundant_pair_positions(const AnnulusTrace& t) {
  std::vector<int> out;
  size_t k = 0;
  while (k + 1 < t.circle_levels.size()) {
    if (t.circle_levels[k] == t.circle_levels[k + 1]) {
      out.push_back(static_cast<int>(k));
      k += 2;  // non-overlapping pairs, leftmost first
    } else {
      ++k;
    }
  }
  return out;
}

MonotonizeResult monotonize_plane_trace(const AnnulusTrace& t) {
  validate_trace(t);
  MonotonizeResult result;
  result.trace = t;
  while (!is_monotone(result.trace)) {
    const auto pairs = redundant_pair_positions(result.trace);
    if (pairs.empty())
      throw std::invalid_argument("trace is neither monotone nor reducible");
    // pick levels pairwise at distance >= 2 so the supports are disjoint
    std::set<int> levels;
    for (int pos : pairs) levels.insert(result.trace.circle_levels[static_cast<size_t>(pos)]);
    std::vector<int> chosen;
    int last = -10;
    for (int level : levels)
      if (level >= last + 2) {
        chosen.push_back(level);
        last = level;
      }
    AnnulusStage stage;
    stage.levels = chosen;
    std::set<int> chosen_set(chosen.begin(), chosen.end());
    std::vector<char> erase(result.trace.circle_levels.size(), 0);
    for (int pos : pairs) {
      const int level = result.trace.circle_levels[static_cast<size_t>(pos)];
      if (!chosen_set.count(level)) continue;
      stage.moves.push_back({level, pos});
      erase[static_cast<size_t>(pos)] = erase[static_cast<size_t>(pos) + 1] = 1;
    }
    std::vector<int> next;
    for (size_t k = 0; k < result.trace.circle_levels.size(); ++k)
      if (!erase[k]) next.push_back(result.trace.circle_levels[k]);
    result.trace.circle_levels = std::move(next);
    result.stages.push_back(std::move(stage));
  }
  validate_trace(result.trace);
  return result;
}

// ---------------------------------------------------------------------------
// Patch trees.
// ---------------------------------------------------------------------------

namespace {

struct TreeView {
  std::map<int, PatchVertex> vertices;
  std::map<int, std::set<int>> adj;
  int root;
  int depth_limit;

  int depth(int id) const { return vertices.at(id).depth; }

  int up_degree(int id) const {
    int d = 0;
    for (int nb : adj.at(id))
      if (depth(nb) == depth(id) - 1) ++d;
    return d;
  }

  std::vector<int> lower_neighbors(int id) const {
    std::vector<int> out;
    for (int nb : adj.at(id))
      if (depth(nb) == depth(id) + 1) out.push_back(nb);
    return out;
  }
};

TreeView make_view(const PatchTree& t) {
  TreeView v;
  v.root = t.root_id;
  v.depth_limit = t.truncation_depth;
  for (const auto& pv : t.vertices) v.vertices[pv.id] = pv;
  for (auto [a, b] : t.edges) {
    v.adj[a].insert(b);
    v.adj[b].insert(a);
  }
  for (const auto& pv : t.vertices) v.adj[pv.id];  // ensure entries
  return v;
}

PatchTree to_tree(const TreeView& v) {
  PatchTree t;
  t.root_id = v.root;
  t.truncation_depth = v.depth_limit;
  for (const auto& [id, pv] : v.vertices) t.vertices.push_back(pv);
  std::set<std::pair<int, int>> seen;
  for (const auto& [id, nbs] : v.adj)
    for (int nb : nbs) {
      auto key = std::minmax(id, nb);
      if (seen.insert({key.first, key.second}).second)
        t.edges.push_back({key.first, key.second});
    }
  return t;
}

std::vector<int> falling_in_view(const TreeView& v) {
  std::vector<int> out;
  for (const auto& [id, pv] : v.vertices)
    if (id != v.root && v.up_degree(id) == 0) out.push_back(id);
  std::sort(out.begin(), out.end(), [&](int a, int b) {
    return v.depth(a) != v.depth(b) ? v.depth(a) < v.depth(b) : a < b;
  });
  return out;
}

}  // namespace

void validate_patch_tree(const PatchTree& t) {
  if (t.vertices.empty()) throw std::invalid_argument("patch tree is empty");
  std::set<int> ids;
  const PatchVertex* root = nullptr;
  int min_depth = t.vertices.front().depth;
  for (const auto& v : t.vertices) {
    if (!ids.insert(v.id).second) throw std::invalid_argument("duplicate vertex id");
    min_depth = std::min(min_depth, v.depth);
    if (v.id == t.root_id) root = &v;
    if (v.depth > t.truncation_depth) throw std::invalid_argument("vertex beyond the truncation depth");
  }
  if (!root) throw std::invalid_argument("root id missing");
  if (root->depth != min_depth) throw std::invalid_argument("root is not at the minimal depth");
  for (const auto& v : t.vertices)
    if (v.id != t.root_id && v.depth == root->depth)
      throw std::invalid_argument("non-root vertex at the root depth");

  std::map<int, int> degree;
  std::map<int, std::set<int>> adj;
  for (auto [a, b] : t.edges) {
    if (!ids.count(a) || !ids.count(b)) throw std::invalid_argument("edge names unknown vertex");
    const auto da = std::find_if(t.vertices.begin(), t.vertices.end(),
                                 [&](const auto& v) { return v.id == a; })
                        ->depth;
    const auto db = std::find_if(t.vertices.begin(), t.vertices.end(),
                                 [&](const auto& v) { return v.id == b; })
                        ->depth;
    if (std::abs(da - db) != 1)
      throw std::invalid_argument("patch edges must join consecutive depths");
    ++degree[a];
    ++degree[b];
    adj[a].insert(b);
    adj[b].insert(a);
  }
  if (t.edges.size() + 1 != t.vertices.size())
    throw std::invalid_argument("patch graph is not a tree");
  // connectivity
  std::set<int> seen{t.root_id};
  std::vector<int> stack{t.root_id};
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int nb : adj[u])
      if (seen.insert(nb).second) stack.push_back(nb);
  }
  if (seen.size() != t.vertices.size()) throw std::invalid_argument("patch tree is disconnected");

  for (const auto& v : t.vertices) {
    if (v.id == t.root_id) continue;
    if (v.order < 2)
      throw std::invalid_argument("vertex " + std::to_string(v.id) + " has order below two");
    const int deg = degree.count(v.id) ? degree[v.id] : 0;
    if (v.order < deg) throw std::invalid_argument("vertex order below its degree");
    if (v.depth < t.truncation_depth && v.order != deg)
      throw std::invalid_argument("dangling arcs are only allowed at the truncation depth");
  }
}

std::vector<int> falling_vertices(const PatchTree& t) {
  validate_patch_tree(t);
  return falling_in_view(make_view(t));
}

bool is_monotone(const PatchTree& t) { return falling_vertices(t).empty(); }

PatchResult monotonize_patch_tree(const PatchTree& t, int depth_limit) {
  validate_patch_tree(t);
  if (depth_limit != t.truncation_depth)
    throw std::invalid_argument("depth limit must match the tree truncation");
  TreeView view = make_view(t);
  int next_id = 0;
  for (const auto& [id, pv] : view.vertices) next_id = std::max(next_id, id + 1);

  PatchResult result;
  while (true) {
    const auto falling = falling_in_view(view);
    if (falling.empty()) break;
    // one stage collapses every star at a set of depths chosen pairwise
    // at distance two, so the supporting slabs are disjoint
    std::set<int> depths_present;
    for (int id : falling) depths_present.insert(view.depth(id));
    std::set<int> selected_depths;
    int last_depth = -10;
    for (int d : depths_present)
      if (d >= last_depth + 2) {
        selected_depths.insert(d);
        last_depth = d;
      }
    std::vector<int> chosen;
    for (int id : falling)
      if (selected_depths.count(view.depth(id))) chosen.push_back(id);
    TreeStage stage;
    stage.depths.assign(selected_depths.begin(), selected_depths.end());

    for (int center : chosen) {
      const int d = view.depth(center);
      auto lows = view.lower_neighbors(center);
      std::sort(lows.begin(), lows.end());

      // boundary slides until the star has two legs
      while (lows.size() > 2) {
        const int a = lows[0], b = lows[1];
        PatchVertex merged;
        merged.id = next_id++;
        merged.depth = d + 1;
        merged.order = view.vertices[a].order + view.vertices[b].order - 1;
        std::set<int> nbs;
        for (int x : {a, b})
          for (int nb : view.adj[x])
            if (nb != center) nbs.insert(nb);
        view.vertices[merged.id] = merged;
        view.adj[merged.id] = nbs;
        view.adj[merged.id].insert(center);
        for (int nb : nbs) {
          view.adj[nb].erase(a);
          view.adj[nb].erase(b);
          view.adj[nb].insert(merged.id);
        }
        view.adj[center].erase(a);
        view.adj[center].erase(b);
        view.adj[center].insert(merged.id);
        view.vertices[center].order -= 1;
        view.vertices.erase(a);
        view.vertices.erase(b);
        view.adj.erase(a);
        view.adj.erase(b);
        stage.moves.push_back(TreeMove{TreeMoveKind::BoundarySlide, center, {a, b}, merged.id,
                                       merged.order, d});
        lows = view.lower_neighbors(center);
        std::sort(lows.begin(), lows.end());
        if (view.vertices[center].order < 2)
          throw std::invalid_argument("boundary slide drove an order below two");
      }

      if (lows.empty()) {
        // star at the truncation depth: push it past the frontier we can see
        TreeMove move{TreeMoveKind::BandPush, center, {}, -1, 0, d};
        for (int nb : view.adj[center]) view.adj[nb].erase(center);
        view.adj.erase(center);
        view.vertices.erase(center);
        stage.moves.push_back(std::move(move));
        continue;
      }
      if (lows.size() != 2)
        throw std::invalid_argument("falling star with a single visible leg");

      const int a = lows[0], b = lows[1];
      PatchVertex pushed;
      pushed.id = next_id++;
      pushed.depth = d + 1;
      pushed.order = view.vertices[a].order + view.vertices[b].order - 2;
      if (pushed.order < 2) throw std::invalid_argument("band push drove an order below two");
      std::set<int> nbs;
      for (int x : {a, b})
        for (int nb : view.adj[x])
          if (nb != center) nbs.insert(nb);
      view.vertices[pushed.id] = pushed;
      view.adj[pushed.id] = nbs;
      for (int nb : nbs) {
        view.adj[nb].erase(a);
        view.adj[nb].erase(b);
        view.adj[nb].insert(pushed.id);
      }
      for (int gone : {center, a, b}) {
        for (int nb : view.adj[gone]) view.adj[nb].erase(gone);
        view.adj.erase(gone);
        view.vertices.erase(gone);
      }
      stage.moves.push_back(TreeMove{TreeMoveKind::BandPush, center, {a, b}, pushed.id,
                                     pushed.order, d});
    }
    result.stages.push_back(std::move(stage));
  }
  result.tree = to_tree(view);
  validate_patch_tree(result.tree);
  return result;
}

}  // namespace ptk::iso
