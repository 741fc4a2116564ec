#pragma once

// Witness configurations achieving the per-component minima, recorded as
// phase graphs: fixed points with their unstable dimension, an order
// compatible with the Smale relation, connection pairs, and the assignment
// of bunches to the sinks produced by the regularization surgery.
//
// Three builders cover the template shapes:
//   realize_plus           the flower on a plus-side component
//   realize_minus_pair     the projective-plane cylinder for a pair of
//                          degree-1 bunches
//   realize_nonorientable  sink-source spheres plus one twisted sphere
//                          bundle, for the non-orientable-manifold shape
//
// Only combinatorics is stored; no embedding or separatrix geometry.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "bunchmin/error.hpp"
#include "bunchmin/ilp.hpp"
#include "bunchmin/model.hpp"
#include "bunchmin/regularize.hpp"

namespace bunchmin {

enum class PointRole { GluedSink, Isolated };

struct FixedPoint {
  std::string id;
  int index = 0;  // unstable dimension, 0..3
  PointRole role = PointRole::Isolated;
  std::string component;
};

// points are listed in the Smale order: every index-j point comes before
// every point of a higher index. A connection (p, q) states that the
// stable set of p meets the unstable set of q, so p must precede q.
struct PhaseGraph {
  std::vector<FixedPoint> points;
  std::vector<std::pair<std::string, std::string>> connections;
  std::map<std::string, std::string> bunch_assignment;  // bunch -> glued sink
};

inline long long isolated_total(const PhaseGraph& g) {
  return std::count_if(g.points.begin(), g.points.end(),
                       [](const FixedPoint& p) { return p.role == PointRole::Isolated; });
}

namespace detail {

inline std::vector<std::string> default_ids(const std::string& stem, std::size_t n) {
  std::vector<std::string> ids;
  for (std::size_t i = 1; i <= n; ++i) ids.push_back(stem + std::to_string(i));
  return ids;
}

}  // namespace detail

// The flower: l2 glued sinks chained by l2-1 index-1 saddles, closed off by
// one source. The index-<=1 skeleton is a path, hence connected.
inline PhaseGraph realize_plus(long long l2, const std::string& component = "plus",
                               std::vector<std::string> bunch_ids = {}) {
  if (l2 < 1)
    throw Error(Errc::InvalidSpec, "a plus-side witness needs at least one degree-2 bunch");
  if (bunch_ids.empty()) bunch_ids = detail::default_ids(component + ".bunch", static_cast<std::size_t>(l2));
  if (static_cast<long long>(bunch_ids.size()) != l2)
    throw Error(Errc::InvalidSpec, "expected " + std::to_string(l2) + " bunch ids");

  PhaseGraph g;
  for (long long i = 1; i <= l2; ++i)
    g.points.push_back({component + ".sink" + std::to_string(i), 0, PointRole::GluedSink, component});
  for (long long i = 1; i < l2; ++i)
    g.points.push_back({component + ".saddle" + std::to_string(i), 1, PointRole::Isolated, component});
  g.points.push_back({component + ".source1", 3, PointRole::Isolated, component});

  for (long long i = 1; i < l2; ++i) {
    g.connections.emplace_back(component + ".sink" + std::to_string(i),
                               component + ".saddle" + std::to_string(i));
    g.connections.emplace_back(component + ".sink" + std::to_string(i + 1),
                               component + ".saddle" + std::to_string(i));
    g.connections.emplace_back(component + ".saddle" + std::to_string(i), component + ".source1");
  }
  if (l2 == 1) g.connections.emplace_back(component + ".sink1", component + ".source1");

  for (long long i = 0; i < l2; ++i)
    g.bunch_assignment[bunch_ids[static_cast<std::size_t>(i)]] =
        component + ".sink" + std::to_string(i + 1);
  return g;
}

// One pair of degree-1 bunches on a projective-plane cylinder: the product
// of the minimal system on the projective plane with an expansion of the
// line. The expansion raises each index by one, leaving one saddle of each
// index and one source; the two basins contribute the two glued sinks.
inline PhaseGraph realize_minus_pair(const std::string& component = "minus",
                                     std::vector<std::string> bunch_ids = {}) {
  if (bunch_ids.empty()) bunch_ids = detail::default_ids(component + ".bunch", 2);
  if (bunch_ids.size() != 2)
    throw Error(Errc::InvalidSpec, "a cylinder witness pairs exactly two degree-1 bunches");

  PhaseGraph g;
  g.points.push_back({component + ".sink1", 0, PointRole::GluedSink, component});
  g.points.push_back({component + ".sink2", 0, PointRole::GluedSink, component});
  g.points.push_back({component + ".saddle1", 1, PointRole::Isolated, component});
  g.points.push_back({component + ".saddle2", 2, PointRole::Isolated, component});
  g.points.push_back({component + ".source1", 3, PointRole::Isolated, component});
  g.connections.emplace_back(component + ".sink1", component + ".saddle1");
  g.connections.emplace_back(component + ".sink2", component + ".saddle1");
  g.connections.emplace_back(component + ".saddle1", component + ".saddle2");
  g.connections.emplace_back(component + ".saddle2", component + ".source1");
  g.bunch_assignment[bunch_ids[0]] = component + ".sink1";
  g.bunch_assignment[bunch_ids[1]] = component + ".sink2";
  return g;
}

// Witness for the non-orientable-manifold shape: k2 components of one
// degree-2 bunch each. One component (position `twisted`) carries the
// twisted sphere-bundle dynamics with a saddle of each index; the others
// are sink-source spheres. Isolated points total k2 + 2.
inline PhaseGraph realize_nonorientable(long long k2,
                                        std::vector<std::string> component_ids = {},
                                        std::vector<std::string> bunch_ids = {},
                                        std::size_t twisted = 0) {
  if (k2 < 1)
    throw Error(Errc::InvalidSpec, "the twisted-bundle witness needs at least one bunch");
  if (component_ids.empty()) component_ids = detail::default_ids("m", static_cast<std::size_t>(k2));
  if (bunch_ids.empty())
    for (const auto& c : component_ids) bunch_ids.push_back(c + ".bunch1");
  if (static_cast<long long>(component_ids.size()) != k2 ||
      static_cast<long long>(bunch_ids.size()) != k2 || twisted >= component_ids.size())
    throw Error(Errc::InvalidSpec, "component/bunch lists must match the bunch count");

  PhaseGraph g;
  for (std::size_t i = 0; i < component_ids.size(); ++i) {
    g.points.push_back({component_ids[i] + ".sink1", 0, PointRole::GluedSink, component_ids[i]});
    g.bunch_assignment[bunch_ids[i]] = component_ids[i] + ".sink1";
  }
  const std::string& tc = component_ids[twisted];
  g.points.push_back({tc + ".saddle1", 1, PointRole::Isolated, tc});
  g.points.push_back({tc + ".saddle2", 2, PointRole::Isolated, tc});
  for (const auto& c : component_ids)
    g.points.push_back({c + ".source1", 3, PointRole::Isolated, c});

  for (const auto& c : component_ids)
    if (c != tc) g.connections.emplace_back(c + ".sink1", c + ".source1");
  g.connections.emplace_back(tc + ".sink1", tc + ".saddle1");
  g.connections.emplace_back(tc + ".saddle1", tc + ".saddle2");
  g.connections.emplace_back(tc + ".saddle2", tc + ".source1");
  return g;
}

// Counts of a component's witness points in regularized form: points of a
// covered component lift twice, and its glued sinks enter C0 directly.
inline PointCounts witness_counts(const PhaseGraph& g, const RegularizedComponent& rc) {
  long long glued = 0;
  std::array<long long, 4> iso{};
  for (const auto& p : g.points) {
    if (p.component != rc.source_component) continue;
    if (p.role == PointRole::GluedSink)
      ++glued;
    else if (p.index >= 0 && p.index < 4)
      ++iso[static_cast<std::size_t>(p.index)];
  }
  long long mult = rc.covered ? 2 : 1;
  return PointCounts{glued + mult * iso[0], mult * iso[1], mult * iso[2], mult * iso[3]};
}

// Structural and arithmetic validation of a phase graph against a system.
// Violations are data; the list is empty exactly for a valid witness.
inline ValidationReport validate_phase_graph(const SystemSpec& spec, const PhaseGraph& g) {
  ValidationReport report = validate(spec);
  if (!report.empty()) {
    for (auto& v : report) v.code = "spec-" + v.code;
    return report;
  }
  auto add = [&report](const std::string& code, const std::string& subject,
                       const std::string& message) {
    report.push_back(Violation{code, subject, message});
  };

  std::map<std::string, const FixedPoint*> by_id;
  std::map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < g.points.size(); ++i) {
    const FixedPoint& p = g.points[i];
    if (p.id.empty()) add("point-empty-id", "", "phase graph point with empty identifier");
    if (!by_id.emplace(p.id, &p).second)
      add("point-duplicate", p.id, "duplicate point id '" + p.id + "'");
    else
      position.emplace(p.id, i);
    if (p.index < 0 || p.index > 3)
      add("point-index", p.id, "point '" + p.id + "' has index " + std::to_string(p.index));
    if (p.role == PointRole::GluedSink && p.index != 0)
      add("glued-sink-index", p.id, "glued sink '" + p.id + "' must have index 0");
    if (!find_component(spec, p.component))
      add("point-component", p.id,
          "point '" + p.id + "' references missing component '" + p.component + "'");
  }

  for (std::size_t i = 1; i < g.points.size(); ++i)
    if (g.points[i].index < g.points[i - 1].index) {
      add("order-index-blocks", g.points[i].id,
          "point '" + g.points[i].id + "' of index " + std::to_string(g.points[i].index) +
              " comes after an index-" + std::to_string(g.points[i - 1].index) + " point");
      break;
    }

  for (const auto& [from, to] : g.connections) {
    auto pf = position.find(from), pt = position.find(to);
    if (pf == position.end() || pt == position.end()) {
      add("connection-dangling", from,
          "connection (" + from + ", " + to + ") references a missing point");
      continue;
    }
    if (pf->second >= pt->second)
      add("connection-order", from,
          "connection (" + from + ", " + to + ") does not respect the order");
  }

  // Bunch assignment: total on the spec's bunches, lands on a glued sink of
  // the bunch's own component, injectively per component.
  std::set<std::string> used_sinks;
  for (const auto& b : spec.bunches) {
    auto it = g.bunch_assignment.find(b.id);
    if (it == g.bunch_assignment.end()) {
      add("bunch-unassigned", b.id, "bunch '" + b.id + "' is not assigned a glued sink");
      continue;
    }
    auto pit = by_id.find(it->second);
    if (pit == by_id.end()) {
      add("bunch-dangling-sink", b.id,
          "bunch '" + b.id + "' assigned to missing point '" + it->second + "'");
      continue;
    }
    if (pit->second->role != PointRole::GluedSink)
      add("bunch-not-sink", b.id,
          "bunch '" + b.id + "' assigned to non-glued point '" + it->second + "'");
    if (pit->second->component != b.component)
      add("bunch-wrong-component", b.id,
          "bunch '" + b.id + "' assigned to a sink of component '" + pit->second->component +
              "'");
    if (!used_sinks.insert(it->second).second)
      add("bunch-shared-sink", b.id,
          "glued sink '" + it->second + "' serves more than one bunch");
  }
  for (const auto& [bid, sink] : g.bunch_assignment)
    if (std::none_of(spec.bunches.begin(), spec.bunches.end(),
                     [&bid](const Bunch& b) { return b.id == bid; }))
      add("bunch-unknown", bid, "assignment names unknown bunch '" + bid + "'");

  // Per-component arithmetic: glued sink count, the constraint system, and
  // connectedness of the index-<=1 skeleton.
  for (const auto& rc : regularize(spec)) {
    long long glued = 0;
    for (const auto& p : g.points)
      if (p.component == rc.source_component && p.role == PointRole::GluedSink) ++glued;
    if (glued != rc.glued_sinks)
      add("glued-count", rc.source_component,
          "component '" + rc.source_component + "' has " + std::to_string(glued) +
              " glued sinks, surgery produces " + std::to_string(rc.glued_sinks));

    PointCounts counts = witness_counts(g, rc);
    if (counts.lefschetz() != 0)
      add("lefschetz", rc.source_component,
          "component '" + rc.source_component + "' counts have alternating sum " +
              std::to_string(counts.lefschetz()));
    for (const auto& line : audit(rc, counts))
      add("constraint", rc.source_component, "component '" + rc.source_component + "': " + line);

    // Union-find over the component's points of index 0 and 1.
    std::vector<std::string> low;
    for (const auto& p : g.points)
      if (p.component == rc.source_component && p.index <= 1) low.push_back(p.id);
    std::map<std::string, std::string> parent;
    for (const auto& id : low) parent[id] = id;
    std::function<std::string(std::string)> find_root = [&](std::string v) {
      while (parent[v] != v) v = parent[v];
      return v;
    };
    for (const auto& [from, to] : g.connections)
      if (parent.count(from) && parent.count(to)) parent[find_root(from)] = find_root(to);
    std::set<std::string> roots;
    for (const auto& id : low) roots.insert(find_root(id));
    if (roots.size() > 1)
      add("skeleton-disconnected", rc.source_component,
          "component '" + rc.source_component + "' has a disconnected sink-saddle skeleton (" +
              std::to_string(roots.size()) + " pieces)");
  }

  return report;
}

// Assembles the template witness for a whole system, or reports that no
// template matches its shape. Supported shapes: every component either an
// orientable plus-side one or a minus-side pair (l1 = 2, l2 = 0); or the
// non-orientable-manifold shape (orientable attractors, every component
// plus-side with a single degree-2 bunch, exactly one of them
// non-orientable).
inline PhaseGraph assemble_witness(const SystemSpec& spec) {
  require_valid(spec);

  auto attached = [&spec](const ComponentSpec& c) {
    std::vector<std::string> ids;
    for (const auto* b : bunches_of_component(spec, c.id)) ids.push_back(b->id);
    return ids;
  };

  bool all_attractors_orientable = std::all_of(
      spec.attractors.begin(), spec.attractors.end(),
      [](const AttractorSpec& a) { return a.orientable; });
  long long nonorientable_components = std::count_if(
      spec.components.begin(), spec.components.end(),
      [](const ComponentSpec& c) { return !c.orientable; });
  bool twisted_shape =
      !spec.manifold_orientable && all_attractors_orientable && nonorientable_components == 1 &&
      std::all_of(spec.components.begin(), spec.components.end(), [](const ComponentSpec& c) {
        return c.side == Side::Plus && c.l2 == 1;
      });
  if (twisted_shape) {
    std::vector<std::string> comp_ids, bunch_ids;
    std::size_t twisted = 0;
    for (std::size_t i = 0; i < spec.components.size(); ++i) {
      comp_ids.push_back(spec.components[i].id);
      bunch_ids.push_back(attached(spec.components[i]).front());
      if (!spec.components[i].orientable) twisted = i;
    }
    return realize_nonorientable(static_cast<long long>(spec.components.size()), comp_ids,
                                 bunch_ids, twisted);
  }

  bool paired_shape = std::all_of(
      spec.components.begin(), spec.components.end(), [](const ComponentSpec& c) {
        return (c.side == Side::Plus && c.orientable) ||
               (c.side == Side::Minus && c.l1 == 2 && c.l2 == 0);
      });
  if (!paired_shape)
    throw Error(Errc::UnsupportedShape,
                "no witness template matches this system: components must be orientable "
                "plus-side pieces or minus-side pairs (l1 = 2, l2 = 0), or the system must "
                "have the twisted-bundle shape");

  PhaseGraph g;
  for (const auto& c : spec.components) {
    PhaseGraph part = c.side == Side::Plus ? realize_plus(c.l2, c.id, attached(c))
                                           : realize_minus_pair(c.id, attached(c));
    g.points.insert(g.points.end(), part.points.begin(), part.points.end());
    g.connections.insert(g.connections.end(), part.connections.begin(), part.connections.end());
    g.bunch_assignment.insert(part.bunch_assignment.begin(), part.bunch_assignment.end());
  }
  std::stable_sort(g.points.begin(), g.points.end(),
                   [](const FixedPoint& a, const FixedPoint& b) { return a.index < b.index; });
  return g;
}

}  // namespace bunchmin
