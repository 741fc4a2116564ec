#pragma once

// Domain model for systems whose non-trivial basic sets are expanding
// attractors of codimension 1 in dimension 3. An attractor is described
// by its bunches (degree 1 or 2); the complement of the attractor set
// splits into components that are either plus-side (sphere boundaries)
// or minus-side (projective-plane boundaries, always non-orientable).
//
// Values are immutable after construction and every operation is a pure
// function, so concurrent evaluation needs no synchronization.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "bunchmin/error.hpp"

namespace bunchmin {

enum class Side { Plus, Minus };

inline const char* side_name(Side s) { return s == Side::Plus ? "plus" : "minus"; }

// One bunch of an expanding attractor: the union of unstable manifolds of
// the boundary periodic points whose stable separatrices fall into a single
// complement component. Codimension-1 attractors in dimension 3 admit only
// degrees 1 and 2.
struct Bunch {
  std::string id;
  int degree = 2;              // 1 or 2
  std::string attractor;       // owning attractor id
  std::string component;       // component whose basin this bunch bounds
  long long period = 1;        // return time of the basin under the map
};

struct AttractorSpec {
  std::string id;
  bool orientable = true;      // true iff the attractor owns no degree-1 bunch
  std::vector<std::string> bunch_ids;
};

// A connected component of the complement of the attractor set.
// Minus-side components carry the degree-1 bunch basins and are always
// non-orientable; l1/l2 are the attached bunch counts by degree.
struct ComponentSpec {
  std::string id;
  Side side = Side::Plus;
  bool orientable = true;
  long long l1 = 0;
  long long l2 = 0;
};

struct SystemSpec {
  bool manifold_orientable = true;
  std::vector<AttractorSpec> attractors;
  std::vector<ComponentSpec> components;
  std::vector<Bunch> bunches;
};

struct Violation {
  std::string code;     // stable machine key
  std::string subject;  // offending identifier, empty for whole-spec checks
  std::string message;
};

using ValidationReport = std::vector<Violation>;

struct Totals {
  long long k1 = 0;  // degree-1 bunches in total
  long long k2 = 0;  // degree-2 bunches in total
  long long s = 0;   // number of complement components
};

inline const ComponentSpec* find_component(const SystemSpec& spec, const std::string& id) {
  for (const auto& c : spec.components)
    if (c.id == id) return &c;
  return nullptr;
}

inline const AttractorSpec* find_attractor(const SystemSpec& spec, const std::string& id) {
  for (const auto& a : spec.attractors)
    if (a.id == id) return &a;
  return nullptr;
}

// Bunches attached to one component, in spec order.
inline std::vector<const Bunch*> bunches_of_component(const SystemSpec& spec,
                                                      const std::string& component_id) {
  std::vector<const Bunch*> out;
  for (const auto& b : spec.bunches)
    if (b.component == component_id) out.push_back(&b);
  return out;
}

// Structural validation. Violations are data, not failures: the report is
// empty exactly when every invariant holds. Pure and idempotent.
inline ValidationReport validate(const SystemSpec& spec) {
  ValidationReport report;
  auto add = [&report](const std::string& code, const std::string& subject,
                       const std::string& message) {
    report.push_back(Violation{code, subject, message});
  };

  // Identifier hygiene: nonempty, unique per category.
  auto check_ids = [&add](const auto& items, const char* what) {
    std::set<std::string> seen;
    for (const auto& item : items) {
      if (item.id.empty())
        add("empty-id", "", std::string(what) + " with empty identifier");
      else if (!seen.insert(item.id).second)
        add("duplicate-id", item.id, std::string("duplicate ") + what + " id '" + item.id + "'");
    }
  };
  check_ids(spec.attractors, "attractor");
  check_ids(spec.components, "component");
  check_ids(spec.bunches, "bunch");

  // Per-bunch fields and references.
  std::map<std::string, std::string> owner_by_list;  // bunch id -> attractor listing it
  for (const auto& a : spec.attractors) {
    for (const auto& bid : a.bunch_ids) {
      auto [it, fresh] = owner_by_list.emplace(bid, a.id);
      if (!fresh)
        add("multiple-owners", bid,
            "bunch '" + bid + "' listed by attractors '" + it->second + "' and '" + a.id + "'");
    }
  }
  for (const auto& b : spec.bunches) {
    if (b.degree != 1 && b.degree != 2)
      add("bad-degree", b.id,
          "bunch '" + b.id + "' has degree " + std::to_string(b.degree) + ", must be 1 or 2");
    if (b.period < 1)
      add("bad-period", b.id, "bunch '" + b.id + "' has period " + std::to_string(b.period));
    const AttractorSpec* a = find_attractor(spec, b.attractor);
    if (!a) {
      add("dangling-attractor", b.id,
          "bunch '" + b.id + "' references missing attractor '" + b.attractor + "'");
    } else if (std::find(a->bunch_ids.begin(), a->bunch_ids.end(), b.id) == a->bunch_ids.end()) {
      add("unlisted-bunch", b.id,
          "bunch '" + b.id + "' is not listed by its attractor '" + b.attractor + "'");
    }
    if (!find_component(spec, b.component))
      add("dangling-component", b.id,
          "bunch '" + b.id + "' references missing component '" + b.component + "'");
  }

  // Per-attractor: listed bunches exist and agree on ownership; at least one
  // bunch; orientable exactly when no degree-1 bunch is owned.
  for (const auto& a : spec.attractors) {
    if (a.bunch_ids.empty())
      add("attractor-empty", a.id, "attractor '" + a.id + "' owns no bunches");
    bool has_degree1 = false;
    for (const auto& bid : a.bunch_ids) {
      auto it = std::find_if(spec.bunches.begin(), spec.bunches.end(),
                             [&bid](const Bunch& b) { return b.id == bid; });
      if (it == spec.bunches.end()) {
        add("dangling-bunch", a.id,
            "attractor '" + a.id + "' lists missing bunch '" + bid + "'");
        continue;
      }
      if (it->attractor != a.id)
        add("owner-mismatch", bid,
            "bunch '" + bid + "' listed by '" + a.id + "' but names attractor '" +
                it->attractor + "'");
      if (it->degree == 1) has_degree1 = true;
    }
    if (a.orientable && has_degree1)
      add("orientability-1bunch", a.id,
          "attractor '" + a.id + "' is marked orientable but owns a degree-1 bunch");
    if (!a.orientable && !has_degree1)
      add("orientability-no-1bunch", a.id,
          "attractor '" + a.id + "' is marked non-orientable but owns no degree-1 bunch");
  }

  // Per-component structure.
  for (const auto& c : spec.components) {
    long long n1 = 0, n2 = 0;
    for (const auto* b : bunches_of_component(spec, c.id)) {
      if (b->degree == 1) ++n1;
      if (b->degree == 2) ++n2;
    }
    if (c.l1 != n1 || c.l2 != n2)
      add("counts-mismatch", c.id,
          "component '" + c.id + "' declares l1=" + std::to_string(c.l1) + ", l2=" +
              std::to_string(c.l2) + " but has " + std::to_string(n1) + " degree-1 and " +
              std::to_string(n2) + " degree-2 bunches attached");
    if (c.side == Side::Minus && c.l1 <= 0)
      add("minus-without-1bunch", c.id,
          "minus-side component '" + c.id + "' must have attached degree-1 bunches");
    if (c.side == Side::Plus && c.l1 > 0)
      add("plus-with-1bunch", c.id,
          "plus-side component '" + c.id + "' cannot have degree-1 bunches");
    if (c.side == Side::Minus && c.l1 % 2 != 0)
      add("l1-odd", c.id,
          "component '" + c.id + "' has l1=" + std::to_string(c.l1) + "; l1 must be even");
    if (c.side == Side::Minus && c.orientable)
      add("minus-orientable", c.id,
          "minus-side component '" + c.id + "' must be non-orientable");
    if (c.l1 + c.l2 < 1)
      add("component-empty", c.id, "component '" + c.id + "' touches no bunch basin");
  }

  if (spec.bunches.empty()) add("no-bunches", "", "system has no bunches (k1 + k2 = 0)");

  bool all_attractors_orientable =
      std::all_of(spec.attractors.begin(), spec.attractors.end(),
                  [](const AttractorSpec& a) { return a.orientable; });
  bool some_component_nonorientable =
      std::any_of(spec.components.begin(), spec.components.end(),
                  [](const ComponentSpec& c) { return !c.orientable; });
  if (!spec.manifold_orientable && all_attractors_orientable && !spec.attractors.empty() &&
      !some_component_nonorientable)
    add("missing-nonorientable-component", "",
        "non-orientable manifold with orientable attractors requires a non-orientable component");
  if (spec.manifold_orientable)
    for (const auto& c : spec.components)
      if (c.side == Side::Plus && !c.orientable)
        add("nonorientable-plus-in-orientable-manifold", c.id,
            "component '" + c.id + "' is a non-orientable plus-side piece of an orientable manifold");

  return report;
}

inline bool is_valid(const SystemSpec& spec) { return validate(spec).empty(); }

// Throws Errc::InvalidSpec carrying the first few violation messages.
inline void require_valid(const SystemSpec& spec) {
  ValidationReport report = validate(spec);
  if (report.empty()) return;
  std::string what = "invalid system:";
  std::size_t shown = 0;
  for (const auto& v : report) {
    if (shown++ == 4) {
      what += " ...";
      break;
    }
    what += " [" + v.code + "] " + v.message + ";";
  }
  throw Error(Errc::InvalidSpec, what);
}

// Bunch totals by degree plus the component count. Rejects invalid systems.
inline Totals totals(const SystemSpec& spec) {
  require_valid(spec);
  Totals t;
  for (const auto& b : spec.bunches) (b.degree == 1 ? t.k1 : t.k2)++;
  t.s = static_cast<long long>(spec.components.size());
  return t;
}

}  // namespace bunchmin
