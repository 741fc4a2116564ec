#pragma once

// Transition bookkeeping from a system with expanding attractors to a
// regular one: minus-side components are replaced by their orientation
// double cover, whose boundary consists of spheres only, and every
// boundary sphere is capped by a disk around a new sink. Only the count
// consequences of that surgery are modeled; the covering maps themselves
// are not represented.

#include <numeric>
#include <string>
#include <vector>

#include "bunchmin/error.hpp"
#include "bunchmin/model.hpp"

namespace bunchmin {

enum class OrbitBundle { ProductBundle, TwistedBundle };

// Orbit space of a sink basin cycle: a product sphere bundle when the
// return map preserves orientation, the twisted bundle when it reverses it.
// The period does not enter the classification.
inline OrbitBundle orbit_space_orientation(long long /*period*/, bool reverses) {
  return reverses ? OrbitBundle::TwistedBundle : OrbitBundle::ProductBundle;
}

// Per-component result of the surgery. A plus-side component keeps its l2
// sphere boundaries; a minus-side component is double covered, so each
// projective-plane boundary lifts to one sphere and each sphere boundary
// to two, giving l1 + 2*l2 spheres. One sink is glued per sphere.
struct RegularizedComponent {
  std::string source_component;
  bool covered = false;          // a double cover was taken (minus side)
  long long boundary_spheres = 0;
  long long glued_sinks = 0;     // always equals boundary_spheres
  long long l1 = 0;
  long long l2 = 0;
  bool component_orientable = true;
  std::vector<long long> cycle_periods;  // per glued sink, original basin period
};

// bunch_periods carries one entry per attached basin: the l1 degree-1
// periods first, then the l2 degree-2 periods. On the minus side a
// degree-2 basin lifts to two spheres; both lifted spheres keep the
// original period, which is count-neutral because all estimates are
// taken on the iterate that fixes every basin.
inline RegularizedComponent regularize_component(const ComponentSpec& c,
                                                 const std::vector<long long>& bunch_periods) {
  if (static_cast<long long>(bunch_periods.size()) != c.l1 + c.l2)
    throw Error(Errc::InvalidSpec,
                "component '" + c.id + "': expected " + std::to_string(c.l1 + c.l2) +
                    " basin periods, got " + std::to_string(bunch_periods.size()));
  for (long long p : bunch_periods)
    if (p < 1)
      throw Error(Errc::InvalidSpec, "component '" + c.id + "': basin period must be positive");

  RegularizedComponent rc;
  rc.source_component = c.id;
  rc.covered = (c.side == Side::Minus);
  rc.l1 = c.l1;
  rc.l2 = c.l2;
  rc.component_orientable = c.orientable;
  rc.boundary_spheres = rc.covered ? c.l1 + 2 * c.l2 : c.l2;
  rc.glued_sinks = rc.boundary_spheres;
  if (rc.covered) {
    for (long long i = 0; i < c.l1; ++i) rc.cycle_periods.push_back(bunch_periods[i]);
    for (long long i = 0; i < c.l2; ++i) {
      rc.cycle_periods.push_back(bunch_periods[c.l1 + i]);
      rc.cycle_periods.push_back(bunch_periods[c.l1 + i]);
    }
  } else {
    for (long long i = 0; i < c.l2; ++i) rc.cycle_periods.push_back(bunch_periods[c.l1 + i]);
  }
  return rc;
}

// One descriptor per component, in input order. The total number of glued
// sinks is sum(l2) over plus components plus sum(l1 + 2*l2) over minus ones.
inline std::vector<RegularizedComponent> regularize(const SystemSpec& spec) {
  require_valid(spec);
  std::vector<RegularizedComponent> out;
  out.reserve(spec.components.size());
  for (const auto& c : spec.components) {
    std::vector<long long> periods;
    for (const auto* b : bunches_of_component(spec, c.id))
      if (b->degree == 1) periods.push_back(b->period);
    for (const auto* b : bunches_of_component(spec, c.id))
      if (b->degree == 2) periods.push_back(b->period);
    out.push_back(regularize_component(c, periods));
  }
  return out;
}

inline long long total_glued_sinks(const std::vector<RegularizedComponent>& rcs) {
  return std::accumulate(rcs.begin(), rcs.end(), 0LL,
                         [](long long acc, const RegularizedComponent& rc) {
                           return acc + rc.glued_sinks;
                         });
}

}  // namespace bunchmin
