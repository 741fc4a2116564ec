#pragma once

// Per-component constraint systems over the fixed-point counts
// (C0, C1, C2, C3) of the regularized restriction, where Cj counts fixed
// points of unstable dimension j. Three system shapes exist:
//
//   plus side, orientable      Lefschetz, C1-C0 >= -1, C0 >= l2, C3 >= 1
//   minus side                 Lefschetz, C0 >= l1+2*l2, C1-C0 >= l1-2,
//                              C3 >= 2, and C1, C2, C3 even
//   plus side, non-orientable  the orientable rows plus C1 >= 1, C2 >= 1
//
// Minima are found twice on demand: exactly (simplex relaxation plus
// branch and bound, parity handled by substituting C = 2D) and by an
// exhaustive scan of a box, which serves as an independent oracle.

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "bunchmin/error.hpp"
#include "bunchmin/model.hpp"
#include "bunchmin/rational.hpp"
#include "bunchmin/regularize.hpp"
#include "bunchmin/simplex.hpp"

namespace bunchmin {

struct PointCounts {
  long long c0 = 0;
  long long c1 = 0;
  long long c2 = 0;
  long long c3 = 0;

  long long operator[](std::size_t i) const {
    return i == 0 ? c0 : i == 1 ? c1 : i == 2 ? c2 : c3;
  }
  long long total() const { return c0 + c1 + c2 + c3; }
  long long lefschetz() const { return c3 - c2 + c1 - c0; }
  bool operator==(const PointCounts&) const = default;
};

struct ConstraintSystem {
  std::vector<std::pair<Coeffs, Rat>> equalities;    // a . C == rhs
  std::vector<std::pair<Coeffs, Rat>> inequalities;  // a . C >= rhs
  std::array<bool, 4> even{};                        // parity requirements
  Coeffs objective{Rat(1), Rat(1), Rat(1), Rat(1)};
};

struct ComponentSolution {
  std::string component;
  PointCounts counts;
  long long regular_total = 0;
  long long isolated_for_f = 0;  // net of glued sinks, halved under a cover
};

struct Breakdown {
  long long sources = 0;
  long long saddles_index1 = 0;
  long long saddles_index2 = 0;
  long long sinks = 0;  // isolated sinks; zero at every optimum produced here
};

struct GlobalMinimum {
  long long total = 0;
  std::vector<ComponentSolution> per_component;
  Breakdown breakdown;
};

struct SolveOptions {
  bool use_oracle = false;            // exhaustive scan instead of simplex
  std::optional<long long> box;       // scan bound override
};

inline long long default_box(const RegularizedComponent& rc) {
  return 4 * (rc.l1 + rc.l2) + 12;
}

namespace detail {

inline Coeffs unit_coeffs(std::size_t j, int sign = 1) {
  Coeffs a{Rat(0), Rat(0), Rat(0), Rat(0)};
  a[j] = sign;
  return a;
}

inline Coeffs lefschetz_coeffs() {
  return Coeffs{Rat(-1), Rat(1), Rat(-1), Rat(1)};  // C3 - C2 + C1 - C0
}

}  // namespace detail

inline ConstraintSystem build_constraints(const RegularizedComponent& rc) {
  ConstraintSystem cs;
  cs.equalities.emplace_back(detail::lefschetz_coeffs(), Rat(0));
  if (rc.covered) {
    if (rc.l1 <= 0 || rc.l1 % 2 != 0)
      throw Error(Errc::InvalidSpec, "covered component '" + rc.source_component +
                                         "' needs a positive even l1, got " +
                                         std::to_string(rc.l1));
    cs.inequalities.emplace_back(detail::unit_coeffs(0), Rat(rc.l1 + 2 * rc.l2));
    Coeffs growth{Rat(-1), Rat(1), Rat(0), Rat(0)};  // C1 - C0
    cs.inequalities.emplace_back(growth, Rat(rc.l1 - 2));
    cs.inequalities.emplace_back(detail::unit_coeffs(3), Rat(2));
    cs.even = {false, true, true, true};
  } else {
    Coeffs growth{Rat(-1), Rat(1), Rat(0), Rat(0)};
    cs.inequalities.emplace_back(growth, Rat(-1));
    cs.inequalities.emplace_back(detail::unit_coeffs(0), Rat(rc.l2));
    cs.inequalities.emplace_back(detail::unit_coeffs(3), Rat(1));
    if (!rc.component_orientable) {
      cs.inequalities.emplace_back(detail::unit_coeffs(1), Rat(1));
      cs.inequalities.emplace_back(detail::unit_coeffs(2), Rat(1));
    }
  }
  return cs;
}

namespace detail {

// Transcribe the system into the integer-program row format with parity
// variables substituted by their halves (C = 2D keeps D a plain
// nonnegative integer and makes every branch-and-bound node parity-clean).
inline IntegerProgram substituted_program(const ConstraintSystem& cs) {
  IntegerProgram p;
  p.n = 4;
  auto subst = [&cs](const Coeffs& a) {
    std::vector<Rat> row(4);
    for (std::size_t j = 0; j < 4; ++j) row[j] = cs.even[j] ? a[j] * 2 : a[j];
    return row;
  };
  for (const auto& e : cs.equalities) p.eq.emplace_back(subst(e.first), e.second);
  for (const auto& g : cs.inequalities) p.ge.emplace_back(subst(g.first), g.second);
  p.objective = subst(cs.objective);
  return p;
}

inline PointCounts from_substituted(const ConstraintSystem& cs, const std::vector<BigInt>& y) {
  PointCounts out;
  out.c0 = to_ll(y[0]) * (cs.even[0] ? 2 : 1);
  out.c1 = to_ll(y[1]) * (cs.even[1] ? 2 : 1);
  out.c2 = to_ll(y[2]) * (cs.even[2] ? 2 : 1);
  out.c3 = to_ll(y[3]) * (cs.even[3] ? 2 : 1);
  return out;
}

}  // namespace detail

// Exact minimizer of the objective over the integer, parity-respecting
// feasible set; among optimizers, the lexicographically smallest by
// (C3, C2, C1, C0). The tie-break is resolved by pinning the objective to
// its optimum and minimizing C3, C2, C1, C0 in turn.
inline PointCounts solve_min(const ConstraintSystem& cs) {
  IntegerProgram prog = detail::substituted_program(cs);
  IpResult first = solve_ip(prog);
  if (first.status == LpStatus::Infeasible)
    throw Error(Errc::Infeasible, "constraint system is infeasible");
  if (first.status == LpStatus::Unbounded)
    throw Error(Errc::Unbounded, "objective is unbounded below on the feasible set");

  prog.eq.emplace_back(prog.objective, first.objective);
  std::vector<BigInt> pinned = first.x;
  for (std::size_t stage : {3u, 2u, 1u, 0u}) {
    std::vector<Rat> unit(4, Rat(0));
    unit[stage] = 1;
    prog.objective = unit;
    IpResult r = solve_ip(prog);
    if (r.status != LpStatus::Optimal)
      throw Error(Errc::Infeasible, "tie-break stage lost feasibility");  // unreachable
    pinned = r.x;
    prog.eq.emplace_back(unit, Rat(r.x[stage]));
  }
  return detail::from_substituted(cs, pinned);
}

namespace detail {

struct ScaledRow {
  std::array<long long, 4> a{};
  long long rhs = 0;
  bool is_eq = false;
};

inline ScaledRow scale_row(const Coeffs& a, const Rat& rhs, bool is_eq) {
  BigInt lcm = denominator(rhs);
  for (const auto& v : a) lcm = boost::multiprecision::lcm(lcm, denominator(v));
  ScaledRow row;
  row.is_eq = is_eq;
  for (std::size_t j = 0; j < 4; ++j) row.a[j] = to_ll(numerator(a[j] * lcm));
  row.rhs = to_ll(numerator(rhs * lcm));
  return row;
}

inline long long div_floor(long long a, long long b) {  // b > 0
  long long q = a / b;
  return (a % b != 0 && a < 0) ? q - 1 : q;
}

inline long long div_ceil(long long a, long long b) {  // b > 0
  long long q = a / b;
  return (a % b != 0 && a > 0) ? q + 1 : q;
}

}  // namespace detail

// Independent oracle: exhaustively scans the box [0, B]^4 for feasible
// count vectors and keeps the best under the same (objective, then
// lexicographic (C3, C2, C1, C0)) order as solve_min. Subtrees of the scan
// are skipped only when interval arithmetic on the remaining coordinates
// proves every completion infeasible, so the result set is exactly the
// feasible lattice points of the box.
inline PointCounts brute_force_min(const ConstraintSystem& cs, long long box) {
  if (box < 1) throw Error(Errc::InvalidSpec, "box bound must be at least 1");

  std::vector<detail::ScaledRow> rows;
  for (const auto& e : cs.equalities) rows.push_back(detail::scale_row(e.first, e.second, true));
  for (const auto& g : cs.inequalities)
    rows.push_back(detail::scale_row(g.first, g.second, false));

  // Attainable contribution of coordinates > d, each ranging over [0, box].
  const std::size_t nrows = rows.size();
  std::vector<std::array<long long, 4>> suf_min(nrows), suf_max(nrows);
  for (std::size_t r = 0; r < nrows; ++r) {
    long long lo = 0, hi = 0;
    suf_min[r][3] = suf_max[r][3] = 0;  // nothing beyond C3
    for (int d = 2; d >= 0; --d) {
      long long c = rows[r].a[static_cast<std::size_t>(d) + 1];
      lo += std::min(0LL, c * box);
      hi += std::max(0LL, c * box);
      suf_min[r][static_cast<std::size_t>(d)] = lo;
      suf_max[r][static_cast<std::size_t>(d)] = hi;
    }
  }

  std::array<long long, 4> x{};
  std::vector<long long> partial(nrows, 0);

  bool have_best = false;
  Rat best_obj = 0;
  PointCounts best;
  auto key = [](const PointCounts& c) { return std::make_tuple(c.c3, c.c2, c.c1, c.c0); };

  auto objective_of = [&cs](const std::array<long long, 4>& v) {
    Rat obj = 0;
    for (std::size_t j = 0; j < 4; ++j) obj += cs.objective[j] * v[j];
    return obj;
  };

  auto ok_at_depth = [&](std::size_t d) {
    for (std::size_t r = 0; r < nrows; ++r) {
      long long lo = partial[r] + suf_min[r][d];
      long long hi = partial[r] + suf_max[r][d];
      if (hi < rows[r].rhs) return false;
      if (rows[r].is_eq && lo > rows[r].rhs) return false;
    }
    return true;
  };

  const long long step0 = cs.even[0] ? 2 : 1;
  const long long step1 = cs.even[1] ? 2 : 1;
  const long long step2 = cs.even[2] ? 2 : 1;
  for (x[0] = 0; x[0] <= box; x[0] += step0) {
    for (std::size_t r = 0; r < nrows; ++r) partial[r] = rows[r].a[0] * x[0];
    if (!ok_at_depth(0)) continue;
    for (x[1] = 0; x[1] <= box; x[1] += step1) {
      for (std::size_t r = 0; r < nrows; ++r)
        partial[r] = rows[r].a[0] * x[0] + rows[r].a[1] * x[1];
      if (!ok_at_depth(1)) continue;
      for (x[2] = 0; x[2] <= box; x[2] += step2) {
        bool dead = false;
        long long lo3 = 0, hi3 = box;
        for (std::size_t r = 0; r < nrows && !dead; ++r) {
          long long p = rows[r].a[0] * x[0] + rows[r].a[1] * x[1] + rows[r].a[2] * x[2];
          partial[r] = p;
          long long c = rows[r].a[3];
          long long need = rows[r].rhs - p;
          if (rows[r].is_eq) {
            if (c == 0) {
              if (need != 0) dead = true;
            } else if (need % c != 0 || need / c < 0) {
              dead = true;
            } else {
              lo3 = std::max(lo3, need / c);
              hi3 = std::min(hi3, need / c);
            }
          } else {
            if (c == 0) {
              if (need > 0) dead = true;
            } else if (c > 0) {
              lo3 = std::max(lo3, detail::div_ceil(need, c));
            } else {
              hi3 = std::min(hi3, detail::div_floor(-need, -c));
            }
          }
        }
        if (dead || lo3 > hi3) continue;
        if (cs.even[3] && lo3 % 2 != 0) ++lo3;
        for (x[3] = lo3; x[3] <= hi3; x[3] += cs.even[3] ? 2 : 1) {
          PointCounts cand{x[0], x[1], x[2], x[3]};
          Rat obj = objective_of(x);
          if (!have_best || obj < best_obj || (obj == best_obj && key(cand) < key(best))) {
            have_best = true;
            best_obj = obj;
            best = cand;
          }
        }
      }
    }
  }
  if (!have_best)
    throw Error(Errc::EmptyBox, "empty box: no feasible point with coordinates <= " +
                                    std::to_string(box));
  return best;
}

// Evaluates the component's constraint system at a candidate and returns
// one line per violated row or parity requirement; empty means feasible.
inline std::vector<std::string> audit_counts(const ConstraintSystem& cs,
                                             const PointCounts& candidate) {
  std::vector<std::string> out;
  static const char* names[4] = {"C0", "C1", "C2", "C3"};

  auto render = [](const Coeffs& a, const char* rel, const Rat& rhs) {
    std::string s;
    for (int j = 3; j >= 0; --j) {  // print highest index first, as in C3 - C2 + ...
      const Rat& v = a[static_cast<std::size_t>(j)];
      if (v == 0) continue;
      if (s.empty())
        s += (v < 0 ? "-" : "");
      else
        s += (v < 0 ? " - " : " + ");
      Rat mag = v < 0 ? Rat(-v) : v;
      if (mag != 1) s += rat_str(mag) + "*";
      s += names[j];
    }
    if (s.empty()) s = "0";
    return s + " " + rel + " " + rat_str(rhs);
  };

  auto value_of = [&candidate](const Coeffs& a) {
    Rat v = 0;
    for (std::size_t j = 0; j < 4; ++j) v += a[j] * candidate[j];
    return v;
  };

  for (std::size_t j = 0; j < 4; ++j)
    if (candidate[j] < 0)
      out.push_back(std::string(names[j]) + " >= 0 violated: value " +
                    std::to_string(candidate[j]));
  for (const auto& e : cs.equalities) {
    Rat v = value_of(e.first);
    if (v != e.second)
      out.push_back(render(e.first, "=", e.second) + " violated: left side " + rat_str(v));
  }
  for (const auto& g : cs.inequalities) {
    Rat v = value_of(g.first);
    if (v < g.second)
      out.push_back(render(g.first, ">=", g.second) + " violated: left side " + rat_str(v));
  }
  for (std::size_t j = 0; j < 4; ++j)
    if (cs.even[j] && candidate[j] % 2 != 0)
      out.push_back(std::string(names[j]) + " must be even, got " +
                    std::to_string(candidate[j]));
  return out;
}

inline std::vector<std::string> audit(const RegularizedComponent& rc,
                                      const PointCounts& candidate) {
  return audit_counts(build_constraints(rc), candidate);
}

namespace detail {

inline PointCounts minimize_counts(const RegularizedComponent& rc, const ConstraintSystem& cs,
                                   const SolveOptions& opts) {
  if (opts.use_oracle) return brute_force_min(cs, opts.box.value_or(default_box(rc)));
  return solve_min(cs);
}

}  // namespace detail

// Optimal counts for one regularized component together with the number of
// isolated periodic points they charge to the original system: glued sinks
// are surgery artifacts and are removed, and points of a covered component
// appear twice in the cover, so the remainder is halved there.
inline ComponentSolution component_solution(const RegularizedComponent& rc,
                                            const SolveOptions& opts = {}) {
  ComponentSolution sol;
  sol.component = rc.source_component;
  sol.counts = detail::minimize_counts(rc, build_constraints(rc), opts);
  sol.regular_total = sol.counts.total();
  long long net = sol.regular_total - rc.glued_sinks;
  if (rc.covered) {
    if (net % 2 != 0)
      throw Error(Errc::InvalidSpec, "covered component '" + rc.source_component +
                                         "' has an odd doubled point count");
    sol.isolated_for_f = net / 2;
  } else {
    sol.isolated_for_f = net;
  }
  return sol;
}

// Minimum number of isolated periodic points over the whole system, with
// the per-component optima and the index breakdown they attribute back to
// the original map.
inline GlobalMinimum global_minimum(const SystemSpec& spec, const SolveOptions& opts = {}) {
  GlobalMinimum gm;
  for (const auto& rc : regularize(spec)) {
    ComponentSolution sol = component_solution(rc, opts);
    long long halve = rc.covered ? 2 : 1;
    gm.breakdown.sinks += (sol.counts.c0 - rc.glued_sinks) / halve;
    gm.breakdown.saddles_index1 += sol.counts.c1 / halve;
    gm.breakdown.saddles_index2 += sol.counts.c2 / halve;
    gm.breakdown.sources += sol.counts.c3 / halve;
    gm.total += sol.isolated_for_f;
    gm.per_component.push_back(std::move(sol));
  }
  return gm;
}

}  // namespace bunchmin
