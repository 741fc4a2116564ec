#pragma once

// Exact linear and integer programming over rationals, sized for the small
// dense systems this library produces (a handful of variables and rows).
//
// solve_lp: two-phase primal simplex with Bland's rule, so it terminates
// without any anti-cycling heuristics. solve_ip: depth-first branch and
// bound on the LP relaxation, branching on the lowest-index fractional
// variable. Everything is computed in exact rational arithmetic.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "bunchmin/error.hpp"
#include "bunchmin/rational.hpp"

namespace bunchmin {

enum class LpStatus { Optimal, Infeasible, Unbounded };

// minimize objective . x  subject to  eq rows a.x == rhs,
// ge rows a.x >= rhs, and x >= 0.
struct LinearProgram {
  std::size_t n = 0;
  std::vector<std::pair<std::vector<Rat>, Rat>> eq;
  std::vector<std::pair<std::vector<Rat>, Rat>> ge;
  std::vector<Rat> objective;
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<Rat> x;
  Rat objective = 0;
};

namespace detail {

class SimplexTableau {
 public:
  // Columns: structural 0..n-1, slacks, artificials; one artificial per row.
  SimplexTableau(const LinearProgram& p) : n_(p.n) {
    const std::size_t m = p.eq.size() + p.ge.size();
    const std::size_t n_slack = p.ge.size();
    n_total_ = n_ + n_slack;          // artificial columns appended below
    rows_.reserve(m);
    std::size_t slack = 0;
    for (const auto& r : p.eq) rows_.push_back(make_row(r.first, r.second, -1));
    for (const auto& r : p.ge) rows_.push_back(make_row(r.first, r.second, n_ + slack++));
    basis_.resize(rows_.size());
    art_base_ = n_total_;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      // Flip rows to a nonnegative right-hand side before adding artificials.
      if (rows_[i].back() < 0)
        for (auto& v : rows_[i]) v = -v;
      rows_[i].insert(rows_[i].end() - 1, rows_.size(), Rat(0));
      rows_[i][art_base_ + i] = 1;
      basis_[i] = art_base_ + i;
    }
    n_total_ += rows_.size();
  }

  // Phase 1: minimize the artificial sum; nonzero optimum means infeasible.
  bool phase1() {
    std::vector<Rat> cost(n_total_, Rat(0));
    for (std::size_t j = art_base_; j < n_total_; ++j) cost[j] = 1;
    if (run(cost) != LpStatus::Optimal) return false;  // cannot be unbounded
    Rat value = 0;
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (basis_[i] >= art_base_) value += rhs(i);
    if (value != 0) return false;
    evict_artificials();
    return true;
  }

  LpStatus phase2(const std::vector<Rat>& objective) {
    std::vector<Rat> cost(n_total_, Rat(0));
    for (std::size_t j = 0; j < n_ && j < objective.size(); ++j) cost[j] = objective[j];
    return run(cost);
  }

  std::vector<Rat> solution() const {
    std::vector<Rat> x(n_, Rat(0));
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (basis_[i] < n_) x[basis_[i]] = rhs(i);
    return x;
  }

 private:
  std::vector<Rat> make_row(const std::vector<Rat>& a, const Rat& b, long long slack_col) const {
    std::vector<Rat> row(n_total_ + 1, Rat(0));
    for (std::size_t j = 0; j < n_ && j < a.size(); ++j) row[j] = a[j];
    if (slack_col >= 0) row[static_cast<std::size_t>(slack_col)] = -1;  // a.x - s = rhs
    row.back() = b;
    return row;
  }

  Rat rhs(std::size_t i) const { return rows_[i].back(); }

  Rat reduced_cost(const std::vector<Rat>& cost, std::size_t j) const {
    Rat r = cost[j];
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (cost[basis_[i]] != 0) r -= cost[basis_[i]] * rows_[i][j];
    return r;
  }

  void pivot(std::size_t row, std::size_t col) {
    Rat p = rows_[row][col];
    for (auto& v : rows_[row]) v /= p;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == row || rows_[i][col] == 0) continue;
      Rat factor = rows_[i][col];
      for (std::size_t j = 0; j <= n_total_; ++j) rows_[i][j] -= factor * rows_[row][j];
    }
    basis_[row] = col;
  }

  // Bland's rule: entering = lowest-index column with negative reduced cost,
  // leaving = lowest basis index among minimum-ratio rows.
  LpStatus run(const std::vector<Rat>& cost) {
    for (;;) {
      std::size_t enter = n_total_;
      for (std::size_t j = 0; j < n_total_; ++j) {
        if (banned_artificials_ && j >= art_base_) break;
        if (reduced_cost(cost, j) < 0) {
          enter = j;
          break;
        }
      }
      if (enter == n_total_) return LpStatus::Optimal;
      std::size_t leave = rows_.size();
      Rat best_ratio = 0;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i][enter] <= 0) continue;
        Rat ratio = rhs(i) / rows_[i][enter];
        if (leave == rows_.size() || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == rows_.size()) return LpStatus::Unbounded;
      pivot(leave, enter);
    }
  }

  // After phase 1 every basic artificial sits at level zero: pivot it out on
  // any usable column, or drop the row as redundant if none exists.
  void evict_artificials() {
    for (std::size_t i = 0; i < rows_.size();) {
      if (basis_[i] < art_base_) {
        ++i;
        continue;
      }
      std::size_t col = n_total_;
      for (std::size_t j = 0; j < art_base_; ++j)
        if (rows_[i][j] != 0) {
          col = j;
          break;
        }
      if (col == n_total_) {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
        continue;
      }
      pivot(i, col);
      ++i;
    }
    banned_artificials_ = true;
  }

  std::size_t n_ = 0;
  std::size_t n_total_ = 0;
  std::size_t art_base_ = 0;
  bool banned_artificials_ = false;
  std::vector<std::vector<Rat>> rows_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

inline LpResult solve_lp(const LinearProgram& p) {
  detail::SimplexTableau tableau(p);
  LpResult res;
  if (!tableau.phase1()) {
    res.status = LpStatus::Infeasible;
    return res;
  }
  res.status = tableau.phase2(p.objective);
  if (res.status != LpStatus::Optimal) return res;
  res.x = tableau.solution();
  res.objective = 0;
  for (std::size_t j = 0; j < p.n && j < p.objective.size(); ++j)
    res.objective += p.objective[j] * res.x[j];
  return res;
}

// minimize objective . x  over  x >= 0 integer, same row format as above.
struct IntegerProgram {
  std::size_t n = 0;
  std::vector<std::pair<std::vector<Rat>, Rat>> eq;
  std::vector<std::pair<std::vector<Rat>, Rat>> ge;
  std::vector<Rat> objective;
};

struct IpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<BigInt> x;
  Rat objective = 0;
};

inline IpResult solve_ip(const IntegerProgram& p, std::size_t node_limit = 200000) {
  struct Node {
    std::vector<BigInt> lo;
    std::vector<std::optional<BigInt>> hi;
  };

  LinearProgram base;
  base.n = p.n;
  base.eq = p.eq;
  base.ge = p.ge;
  base.objective = p.objective;

  auto unit_row = [&p](std::size_t j, const Rat& sign) {
    std::vector<Rat> a(p.n, Rat(0));
    a[j] = sign;
    return a;
  };

  IpResult best;
  bool have_best = false;
  std::vector<Node> stack;
  stack.push_back(Node{std::vector<BigInt>(p.n, BigInt(0)),
                       std::vector<std::optional<BigInt>>(p.n)});
  std::size_t nodes = 0;
  bool root = true;
  while (!stack.empty()) {
    if (++nodes > node_limit)
      throw Error(Errc::Limit, "integer search exceeded the node limit");
    Node node = std::move(stack.back());
    stack.pop_back();

    LinearProgram lp = base;
    for (std::size_t j = 0; j < p.n; ++j) {
      if (node.lo[j] > 0) lp.ge.emplace_back(unit_row(j, 1), Rat(node.lo[j]));
      if (node.hi[j]) lp.ge.emplace_back(unit_row(j, -1), Rat(-*node.hi[j]));
    }
    LpResult rel = solve_lp(lp);
    if (rel.status == LpStatus::Unbounded) {
      if (root) return IpResult{LpStatus::Unbounded, {}, 0};
      // A bounded root relaxation keeps every subproblem bounded.
      throw Error(Errc::Unbounded, "unbounded subproblem below a bounded root");
    }
    root = false;
    if (rel.status == LpStatus::Infeasible) continue;
    if (have_best && rel.objective >= best.objective) continue;

    std::size_t frac = p.n;
    for (std::size_t j = 0; j < p.n; ++j)
      if (!is_integer(rel.x[j])) {
        frac = j;
        break;
      }
    if (frac == p.n) {
      best.status = LpStatus::Optimal;
      best.objective = rel.objective;
      best.x.assign(p.n, BigInt(0));
      for (std::size_t j = 0; j < p.n; ++j) best.x[j] = numerator(rel.x[j]);
      have_best = true;
      continue;
    }

    Node up = node;  // x_frac >= ceil
    up.lo[frac] = ceil_rat(rel.x[frac]);
    Node down = std::move(node);  // x_frac <= floor
    BigInt fl = floor_rat(rel.x[frac]);
    down.hi[frac] = down.hi[frac] ? std::min(*down.hi[frac], fl) : fl;
    stack.push_back(std::move(up));
    if (!(*down.hi[frac] < down.lo[frac])) stack.push_back(std::move(down));
  }
  return best;
}

}  // namespace bunchmin
