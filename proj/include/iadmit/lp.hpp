// Copyright 2026 The iadmit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "iadmit/error.hpp"
#include "iadmit/rational.hpp"

namespace iadmit::lp {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };
enum class Sense { kMaximize, kMinimize };
enum class Status { kOptimal, kInfeasible, kUnbounded };

struct Constraint {
  std::vector<Rational> coefficients;
  Relation relation = Relation::kLessEqual;
  Rational rhs;
};

struct LinearProgram {
  std::size_t num_variables = 0;
  std::vector<Constraint> constraints;
  std::vector<Rational> objective;
  Sense sense = Sense::kMaximize;
  std::vector<Rational> lower_bounds;                 // empty means all zero
  std::vector<std::optional<Rational>> upper_bounds;  // empty means none

  explicit LinearProgram(std::size_t n = 0, Sense s = Sense::kMaximize)
      : num_variables(n), objective(n, Rational(0)), sense(s),
        lower_bounds(n, Rational(0)), upper_bounds(n) {}

  void add(std::vector<Rational> coefficients, Relation relation, Rational rhs) {
    constraints.push_back({std::move(coefficients), relation, std::move(rhs)});
  }

  // Throws DomainError on dimension mismatch.
  void validate() const {
    if (objective.size() != num_variables) throw DomainError("objective has wrong length");
    if (!lower_bounds.empty() && lower_bounds.size() != num_variables) {
      throw DomainError("lower bounds have wrong length");
    }
    if (!upper_bounds.empty() && upper_bounds.size() != num_variables) {
      throw DomainError("upper bounds have wrong length");
    }
    for (std::size_t r = 0; r < constraints.size(); ++r) {
      if (constraints[r].coefficients.size() != num_variables) {
        throw DomainError("constraint row " + std::to_string(r) + " has " +
                          std::to_string(constraints[r].coefficients.size()) +
                          " coefficients, expected " + std::to_string(num_variables));
      }
    }
  }

  Rational lower(std::size_t j) const { return lower_bounds.empty() ? Rational(0) : lower_bounds[j]; }
  const std::optional<Rational>& upper(std::size_t j) const {
    static const std::optional<Rational> none;
    return upper_bounds.empty() ? none : upper_bounds[j];
  }

  // Exact feasibility test of a point against every row and bound.
  bool satisfied_by(const std::vector<Rational>& x) const {
    if (x.size() != num_variables) return false;
    for (std::size_t j = 0; j < num_variables; ++j) {
      if (x[j] < lower(j)) return false;
      if (upper(j) && x[j] > *upper(j)) return false;
    }
    for (const auto& c : constraints) {
      Rational lhs = 0;
      for (std::size_t j = 0; j < num_variables; ++j) lhs += c.coefficients[j] * x[j];
      switch (c.relation) {
        case Relation::kLessEqual:
          if (lhs > c.rhs) return false;
          break;
        case Relation::kEqual:
          if (lhs != c.rhs) return false;
          break;
        case Relation::kGreaterEqual:
          if (lhs < c.rhs) return false;
          break;
      }
    }
    return true;
  }

  Rational evaluate(const std::vector<Rational>& x) const {
    Rational v = 0;
    for (std::size_t j = 0; j < num_variables; ++j) v += objective[j] * x[j];
    return v;
  }
};

struct Outcome {
  Status status = Status::kInfeasible;
  Rational value;              // meaningful when optimal
  std::vector<Rational> point;  // meaningful when optimal
};

namespace detail {

// Dense two-phase tableau simplex with Bland's rule.
class Tableau {
 public:
  Tableau(std::vector<std::vector<Rational>> rows, std::vector<std::size_t> basis,
          std::size_t num_columns)
      : rows_(std::move(rows)), basis_(std::move(basis)), num_columns_(num_columns) {}

  // Maximizes cost . z over the current system. Columns flagged in
  // `forbidden` never enter. Returns false if unbounded.
  bool maximize(const std::vector<Rational>& cost, const std::vector<bool>& forbidden) {
    // reduced[j] = c_B . T_j - c_j
    std::vector<Rational> reduced(num_columns_ + 1, Rational(0));
    for (std::size_t j = 0; j <= num_columns_; ++j) {
      Rational acc = 0;
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (cost[basis_[r]] != 0 && rows_[r][j] != 0) acc += cost[basis_[r]] * rows_[r][j];
      }
      reduced[j] = j < num_columns_ ? acc - cost[j] : acc;
    }
    while (true) {
      std::size_t entering = num_columns_;
      for (std::size_t j = 0; j < num_columns_; ++j) {
        if (!forbidden[j] && reduced[j] < 0) {
          entering = j;
          break;
        }
      }
      if (entering == num_columns_) break;
      std::size_t leaving = rows_.size();
      Rational best_ratio;
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (rows_[r][entering] > 0) {
          Rational ratio = rows_[r][num_columns_] / rows_[r][entering];
          if (leaving == rows_.size() || ratio < best_ratio ||
              (ratio == best_ratio && basis_[r] < basis_[leaving])) {
            best_ratio = std::move(ratio);
            leaving = r;
          }
        }
      }
      if (leaving == rows_.size()) return false;
      pivot(leaving, entering);
      const Rational factor = reduced[entering];
      for (std::size_t j = 0; j <= num_columns_; ++j) {
        if (rows_[leaving][j] != 0) reduced[j] -= factor * rows_[leaving][j];
      }
    }
    return true;
  }

  void pivot(std::size_t row, std::size_t column) {
    auto& pr = rows_[row];
    const Rational inv = 1 / pr[column];
    for (auto& v : pr) {
      if (v != 0) v *= inv;
    }
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (r == row || rows_[r][column] == 0) continue;
      const Rational factor = rows_[r][column];
      for (std::size_t j = 0; j <= num_columns_; ++j) {
        if (pr[j] != 0) rows_[r][j] -= factor * pr[j];
      }
    }
    basis_[row] = column;
  }

  void drop_row(std::size_t row) {
    rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(row));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(row));
  }

  std::vector<Rational> solution() const {
    std::vector<Rational> z(num_columns_, Rational(0));
    for (std::size_t r = 0; r < rows_.size(); ++r) z[basis_[r]] = rows_[r][num_columns_];
    return z;
  }

  std::size_t num_rows() const { return rows_.size(); }
  std::size_t basic(std::size_t row) const { return basis_[row]; }
  const Rational& at(std::size_t row, std::size_t column) const { return rows_[row][column]; }

 private:
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> basis_;
  std::size_t num_columns_;
};

}  // namespace detail

// Exact optimum of `program`. Optimal points are re-verified against every
// constraint before being returned.
inline Outcome solve(const LinearProgram& input) {
  input.validate();
  LinearProgram program = input;
  for (auto& c : program.constraints) {
    for (auto& v : c.coefficients) v.canonicalize();
    c.rhs.canonicalize();
  }
  for (auto& v : program.objective) v.canonicalize();
  for (auto& v : program.lower_bounds) v.canonicalize();
  for (auto& v : program.upper_bounds) {
    if (v) v->canonicalize();
  }
  const std::size_t n = program.num_variables;

  // Shift x = lower + y with y >= 0; upper bounds become rows.
  struct Row {
    std::vector<Rational> a;
    Relation rel;
    Rational b;
  };
  std::vector<Row> rows;
  for (const auto& c : program.constraints) {
    Rational b = c.rhs;
    for (std::size_t j = 0; j < n; ++j) b -= c.coefficients[j] * program.lower(j);
    rows.push_back({c.coefficients, c.relation, std::move(b)});
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (const auto& ub = program.upper(j)) {
      std::vector<Rational> a(n, Rational(0));
      a[j] = 1;
      rows.push_back({std::move(a), Relation::kLessEqual, *ub - program.lower(j)});
    }
  }
  for (auto& row : rows) {
    if (row.b < 0) {
      for (auto& v : row.a) v = -v;
      row.b = -row.b;
      if (row.rel == Relation::kLessEqual) {
        row.rel = Relation::kGreaterEqual;
      } else if (row.rel == Relation::kGreaterEqual) {
        row.rel = Relation::kLessEqual;
      }
    }
  }

  // Column layout: y (n), slack/surplus (one per inequality), artificials.
  std::size_t num_slack = 0, num_art = 0;
  for (const auto& row : rows) {
    if (row.rel != Relation::kEqual) ++num_slack;
    if (row.rel != Relation::kLessEqual) ++num_art;
  }
  const std::size_t art_begin = n + num_slack;
  const std::size_t cols = art_begin + num_art;
  std::vector<std::vector<Rational>> tab(rows.size(), std::vector<Rational>(cols + 1, Rational(0)));
  std::vector<std::size_t> basis(rows.size());
  std::size_t next_slack = n, next_art = art_begin;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t j = 0; j < n; ++j) tab[r][j] = rows[r].a[j];
    tab[r][cols] = rows[r].b;
    switch (rows[r].rel) {
      case Relation::kLessEqual:
        tab[r][next_slack] = 1;
        basis[r] = next_slack++;
        break;
      case Relation::kGreaterEqual:
        tab[r][next_slack++] = -1;
        tab[r][next_art] = 1;
        basis[r] = next_art++;
        break;
      case Relation::kEqual:
        tab[r][next_art] = 1;
        basis[r] = next_art++;
        break;
    }
  }
  detail::Tableau tableau(std::move(tab), std::move(basis), cols);

  std::vector<bool> forbidden(cols, false);
  if (num_art > 0) {
    std::vector<Rational> phase1(cols, Rational(0));
    for (std::size_t j = art_begin; j < cols; ++j) phase1[j] = -1;
    tableau.maximize(phase1, forbidden);
    const auto z = tableau.solution();
    for (std::size_t j = art_begin; j < cols; ++j) {
      if (z[j] != 0) return Outcome{Status::kInfeasible, Rational(0), {}};
    }
    // Drive zero-level artificials out of the basis; drop redundant rows.
    for (std::size_t r = tableau.num_rows(); r-- > 0;) {
      if (tableau.basic(r) < art_begin) continue;
      std::size_t col = art_begin;
      for (std::size_t j = 0; j < art_begin; ++j) {
        if (tableau.at(r, j) != 0) {
          col = j;
          break;
        }
      }
      if (col == art_begin) {
        tableau.drop_row(r);
      } else {
        tableau.pivot(r, col);
      }
    }
    for (std::size_t j = art_begin; j < cols; ++j) forbidden[j] = true;
  }

  std::vector<Rational> phase2(cols, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    phase2[j] = program.sense == Sense::kMaximize ? program.objective[j] : -program.objective[j];
  }
  if (!tableau.maximize(phase2, forbidden)) return Outcome{Status::kUnbounded, Rational(0), {}};

  const auto z = tableau.solution();
  Outcome out{Status::kOptimal, Rational(0), std::vector<Rational>(n)};
  for (std::size_t j = 0; j < n; ++j) out.point[j] = program.lower(j) + z[j];
  out.value = program.evaluate(out.point);
  if (!program.satisfied_by(out.point)) {
    throw std::logic_error("simplex returned a point violating the program");
  }
  return out;
}

}  // namespace iadmit::lp
