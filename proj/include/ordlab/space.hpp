#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ordlab/ball.hpp"
#include "ordlab/solver.hpp"

// Finite approximations of the space of left-orderings: the full list of
// valid assignments per radius, the restriction map between consecutive
// radii, and per-assignment extension counts.

namespace ordlab {

struct DiagramLevel {
  int k = 0;
  Ball ball;
  std::vector<SignAssignment> assignments;
  bool truncated = false;
};

struct LevelDiagram {
  SearchMode mode = SearchMode::preorder;
  int k_max = 0;
  bool partial = false;                        // some level enumeration truncated
  std::optional<int> first_empty_level;
  std::vector<DiagramLevel> levels;            // levels[i] has k = i+1
  // restriction[i][j] = index at level k=i+1 of the restriction of
  // assignment j at level k=i+2.
  std::vector<std::vector<int>> restriction;
  // extension_counts[i][j] = number of level-(i+2) assignments restricting
  // to assignment j of level i+1; 0 marks assignments that die.
  std::vector<std::vector<int>> extension_counts;
};

struct ConstraintOutsideBall : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Restrict an assignment on `big` to the elements of `small` (element sets
/// nest by normal form).
inline SignAssignment restrict_assignment(const SignAssignment& a, const Ball& big,
                                          const Ball& small) {
  SignAssignment r;
  r.sign.assign(small.size(), 0);
  for (int id = 1; id < small.size(); ++id) {
    auto big_id = big.find(small.element(id).nf);
    if (!big_id)
      throw std::logic_error("smaller ball is not contained in larger ball");
    r.sign[id] = a.sign[*big_id];
  }
  return r;
}

inline LevelDiagram build_diagram(const WordBackend& backend, int k_max, SearchMode mode,
                                  long long enum_limit = 1'000'000,
                                  const BallOptions& ball_opt = {}) {
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  LevelDiagram d;
  d.mode = mode;
  d.k_max = k_max;
  for (int k = 1; k <= k_max; ++k) {
    Ball ball = build_ball(backend, k, ball_opt);
    EnumerationResult e = enumerate_orders(ball, mode, enum_limit);
    if (e.truncated) d.partial = true;
    if (e.assignments.empty() && !d.first_empty_level) d.first_empty_level = k;
    d.levels.push_back({k, std::move(ball), std::move(e.assignments), e.truncated});
  }
  for (int i = 0; i + 1 < k_max; ++i) {
    const DiagramLevel& low = d.levels[i];
    const DiagramLevel& high = d.levels[i + 1];
    std::map<std::vector<std::int8_t>, int> index;
    for (std::size_t j = 0; j < low.assignments.size(); ++j)
      index.emplace(low.assignments[j].sign, static_cast<int>(j));
    std::vector<int> map_down(high.assignments.size(), -1);
    std::vector<int> fibers(low.assignments.size(), 0);
    for (std::size_t j = 0; j < high.assignments.size(); ++j) {
      SignAssignment r = restrict_assignment(high.assignments[j], high.ball, low.ball);
      auto it = index.find(r.sign);
      if (it == index.end()) {
        if (!low.truncated)
          throw std::logic_error("restriction of a valid assignment not found at lower level");
        continue;
      }
      map_down[j] = it->second;
      ++fibers[it->second];
    }
    d.restriction.push_back(std::move(map_down));
    d.extension_counts.push_back(std::move(fibers));
  }
  return d;
}

/// Indices of the assignments satisfying every constraint (word, sign) on
/// one ball; a +1 constraint on w encodes the inequality 1 < w.
inline std::vector<int> filter_assignments(const Ball& ball, const WordBackend& backend,
                                           const std::vector<SignAssignment>& assignments,
                                           const std::vector<std::pair<Word, int>>& constraints) {
  std::vector<std::pair<ElemId, int>> wanted;
  for (const auto& [w, s] : constraints) {
    Word nf = backend.normal_form(w);
    if (nf.empty()) {
      // 1 < 1 and 1 > 1 are both false in every ordering.
      return {};
    }
    auto id = ball.find(nf);
    if (!id) throw ConstraintOutsideBall("constraint word lies outside the radius-" +
                                         std::to_string(ball.radius()) + " ball");
    wanted.emplace_back(*id, s);
  }
  std::vector<int> out;
  for (std::size_t j = 0; j < assignments.size(); ++j) {
    bool match = true;
    for (const auto& [id, s] : wanted)
      if (assignments[j].sign[id] != s) match = false;
    if (match) out.push_back(static_cast<int>(j));
  }
  return out;
}

/// Indices of level-k assignments satisfying every constraint (word, sign).
inline std::vector<int> neighborhood_query(const LevelDiagram& d, const WordBackend& backend,
                                           int k,
                                           const std::vector<std::pair<Word, int>>& constraints) {
  if (k < 1 || k > d.k_max) throw std::invalid_argument("level outside diagram");
  const DiagramLevel& level = d.levels[k - 1];
  return filter_assignments(level.ball, backend, level.assignments, constraints);
}

}  // namespace ordlab
