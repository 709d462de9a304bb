#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "ordlab/ball.hpp"
#include "ordlab/certificate.hpp"

// Sign-assignment search over a ball. One boolean variable per inverse pair
// (the partition condition is structural); each product triple contributes a
// ternary clause and, in pre-biorder mode, each conjugation triple a binary
// clause. The search is plain DPLL with unit propagation, a fixed branch
// order (unassigned pair with the smallest (length, shortlex) element,
// positive branch first) and deterministic propagation order, so outcomes
// and enumeration order are reproducible.
//
// On UNSAT the search itself yields the refutation tree: every assignment,
// decision or propagation, becomes a binary node; the side pruned by a unit
// propagation carries the conflict leaf of its reason clause. A final pass
// drops nodes whose pair no witness below depends on.

namespace ordlab {

enum class SearchMode { preorder, prebiorder };

/// A sign per non-identity ball element, indexed by element id; slot 0 is 0.
struct SignAssignment {
  std::vector<std::int8_t> sign;

  friend bool operator==(const SignAssignment&, const SignAssignment&) = default;
};

struct SolveStats {
  long long decisions = 0;
  long long propagations = 0;
};

struct SolverOptions {
  long long node_cap = 10'000'000;  // decision nodes
};

struct SearchOutcome {
  enum class Status { sat, unsat, undecided };

  Status status = Status::undecided;
  std::optional<SignAssignment> assignment;       // sat
  std::optional<RefutationCertificate> certificate;  // unsat
  SolveStats stats;
};

struct EnumerationResult {
  std::vector<SignAssignment> assignments;
  bool truncated = false;
  SolveStats stats;
};

/// Validity predicate used by tests and cone restriction: checks the sign
/// structure and every triple directly, independent of the search.
inline bool verify_assignment(const Ball& ball, const SignAssignment& a, SearchMode mode) {
  if (static_cast<int>(a.sign.size()) != ball.size()) return false;
  if (!a.sign.empty() && a.sign[0] != 0) return false;
  for (int id = 1; id < ball.size(); ++id) {
    if (a.sign[id] != 1 && a.sign[id] != -1) return false;
    if (a.sign[ball.element(id).inverse] != -a.sign[id]) return false;
  }
  for (const ProductTriple& t : ball.product_triples())
    if (a.sign[t.g] > 0 && a.sign[t.h] > 0 && a.sign[t.f] < 0) return false;
  if (mode == SearchMode::prebiorder)
    for (const ConjTriple& t : ball.conjugation_triples())
      if (a.sign[t.q] > 0 && a.sign[t.c] < 0) return false;
  return true;
}

namespace detail {

class DpllSolver {
 public:
  DpllSolver(const Ball& ball, SearchMode mode, const SolverOptions& opt)
      : ball_(ball), mode_(mode), opt_(opt) {
    var_of_.assign(ball.size(), -1);
    for (int id = 1; id < ball.size(); ++id) {
      const BallElement& e = ball.element(id);
      if (e.id < e.inverse) {
        var_of_[e.id] = static_cast<int>(pair_rep_.size());
        var_of_[e.inverse] = static_cast<int>(pair_rep_.size());
        pair_rep_.push_back(e.id);
      }
    }
    val_.assign(pair_rep_.size(), 0);
    build_clauses();
  }

  SolveStats stats() const { return stats_; }

  SearchOutcome solve() {
    SearchOutcome out;
    std::vector<int> all(clauses_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    SearchResult r = search(all);
    out.stats = stats_;
    if (budget_exceeded_) {
      out.status = SearchOutcome::Status::undecided;
    } else if (r.sat) {
      out.status = SearchOutcome::Status::sat;
      out.assignment = model_to_assignment();
    } else {
      out.status = SearchOutcome::Status::unsat;
      RefutationCertificate cert;
      cert.kind = mode_ == SearchMode::preorder ? CertKind::preorder : CertKind::prebiorder;
      cert.radius = ball_.radius();
      cert.tree = prune(std::move(r.tree));
      out.certificate = std::move(cert);
    }
    return out;
  }

  /// Visit every valid total assignment in branch order. The visitor returns
  /// false to stop early; the function returns false when stopped.
  bool enumerate(const std::function<bool(const SignAssignment&)>& visit) {
    std::vector<int> all(clauses_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    return enumerate_rec(all, visit);
  }

 private:
  struct Clause {
    std::vector<int> lits;  // lit = 2*var (rep positive) or 2*var+1 (rep negative)
    int product = -1;       // index into ball.product_triples()
    int conj = -1;          // index into ball.conjugation_triples()
    int n_true = 0;
    int n_false = 0;
  };

  struct PropRecord {
    int var;
    bool value;
    int reason;  // clause index
  };

  struct SearchResult {
    bool sat = false;
    std::unique_ptr<CertNode> tree;
  };

  int pos_lit(ElemId e) const {
    int v = var_of_[e];
    return 2 * v + (pair_rep_[v] == e ? 0 : 1);
  }

  void add_clause(std::vector<int> lits, int product, int conj) {
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    for (std::size_t i = 1; i < lits.size(); ++i)
      if (lits[i] == (lits[i - 1] ^ 1)) return;  // tautology
    Clause c;
    c.lits = std::move(lits);
    c.product = product;
    c.conj = conj;
    clauses_.push_back(std::move(c));
  }

  void build_clauses() {
    const auto& prods = ball_.product_triples();
    for (std::size_t i = 0; i < prods.size(); ++i) {
      const ProductTriple& t = prods[i];
      add_clause({pos_lit(t.g) ^ 1, pos_lit(t.h) ^ 1, pos_lit(t.f)},
                 static_cast<int>(i), -1);
    }
    if (mode_ == SearchMode::prebiorder) {
      const auto& conjs = ball_.conjugation_triples();
      for (std::size_t i = 0; i < conjs.size(); ++i) {
        const ConjTriple& t = conjs[i];
        add_clause({pos_lit(t.q) ^ 1, pos_lit(t.c)}, -1, static_cast<int>(i));
      }
    }
    occ_.assign(2 * pair_rep_.size(), {});
    for (std::size_t ci = 0; ci < clauses_.size(); ++ci)
      for (int lit : clauses_[ci].lits) occ_[lit].push_back(static_cast<int>(ci));
  }

  bool lit_true(int lit) const {
    std::int8_t v = val_[lit >> 1];
    return v != 0 && (v > 0) == ((lit & 1) == 0);
  }

  void assign(int var, bool value) {
    val_[var] = value ? 1 : -1;
    trail_.push_back(var);
    int sat_lit = 2 * var + (value ? 0 : 1);
    for (int ci : occ_[sat_lit]) ++clauses_[ci].n_true;
    for (int ci : occ_[sat_lit ^ 1]) ++clauses_[ci].n_false;
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      int var = trail_.back();
      trail_.pop_back();
      bool value = val_[var] > 0;
      int sat_lit = 2 * var + (value ? 0 : 1);
      for (int ci : occ_[sat_lit]) --clauses_[ci].n_true;
      for (int ci : occ_[sat_lit ^ 1]) --clauses_[ci].n_false;
      val_[var] = 0;
    }
  }

  // Process the worklist of possibly-changed clauses, applying unit
  // assignments until fixpoint. Returns the conflict clause or -1.
  int propagate(std::deque<int> work, std::vector<PropRecord>* props) {
    while (!work.empty()) {
      int ci = work.front();
      work.pop_front();
      Clause& c = clauses_[ci];
      if (c.n_true > 0) continue;
      int len = static_cast<int>(c.lits.size());
      if (c.n_false == len) return ci;
      if (c.n_false != len - 1) continue;
      int unit = -1;
      for (int lit : c.lits)
        if (val_[lit >> 1] == 0) unit = lit;
      if (unit < 0) continue;  // re-examined after the unit was already applied
      int var = unit >> 1;
      bool value = (unit & 1) == 0;
      assign(var, value);
      ++stats_.propagations;
      if (props) props->push_back({var, value, ci});
      for (int di : occ_[unit ^ 1]) work.push_back(di);
    }
    return -1;
  }

  std::unique_ptr<CertNode> leaf_from_clause(int ci) const {
    auto leaf = std::make_unique<CertNode>();
    const Clause& c = clauses_[ci];
    if (c.product >= 0) {
      const ProductTriple& t = ball_.product_triples()[c.product];
      leaf->witness.push_back({t.g, std::nullopt});
      leaf->witness.push_back({t.h, std::nullopt});
      leaf->witness.push_back({ball_.element(t.f).inverse, std::nullopt});
    } else {
      const ConjTriple& t = ball_.conjugation_triples()[c.conj];
      leaf->witness.push_back({t.q, t.g});
      leaf->witness.push_back({ball_.element(t.c).inverse, std::nullopt});
    }
    return leaf;
  }

  int first_unset_var() const {
    for (std::size_t v = 0; v < val_.size(); ++v)
      if (val_[v] == 0) return static_cast<int>(v);
    return -1;
  }

  SearchResult search(const std::vector<int>& dirty) {
    std::size_t mark = trail_.size();
    std::vector<PropRecord> props;
    int conflict = propagate({dirty.begin(), dirty.end()}, &props);

    SearchResult out;
    if (conflict >= 0) {
      out.tree = leaf_from_clause(conflict);
    } else if (trail_.size() == val_.size()) {
      out.sat = true;
      model_ = val_;
    } else {
      int v = first_unset_var();
      ++stats_.decisions;
      if (stats_.decisions > opt_.node_cap) {
        budget_exceeded_ = true;
      } else {
        std::size_t before = trail_.size();
        assign(v, true);
        SearchResult rpos = search(occ_[2 * v + 1]);
        if (rpos.sat) {
          undo_to(mark);
          return rpos;
        }
        undo_to(before);
        if (!budget_exceeded_) {
          assign(v, false);
          SearchResult rneg = search(occ_[2 * v]);
          if (rneg.sat) {
            undo_to(mark);
            return rneg;
          }
          undo_to(before);
          if (!budget_exceeded_) {
            auto node = std::make_unique<CertNode>();
            node->pair_rep = pair_rep_[v];
            node->pos = std::move(rpos.tree);
            node->neg = std::move(rneg.tree);
            out.tree = std::move(node);
          }
        }
      }
    }

    if (out.tree && !budget_exceeded_) {
      for (auto it = props.rbegin(); it != props.rend(); ++it) {
        auto node = std::make_unique<CertNode>();
        node->pair_rep = pair_rep_[it->var];
        auto pruned = leaf_from_clause(it->reason);
        if (it->value) {
          node->pos = std::move(out.tree);
          node->neg = std::move(pruned);
        } else {
          node->pos = std::move(pruned);
          node->neg = std::move(out.tree);
        }
        out.tree = std::move(node);
      }
    }
    undo_to(mark);
    return out;
  }

  bool enumerate_rec(const std::vector<int>& dirty,
                     const std::function<bool(const SignAssignment&)>& visit) {
    std::size_t mark = trail_.size();
    int conflict = propagate({dirty.begin(), dirty.end()}, nullptr);
    bool keep_going = true;
    if (conflict < 0) {
      if (trail_.size() == val_.size()) {
        model_ = val_;
        keep_going = visit(model_to_assignment());
      } else {
        int v = first_unset_var();
        std::size_t before = trail_.size();
        assign(v, true);
        keep_going = enumerate_rec(occ_[2 * v + 1], visit);
        undo_to(before);
        if (keep_going) {
          assign(v, false);
          keep_going = enumerate_rec(occ_[2 * v], visit);
          undo_to(before);
        }
      }
    }
    undo_to(mark);
    return keep_going;
  }

  SignAssignment model_to_assignment() const {
    SignAssignment a;
    a.sign.assign(ball_.size(), 0);
    for (std::size_t v = 0; v < pair_rep_.size(); ++v) {
      ElemId rep = pair_rep_[v];
      ElemId inv = ball_.element(rep).inverse;
      bool value = model_[v] > 0;
      a.sign[rep] = value ? 1 : -1;
      a.sign[inv] = value ? -1 : 1;
    }
    return a;
  }

  ElemId pair_of(ElemId e) const {
    return std::min(e, ball_.element(e).inverse);
  }

  bool subtree_uses(const CertNode& n, ElemId rep) const {
    if (n.is_leaf()) {
      for (const WitnessTerm& t : n.witness)
        if (pair_of(t.base) == rep) return true;
      return false;
    }
    return subtree_uses(*n.pos, rep) || subtree_uses(*n.neg, rep);
  }

  // Drop decision nodes no witness below depends on; the surviving side is a
  // complete refutation on its own.
  std::unique_ptr<CertNode> prune(std::unique_ptr<CertNode> n) {
    if (n->is_leaf()) return n;
    n->pos = prune(std::move(n->pos));
    n->neg = prune(std::move(n->neg));
    if (!subtree_uses(*n->pos, n->pair_rep)) return std::move(n->pos);
    if (!subtree_uses(*n->neg, n->pair_rep)) return std::move(n->neg);
    return n;
  }

  const Ball& ball_;
  SearchMode mode_;
  SolverOptions opt_;
  std::vector<ElemId> pair_rep_;
  std::vector<int> var_of_;
  std::vector<Clause> clauses_;
  std::vector<std::vector<int>> occ_;
  std::vector<std::int8_t> val_;
  std::vector<std::int8_t> model_;
  std::vector<int> trail_;
  SolveStats stats_;
  bool budget_exceeded_ = false;
};

inline SearchOutcome involution_outcome(const Ball& ball) {
  SearchOutcome out;
  out.status = SearchOutcome::Status::unsat;
  RefutationCertificate cert;
  cert.kind = CertKind::involution;
  cert.radius = ball.radius();
  cert.tree = std::make_unique<CertNode>();
  ElemId g = *ball.first_involution();
  cert.tree->witness.push_back({g, std::nullopt});
  cert.tree->witness.push_back({g, std::nullopt});
  out.certificate = std::move(cert);
  return out;
}

inline SearchOutcome run_search(const Ball& ball, SearchMode mode, const SolverOptions& opt) {
  if (ball.first_involution()) return involution_outcome(ball);
  DpllSolver solver(ball, mode, opt);
  return solver.solve();
}

}  // namespace detail

inline SearchOutcome find_preorder(const Ball& ball, const SolverOptions& opt = {}) {
  return detail::run_search(ball, SearchMode::preorder, opt);
}

inline SearchOutcome find_prebiorder(const Ball& ball, const SolverOptions& opt = {}) {
  return detail::run_search(ball, SearchMode::prebiorder, opt);
}

/// Stream every valid assignment in branch order; visitor returns false to stop.
inline void for_each_order(const Ball& ball, SearchMode mode,
                           const std::function<bool(const SignAssignment&)>& visit) {
  if (ball.first_involution()) return;
  detail::DpllSolver solver(ball, mode, SolverOptions{});
  solver.enumerate(visit);
}

/// All valid assignments in deterministic order, truncated at `limit`.
inline EnumerationResult enumerate_orders(const Ball& ball, SearchMode mode,
                                          long long limit) {
  EnumerationResult out;
  if (ball.first_involution()) return out;
  detail::DpllSolver solver(ball, mode, SolverOptions{});
  out.truncated = !solver.enumerate([&](const SignAssignment& a) {
    if (static_cast<long long>(out.assignments.size()) >= limit) return false;
    out.assignments.push_back(a);
    return true;
  });
  out.stats = solver.stats();
  return out;
}

}  // namespace ordlab
