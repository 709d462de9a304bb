#pragma once

#include <cassert>
#include <optional>
#include <queue>
#include <vector>

#include "ordlab/presentation.hpp"
#include "ordlab/word.hpp"

// HLT-style coset enumeration over the trivial subgroup, with immediate
// coincidence processing. Cosets are 1-based and coset 1 is the identity
// coset. On closure the table is compacted and each coset gets the
// shortlex-least BFS representative as its normal form.

namespace ordlab {

class CosetTable {
 public:
  CosetTable(int num_generators, std::vector<std::vector<int>> table)
      : num_generators_(num_generators), table_(std::move(table)) {
    build_representatives();
  }

  int num_generators() const { return num_generators_; }
  int num_cosets() const { return static_cast<int>(table_.size()) - 1; }
  bool closed() const { return true; }  // only closed tables are constructed

  /// Action of a signed generator on a coset (both 1-based, total).
  int act(int coset, Letter l) const { return table_[coset][l]; }

  int trace(const Word& w) const {
    int c = 1;
    for (Letter l : w.letters) c = table_[c][l];
    return c;
  }

  const Word& representative(int coset) const { return reps_[coset]; }

  Word normal_form(const Word& w) const { return reps_[trace(w)]; }

 private:
  void build_representatives() {
    reps_.assign(table_.size(), Word{});
    std::vector<bool> seen(table_.size(), false);
    std::queue<int> bfs;
    bfs.push(1);
    seen[1] = true;
    while (!bfs.empty()) {
      int c = bfs.front();
      bfs.pop();
      for (Letter l = 0; l < 2 * num_generators_; ++l) {
        int d = table_[c][l];
        if (seen[d]) continue;
        seen[d] = true;
        Word w = reps_[c];
        w.letters.push_back(l);
        reps_[d] = std::move(w);
        bfs.push(d);
      }
    }
  }

  int num_generators_;
  std::vector<std::vector<int>> table_;  // [coset][letter], row 0 unused
  std::vector<Word> reps_;
};

struct TcOptions {
  int max_cosets = 100000;  // total cosets defined, coincidences included
};

struct TcResult {
  std::optional<CosetTable> table;
  bool exhausted = false;
  int cosets_defined = 0;

  bool ok() const { return table.has_value(); }
};

namespace detail {

class TcEnumerator {
 public:
  TcEnumerator(const Presentation& p, const TcOptions& opt)
      : pres_(p), opt_(opt), nletters_(p.num_letters()) {
    table_.push_back({});  // row 0 unused
    rep_.push_back(0);
    new_coset();  // coset 1
  }

  TcResult run() {
    for (int c = 1; c < static_cast<int>(table_.size()); ++c) {
      if (!live(c)) continue;
      for (const Word& rel : pres_.relators) {
        if (!scan_and_fill(c, rel)) return exhausted_result();
        if (!live(c)) break;
      }
      if (!live(c)) continue;
      for (Letter l = 0; l < nletters_; ++l) {
        if (entry(c, l) == 0) {
          if (!define(c, l)) return exhausted_result();
        }
      }
    }
    return closed_result();
  }

 private:
  bool live(int c) const { return rep_[c] == c; }

  int find(int c) {
    while (rep_[c] != c) {
      rep_[c] = rep_[rep_[c]];
      c = rep_[c];
    }
    return c;
  }

  int entry(int c, Letter l) const { return table_[c][l]; }

  bool define(int c, Letter l) {
    if (defined_ >= opt_.max_cosets) return false;
    int n = new_coset();
    table_[c][l] = n;
    table_[n][inverse_letter(l)] = c;
    return true;
  }

  int new_coset() {
    ++defined_;
    table_.emplace_back(nletters_, 0);
    rep_.push_back(static_cast<int>(table_.size()) - 1);
    return static_cast<int>(table_.size()) - 1;
  }

  // Scan the relator cycle at coset c, defining cosets to fill gaps.
  // Returns false when the coset budget is exhausted.
  bool scan_and_fill(int c, const Word& rel) {
    while (true) {
      c = find(c);
      int f = c;
      std::size_t i = 0;
      while (i < rel.size() && entry(f, rel[i]) != 0) {
        f = find(entry(f, rel[i]));
        ++i;
      }
      if (i == rel.size()) {
        if (f != c) coincidence(f, c);
        return true;
      }
      int b = c;
      std::size_t j = rel.size();
      while (j > i && entry(b, inverse_letter(rel[j - 1])) != 0) {
        b = find(entry(b, inverse_letter(rel[j - 1])));
        --j;
      }
      if (j == i) {
        coincidence(f, b);
        return true;
      }
      if (j == i + 1) {
        // One gap left: deduction.
        table_[f][rel[i]] = b;
        table_[b][inverse_letter(rel[i])] = f;
        return true;
      }
      if (!define(f, rel[i])) return false;
    }
  }

  void merge(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    rep_[b] = a;
    dead_.push(b);
  }

  // Immediate coincidence processing: transplant the rows of dead cosets.
  void coincidence(int a, int b) {
    merge(a, b);
    while (!dead_.empty()) {
      int y = dead_.front();
      dead_.pop();
      for (Letter l = 0; l < nletters_; ++l) {
        int d = table_[y][l];
        if (d == 0) continue;
        table_[y][l] = 0;
        if (table_[d][inverse_letter(l)] == y) table_[d][inverse_letter(l)] = 0;
        int mu = find(y);
        int nu = find(d);
        if (table_[mu][l] != 0)
          merge(nu, table_[mu][l]);
        else if (table_[nu][inverse_letter(l)] != 0)
          merge(mu, table_[nu][inverse_letter(l)]);
        else {
          table_[mu][l] = nu;
          table_[nu][inverse_letter(l)] = mu;
        }
      }
    }
  }

  TcResult exhausted_result() {
    TcResult r;
    r.exhausted = true;
    r.cosets_defined = defined_;
    return r;
  }

  TcResult closed_result() {
    // Renumber live cosets 1..N in increasing old-index order.
    std::vector<int> newid(table_.size(), 0);
    int next = 0;
    for (int c = 1; c < static_cast<int>(table_.size()); ++c)
      if (live(c)) newid[c] = ++next;
    std::vector<std::vector<int>> compact(next + 1);
    compact[0] = {};
    for (int c = 1; c < static_cast<int>(table_.size()); ++c) {
      if (!live(c)) continue;
      std::vector<int> row(nletters_, 0);
      for (Letter l = 0; l < nletters_; ++l) {
        assert(table_[c][l] != 0);
        row[l] = newid[find(table_[c][l])];
      }
      compact[newid[c]] = std::move(row);
    }
    TcResult r;
    r.cosets_defined = defined_;
    r.table.emplace(pres_.num_generators(), std::move(compact));
    return r;
  }

  const Presentation& pres_;
  TcOptions opt_;
  int nletters_;
  std::vector<std::vector<int>> table_;
  std::vector<int> rep_;
  std::queue<int> dead_;
  int defined_ = 0;
};

}  // namespace detail

inline TcResult todd_coxeter(const Presentation& p, const TcOptions& opt = {}) {
  return detail::TcEnumerator(p, opt).run();
}

}  // namespace ordlab
