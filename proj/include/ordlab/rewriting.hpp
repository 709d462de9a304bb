#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "ordlab/presentation.hpp"
#include "ordlab/word.hpp"

// String rewriting over the doubled alphabet of signed generator letters.
//
// Completion runs over one homogeneous rule list that starts from the 2n
// inverse-cancellation rules a·a^-1 -> empty plus the oriented relators.
// Every rule is shortlex-decreasing, so rewriting terminates; confluence is
// reached when the critical-pair queue empties. The queue is processed in
// shortlex order of the overlap words and the system is interreduced after
// each new rule, which makes the completed system canonical for a given
// presentation.
//
// The cancellation rules that survive interreduction are kept apart from the
// proper rules in the public view: proper rules never contain an adjacent
// inverse pair on either side, while normal-form computation applies both
// groups.

namespace ordlab {

struct RewriteRule {
  Word lhs;
  Word rhs;

  friend bool operator==(const RewriteRule&, const RewriteRule&) = default;
};

class RewritingSystem {
 public:
  RewritingSystem(int num_generators, std::vector<RewriteRule> cancellation,
                  std::vector<RewriteRule> proper)
      : num_generators_(num_generators),
        cancellation_(std::move(cancellation)),
        proper_(std::move(proper)) {
    all_ = cancellation_;
    all_.insert(all_.end(), proper_.begin(), proper_.end());
  }

  int num_generators() const { return num_generators_; }
  bool confluent() const { return true; }  // only confluent systems are constructed

  /// Rules with no adjacent inverse pair on either side.
  const std::vector<RewriteRule>& rules() const { return proper_; }
  /// Surviving free-cancellation rules a·a^-1 -> empty.
  const std::vector<RewriteRule>& cancellation_rules() const { return cancellation_; }
  const std::vector<RewriteRule>& all_rules() const { return all_; }

  /// Unique normal form (leftmost-lowest redex strategy).
  Word rewrite(Word w) const {
    rewrite_to_normal_form(w.letters, all_);
    return w;
  }

  // Shared by completion: reduce `w` in place with the given rule list.
  static void rewrite_to_normal_form(std::vector<Letter>& w,
                                     const std::vector<RewriteRule>& rules) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t pos = 0; pos < w.size(); ++pos) {
        for (const RewriteRule& r : rules) {
          std::size_t n = r.lhs.size();
          if (n == 0 || pos + n > w.size()) continue;
          if (std::equal(r.lhs.letters.begin(), r.lhs.letters.end(), w.begin() + pos)) {
            std::vector<Letter> next;
            next.reserve(w.size() - n + r.rhs.size());
            next.insert(next.end(), w.begin(), w.begin() + pos);
            next.insert(next.end(), r.rhs.letters.begin(), r.rhs.letters.end());
            next.insert(next.end(), w.begin() + pos + n, w.end());
            w = std::move(next);
            changed = true;
            break;
          }
        }
        if (changed) break;
      }
    }
  }

 private:
  int num_generators_;
  std::vector<RewriteRule> cancellation_;
  std::vector<RewriteRule> proper_;
  std::vector<RewriteRule> all_;
};

struct KbOptions {
  int max_rules = 2000;  // proper rules, cancellation not counted
  int max_len = 50;      // cap on the lhs length of any derived rule
};

enum class KbFailure { rule_budget, length_budget };

struct KbResult {
  std::optional<RewritingSystem> system;
  std::optional<KbFailure> failure;
  int rules_added = 0;
  int pairs_processed = 0;

  bool ok() const { return system.has_value(); }
};

namespace detail {

struct KbRule {
  Word lhs;
  Word rhs;
  bool cancel = false;
  bool active = true;
};

// Pending equation, keyed by the overlap word that produced it.
struct KbEquation {
  Word key;
  Word lhs;
  Word rhs;

  friend bool operator<(const KbEquation& a, const KbEquation& b) {
    if (a.key != b.key) return shortlex_less(a.key, b.key);
    if (a.lhs != b.lhs) return shortlex_less(a.lhs, b.lhs);
    return shortlex_less(a.rhs, b.rhs);
  }
};

class KbCompletion {
 public:
  KbCompletion(const Presentation& p, const KbOptions& opt) : pres_(p), opt_(opt) {}

  KbResult run() {
    for (Letter l = 0; l < pres_.num_letters(); ++l) {
      Word lhs(std::vector<Letter>{l, inverse_letter(l)});
      add_rule(lhs, Word{}, /*cancel=*/true);
    }
    for (const Word& rel : pres_.relators)
      pending_.insert({rel, rel, Word{}});

    while (!pending_.empty()) {
      KbEquation eq = *pending_.begin();
      pending_.erase(pending_.begin());
      ++result_.pairs_processed;

      Word u = normalize(eq.lhs);
      Word v = normalize(eq.rhs);
      if (u == v) continue;
      if (shortlex_less(u, v)) std::swap(u, v);

      if (static_cast<int>(u.size()) > opt_.max_len)
        return fail(KbFailure::length_budget);
      if (proper_count_ + 1 > opt_.max_rules)
        return fail(KbFailure::rule_budget);
      add_rule(u, v, /*cancel=*/false);
    }

    std::vector<RewriteRule> cancel, proper;
    for (const KbRule& r : rules_) {
      if (!r.active) continue;
      (r.cancel ? cancel : proper).push_back({r.lhs, r.rhs});
    }
    std::sort(proper.begin(), proper.end(), [](const RewriteRule& a, const RewriteRule& b) {
      return shortlex_less(a.lhs, b.lhs);
    });
    result_.system.emplace(pres_.num_generators(), std::move(cancel), std::move(proper));
    return std::move(result_);
  }

 private:
  KbResult fail(KbFailure why) {
    result_.failure = why;
    return std::move(result_);
  }

  Word normalize(Word w) const {
    // Reduce against active rules only.
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t pos = 0; pos < w.size() && !changed; ++pos) {
        for (const KbRule& r : rules_) {
          if (!r.active) continue;
          std::size_t n = r.lhs.size();
          if (pos + n > w.size()) continue;
          if (std::equal(r.lhs.letters.begin(), r.lhs.letters.end(),
                         w.letters.begin() + pos)) {
            std::vector<Letter> next(w.letters.begin(), w.letters.begin() + pos);
            next.insert(next.end(), r.rhs.letters.begin(), r.rhs.letters.end());
            next.insert(next.end(), w.letters.begin() + pos + n, w.letters.end());
            w = Word(std::move(next));
            changed = true;
            break;
          }
        }
      }
    }
    return w;
  }

  void add_rule(Word lhs, Word rhs, bool cancel) {
    std::size_t id = rules_.size();
    rules_.push_back({std::move(lhs), std::move(rhs), cancel, true});
    if (!cancel) {
      ++proper_count_;
      ++result_.rules_added;
    }

    // Interreduce: requeue rules whose lhs became reducible, renormalize rhs.
    const Word& l = rules_[id].lhs;
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      if (i == id || !rules_[i].active) continue;
      if (contains_factor(rules_[i].lhs, l)) {
        rules_[i].active = false;
        if (!rules_[i].cancel) --proper_count_;
        pending_.insert({rules_[i].lhs, rules_[i].lhs, rules_[i].rhs});
      } else {
        Word nr = normalize(rules_[i].rhs);
        if (nr != rules_[i].rhs) rules_[i].rhs = std::move(nr);
      }
    }

    // Critical pairs of the new rule against every active rule (both roles).
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      if (!rules_[i].active) continue;
      overlap_pairs(rules_[id], rules_[i]);
      if (i != id) overlap_pairs(rules_[i], rules_[id]);
    }
  }

  static bool contains_factor(const Word& w, const Word& f) {
    if (f.size() > w.size()) return false;
    for (std::size_t pos = 0; pos + f.size() <= w.size(); ++pos)
      if (std::equal(f.letters.begin(), f.letters.end(), w.letters.begin() + pos))
        return true;
    return false;
  }

  // Push the critical pairs where a suffix of a.lhs equals a prefix of b.lhs,
  // and where b.lhs occurs inside a.lhs.
  void overlap_pairs(const detail::KbRule& a, const detail::KbRule& b) {
    const Word& la = a.lhs;
    const Word& lb = b.lhs;
    std::size_t maxk = std::min(la.size(), lb.size());
    for (std::size_t k = 1; k < maxk; ++k) {
      if (!std::equal(lb.letters.begin(), lb.letters.begin() + k,
                      la.letters.end() - k))
        continue;
      // Overlap word: la + lb[k:].
      std::vector<Letter> w(la.letters);
      w.insert(w.end(), lb.letters.begin() + k, lb.letters.end());
      // Via a: ra + lb[k:].  Via b: la[:-k] + rb.
      std::vector<Letter> u(a.rhs.letters);
      u.insert(u.end(), lb.letters.begin() + k, lb.letters.end());
      std::vector<Letter> v(la.letters.begin(), la.letters.end() - k);
      v.insert(v.end(), b.rhs.letters.begin(), b.rhs.letters.end());
      pending_.insert({Word(std::move(w)), Word(std::move(u)), Word(std::move(v))});
    }
    if (lb.size() <= la.size() && &a != &b) {
      for (std::size_t pos = 0; pos + lb.size() <= la.size(); ++pos) {
        if (!std::equal(lb.letters.begin(), lb.letters.end(), la.letters.begin() + pos))
          continue;
        std::vector<Letter> v(la.letters.begin(), la.letters.begin() + pos);
        v.insert(v.end(), b.rhs.letters.begin(), b.rhs.letters.end());
        v.insert(v.end(), la.letters.begin() + pos + lb.size(), la.letters.end());
        pending_.insert({la, a.rhs, Word(std::move(v))});
      }
    }
  }

  const Presentation& pres_;
  KbOptions opt_;
  std::vector<KbRule> rules_;
  std::set<KbEquation> pending_;
  int proper_count_ = 0;
  KbResult result_;
};

}  // namespace detail

inline KbResult knuth_bendix(const Presentation& p, const KbOptions& opt = {}) {
  return detail::KbCompletion(p, opt).run();
}

/// Direct critical-pair check of a completed system: every overlap of two
/// rules (cancellation included) must rewrite to a common descendant.
inline bool critical_pairs_join(const RewritingSystem& rs) {
  const auto& rules = rs.all_rules();
  auto nf = [&](std::vector<Letter> w) {
    RewritingSystem::rewrite_to_normal_form(w, rules);
    return w;
  };
  for (const RewriteRule& a : rules) {
    for (const RewriteRule& b : rules) {
      std::size_t maxk = std::min(a.lhs.size(), b.lhs.size());
      for (std::size_t k = 1; k < maxk; ++k) {
        if (!std::equal(b.lhs.letters.begin(), b.lhs.letters.begin() + k,
                        a.lhs.letters.end() - k))
          continue;
        std::vector<Letter> u(a.rhs.letters);
        u.insert(u.end(), b.lhs.letters.begin() + k, b.lhs.letters.end());
        std::vector<Letter> v(a.lhs.letters.begin(), a.lhs.letters.end() - k);
        v.insert(v.end(), b.rhs.letters.begin(), b.rhs.letters.end());
        if (nf(u) != nf(v)) return false;
      }
      if (&a != &b && b.lhs.size() <= a.lhs.size()) {
        for (std::size_t pos = 0; pos + b.lhs.size() <= a.lhs.size(); ++pos) {
          if (!std::equal(b.lhs.letters.begin(), b.lhs.letters.end(),
                          a.lhs.letters.begin() + pos))
            continue;
          std::vector<Letter> v(a.lhs.letters.begin(), a.lhs.letters.begin() + pos);
          v.insert(v.end(), b.rhs.letters.begin(), b.rhs.letters.end());
          v.insert(v.end(), a.lhs.letters.begin() + pos + b.lhs.size(),
                   a.lhs.letters.end());
          if (nf(a.rhs.letters) != nf(v)) return false;
        }
      }
    }
  }
  return true;
}

}  // namespace ordlab
