#pragma once

#include <optional>
#include <utility>
#include <variant>

#include "ordlab/coset_table.hpp"
#include "ordlab/presentation.hpp"
#include "ordlab/rewriting.hpp"

namespace ordlab {

/// A decided word problem: either a confluent rewriting system or a closed
/// coset table, together with the source presentation. Immutable once built;
/// normal_form is constant on group-equal words and idempotent.
class WordBackend {
 public:
  enum class Kind { rewriting, cosets };

  WordBackend(Presentation p, RewritingSystem rs)
      : pres_(std::move(p)), impl_(std::move(rs)) {}
  WordBackend(Presentation p, CosetTable ct)
      : pres_(std::move(p)), impl_(std::move(ct)) {}

  const Presentation& presentation() const { return pres_; }
  Kind kind() const {
    return std::holds_alternative<RewritingSystem>(impl_) ? Kind::rewriting : Kind::cosets;
  }
  const RewritingSystem* rewriting() const { return std::get_if<RewritingSystem>(&impl_); }
  const CosetTable* cosets() const { return std::get_if<CosetTable>(&impl_); }

  Word normal_form(const Word& w) const {
    if (const auto* rs = rewriting()) return rs->rewrite(w);
    return cosets()->normal_form(w);
  }

  bool is_identity(const Word& w) const { return normal_form(w).empty(); }

  bool equal(const Word& u, const Word& v) const {
    if (const auto* ct = cosets()) return ct->trace(u) == ct->trace(v);
    return normal_form(u) == normal_form(v);
  }

 private:
  Presentation pres_;
  std::variant<RewritingSystem, CosetTable> impl_;
};

struct BackendBudgets {
  KbOptions kb;
  TcOptions tc;
};

/// Outcome of the backend selection policy: Knuth-Bendix first, then
/// Todd-Coxeter; when both budgets run out the word problem stays undecided.
struct BackendResult {
  std::optional<WordBackend> backend;
  std::optional<KbFailure> kb_failure;
  bool tc_exhausted = false;

  bool ok() const { return backend.has_value(); }
};

inline BackendResult make_backend(const Presentation& p, const BackendBudgets& budgets = {}) {
  BackendResult result;
  KbResult kb = knuth_bendix(p, budgets.kb);
  if (kb.ok()) {
    result.backend.emplace(p, std::move(*kb.system));
    return result;
  }
  result.kb_failure = kb.failure;
  TcResult tc = todd_coxeter(p, budgets.tc);
  if (tc.ok()) {
    result.backend.emplace(p, std::move(*tc.table));
    return result;
  }
  result.tc_exhausted = true;
  return result;
}

}  // namespace ordlab
