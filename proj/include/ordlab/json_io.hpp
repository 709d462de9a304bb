#pragma once

#include <string>

#include <json.hpp>

#include "ordlab/ball.hpp"
#include "ordlab/certificate.hpp"
#include "ordlab/solver.hpp"
#include "ordlab/space.hpp"

// JSON views of the core data. All emitters use ordered_json with a fixed
// key order and the same dump settings, so identical inputs produce
// byte-identical text.

namespace ordlab {

using ojson = nlohmann::ordered_json;

inline std::string json_text(const ojson& j) { return j.dump(2) + "\n"; }

inline ojson ball_to_json(const Ball& ball, const Presentation& pres) {
  ojson j;
  j["radius"] = ball.radius();
  j["size"] = ball.size();
  ojson elems = ojson::array();
  for (const BallElement& e : ball.elements()) {
    ojson el;
    el["id"] = e.id;
    el["nf"] = word_to_string(e.nf, pres);
    el["length"] = e.length;
    el["inverse"] = e.inverse;
    elems.push_back(std::move(el));
  }
  j["elements"] = std::move(elems);
  j["product_triples"] = ball.product_triples().size();
  j["conjugation_triples"] = ball.conjugation_triples().size();
  return j;
}

inline ojson assignment_to_json(const SignAssignment& a, const Ball& ball,
                                const Presentation& pres) {
  ojson out = ojson::array();
  for (int id = 1; id < ball.size(); ++id) {
    ojson pair = ojson::array();
    pair.push_back(word_to_string(ball.element(id).nf, pres));
    pair.push_back(a.sign[id]);
    out.push_back(std::move(pair));
  }
  return out;
}

inline const char* outcome_status_name(SearchOutcome::Status s) {
  switch (s) {
    case SearchOutcome::Status::sat: return "sat";
    case SearchOutcome::Status::unsat: return "unsat";
    case SearchOutcome::Status::undecided: return "undecided";
  }
  return "?";
}

inline ojson outcome_to_json(const SearchOutcome& outcome, const Ball& ball,
                             const Presentation& pres) {
  ojson j;
  j["status"] = outcome_status_name(outcome.status);
  if (outcome.assignment)
    j["assignment"] = assignment_to_json(*outcome.assignment, ball, pres);
  if (outcome.certificate)
    j["certificate"] = certificate_to_json(*outcome.certificate, ball, pres);
  j["nodes"] = outcome.stats.decisions;
  j["propagations"] = outcome.stats.propagations;
  return j;
}

inline ojson diagram_to_json(const LevelDiagram& d, const Presentation& pres,
                             bool include_assignments) {
  ojson j;
  j["mode"] = d.mode == SearchMode::preorder ? "preorder" : "prebiorder";
  j["k_max"] = d.k_max;
  j["partial"] = d.partial;
  if (d.first_empty_level)
    j["first_empty_level"] = *d.first_empty_level;
  else
    j["first_empty_level"] = nullptr;
  ojson levels = ojson::array();
  for (const DiagramLevel& level : d.levels) {
    ojson lj;
    lj["k"] = level.k;
    lj["count"] = level.assignments.size();
    lj["truncated"] = level.truncated;
    if (include_assignments) {
      ojson as = ojson::array();
      for (const SignAssignment& a : level.assignments)
        as.push_back(assignment_to_json(a, level.ball, pres));
      lj["assignments"] = std::move(as);
    }
    levels.push_back(std::move(lj));
  }
  j["levels"] = std::move(levels);
  ojson rest = ojson::array();
  for (std::size_t i = 0; i < d.restriction.size(); ++i) {
    ojson rj;
    rj["from_k"] = static_cast<int>(i) + 2;
    rj["map"] = d.restriction[i];
    rj["extension_counts"] = d.extension_counts[i];
    rest.push_back(std::move(rj));
  }
  j["restrictions"] = std::move(rest);
  return j;
}

}  // namespace ordlab
