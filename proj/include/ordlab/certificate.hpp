#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "ordlab/ball.hpp"
#include "ordlab/presentation.hpp"

// Refutation certificates. A certificate is a binary decision tree over
// inverse pairs of ball elements. Each internal node decides one pair (named
// by its positive representative); each leaf carries a witness: a sequence
// of terms, each a ball element optionally conjugated, all of which are
// positive along the path to the leaf, whose product normalizes to the
// identity. Such a tree rules out every sign choice at once.
//
// The checker rebuilds leaf products through the word-problem backend only;
// it never consults the search that produced the certificate.

namespace ordlab {

enum class CertKind { preorder, prebiorder, involution };

inline const char* cert_kind_name(CertKind k) {
  switch (k) {
    case CertKind::preorder: return "preorder";
    case CertKind::prebiorder: return "prebiorder";
    case CertKind::involution: return "involution";
  }
  return "?";
}

inline std::optional<CertKind> cert_kind_from_name(const std::string& s) {
  if (s == "preorder") return CertKind::preorder;
  if (s == "prebiorder") return CertKind::prebiorder;
  if (s == "involution") return CertKind::involution;
  return std::nullopt;
}

/// base, or conjugator^-1 * base * conjugator when a conjugator is present.
struct WitnessTerm {
  ElemId base = 0;
  std::optional<ElemId> conjugator;

  friend bool operator==(const WitnessTerm&, const WitnessTerm&) = default;
};

struct CertNode {
  // Internal node: pair_rep >= 0 and both children set. Leaf: witness only.
  ElemId pair_rep = -1;
  std::unique_ptr<CertNode> pos;
  std::unique_ptr<CertNode> neg;
  std::vector<WitnessTerm> witness;

  bool is_leaf() const { return !pos; }

  std::unique_ptr<CertNode> clone() const {
    auto n = std::make_unique<CertNode>();
    n->pair_rep = pair_rep;
    n->witness = witness;
    if (pos) n->pos = pos->clone();
    if (neg) n->neg = neg->clone();
    return n;
  }
};

struct RefutationCertificate {
  CertKind kind = CertKind::preorder;
  int radius = 0;
  std::unique_ptr<CertNode> tree;

  RefutationCertificate clone() const {
    return {kind, radius, tree ? tree->clone() : nullptr};
  }
};

namespace detail {

// Signs chosen along the current root-to-leaf path, keyed by pair
// representative id; true = representative positive.
using PathSigns = std::map<ElemId, bool>;

inline bool term_path_positive(const Ball& ball, const WitnessTerm& t,
                               const PathSigns& path) {
  const BallElement& e = ball.element(t.base);
  ElemId rep = std::min(e.id, e.inverse);
  auto it = path.find(rep);
  if (it == path.end()) return false;
  return it->second == (e.id == rep);
}

inline Word expand_witness(const Ball& ball, const std::vector<WitnessTerm>& witness) {
  Word product;
  for (const WitnessTerm& t : witness) {
    Word term = ball.element(t.base).nf;
    if (t.conjugator) {
      const Word& c = ball.element(*t.conjugator).nf;
      term = concat(concat(invert(c), term), c);
    }
    product = concat(product, term);
  }
  return product;
}

inline bool check_node(const WordBackend& backend, const Ball& ball, CertKind kind,
                       const CertNode& node, PathSigns& path) {
  if (node.is_leaf()) {
    if (node.witness.empty()) return false;
    if (node.neg || node.pair_rep >= 0) return false;
    for (const WitnessTerm& t : node.witness) {
      if (t.base < 0 || t.base >= ball.size()) throw std::out_of_range("witness base id");
      if (t.conjugator && (*t.conjugator < 0 || *t.conjugator >= ball.size()))
        throw std::out_of_range("witness conjugator id");
      if (t.base == 0) return false;  // identity cannot witness positivity
      if (kind == CertKind::preorder && t.conjugator) return false;
      if (kind != CertKind::involution && !term_path_positive(ball, t, path)) return false;
    }
    return backend.is_identity(expand_witness(ball, node.witness));
  }
  if (!node.pos || !node.neg) return false;
  if (node.pair_rep < 0 || node.pair_rep >= ball.size())
    throw std::out_of_range("decision pair id");
  if (node.pair_rep == 0) return false;
  const BallElement& rep = ball.element(node.pair_rep);
  if (std::min(rep.id, rep.inverse) != node.pair_rep) return false;  // not the pair rep
  if (path.count(node.pair_rep)) return false;  // pair decided twice on path
  path[node.pair_rep] = true;
  bool ok = check_node(backend, ball, kind, *node.pos, path);
  path[node.pair_rep] = false;
  ok = ok && check_node(backend, ball, kind, *node.neg, path);
  path.erase(node.pair_rep);
  return ok;
}

}  // namespace detail

/// Independent verification: structural validity, path-positivity of every
/// witness term, and identity leaf products via normal forms alone.
inline bool check_certificate(const WordBackend& backend, const Ball& ball,
                              const RefutationCertificate& cert) {
  if (!cert.tree) return false;
  if (cert.radius != ball.radius()) return false;
  if (cert.kind == CertKind::involution) {
    const CertNode& n = *cert.tree;
    if (!n.is_leaf() || n.witness.size() != 2) return false;
    if (n.witness[0].conjugator || n.witness[1].conjugator) return false;
    if (n.witness[0].base != n.witness[1].base) return false;
    ElemId g = n.witness[0].base;
    if (g < 0 || g >= ball.size()) throw std::out_of_range("witness base id");
    if (g == 0) return false;
    if (ball.element(g).inverse != g) return false;
    return backend.is_identity(detail::expand_witness(ball, n.witness));
  }
  detail::PathSigns path;
  return detail::check_node(backend, ball, cert.kind, *cert.tree, path);
}

// ---- JSON serialization ----------------------------------------------------
//
// Certificates serialize with normal-form strings instead of element ids so
// they stay meaningful across runs; ids are resolved against a ball at check
// time. Key order is fixed: kind, radius, group, tree; tree nodes are either
// {pair, pos, neg} or {witness: [{base, conj?}]}.

namespace detail {

inline nlohmann::ordered_json cert_node_to_json(const CertNode& node, const Ball& ball,
                                                const Presentation& pres) {
  nlohmann::ordered_json j;
  if (node.is_leaf()) {
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const WitnessTerm& t : node.witness) {
      nlohmann::ordered_json term;
      term["base"] = word_to_string(ball.element(t.base).nf, pres);
      if (t.conjugator)
        term["conj"] = word_to_string(ball.element(*t.conjugator).nf, pres);
      terms.push_back(std::move(term));
    }
    j["witness"] = std::move(terms);
    return j;
  }
  j["pair"] = word_to_string(ball.element(node.pair_rep).nf, pres);
  j["pos"] = cert_node_to_json(*node.pos, ball, pres);
  j["neg"] = cert_node_to_json(*node.neg, ball, pres);
  return j;
}

}  // namespace detail

inline nlohmann::ordered_json certificate_to_json(const RefutationCertificate& cert,
                                                  const Ball& ball,
                                                  const Presentation& pres) {
  nlohmann::ordered_json j;
  j["kind"] = cert_kind_name(cert.kind);
  j["radius"] = cert.radius;
  j["group"] = serialize_presentation(pres);
  j["tree"] = detail::cert_node_to_json(*cert.tree, ball, pres);
  return j;
}

struct CertificateFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Structurally parsed certificate; element names still unresolved.
struct ParsedCertificate {
  CertKind kind = CertKind::preorder;
  int radius = 0;
  std::string group_text;
  nlohmann::json tree;
};

inline ParsedCertificate parse_certificate_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw CertificateFormatError(std::string("invalid certificate JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind") || !j.contains("radius") ||
      !j.contains("group") || !j.contains("tree"))
    throw CertificateFormatError("certificate JSON missing required keys");
  ParsedCertificate c;
  if (!j["kind"].is_string())
    throw CertificateFormatError("certificate kind must be a string");
  auto kind = cert_kind_from_name(j["kind"].get<std::string>());
  if (!kind) throw CertificateFormatError("unknown certificate kind");
  c.kind = *kind;
  if (!j["radius"].is_number_integer())
    throw CertificateFormatError("certificate radius must be an integer");
  c.radius = j["radius"].get<int>();
  if (c.radius < 1) throw CertificateFormatError("certificate radius must be >= 1");
  if (!j["group"].is_string())
    throw CertificateFormatError("certificate group must be a string");
  c.group_text = j["group"].get<std::string>();
  c.tree = j["tree"];
  return c;
}

namespace detail {

inline std::unique_ptr<CertNode> resolve_cert_node(const nlohmann::json& j,
                                                   const Presentation& pres,
                                                   const Ball& ball, bool& ok) {
  auto node = std::make_unique<CertNode>();
  if (!j.is_object()) {
    ok = false;
    return node;
  }
  auto lookup = [&](const nlohmann::json& s) -> std::optional<ElemId> {
    if (!s.is_string()) return std::nullopt;
    Word w;
    try {
      w = parse_word(pres, s.get<std::string>());
    } catch (const ParseError&) {
      return std::nullopt;
    }
    return ball.find(w);
  };
  if (j.contains("witness")) {
    if (!j["witness"].is_array()) {
      ok = false;
      return node;
    }
    for (const auto& t : j["witness"]) {
      if (!t.is_object() || !t.contains("base")) {
        ok = false;
        return node;
      }
      WitnessTerm term;
      auto base = lookup(t["base"]);
      if (!base) {
        ok = false;
        return node;
      }
      term.base = *base;
      if (t.contains("conj")) {
        auto conj = lookup(t["conj"]);
        if (!conj) {
          ok = false;
          return node;
        }
        term.conjugator = *conj;
      }
      node->witness.push_back(term);
    }
    return node;
  }
  if (!j.contains("pair") || !j.contains("pos") || !j.contains("neg")) {
    ok = false;
    return node;
  }
  auto rep = lookup(j["pair"]);
  if (!rep) {
    ok = false;
    return node;
  }
  node->pair_rep = *rep;
  node->pos = resolve_cert_node(j["pos"], pres, ball, ok);
  node->neg = resolve_cert_node(j["neg"], pres, ball, ok);
  return node;
}

}  // namespace detail

/// Resolve normal-form strings against a ball. Unknown names yield nullopt
/// (for example when checked against the wrong presentation), which callers
/// treat as rejection.
inline std::optional<RefutationCertificate> resolve_certificate(const ParsedCertificate& parsed,
                                                                const Presentation& pres,
                                                                const Ball& ball) {
  bool ok = true;
  auto tree = detail::resolve_cert_node(parsed.tree, pres, ball, ok);
  if (!ok) return std::nullopt;
  RefutationCertificate cert;
  cert.kind = parsed.kind;
  cert.radius = parsed.radius;
  cert.tree = std::move(tree);
  return cert;
}

}  // namespace ordlab
