#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "ordlab/backend.hpp"
#include "ordlab/word.hpp"

// The radius-k ball of the Cayley graph, enumerated by BFS over
// right-multiplication by signed generators and deduplicated by normal form.
// Element ids are dense and ordered by (BFS layer, shortlex of normal form),
// so id order coincides with the (length, shortlex) key used everywhere else.

namespace ordlab {

using ElemId = int;

struct BallElement {
  ElemId id = 0;
  Word nf;
  int length = 0;       // BFS layer, not normal-form word length
  ElemId inverse = 0;
};

/// In-ball product instance g*h = f with g, h, f all non-identity.
struct ProductTriple {
  ElemId g, h, f;
};

/// In-ball conjugation instance g^-1 * q * g = c with q, c non-identity.
struct ConjTriple {
  ElemId g, q, c;
};

struct BallCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BallOptions {
  int max_elements = 100000;
};

class Ball {
 public:
  Ball(int radius, std::vector<BallElement> elements, std::vector<ProductTriple> products,
       std::vector<ConjTriple> conjugations)
      : radius_(radius),
        elements_(std::move(elements)),
        products_(std::move(products)),
        conjugations_(std::move(conjugations)) {
    for (const BallElement& e : elements_) {
      index_.emplace(e.nf, e.id);
      if (e.id != 0 && e.inverse == e.id && !first_involution_)
        first_involution_ = e.id;
    }
  }

  int radius() const { return radius_; }
  int size() const { return static_cast<int>(elements_.size()); }
  const std::vector<BallElement>& elements() const { return elements_; }
  const BallElement& element(ElemId id) const { return elements_.at(id); }
  const std::vector<ProductTriple>& product_triples() const { return products_; }
  const std::vector<ConjTriple>& conjugation_triples() const { return conjugations_; }

  std::optional<ElemId> find(const Word& nf) const {
    auto it = index_.find(nf);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Smallest element equal to its own inverse, if any (torsion witness).
  std::optional<ElemId> first_involution() const { return first_involution_; }

  int num_inverse_pairs() const {
    int n = 0;
    for (const BallElement& e : elements_)
      if (e.id != 0 && e.id < e.inverse) ++n;
    return n;
  }

 private:
  int radius_;
  std::vector<BallElement> elements_;
  std::vector<ProductTriple> products_;
  std::vector<ConjTriple> conjugations_;
  std::map<Word, ElemId> index_;
  std::optional<ElemId> first_involution_;
};

inline Ball build_ball(const WordBackend& backend, int radius, const BallOptions& opt = {}) {
  if (radius < 1) throw std::invalid_argument("ball radius must be >= 1");
  const int nletters = backend.presentation().num_letters();

  std::vector<BallElement> elements;
  std::map<Word, ElemId> index;
  elements.push_back({0, Word{}, 0, 0});
  index.emplace(Word{}, 0);

  std::size_t layer_begin = 0;
  for (int layer = 1; layer <= radius; ++layer) {
    std::size_t layer_end = elements.size();
    std::set<Word> fresh;
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (Letter l = 0; l < nletters; ++l) {
        Word w = elements[i].nf;
        w.letters.push_back(l);
        Word nf = backend.normal_form(w);
        if (!index.count(nf)) fresh.insert(std::move(nf));
      }
    }
    for (const Word& nf : fresh) {  // std::set orders by operator<; relabel below
      ElemId id = static_cast<ElemId>(elements.size());
      elements.push_back({id, nf, layer, 0});
      index.emplace(nf, id);
      if (static_cast<int>(elements.size()) > opt.max_elements)
        throw BallCapExceeded("ball size cap exceeded (" +
                              std::to_string(opt.max_elements) + " elements)");
    }
    // Re-sort the new layer by shortlex and reassign ids.
    std::sort(elements.begin() + layer_end, elements.end(),
              [](const BallElement& a, const BallElement& b) {
                return shortlex_less(a.nf, b.nf);
              });
    for (std::size_t i = layer_end; i < elements.size(); ++i) {
      elements[i].id = static_cast<ElemId>(i);
      index[elements[i].nf] = static_cast<ElemId>(i);
    }
    layer_begin = layer_end;
  }

  // Inverse pairing. B_k is closed under inverses, so every lookup must hit.
  for (BallElement& e : elements) {
    Word inv_nf = backend.normal_form(invert(e.nf));
    auto it = index.find(inv_nf);
    if (it == index.end())
      throw std::logic_error("ball not inverse-closed; backend normal forms inconsistent");
    e.inverse = it->second;
  }

  const int m = static_cast<int>(elements.size());
  std::vector<ProductTriple> products;
  for (ElemId g = 1; g < m; ++g) {
    for (ElemId h = 1; h < m; ++h) {
      Word nf = backend.normal_form(concat(elements[g].nf, elements[h].nf));
      if (nf.empty()) continue;  // g*h = 1 is carried by inverse pairing
      auto it = index.find(nf);
      if (it != index.end()) products.push_back({g, h, it->second});
    }
  }

  std::vector<ConjTriple> conjugations;
  for (ElemId g = 0; g < m; ++g) {
    Word ginv = invert(elements[g].nf);
    for (ElemId q = 1; q < m; ++q) {
      Word nf = backend.normal_form(concat(concat(ginv, elements[q].nf), elements[g].nf));
      auto it = index.find(nf);
      if (it != index.end()) conjugations.push_back({g, q, it->second});
    }
  }

  return Ball(radius, std::move(elements), std::move(products), std::move(conjugations));
}

}  // namespace ordlab
