#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "ordlab/ball.hpp"
#include "ordlab/solver.hpp"
#include "ordlab/word.hpp"

// Known positive cones, as membership oracles on words. Each oracle is bound
// to a presentation by name and generator count only; membership is computed
// from word invariants (exponent sums, or the Klein-bottle normal form), so
// it is constant on group-equal words of the intended group.

namespace ordlab {

struct ConeMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class ConeOracle {
 public:
  ConeOracle(std::string name, int expected_generators, bool claims_biorder,
             std::function<bool(const Word&)> member)
      : name_(std::move(name)),
        expected_generators_(expected_generators),
        claims_biorder_(claims_biorder),
        member_(std::move(member)) {}

  const std::string& name() const { return name_; }
  int expected_generators() const { return expected_generators_; }
  bool claims_biorder() const { return claims_biorder_; }
  bool member(const Word& w) const { return member_(w); }

 private:
  std::string name_;
  int expected_generators_;
  bool claims_biorder_;
  std::function<bool(const Word&)> member_;
};

namespace detail {

inline std::vector<long long> exponent_vector(const Word& w, int n) {
  std::vector<long long> v(n, 0);
  for (Letter l : w.letters) v[letter_gen(l)] += letter_sign(l);
  return v;
}

// (m, n) with the word equal to y^m x^n in the Klein bottle group
// <x, y | x^-1 y x = y^-1>; crossing any x-letter inverts y.
inline std::pair<long long, long long> klein_normal_exponents(const Word& w) {
  long long m = 0, n = 0;
  long long xcount = 0;
  for (Letter l : w.letters) {
    if (letter_gen(l) == 0) {
      n += letter_sign(l);
      ++xcount;
    } else {
      m += (xcount % 2 == 0) ? letter_sign(l) : -letter_sign(l);
    }
  }
  return {m, n};
}

}  // namespace detail

/// Lexicographic cone on Z^n: first nonzero exponent-sum coordinate positive.
inline ConeOracle lex_cone(int n) {
  if (n < 1 || n > 26) throw std::invalid_argument("lex cone dimension out of range");
  return ConeOracle("lex:" + std::to_string(n), n, /*claims_biorder=*/true,
                    [n](const Word& w) {
                      auto v = detail::exponent_vector(w, n);
                      for (long long x : v) {
                        if (x > 0) return true;
                        if (x < 0) return false;
                      }
                      return false;
                    });
}

/// Irrational-slope cone on Z^2: (m, n) is positive iff m*sqrt(2) + n > 0,
/// decided in exact integer arithmetic.
inline ConeOracle slope_cone() {
  return ConeOracle("slope", 2, /*claims_biorder=*/true, [](const Word& w) {
    auto v = detail::exponent_vector(w, 2);
    long long m = v[0], n = v[1];
    if (m == 0) return n > 0;
    if (m > 0) {
      if (n >= 0) return true;
      return 2 * m * m > n * n;  // m*sqrt(2) > -n, both sides positive
    }
    if (n <= 0) return false;
    return n * n > 2 * m * m;
  });
}

/// Extension cone on the Klein bottle group: y^m x^n is positive iff n > 0,
/// or n = 0 and m > 0.
inline ConeOracle klein_cone() {
  return ConeOracle("klein", 2, /*claims_biorder=*/false, [](const Word& w) {
    auto [m, n] = detail::klein_normal_exponents(w);
    return n > 0 || (n == 0 && m > 0);
  });
}

inline std::optional<ConeOracle> cone_by_name(const std::string& name) {
  if (name == "slope") return slope_cone();
  if (name == "klein") return klein_cone();
  if (name.rfind("lex:", 0) == 0) {
    try {
      int n = std::stoi(name.substr(4));
      if (n >= 1 && n <= 26) return lex_cone(n);
    } catch (const std::exception&) {
    }
  }
  return std::nullopt;
}

/// Restriction of the cone to a ball: sign(g) = +1 iff the oracle accepts
/// g's normal form. Throws ConeMismatch when the oracle does not fit the
/// presentation or is incoherent on the ball's inverse pairs.
inline SignAssignment restrict_to_ball(const ConeOracle& cone, const Presentation& pres,
                                       const Ball& ball) {
  if (pres.num_generators() != cone.expected_generators())
    throw ConeMismatch("cone '" + cone.name() + "' expects " +
                       std::to_string(cone.expected_generators()) + " generators, got " +
                       std::to_string(pres.num_generators()));
  SignAssignment a;
  a.sign.assign(ball.size(), 0);
  for (int id = 1; id < ball.size(); ++id)
    a.sign[id] = cone.member(ball.element(id).nf) ? 1 : -1;
  for (int id = 1; id < ball.size(); ++id)
    if (a.sign[ball.element(id).inverse] != -a.sign[id])
      throw ConeMismatch("cone '" + cone.name() +
                         "' is not a cone on this group (inverse pair violated)");
  return a;
}

}  // namespace ordlab
