#pragma once

// Tree counts and moment numerators by Lagrange inversion.
//
// With f = x * Phi(f) and Phi(z) = sum_{s in S} y_s z^s, the coefficient of
// x^n is (1/n) [z^{n-1}] Phi(z)^n. Writing u = y_s z^s, the marking operator
// y_s d/dy_s equals u d/du, and
//
//   (u d/du)^p Phi^n = sum_k S(p,k) n^(k) u^k Phi^{n-k}
//
// (S = Stirling numbers of the second kind, n^(k) the falling factorial).
// Operators for distinct s1 != s2 act on independent variables, so at y = 1
//
//   N_{p1,p2}(n) = (1/n) sum_{k1,k2} S(p1,k1) S(p2,k2) n^(k1+k2)
//                   [z^{n-1-k1 s1-k2 s2}] phi(z)^{n-k1-k2}.

#include "childstat/child_set.hpp"
#include "childstat/exact.hpp"

#include <map>
#include <optional>
#include <tuple>
#include <vector>

namespace childstat {

/// Indices of N_{p1,p2}(X_{n,s1}, X_{n,s2}). Without s2, p2 must be 0.
struct NumeratorQuery {
  ChildSet child_set;
  unsigned long n = 1;
  unsigned s1 = 0;
  std::optional<unsigned> s2;
  unsigned p1 = 0;
  unsigned p2 = 0;
};

/// Throws Error(InvalidQuery) when the query violates its invariants.
void validate(const NumeratorQuery& q);

/// Number of trees on n >= 1 vertices with child counts in S (0 if none).
ExactInt count_trees(const ChildSet& s, unsigned long n);

/// Sum over all trees on n vertices of X_{s1}^{p1} X_{s2}^{p2}.
ExactInt numerator_mixed(const NumeratorQuery& q);

/// N_{p1,p2}(n) for every p1 <= max_p1, p2 <= max_p2 at one n, sharing the
/// phi powers across cells. Indexed [p1][p2].
std::vector<std::vector<ExactInt>> numerator_grid(const ChildSet& s, unsigned long n,
                                                  unsigned s1, std::optional<unsigned> s2,
                                                  unsigned max_p1, unsigned max_p2);

struct NumeratorTable {
  ChildSet child_set;
  unsigned s1 = 0;
  std::optional<unsigned> s2;
  unsigned long n_min = 1;
  unsigned long n_max = 0;
  unsigned max_p1 = 0;
  unsigned max_p2 = 0;
  std::map<std::tuple<unsigned long, unsigned, unsigned>, ExactInt> values;

  const ExactInt& at(unsigned long n, unsigned p1, unsigned p2) const {
    return values.at({n, p1, p2});
  }
  /// Values for n = n_min..n_max at fixed powers.
  std::vector<ExactInt> column(unsigned p1, unsigned p2) const;
};

/// N_{p1,p2}(n) for n = 1..n_max; n values are evaluated in parallel (OpenMP).
NumeratorTable numerator_sequence(const ChildSet& s, unsigned s1, std::optional<unsigned> s2,
                                  unsigned p1, unsigned p2, unsigned long n_max);

/// Single-threaded reference for numerator_sequence.
NumeratorTable numerator_sequence_serial(const ChildSet& s, unsigned s1,
                                         std::optional<unsigned> s2, unsigned p1, unsigned p2,
                                         unsigned long n_max);

}  // namespace childstat
