#pragma once

// Small-n ground truth independent of the Lagrange engine: exhaustive
// enumeration of Lukasiewicz words, fixpoint iteration of the functional
// equation, and exact-table uniform sampling.

#include "childstat/child_set.hpp"
#include "childstat/exact.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace childstat {

/// Preorder child-count sequence of an ordered tree.
struct TreeCode {
  std::vector<unsigned> counts;

  std::size_t size() const { return counts.size(); }
  /// Space-separated decimal child counts.
  std::string to_string() const;
  friend auto operator<=>(const TreeCode&, const TreeCode&) = default;
};

/// Partial sums of (c_i - 1) stay >= 0 before the end and total -1.
bool is_lukasiewicz(std::span<const unsigned> counts);

/// Number of entries equal to s.
unsigned child_count(const TreeCode& tree, unsigned s);

constexpr unsigned kDefaultEnumerationCap = 18;
constexpr unsigned kDefaultFixpointCap = 14;

/// Visits every tree on n vertices in lexicographic order of its code.
/// Error(EnumerationTooLarge) when n > cap.
void for_each_tree(const ChildSet& s, unsigned n,
                   const std::function<void(std::span<const unsigned>)>& visit,
                   unsigned cap = kDefaultEnumerationCap);

std::vector<TreeCode> enumerate_trees(const ChildSet& s, unsigned n,
                                      unsigned cap = kDefaultEnumerationCap);

/// Number of trees for each child-count profile; key[i] is the number of
/// vertices with elements()[i] children.
using ProfileTally = std::map<std::vector<unsigned>, ExactInt>;

/// Enumerates trees in parallel over code prefixes (OpenMP).
ProfileTally tally_profiles(const ChildSet& s, unsigned n, unsigned cap = kDefaultEnumerationCap);
ProfileTally tally_profiles_serial(const ChildSet& s, unsigned n,
                                   unsigned cap = kDefaultEnumerationCap);

/// sum_T X_{s1}(T)^p1 X_{s2}(T)^p2 from a tally.
ExactInt numerator_from_profiles(const ProfileTally& tally, const ChildSet& s, unsigned s1,
                                 std::optional<unsigned> s2, unsigned p1, unsigned p2);

ExactInt oracle_numerator(const ChildSet& s, unsigned n, unsigned s1, std::optional<unsigned> s2,
                          unsigned p1, unsigned p2, unsigned cap = kDefaultEnumerationCap);

/// sum_T (X1 - mu1)^p1 (X2 - mu2)^p2 / f_n computed directly from the tally.
/// Error(NoTrees) on an empty tally.
ExactRat oracle_central_moment(const ProfileTally& tally, const ChildSet& s, unsigned s1,
                               unsigned s2, unsigned p1, unsigned p2);

struct JointCoefficient {
  unsigned n = 0;
  std::vector<unsigned> exponents;  // aligned with ChildSet::elements()
  ExactInt count;
};

/// Coefficients of x^1..x^n_max in the solution of f = x sum_s y_s f^s,
/// by n_max rounds of fixpoint iteration from f = 0.
std::map<unsigned, std::vector<JointCoefficient>> joint_gf_fixpoint(
    const ChildSet& s, unsigned n_max, unsigned cap = kDefaultFixpointCap);

/// Exact tree and forest counts driving the recursive uniform sampler.
class TreeSampler {
 public:
  TreeSampler(ChildSet s, unsigned n_max);

  const ChildSet& child_set() const { return set_; }
  unsigned n_max() const { return n_max_; }
  const ExactInt& tree_count(unsigned n) const { return trees_[n]; }

  /// Uniform tree on n vertices; Error(NoTrees) if there is none.
  TreeCode sample(unsigned n, std::mt19937_64& rng) const;

  /// Product of the sampler's decision probabilities along the path that
  /// produces `tree`. Uniformity means this is 1/f_n for every tree.
  ExactRat path_probability(const TreeCode& tree) const;

 private:
  // forests_[i][m]: ordered forests of i trees with m vertices in total.
  const ExactInt& forests(unsigned i, unsigned m) const { return forests_[i][m]; }

  ChildSet set_;
  unsigned n_max_;
  std::vector<ExactInt> trees_;
  std::vector<std::vector<ExactInt>> forests_;
};

/// Uniform integer in [0, bound); bound > 0.
ExactInt uniform_below(const ExactInt& bound, std::mt19937_64& rng);

TreeCode sample_tree_uniform(const ChildSet& s, unsigned n, std::uint64_t seed);

struct MonteCarloEstimate {
  std::uint64_t samples = 0;
  ExactRat sample_mean;  // exact mean of the sampled values
  double estimate = 0;
  double standard_error = 0;
};

/// Mean of X_{s1}^p1 X_{s2}^p2 over uniform trees. Samples are drawn in
/// fixed-size blocks, each seeded from (seed, block), so the result does not
/// depend on the thread count.
MonteCarloEstimate monte_carlo_moment(const ChildSet& s, unsigned n, unsigned s1,
                                      std::optional<unsigned> s2, unsigned p1, unsigned p2,
                                      std::uint64_t samples, std::uint64_t seed);
MonteCarloEstimate monte_carlo_moment_serial(const ChildSet& s, unsigned n, unsigned s1,
                                             std::optional<unsigned> s2, unsigned p1,
                                             unsigned p2, std::uint64_t samples,
                                             std::uint64_t seed);

}  // namespace childstat
