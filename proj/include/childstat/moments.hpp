#pragma once

#include "childstat/child_set.hpp"
#include "childstat/exact.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace childstat {

/// The pair (X_{n,s1}, X_{n,s2}) and the (p1, p2) grid of interest.
struct MomentSpec {
  ChildSet child_set;
  unsigned long n = 1;
  unsigned s1 = 0;
  unsigned s2 = 0;
  unsigned max_p1 = 2;
  unsigned max_p2 = 2;
};

constexpr unsigned kDefaultDigits = 30;

struct ScaledValue {
  Surd exact;                           // alpha as q*sqrt(r)
  ExactRat square;                      // alpha^2
  std::optional<ExactRat> exact_value;  // set when p1 and p2 are both even
  std::string rendered;
};

/// Exact numerators for one MomentSpec with every raw/central/scaled
/// moment derived from them. The numerator grid is computed once on
/// construction, extended to power 2 in each variable so variances are
/// always available. Throws Error(NoTrees) if f_n = 0.
class MomentTable {
 public:
  explicit MomentTable(MomentSpec spec);

  const MomentSpec& spec() const { return spec_; }
  const ExactInt& tree_count() const { return numerators_[0][0]; }
  const ExactInt& numerator(unsigned p1, unsigned p2) const;

  /// N_{p1,p2} / N_{0,0}.
  ExactRat raw(unsigned p1, unsigned p2) const;
  /// E[(X1 - mu1)^p1 (X2 - mu2)^p2] via the binomial expansion over numerators.
  ExactRat central(unsigned p1, unsigned p2) const;

  bool degenerate() const;
  /// m_{p1,p2} / (m_{2,0}^{p1/2} m_{0,2}^{p2/2}); Error(DegenerateVariance)
  /// when either variance is zero.
  ScaledValue scaled(unsigned p1, unsigned p2, unsigned digits = kDefaultDigits) const;
  /// alpha_{1,1}.
  ScaledValue correlation(unsigned digits = kDefaultDigits) const { return scaled(1, 1, digits); }

  /// Radicand shared by every quantity with the parity (p1 mod 2, p2 mod 2).
  ExactRat radicand(unsigned p1, unsigned p2) const;

 private:
  MomentSpec spec_;
  std::vector<std::vector<ExactInt>> numerators_;
};

ExactRat raw_moment(const MomentSpec& spec, unsigned p1, unsigned p2);
ExactRat central_moment(const MomentSpec& spec, unsigned p1, unsigned p2);
ScaledValue scaled_moment(const MomentSpec& spec, unsigned p1, unsigned p2,
                          unsigned digits = kDefaultDigits);
ScaledValue correlation(const MomentSpec& spec, unsigned digits = kDefaultDigits);

struct MomentReport {
  MomentSpec spec;
  ExactInt tree_count;
  std::map<std::pair<unsigned, unsigned>, ExactRat> raw;
  std::map<std::pair<unsigned, unsigned>, ExactRat> central;
  // Empty when the variance is degenerate.
  std::map<std::pair<unsigned, unsigned>, ScaledValue> scaled;
  std::optional<ScaledValue> correlation;
  bool degenerate_variance = false;
  unsigned digits = kDefaultDigits;
};

/// Full grid 0 <= p1 <= max_p1, 0 <= p2 <= max_p2. A degenerate variance is
/// flagged in the report instead of thrown; NoTrees is thrown.
MomentReport moment_report(const MomentSpec& spec, unsigned digits = kDefaultDigits);

}  // namespace childstat
