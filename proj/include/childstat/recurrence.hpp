#pragma once

#include "childstat/exact.hpp"
#include "childstat/poly.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace childstat {

/// Linear recurrence with polynomial coefficients, stored relative to the
/// highest index:
///
///   sum_{j=0}^{order} p_j(n) a(n-j) = 0.
///
/// Normalized: the coefficient vector is primitive and the leading
/// coefficient of p_0 is positive.
struct Recurrence {
  std::vector<DensePolynomial> coefficients;  // p_0 .. p_order, in n
  long verified_from = 0;                     // n range where the relation was checked
  long verified_to = -1;

  unsigned order() const { return static_cast<unsigned>(coefficients.size()) - 1; }
  unsigned degree() const;

  /// Removes content and fixes the sign.
  Recurrence& normalize();

  /// e.g. "(n+1)*a(n) - (2*n-1)*a(n-1) - 3*(n-2)*a(n-2) = 0"
  std::string to_string() const;

  friend bool operator==(const Recurrence& a, const Recurrence& b) {
    return a.coefficients == b.coefficients;
  }
};

/// Terms a(first_index), a(first_index+1), ...
struct IndexedSequence {
  long first_index = 1;
  std::vector<ExactInt> terms;

  long last_index() const { return first_index + static_cast<long>(terms.size()) - 1; }
  const ExactInt& at(long n) const { return terms[static_cast<std::size_t>(n - first_index)]; }
};

struct GuessOptions {
  unsigned max_order = 3;
  unsigned max_degree = 3;
  unsigned margin = 8;  // held-out terms, checked but never fitted
};

/// Minimal recurrence (by order, then degree) fitting the data; the last
/// `margin` terms are only used for verification. Error(InsufficientData)
/// unless terms >= (max_order+1)(max_degree+1) + max_order + margin.
std::optional<Recurrence> guess_recurrence(const IndexedSequence& seq,
                                           const GuessOptions& options = {});

struct VerifyResult {
  bool ok = true;
  std::optional<long> first_failure;  // index n of the highest term a(n)
};

/// Checks the relation exactly at every n in [from, to] (indices of the
/// highest term). An empty range passes.
VerifyResult verify_recurrence(const Recurrence& rec, const IndexedSequence& seq, long from,
                               long to);

struct ExtendedSequence {
  long first_index = 1;
  std::vector<ExactRat> terms;
  std::vector<long> non_integral;  // indices whose value is not an integer
};

/// Continues the initial terms up to a(n_target). Error(LeadingCoefficientZero)
/// when p_0(n) = 0 at a needed step.
ExtendedSequence extend_sequence(const Recurrence& rec, const IndexedSequence& initial,
                                 long n_target);

/// Evaluates p(n) exactly.
ExactInt evaluate(const DensePolynomial& p, long n);

}  // namespace childstat
