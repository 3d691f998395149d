#include "childstat/lagrange.hpp"
#include "childstat/error.hpp"

#include <stdexcept>
#include <string>

namespace childstat {

void validate(const NumeratorQuery& q) {
  if (q.n == 0) throw Error(ErrorCode::InvalidQuery, "n must be positive");
  if (!q.child_set.contains(q.s1)) {
    throw Error(ErrorCode::InvalidQuery,
                "s1 = " + std::to_string(q.s1) + " is not in " + q.child_set.to_string());
  }
  if (!q.s2) {
    if (q.p2 != 0) throw Error(ErrorCode::InvalidQuery, "p2 > 0 requires s2");
    return;
  }
  if (!q.child_set.contains(*q.s2)) {
    throw Error(ErrorCode::InvalidQuery,
                "s2 = " + std::to_string(*q.s2) + " is not in " + q.child_set.to_string());
  }
  if (*q.s2 == q.s1 && q.p1 > 0 && q.p2 > 0) {
    throw Error(ErrorCode::InvalidQuery, "s1 = s2 with both powers positive; merge the powers");
  }
}

ExactInt count_trees(const ChildSet& s, unsigned long n) {
  if (n == 0) throw Error(ErrorCode::InvalidQuery, "n must be positive");
  return divide_exact(power_coefficient(s.phi(), n, static_cast<long>(n) - 1), n,
                      "count_trees");
}

std::vector<std::vector<ExactInt>> numerator_grid(const ChildSet& s, unsigned long n,
                                                  unsigned s1, std::optional<unsigned> s2,
                                                  unsigned max_p1, unsigned max_p2) {
  validate({s, n, s1, s2, max_p1, max_p2});
  const unsigned t1 = s1;
  const unsigned t2 = s2.value_or(0);
  const unsigned max_k = max_p1 + max_p2;
  const DensePolynomial phi = s.phi();
  const long top = static_cast<long>(n) - 1;

  // powers[k] = phi^{n-k} up to degree n-1; falling[k] = n^(k).
  std::vector<DensePolynomial> powers(max_k + 1);
  std::vector<ExactInt> falling(max_k + 1);
  for (unsigned k = 0; k <= max_k; ++k) {
    falling[k] = falling_factorial(ExactInt(n), k);
    if (falling[k] != 0) powers[k] = poly_pow_coeffs(phi, n - k, static_cast<std::size_t>(top));
  }

  // term[k1][k2] = n^(k1+k2) [z^{n-1-k1 s1-k2 s2}] phi^{n-k1-k2}
  std::vector<std::vector<ExactInt>> term(max_p1 + 1, std::vector<ExactInt>(max_p2 + 1, 0));
  for (unsigned k1 = 0; k1 <= max_p1; ++k1) {
    for (unsigned k2 = 0; k2 <= max_p2; ++k2) {
      const unsigned k = k1 + k2;
      if (falling[k] == 0) continue;
      long degree = top - static_cast<long>(k1) * t1 - static_cast<long>(k2) * t2;
      term[k1][k2] = falling[k] * powers[k].coeff(degree);
    }
  }

  std::vector<std::vector<ExactInt>> grid(max_p1 + 1, std::vector<ExactInt>(max_p2 + 1));
  for (unsigned p1 = 0; p1 <= max_p1; ++p1) {
    for (unsigned p2 = 0; p2 <= max_p2; ++p2) {
      ExactInt sum = 0;
      for (unsigned k1 = 0; k1 <= p1; ++k1) {
        ExactInt a = stirling2(p1, k1);
        if (a == 0) continue;
        for (unsigned k2 = 0; k2 <= p2; ++k2) {
          ExactInt b = stirling2(p2, k2);
          if (b == 0) continue;
          sum += a * b * term[k1][k2];
        }
      }
      grid[p1][p2] = divide_exact(sum, n, "numerator_mixed");
      if (grid[p1][p2] < 0) throw std::logic_error("numerator_mixed: negative numerator");
    }
  }
  return grid;
}

ExactInt numerator_mixed(const NumeratorQuery& q) {
  validate(q);
  // Grid only up to the requested corner; cells below the corner are cheap.
  return numerator_grid(q.child_set, q.n, q.s1, q.s2, q.p1, q.p2)[q.p1][q.p2];
}

std::vector<ExactInt> NumeratorTable::column(unsigned p1, unsigned p2) const {
  std::vector<ExactInt> out;
  for (unsigned long n = n_min; n <= n_max; ++n) out.push_back(at(n, p1, p2));
  return out;
}

namespace {

NumeratorTable make_table(const ChildSet& s, unsigned s1, std::optional<unsigned> s2,
                          unsigned p1, unsigned p2, unsigned long n_max) {
  if (n_max == 0) throw Error(ErrorCode::InvalidQuery, "n_max must be positive");
  validate({s, 1, s1, s2, p1, p2});
  NumeratorTable table{s, s1, s2, 1, n_max, p1, p2, {}};
  return table;
}

}  // namespace

NumeratorTable numerator_sequence_serial(const ChildSet& s, unsigned s1,
                                         std::optional<unsigned> s2, unsigned p1, unsigned p2,
                                         unsigned long n_max) {
  NumeratorTable table = make_table(s, s1, s2, p1, p2, n_max);
  for (unsigned long n = 1; n <= n_max; ++n) {
    table.values[{n, p1, p2}] = numerator_mixed({s, n, s1, s2, p1, p2});
  }
  return table;
}

NumeratorTable numerator_sequence(const ChildSet& s, unsigned s1, std::optional<unsigned> s2,
                                  unsigned p1, unsigned p2, unsigned long n_max) {
  NumeratorTable table = make_table(s, s1, s2, p1, p2, n_max);
  std::vector<ExactInt> values(n_max);
  const long count = static_cast<long>(n_max);
  // Cost grows with n; hand out the large n first.
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = count - 1; i >= 0; --i) {
    const auto n = static_cast<unsigned long>(i + 1);
    values[static_cast<std::size_t>(i)] = numerator_mixed({s, n, s1, s2, p1, p2});
  }
  for (unsigned long n = 1; n <= n_max; ++n) {
    table.values[{n, p1, p2}] = std::move(values[n - 1]);
  }
  return table;
}

}  // namespace childstat
