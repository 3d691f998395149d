#include "childstat/error.hpp"
#include "childstat/gauss.hpp"
#include "isserlis_oracle.hpp"

#include <doctest.h>

#include <utility>

using namespace childstat;

TEST_SUITE("gauss") {

TEST_CASE("univariate normal moments") {
  CHECK(normal_mixed_moment_poly(2, 0).coefficients == DensePolynomial({1}));
  CHECK(normal_mixed_moment_poly(4, 0).coefficients == DensePolynomial({3}));
  CHECK(normal_mixed_moment_poly(6, 0).coefficients == DensePolynomial({15}));
  CHECK(normal_mixed_moment_poly(0, 6).coefficients == DensePolynomial({15}));
  CHECK(normal_mixed_moment_poly(1, 0).coefficients.is_zero());
  CHECK(normal_mixed_moment_poly(0, 0).coefficients == DensePolynomial({1}));
}

TEST_CASE("mixed spot values") {
  CHECK(normal_mixed_moment_poly(1, 1).coefficients == DensePolynomial({0, 1}));
  CHECK(normal_mixed_moment_poly(2, 2).coefficients == DensePolynomial({1, 0, 2}));
  CHECK(normal_mixed_moment_poly(3, 1).coefficients == DensePolynomial({0, 3}));
  CHECK(testing::isserlis_by_matchings(2, 2) == DensePolynomial({1, 0, 2}));
}

TEST_CASE("recurrence matches matching enumeration") {
  for (unsigned p1 = 0; p1 <= 8; ++p1) {
    for (unsigned p2 = 0; p1 + p2 <= 8; ++p2) {
      CAPTURE(p1);
      CAPTURE(p2);
      CHECK(normal_mixed_moment_poly(p1, p2).coefficients ==
            testing::isserlis_by_matchings(p1, p2));
    }
  }
}

TEST_CASE("structural properties") {
  auto grid = normal_moment_grid(7, 7);
  for (unsigned p1 = 0; p1 <= 7; ++p1) {
    for (unsigned p2 = 0; p2 <= 7; ++p2) {
      const DensePolynomial& m = grid[p1][p2];
      if ((p1 + p2) % 2 == 1) {
        CHECK(m.is_zero());
        continue;
      }
      CHECK(m == grid[p2][p1]);
      for (std::size_t k = 0; k < m.size(); ++k) {
        if (m[k] != 0) CHECK(k % 2 == p1 % 2);
      }
      // rho = 1: univariate moment of order p1 + p2.
      ExactInt at_one = 0;
      for (const auto& c : m.coeffs()) at_one += c;
      CHECK(at_one == normal_mixed_moment_poly(p1 + p2, 0).coefficients.coeff(0));
      // rho = 0: independence.
      CHECK(m.coeff(0) == grid[p1][0].coeff(0) * grid[0][p2].coeff(0));
    }
  }
}

TEST_CASE("evaluation") {
  auto v = normal_mixed_moment_eval(2, 2, ExactRat(1, 4), 1);
  CHECK(v.exact.is_rational());
  CHECK(v.exact.coeff() == ExactRat(3, 2));
  CHECK(normal_mixed_moment_eval(1, 1, 1, -1, 3).rendered == "-1.000");
  CHECK(normal_mixed_moment_eval(4, 0, ExactRat(2, 7), 1).exact.coeff() == 3);
  CHECK(normal_mixed_moment_eval(3, 1, ExactRat(1, 2), 1, 6).rendered == "2.121320");
  CHECK(normal_mixed_moment_eval(3, 2, ExactRat(1, 2), 1).exact.is_zero());
  try {
    normal_mixed_moment_eval(2, 2, ExactRat(5, 4), 1);
    FAIL("expected InvalidCorrelation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidCorrelation);
  }
}

TEST_CASE("gap report") {
  const ChildSet s{0, 1, 2, 3};
  NormalityGapReport report = normality_gap_report({s, 40, 0, 1, 2, 2}, 4, 4, 20);
  CHECK(report.rows.size() == 25);
  for (const auto& row : report.rows) {
    const auto cell = std::make_pair(row.p1, row.p2);
    if (cell == std::make_pair(0U, 0U) || cell == std::make_pair(1U, 1U) ||
        cell == std::make_pair(2U, 0U) || cell == std::make_pair(0U, 2U)) {
      CHECK(row.gap.is_zero());
    }
    if ((row.p1 + row.p2) % 2 == 1) CHECK(row.normal.is_zero());
  }
  const auto& r11 = report.rows[1 * 5 + 1];
  CHECK(r11.gap_rendered == "0.00000000000000000000");
  CHECK(r11.alpha_rendered == report.rho.rendered);
}

}
