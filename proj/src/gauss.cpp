#include "childstat/gauss.hpp"
#include "childstat/error.hpp"

#include <algorithm>
#include <stdexcept>

namespace childstat {

namespace {

DensePolynomial add(const DensePolynomial& a, const DensePolynomial& b) {
  DensePolynomial out = DensePolynomial::zeros(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = a.coeff(static_cast<long>(i)) + b.coeff(static_cast<long>(i));
  }
  return out.normalize();
}

DensePolynomial scale_shift(const DensePolynomial& a, unsigned long factor, unsigned shift) {
  DensePolynomial out = DensePolynomial::zeros(a.size() + shift);
  for (std::size_t i = 0; i < a.size(); ++i) out[i + shift] = a[i] * factor;
  return out.normalize();
}

}  // namespace

std::vector<std::vector<DensePolynomial>> normal_moment_grid(unsigned max_p1, unsigned max_p2) {
  // Univariate moments 1, 0, 1, 0, 3, 0, 15, ... fill the p1 = 0 row and the
  // p2 = 0 column; the recurrence in p1 fills the rest.
  const unsigned top = std::max(max_p1, max_p2);
  std::vector<DensePolynomial> univariate(top + 1);
  for (unsigned j = 0; j <= top; ++j) {
    if (j == 0) {
      univariate[j] = DensePolynomial({1});
    } else if (j == 1) {
      univariate[j] = DensePolynomial();
    } else {
      univariate[j] = scale_shift(univariate[j - 2], j - 1, 0);
    }
  }
  std::vector<std::vector<DensePolynomial>> m(max_p1 + 1,
                                              std::vector<DensePolynomial>(max_p2 + 1));
  for (unsigned j = 0; j <= max_p2; ++j) m[0][j] = univariate[j];
  for (unsigned i = 1; i <= max_p1; ++i) {
    m[i][0] = univariate[i];
    for (unsigned j = 1; j <= max_p2; ++j) {
      DensePolynomial out;
      if (i >= 2) out = scale_shift(m[i - 2][j], i - 1, 0);
      m[i][j] = add(out, scale_shift(m[i - 1][j - 1], j, 1));
    }
  }
  return m;
}

NormalMomentPoly normal_mixed_moment_poly(unsigned p1, unsigned p2) {
  return {p1, p2, normal_moment_grid(p1, p2)[p1][p2]};
}

Surd evaluate_at(const DensePolynomial& poly, const Surd& rho) {
  // rho^k = c^k r^{k/2} for even k, c^k r^{(k-1)/2} sqrt(r) for odd k.
  const ExactRat& c = rho.coeff();
  const ExactRat& r = rho.radicand();
  ExactRat even_part = 0;
  ExactRat odd_part = 0;
  ExactRat c_pow = 1;
  ExactRat r_pow = 1;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    if (k > 0) c_pow *= c;
    if (k >= 2 && k % 2 == 0) r_pow *= r;
    if (poly[k] == 0) continue;
    ExactRat term = ExactRat(poly[k]) * c_pow * r_pow;
    if (k % 2 == 0) {
      even_part += term;
    } else {
      odd_part += term;
    }
  }
  if (sgn(even_part) != 0 && sgn(odd_part) != 0 && r != 1) {
    throw std::logic_error("evaluate_at: polynomial mixes parities");
  }
  if (sgn(odd_part) == 0) return Surd(even_part);
  return Surd(odd_part + even_part, r);
}

NormalMomentValue normal_mixed_moment_eval(unsigned p1, unsigned p2, const ExactRat& rho_squared,
                                           int rho_sign, unsigned digits) {
  if (sgn(rho_squared) < 0 || rho_squared > 1) {
    throw Error(ErrorCode::InvalidCorrelation,
                "rho^2 = " + to_fraction_string(rho_squared) + " is outside [0, 1]");
  }
  const DensePolynomial poly = normal_mixed_moment_poly(p1, p2).coefficients;
  Surd rho = sgn(rho_squared) == 0 ? Surd()
                                   : Surd(ExactRat(rho_sign < 0 ? -1 : 1), rho_squared);
  Surd value = evaluate_at(poly, rho);
  return {value, value.render(digits)};
}

NormalityGapReport normality_gap_report(const MomentSpec& spec, unsigned max_p1,
                                        unsigned max_p2, unsigned digits) {
  MomentSpec grid_spec = spec;
  grid_spec.max_p1 = std::max(spec.max_p1, max_p1);
  grid_spec.max_p2 = std::max(spec.max_p2, max_p2);
  MomentTable table(grid_spec);
  NormalityGapReport report{spec, table.correlation(digits), {}};
  const auto normal = normal_moment_grid(max_p1, max_p2);

  // rho = m11 * sqrt(1/(m20 m02)); every odd-odd cell shares that radicand.
  const Surd rho(table.central(1, 1), table.radicand(1, 1));
  for (unsigned p1 = 0; p1 <= max_p1; ++p1) {
    for (unsigned p2 = 0; p2 <= max_p2; ++p2) {
      NormalityGapRow row;
      row.p1 = p1;
      row.p2 = p2;
      row.alpha = table.scaled(p1, p2, digits).exact;
      row.normal = evaluate_at(normal[p1][p2], rho);
      row.gap = row.alpha - row.normal;
      row.alpha_rendered = row.alpha.render(digits);
      row.normal_rendered = row.normal.render(digits);
      row.gap_rendered = row.gap.render(digits);
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

}  // namespace childstat
