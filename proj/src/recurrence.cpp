#include "childstat/recurrence.hpp"
#include "childstat/error.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace childstat {

ExactInt evaluate(const DensePolynomial& p, long n) {
  ExactInt acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) {
    acc *= n;
    acc += p[i];
  }
  return acc;
}

unsigned Recurrence::degree() const {
  long d = 0;
  for (const auto& p : coefficients) d = std::max(d, p.degree());
  return static_cast<unsigned>(d);
}

Recurrence& Recurrence::normalize() {
  ExactInt content = 0;
  for (auto& p : coefficients) {
    p.normalize();
    for (const auto& c : p.coeffs()) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
  }
  if (content == 0) return *this;
  const DensePolynomial* lead = nullptr;
  for (const auto& p : coefficients) {
    if (!p.is_zero()) {
      lead = &p;
      break;
    }
  }
  if ((*lead)[static_cast<std::size_t>(lead->degree())] < 0) content = -content;
  for (auto& p : coefficients) {
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = divide_exact(p[i], content, "normalize");
  }
  return *this;
}

namespace {

// Descending powers of n without spaces: "2*n-1", "n^2+3*n+2".
std::string render_in_n(const DensePolynomial& p) {
  std::ostringstream out;
  bool first = true;
  for (long i = p.degree(); i >= 0; --i) {
    const ExactInt& c = p[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    ExactInt mag = abs(c);
    if (c < 0) {
      out << "-";
    } else if (!first) {
      out << "+";
    }
    first = false;
    if (i == 0) {
      out << mag.get_str();
      continue;
    }
    if (mag != 1) out << mag.get_str() << "*";
    out << "n";
    if (i > 1) out << "^" << i;
  }
  return out.str();
}

std::string render_term_index(unsigned j) {
  return j == 0 ? "a(n)" : "a(n-" + std::to_string(j) + ")";
}

}  // namespace

std::string Recurrence::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (unsigned j = 0; j < coefficients.size(); ++j) {
    DensePolynomial p = coefficients[j];
    p.normalize();
    if (p.is_zero()) continue;
    ExactInt content = 0;
    for (const auto& c : p.coeffs()) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
    const bool negative = p[static_cast<std::size_t>(p.degree())] < 0;
    if (negative) content = -content;
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = divide_exact(p[i], content, "render");

    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;

    const ExactInt mag = abs(content);
    const bool unit = p.degree() == 0;  // primitive part is the constant 1
    std::size_t terms = 0;
    for (const auto& c : p.coeffs()) terms += c != 0;
    if (unit) {
      if (mag != 1) out << mag.get_str() << "*";
    } else {
      if (mag != 1) out << mag.get_str() << "*";
      if (terms > 1) {
        out << "(" << render_in_n(p) << ")*";
      } else {
        out << render_in_n(p) << "*";
      }
    }
    out << render_term_index(j);
  }
  if (first) out << "0";
  out << " = 0";
  return out.str();
}

namespace {

using Matrix = std::vector<std::vector<ExactRat>>;

// Basis of the right nullspace of `rows` (each row has `cols` entries).
std::vector<std::vector<ExactRat>> nullspace(Matrix rows, std::size_t cols) {
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && sgn(rows[pivot][col]) == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const ExactRat inv = 1 / rows[rank][col];
    for (std::size_t c = col; c < cols; ++c) rows[rank][c] *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || sgn(rows[r][col]) == 0) continue;
      const ExactRat factor = rows[r][col];
      for (std::size_t c = col; c < cols; ++c) rows[r][c] -= factor * rows[rank][c];
    }
    pivot_cols.push_back(col);
    ++rank;
  }

  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<ExactRat>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<ExactRat> v(cols, 0);
    v[free] = 1;
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) v[pivot_cols[k]] = -rows[k][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

Recurrence from_vector(const std::vector<ExactRat>& v, unsigned order, unsigned degree) {
  ExactInt lcm = 1;
  for (const auto& x : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den().get_mpz_t());
  Recurrence rec;
  rec.coefficients.assign(order + 1, DensePolynomial::zeros(degree + 1));
  for (unsigned j = 0; j <= order; ++j) {
    for (unsigned i = 0; i <= degree; ++i) {
      const ExactRat& x = v[j * (degree + 1) + i];
      rec.coefficients[j][i] = x.get_num() * (lcm / x.get_den());
    }
  }
  rec.normalize();
  return rec;
}

}  // namespace

std::optional<Recurrence> guess_recurrence(const IndexedSequence& seq,
                                           const GuessOptions& options) {
  const std::size_t needed = static_cast<std::size_t>(options.max_order + 1) *
                                 (options.max_degree + 1) +
                             options.max_order + options.margin;
  if (options.max_order == 0 || seq.terms.size() < needed) {
    throw Error(ErrorCode::InsufficientData,
                "need at least " + std::to_string(needed) + " terms, got " +
                    std::to_string(seq.terms.size()));
  }
  const long last = seq.last_index();
  const long fit_last = last - static_cast<long>(options.margin);

  for (unsigned order = 1; order <= options.max_order; ++order) {
    for (unsigned degree = 0; degree <= options.max_degree; ++degree) {
      const std::size_t cols = static_cast<std::size_t>(order + 1) * (degree + 1);
      Matrix rows;
      for (long n = seq.first_index + order; n <= fit_last; ++n) {
        std::vector<ExactRat> row(cols);
        for (unsigned j = 0; j <= order; ++j) {
          ExactInt value = seq.at(n - j);
          for (unsigned i = 0; i <= degree; ++i) {
            row[j * (degree + 1) + i] = value;
            value *= n;
          }
        }
        rows.push_back(std::move(row));
      }
      for (const auto& v : nullspace(std::move(rows), cols)) {
        Recurrence rec = from_vector(v, order, degree);
        if (rec.coefficients.front().is_zero() || rec.coefficients.back().is_zero()) continue;
        const long from = seq.first_index + order;
        if (verify_recurrence(rec, seq, from, last).ok) {
          rec.verified_from = from;
          rec.verified_to = last;
          return rec;
        }
      }
    }
  }
  return std::nullopt;
}

VerifyResult verify_recurrence(const Recurrence& rec, const IndexedSequence& seq, long from,
                               long to) {
  if (from > to) return {};
  if (from - static_cast<long>(rec.order()) < seq.first_index || to > seq.last_index()) {
    throw std::out_of_range("verify_recurrence: range needs terms outside the sequence");
  }
  ExactInt sum;
  for (long n = from; n <= to; ++n) {
    sum = 0;
    for (unsigned j = 0; j <= rec.order(); ++j) sum += evaluate(rec.coefficients[j], n) * seq.at(n - j);
    if (sum != 0) return {false, n};
  }
  return {};
}

ExtendedSequence extend_sequence(const Recurrence& rec, const IndexedSequence& initial,
                                 long n_target) {
  if (initial.terms.size() < rec.order()) {
    throw Error(ErrorCode::InsufficientData, "extend_sequence needs at least " +
                                                 std::to_string(rec.order()) +
                                                 " initial terms");
  }
  ExtendedSequence out;
  out.first_index = initial.first_index;
  for (const auto& t : initial.terms) out.terms.emplace_back(t);
  for (long n = initial.last_index() + 1; n <= n_target; ++n) {
    const ExactInt lead = evaluate(rec.coefficients[0], n);
    if (lead == 0) {
      throw Error(ErrorCode::LeadingCoefficientZero,
                  "leading coefficient vanishes at n = " + std::to_string(n));
    }
    ExactRat acc = 0;
    const auto idx = [&](long k) { return static_cast<std::size_t>(k - out.first_index); };
    for (unsigned j = 1; j <= rec.order(); ++j) {
      acc += ExactRat(evaluate(rec.coefficients[j], n)) * out.terms[idx(n - j)];
    }
    ExactRat next = -acc / ExactRat(lead);
    if (next.get_den() != 1) out.non_integral.push_back(n);
    out.terms.push_back(std::move(next));
  }
  return out;
}

}  // namespace childstat
