#include "childstat/cli.hpp"

#include "childstat/error.hpp"
#include "childstat/gauss.hpp"
#include "childstat/lagrange.hpp"
#include "childstat/moments.hpp"
#include "childstat/oracle.hpp"
#include "childstat/recurrence.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace childstat::cli {

namespace {

enum class Format { Text, Csv, Json };

// A cell is either a small index (JSON number) or an exact value rendered as
// a string (JSON string).
using Cell = std::variant<long, std::string>;

std::string cell_text(const Cell& c) {
  if (const long* v = std::get_if<long>(&c)) return std::to_string(*v);
  return std::get<std::string>(c);
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

// CSV and JSON rows are written as they arrive; text is aligned once all
// rows are known.
class TableWriter {
 public:
  TableWriter(std::ostream& out, Format format, std::vector<std::string> columns)
      : out_(out), format_(format), columns_(std::move(columns)) {
    if (format_ == Format::Csv) {
      for (std::size_t i = 0; i < columns_.size(); ++i) {
        out_ << (i ? "," : "") << csv_quote(columns_[i]);
      }
      out_ << "\n";
    }
  }

  void row(std::vector<Cell> cells) {
    switch (format_) {
      case Format::Csv:
        for (std::size_t i = 0; i < cells.size(); ++i) {
          out_ << (i ? "," : "") << csv_quote(cell_text(cells[i]));
        }
        out_ << "\n";
        out_.flush();
        break;
      case Format::Json: {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < cells.size(); ++i) {
          if (const long* v = std::get_if<long>(&cells[i])) {
            obj[columns_[i]] = *v;
          } else {
            obj[columns_[i]] = std::get<std::string>(cells[i]);
          }
        }
        out_ << obj.dump() << "\n";
        out_.flush();
        break;
      }
      case Format::Text: {
        std::vector<std::string> text;
        for (const auto& c : cells) text.push_back(cell_text(c));
        buffered_.push_back(std::move(text));
        break;
      }
    }
  }

  void finish() {
    if (format_ != Format::Text) return;
    std::vector<std::size_t> width(columns_.size());
    for (std::size_t i = 0; i < columns_.size(); ++i) width[i] = columns_[i].size();
    for (const auto& r : buffered_) {
      for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
    }
    auto line = [&](const std::vector<std::string>& r) {
      std::string s;
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) s += "  ";
        s += std::string(width[i] - r[i].size(), ' ') + r[i];
      }
      out_ << s << "\n";
    };
    line(columns_);
    for (const auto& r : buffered_) line(r);
    buffered_.clear();
  }

 private:
  std::ostream& out_;
  Format format_;
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> buffered_;
};

struct NRange {
  unsigned long first = 1;
  unsigned long last = 1;
  bool single() const { return first == last; }
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

unsigned long parse_count(const std::string& text, const char* what) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw UsageError(std::string("invalid ") + what + " '" + text + "'");
  }
  return std::stoul(text);
}

NRange parse_n(const std::string& text) {
  NRange r;
  auto dots = text.find("..");
  if (dots == std::string::npos) {
    r.first = r.last = parse_count(text, "n");
  } else {
    r.first = parse_count(text.substr(0, dots), "n");
    r.last = parse_count(text.substr(dots + 2), "n");
  }
  if (r.first == 0 || r.last < r.first) throw UsageError("n must be a positive value or range a..b");
  return r;
}

std::pair<unsigned, unsigned> parse_pair(const std::string& text, const char* what) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError(std::string(what) + " expects p1,p2");
  return {static_cast<unsigned>(parse_count(text.substr(0, comma), what)),
          static_cast<unsigned>(parse_count(text.substr(comma + 1), what))};
}

unsigned default_cap() {
  if (const char* env = std::getenv("CHILDSTAT_ENUM_CAP")) {
    return static_cast<unsigned>(parse_count(env, "CHILDSTAT_ENUM_CAP"));
  }
  return kDefaultEnumerationCap;
}

// Computes rows for n = first..last in parallel batches and hands them to
// `emit` in ascending n.
void for_each_n(const NRange& range, const std::function<std::vector<Cell>(unsigned long)>& compute,
                const std::function<void(std::vector<Cell>)>& emit) {
  unsigned long batch = 1;
#ifdef _OPENMP
  batch = 4UL * static_cast<unsigned long>(omp_get_max_threads());
#endif
  for (unsigned long start = range.first; start <= range.last; start += batch) {
    const unsigned long stop = std::min(range.last, start + batch - 1);
    std::vector<std::vector<Cell>> rows(stop - start + 1);
    std::vector<std::string> failures(rows.size());
    const long count = static_cast<long>(rows.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < count; ++i) {
      try {
        rows[static_cast<std::size_t>(i)] = compute(start + static_cast<unsigned long>(i));
      } catch (...) {
        failures[static_cast<std::size_t>(i)] = "failed";
      }
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      // Recompute serially to rethrow the original error.
      if (!failures[i].empty()) compute(start + i);
      emit(std::move(rows[i]));
    }
  }
}

struct Common {
  std::string child_set = "";
  std::string format = "text";
  unsigned digits = kDefaultDigits;

  ChildSet set() const { return ChildSet::parse(child_set); }
  Format fmt() const {
    if (format == "json") return Format::Json;
    if (format == "csv") return Format::Csv;
    return Format::Text;
  }
};

void add_common(CLI::App* cmd, Common& c, bool with_digits) {
  cmd->add_option("-S,--set", c.child_set, "allowed child counts, e.g. 0,1,2")->required();
  cmd->add_option("--format", c.format, "text | csv | json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  if (with_digits) cmd->add_option("--digits", c.digits, "decimal places for real values");
}

std::string to_str(const ExactInt& v) { return v.get_str(); }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact child-count statistics of ordered trees", "childstat"};
  app.require_subcommand(1);

  Common common;
  std::string n_text = "1";
  std::optional<unsigned> s1_opt, s2_opt;
  std::string p_text = "1,0";
  std::string max_p_text = "2,2";
  unsigned terms = 40, max_order = 3, max_degree = 3, margin = 8;
  unsigned cap = 0;
  unsigned long sample_count = 1;
  std::uint64_t seed = 1;

  auto* count_cmd = app.add_subcommand("count", "number of trees on n vertices");
  add_common(count_cmd, common, false);
  count_cmd->add_option("-n", n_text, "vertex count or range a..b")->required();

  auto* num_cmd = app.add_subcommand("numerator", "N_{p1,p2}: sum over trees of X_s1^p1 X_s2^p2");
  add_common(num_cmd, common, false);
  num_cmd->add_option("-n", n_text, "vertex count or range a..b")->required();
  num_cmd->add_option("--s1", s1_opt)->required();
  num_cmd->add_option("--s2", s2_opt);
  num_cmd->add_option("--p", p_text, "powers p1,p2");

  auto* mom_cmd = app.add_subcommand("moments", "raw and central moments");
  auto* sc_cmd = app.add_subcommand("scaled", "scaled mixed moments alpha_{p1,p2}");
  auto* nc_cmd = app.add_subcommand("normal-compare", "scaled moments vs bivariate normal");
  for (auto* cmd : {mom_cmd, sc_cmd, nc_cmd}) {
    add_common(cmd, common, true);
    cmd->add_option("-n", n_text, "vertex count")->required();
    cmd->add_option("--s1", s1_opt)->required();
    cmd->add_option("--s2", s2_opt)->required();
  }
  mom_cmd->add_option("--max-p", max_p_text, "grid bound p1,p2");
  nc_cmd->add_option("--max-p", max_p_text, "grid bound p1,p2");
  auto* sc_p = sc_cmd->add_option("--p", p_text, "single cell p1,p2");
  sc_cmd->add_option("--max-p", max_p_text, "grid bound p1,p2")->excludes(sc_p);

  auto* rec_cmd = app.add_subcommand("guess-rec", "guess a P-recursive recurrence for N(n)");
  add_common(rec_cmd, common, false);
  rec_cmd->add_option("--s1", s1_opt, "statistic (omit for the tree count)");
  rec_cmd->add_option("--s2", s2_opt);
  rec_cmd->add_option("--p", p_text, "powers p1,p2");
  rec_cmd->add_option("--terms", terms, "terms n = 1..terms");
  rec_cmd->add_option("--max-order", max_order);
  rec_cmd->add_option("--max-degree", max_degree);
  rec_cmd->add_option("--margin", margin, "held-out terms");

  auto* enum_cmd = app.add_subcommand("enumerate", "all trees on n vertices, one code per line");
  add_common(enum_cmd, common, false);
  enum_cmd->add_option("-n", n_text)->required();
  enum_cmd->add_option("--cap", cap, "enumeration cap (default 18 or $CHILDSTAT_ENUM_CAP)");

  auto* sample_cmd = app.add_subcommand("sample", "uniform random trees, one code per line");
  add_common(sample_cmd, common, false);
  sample_cmd->add_option("-n", n_text)->required();
  sample_cmd->add_option("--count", sample_count, "number of trees");
  sample_cmd->add_option("--seed", seed);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kSuccess;
    }
    err << "error: Usage: " << e.what() << "\n";
    return kUsage;
  }

  try {
    const ChildSet set = common.set();
    const Format format = common.fmt();
    const unsigned digits = common.digits;
    const NRange range = parse_n(n_text);
    auto require_single = [&](const char* cmd) {
      if (!range.single()) throw UsageError(std::string(cmd) + " takes a single n");
      return range.first;
    };

    if (count_cmd->parsed()) {
      if (range.single() && format == Format::Text) {
        out << to_str(count_trees(set, range.first)) << "\n";
        return kSuccess;
      }
      TableWriter table(out, format, {"n", "count"});
      for_each_n(
          range,
          [&](unsigned long n) -> std::vector<Cell> {
            return {static_cast<long>(n), to_str(count_trees(set, n))};
          },
          [&](std::vector<Cell> row) { table.row(std::move(row)); });
      table.finish();
      return kSuccess;
    }

    if (num_cmd->parsed()) {
      auto [p1, p2] = parse_pair(p_text, "--p");
      NumeratorQuery base{set, range.first, *s1_opt, s2_opt, p1, p2};
      validate(base);
      if (range.single() && format == Format::Text) {
        out << to_str(numerator_mixed(base)) << "\n";
        return kSuccess;
      }
      TableWriter table(out, format, {"n", "s1", "s2", "p1", "p2", "value"});
      const long s2_cell = s2_opt ? static_cast<long>(*s2_opt) : -1;
      for_each_n(
          range,
          [&](unsigned long n) -> std::vector<Cell> {
            NumeratorQuery q = base;
            q.n = n;
            return {static_cast<long>(n), static_cast<long>(*s1_opt), s2_cell,
                    static_cast<long>(p1), static_cast<long>(p2), to_str(numerator_mixed(q))};
          },
          [&](std::vector<Cell> row) { table.row(std::move(row)); });
      table.finish();
      return kSuccess;
    }

    if (mom_cmd->parsed()) {
      const unsigned long n = require_single("moments");
      auto [m1, m2] = parse_pair(max_p_text, "--max-p");
      MomentReport report = moment_report({set, n, *s1_opt, *s2_opt, m1, m2}, digits);
      TableWriter table(out, format,
                        {"p1", "p2", "raw", "raw_decimal", "central", "central_decimal"});
      for (const auto& [key, raw] : report.raw) {
        const ExactRat& central = report.central.at(key);
        table.row({static_cast<long>(key.first), static_cast<long>(key.second),
                   to_fraction_string(raw), render_decimal(raw, digits),
                   to_fraction_string(central), render_decimal(central, digits)});
      }
      table.finish();
      return kSuccess;
    }

    if (sc_cmd->parsed()) {
      const unsigned long n = require_single("scaled");
      std::vector<std::pair<unsigned, unsigned>> cells;
      unsigned g1 = 2, g2 = 2;
      if (sc_cmd->count("--max-p") > 0) {
        std::tie(g1, g2) = parse_pair(max_p_text, "--max-p");
        for (unsigned a = 0; a <= g1; ++a) {
          for (unsigned b = 0; b <= g2; ++b) cells.emplace_back(a, b);
        }
      } else {
        auto cell = parse_pair(sc_cmd->count("--p") > 0 ? p_text : "1,1", "--p");
        cells.push_back(cell);
        g1 = std::max(g1, cell.first);
        g2 = std::max(g2, cell.second);
      }
      MomentTable moments({set, n, *s1_opt, *s2_opt, g1, g2});
      TableWriter table(out, format, {"p1", "p2", "alpha", "alpha_squared", "exact"});
      for (auto [a, b] : cells) {
        ScaledValue v = moments.scaled(a, b, digits);
        table.row({static_cast<long>(a), static_cast<long>(b), v.rendered,
                   to_fraction_string(v.square),
                   v.exact_value ? to_fraction_string(*v.exact_value) : std::string()});
      }
      table.finish();
      return kSuccess;
    }

    if (nc_cmd->parsed()) {
      const unsigned long n = require_single("normal-compare");
      auto [m1, m2] = parse_pair(max_p_text, "--max-p");
      NormalityGapReport report =
          normality_gap_report({set, n, *s1_opt, *s2_opt, m1, m2}, m1, m2, digits);
      TableWriter table(out, format, {"p1", "p2", "rho", "alpha", "normal", "gap"});
      for (const auto& row : report.rows) {
        table.row({static_cast<long>(row.p1), static_cast<long>(row.p2), report.rho.rendered,
                   row.alpha_rendered, row.normal_rendered, row.gap_rendered});
      }
      table.finish();
      return kSuccess;
    }

    if (rec_cmd->parsed()) {
      auto [p1, p2] = parse_pair(p_text, "--p");
      IndexedSequence seq{1, {}};
      if (s1_opt) {
        seq.terms = numerator_sequence(set, *s1_opt, s2_opt, p1, p2, terms).column(p1, p2);
      } else {
        seq.terms = numerator_sequence(set, 0, std::nullopt, 0, 0, terms).column(0, 0);
      }
      GuessOptions options{max_order, max_degree, margin};
      std::optional<Recurrence> rec;
      try {
        rec = guess_recurrence(seq, options);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::InsufficientData) throw UsageError(e.what());
        throw;
      }
      if (format == Format::Json) {
        nlohmann::ordered_json obj;
        obj["found"] = rec.has_value();
        if (rec) {
          obj["order"] = rec->order();
          obj["degree"] = rec->degree();
          nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
          for (const auto& p : rec->coefficients) {
            nlohmann::ordered_json poly = nlohmann::ordered_json::array();
            for (const auto& c : p.coeffs()) poly.push_back(c.get_str());
            coeffs.push_back(poly);
          }
          obj["coefficients"] = coeffs;
          obj["verified_from"] = rec->verified_from;
          obj["verified_to"] = rec->verified_to;
          obj["recurrence"] = rec->to_string();
        }
        out << obj.dump() << "\n";
      } else if (format == Format::Csv) {
        TableWriter table(out, format, {"j", "coefficients"});
        if (rec) {
          for (unsigned j = 0; j <= rec->order(); ++j) {
            std::string cs;
            for (const auto& c : rec->coefficients[j].coeffs()) cs += (cs.empty() ? "" : " ") + c.get_str();
            table.row({static_cast<long>(j), cs});
          }
        }
      } else {
        out << (rec ? rec->to_string() : std::string("none")) << "\n";
      }
      return kSuccess;
    }

    if (enum_cmd->parsed()) {
      const unsigned long n = require_single("enumerate");
      const unsigned limit = cap > 0 ? cap : default_cap();
      if (n > limit) {
        throw Error(ErrorCode::EnumerationTooLarge,
                    "n = " + std::to_string(n) + " exceeds cap " + std::to_string(limit));
      }
      for_each_tree(
          set, static_cast<unsigned>(n),
          [&](std::span<const unsigned> code) {
            for (std::size_t i = 0; i < code.size(); ++i) out << (i ? " " : "") << code[i];
            out << "\n";
          },
          limit);
      return kSuccess;
    }

    if (sample_cmd->parsed()) {
      const unsigned long n = require_single("sample");
      TreeSampler sampler(set, static_cast<unsigned>(n));
      std::mt19937_64 rng(seed);
      for (unsigned long i = 0; i < sample_count; ++i) {
        out << sampler.sample(static_cast<unsigned>(n), rng).to_string() << "\n";
      }
      return kSuccess;
    }
  } catch (const UsageError& e) {
    err << "error: Usage: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    const bool usage = e.code() == ErrorCode::InvalidChildSet ||
                       e.code() == ErrorCode::InvalidQuery ||
                       e.code() == ErrorCode::InsufficientData;
    return usage ? kUsage : kDomain;
  }
  return kUsage;
}

}  // namespace childstat::cli
