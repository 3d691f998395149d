#include "childstat/child_set.hpp"
#include "childstat/error.hpp"

#include <algorithm>
#include <charconv>

namespace childstat {

ChildSet::ChildSet(std::vector<long> elements) {
  if (elements.empty()) throw Error(ErrorCode::InvalidChildSet, "child set is empty");
  std::sort(elements.begin(), elements.end());
  if (elements.front() < 0) {
    throw Error(ErrorCode::InvalidChildSet, "child counts must be nonnegative");
  }
  if (std::adjacent_find(elements.begin(), elements.end()) != elements.end()) {
    throw Error(ErrorCode::InvalidChildSet, "child counts must be distinct");
  }
  if (elements.front() != 0) {
    throw Error(ErrorCode::InvalidChildSet, "child set must contain 0");
  }
  elements_.assign(elements.begin(), elements.end());
}

ChildSet ChildSet::parse(std::string_view text) {
  std::vector<long> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = text.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    long value = 0;
    auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || end != item.data() + item.size()) {
      throw Error(ErrorCode::InvalidChildSet,
                  "cannot parse child count '" + std::string(item) + "'");
    }
    values.push_back(value);
    pos = comma + 1;
  }
  return ChildSet(std::move(values));
}

bool ChildSet::contains(long s) const {
  return s >= 0 && std::binary_search(elements_.begin(), elements_.end(),
                                      static_cast<unsigned>(s));
}

std::size_t ChildSet::index_of(unsigned s) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), s);
  return static_cast<std::size_t>(it - elements_.begin());
}

DensePolynomial ChildSet::phi() const {
  DensePolynomial out = DensePolynomial::zeros(max() + 1);
  for (unsigned s : elements_) out[s] = 1;
  return out;
}

std::string ChildSet::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(elements_[i]);
  }
  return out + "}";
}

}  // namespace childstat
