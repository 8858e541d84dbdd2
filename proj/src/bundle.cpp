#include "logitmp/bundle.hpp"

#include <algorithm>
#include <iterator>

#include "logitmp/error.hpp"

namespace logitmp {

Bundle::Bundle(std::initializer_list<int> items) : Bundle(std::vector<int>(items)) {}

Bundle::Bundle(std::vector<int> items) : items_(std::move(items)) {
  std::sort(items_.begin(), items_.end());
  if (std::adjacent_find(items_.begin(), items_.end()) != items_.end()) {
    throw Error(Errc::InvalidArgument, "bundle lists an item twice");
  }
}

bool Bundle::contains(int item) const {
  return std::binary_search(items_.begin(), items_.end(), item);
}

bool Bundle::is_subset_of(const Bundle& other) const {
  return std::includes(other.items_.begin(), other.items_.end(), items_.begin(),
                       items_.end());
}

bool Bundle::intersects(const Bundle& other) const {
  auto a = items_.begin();
  auto b = other.items_.begin();
  while (a != items_.end() && b != other.items_.end()) {
    if (*a == *b) return true;
    if (*a < *b) {
      ++a;
    } else {
      ++b;
    }
  }
  return false;
}

Bundle Bundle::intersect(const Bundle& other) const {
  Bundle out;
  std::set_intersection(items_.begin(), items_.end(), other.items_.begin(),
                        other.items_.end(), std::back_inserter(out.items_));
  return out;
}

Bundle Bundle::unite(const Bundle& other) const {
  Bundle out;
  std::set_union(items_.begin(), items_.end(), other.items_.begin(),
                 other.items_.end(), std::back_inserter(out.items_));
  return out;
}

Bundle Bundle::minus(const Bundle& other) const {
  Bundle out;
  std::set_difference(items_.begin(), items_.end(), other.items_.begin(),
                      other.items_.end(), std::back_inserter(out.items_));
  return out;
}

Bundle Bundle::without_last() const {
  Bundle out;
  if (!items_.empty()) out.items_.assign(items_.begin(), items_.end() - 1);
  return out;
}

std::string Bundle::key() const {
  if (items_.empty()) return "empty";
  std::string out;
  for (std::size_t k = 0; k < items_.size(); ++k) {
    if (k > 0) out += '_';
    out += std::to_string(items_[k]);
  }
  return out;
}

std::string Bundle::str() const {
  std::string out = "{";
  for (std::size_t k = 0; k < items_.size(); ++k) {
    if (k > 0) out += ',';
    out += std::to_string(items_[k]);
  }
  return out + "}";
}

std::size_t BundleHash::operator()(const Bundle& b) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (int item : b.items()) {
    h ^= static_cast<std::uint64_t>(item);
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace logitmp
