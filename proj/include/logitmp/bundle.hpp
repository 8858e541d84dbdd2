#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace logitmp {

// A set of products (1-based item ids) held in ascending order. Two bundles
// with the same items compare equal regardless of how they were built.
class Bundle {
 public:
  Bundle() = default;
  Bundle(std::initializer_list<int> items);
  explicit Bundle(std::vector<int> items);

  static Bundle singleton(int item) { return Bundle({item}); }

  std::span<const int> items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  int front() const { return items_.front(); }
  int back() const { return items_.back(); }

  bool contains(int item) const;
  bool is_subset_of(const Bundle& other) const;
  bool intersects(const Bundle& other) const;
  Bundle intersect(const Bundle& other) const;
  Bundle unite(const Bundle& other) const;
  Bundle minus(const Bundle& other) const;
  // Drops the largest item.
  Bundle without_last() const;

  // "1_2_3"; the empty bundle is "empty".
  std::string key() const;
  // "{1,2,3}"
  std::string str() const;

  friend bool operator==(const Bundle&, const Bundle&) = default;
  // Lexicographic on the ascending item list.
  friend auto operator<=>(const Bundle& a, const Bundle& b) {
    return a.items_ <=> b.items_;
  }

 private:
  std::vector<int> items_;
};

// Size first, then lexicographic.
struct BySizeThenLex {
  bool operator()(const Bundle& a, const Bundle& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

struct BundleHash {
  std::size_t operator()(const Bundle& b) const noexcept;
};

}  // namespace logitmp

template <>
struct std::hash<logitmp::Bundle> {
  std::size_t operator()(const logitmp::Bundle& b) const noexcept {
    return logitmp::BundleHash{}(b);
  }
};
