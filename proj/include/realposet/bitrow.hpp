#pragma once

#include <cstdint>
#include <vector>

namespace rp {

// Fixed-size bitset sized at runtime; used for down-sets, up-sets and
// subset masks over poset elements.
class BitRow {
 public:
  BitRow() : n_(0) {}
  explicit BitRow(int n) : n_(n), w_((n + 63) / 64, 0) {}

  static BitRow all(int n) {
    BitRow b(n);
    for (int i = 0; i < n; ++i) b.set(i);
    return b;
  }

  int size() const { return n_; }
  void set(int i) { w_[i >> 6] |= 1ULL << (i & 63); }
  void reset(int i) { w_[i >> 6] &= ~(1ULL << (i & 63)); }
  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

  BitRow& operator&=(const BitRow& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
    return *this;
  }
  BitRow& operator|=(const BitRow& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
    return *this;
  }
  BitRow operator&(const BitRow& o) const {
    BitRow r = *this;
    r &= o;
    return r;
  }

  bool any() const {
    for (const auto w : w_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  int count() const {
    int c = 0;
    for (const auto w : w_) c += __builtin_popcountll(w);
    return c;
  }

  bool is_subset_of(const BitRow& o) const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k] & ~o.w_[k]) return false;
    return true;
  }

  bool intersects(const BitRow& o) const {
    for (std::size_t k = 0; k < w_.size(); ++k)
      if (w_[k] & o.w_[k]) return true;
    return false;
  }

  bool operator==(const BitRow& o) const = default;

  std::vector<int> members() const {
    std::vector<int> out;
    for (int i = 0; i < n_; ++i)
      if (test(i)) out.push_back(i);
    return out;
  }

 private:
  int n_;
  std::vector<std::uint64_t> w_;
};

}  // namespace rp
