#ifndef SATLAB_LABEL_FUNCTION_HPP_
#define SATLAB_LABEL_FUNCTION_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace satlab {

// A 0/1 labelling of a fixed finite domain, packed 64 bits per word.
// Unused high bits of the last word are always zero.
class LabelFunction {
 public:
  LabelFunction() = default;
  explicit LabelFunction(std::size_t n, bool value = false);
  // "0110" -> bit 0 is '0', bit 1 is '1', ...
  static LabelFunction from_string(std::string_view bits);
  static LabelFunction from_vector(const std::vector<int>& bits);

  std::size_t size() const { return size_; }
  std::size_t word_count() const { return words_.size(); }
  const std::uint64_t* words() const { return words_.data(); }
  std::uint64_t* words() { return words_.data(); }
  std::uint64_t word(std::size_t i) const { return words_[i]; }

  bool operator[](std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  bool get(std::size_t i) const;
  void set(std::size_t i, bool value = true);
  void flip(std::size_t i);

  std::size_t count() const;
  bool none() const;
  bool all() const;
  bool is_subset_of(const LabelFunction& other) const;
  bool intersects(const LabelFunction& other) const;

  LabelFunction operator~() const;
  LabelFunction& operator&=(const LabelFunction& other);
  LabelFunction& operator|=(const LabelFunction& other);
  LabelFunction& operator^=(const LabelFunction& other);
  friend LabelFunction operator&(LabelFunction a, const LabelFunction& b) { return a &= b; }
  friend LabelFunction operator|(LabelFunction a, const LabelFunction& b) { return a |= b; }
  friend LabelFunction operator^(LabelFunction a, const LabelFunction& b) { return a ^= b; }

  // Indices of set bits, ascending.
  std::vector<std::size_t> ones() const;
  // Restriction to the given positions, in that order.
  LabelFunction restrict_to(const std::vector<std::size_t>& positions) const;
  std::string str() const;
  std::size_t hash() const;

  friend bool operator==(const LabelFunction& a, const LabelFunction& b) {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }
  // Total order: by size, then by the packed words read as little-endian
  // numbers, compared from the highest word down.
  friend std::strong_ordering operator<=>(const LabelFunction& a, const LabelFunction& b);

 private:
  void check_same_size(const LabelFunction& other) const;
  void clear_tail();

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace satlab

template <>
struct std::hash<satlab::LabelFunction> {
  std::size_t operator()(const satlab::LabelFunction& f) const noexcept { return f.hash(); }
};

#endif  // SATLAB_LABEL_FUNCTION_HPP_
