#include "satlab/label_function.hpp"

#include <bit>
#include <stdexcept>

namespace satlab {

LabelFunction::LabelFunction(std::size_t n, bool value)
    : size_(n), words_((n + 63) / 64, value ? ~std::uint64_t{0} : 0) {
  clear_tail();
}

LabelFunction LabelFunction::from_string(std::string_view bits) {
  LabelFunction f(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      f.set(i);
    } else if (bits[i] != '0') {
      throw std::invalid_argument("label string may only contain 0 and 1");
    }
  }
  return f;
}

LabelFunction LabelFunction::from_vector(const std::vector<int>& bits) {
  LabelFunction f(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != 0 && bits[i] != 1) throw std::invalid_argument("label entries must be 0 or 1");
    if (bits[i]) f.set(i);
  }
  return f;
}

bool LabelFunction::get(std::size_t i) const {
  if (i >= size_) throw std::out_of_range("label index out of range");
  return (*this)[i];
}

void LabelFunction::set(std::size_t i, bool value) {
  if (i >= size_) throw std::out_of_range("label index out of range");
  const std::uint64_t bit = std::uint64_t{1} << (i & 63);
  if (value) {
    words_[i >> 6] |= bit;
  } else {
    words_[i >> 6] &= ~bit;
  }
}

void LabelFunction::flip(std::size_t i) {
  if (i >= size_) throw std::out_of_range("label index out of range");
  words_[i >> 6] ^= std::uint64_t{1} << (i & 63);
}

std::size_t LabelFunction::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool LabelFunction::none() const {
  for (auto w : words_) {
    if (w) return false;
  }
  return true;
}

bool LabelFunction::all() const { return count() == size_; }

bool LabelFunction::is_subset_of(const LabelFunction& other) const {
  check_same_size(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & ~other.words_[i]) return false;
  }
  return true;
}

bool LabelFunction::intersects(const LabelFunction& other) const {
  check_same_size(other);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & other.words_[i]) return true;
  }
  return false;
}

LabelFunction LabelFunction::operator~() const {
  LabelFunction r = *this;
  for (auto& w : r.words_) w = ~w;
  r.clear_tail();
  return r;
}

LabelFunction& LabelFunction::operator&=(const LabelFunction& other) {
  check_same_size(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

LabelFunction& LabelFunction::operator|=(const LabelFunction& other) {
  check_same_size(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

LabelFunction& LabelFunction::operator^=(const LabelFunction& other) {
  check_same_size(other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
  return *this;
}

std::vector<std::size_t> LabelFunction::ones() const {
  std::vector<std::size_t> out;
  for (std::size_t wi = 0; wi < words_.size(); ++wi) {
    std::uint64_t w = words_[wi];
    while (w) {
      out.push_back(wi * 64 + static_cast<std::size_t>(std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

LabelFunction LabelFunction::restrict_to(const std::vector<std::size_t>& positions) const {
  LabelFunction r(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (get(positions[i])) r.set(i);
  }
  return r;
}

std::string LabelFunction::str() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if ((*this)[i]) s[i] = '1';
  }
  return s;
}

std::size_t LabelFunction::hash() const {
  // splitmix-style mixing per word
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ size_;
  for (auto w : words_) {
    std::uint64_t z = w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    h ^= z ^ (z >> 31);
  }
  return static_cast<std::size_t>(h);
}

std::strong_ordering operator<=>(const LabelFunction& a, const LabelFunction& b) {
  if (a.size_ != b.size_) return a.size_ <=> b.size_;
  for (std::size_t i = a.words_.size(); i-- > 0;) {
    if (a.words_[i] != b.words_[i]) return a.words_[i] <=> b.words_[i];
  }
  return std::strong_ordering::equal;
}

void LabelFunction::check_same_size(const LabelFunction& other) const {
  if (size_ != other.size_) throw std::invalid_argument("label functions over different domains");
}

void LabelFunction::clear_tail() {
  if (size_ % 64 != 0 && !words_.empty()) {
    words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
  }
}

}  // namespace satlab
