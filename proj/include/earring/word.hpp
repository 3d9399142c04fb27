#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace earring {

using GenIndex = std::uint32_t;
using GenSet = std::set<GenIndex>;

// A generator d_n (sign +1) or its formal inverse d_n^- (sign -1).
struct Letter {
  GenIndex index = 1;
  int sign = +1;

  constexpr Letter inverse() const { return Letter{index, -sign}; }
  constexpr bool cancels(const Letter& other) const {
    return index == other.index && sign == -other.sign;
  }

  friend constexpr auto operator<=>(const Letter&, const Letter&) = default;
};

constexpr Letter gen(GenIndex n) { return Letter{n, +1}; }
constexpr Letter inv(GenIndex n) { return Letter{n, -1}; }

// A word of finite length. Positions 0..size()-1 carry their natural order.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<Letter> letters) : letters_(letters) {}
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  const Letter& operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<Letter>& letters() const noexcept { return letters_; }

  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }

  void push_back(Letter l) { letters_.push_back(l); }
  void append(const Word& w) {
    letters_.insert(letters_.end(), w.letters_.begin(), w.letters_.end());
  }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

// Whitespace-separated `d<k>` / `d<k>^-` tokens with k >= 1. A lone `ε` or
// blank text is the empty word.
Word parse_word(std::string_view text);
std::string to_string(const Letter& l);
// Space-separated tokens, `ε` for the empty word.
std::string to_string(const Word& w);

Word inverse(const Word& w);
Word concat(const Word& v, const Word& w);
Word project(const Word& w, const GenSet& gens);
GenSet supp(const Word& w);

// Free-group normal form: no two adjacent letters cancel.
Word free_reduce(const Word& w);

// Equality of all finite projections. For finite words the projection onto
// supp(v) ∪ supp(w) decides it.
bool equivalent(const Word& v, const Word& w);

bool is_reduced(const Word& w);

}  // namespace earring
