#include "earring/word.hpp"

#include <algorithm>
#include <cctype>

#include "earring/errors.hpp"

namespace earring {

namespace {

constexpr std::string_view kEpsilon = "ε";

Letter parse_letter(std::string_view token, std::size_t position) {
  auto fail = [&] {
    throw ParseError("malformed letter '" + std::string(token) + "' at token " +
                         std::to_string(position),
                     std::string(token), position);
  };
  std::string_view body = token;
  int sign = +1;
  if (body.size() >= 2 && body.substr(body.size() - 2) == "^-") {
    sign = -1;
    body.remove_suffix(2);
  }
  if (body.size() < 2 || body.front() != 'd') fail();
  body.remove_prefix(1);
  std::uint64_t index = 0;
  for (char c : body) {
    if (!std::isdigit(static_cast<unsigned char>(c))) fail();
    index = index * 10 + static_cast<std::uint64_t>(c - '0');
    if (index > 0xFFFFFFFFu) fail();
  }
  if (index == 0) fail();
  return Letter{static_cast<GenIndex>(index), sign};
}

}  // namespace

Word parse_word(std::string_view text) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) tokens.push_back(text.substr(start, i - start));
  }
  if (tokens.size() == 1 && tokens.front() == kEpsilon) return Word{};

  Word w;
  for (std::size_t pos = 0; pos < tokens.size(); ++pos) {
    w.push_back(parse_letter(tokens[pos], pos));
  }
  return w;
}

std::string to_string(const Letter& l) {
  std::string s = "d" + std::to_string(l.index);
  if (l.sign < 0) s += "^-";
  return s;
}

std::string to_string(const Word& w) {
  if (w.empty()) return std::string(kEpsilon);
  std::string s;
  for (const Letter& l : w) {
    if (!s.empty()) s += ' ';
    s += to_string(l);
  }
  return s;
}

Word inverse(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
    out.push_back(it->inverse());
  }
  return Word(std::move(out));
}

Word concat(const Word& v, const Word& w) {
  Word out = v;
  out.append(w);
  return out;
}

Word project(const Word& w, const GenSet& gens) {
  std::vector<Letter> out;
  for (const Letter& l : w) {
    if (gens.contains(l.index)) out.push_back(l);
  }
  return Word(std::move(out));
}

GenSet supp(const Word& w) {
  GenSet s;
  for (const Letter& l : w) s.insert(l.index);
  return s;
}

Word free_reduce(const Word& w) {
  std::vector<Letter> stack;
  stack.reserve(w.size());
  for (const Letter& l : w) {
    if (!stack.empty() && stack.back().cancels(l)) {
      stack.pop_back();
    } else {
      stack.push_back(l);
    }
  }
  return Word(std::move(stack));
}

bool equivalent(const Word& v, const Word& w) {
  GenSet gens = supp(v);
  gens.merge(supp(w));
  return free_reduce(project(v, gens)) == free_reduce(project(w, gens));
}

bool is_reduced(const Word& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if (w[i].cancels(w[i + 1])) return false;
  }
  return true;
}

}  // namespace earring
