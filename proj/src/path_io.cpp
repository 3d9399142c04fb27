#include <charconv>
#include <sstream>

#include "earring/errors.hpp"
#include "earring/path.hpp"

namespace earring {

namespace {

struct ParsedLines {
  std::vector<RawSegment> segments;
  std::vector<Rational> breaks;
};

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

BasePoint parse_coords(const std::string& token, std::size_t line) {
  BasePoint x;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = token.find(',', start);
    std::string part = token.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size()) {
      throw ParseError("path line " + std::to_string(line) + ": malformed waypoint '" + token + "'",
                       token, line);
    }
    x.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return x;
}

GenIndex parse_index(const std::string& token, std::size_t line) {
  unsigned long n = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), n);
  if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size() || n == 0) {
    throw ParseError("path line " + std::to_string(line) + ": malformed circle index '" + token + "'",
                     token, line);
  }
  return static_cast<GenIndex>(n);
}

ParsedLines parse_lines(std::string_view text, bool raw) {
  ParsedLines out;
  bool have_breaks = false;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string head;
    if (!(words >> head)) continue;
    std::vector<std::string> args;
    for (std::string a; words >> a;) args.push_back(a);

    auto fail = [&](const std::string& why) {
      throw ParseError("path line " + std::to_string(line_no) + ": " + why, head, line_no);
    };

    if (head == "format:") {
      if (args.size() != 1 || args[0] != "1") fail("unsupported format version");
    } else if (head == "breaks") {
      if (have_breaks) fail("duplicate breaks line");
      have_breaks = true;
      for (const auto& a : args) {
        try {
          out.breaks.push_back(parse_rational(a));
        } catch (const ParseError&) {
          fail("malformed breakpoint '" + a + "'");
        }
      }
    } else if (head == "arc") {
      if (args.empty()) fail("arc needs at least one waypoint");
      BaseArc arc;
      for (const auto& a : args) arc.waypoints.push_back(parse_coords(a, line_no));
      out.segments.emplace_back(std::move(arc));
    } else if (head == "wind" || (raw && head == "exc")) {
      if (args.size() != 2) fail(head + " takes an index and a sign");
      GenIndex n = parse_index(args[0], line_no);
      const std::string& lab = args[1];
      ExcursionLabel label;
      if (lab == "+") {
        label = ExcursionLabel::Positive;
      } else if (lab == "-") {
        label = ExcursionLabel::Negative;
      } else if (raw && head == "exc" && lab == "trivial") {
        label = ExcursionLabel::Trivial;
      } else {
        fail("unknown winding label '" + lab + "'");
      }
      out.segments.emplace_back(Excursion{n, label});
    } else {
      fail("unknown directive '" + head + "'");
    }
  }
  if (!have_breaks) out.breaks = uniform_breaks(out.segments.size());
  if (out.breaks.size() != out.segments.size() + 1) {
    throw ParseError("path: " + std::to_string(out.segments.size()) + " segments need " +
                         std::to_string(out.segments.size() + 1) + " breakpoints",
                     "breaks", 0);
  }
  return out;
}

std::string breaks_line(const std::vector<Rational>& breaks) {
  std::string out = "breaks";
  for (const auto& b : breaks) out += " " + to_string(b);
  return out + "\n";
}

std::string arc_line(const BaseArc& arc) {
  std::string out = "arc";
  for (const auto& x : arc.waypoints) {
    out += ' ';
    for (std::size_t c = 0; c < x.size(); ++c) {
      if (c) out += ',';
      out += format_double(x[c]);
    }
  }
  return out + "\n";
}

}  // namespace

ProperPath parse_path(std::string_view text) {
  ParsedLines lines = parse_lines(text, false);
  ProperPath f;
  f.breaks = std::move(lines.breaks);
  for (auto& s : lines.segments) {
    if (auto* arc = std::get_if<BaseArc>(&s)) {
      f.segments.emplace_back(std::move(*arc));
    } else {
      const auto& e = std::get<Excursion>(s);
      f.segments.emplace_back(Winding{e.n, e.label == ExcursionLabel::Positive ? +1 : -1});
    }
  }
  return f;
}

RawPath parse_raw_path(std::string_view text) {
  ParsedLines lines = parse_lines(text, true);
  return RawPath{std::move(lines.segments), std::move(lines.breaks)};
}

std::string to_string(const ProperPath& f) {
  std::string out = "format: 1\n" + breaks_line(f.breaks);
  for (const Segment& s : f.segments) {
    if (const auto* arc = std::get_if<BaseArc>(&s)) {
      out += arc_line(*arc);
    } else {
      const auto& w = std::get<Winding>(s);
      out += "wind " + std::to_string(w.n) + (w.sign > 0 ? " +\n" : " -\n");
    }
  }
  return out;
}

std::string to_string(const RawPath& g) {
  std::string out = "format: 1\n" + breaks_line(g.breaks);
  for (const RawSegment& s : g.segments) {
    if (const auto* arc = std::get_if<BaseArc>(&s)) {
      out += arc_line(*arc);
    } else {
      const auto& e = std::get<Excursion>(s);
      out += "exc " + std::to_string(e.n);
      switch (e.label) {
        case ExcursionLabel::Trivial: out += " trivial\n"; break;
        case ExcursionLabel::Positive: out += " +\n"; break;
        case ExcursionLabel::Negative: out += " -\n"; break;
      }
    }
  }
  return out;
}

}  // namespace earring
