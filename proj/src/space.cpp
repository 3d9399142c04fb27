#include "earring/space.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "earring/errors.hpp"

namespace earring {

const BasePoint& SpaceModel::dense_point(GenIndex n) const {
  if (n == 0 || n > dense_.size()) {
    throw DomainError("dense point d" + std::to_string(n) + " is outside the materialized prefix (" +
                      std::to_string(dense_.size()) + " points) of model '" + name() + "'");
  }
  return dense_[n - 1];
}

namespace {

constexpr int kDenseLevels = 5;

double euclid(const BasePoint& x, const BasePoint& y) {
  return std::hypot(x.at(0) - y.at(0), x.at(1) - y.at(1));
}

class PlaneModel final : public SpaceModel {
 public:
  enum class Kind { Square, Disk };

  explicit PlaneModel(Kind kind) : kind_(kind) {
    const double lo = kind == Kind::Square ? 0.0 : -1.0;
    for (int level = 0; level <= kDenseLevels; ++level) {
      const long cells = (kind == Kind::Square ? 1L : 2L) << level;
      const double step = std::ldexp(1.0, -level);
      for (long j = 0; j <= cells; ++j) {
        for (long i = 0; i <= cells; ++i) {
          if (level > 0 && i % 2 == 0 && j % 2 == 0) continue;  // listed earlier
          BasePoint p{lo + static_cast<double>(i) * step, lo + static_cast<double>(j) * step};
          if (contains(p)) dense_.push_back(std::move(p));
        }
      }
    }
  }

  std::string name() const override { return kind_ == Kind::Square ? "unit-square" : "disk"; }

  double base_distance(const BasePoint& x, const BasePoint& y) const override {
    return euclid(x, y);
  }

  bool contains(const BasePoint& x) const override {
    if (x.size() != 2 || !std::isfinite(x[0]) || !std::isfinite(x[1])) return false;
    if (kind_ == Kind::Square) return 0.0 <= x[0] && x[0] <= 1.0 && 0.0 <= x[1] && x[1] <= 1.0;
    return x[0] * x[0] + x[1] * x[1] <= 1.0;
  }

  BasePoint sample(std::mt19937_64& rng) const override {
    if (kind_ == Kind::Square) {
      std::uniform_real_distribution<double> u(0.0, 1.0);
      return {u(rng), u(rng)};
    }
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    while (true) {
      BasePoint p{u(rng), u(rng)};
      if (contains(p)) return p;
    }
  }

  bool is_builtin_convex() const override { return true; }

 private:
  Kind kind_;
};

class FiniteModel final : public SpaceModel {
 public:
  FiniteModel(std::string name, std::vector<std::vector<double>> d)
      : name_(std::move(name)), d_(std::move(d)) {
    const std::size_t k = d_.size();
    if (k == 0) throw DomainError("finite model '" + name_ + "' has no points");
    for (const auto& row : d_) {
      if (row.size() != k) throw DomainError("finite model '" + name_ + "': matrix is not square");
    }
    constexpr double tol = 1e-12;
    for (std::size_t i = 0; i < k; ++i) {
      if (d_[i][i] != 0.0) {
        throw DomainError("finite model '" + name_ + "': nonzero self-distance at " +
                          std::to_string(i));
      }
      for (std::size_t j = 0; j < k; ++j) {
        if (!std::isfinite(d_[i][j]) || d_[i][j] < 0.0) {
          throw DomainError("finite model '" + name_ + "': invalid distance at (" +
                            std::to_string(i) + "," + std::to_string(j) + ")");
        }
        if (i != j && d_[i][j] == 0.0) {
          throw DomainError("finite model '" + name_ + "': distinct points " + std::to_string(i) +
                            " and " + std::to_string(j) + " at distance 0");
        }
        if (std::abs(d_[i][j] - d_[j][i]) > tol) {
          throw DomainError("finite model '" + name_ + "': asymmetric at (" + std::to_string(i) +
                            "," + std::to_string(j) + ")");
        }
        for (std::size_t l = 0; l < k; ++l) {
          if (d_[i][l] > d_[i][j] + d_[j][l] + tol) {
            throw DomainError("finite model '" + name_ + "': triangle inequality fails for (" +
                              std::to_string(i) + "," + std::to_string(j) + "," +
                              std::to_string(l) + ")");
          }
        }
      }
    }
    for (std::size_t i = 0; i < k; ++i) dense_.push_back({static_cast<double>(i)});
  }

  std::string name() const override { return name_; }

  double base_distance(const BasePoint& x, const BasePoint& y) const override {
    if (!contains(x) || !contains(y)) throw DomainError("point outside finite model '" + name_ + "'");
    return d_[static_cast<std::size_t>(x[0])][static_cast<std::size_t>(y[0])];
  }

  bool contains(const BasePoint& x) const override {
    return x.size() == 1 && x[0] >= 0.0 && x[0] < static_cast<double>(d_.size()) &&
           x[0] == std::floor(x[0]);
  }

  BasePoint sample(std::mt19937_64& rng) const override {
    std::uniform_int_distribution<std::size_t> u(0, d_.size() - 1);
    return {static_cast<double>(u(rng))};
  }

 private:
  std::string name_;
  std::vector<std::vector<double>> d_;
};

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

double parse_double(std::string_view s, std::string_view context) {
  std::string t = trim(s);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
    throw ParseError(std::string(context) + ": malformed number '" + t + "'", t, 0);
  }
  return v;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

ModelPtr unit_square() {
  static const ModelPtr model = std::make_shared<PlaneModel>(PlaneModel::Kind::Square);
  return model;
}

ModelPtr unit_disk() {
  static const ModelPtr model = std::make_shared<PlaneModel>(PlaneModel::Kind::Disk);
  return model;
}

ModelPtr finite_model(std::string name, std::vector<std::vector<double>> distances) {
  return std::make_shared<FiniteModel>(std::move(name), std::move(distances));
}

ModelPtr parse_finite_model(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::string name = "custom";
  std::size_t points = 0;
  bool have_points = false;
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (t.rfind("format:", 0) == 0) {
      if (trim(t.substr(7)) != "1") throw ParseError("model file: unsupported format", t, line_no);
    } else if (t.rfind("name:", 0) == 0) {
      name = trim(t.substr(5));
    } else if (t.rfind("points:", 0) == 0) {
      points = static_cast<std::size_t>(parse_double(t.substr(7), "model file"));
      have_points = true;
    } else {
      std::istringstream row_in(t);
      std::vector<double> row;
      std::string cell;
      while (row_in >> cell) row.push_back(parse_double(cell, "model file"));
      rows.push_back(std::move(row));
    }
  }
  if (!have_points || rows.size() != points) {
    throw ParseError("model file: expected a 'points:' header followed by that many rows", name, 0);
  }
  return finite_model(name, std::move(rows));
}

ModelPtr load_finite_model(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw DomainError("cannot open model file '" + file + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_finite_model(buf.str());
}

ModelPtr model_by_name(const std::string& name) {
  if (name == "unit-square") return unit_square();
  if (name == "disk" || name == "unit-disk") return unit_disk();
  if (const char* dir = std::getenv("EARRING_MODEL_DIR")) {
    std::filesystem::path candidate = std::filesystem::path(dir) / (name + ".model");
    if (std::filesystem::exists(candidate)) return load_finite_model(candidate.string());
  }
  if (std::filesystem::exists(name)) return load_finite_model(name);
  throw DomainError("unknown space model '" + name + "'");
}

EPoint canonical(const EPoint& p, const SpaceModel& model) {
  if (const auto* c = std::get_if<OnCircle>(&p)) {
    if (c->theta == 0.0) return OnBase{model.dense_point(c->n)};
    (void)model.dense_point(c->n);
  }
  return p;
}

double circle_metric(double theta1, double theta2) {
  for (double t : {theta1, theta2}) {
    if (!(t >= 0.0 && t < 1.0)) {
      throw DomainError("circle coordinate " + format_double(t) + " is outside [0,1)");
    }
  }
  double d = std::abs(theta1 - theta2);
  return std::min(d, 1.0 - d);
}

namespace {

// rho_x(u, o) for the fibre a point lies on: zero on X.
double height(const EPoint& p) {
  if (const auto* c = std::get_if<OnCircle>(&p)) return circle_metric(c->theta, 0.0) / c->n;
  return 0.0;
}

}  // namespace

double distance(const EPoint& p, const EPoint& q, const SpaceModel& model) {
  const EPoint cp = canonical(p, model);
  const EPoint cq = canonical(q, model);
  const auto* a = std::get_if<OnCircle>(&cp);
  const auto* b = std::get_if<OnCircle>(&cq);
  if (a && b && a->n == b->n) return circle_metric(a->theta, b->theta) / a->n;
  return model.base_distance(retract(cp, model), retract(cq, model)) + height(cp) + height(cq);
}

BasePoint retract(const EPoint& p, const SpaceModel& model) {
  if (const auto* c = std::get_if<OnCircle>(&p)) return model.dense_point(c->n);
  return std::get<OnBase>(p).x;
}

HPoint quotient(const EPoint& p) {
  if (const auto* c = std::get_if<OnCircle>(&p); c && c->theta != 0.0) return *c;
  return Star{};
}

double quotient_distance(const HPoint& h1, const HPoint& h2) {
  const auto* a = std::get_if<OnCircle>(&h1);
  const auto* b = std::get_if<OnCircle>(&h2);
  if (!a && !b) return 0.0;
  if (a && b && a->n == b->n) return circle_metric(a->theta, b->theta) / a->n;
  double d = 0.0;
  if (a) d += circle_metric(a->theta, 0.0) / a->n;
  if (b) d += circle_metric(b->theta, 0.0) / b->n;
  return d;
}

double diam(std::span<const EPoint> points, const SpaceModel& model) {
  if (points.empty()) throw DomainError("diameter of an empty set");
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      best = std::max(best, distance(points[i], points[j], model));
    }
  }
  return best;
}

EPoint parse_point(std::string_view text) {
  auto fail = [&] {
    throw ParseError("malformed point '" + std::string(text) + "' (expected b:x,y or c:n:theta)",
                     std::string(text), 0);
  };
  if (text.size() < 3 || text[1] != ':') fail();
  std::string_view body = text.substr(2);
  if (text[0] == 'b') {
    BasePoint x;
    std::size_t start = 0;
    while (true) {
      std::size_t comma = body.find(',', start);
      x.push_back(parse_double(body.substr(start, comma - start), "point"));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return OnBase{std::move(x)};
  }
  if (text[0] == 'c') {
    std::size_t colon = body.find(':');
    if (colon == std::string_view::npos) fail();
    double n = parse_double(body.substr(0, colon), "point");
    if (n < 1 || n != std::floor(n)) fail();
    const double theta = parse_double(body.substr(colon + 1), "point");
    if (!(theta >= 0 && theta < 1)) fail();
    return OnCircle{static_cast<GenIndex>(n), theta};
  }
  fail();
  return {};
}

std::string to_string(const BasePoint& x) {
  std::string out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += ',';
    out += format_double(x[i]);
  }
  return out;
}

std::string to_string(const EPoint& p) {
  if (const auto* c = std::get_if<OnCircle>(&p)) {
    return "c:" + std::to_string(c->n) + ":" + format_double(c->theta);
  }
  return "b:" + to_string(std::get<OnBase>(p).x);
}

std::string to_string(const HPoint& h) {
  if (const auto* c = std::get_if<OnCircle>(&h)) {
    return "(" + std::to_string(c->n) + "," + format_double(c->theta) + ")";
  }
  return "*";
}

}  // namespace earring
