#include "conicrank/plane_geometry.hpp"

#include <algorithm>
#include <iomanip>
#include <limits>

namespace conicrank {

namespace {

constexpr std::size_t kAbsent = std::numeric_limits<std::size_t>::max();

template <class Profile>
void note_profile(std::vector<Profile>& seen, const Profile& p) {
  if (std::find(seen.begin(), seen.end(), p) == seen.end()) seen.push_back(p);
}

SquareClass form_class(const Field& f, Elem value) { return f.square_class(value); }

}  // namespace

const char* to_string(PointClass c) {
  switch (c) {
    case PointClass::Absolute: return "absolute";
    case PointClass::Internal: return "internal";
    case PointClass::External: return "external";
  }
  return "?";
}

const char* to_string(LineClass c) {
  switch (c) {
    case LineClass::Tangent: return "tangent";
    case LineClass::Skew: return "skew";
    case LineClass::Secant: return "secant";
  }
  return "?";
}

Triple canonicalize(const Field& f, const Triple& v) {
  for (std::size_t i = 0; i < 3; ++i) {
    if (v[i] != 0) {
      const Elem s = f.inv(v[i]);
      return {f.mul(s, v[0]), f.mul(s, v[1]), f.mul(s, v[2])};
    }
  }
  throw GeometryError("zero vector has no projective representative");
}

Elem dot(const Field& f, const Triple& x, const Triple& y) {
  return f.add(f.add(f.mul(x[0], y[0]), f.mul(x[1], y[1])), f.mul(x[2], y[2]));
}

Elem quadratic_form(const Field& f, const Triple& x) { return f.sub(f.mul(x[1], x[1]), f.mul(x[0], x[2])); }

Elem line_discriminant(const Field& f, const Triple& y) {
  const Elem four = f.from_int(4);
  return f.sub(f.mul(y[1], y[1]), f.mul(four, f.mul(y[2], y[0])));
}

PointClass classify_point(const Field& f, const Triple& x) {
  switch (form_class(f, quadratic_form(f, x))) {
    case SquareClass::Zero: return PointClass::Absolute;
    case SquareClass::NonSquare: return PointClass::Internal;
    case SquareClass::Square: return PointClass::External;
  }
  return PointClass::Absolute;
}

LineClass classify_line(const Field& f, const Triple& y) {
  switch (form_class(f, line_discriminant(f, y))) {
    case SquareClass::Zero: return LineClass::Tangent;
    case SquareClass::NonSquare: return LineClass::Skew;
    case SquareClass::Square: return LineClass::Secant;
  }
  return LineClass::Tangent;
}

std::string format_triple(const Triple& v) {
  return "[" + std::to_string(v[0]) + " " + std::to_string(v[1]) + " " + std::to_string(v[2]) + "]";
}

bool Census::uniform() const {
  for (std::size_t c = 0; c < 3; ++c) {
    if (line_profiles[c].size() != 1 || point_profiles[c].size() != 1) return false;
  }
  return true;
}

Census expected_census(std::size_t q) {
  Census c;
  const std::size_t half_minus = (q - 1) / 2;
  const std::size_t half_plus = (q + 1) / 2;
  c.line_counts = {q + 1, q * (q - 1) / 2, q * (q + 1) / 2};
  c.point_counts = {q + 1, q * (q - 1) / 2, q * (q + 1) / 2};
  c.line_profiles[static_cast<int>(LineClass::Tangent)] = {PointProfile{1, q, 0}};
  c.line_profiles[static_cast<int>(LineClass::Secant)] = {PointProfile{2, half_minus, half_minus}};
  c.line_profiles[static_cast<int>(LineClass::Skew)] = {PointProfile{0, half_plus, half_plus}};
  c.point_profiles[static_cast<int>(PointClass::Absolute)] = {LineProfile{1, q, 0}};
  c.point_profiles[static_cast<int>(PointClass::External)] = {LineProfile{2, half_minus, half_minus}};
  c.point_profiles[static_cast<int>(PointClass::Internal)] = {LineProfile{0, half_plus, half_plus}};
  return c;
}

bool census_matches(const Census& computed, const Census& expected) {
  return computed.line_counts == expected.line_counts && computed.point_counts == expected.point_counts &&
         computed.line_profiles == expected.line_profiles && computed.point_profiles == expected.point_profiles;
}

namespace {

constexpr std::array<LineClass, 3> kLineRows{LineClass::Tangent, LineClass::Secant, LineClass::Skew};
constexpr std::array<PointClass, 3> kPointRows{PointClass::Absolute, PointClass::External, PointClass::Internal};

std::string join_profiles(const std::vector<PointProfile>& v) {
  std::string s;
  for (const auto& p : v) {
    if (!s.empty()) s += '|';
    s += std::to_string(p.absolute) + "/" + std::to_string(p.external) + "/" + std::to_string(p.internal);
  }
  return s;
}

}  // namespace

void write_census_csv(std::ostream& os, const Census& c) {
  os << "kind,class,total,absolute,external,internal,tangent,secant,skew\n";
  for (LineClass lc : kLineRows) {
    const auto i = static_cast<std::size_t>(lc);
    os << "line," << to_string(lc) << ',' << c.line_counts[i];
    if (c.line_profiles[i].size() == 1) {
      const auto& p = c.line_profiles[i].front();
      os << ',' << p.absolute << ',' << p.external << ',' << p.internal << ",,,\n";
    } else {
      os << ",,,,,,\n";
    }
  }
  for (PointClass pc : kPointRows) {
    const auto i = static_cast<std::size_t>(pc);
    os << "point," << to_string(pc) << ',' << c.point_counts[i] << ",,,";
    if (c.point_profiles[i].size() == 1) {
      const auto& p = c.point_profiles[i].front();
      os << ',' << p.tangent << ',' << p.secant << ',' << p.skew << '\n';
    } else {
      os << ",,,\n";
    }
  }
}

void write_census_table(std::ostream& os, const Census& c, std::size_t q) {
  os << "Lines of PG(2," << q << ")\n"
     << "  tangent " << std::setw(8) << c.line_counts[0] << "  skew " << std::setw(8) << c.line_counts[1]
     << "  secant " << std::setw(8) << c.line_counts[2] << '\n';
  os << "Points of PG(2," << q << ")\n"
     << "  absolute " << std::setw(6) << c.point_counts[0] << "  internal " << std::setw(6) << c.point_counts[1]
     << "  external " << std::setw(6) << c.point_counts[2] << '\n';
  os << "Points on lines          absolute/external/internal\n";
  for (LineClass lc : kLineRows) {
    os << "  " << std::left << std::setw(22) << to_string(lc) << std::right
       << join_profiles(c.line_profiles[static_cast<std::size_t>(lc)]) << '\n';
  }
  os << "Lines through points     tangent/secant/skew\n";
  for (PointClass pc : kPointRows) {
    std::string s;
    for (const auto& p : c.point_profiles[static_cast<std::size_t>(pc)]) {
      if (!s.empty()) s += '|';
      s += std::to_string(p.tangent) + "/" + std::to_string(p.secant) + "/" + std::to_string(p.skew);
    }
    os << "  " << std::left << std::setw(22) << to_string(pc) << std::right << s << '\n';
  }
}

Plane::Plane(std::shared_ptr<const Field> field) : field_(std::move(field)) {
  const Field& f = *field_;
  const std::size_t q = f.order();
  const std::size_t cube = q * q * q;

  std::vector<Triple> reps;
  reps.reserve(q * q + q + 1);
  for (std::size_t idx = 1; idx < cube; ++idx) {
    const Triple v = vector_from_index(f, idx);
    if (canonicalize(f, v) == v) reps.push_back(v);
  }

  points_.reserve(reps.size());
  lines_.reserve(reps.size());
  for (const Triple& v : reps) {
    points_.push_back({v, classify_point(f, v)});
    lines_.push_back({v, classify_line(f, v)});
  }
  // reps are in ascending index order already, so a stable sort keeps it within each class.
  std::stable_sort(points_.begin(), points_.end(),
                   [](const auto& a, const auto& b) { return a.cls < b.cls; });
  std::stable_sort(lines_.begin(), lines_.end(), [](const auto& a, const auto& b) { return a.cls < b.cls; });

  for (std::size_t c = 0; c <= 3; ++c) {
    point_offsets_[c] = static_cast<std::size_t>(
        std::count_if(points_.begin(), points_.end(), [c](const auto& p) { return static_cast<std::size_t>(p.cls) < c; }));
    line_offsets_[c] = static_cast<std::size_t>(
        std::count_if(lines_.begin(), lines_.end(), [c](const auto& l) { return static_cast<std::size_t>(l.cls) < c; }));
  }

  point_lookup_.assign(cube, kAbsent);
  line_lookup_.assign(cube, kAbsent);
  for (std::size_t i = 0; i < points_.size(); ++i) point_lookup_[vector_index(f, points_[i].coords)] = i;
  for (std::size_t i = 0; i < lines_.size(); ++i) line_lookup_[vector_index(f, lines_[i].coords)] = i;

  on_conic_.assign(points_.size(), false);
  for (const Triple& c : conic()) on_conic_[point_position(c)] = true;
}

std::size_t Plane::point_position(const Triple& v) const {
  return point_lookup_[vector_index(*field_, canonicalize(*field_, v))];
}

std::size_t Plane::line_position(const Triple& v) const {
  return line_lookup_[vector_index(*field_, canonicalize(*field_, v))];
}

std::vector<Triple> Plane::conic() const {
  const Field& f = *field_;
  std::vector<Triple> out;
  out.reserve(f.order() + 1);
  for (Elem t = 0; t < f.order(); ++t) out.push_back({1, t, f.mul(t, t)});
  out.push_back({0, 0, 1});
  return out;
}

ProjectiveLine Plane::polar(const ProjectivePoint& p) const {
  // M = [[0,0,-1/2],[0,1,0],[-1/2,0,0]]
  const Field& f = *field_;
  const Elem minus_half = f.neg(f.inv(f.from_int(2)));
  const Triple image{f.mul(minus_half, p.coords[2]), p.coords[1], f.mul(minus_half, p.coords[0])};
  return lines_[line_position(image)];
}

ProjectivePoint Plane::pole(const ProjectiveLine& l) const {
  // M^{-1} = [[0,0,-2],[0,1,0],[-2,0,0]]
  const Field& f = *field_;
  const Elem minus_two = f.neg(f.from_int(2));
  const Triple image{f.mul(minus_two, l.coords[2]), l.coords[1], f.mul(minus_two, l.coords[0])};
  return points_[point_position(image)];
}

bool Plane::incident(const ProjectivePoint& p, const ProjectiveLine& l) const {
  return dot(*field_, p.coords, l.coords) == 0;
}

PointProfile Plane::local_census(const ProjectiveLine& l) const {
  PointProfile prof;
  for (const auto& p : points_) {
    if (!incident(p, l)) continue;
    switch (p.cls) {
      case PointClass::Absolute: ++prof.absolute; break;
      case PointClass::External: ++prof.external; break;
      case PointClass::Internal: ++prof.internal; break;
    }
  }
  return prof;
}

LineProfile Plane::local_census(const ProjectivePoint& p) const {
  LineProfile prof;
  for (const auto& l : lines_) {
    if (!incident(p, l)) continue;
    switch (l.cls) {
      case LineClass::Tangent: ++prof.tangent; break;
      case LineClass::Secant: ++prof.secant; break;
      case LineClass::Skew: ++prof.skew; break;
    }
  }
  return prof;
}

Census Plane::global_census() const {
  Census c;
  for (const auto& l : lines_) {
    const auto i = static_cast<std::size_t>(l.cls);
    ++c.line_counts[i];
    note_profile(c.line_profiles[i], local_census(l));
  }
  for (const auto& p : points_) {
    const auto i = static_cast<std::size_t>(p.cls);
    ++c.point_counts[i];
    note_profile(c.point_profiles[i], local_census(p));
  }
  return c;
}

LineClass Plane::classify_line_by_conic(const Triple& y) const {
  std::size_t meets = 0;
  for (const Triple& c : conic()) {
    if (dot(*field_, c, y) == 0) ++meets;
  }
  if (meets == 0) return LineClass::Skew;
  if (meets == 1) return LineClass::Tangent;
  if (meets == 2) return LineClass::Secant;
  throw GeometryError("line meets the conic in more than two points");
}

PointClass Plane::classify_point_by_tangents(const Triple& x) const {
  std::size_t tangents = 0;
  for (const auto& l : lines_) {
    if (dot(*field_, x, l.coords) != 0) continue;
    if (classify_line_by_conic(l.coords) == LineClass::Tangent) ++tangents;
  }
  if (tangents == 0) return PointClass::Internal;
  if (tangents == 1) return PointClass::Absolute;
  if (tangents == 2) return PointClass::External;
  throw GeometryError("point lies on more than two tangents");
}

}  // namespace conicrank
