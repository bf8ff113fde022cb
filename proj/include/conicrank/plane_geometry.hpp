#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "conicrank/finite_field.hpp"

namespace conicrank {

/// A coordinate vector of F_q^3, as raw element indices.
using Triple = std::array<Elem, 3>;

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class PointClass { Absolute = 0, Internal = 1, External = 2 };
enum class LineClass { Tangent = 0, Skew = 1, Secant = 2 };

const char* to_string(PointClass c);
const char* to_string(LineClass c);

struct ProjectivePoint {
  Triple coords;
  PointClass cls;
  bool operator==(const ProjectivePoint&) const = default;
};

/// Dual coordinates: the point x lies on the line y iff x . y = 0.
struct ProjectiveLine {
  Triple coords;
  LineClass cls;
  bool operator==(const ProjectiveLine&) const = default;
};

/// Scales a nonzero vector so its first nonzero coordinate is 1.
Triple canonicalize(const Field& f, const Triple& v);

Elem dot(const Field& f, const Triple& x, const Triple& y);
/// x1^2 - x0 x2, the standard quadratic form.
Elem quadratic_form(const Field& f, const Triple& x);
/// m^2 - 4nr for a line (r, m, n).
Elem line_discriminant(const Field& f, const Triple& y);

PointClass classify_point(const Field& f, const Triple& x);
LineClass classify_line(const Field& f, const Triple& y);

/// Encodes (v0, v1, v2) as v0 q^2 + v1 q + v2.
inline std::size_t vector_index(const Field& f, const Triple& v) {
  const std::size_t q = f.order();
  return (std::size_t{v[0]} * q + v[1]) * q + v[2];
}
inline Triple vector_from_index(const Field& f, std::size_t index) {
  const std::size_t q = f.order();
  return {static_cast<Elem>(index / (q * q)), static_cast<Elem>((index / q) % q), static_cast<Elem>(index % q)};
}

std::string format_triple(const Triple& v);

/// Points on lines of each class: counts of absolute, external, internal points.
struct PointProfile {
  std::size_t absolute = 0;
  std::size_t external = 0;
  std::size_t internal = 0;
  auto operator<=>(const PointProfile&) const = default;
};

/// Lines through points of each class: counts of tangent, secant, skew lines.
struct LineProfile {
  std::size_t tangent = 0;
  std::size_t secant = 0;
  std::size_t skew = 0;
  auto operator<=>(const LineProfile&) const = default;
};

struct Census {
  std::array<std::size_t, 3> line_counts{};   // by LineClass
  std::array<std::size_t, 3> point_counts{};  // by PointClass
  // Every profile observed within a class; a class is uniform when exactly one shows up.
  std::array<std::vector<PointProfile>, 3> line_profiles;
  std::array<std::vector<LineProfile>, 3> point_profiles;

  bool uniform() const;
};

/// The counts every odd q must produce.
Census expected_census(std::size_t q);
bool census_matches(const Census& computed, const Census& expected);
void write_census_csv(std::ostream& os, const Census& c);
void write_census_table(std::ostream& os, const Census& c, std::size_t q);

/// PG(2,q) enumerated once. Points and lines are ordered by class, then by
/// index triple; each class occupies a contiguous range.
class Plane {
 public:
  explicit Plane(std::shared_ptr<const Field> field);

  const Field& field() const noexcept { return *field_; }
  const std::shared_ptr<const Field>& field_ptr() const noexcept { return field_; }
  std::size_t order() const noexcept { return field_->order(); }

  const std::vector<ProjectivePoint>& points() const noexcept { return points_; }
  const std::vector<ProjectiveLine>& lines() const noexcept { return lines_; }

  /// Half-open ranges [begin, end) per class in the enumeration order.
  std::array<std::size_t, 4> point_offsets() const noexcept { return point_offsets_; }
  std::array<std::size_t, 4> line_offsets() const noexcept { return line_offsets_; }

  /// Position of the point/line through a nonzero vector (any scalar multiple).
  std::size_t point_position(const Triple& v) const;
  std::size_t line_position(const Triple& v) const;

  /// {(1,t,t^2) : t} u {(0,0,1)}, in parameter order.
  std::vector<Triple> conic() const;

  ProjectiveLine polar(const ProjectivePoint& p) const;
  ProjectivePoint pole(const ProjectiveLine& l) const;

  bool incident(const ProjectivePoint& p, const ProjectiveLine& l) const;

  PointProfile local_census(const ProjectiveLine& l) const;
  LineProfile local_census(const ProjectivePoint& p) const;
  Census global_census() const;

  /// Brute-force classifiers that never look at a discriminant: count
  /// tangents in the pencil through a point, or conic points on a line.
  PointClass classify_point_by_tangents(const Triple& x) const;
  LineClass classify_line_by_conic(const Triple& y) const;

 private:
  std::shared_ptr<const Field> field_;
  std::vector<ProjectivePoint> points_;
  std::vector<ProjectiveLine> lines_;
  std::array<std::size_t, 4> point_offsets_{};
  std::array<std::size_t, 4> line_offsets_{};
  std::vector<std::size_t> point_lookup_;  // vector_index of canonical triple -> position
  std::vector<std::size_t> line_lookup_;
  std::vector<bool> on_conic_;             // by point position, from the parametrisation
};

}  // namespace conicrank
