#pragma once
// Closed-curve geometry for planar potential theory: parametrized boundary
// components, validated multi-component domains, and equispaced boundary nodes
// with arclength weights.

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace distpot {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double norm(Vec2 a);

enum class CurveKind { Circle, Ellipse, Trig };

// A closed curve parametrized over [0, 2*pi), traversed counterclockwise.
// Trig curves are finite Fourier sums per coordinate:
//   x(t) = cx + sum_k (x_cos[k-1] cos(kt) + x_sin[k-1] sin(kt)),  k = 1..degree
// and likewise for y(t).
struct CurveSpec {
  CurveKind kind = CurveKind::Circle;
  Vec2 center{};
  double radius = 1.0;        // circle
  double semi_a = 1.0;        // ellipse, x half-axis
  double semi_b = 1.0;        // ellipse, y half-axis
  std::vector<double> x_cos, x_sin, y_cos, y_sin;  // trig coefficients

  static CurveSpec circle(Vec2 c, double r);
  static CurveSpec ellipse(Vec2 c, double a, double b);
  static CurveSpec trig(Vec2 c, std::vector<double> xc, std::vector<double> xs,
                        std::vector<double> yc, std::vector<double> ys);
};

class Curve {
 public:
  explicit Curve(CurveSpec spec);

  Vec2 point(double t) const;
  Vec2 derivative(double t) const;
  Vec2 second_derivative(double t) const;
  double speed(double t) const;
  // Unit outward normal (tangent rotated by -pi/2; valid for counterclockwise
  // orientation).
  Vec2 outward_normal(double t) const;
  // Signed curvature, positive for a counterclockwise circle.
  double curvature(double t) const;

  const CurveSpec& spec() const { return spec_; }
  std::size_t trig_degree() const;

 private:
  CurveSpec spec_;
};

class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DomainOptions {
  int validation_samples = 1024;   // dense sampling for the geometric checks
  double separation_tol = 1e-8;    // minimal distance between components
  double degeneracy_tol = 1e-10;   // minimal parametrization speed
};

// An open set with finitely many smooth Jordan-curve components whose closures
// are pairwise disjoint. Construction validates orientation, injectivity,
// non-degeneracy, separation, and non-nesting, and fails with an actionable
// message otherwise.
class Domain {
 public:
  std::size_t component_count() const { return curves_.size(); }
  const Curve& component(std::size_t j) const { return curves_[j]; }
  // Interior anchor of component j (curve center; validated to lie inside).
  Vec2 anchor(std::size_t j) const { return anchors_[j]; }
  std::array<Vec2, 2> bounding_box(std::size_t j) const { return boxes_[j]; }

  // Open-set membership (true strictly inside some component).
  bool contains(Vec2 p) const;
  std::optional<std::size_t> component_containing(Vec2 p) const;

  struct ClosestPoint {
    double t = 0.0;
    Vec2 point{};
    double distance = 0.0;
  };
  ClosestPoint closest_boundary_point(std::size_t j, Vec2 p) const;
  // Distance from p to the whole boundary, with the component attaining it.
  ClosestPoint closest_boundary_point(Vec2 p, std::size_t* comp = nullptr) const;

  friend Domain build_domain(const std::vector<CurveSpec>& specs,
                             const DomainOptions& opts);

 private:
  std::vector<Curve> curves_;
  std::vector<Vec2> anchors_;
  std::vector<std::array<Vec2, 2>> boxes_;
  std::vector<std::vector<Vec2>> samples_;  // dense samples for winding tests
};

Domain build_domain(const std::vector<CurveSpec>& specs,
                    const DomainOptions& opts = {});

// Equispaced parameter nodes t_i = 2*pi*i/N on every component, with speeds,
// unit outward normals, curvatures, and arclength trapezoid weights
// w_i = (2*pi/N) |gamma'(t_i)|.
struct BoundaryNodes {
  struct Component {
    std::vector<double> t, speed, weight, curvature;
    std::vector<Vec2> point, normal, tangent;
  };
  int N = 0;
  std::vector<Component> comp;

  std::size_t total() const { return comp.size() * static_cast<std::size_t>(N); }
};

// Requires N even and N >= 8 (spectral rules below need a usable band).
BoundaryNodes boundary_nodes(const Domain& domain, int N);

namespace detail {
// Same construction without the N >= 8 gate; for coarse convergence studies in
// tests only (N must still be even and >= 4).
BoundaryNodes boundary_nodes_any_even(const Domain& domain, int N);
}  // namespace detail

}  // namespace distpot
