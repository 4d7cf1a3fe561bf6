#include "distpot/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace distpot {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_param(double t) {
  t = std::fmod(t, kTwoPi);
  return t < 0 ? t + kTwoPi : t;
}
}  // namespace

double norm(Vec2 a) { return std::hypot(a.x, a.y); }

CurveSpec CurveSpec::circle(Vec2 c, double r) {
  CurveSpec s;
  s.kind = CurveKind::Circle;
  s.center = c;
  s.radius = r;
  return s;
}

CurveSpec CurveSpec::ellipse(Vec2 c, double a, double b) {
  CurveSpec s;
  s.kind = CurveKind::Ellipse;
  s.center = c;
  s.semi_a = a;
  s.semi_b = b;
  return s;
}

CurveSpec CurveSpec::trig(Vec2 c, std::vector<double> xc, std::vector<double> xs,
                          std::vector<double> yc, std::vector<double> ys) {
  CurveSpec s;
  s.kind = CurveKind::Trig;
  s.center = c;
  s.x_cos = std::move(xc);
  s.x_sin = std::move(xs);
  s.y_cos = std::move(yc);
  s.y_sin = std::move(ys);
  return s;
}

Curve::Curve(CurveSpec spec) : spec_(std::move(spec)) {
  switch (spec_.kind) {
    case CurveKind::Circle:
      if (!(spec_.radius > 0.0))
        throw DomainError("circle radius must be positive");
      break;
    case CurveKind::Ellipse:
      if (!(spec_.semi_a > 0.0) || !(spec_.semi_b > 0.0))
        throw DomainError("ellipse semi-axes must be positive");
      break;
    case CurveKind::Trig: {
      const std::size_t deg = trig_degree();
      if (deg == 0) throw DomainError("trig curve needs at least one harmonic");
      if (deg > 8)
        throw DomainError("trig curve degree exceeds the supported maximum 8");
      break;
    }
  }
}

std::size_t Curve::trig_degree() const {
  return std::max(std::max(spec_.x_cos.size(), spec_.x_sin.size()),
                  std::max(spec_.y_cos.size(), spec_.y_sin.size()));
}

Vec2 Curve::point(double t) const {
  switch (spec_.kind) {
    case CurveKind::Circle:
      return {spec_.center.x + spec_.radius * std::cos(t),
              spec_.center.y + spec_.radius * std::sin(t)};
    case CurveKind::Ellipse:
      return {spec_.center.x + spec_.semi_a * std::cos(t),
              spec_.center.y + spec_.semi_b * std::sin(t)};
    case CurveKind::Trig: {
      double x = spec_.center.x, y = spec_.center.y;
      const std::size_t deg = trig_degree();
      for (std::size_t k = 1; k <= deg; ++k) {
        const double c = std::cos(k * t), s = std::sin(k * t);
        if (k <= spec_.x_cos.size()) x += spec_.x_cos[k - 1] * c;
        if (k <= spec_.x_sin.size()) x += spec_.x_sin[k - 1] * s;
        if (k <= spec_.y_cos.size()) y += spec_.y_cos[k - 1] * c;
        if (k <= spec_.y_sin.size()) y += spec_.y_sin[k - 1] * s;
      }
      return {x, y};
    }
  }
  return {};
}

Vec2 Curve::derivative(double t) const {
  switch (spec_.kind) {
    case CurveKind::Circle:
      return {-spec_.radius * std::sin(t), spec_.radius * std::cos(t)};
    case CurveKind::Ellipse:
      return {-spec_.semi_a * std::sin(t), spec_.semi_b * std::cos(t)};
    case CurveKind::Trig: {
      double x = 0.0, y = 0.0;
      const std::size_t deg = trig_degree();
      for (std::size_t k = 1; k <= deg; ++k) {
        const double c = std::cos(k * t), s = std::sin(k * t);
        const double kk = static_cast<double>(k);
        if (k <= spec_.x_cos.size()) x -= kk * spec_.x_cos[k - 1] * s;
        if (k <= spec_.x_sin.size()) x += kk * spec_.x_sin[k - 1] * c;
        if (k <= spec_.y_cos.size()) y -= kk * spec_.y_cos[k - 1] * s;
        if (k <= spec_.y_sin.size()) y += kk * spec_.y_sin[k - 1] * c;
      }
      return {x, y};
    }
  }
  return {};
}

Vec2 Curve::second_derivative(double t) const {
  switch (spec_.kind) {
    case CurveKind::Circle:
      return {-spec_.radius * std::cos(t), -spec_.radius * std::sin(t)};
    case CurveKind::Ellipse:
      return {-spec_.semi_a * std::cos(t), -spec_.semi_b * std::sin(t)};
    case CurveKind::Trig: {
      double x = 0.0, y = 0.0;
      const std::size_t deg = trig_degree();
      for (std::size_t k = 1; k <= deg; ++k) {
        const double c = std::cos(k * t), s = std::sin(k * t);
        const double k2 = static_cast<double>(k) * static_cast<double>(k);
        if (k <= spec_.x_cos.size()) x -= k2 * spec_.x_cos[k - 1] * c;
        if (k <= spec_.x_sin.size()) x -= k2 * spec_.x_sin[k - 1] * s;
        if (k <= spec_.y_cos.size()) y -= k2 * spec_.y_cos[k - 1] * c;
        if (k <= spec_.y_sin.size()) y -= k2 * spec_.y_sin[k - 1] * s;
      }
      return {x, y};
    }
  }
  return {};
}

double Curve::speed(double t) const { return norm(derivative(t)); }

Vec2 Curve::outward_normal(double t) const {
  const Vec2 d = derivative(t);
  const double s = norm(d);
  return {d.y / s, -d.x / s};
}

double Curve::curvature(double t) const {
  const Vec2 d = derivative(t);
  const Vec2 dd = second_derivative(t);
  const double s = norm(d);
  return cross(d, dd) / (s * s * s);
}

namespace {

// Winding number of a densely sampled closed curve around p.
double winding_number(const std::vector<Vec2>& samples, Vec2 p) {
  double total = 0.0;
  double prev = std::atan2(samples.back().y - p.y, samples.back().x - p.x);
  for (const Vec2& q : samples) {
    const double cur = std::atan2(q.y - p.y, q.x - p.x);
    double d = cur - prev;
    if (d > std::numbers::pi) d -= kTwoPi;
    if (d < -std::numbers::pi) d += kTwoPi;
    total += d;
    prev = cur;
  }
  return total / kTwoPi;
}

bool inside_curve(const std::vector<Vec2>& samples, Vec2 p) {
  return std::abs(winding_number(samples, p)) > 0.5;
}

std::array<Vec2, 2> bounding_box(const std::vector<Vec2>& samples) {
  Vec2 lo{std::numeric_limits<double>::max(), std::numeric_limits<double>::max()};
  Vec2 hi{std::numeric_limits<double>::lowest(),
          std::numeric_limits<double>::lowest()};
  for (const Vec2& q : samples) {
    lo.x = std::min(lo.x, q.x);
    lo.y = std::min(lo.y, q.y);
    hi.x = std::max(hi.x, q.x);
    hi.y = std::max(hi.y, q.y);
  }
  return {lo, hi};
}

bool boxes_separated(const std::array<Vec2, 2>& a, const std::array<Vec2, 2>& b,
                     double tol) {
  return a[1].x + tol < b[0].x || b[1].x + tol < a[0].x ||
         a[1].y + tol < b[0].y || b[1].y + tol < a[0].y;
}

}  // namespace

Domain build_domain(const std::vector<CurveSpec>& specs,
                    const DomainOptions& opts) {
  if (specs.empty()) throw DomainError("domain needs at least one component");
  Domain dom;
  const int M = std::max(opts.validation_samples, 64);

  for (std::size_t j = 0; j < specs.size(); ++j) {
    Curve curve(specs[j]);
    std::vector<Vec2> samples(M);
    double min_speed = std::numeric_limits<double>::max();
    double signed_area = 0.0;
    for (int i = 0; i < M; ++i) {
      const double t = kTwoPi * i / M;
      samples[i] = curve.point(t);
      min_speed = std::min(min_speed, curve.speed(t));
      // shoelace-type trapezoid of (x y' - y x')/2; spectrally exact here
      const Vec2 d = curve.derivative(t);
      signed_area += 0.5 * cross(samples[i], d) * (kTwoPi / M);
    }
    if (min_speed <= opts.degeneracy_tol) {
      std::ostringstream msg;
      msg << "component " << j << " is degenerate: parametrization speed drops to "
          << min_speed;
      throw DomainError(msg.str());
    }
    if (signed_area <= 0.0) {
      std::ostringstream msg;
      msg << "component " << j
          << " is traversed clockwise; counterclockwise orientation is required "
             "(swap sine/cosine coefficients or negate the sine terms)";
      throw DomainError(msg.str());
    }
    // Injectivity on the sample grid: points far apart in parameter must be
    // far apart in the plane.
    for (int a = 0; a < M; ++a) {
      for (int b = a + 4; b < M; ++b) {
        if (M - (b - a) < 4) continue;  // circular neighbors
        const double d = norm(samples[a] - samples[b]);
        if (d <= opts.separation_tol) {
          std::ostringstream msg;
          msg << "component " << j << " self-intersects near parameters "
              << kTwoPi * a / M << " and " << kTwoPi * b / M;
          throw DomainError(msg.str());
        }
      }
    }

    const Vec2 anchor = specs[j].center;
    if (!inside_curve(samples, anchor)) {
      std::ostringstream msg;
      msg << "component " << j
          << ": the curve center must lie inside the curve (it is used as the "
             "interior anchor)";
      throw DomainError(msg.str());
    }

    dom.curves_.push_back(std::move(curve));
    dom.anchors_.push_back(anchor);
    dom.boxes_.push_back(bounding_box(samples));
    dom.samples_.push_back(std::move(samples));
  }

  // Pairwise separation and non-nesting.
  for (std::size_t a = 0; a < dom.curves_.size(); ++a) {
    for (std::size_t b = a + 1; b < dom.curves_.size(); ++b) {
      if (inside_curve(dom.samples_[a], dom.anchors_[b]) ||
          inside_curve(dom.samples_[b], dom.anchors_[a])) {
        std::ostringstream msg;
        msg << "components " << a << " and " << b
            << " are nested; component closures must be pairwise disjoint";
        throw DomainError(msg.str());
      }
      if (boxes_separated(dom.boxes_[a], dom.boxes_[b], opts.separation_tol))
        continue;
      // Crossing boundaries put samples of one curve strictly inside the
      // other even when both anchors stay outside.
      bool crossing = false;
      for (const Vec2& q : dom.samples_[b])
        if (inside_curve(dom.samples_[a], q)) {
          crossing = true;
          break;
        }
      if (!crossing)
        for (const Vec2& p : dom.samples_[a])
          if (inside_curve(dom.samples_[b], p)) {
            crossing = true;
            break;
          }
      if (crossing) {
        std::ostringstream msg;
        msg << "components " << a << " and " << b
            << " overlap; component closures must be pairwise disjoint";
        throw DomainError(msg.str());
      }
      double dmin = std::numeric_limits<double>::max();
      for (const Vec2& p : dom.samples_[a])
        for (const Vec2& q : dom.samples_[b])
          dmin = std::min(dmin, norm(p - q));
      if (dmin <= opts.separation_tol) {
        std::ostringstream msg;
        msg << "components " << a << " and " << b << " overlap or touch (gap "
            << dmin << ", tolerance " << opts.separation_tol << ")";
        throw DomainError(msg.str());
      }
    }
  }
  return dom;
}

bool Domain::contains(Vec2 p) const {
  return component_containing(p).has_value();
}

std::optional<std::size_t> Domain::component_containing(Vec2 p) const {
  for (std::size_t j = 0; j < curves_.size(); ++j) {
    const auto& box = boxes_[j];
    if (p.x < box[0].x || p.x > box[1].x || p.y < box[0].y || p.y > box[1].y)
      continue;
    if (inside_curve(samples_[j], p)) return j;
  }
  return std::nullopt;
}

Domain::ClosestPoint Domain::closest_boundary_point(std::size_t j, Vec2 p) const {
  const Curve& curve = curves_[j];
  const auto& samples = samples_[j];
  const int M = static_cast<int>(samples.size());
  int best = 0;
  double best_d = std::numeric_limits<double>::max();
  for (int i = 0; i < M; ++i) {
    const double d = norm(samples[i] - p);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  double t = kTwoPi * best / M;
  // Newton iteration on F(t) = (gamma(t) - p) . gamma'(t), safeguarded by the
  // sample resolution.
  for (int it = 0; it < 50; ++it) {
    const Vec2 g = curve.point(t) - p;
    const Vec2 d = curve.derivative(t);
    const Vec2 dd = curve.second_derivative(t);
    const double F = dot(g, d);
    const double Fp = dot(d, d) + dot(g, dd);
    if (Fp == 0.0) break;
    double step = F / Fp;
    step = std::clamp(step, -kTwoPi / M, kTwoPi / M);
    t -= step;
    if (std::abs(step) < 1e-15) break;
  }
  t = wrap_param(t);
  const Vec2 q = curve.point(t);
  return {t, q, norm(q - p)};
}

Domain::ClosestPoint Domain::closest_boundary_point(Vec2 p,
                                                    std::size_t* comp) const {
  ClosestPoint best{};
  best.distance = std::numeric_limits<double>::max();
  std::size_t best_j = 0;
  for (std::size_t j = 0; j < curves_.size(); ++j) {
    const ClosestPoint c = closest_boundary_point(j, p);
    if (c.distance < best.distance) {
      best = c;
      best_j = j;
    }
  }
  if (comp) *comp = best_j;
  return best;
}

namespace {

BoundaryNodes make_nodes(const Domain& domain, int N) {
  BoundaryNodes nodes;
  nodes.N = N;
  nodes.comp.resize(domain.component_count());
  for (std::size_t j = 0; j < domain.component_count(); ++j) {
    const Curve& curve = domain.component(j);
    auto& c = nodes.comp[j];
    c.t.resize(N);
    c.speed.resize(N);
    c.weight.resize(N);
    c.curvature.resize(N);
    c.point.resize(N);
    c.normal.resize(N);
    c.tangent.resize(N);
    for (int i = 0; i < N; ++i) {
      const double t = kTwoPi * i / N;
      const Vec2 d = curve.derivative(t);
      const double sp = norm(d);
      c.t[i] = t;
      c.speed[i] = sp;
      c.weight[i] = (kTwoPi / N) * sp;
      c.curvature[i] = curve.curvature(t);
      c.point[i] = curve.point(t);
      c.tangent[i] = {d.x / sp, d.y / sp};
      c.normal[i] = {d.y / sp, -d.x / sp};
    }
  }
  return nodes;
}

}  // namespace

BoundaryNodes boundary_nodes(const Domain& domain, int N) {
  if (N < 8 || N % 2 != 0) {
    std::ostringstream msg;
    msg << "boundary node count must be even and at least 8, got " << N;
    throw DomainError(msg.str());
  }
  return make_nodes(domain, N);
}

namespace detail {
BoundaryNodes boundary_nodes_any_even(const Domain& domain, int N) {
  if (N < 4 || N % 2 != 0)
    throw DomainError("boundary node count must be even and at least 4");
  return make_nodes(domain, N);
}
}  // namespace detail

}  // namespace distpot
