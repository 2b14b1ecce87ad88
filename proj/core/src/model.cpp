#include "hsm/model.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace hsm {

const char* to_string(RegionKind kind) {
  switch (kind) {
    case RegionKind::kBallVolume:
      return "ball_volume";
    case RegionKind::kInterval:
      return "interval";
    case RegionKind::kUncovered:
      return "uncovered";
    case RegionKind::kCustom:
      return "custom";
  }
  return "unknown";
}

// ---------------------------------------------------------------- Region

Region Region::ball_volume(double n, int d) {
  if (!(n > 0.0)) throw std::invalid_argument("ball volume must be positive");
  const double radius = std::pow(n, 1.0 / d) * unit_ball_radius(d);
  Region r = ball(BallSpec{Point(static_cast<std::size_t>(d)), radius});
  r.kind_ = RegionKind::kBallVolume;
  r.exact_volume_ = n;
  return r;
}

Region Region::interval(double length) { return interval(0.0, length); }

Region Region::interval(double lo, double hi) {
  if (!(hi > lo)) throw std::invalid_argument("interval must have hi > lo");
  Region r;
  r.kind_ = RegionKind::kInterval;
  r.shape_ = Shape::kInterval;
  r.dim_ = 1;
  r.lo_ = lo;
  r.hi_ = hi;
  r.bounding_ = BallSpec{Point{0.5 * (lo + hi)}, 0.5 * (hi - lo)};
  r.exact_volume_ = hi - lo;
  return r;
}

Region Region::ball(BallSpec b) {
  if (!(b.radius > 0.0)) throw std::invalid_argument("ball radius must be positive");
  const int d = static_cast<int>(b.center.dim());
  if (d < 1) throw std::invalid_argument("ball needs a centre of dimension >= 1");
  Region r;
  r.kind_ = RegionKind::kCustom;
  r.shape_ = Shape::kBall;
  r.dim_ = d;
  r.exact_volume_ = hsm::ball_volume(b.radius, d);
  r.bounding_ = std::move(b);
  return r;
}

Region Region::custom(RegionKind kind, int d, Membership membership,
                      BallSpec bounding, std::optional<double> exact_volume) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  if (static_cast<int>(bounding.center.dim()) != d) {
    throw std::invalid_argument("bounding ball dimension mismatch");
  }
  if (!membership) throw std::invalid_argument("membership predicate required");
  Region r;
  r.kind_ = kind;
  r.shape_ = Shape::kOracle;
  r.dim_ = d;
  r.bounding_ = std::move(bounding);
  r.membership_ = std::move(membership);
  r.exact_volume_ = exact_volume;
  return r;
}

bool Region::contains(const Point& p) const {
  switch (shape_) {
    case Shape::kInterval:
      return p[0] >= lo_ && p[0] <= hi_;
    case Shape::kBall:
      return distance_squared(p, bounding_.center) <=
             bounding_.radius * bounding_.radius;
    case Shape::kOracle:
      return distance_squared(p, bounding_.center) <=
                 bounding_.radius * bounding_.radius &&
             membership_(p);
  }
  return false;
}

double Region::volume() const {
  if (!exact_volume_) {
    throw std::logic_error("region volume is only known as an estimate");
  }
  return *exact_volume_;
}

Region Region::with_volume_estimate(Estimate e) const {
  Region r = *this;
  r.volume_estimate_ = e;
  return r;
}

Region Region::relabeled(RegionKind kind) const {
  Region r = *this;
  r.kind_ = kind;
  return r;
}

std::optional<std::pair<double, double>> Region::interval_bounds() const {
  if (shape_ == Shape::kInterval) return std::pair{lo_, hi_};
  if (shape_ == Shape::kBall && dim_ == 1) {
    const double c = bounding_.center[0];
    return std::pair{c - bounding_.radius, c + bounding_.radius};
  }
  return std::nullopt;
}

void Region::sample_uniform(CounterRng& rng, Point& out) const {
  switch (shape_) {
    case Shape::kInterval:
      if (out.dim() != 1) out = Point(1);
      out[0] = lo_ + (hi_ - lo_) * rng.uniform();
      return;
    case Shape::kBall:
      sample_uniform_ball(bounding_, rng, out);
      return;
    case Shape::kOracle:
      // The bounding ball always contains the region; callers must not use
      // this on regions of zero volume.
      do {
        sample_uniform_ball(bounding_, rng, out);
      } while (!membership_(out));
      return;
  }
}

Point Region::sample_uniform(CounterRng& rng) const {
  Point p(static_cast<std::size_t>(dim_));
  sample_uniform(rng, p);
  return p;
}

// --------------------------------------------------------- Configuration

Configuration::Configuration(int d, const BallSpec& domain)
    : dim_(d), exclusion_(2.0 * unit_ball_radius(d)) {
  if (static_cast<int>(domain.center.dim()) != d) {
    throw std::invalid_argument("domain dimension mismatch");
  }
  const double diameter = 2.0 * domain.radius;
  cell_side_ = std::max(exclusion_, diameter / kMaxCellsPerAxis);
  cells_per_axis_ = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::ceil(diameter / cell_side_)), 1,
      kMaxCellsPerAxis);

  double total = 1.0;
  for (int i = 0; i < d; ++i) total *= static_cast<double>(cells_per_axis_);
  use_grid_ = total <= static_cast<double>(kCellBudget);

  origin_ = domain.center;
  for (int i = 0; i < d; ++i) origin_[i] -= domain.radius;
  if (use_grid_) cells_.resize(static_cast<std::size_t>(total));
}

std::vector<std::size_t> Configuration::cell_coords(const Point& p) const {
  std::vector<std::size_t> c(static_cast<std::size_t>(dim_));
  const auto top = static_cast<double>(cells_per_axis_ - 1);
  for (int i = 0; i < dim_; ++i) {
    const double x = std::floor((p[i] - origin_[i]) / cell_side_);
    c[i] = static_cast<std::size_t>(std::clamp(x, 0.0, top));
  }
  return c;
}

std::size_t Configuration::cell_of(const Point& p) const {
  const auto top = static_cast<double>(cells_per_axis_ - 1);
  std::size_t idx = 0;
  for (int i = dim_ - 1; i >= 0; --i) {
    const double x = std::floor((p[i] - origin_[i]) / cell_side_);
    idx = idx * cells_per_axis_ +
          static_cast<std::size_t>(std::clamp(x, 0.0, top));
  }
  return idx;
}

void Configuration::add(Point p) {
  if (static_cast<int>(p.dim()) != dim_) {
    throw std::invalid_argument("point dimension mismatch");
  }
  const std::size_t id = centers_.size();
  if (use_grid_) {
    const std::size_t c = cell_of(p);
    cells_[c].push_back(static_cast<std::uint32_t>(id));
    cell_index_.push_back(c);
  }
  centers_.push_back(std::move(p));
}

void Configuration::remove(std::size_t i) {
  if (i >= centers_.size()) throw std::out_of_range("centre id out of range");
  const std::size_t last = centers_.size() - 1;
  if (use_grid_) {
    auto& own = cells_[cell_index_[i]];
    own.erase(std::find(own.begin(), own.end(), static_cast<std::uint32_t>(i)));
    if (i != last) {
      auto& moved = cells_[cell_index_[last]];
      *std::find(moved.begin(), moved.end(), static_cast<std::uint32_t>(last)) =
          static_cast<std::uint32_t>(i);
      cell_index_[i] = cell_index_[last];
    }
    cell_index_.pop_back();
  }
  if (i != last) centers_[i] = std::move(centers_[last]);
  centers_.pop_back();
}

void Configuration::move(std::size_t i, Point p) {
  if (i >= centers_.size()) throw std::out_of_range("centre id out of range");
  if (use_grid_) {
    const std::size_t c = cell_of(p);
    if (c != cell_index_[i]) {
      auto& own = cells_[cell_index_[i]];
      own.erase(std::find(own.begin(), own.end(), static_cast<std::uint32_t>(i)));
      cells_[c].push_back(static_cast<std::uint32_t>(i));
      cell_index_[i] = c;
    }
  }
  centers_[i] = std::move(p);
}

void Configuration::clear() {
  centers_.clear();
  cell_index_.clear();
  for (auto& c : cells_) c.clear();
}

template <typename Fn>
void Configuration::visit_near(const Point& p, double radius, Fn&& fn) const {
  // fn(id) returns false to stop the scan.
  const std::size_t n = centers_.size();
  if (n == 0) return;
  const auto reach = static_cast<std::size_t>(std::ceil(radius / cell_side_));
  double stencil = 1.0;
  for (int i = 0; i < dim_; ++i) stencil *= static_cast<double>(2 * reach + 1);
  if (!use_grid_ || stencil >= static_cast<double>(n)) {
    for (std::size_t id = 0; id < n; ++id) {
      if (!fn(id)) return;
    }
    return;
  }

  const std::vector<std::size_t> base = cell_coords(p);
  const auto d = static_cast<std::size_t>(dim_);
  std::vector<std::size_t> lo(d), hi(d), cur(d);
  for (std::size_t i = 0; i < d; ++i) {
    lo[i] = base[i] >= reach ? base[i] - reach : 0;
    hi[i] = std::min(base[i] + reach, cells_per_axis_ - 1);
    cur[i] = lo[i];
  }
  while (true) {
    std::size_t idx = 0;
    for (std::size_t i = d; i-- > 0;) idx = idx * cells_per_axis_ + cur[i];
    for (std::uint32_t id : cells_[idx]) {
      if (!fn(static_cast<std::size_t>(id))) return;
    }
    std::size_t axis = 0;
    while (axis < d && cur[axis] == hi[axis]) {
      cur[axis] = lo[axis];
      ++axis;
    }
    if (axis == d) return;
    ++cur[axis];
  }
}

bool Configuration::placement_allowed(const Point& p, std::size_t skip) const {
  const double limit = exclusion_ * exclusion_;
  bool ok = true;
  visit_near(p, exclusion_, [&](std::size_t id) {
    if (id != skip && distance_squared(p, centers_[id]) <= limit) {
      ok = false;
      return false;
    }
    return true;
  });
  return ok;
}

bool Configuration::insertion_allowed(const Point& p) const {
  return placement_allowed(p, std::numeric_limits<std::size_t>::max());
}

std::vector<std::size_t> Configuration::within(const Point& p,
                                               double radius) const {
  std::vector<std::size_t> ids;
  const double limit = radius * radius;
  visit_near(p, radius, [&](std::size_t id) {
    if (distance_squared(p, centers_[id]) <= limit) ids.push_back(id);
    return true;
  });
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::size_t Configuration::count_within(const Point& p, double radius) const {
  std::size_t count = 0;
  const double limit = radius * radius;
  visit_near(p, radius, [&](std::size_t id) {
    if (distance_squared(p, centers_[id]) <= limit) ++count;
    return true;
  });
  return count;
}

PackingEvent Configuration::packing_event() const {
  PackingEvent ev;
  const double limit = exclusion_ * exclusion_;
  for (std::size_t i = 0; i < centers_.size() && ev.result; ++i) {
    visit_near(centers_[i], exclusion_, [&](std::size_t j) {
      if (j > i && distance_squared(centers_[i], centers_[j]) <= limit) {
        ev.result = false;
        ev.witness = std::pair{i, j};
        return false;
      }
      return true;
    });
  }
  return ev;
}

bool Configuration::index_consistent() const {
  if (!use_grid_) return cells_.empty();
  if (cell_index_.size() != centers_.size()) return false;
  std::vector<std::vector<std::uint32_t>> fresh(cells_.size());
  for (std::size_t i = 0; i < centers_.size(); ++i) {
    const std::size_t c = cell_of(centers_[i]);
    if (c != cell_index_[i]) return false;
    fresh[c].push_back(static_cast<std::uint32_t>(i));
  }
  for (std::size_t c = 0; c < cells_.size(); ++c) {
    auto have = cells_[c];
    std::sort(have.begin(), have.end());
    if (have != fresh[c]) return false;
  }
  return true;
}

PackingEvent is_packing(const Configuration& config) {
  return config.packing_event();
}

bool insertion_allowed(const Configuration& config, const Point& p) {
  return config.insertion_allowed(p);
}

bool points_form_packing(const std::vector<Point>& points,
                         double min_distance) {
  const double limit = min_distance * min_distance;
  for (std::size_t i = 1; i < points.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (distance_squared(points[i], points[j]) <= limit) return false;
    }
  }
  return true;
}

Estimate region_volume_mc(const Region& region, std::size_t samples,
                          CounterRng& rng) {
  if (samples == 0) throw std::invalid_argument("zero samples");
  const BallSpec& b = region.bounding_ball();
  const double vol = ball_volume(b.radius, region.dim());
  Point p(static_cast<std::size_t>(region.dim()));
  std::size_t hits = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    sample_uniform_ball(b, rng, p);
    if (region.contains(p)) ++hits;
  }
  return binomial_estimate(hits, samples, vol);
}

void write_config_csv(std::ostream& out, const Configuration& config) {
  out << "dim,k\n" << config.dim() << ',' << config.size() << '\n';
  const auto old_precision = out.precision(17);
  for (const Point& p : config.centers()) {
    for (std::size_t i = 0; i < p.dim(); ++i) {
      if (i) out << ',';
      out << p[i];
    }
    out << '\n';
  }
  out.precision(old_precision);
}

std::vector<Point> read_config_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "dim,k") {
    throw std::runtime_error("configuration snapshot: missing 'dim,k' header");
  }
  if (!std::getline(in, line)) {
    throw std::runtime_error("configuration snapshot: missing size line");
  }
  std::size_t dim = 0;
  std::size_t k = 0;
  char comma = 0;
  std::istringstream head(line);
  if (!(head >> dim >> comma >> k) || comma != ',' || dim == 0) {
    throw std::runtime_error("configuration snapshot: bad size line");
  }
  std::vector<Point> points;
  points.reserve(k);
  while (points.size() < k && std::getline(in, line)) {
    std::vector<double> coords;
    std::istringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) coords.push_back(std::stod(cell));
    if (coords.size() != dim) {
      throw std::runtime_error("configuration snapshot: wrong coordinate count");
    }
    points.emplace_back(std::move(coords));
  }
  if (points.size() != k) {
    throw std::runtime_error("configuration snapshot: truncated");
  }
  return points;
}

}  // namespace hsm
