#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "hsm/estimate.hpp"
#include "hsm/geometry.hpp"
#include "hsm/rng.hpp"

namespace hsm {

enum class RegionKind { kBallVolume, kInterval, kUncovered, kCustom };

const char* to_string(RegionKind kind);

// A bounded region of R^d given by a membership predicate and a bounding
// ball containing every member. Regions are immutable once built.
class Region {
 public:
  using Membership = std::function<bool(const Point&)>;

  // B_n: the ball of volume n centred at the origin.
  static Region ball_volume(double n, int d);
  // The interval [0, length] in d = 1.
  static Region interval(double length);
  // The interval [lo, hi] in d = 1.
  static Region interval(double lo, double hi);
  // Ball of the given centre and radius with exact volume.
  static Region ball(BallSpec ball);
  // Arbitrary membership oracle. `bounding` must contain every member.
  static Region custom(RegionKind kind, int d, Membership membership,
                       BallSpec bounding,
                       std::optional<double> exact_volume = std::nullopt);

  RegionKind kind() const { return kind_; }
  int dim() const { return dim_; }
  const BallSpec& bounding_ball() const { return bounding_; }

  bool contains(const Point& p) const;

  bool has_exact_volume() const { return exact_volume_.has_value(); }
  // Exact volume; throws std::logic_error if only an estimate is known.
  double volume() const;
  std::optional<double> exact_volume() const { return exact_volume_; }
  const std::optional<Estimate>& volume_estimate() const {
    return volume_estimate_;
  }
  Region with_volume_estimate(Estimate e) const;
  Region relabeled(RegionKind kind) const;

  // [lo, hi] when the region is an interval of the real line (d = 1 balls
  // included); nullopt otherwise.
  std::optional<std::pair<double, double>> interval_bounds() const;

  // Uniform point in the region: direct for balls and intervals, rejection
  // from the bounding ball otherwise.
  void sample_uniform(CounterRng& rng, Point& out) const;
  Point sample_uniform(CounterRng& rng) const;

 private:
  enum class Shape { kBall, kInterval, kOracle };

  Region() = default;

  RegionKind kind_ = RegionKind::kCustom;
  Shape shape_ = Shape::kOracle;
  int dim_ = 0;
  BallSpec bounding_;
  double lo_ = 0.0;
  double hi_ = 0.0;
  Membership membership_;
  std::optional<double> exact_volume_;
  std::optional<Estimate> volume_estimate_;
};

// Outcome of the hard-core test D(x_1, ..., x_k).
struct PackingEvent {
  bool result = true;
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

// Centres of a configuration plus a uniform cell grid over the host's
// bounding ball. Cells have side max(2 r_d, diameter / 64) with at most 64
// per axis; when the grid would exceed the cell budget every query falls
// back to a linear scan.
class Configuration {
 public:
  static constexpr std::size_t kMaxCellsPerAxis = 64;
  static constexpr std::size_t kCellBudget = std::size_t{1} << 20;

  Configuration(int d, const BallSpec& domain);

  int dim() const { return dim_; }
  std::size_t size() const { return centers_.size(); }
  bool empty() const { return centers_.empty(); }
  const std::vector<Point>& centers() const { return centers_; }
  const Point& center(std::size_t i) const { return centers_[i]; }
  double exclusion_diameter() const { return exclusion_; }

  void add(Point p);
  // Swap-removes centre i; the former last centre takes id i.
  void remove(std::size_t i);
  void move(std::size_t i, Point p);
  void clear();

  // No centre within closed distance 2 r_d of p.
  bool insertion_allowed(const Point& p) const;
  // As insertion_allowed, ignoring centre `skip`.
  bool placement_allowed(const Point& p, std::size_t skip) const;

  // Ids of centres within closed distance `radius` of p.
  std::vector<std::size_t> within(const Point& p, double radius) const;
  std::size_t count_within(const Point& p, double radius) const;

  PackingEvent packing_event() const;

  bool uses_grid() const { return use_grid_; }
  std::size_t cells_per_axis() const { return cells_per_axis_; }
  // Recomputes the grid from scratch and reports whether it matched.
  bool index_consistent() const;

 private:
  std::size_t cell_of(const Point& p) const;
  std::vector<std::size_t> cell_coords(const Point& p) const;
  template <typename Fn>
  void visit_near(const Point& p, double radius, Fn&& fn) const;

  int dim_;
  double exclusion_;
  std::vector<Point> centers_;

  bool use_grid_ = false;
  double cell_side_ = 1.0;
  std::size_t cells_per_axis_ = 1;
  Point origin_;
  std::vector<std::vector<std::uint32_t>> cells_;
  std::vector<std::size_t> cell_index_;
};

PackingEvent is_packing(const Configuration& config);
bool insertion_allowed(const Configuration& config, const Point& p);

// Pairwise test on a plain list of points, early-exit on the first
// violation.
bool points_form_packing(const std::vector<Point>& points, double min_distance);

// Hit-or-miss volume: vol(bounding ball) times the fraction of uniform
// bounding-ball draws inside the region.
Estimate region_volume_mc(const Region& region, std::size_t samples,
                          CounterRng& rng);

// Snapshot format: a "dim,k" header, the values line, then one line of d
// coordinates per centre.
void write_config_csv(std::ostream& out, const Configuration& config);
std::vector<Point> read_config_csv(std::istream& in);

}  // namespace hsm
