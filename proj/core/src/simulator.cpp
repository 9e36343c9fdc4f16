#include "scissor/simulator.hpp"

#include <algorithm>
#include <cmath>

#include "scissor/error.hpp"
#include "scissor/rng.hpp"

namespace scissor {

namespace {

double perceived_radius(const TestCase& test, std::size_t segment_index,
                        const DriverConfig& driver) {
  const double r = test.segments[segment_index].radius_m;
  if (driver.perception_noise <= 0.0) return r;
  Rng rng(derive_seed(driver.noise_seed ^ hash_str(test.id), segment_index));
  const double eta = rng.uniform(-driver.perception_noise, driver.perception_noise);
  return r * (1.0 + eta);
}

}  // namespace

void validate_driver(const DriverConfig& d) {
  if (!(d.aggression > 0.0)) throw InvalidValue("aggression must be positive");
  if (!(d.mu_assumed > 0.0) || d.mu_assumed > 2.0) {
    throw InvalidValue("mu_assumed must be in (0, 2]");
  }
  if (!(d.v_max > 0.0) || !(d.a_acc > 0.0) || !(d.a_dec > 0.0)) {
    throw InvalidValue("v_max, a_acc, a_dec must be positive");
  }
  if (d.perception_noise < 0.0 || d.perception_noise >= 0.5) {
    throw InvalidValue("perception_noise must be in [0, 0.5)");
  }
  if (!(d.g > 0.0)) throw InvalidValue("g must be positive");
  if (d.overhead_s < 0.0) throw InvalidValue("overhead_s must be non-negative");
  if (!(d.grid_step_m > 0.0)) throw InvalidValue("grid_step_m must be positive");
}

DriverConfig default_driver(double aggression, std::uint64_t noise_seed) {
  DriverConfig d;
  d.aggression = aggression;
  d.noise_seed = noise_seed;
  return d;
}

DriverConfig planner_driver(std::uint64_t noise_seed) {
  DriverConfig d;
  d.aggression = 1.0;
  d.mu_assumed = 0.66;
  d.noise_seed = noise_seed;
  return d;
}

double safe_speed(double radius_m, double mu, double g) {
  if (!(radius_m > 0.0)) throw DomainError("safe_speed needs a positive radius");
  if (!(mu > 0.0)) throw DomainError("safe_speed needs positive friction");
  return std::sqrt(mu * radius_m * g);
}

SimResult simulate(const TestCase& test, const DriverConfig& driver) {
  validate_driver(driver);

  // 1 m grid (last interval shorter), each point owned by the segment whose
  // arc it falls in; a joint belongs to the segment being entered.
  const double total = path_length(test);
  const std::size_t intervals =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(total / driver.grid_step_m)));
  std::vector<double> position(intervals + 1);
  for (std::size_t k = 0; k < intervals; ++k) {
    position[k] = std::min(total, static_cast<double>(k) * driver.grid_step_m);
  }
  position[intervals] = total;

  std::vector<double> seg_end(test.segments.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < test.segments.size(); ++i) {
    acc += test.segments[i].length_m;
    seg_end[i] = acc;
  }

  std::vector<std::size_t> owner(position.size());
  {
    std::size_t si = 0;
    for (std::size_t k = 0; k < position.size(); ++k) {
      while (si + 1 < test.segments.size() && position[k] >= seg_end[si]) ++si;
      owner[k] = si;
    }
  }

  // Driver's per-segment target cap: v_max on straights, the aggression-
  // scaled estimate of the cornering limit on turns.
  std::vector<double> seg_cap(test.segments.size(), driver.v_max);
  for (std::size_t i = 0; i < test.segments.size(); ++i) {
    if (!test.segments[i].is_turn()) continue;
    const double r_hat = perceived_radius(test, i, driver);
    const double planned =
        driver.aggression * std::sqrt(driver.mu_assumed * r_hat * driver.g);
    seg_cap[i] = std::min(driver.v_max, planned);
  }

  std::vector<double> v(position.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = seg_cap[owner[k]];

  // Forward pass: from rest, speed grows at most with a_acc.
  v[0] = std::min(v[0], 0.0);
  for (std::size_t k = 1; k < v.size(); ++k) {
    const double ds = position[k] - position[k - 1];
    v[k] = std::min(v[k], std::sqrt(v[k - 1] * v[k - 1] + 2.0 * driver.a_acc * ds));
  }
  // Backward pass: braking is limited by a_dec, so tight caps pull earlier
  // speeds down.
  for (std::size_t k = v.size() - 1; k-- > 0;) {
    const double ds = position[k + 1] - position[k];
    v[k] = std::min(v[k], std::sqrt(v[k + 1] * v[k + 1] + 2.0 * driver.a_dec * ds));
  }

  SimResult result;
  result.speed_profile.reserve(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    result.speed_profile.push_back({position[k], v[k]});
  }

  // An episode on turn i means the driven speed beat the physical cornering
  // limit somewhere on it.
  std::vector<bool> obe(test.segments.size(), false);
  for (std::size_t k = 0; k < v.size(); ++k) {
    const auto& seg = test.segments[owner[k]];
    if (!seg.is_turn()) continue;
    if (v[k] > std::sqrt(seg.friction * seg.radius_m * driver.g)) obe[owner[k]] = true;
  }
  for (std::size_t i = 0; i < obe.size(); ++i) {
    if (obe[i]) result.obe_segments.push_back(i);
  }
  result.label = result.obe_segments.empty() ? Label::Safe : Label::Unsafe;

  // Time via the constant-acceleration identity dt = 2 ds / (v0 + v1),
  // exact when v^2 is linear in distance.
  double duration = 0.0;
  for (std::size_t k = 1; k < v.size(); ++k) {
    const double ds = position[k] - position[k - 1];
    const double vsum = v[k - 1] + v[k];
    if (ds > 0.0 && vsum > 0.0) duration += 2.0 * ds / vsum;
  }
  result.sim_duration_s = duration;
  result.wall_cost_s = driver.overhead_s + duration;
  return result;
}

std::vector<LabeledTest> label_batch(const std::vector<TestCase>& tests,
                                     const DriverConfig& driver) {
  std::vector<LabeledTest> out;
  out.reserve(tests.size());
  for (const auto& t : tests) {
    SimResult r = simulate(t, driver);
    LabeledTest lt;
    lt.test = t;
    lt.label = r.label;
    lt.obe_segments = std::move(r.obe_segments);
    lt.sim_duration_s = r.sim_duration_s;
    lt.wall_cost_s = r.wall_cost_s;
    out.push_back(std::move(lt));
  }
  return out;
}

}  // namespace scissor
