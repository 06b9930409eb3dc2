#pragma once

#include <cstdint>
#include <vector>

#include "quadsep/connectivity.hpp"
#include "quadsep/quadratic.hpp"

namespace quadsep {

/// Axis-aligned sampling window for the 2-D grid scan.
struct GridSpec {
  Vector center = {0.0, 0.0};
  Vector half_widths = {8.0, 8.0};
  int resolution = 512;  // cells per axis, >= 16
};

/// Definition-level evidence collected by grid scanning and/or level-set
/// sampling.  `confident` is the grid notion (no zero cell touches the
/// window boundary); sampling-only reports set it true.
struct OracleReport {
  int component_count_estimate = 0;
  bool confident = false;
  std::vector<int> sign_pattern;  // per component: -1, +1, or 0 when mixed
  double min_abs_g_on_zero_set = 0.0;
  bool empirical_separation = false;
};

/// One grid cell straddling {f=0}: its center and flood-fill component id
/// (1-based).
struct ZeroCell {
  double x = 0.0;
  double y = 0.0;
  int component = 0;
};

/// Counts connected components of the zero set of a 2-D quadratic by
/// sign changes over grid cell corners and 8-neighbor flood fill.
/// Fills only component_count_estimate and confident.
OracleReport grid_components_2d(const QuadraticFunction& f,
                                const GridSpec& spec);

/// The cells behind grid_components_2d, for plotting and sign checks.
std::vector<ZeroCell> grid_zero_cells(const QuadraticFunction& f,
                                      const GridSpec& spec);

struct LevelSample {
  Vector point;
  Side sheet = Side::PLUS;  // sign of the canonical first coordinate
};

/// Deterministic samples of {f=0}: Gaussian draws for the free canonical
/// coordinates, the bound coordinate solved exactly, both sheets covered
/// when the set is disconnected.  Requires a non-empty level set.
std::vector<LevelSample> sample_level_set(const QuadraticFunction& f,
                                          int count, std::uint64_t seed,
                                          const Tolerances& t = Tolerances());

/// Samples {f=0} and records the sign behaviour of g on it.  Declares
/// empirical separation iff the two sheets carry uniform opposite signs of
/// g and min |g| clears the sign margin.  Advisory: agreement material for
/// the analytic verdict, never a substitute.
OracleReport oracle_separates(const QuadraticFunction& g,
                              const QuadraticFunction& f, int count,
                              std::uint64_t seed,
                              const Tolerances& t = Tolerances());

/// |g| below this bound counts as "no reliable sign" during sampling.
double sign_margin(const QuadraticFunction& g);

}  // namespace quadsep
