#include "quadsep/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

#include "quadsep/errors.hpp"

namespace quadsep {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Deterministic standard-normal stream: mt19937_64 bits through Box-Muller,
/// so identical seeds give identical samples bit for bit.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : gen_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = ((gen_() >> 11) + 1) * 0x1.0p-53;  // in (0, 1]
    const double u2 = ((gen_() >> 11) + 1) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(kTwoPi * u2);
    have_spare_ = true;
    return r * std::cos(kTwoPi * u2);
  }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

struct GridScan {
  int estimate = 0;
  bool confident = true;
  std::vector<ZeroCell> cells;
};

GridScan scan_grid(const QuadraticFunction& f, const GridSpec& spec) {
  if (f.dim() != 2) throw InputError("grid oracle requires dimension 2");
  if (spec.resolution < 16)
    throw InputError("grid resolution must be at least 16");
  if (spec.center.size() != 2 || spec.half_widths.size() != 2 ||
      !(spec.half_widths[0] > 0.0) || !(spec.half_widths[1] > 0.0))
    throw InputError("grid window must have two positive half-widths");

  const int res = spec.resolution;
  const double x0 = spec.center[0] - spec.half_widths[0];
  const double y0 = spec.center[1] - spec.half_widths[1];
  const double dx = 2.0 * spec.half_widths[0] / res;
  const double dy = 2.0 * spec.half_widths[1] / res;

  const double axx = f.A(0, 0), axy = f.A(0, 1), ayy = f.A(1, 1);
  const double ax = f.a[0], ay = f.a[1], a0 = f.a0;
  auto value = [&](double x, double y) {
    return axx * x * x + 2.0 * axy * x * y + ayy * y * y +
           2.0 * (ax * x + ay * y) + a0;
  };

  // Corner signs on the (res+1)^2 lattice.
  std::vector<std::int8_t> sign(static_cast<std::size_t>(res + 1) * (res + 1));
  for (int iy = 0; iy <= res; ++iy)
    for (int ix = 0; ix <= res; ++ix) {
      const double v = value(x0 + ix * dx, y0 + iy * dy);
      sign[static_cast<std::size_t>(iy) * (res + 1) + ix] =
          v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
    }

  // A cell straddles the zero set when its corners are not uniformly
  // positive nor uniformly negative.
  std::vector<std::int8_t> zero(static_cast<std::size_t>(res) * res, 0);
  GridScan scan;
  for (int iy = 0; iy < res; ++iy)
    for (int ix = 0; ix < res; ++ix) {
      const std::int8_t s00 = sign[static_cast<std::size_t>(iy) * (res + 1) + ix];
      const std::int8_t s10 = sign[static_cast<std::size_t>(iy) * (res + 1) + ix + 1];
      const std::int8_t s01 = sign[static_cast<std::size_t>(iy + 1) * (res + 1) + ix];
      const std::int8_t s11 = sign[static_cast<std::size_t>(iy + 1) * (res + 1) + ix + 1];
      const bool all_pos = s00 > 0 && s10 > 0 && s01 > 0 && s11 > 0;
      const bool all_neg = s00 < 0 && s10 < 0 && s01 < 0 && s11 < 0;
      if (!all_pos && !all_neg) {
        zero[static_cast<std::size_t>(iy) * res + ix] = 1;
        if (ix == 0 || iy == 0 || ix == res - 1 || iy == res - 1)
          scan.confident = false;
      }
    }

  // 8-neighbor flood fill over zero cells; component ids are 1-based in
  // scan order.
  std::vector<int> component(static_cast<std::size_t>(res) * res, 0);
  std::vector<std::size_t> stack;
  int next_id = 0;
  for (int iy = 0; iy < res; ++iy)
    for (int ix = 0; ix < res; ++ix) {
      const std::size_t start = static_cast<std::size_t>(iy) * res + ix;
      if (!zero[start] || component[start] != 0) continue;
      component[start] = ++next_id;
      stack.assign(1, start);
      while (!stack.empty()) {
        const std::size_t cur = stack.back();
        stack.pop_back();
        const int cy = static_cast<int>(cur) / res;
        const int cx = static_cast<int>(cur) % res;
        for (int ny = cy - 1; ny <= cy + 1; ++ny)
          for (int nx = cx - 1; nx <= cx + 1; ++nx) {
            if (nx < 0 || ny < 0 || nx >= res || ny >= res) continue;
            const std::size_t ni = static_cast<std::size_t>(ny) * res + nx;
            if (zero[ni] && component[ni] == 0) {
              component[ni] = next_id;
              stack.push_back(ni);
            }
          }
      }
    }
  scan.estimate = next_id;

  for (int iy = 0; iy < res; ++iy)
    for (int ix = 0; ix < res; ++ix) {
      const std::size_t ci = static_cast<std::size_t>(iy) * res + ix;
      if (zero[ci])
        scan.cells.push_back(ZeroCell{x0 + (ix + 0.5) * dx,
                                      y0 + (iy + 0.5) * dy, component[ci]});
    }
  return scan;
}

}  // namespace

OracleReport grid_components_2d(const QuadraticFunction& f,
                                const GridSpec& spec) {
  const GridScan scan = scan_grid(f, spec);
  OracleReport rep;
  rep.component_count_estimate = scan.estimate;
  rep.confident = scan.confident;
  rep.min_abs_g_on_zero_set = std::numeric_limits<double>::infinity();
  return rep;
}

std::vector<ZeroCell> grid_zero_cells(const QuadraticFunction& f,
                                      const GridSpec& spec) {
  return scan_grid(f, spec).cells;
}

std::vector<LevelSample> sample_level_set(const QuadraticFunction& f,
                                          int count, std::uint64_t seed,
                                          const Tolerances& t) {
  if (count <= 0) throw InputError("sample count must be positive");
  const ComponentReport cr = components_level(f, t);
  if (cr.count == 0) throw InputError("cannot sample an empty level set");

  const std::size_t n = f.dim();
  GaussianStream rng(seed);
  const double residual_bound = 1e-8 * std::max(1.0, f.coefficient_scale());
  std::vector<LevelSample> out;
  out.reserve(static_cast<std::size_t>(count));

  const auto emit = [&](const CanonicalForm& cf, Vector z) {
    Vector x = cf.change.from_canonical(z);
    if (std::abs(evaluate(f, x)) > residual_bound)
      throw InternalError("level-set sample residual exceeds bound");
    out.push_back(LevelSample{std::move(x),
                              z[0] < 0.0 ? Side::MINUS : Side::PLUS});
  };

  if (cr.count == 2) {
    const CanonicalForm frame = *two_sheet_frame(f, t);
    for (int i = 0; i < count; ++i) {
      const double sgn = (i % 2 == 0) ? 1.0 : -1.0;
      Vector z(n, 0.0);
      for (std::size_t j = 1; j < n; ++j) z[j] = rng.next();
      double ssum = 0.0;
      for (int j = 1; j < frame.m; ++j) ssum += z[j] * z[j];
      z[0] = sgn * std::sqrt(1.0 + ssum);
      emit(frame, std::move(z));
    }
    return out;
  }

  const CanonicalForm cf = canonical_form(f, t);
  const double cth = constant_threshold(f, t);
  const std::size_t k = static_cast<std::size_t>(cf.k);
  const std::size_t m = static_cast<std::size_t>(cf.m);

  for (int i = 0; i < count; ++i) {
    const double sgn = (i % 2 == 0) ? 1.0 : -1.0;
    Vector z(n, 0.0);
    bool ok = false;
    for (int attempt = 0; attempt < 10000 && !ok; ++attempt) {
      std::fill(z.begin(), z.end(), 0.0);
      switch (cf.form_id) {
        case FormId::F1: {
          if (cf.delta == 0 && cf.theta == 0) {
            // {z_1..z_k = 0}: a linear subspace.
            for (std::size_t j = m; j < n; ++j) z[j] = rng.next();
            ok = true;
          } else if (cf.delta == 0) {
            // theta = 1, k >= 2 here: the unit sphere in the negative block.
            double s2 = 0.0;
            for (std::size_t j = 0; j < k; ++j) {
              z[j] = rng.next();
              s2 += z[j] * z[j];
            }
            if (s2 < 1e-12) continue;
            const double scale = 1.0 / std::sqrt(s2);
            for (std::size_t j = 0; j < k; ++j) z[j] *= scale;
            for (std::size_t j = m; j < n; ++j) z[j] = rng.next();
            ok = true;
          } else {
            for (std::size_t j = 1; j < n; ++j) z[j] = rng.next();
            double rhs = cf.theta;
            for (std::size_t j = k; j < m; ++j) rhs += z[j] * z[j];
            for (std::size_t j = 1; j < k; ++j) rhs -= z[j] * z[j];
            if (rhs < 0.0) continue;
            z[0] = sgn * std::sqrt(rhs);
            ok = true;
          }
          break;
        }
        case FormId::F2: {
          for (std::size_t j = 0; j < n; ++j)
            if (j != k) z[j] = rng.next();
          double rhs = 1.0;
          for (std::size_t j = 0; j < k; ++j) rhs += z[j] * z[j];
          for (std::size_t j = k + 1; j < m; ++j) rhs -= z[j] * z[j];
          if (rhs < 0.0) continue;
          z[k] = sgn * std::sqrt(rhs);
          ok = true;
          break;
        }
        case FormId::F3: {
          for (std::size_t j = 0; j < n; ++j)
            if (j != m) z[j] = rng.next();
          double bound = 0.0;
          for (std::size_t j = 0; j < k; ++j) bound += z[j] * z[j];
          for (std::size_t j = k; j < m; ++j) bound -= z[j] * z[j];
          z[m] = bound;
          ok = true;
          break;
        }
        case FormId::F4: {
          if (cf.delta == 1) {
            for (std::size_t j = 0; j < n; ++j)
              if (j != m) z[j] = rng.next();
            double s = 0.0;
            for (std::size_t j = 0; j < m; ++j) s += z[j] * z[j];
            z[m] = -s - cf.cprime;
            ok = true;
          } else if (cf.cprime < -cth) {
            // Sphere of radius sqrt(-c') in the square block.
            double s2 = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
              z[j] = rng.next();
              s2 += z[j] * z[j];
            }
            if (s2 < 1e-12) continue;
            const double scale = std::sqrt(-cf.cprime / s2);
            for (std::size_t j = 0; j < m; ++j) z[j] *= scale;
            for (std::size_t j = m; j < n; ++j) z[j] = rng.next();
            ok = true;
          } else {
            // |c'| within tolerance of zero: the zero subspace of squares.
            for (std::size_t j = m; j < n; ++j) z[j] = rng.next();
            ok = true;
          }
          break;
        }
        case FormId::F5: {
          z[0] = -cf.cprime;
          for (std::size_t j = 1; j < n; ++j) z[j] = rng.next();
          ok = true;
          break;
        }
      }
    }
    if (!ok)
      throw InternalError("level-set sampling exceeded the rejection cap");
    emit(cf, std::move(z));
  }
  return out;
}

double sign_margin(const QuadraticFunction& g) {
  return 1e-10 * std::max(1.0, g.coefficient_scale());
}

OracleReport oracle_separates(const QuadraticFunction& g,
                              const QuadraticFunction& f, int count,
                              std::uint64_t seed, const Tolerances& t) {
  if (g.dim() != f.dim())
    throw InputError("oracle separation dimension mismatch");
  const std::vector<LevelSample> samples = sample_level_set(f, count, seed, t);
  const ComponentReport cr = components_level(f, t);

  OracleReport rep;
  rep.component_count_estimate = cr.count;
  rep.confident = true;  // parameterized sampling covers every sheet
  const double margin = sign_margin(g);

  double min_abs = std::numeric_limits<double>::infinity();
  bool seen[2] = {false, false};
  int sheet_sign[2] = {0, 0};
  bool mixed[2] = {false, false};
  for (const LevelSample& s : samples) {
    const double gv = evaluate(g, s.point);
    min_abs = std::min(min_abs, std::abs(gv));
    const int slot = (s.sheet == Side::MINUS) ? 0 : 1;
    const int sg = gv > margin ? 1 : (gv < -margin ? -1 : 0);
    if (!seen[slot]) {
      seen[slot] = true;
      sheet_sign[slot] = sg;
    } else if (sheet_sign[slot] != sg) {
      mixed[slot] = true;
    }
  }
  rep.min_abs_g_on_zero_set = min_abs;

  if (cr.count == 2) {
    rep.sign_pattern = {mixed[0] ? 0 : sheet_sign[0],
                        mixed[1] ? 0 : sheet_sign[1]};
    rep.empirical_separation = seen[0] && seen[1] && !mixed[0] && !mixed[1] &&
                               sheet_sign[0] != 0 && sheet_sign[1] != 0 &&
                               sheet_sign[0] == -sheet_sign[1];
  } else {
    // Connected set: report one pattern entry merged over all samples.
    int sg = 0;
    bool any = false, uniform = true;
    for (int slot = 0; slot < 2; ++slot) {
      if (!seen[slot]) continue;
      if (mixed[slot]) uniform = false;
      if (!any) {
        sg = sheet_sign[slot];
        any = true;
      } else if (sheet_sign[slot] != sg) {
        uniform = false;
      }
    }
    rep.sign_pattern = {uniform ? sg : 0};
    rep.empirical_separation = false;
  }
  return rep;
}

}  // namespace quadsep
