#include "cptloc/psf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace cptloc {

namespace {

constexpr double kRelTol = 1e-10;

std::size_t nearest_index(const std::vector<double>& xs, double x) {
  const auto it = std::lower_bound(xs.begin(), xs.end(), x);
  if (it == xs.begin()) return 0;
  if (it == xs.end()) return xs.size() - 1;
  const auto hi = static_cast<std::size_t>(it - xs.begin());
  return (x - xs[hi - 1] <= xs[hi] - x) ? hi - 1 : hi;
}

// Golden-section refinement of an extremum of f inside [a, b].
double refine_extremum(const std::function<double(double)>& f, double a, double b,
                       bool maximize) {
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && (b - a) > kRelTol * std::max(1.0, std::abs(a) + std::abs(b));
       ++it) {
    const bool keep_left = maximize ? (f1 > f2) : (f1 < f2);
    if (keep_left) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

// Bisection for f(x) = level between a and b (f(a), f(b) straddle the level).
double refine_crossing(const std::function<double(double)>& f, double a, double b,
                       double level) {
  double fa = f(a) - level;
  for (int it = 0; it < 200 && (b - a) > kRelTol * std::max(1.0, std::abs(a) + std::abs(b));
       ++it) {
    const double mid = 0.5 * (a + b);
    const double fm = f(mid) - level;
    if ((fa <= 0.0) == (fm <= 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

struct SideResult {
  double crossing;
  double half_level;
};

// Walk outward from the center of a notch, find the adjacent lobe extremum and
// the first crossing of floor + (lobe - floor)/2.
SideResult notch_side(const PsfCurve& c, std::size_t ic, int dir, double floor_value,
                      const PsfFunction* oriented) {
  const auto n = c.positions.size();
  // Adjacent lobe: maximum over the whole side (lobes repeat periodically with
  // equal height, so the global side maximum is the adjacent one's level).
  std::size_t i_lobe = ic;
  double lobe = floor_value;
  for (std::size_t k = ic;; k = static_cast<std::size_t>(k + dir)) {
    if (c.values[k] > lobe) {
      lobe = c.values[k];
      i_lobe = k;
    }
    if ((dir < 0 && k == 0) || (dir > 0 && k + 1 == n)) break;
  }
  if (!(lobe > floor_value)) {
    throw NoHalfCrossing("measure_width: no lobe above the notch floor on one side");
  }
  if (oriented && i_lobe > 0 && i_lobe + 1 < n) {
    const double refined_x = refine_extremum(*oriented, c.positions[i_lobe - 1],
                                             c.positions[i_lobe + 1], true);
    lobe = std::max(lobe, (*oriented)(refined_x));
  }
  const double half = floor_value + 0.5 * (lobe - floor_value);

  for (std::size_t k = ic;; k = static_cast<std::size_t>(k + dir)) {
    const auto next = static_cast<std::size_t>(k + dir);
    if ((dir < 0 && k == 0) || (dir > 0 && next >= n)) break;
    const double v0 = c.values[k];
    const double v1 = c.values[next];
    if ((v0 < half && v1 >= half) || (v0 <= half && v1 > half)) {
      double a = std::min(c.positions[k], c.positions[next]);
      double b = std::max(c.positions[k], c.positions[next]);
      double x;
      if (oriented) {
        x = refine_crossing(*oriented, a, b, half);
      } else {
        x = c.positions[k] +
            (half - v0) * (c.positions[next] - c.positions[k]) / (v1 - v0);
      }
      return {x, half};
    }
  }
  throw NoHalfCrossing("measure_width: notch never reaches the half level in range");
}

double peak_side(const PsfCurve& c, std::size_t ic, int dir, double half,
                 const PsfFunction* oriented) {
  const auto n = c.positions.size();
  for (std::size_t k = ic;; k = static_cast<std::size_t>(k + dir)) {
    const auto next = static_cast<std::size_t>(k + dir);
    if ((dir < 0 && k == 0) || (dir > 0 && next >= n)) break;
    const double v0 = c.values[k];
    const double v1 = c.values[next];
    if ((v0 > half && v1 <= half) || (v0 >= half && v1 < half)) {
      if (oriented) {
        const double a = std::min(c.positions[k], c.positions[next]);
        const double b = std::max(c.positions[k], c.positions[next]);
        return refine_crossing(*oriented, a, b, half);
      }
      return c.positions[k] +
             (half - v0) * (c.positions[next] - c.positions[k]) / (v1 - v0);
    }
  }
  throw NoHalfCrossing("measure_width: peak never falls to half maximum in range");
}

FeatureWidth measure_impl(const PsfCurve& input, double center, const PsfFunction* raw) {
  PsfCurve curve = input.classified ? input : normalize_orientation(input);

  PsfFunction oriented_storage;
  const PsfFunction* oriented = nullptr;
  if (raw) {
    const Normalization norm = curve.normalization;
    oriented_storage = [f = *raw, norm](double x) { return norm.scale * f(x) + norm.shift; };
    oriented = &oriented_storage;
  }

  std::size_t ic = nearest_index(curve.positions, center);
  FeatureWidth result;
  result.kind = curve.kind;

  if (curve.kind == FeatureKind::peak) {
    double peak_value = curve.values[ic];
    double peak_x = curve.positions[ic];
    if (oriented && ic > 0 && ic + 1 < curve.positions.size()) {
      peak_x = refine_extremum(*oriented, curve.positions[ic - 1], curve.positions[ic + 1],
                               true);
      peak_value = std::max(peak_value, (*oriented)(peak_x));
    }
    // Half maximum against the zero baseline all PSFs here decay to.
    const double half = 0.5 * peak_value;
    const double left = peak_side(curve, ic, -1, half, oriented);
    const double right = peak_side(curve, ic, +1, half, oriented);
    result.width = right - left;
    result.center = peak_x;
    result.half_level = half;
  } else {
    double floor_value = curve.values[ic];
    double floor_x = curve.positions[ic];
    if (oriented && ic > 0 && ic + 1 < curve.positions.size()) {
      floor_x = refine_extremum(*oriented, curve.positions[ic - 1],
                                curve.positions[ic + 1], false);
      floor_value = std::min(floor_value, (*oriented)(floor_x));
    }
    const SideResult left = notch_side(curve, ic, -1, floor_value, oriented);
    const SideResult right = notch_side(curve, ic, +1, floor_value, oriented);
    result.width = right.crossing - left.crossing;
    result.center = floor_x;
    result.half_level = 0.5 * (left.half_level + right.half_level);
  }
  if (!(result.width > 0.0)) {
    throw NoHalfCrossing("measure_width: degenerate zero width");
  }
  return result;
}

}  // namespace

PsfCurve sample_psf(const PsfFunction& psf, double lo, double hi, int n) {
  if (n < 9) throw std::invalid_argument("sample_psf: need at least 9 samples");
  if (!(lo < hi)) throw std::invalid_argument("sample_psf: need lo < hi");
  PsfCurve curve;
  curve.positions.resize(n);
  curve.values.resize(n);
  const double h = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) {
    curve.positions[i] = lo + i * h;
    curve.values[i] = psf(curve.positions[i]);
  }
  return curve;
}

PsfCurve normalize_orientation(PsfCurve curve) {
  const auto n = curve.values.size();
  if (n < 3) throw DegenerateCurve("normalize_orientation: too few samples");
  const auto [min_it, max_it] = std::minmax_element(curve.values.begin(), curve.values.end());
  const double vmin = *min_it;
  const double vmax = *max_it;
  const double span = vmax - vmin;
  if (!(span > 1e-15 * std::max({std::abs(vmin), std::abs(vmax), 1.0}))) {
    throw DegenerateCurve("normalize_orientation: curve is constant");
  }

  curve.normalization = {};
  if (std::abs(vmin) > std::abs(vmax)) {
    for (auto& v : curve.values) v = -v;
    curve.inverted = true;
    curve.normalization.scale = -1.0;
  } else {
    curve.inverted = false;
  }

  // Classify the feature at the symmetry center of the sampled window.
  const double mid = 0.5 * (curve.positions.front() + curve.positions.back());
  const std::size_t ic = nearest_index(curve.positions, mid);
  const double vc = curve.values[ic];
  const double left = ic > 0 ? curve.values[ic - 1] : vc;
  const double right = ic + 1 < n ? curve.values[ic + 1] : vc;
  if (vc >= left && vc >= right) {
    curve.kind = FeatureKind::peak;
  } else if (vc <= left && vc <= right) {
    curve.kind = FeatureKind::notch;
  } else {
    // Center sits on a slope; fall back to its standing relative to the range.
    const double hi = *std::max_element(curve.values.begin(), curve.values.end());
    const double lo = *std::min_element(curve.values.begin(), curve.values.end());
    curve.kind = (vc - lo >= hi - vc) ? FeatureKind::peak : FeatureKind::notch;
  }
  curve.classified = true;
  return curve;
}

FeatureWidth measure_width(const PsfCurve& curve, double center) {
  return measure_impl(curve, center, nullptr);
}

FeatureWidth measure_width(const PsfCurve& curve, double center, const PsfFunction& raw) {
  return measure_impl(curve, center, &raw);
}

double improvement_factor(const FeatureWidth& width, RayleighReference) {
  if (!(width.width > 0.0)) throw std::invalid_argument("improvement_factor: width <= 0");
  return M_PI / width.width;
}

double improvement_factor(const FeatureWidth& width, double custom_reference_width) {
  if (!(width.width > 0.0)) throw std::invalid_argument("improvement_factor: width <= 0");
  return custom_reference_width / width.width;
}

double kx_width_to_length(double width_kx, double wavelength) {
  return width_kx * wavelength / (2.0 * M_PI);
}

PsfSurface sample_psf_2d(const PsfFunction2d& psf, double lo_x, double hi_x, int nx,
                         double lo_y, double hi_y, int ny) {
  if (nx < 9 || ny < 9) throw std::invalid_argument("sample_psf_2d: need at least 9x9");
  if (!(lo_x < hi_x) || !(lo_y < hi_y)) {
    throw std::invalid_argument("sample_psf_2d: need lo < hi on both axes");
  }
  PsfSurface surface;
  surface.xs.resize(nx);
  surface.ys.resize(ny);
  surface.values.resize(static_cast<std::size_t>(nx) * ny);
  const double hx = (hi_x - lo_x) / (nx - 1);
  const double hy = (hi_y - lo_y) / (ny - 1);
  for (int i = 0; i < nx; ++i) surface.xs[i] = lo_x + i * hx;
  for (int j = 0; j < ny; ++j) surface.ys[j] = lo_y + j * hy;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      surface.values[static_cast<std::size_t>(j) * nx + i] = psf(surface.xs[i], surface.ys[j]);
    }
  }
  return surface;
}

AxisWidths measure_widths_2d(const PsfSurface& surface, const PsfFunction2d& raw, double cx,
                             double cy) {
  const std::size_t iy = nearest_index(surface.ys, cy);
  const std::size_t ix = nearest_index(surface.xs, cx);

  PsfCurve slice_x;
  slice_x.positions = surface.xs;
  slice_x.values.resize(surface.xs.size());
  for (std::size_t i = 0; i < surface.xs.size(); ++i) slice_x.values[i] = surface.at(i, iy);

  PsfCurve slice_y;
  slice_y.positions = surface.ys;
  slice_y.values.resize(surface.ys.size());
  for (std::size_t j = 0; j < surface.ys.size(); ++j) slice_y.values[j] = surface.at(ix, j);

  const double y0 = surface.ys[iy];
  const double x0 = surface.xs[ix];
  AxisWidths widths;
  widths.x = measure_width(normalize_orientation(std::move(slice_x)), cx,
                           [&](double x) { return raw(x, y0); });
  widths.y = measure_width(normalize_orientation(std::move(slice_y)), cy,
                           [&](double y) { return raw(x0, y); });
  return widths;
}

std::vector<std::array<double, 4>> level_contour(const PsfSurface& surface, double level) {
  std::vector<std::array<double, 4>> segments;
  const auto nx = surface.xs.size();
  const auto ny = surface.ys.size();

  auto interp = [level](double a, double b, double va, double vb) {
    return a + (level - va) * (b - a) / (vb - va);
  };

  for (std::size_t j = 0; j + 1 < ny; ++j) {
    for (std::size_t i = 0; i + 1 < nx; ++i) {
      const double x0 = surface.xs[i], x1 = surface.xs[i + 1];
      const double y0 = surface.ys[j], y1 = surface.ys[j + 1];
      const double v00 = surface.at(i, j), v10 = surface.at(i + 1, j);
      const double v01 = surface.at(i, j + 1), v11 = surface.at(i + 1, j + 1);

      // Edge crossings of the cell, gathered then paired.
      std::vector<std::array<double, 2>> pts;
      auto edge = [&](double va, double vb, double ax, double ay, double bx, double by) {
        if ((va < level && vb >= level) || (vb < level && va >= level)) {
          if (ax == bx) {
            pts.push_back({ax, interp(ay, by, va, vb)});
          } else {
            pts.push_back({interp(ax, bx, va, vb), ay});
          }
        }
      };
      edge(v00, v10, x0, y0, x1, y0);
      edge(v10, v11, x1, y0, x1, y1);
      edge(v01, v11, x0, y1, x1, y1);
      edge(v00, v01, x0, y0, x0, y1);

      if (pts.size() >= 2) {
        segments.push_back({pts[0][0], pts[0][1], pts[1][0], pts[1][1]});
        if (pts.size() == 4) {
          segments.push_back({pts[2][0], pts[2][1], pts[3][0], pts[3][1]});
        }
      }
    }
  }
  return segments;
}

}  // namespace cptloc
