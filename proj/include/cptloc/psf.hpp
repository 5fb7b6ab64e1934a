#pragma once

#include <array>
#include <functional>
#include <vector>

#include "cptloc/errors.hpp"

namespace cptloc {

using PsfFunction = std::function<double(double)>;
using PsfFunction2d = std::function<double(double, double)>;

enum class FeatureKind { peak, notch };

// Record of the orientation fix-up applied to a curve; displayed values are
// scale * raw + shift.
struct Normalization {
  double shift = 0.0;
  double scale = 1.0;
};

// Sampled point spread function over a 1D position grid.
struct PsfCurve {
  std::vector<double> positions;
  std::vector<double> values;
  bool classified = false;
  bool inverted = false;
  FeatureKind kind = FeatureKind::peak;
  Normalization normalization;
};

struct PsfSurface {
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> values;  // row-major, values[iy * xs.size() + ix]

  double at(std::size_t ix, std::size_t iy) const { return values[iy * xs.size() + ix]; }
};

struct FeatureWidth {
  double width = 0.0;
  double center = 0.0;
  double half_level = 0.0;
  FeatureKind kind = FeatureKind::peak;
};

// Uniform-grid evaluation, no normalization applied. n >= 9, lo < hi.
PsfCurve sample_psf(const PsfFunction& psf, double lo, double hi, int n);

// Flips the curve when its largest-magnitude extremum is negative (so notches
// open upward) and classifies the central feature at the symmetry center as a
// peak or a notch. Throws DegenerateCurve for constant input.
PsfCurve normalize_orientation(PsfCurve curve);

// FWHM of the central feature.
//  - peak: distance between the two half-maximum crossings, half-maximum
//    measured against the zero far-field baseline;
//  - notch: distance between the two points, one per side, where the value
//    first climbs halfway from the notch floor to the adjacent lobe extremum.
// The grid-only overload interpolates linearly; supplying the raw function
// refines lobes and crossings (bisection) to 1e-10 relative.
// Throws NoHalfCrossing when the half level is never reached in range.
FeatureWidth measure_width(const PsfCurve& curve, double center);
FeatureWidth measure_width(const PsfCurve& curve, double center, const PsfFunction& raw);

// Reference width divided by measured width. The Rayleigh reference is the
// diffraction bound lambda/2, i.e. k*dx = pi in dimensionless units.
struct RayleighReference {};
double improvement_factor(const FeatureWidth& width, RayleighReference);
double improvement_factor(const FeatureWidth& width, double custom_reference_width);

// Converts a width in kx units to a physical length for a given wavelength.
double kx_width_to_length(double width_kx, double wavelength);

PsfSurface sample_psf_2d(const PsfFunction2d& psf, double lo_x, double hi_x, int nx,
                         double lo_y, double hi_y, int ny);

// Widths of the central feature along the two axis slices through (cx, cy).
struct AxisWidths {
  FeatureWidth x;
  FeatureWidth y;
};
AxisWidths measure_widths_2d(const PsfSurface& surface, const PsfFunction2d& raw,
                             double cx, double cy);

// Half-level iso-contour segments (x1, y1, x2, y2) by marching squares with
// linear edge interpolation.
std::vector<std::array<double, 4>> level_contour(const PsfSurface& surface, double level);

}  // namespace cptloc
