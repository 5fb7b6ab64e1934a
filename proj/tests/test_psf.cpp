#include <doctest.h>

#include <cmath>

#include "cptloc/cpt_analytic.hpp"
#include "cptloc/modulation.hpp"
#include "cptloc/psf.hpp"
#include "cptloc/scenarios.hpp"

using namespace cptloc;

namespace {

std::function<double(double)> standing_ratio(double ratio) {
  return [ratio](double x) { return std::sqrt(ratio) * std::abs(std::sin(x)); };
}

std::function<double(double)> linear_ratio(double ratio) {
  return [ratio](double x) { return std::sqrt(ratio) * std::abs(x); };
}

}  // namespace

TEST_CASE("sampling basics") {
  const PsfCurve flat = sample_psf([](double) { return 2.0; }, -1.0, 1.0, 11);
  for (double v : flat.values) CHECK(v == 2.0);
  CHECK(flat.positions.front() == -1.0);
  CHECK(flat.positions.back() == 1.0);

  const PsfCurve narrow =
      sample_psf([](double x) { return rho22_unmodulated(1000.0, x); }, -0.2, 0.2, 4001);
  const auto max_it = std::max_element(narrow.values.begin(), narrow.values.end());
  CHECK(*max_it == 1.0);
  CHECK(narrow.positions[max_it - narrow.values.begin()] == doctest::Approx(0.0));

  CHECK_THROWS_AS(sample_psf([](double) { return 0.0; }, -1.0, 1.0, 5),
                  std::invalid_argument);
  CHECK_THROWS_AS(sample_psf([](double) { return 0.0; }, 1.0, -1.0, 11),
                  std::invalid_argument);
}

TEST_CASE("fourth-harmonic PSF: central zero between two negative lobes") {
  const PsfFunction f4 = make_psf(PsfFamily::f4, standing_ratio(2000.0));
  const PsfCurve curve = sample_psf(f4, -0.05, 0.05, 4001);
  CHECK(std::abs(f4(0.0)) < 1e-15);
  const double vmax = *std::max_element(curve.values.begin(), curve.values.end());
  const double vmin = *std::min_element(curve.values.begin(), curve.values.end());
  CHECK(vmax <= 1e-15);   // never positive
  CHECK(vmin < -0.17);    // lobe depth
  CHECK(f4(-0.006) < -0.1);
  CHECK(f4(0.006) < -0.1);
}

TEST_CASE("orientation: inverted notch, plain peak, upright notch") {
  const PsfCurve f4 = normalize_orientation(
      sample_psf(make_psf(PsfFamily::f4, standing_ratio(2000.0)), -0.05, 0.05, 4001));
  CHECK(f4.inverted);
  CHECK(f4.kind == FeatureKind::notch);
  CHECK(f4.normalization.scale == -1.0);

  const PsfCurve unmod = normalize_orientation(sample_psf(
      make_psf(PsfFamily::unmodulated, standing_ratio(1000.0)), -0.3, 0.3, 4001));
  CHECK_FALSE(unmod.inverted);
  CHECK(unmod.kind == FeatureKind::peak);

  const PsfCurve pert1 = normalize_orientation(
      sample_psf(make_psf(PsfFamily::pert1, standing_ratio(1000.0)), -0.3, 0.3, 4001));
  CHECK_FALSE(pert1.inverted);
  CHECK(pert1.kind == FeatureKind::notch);

  CHECK_THROWS_AS(normalize_orientation(sample_psf([](double) { return 1.0; }, 0.0, 1.0, 11)),
                  DegenerateCurve);
}

TEST_CASE("peak width against the arcsin root") {
  const PsfFunction psf = make_psf(PsfFamily::unmodulated, standing_ratio(1000.0));
  const PsfCurve curve = normalize_orientation(sample_psf(psf, -0.3, 0.3, 4001));
  const FeatureWidth w = measure_width(curve, 0.0, psf);
  const double exact = 2.0 * std::asin(1.0 / std::sqrt(1000.0));
  CHECK(w.kind == FeatureKind::peak);
  CHECK(std::abs(w.width - exact) / exact < 1e-9);
  CHECK(std::abs(w.width - fwhm_analytic(1000.0)) / fwhm_analytic(1000.0) < 1e-3);
}

TEST_CASE("coupled profile width and sharpening ratio") {
  const PsfFunction psf = make_psf(PsfFamily::coupled_lambda, standing_ratio(1000.0));
  const PsfCurve curve = normalize_orientation(sample_psf(psf, -0.3, 0.3, 4001));
  const FeatureWidth w = measure_width(curve, 0.0, psf);
  const double exact = 2.0 * std::asin(std::sqrt((std::sqrt(2.0) - 1.0) / 1000.0));
  CHECK(std::abs(w.width - exact) / exact < 1e-9);
  const double plain = 2.0 * std::asin(1.0 / std::sqrt(1000.0));
  const double ratio = plain / w.width;
  CHECK(ratio > 1.4);
  CHECK(ratio < 1.7);
  CHECK(ratio == doctest::Approx(1.5539).epsilon(1e-3));
}

TEST_CASE("triangle fixture has its exact width") {
  const double a = 0.35;
  const PsfFunction tri = [a](double x) { return std::max(0.0, 1.0 - std::abs(x) / a); };
  const PsfCurve curve = normalize_orientation(sample_psf(tri, -1.0, 1.0, 4001));
  const FeatureWidth w = measure_width(curve, 0.0, tri);
  CHECK(std::abs(w.width - a) < 1e-9);
}

TEST_CASE("missing half crossing is reported") {
  const PsfFunction psf = make_psf(PsfFamily::unmodulated, standing_ratio(4.0));
  const PsfCurve curve = normalize_orientation(sample_psf(psf, -0.1, 0.1, 1001));
  CHECK_THROWS_AS(measure_width(curve, 0.0, psf), NoHalfCrossing);
}

TEST_CASE("improvement factors") {
  const PsfFunction psf = make_psf(PsfFamily::unmodulated, standing_ratio(1000.0));
  const PsfCurve curve = normalize_orientation(sample_psf(psf, -0.3, 0.3, 4001));
  const FeatureWidth w = measure_width(curve, 0.0, psf);
  const double vs_rayleigh = improvement_factor(w, RayleighReference{});
  CHECK(vs_rayleigh == doctest::Approx(M_PI / w.width).epsilon(1e-12));
  CHECK(vs_rayleigh > 49.0);
  CHECK(vs_rayleigh < 51.0);
  CHECK(improvement_factor(w, w.width) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("width is invariant under rescaling and period translation") {
  const double ratio = 800.0;
  const PsfFunction base = make_psf(PsfFamily::unmodulated, standing_ratio(ratio));
  const PsfCurve curve = normalize_orientation(sample_psf(base, -0.3, 0.3, 4001));
  const double w0 = measure_width(curve, 0.0, base).width;

  const PsfFunction scaled = [&](double x) { return 7.0 * base(x); };
  const PsfCurve scurve = normalize_orientation(sample_psf(scaled, -0.3, 0.3, 4001));
  CHECK(std::abs(measure_width(scurve, 0.0, scaled).width - w0) / w0 < 1e-9);

  const PsfCurve tcurve =
      normalize_orientation(sample_psf(base, M_PI - 0.3, M_PI + 0.3, 4001));
  CHECK(std::abs(measure_width(tcurve, M_PI, base).width - w0) / w0 < 1e-9);
}

TEST_CASE("refined widths are grid independent") {
  const PsfFunction psf = make_psf(PsfFamily::f2, standing_ratio(2000.0));
  const PsfCurve coarse = normalize_orientation(sample_psf(psf, -0.22, 0.22, 4001));
  const PsfCurve fine = normalize_orientation(sample_psf(psf, -0.22, 0.22, 8001));
  const double w1 = measure_width(coarse, 0.0, psf).width;
  const double w2 = measure_width(fine, 0.0, psf).width;
  CHECK(std::abs(w1 - w2) / w1 < 1e-6);
}

TEST_CASE("measured width converges to the large-ratio formula") {
  for (double ratio : {100.0, 1000.0, 10000.0}) {
    const PsfFunction psf = make_psf(PsfFamily::unmodulated, standing_ratio(ratio));
    const double seed = 2.0 / std::sqrt(ratio);
    const PsfCurve curve =
        normalize_orientation(sample_psf(psf, -5.0 * seed, 5.0 * seed, 4001));
    const double w = measure_width(curve, 0.0, psf).width;
    CHECK(std::abs(w - fwhm_analytic(ratio)) / fwhm_analytic(ratio) < 1.0 / ratio);
  }
}

TEST_CASE("higher harmonics narrow the feature at matched ratio") {
  for (double ratio : {100.0, 2000.0, 10000.0}) {
    const auto s_of_x = standing_ratio(ratio);
    const double w_unmod = family_width(PsfFamily::unmodulated, s_of_x, ratio).width;
    const double w_f2 = family_width(PsfFamily::f2, s_of_x, ratio).width;
    const double w_f4 = family_width(PsfFamily::f4, s_of_x, ratio).width;
    CHECK(w_f4 < w_f2);
    CHECK(w_f2 < w_unmod);
  }
}

TEST_CASE("2d widths through the node reduce to the 1d result") {
  const double ratio = 1000.0;
  auto psf2d = [ratio](double x, double y) { return rho33_2d(ratio, ratio, x, y); };
  const PsfSurface surface = sample_psf_2d(psf2d, -0.3, 0.3, 801, -0.3, 0.3, 801);
  const AxisWidths axis = measure_widths_2d(surface, psf2d, 0.0, 0.0);
  const double exact = 2.0 * std::asin(1.0 / std::sqrt(ratio));
  CHECK(std::abs(axis.x.width - exact) / exact < 1e-9);
  CHECK(std::abs(axis.y.width - exact) / exact < 1e-9);
}

TEST_CASE("rotationally symmetric PSF has equal axis widths") {
  // Donut drive over gaussian probe: the local ratio is sqrt(R) r / w0.
  const double ratio = 1000.0;
  auto psf2d = [ratio](double x, double y) {
    const double s = std::sqrt(ratio) * std::hypot(x, y);
    return f_coeff_closed(2, s);
  };
  const PsfSurface surface = sample_psf_2d(psf2d, -0.05, 0.05, 801, -0.05, 0.05, 801);
  const AxisWidths axis = measure_widths_2d(surface, psf2d, 0.0, 0.0);
  CHECK(std::abs(axis.x.width - axis.y.width) / axis.x.width < 5e-3);
}

TEST_CASE("DC PSF over the 2d drive is narrower than plain localization") {
  const double ratio = 1000.0;
  auto s2d = [ratio](double x, double y) {
    const double sx = std::sin(x);
    const double sy = std::sin(y);
    return std::sqrt(ratio * (sx * sx + sy * sy));
  };
  auto psf2d = [&](double x, double y) { return f_coeff_closed(0, s2d(x, y)); };
  const PsfSurface surface = sample_psf_2d(psf2d, -0.3, 0.3, 801, -0.3, 0.3, 801);
  const AxisWidths axis = measure_widths_2d(surface, psf2d, 0.0, 0.0);
  const double plain = 2.0 * std::asin(1.0 / std::sqrt(ratio));
  CHECK(axis.x.width < plain);
  // Axis slice reduces to the 1d DC peak: half max where R sin^2 = 1/3.
  const double expected = 2.0 * std::asin(1.0 / std::sqrt(3.0 * ratio));
  CHECK(std::abs(axis.x.width - expected) / expected < 1e-9);
}

TEST_CASE("half-max contour of the 2d profile is the small-angle circle") {
  const double ratio = 1000.0;
  auto psf2d = [ratio](double x, double y) { return rho33_2d(ratio, ratio, x, y); };
  const PsfSurface surface = sample_psf_2d(psf2d, -0.06, 0.06, 801, -0.06, 0.06, 801);
  const auto segments = level_contour(surface, 0.5);
  CHECK(segments.size() > 100);
  for (const auto& seg : segments) {
    for (int e = 0; e < 2; ++e) {
      const double x = seg[2 * e];
      const double y = seg[2 * e + 1];
      const double sx = std::sin(x);
      const double sy = std::sin(y);
      CHECK(std::abs(ratio * (sx * sx + sy * sy) - 1.0) < 2e-3);
      CHECK(std::abs(ratio * (x * x + y * y) - 1.0) < 2e-3);
    }
  }
}

TEST_CASE("linear-ratio profiles give the Lorentzian width exactly") {
  const double ratio = 1000.0;
  const PsfFunction psf = make_psf(PsfFamily::unmodulated, linear_ratio(ratio));
  const PsfCurve curve = normalize_orientation(sample_psf(psf, -0.3, 0.3, 4001));
  const FeatureWidth w = measure_width(curve, 0.0, psf);
  CHECK(std::abs(w.width - 2.0 / std::sqrt(ratio)) / (2.0 / std::sqrt(ratio)) < 1e-9);
}

TEST_CASE("kx widths convert to physical lengths") {
  CHECK(kx_width_to_length(M_PI, 500.0) == doctest::Approx(250.0).epsilon(1e-14));
  CHECK(kx_width_to_length(0.0025326, 500.0) ==
        doctest::Approx(0.20154).epsilon(1e-3));
}
