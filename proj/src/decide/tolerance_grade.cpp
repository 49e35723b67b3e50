// Copyright 2026 The drawparse Authors
// SPDX-License-Identifier: Apache-2.0

#include <array>
#include <cmath>

#include "drawparse/decide.hpp"

namespace drawparse {
namespace {

// Upper limits of the nominal size ranges; the first range starts at 1 for
// the geometric mean.
constexpr std::array<double, 14> kRangeBounds = {1,   3,   6,   10,  18,  30,  50,
                                                 80,  120, 180, 250, 315, 400, 500};

// IT5..IT18 as multiples of i.
constexpr std::array<double, 14> kMultipliers = {7,   10,  16,  25,   40,   64,   100,
                                                 160, 250, 400, 640, 1000, 1600, 2500};

double range_mean(double nominal) {
  for (std::size_t k = 1; k < kRangeBounds.size(); ++k) {
    if (nominal <= kRangeBounds[k]) return std::sqrt(kRangeBounds[k - 1] * kRangeBounds[k]);
  }
  return 0;  // unreachable after the range check
}

void check_nominal(double nominal) {
  if (!(nominal > 0 && nominal <= kMaxTableNominal)) {
    throw Error(ErrorCode::OutOfTableRange,
                "nominal " + std::to_string(nominal) + " mm is outside (0, 500]");
  }
}

}  // namespace

double it_tolerance_um(int grade, double nominal) {
  check_nominal(nominal);
  if (grade < kMinItGrade || grade > kMaxItGrade) {
    throw Error(ErrorCode::OutOfTableRange, "IT" + std::to_string(grade) + " is not tabulated");
  }
  const double d = range_mean(nominal);
  const double i = 0.45 * std::cbrt(d) + 0.001 * d;
  if (grade >= 5) return std::round(kMultipliers[static_cast<std::size_t>(grade - 5)] * i);
  // IT1 from its own formula; IT2..IT4 geometric between IT1 and IT5.
  const double it1 = 0.8 + 0.020 * d;
  const double it5 = 7 * i;
  const double v = it1 * std::pow(it5 / it1, (grade - 1) / 4.0);
  return std::round(v * 10) / 10;
}

int classify_tolerance_grade(double nominal, double band) {
  if (!(band > 0) || !std::isfinite(band)) {
    throw Error(ErrorCode::InvalidArgument, "tolerance band must be positive");
  }
  check_nominal(nominal);
  const double um = band * 1000.0;
  for (int g = kMinItGrade; g <= kMaxItGrade; ++g) {
    if (um <= it_tolerance_um(g, nominal) + 1e-9) return g;
  }
  throw Error(ErrorCode::OutOfTableRange, "band " + std::to_string(band) +
                                              " mm is wider than IT18 for this size");
}

}  // namespace drawparse
