// Copyright 2026 The femtolearn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "femtolearn/units.h"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace femtolearn {
namespace {

void RequireFinite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument(std::string(what) + ": non-finite input");
  }
}

}  // namespace

double DbmToWatt(double dbm) {
  RequireFinite(dbm, "DbmToWatt");
  return std::pow(10.0, (dbm - 30.0) / 10.0);
}

double WattToDbm(double watt) {
  RequireFinite(watt, "WattToDbm");
  if (watt <= 0.0) throw std::invalid_argument("WattToDbm: power must be > 0");
  return 10.0 * std::log10(watt) + 30.0;
}

double DbToLinear(double db) {
  RequireFinite(db, "DbToLinear");
  return std::pow(10.0, db / 10.0);
}

double LinearToDb(double ratio) {
  RequireFinite(ratio, "LinearToDb");
  if (ratio < 0.0) throw std::invalid_argument("LinearToDb: negative ratio");
  if (ratio == 0.0) return -std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(ratio);
}

}  // namespace femtolearn
