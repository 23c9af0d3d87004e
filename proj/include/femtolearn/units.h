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

#ifndef FEMTOLEARN_UNITS_H_
#define FEMTOLEARN_UNITS_H_

// Conversions between the logarithmic units used in configuration files and
// the linear units used everywhere in computation. All throw
// std::invalid_argument on non-finite input.

namespace femtolearn {

// dBm -> W: 10^((x - 30) / 10).
double DbmToWatt(double dbm);

// W -> dBm. Requires watt > 0.
double WattToDbm(double watt);

// dB -> linear ratio: 10^(x / 10).
double DbToLinear(double db);

// Linear ratio -> dB. Zero maps to -infinity.
double LinearToDb(double ratio);

}  // namespace femtolearn

#endif  // FEMTOLEARN_UNITS_H_
