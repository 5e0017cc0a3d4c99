// Copyright 2026 The otreg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON formats:
//   measure:  {"atoms": [...], "weights": [...]}
//   map:      {"domain": [a, b], "mode": "step" | "linear", "knots": [[x, t], ...]}
//   dataset:  {"domain": [a, b], "pairs": [{"mu": measure, "nu": measure} | {"x": x, "y": y}, ...]}
//   packing:  {"summary": {...}, "maps": [map, ...]}
//   scenario: see scenario_from_json.
// Readers throw ParseError on malformed JSON and ArgumentError on values that
// violate a type invariant.

#pragma once

#include <string>
#include <string_view>

#include "otreg/harness.hpp"
#include "otreg/measure.hpp"
#include "otreg/monotone_map.hpp"
#include "otreg/regression.hpp"
#include "otreg/theory.hpp"

namespace otreg {

std::string measure_to_json(const DiscreteMeasure& m);
DiscreteMeasure measure_from_json(std::string_view text);

std::string map_to_json(const MonotoneMap& map);
MonotoneMap map_from_json(std::string_view text);

/// Pairs whose covariate and response are both Dirac use the {"x","y"} form.
std::string dataset_to_json(const RegressionDataset& data);
RegressionDataset dataset_from_json(std::string_view text);

std::string packing_to_json(const PackingFamily& family);

/// Keys: "domain" [a, b]; "design" {"kind": "dirac", "density": "uniform" |
/// "beta", "alpha", "beta"} or {"kind": "general", "atoms", "weights":
/// "uniform" | "dirichlet"}; "true_map" {"family": "identity" | "power" |
/// "piecewise_linear" | "staircase", "gamma", "knots", "steps"}; "noise"
/// {"family": "gaussian_shift" | "affine", "sigma", "a", "sigma_b"}; "N" (number
/// or list); "R"; "seed"; "risk_weighting" "empirical" | "uniform"; "clamp";
/// "workers". Unknown keys are rejected.
ScenarioConfig scenario_from_json(std::string_view text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

}  // namespace otreg
