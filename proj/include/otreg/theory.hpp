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

#pragma once

#include <cstdint>
#include <vector>

#include "otreg/monotone_map.hpp"

namespace otreg {

/// KL divergence between the response laws Y | X=x ~ N(T1(x), sigma^2) and
/// N(T2(x), sigma^2), integrated over the design p. Equals
/// l2_distance_sq(T1, T2, p) / (2 sigma^2).
double kl_conditional(const MonotoneMap& t1, const MonotoneMap& t2, double sigma,
                      const WeightingMeasure& p);

struct PackingOptions {
  /// Minimum pairwise Hamming distance as a fraction of the bin count.
  double target_hamming_frac = 0.25;
  std::uint64_t seed = 0;
  /// Selection stops once this many members are accepted...
  std::size_t max_members = 1024;
  /// ...or after this many consecutive rejected candidates.
  std::size_t max_consecutive_rejections = 4096;
};

/// Staircase maps on [0, 1]: bin j = [(j-1)/k, j/k) has value (j-1)/k + h w_j
/// for a binary codeword w. Distinct codewords at Hamming distance H are
/// h * sqrt(H / k) apart in L2(Unif[0,1]).
struct PackingFamily {
  std::vector<MonotoneMap> maps;
  std::vector<std::vector<std::uint8_t>> codewords;
  int bins = 0;
  double height = 0.0;
  int min_hamming_required = 0;
  int min_hamming = 0;
  /// Exact minimum over pairs of the L2(Unif[0,1]) distance.
  double min_pairwise_dist = 0.0;
  /// Natural log of the family size.
  double log_cardinality = 0.0;
  std::uint64_t seed = 0;
};

/// Greedy randomized code selection: random codewords are accepted when they
/// keep every pairwise Hamming distance at or above
/// ceil(target_hamming_frac * k). The all-zero codeword is always the first
/// member. Throws ArgumentError for h > 1/k or invalid options, and
/// ConstructionError if fewer than two members could be selected.
PackingFamily packing_family(int bins, double height, const PackingOptions& options = {});

struct FanoInputs {
  double delta = 0.0;    // separation scale
  double epsilon = 0.0;  // covering scale
  /// K in the bracketing entropy bound log N <= K / epsilon.
  double bracketing_constant = 1.0;
  /// c in the packing entropy log M = c / delta.
  double packing_constant = 1.0;
  /// Scales the epsilon^2 KL term; N models N i.i.d. observations.
  double kl_multiplier = 1.0;
};

/// (delta/2) * (1 - (K/eps + m*eps^2 + log 2) / (c/delta)), natural logs.
/// Negative (vacuous) values are returned as is.
double fano_bound(const FanoInputs& in);

}  // namespace otreg
