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

#include "otreg/theory.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "otreg/error.hpp"

namespace otreg {

double kl_conditional(const MonotoneMap& t1, const MonotoneMap& t2, double sigma,
                      const WeightingMeasure& p) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw ArgumentError("kl_conditional: sigma must be positive");
  return l2_distance_sq(t1, t2, p) / (2.0 * sigma * sigma);
}

namespace {

using Bits = std::vector<std::uint64_t>;

int hamming(const Bits& a, const Bits& b) {
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::popcount(a[i] ^ b[i]);
  return d;
}

MonotoneMap staircase_member(int bins, double height, const std::vector<std::uint8_t>& code) {
  std::vector<Knot> knots;
  knots.reserve(bins);
  const double k = static_cast<double>(bins);
  for (int j = 0; j < bins; ++j) {
    const double base = j / k;
    knots.push_back({base, base + (code[j] ? height : 0.0)});
  }
  return MonotoneMap({0.0, 1.0}, std::move(knots), MapMode::Step);
}

}  // namespace

PackingFamily packing_family(int bins, double height, const PackingOptions& options) {
  if (bins < 1) throw ArgumentError("packing: bin count must be positive");
  if (!(height > 0.0) || height > 1.0 / bins) {
    throw ArgumentError("packing: step height must lie in (0, 1/k] for monotone members");
  }
  if (!(options.target_hamming_frac > 0.0 && options.target_hamming_frac <= 0.5)) {
    throw ArgumentError("packing: target Hamming fraction must lie in (0, 1/2]");
  }
  if (options.max_members < 2) throw ArgumentError("packing: max_members must be at least 2");

  const int required = static_cast<int>(std::ceil(options.target_hamming_frac * bins));
  const std::size_t words = (static_cast<std::size_t>(bins) + 63) / 64;

  std::mt19937_64 rng(options.seed);
  std::bernoulli_distribution coin(0.5);

  std::vector<Bits> accepted{Bits(words, 0)};
  std::vector<std::vector<std::uint8_t>> codes{std::vector<std::uint8_t>(bins, 0)};
  std::size_t rejections = 0, attempts = 0;
  while (accepted.size() < options.max_members && rejections < options.max_consecutive_rejections) {
    ++attempts;
    Bits cand(words, 0);
    std::vector<std::uint8_t> code(bins);
    for (int j = 0; j < bins; ++j) {
      code[j] = coin(rng) ? 1 : 0;
      if (code[j]) cand[j / 64] |= std::uint64_t{1} << (j % 64);
    }
    bool ok = true;
    for (const auto& a : accepted) {
      if (hamming(a, cand) < required) {
        ok = false;
        break;
      }
    }
    if (!ok) {
      ++rejections;
      continue;
    }
    rejections = 0;
    accepted.push_back(std::move(cand));
    codes.push_back(std::move(code));
  }
  if (accepted.size() < 2) {
    std::ostringstream msg;
    msg << "packing: selected " << accepted.size() << " member(s) after " << attempts
        << " candidates (k=" << bins << ", min Hamming " << required << ", seed " << options.seed << ")";
    throw ConstructionError(msg.str());
  }

  PackingFamily fam;
  fam.bins = bins;
  fam.height = height;
  fam.min_hamming_required = required;
  fam.seed = options.seed;
  fam.maps.reserve(codes.size());
  for (const auto& c : codes) fam.maps.push_back(staircase_member(bins, height, c));

  const auto unif = WeightingMeasure::uniform({0.0, 1.0});
  double min_sq = std::numeric_limits<double>::infinity();
  int min_ham = bins;
  for (std::size_t a = 0; a < fam.maps.size(); ++a) {
    for (std::size_t b = a + 1; b < fam.maps.size(); ++b) {
      min_sq = std::min(min_sq, l2_distance_sq(fam.maps[a], fam.maps[b], unif));
      min_ham = std::min(min_ham, hamming(accepted[a], accepted[b]));
    }
  }
  fam.codewords = std::move(codes);
  fam.min_hamming = min_ham;
  fam.min_pairwise_dist = std::sqrt(min_sq);
  fam.log_cardinality = std::log(static_cast<double>(fam.maps.size()));
  return fam;
}

double fano_bound(const FanoInputs& in) {
  for (double v : {in.delta, in.epsilon, in.bracketing_constant, in.packing_constant, in.kl_multiplier}) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ArgumentError("fano_bound: inputs must be positive and finite");
  }
  const double mutual_info = in.bracketing_constant / in.epsilon + in.kl_multiplier * in.epsilon * in.epsilon;
  const double log_packing = in.packing_constant / in.delta;
  return 0.5 * in.delta * (1.0 - (mutual_info + std::numbers::ln2) / log_packing);
}

}  // namespace otreg
