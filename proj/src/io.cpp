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

#include "otreg/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "otreg/error.hpp"

namespace otreg {

using nlohmann::json;

namespace {

json parse(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

// Converts nlohmann type errors into ParseError so callers see one error kind
// for malformed documents.
template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

json measure_json(const DiscreteMeasure& m) {
  return {{"atoms", std::vector<double>(m.atoms().begin(), m.atoms().end())},
          {"weights", std::vector<double>(m.weights().begin(), m.weights().end())}};
}

DiscreteMeasure measure_of(const json& j) {
  if (!j.is_object() || !j.contains("atoms") || !j.contains("weights")) {
    throw ParseError("measure: expected object with \"atoms\" and \"weights\"");
  }
  return DiscreteMeasure(j.at("atoms").get<std::vector<double>>(), j.at("weights").get<std::vector<double>>());
}

Interval interval_of(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("expected [lo, hi]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json map_json(const MonotoneMap& map) {
  json knots = json::array();
  for (const auto& k : map.knots()) knots.push_back({k.x, k.t});
  return {{"domain", {map.domain().lo, map.domain().hi}},
          {"mode", map.mode() == MapMode::Step ? "step" : "linear"},
          {"knots", std::move(knots)}};
}

std::vector<Knot> knots_of(const json& j) {
  if (!j.is_array()) throw ParseError("knots: expected array of [x, t]");
  std::vector<Knot> knots;
  for (const auto& k : j) {
    if (!k.is_array() || k.size() != 2) throw ParseError("knots: expected [x, t]");
    knots.push_back({k[0].get<double>(), k[1].get<double>()});
  }
  return knots;
}

MonotoneMap map_of(const json& j) {
  const std::string mode = j.at("mode").get<std::string>();
  if (mode != "step" && mode != "linear") throw ParseError("map: mode must be \"step\" or \"linear\"");
  return MonotoneMap(interval_of(j.at("domain")), knots_of(j.at("knots")),
                     mode == "step" ? MapMode::Step : MapMode::Linear);
}

void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const char* where) {
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, _] : j.items()) {
    if (!ok.count(key)) throw ParseError(std::string(where) + ": unknown key \"" + key + "\"");
  }
}

}  // namespace

std::string measure_to_json(const DiscreteMeasure& m) { return measure_json(m).dump(); }

DiscreteMeasure measure_from_json(std::string_view text) {
  const json j = parse(text);
  return guarded("measure", [&] { return measure_of(j); });
}

std::string map_to_json(const MonotoneMap& map) { return map_json(map).dump(); }

MonotoneMap map_from_json(std::string_view text) {
  const json j = parse(text);
  return guarded("map", [&] { return map_of(j); });
}

std::string dataset_to_json(const RegressionDataset& data) {
  json pairs = json::array();
  for (const auto& p : data.pairs()) {
    if (p.covariate.size() == 1 && p.response.size() == 1) {
      pairs.push_back({{"x", p.covariate.atoms()[0]}, {"y", p.response.atoms()[0]}});
    } else {
      pairs.push_back({{"mu", measure_json(p.covariate)}, {"nu", measure_json(p.response)}});
    }
  }
  return json{{"domain", {data.domain().lo, data.domain().hi}}, {"pairs", std::move(pairs)}}.dump();
}

RegressionDataset dataset_from_json(std::string_view text) {
  const json j = parse(text);
  return guarded("dataset", [&] {
    std::vector<MeasurePair> pairs;
    for (const auto& p : j.at("pairs")) {
      if (p.contains("x")) {
        pairs.push_back({DiscreteMeasure::dirac(p.at("x").get<double>()),
                         DiscreteMeasure::dirac(p.at("y").get<double>())});
      } else {
        pairs.push_back({measure_of(p.at("mu")), measure_of(p.at("nu"))});
      }
    }
    return RegressionDataset(interval_of(j.at("domain")), std::move(pairs));
  });
}

std::string packing_to_json(const PackingFamily& family) {
  json maps = json::array();
  for (const auto& m : family.maps) maps.push_back(map_json(m));
  json summary = {{"k", family.bins},
                  {"h", family.height},
                  {"members", family.maps.size()},
                  {"min_hamming", family.min_hamming},
                  {"min_hamming_required", family.min_hamming_required},
                  {"min_pairwise_dist", family.min_pairwise_dist},
                  {"log_cardinality", family.log_cardinality},
                  {"seed", family.seed}};
  return json{{"summary", std::move(summary)}, {"maps", std::move(maps)}}.dump();
}

ScenarioConfig scenario_from_json(std::string_view text) {
  const json j = parse(text);
  return guarded("scenario", [&] {
    if (!j.is_object()) throw ParseError("scenario: expected an object");
    reject_unknown(j, {"domain", "design", "true_map", "noise", "N", "R", "seed", "risk_weighting", "clamp", "workers"},
                   "scenario");
    ScenarioConfig cfg;
    if (j.contains("domain")) cfg.domain = interval_of(j["domain"]);

    if (j.contains("design")) {
      const json& d = j["design"];
      reject_unknown(d, {"kind", "density", "alpha", "beta", "atoms", "weights"}, "design");
      const std::string kind = d.value("kind", "dirac");
      if (kind == "dirac") {
        cfg.design.kind = DesignKind::Dirac;
        const std::string density = d.value("density", "uniform");
        if (density == "uniform") {
          cfg.design.density = DesignDensity::Uniform;
        } else if (density == "beta") {
          cfg.design.density = DesignDensity::Beta;
        } else {
          throw ParseError("design: unknown density \"" + density + "\"");
        }
        cfg.design.alpha = d.value("alpha", 1.0);
        cfg.design.beta = d.value("beta", 1.0);
      } else if (kind == "general") {
        cfg.design.kind = DesignKind::General;
        cfg.design.atoms = d.value("atoms", std::size_t{5});
        const std::string weights = d.value("weights", "uniform");
        if (weights == "uniform") {
          cfg.design.weights = AtomWeights::Uniform;
        } else if (weights == "dirichlet") {
          cfg.design.weights = AtomWeights::Dirichlet;
        } else {
          throw ParseError("design: unknown weight scheme \"" + weights + "\"");
        }
      } else {
        throw ParseError("design: unknown kind \"" + kind + "\"");
      }
    }

    if (j.contains("true_map")) {
      const json& t = j["true_map"];
      reject_unknown(t, {"family", "gamma", "knots", "steps"}, "true_map");
      const std::string family = t.value("family", "identity");
      if (family == "identity") {
        cfg.true_map.family = TrueMapFamily::Identity;
      } else if (family == "power") {
        cfg.true_map.family = TrueMapFamily::Power;
        cfg.true_map.gamma = t.at("gamma").get<double>();
      } else if (family == "piecewise_linear") {
        cfg.true_map.family = TrueMapFamily::PiecewiseLinear;
        cfg.true_map.knots = knots_of(t.at("knots"));
      } else if (family == "staircase") {
        cfg.true_map.family = TrueMapFamily::Staircase;
        cfg.true_map.steps = t.at("steps").get<int>();
      } else {
        throw ParseError("true_map: unknown family \"" + family + "\"");
      }
    }

    if (j.contains("noise")) {
      const json& n = j["noise"];
      reject_unknown(n, {"family", "sigma", "a", "sigma_b"}, "noise");
      const std::string family = n.value("family", "gaussian_shift");
      if (family == "gaussian_shift") {
        cfg.noise.family = NoiseFamily::GaussianShift;
        cfg.noise.sigma = n.value("sigma", 0.0);
      } else if (family == "affine") {
        cfg.noise.family = NoiseFamily::Affine;
        cfg.noise.slope_halfwidth = n.value("a", 0.0);
        cfg.noise.sigma_b = n.value("sigma_b", 0.0);
      } else {
        throw ParseError("noise: unknown family \"" + family + "\"");
      }
    }

    if (j.contains("N")) {
      const json& n = j["N"];
      cfg.sample_sizes = n.is_array() ? n.get<std::vector<std::size_t>>()
                                      : std::vector<std::size_t>{n.get<std::size_t>()};
    }
    if (j.contains("R")) cfg.replicates = j["R"].get<std::size_t>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("risk_weighting")) {
      const std::string w = j["risk_weighting"].get<std::string>();
      if (w == "empirical") {
        cfg.risk_weighting = RiskWeighting::Empirical;
      } else if (w == "uniform") {
        cfg.risk_weighting = RiskWeighting::Uniform;
      } else {
        throw ParseError("risk_weighting: expected \"empirical\" or \"uniform\"");
      }
    }
    if (j.contains("clamp")) cfg.clamp = j["clamp"].get<bool>();
    if (j.contains("workers")) cfg.workers = j["workers"].get<std::size_t>();
    cfg.validate();
    return cfg;
  });
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace otreg
