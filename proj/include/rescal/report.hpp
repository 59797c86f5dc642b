// Copyright 2026 The rescal Authors
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

// JSON views of the report types. Keys are emitted in declaration order so
// output is byte-stable.

#ifndef RESCAL_REPORT_HPP_
#define RESCAL_REPORT_HPP_

#include <string>

#include <nlohmann/json.hpp>

#include "rescal/activation.hpp"
#include "rescal/error.hpp"
#include "rescal/frechet.hpp"
#include "rescal/io.hpp"
#include "rescal/scale_stats.hpp"

namespace rescal {

using Json = nlohmann::ordered_json;

inline Json to_json(const MonteCarloSummary& s) {
  return Json{{"n", s.n}, {"mean", s.mean}, {"sd", s.sd}, {"std_error", s.std_error}, {"min", s.min}, {"max", s.max}};
}

inline Json to_json(const ApparentSizeReport& r) {
  Json j{{"f_expected_sigma", r.f_expected_sigma},
         {"test_image_to_train", r.test_image_to_train},
         {"expected_ratio", r.expected_ratio},
         {"ratio_range", Json::array({r.ratio_min, r.ratio_max})},
         {"alpha_correction", r.alpha_correction},
         {"camera_k", r.camera_k}};
  if (r.mc) j["mc"] = to_json(*r.mc);
  return j;
}

inline Json to_json(const ResolutionRecommendation& r) {
  return Json{{"k_train", r.k_train},
              {"k_test", r.k_test},
              {"k_test_image", r.k_test_image},
              {"raw_k_test", r.raw_k_test},
              {"snap_multiple", r.snap_multiple},
              {"snap_mode", std::string(to_string(r.snap_mode))},
              {"image_to_crop_ratio", r.image_to_crop_ratio},
              {"expected_ratio", r.expected_ratio},
              {"alpha_correction", r.alpha_correction}};
}

inline Json to_json(const TrainResolutionRecommendation& r) {
  return Json{{"k_test", r.k_test},
              {"k_train", r.k_train},
              {"raw_k_train", r.raw_k_train},
              {"snap_multiple", r.snap_multiple},
              {"snap_mode", std::string(to_string(r.snap_mode))},
              {"expected_ratio", r.expected_ratio},
              {"extrapolated", r.extrapolated}};
}

inline Json to_json(const PoolGrid& g) { return Json{{"side", g.side}, {"n", g.n}, {"exact", g.exact}}; }

inline Json to_json(const SparsityStats& s) {
  return Json{{"zero_rate", s.zero_rate}, {"tail_fraction", s.tail_fraction}, {"tail_threshold", s.tail_threshold}};
}

inline Json to_json(const FrechetParams& p) { return Json{{"mu", p.mu}, {"sigma", p.sigma}, {"xi", p.xi}}; }

inline Json to_json(const FitReport& r) {
  return Json{{"params", to_json(r.params)}, {"residual", r.residual},          {"ks_distance", r.ks_distance},
              {"n_used", r.n_used},          {"n_excluded_zeros", r.n_excluded_zeros}, {"iterations", r.iterations},
              {"converged", r.converged}};
}

inline Json to_json(const EqualizationMap& m) {
  return Json{{"a", m.a}, {"b", m.b}, {"preserve_zeros", m.preserve_zeros}};
}

inline Json to_json(const ChannelAffineSet& s) {
  Json ch = Json::array();
  for (const auto& c : s.channels) ch.push_back(Json{{"a", c.a}, {"b", c.b}});
  return Json{{"n_channels", s.size()}, {"channels", ch}, {"degenerate_channels", s.degenerate}};
}

/// Accepts either a bare FrechetParams object or a FitReport (with "params").
inline FrechetParams frechet_params_from_json(const Json& j) {
  try {
    const Json& p = j.contains("params") ? j.at("params") : j;
    FrechetParams out{p.at("mu").get<double>(), p.at("sigma").get<double>(), p.at("xi").get<double>()};
    validate(out);
    return out;
  } catch (const Json::exception& e) {
    throw FormatError(std::string("frechet params JSON: ") + e.what());
  }
}

inline EqualizationMap equalization_map_from_json(const Json& j) {
  try {
    EqualizationMap m;
    m.a = j.at("a").get<double>();
    m.b = j.at("b").get<double>();
    if (j.contains("preserve_zeros")) m.preserve_zeros = j.at("preserve_zeros").get<bool>();
    return m;
  } catch (const Json::exception& e) {
    throw FormatError(std::string("equalization map JSON: ") + e.what());
  }
}

inline Json parse_json(const std::string& text, const std::string& source = "<memory>") {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw FormatError(source + ": " + e.what());
  }
}

inline Json read_json(const std::string& path) { return parse_json(read_text(path), path); }

/// Pretty-printed with a trailing newline.
inline std::string format_json(const Json& j) { return j.dump(2) + "\n"; }

inline void write_json_report(const Json& j, const std::string& path) { write_text(format_json(j), path); }

}  // namespace rescal

#endif  // RESCAL_REPORT_HPP_
