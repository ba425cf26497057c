// Copyright 2026 The povmwalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POVMWALK_IO_HPP
#define POVMWALK_IO_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "povmwalk/stats.hpp"
#include "povmwalk/trajectory.hpp"
#include "povmwalk/walk_oracle.hpp"

namespace povmwalk {

/// Order-preserving JSON document tree. Emission is deterministic: object
/// keys keep insertion order and reals are printed with 17 significant
/// digits, so identical values serialize to identical bytes.
class JsonValue {
 public:
  JsonValue() : kind_(Kind::null_value) {}

  static JsonValue null();
  static JsonValue boolean(bool v);
  static JsonValue integer(int64_t v);
  static JsonValue unsigned_integer(uint64_t v);
  static JsonValue real(double v);  // non-finite values serialize as null
  static JsonValue string(std::string v);
  static JsonValue array();
  static JsonValue object();

  JsonValue &push(JsonValue element);              // array append
  JsonValue &add(std::string key, JsonValue value);  // object append

  std::string serialize(bool pretty = false) const;

 private:
  enum class Kind { null_value, boolean, integer, unsigned_integer, real, string, array, object };

  void emit(std::string &out, bool pretty, int depth) const;

  Kind kind_;
  bool bool_ = false;
  int64_t int_ = 0;
  uint64_t uint_ = 0;
  double real_ = 0.0;
  std::string string_;
  std::vector<JsonValue> elements_;
  std::vector<std::pair<std::string, JsonValue>> members_;
};

/// 17-significant-digit shortest-general rendering; input must be finite.
std::string format_real(double v);

enum class ExportFormat { csv, json };

/// "csv"/"json"; anything else throws std::domain_error.
ExportFormat parse_format(const std::string &name);
/// Format from a path's extension; fallback when the extension is neither.
ExportFormat infer_format(const std::string &path, ExportFormat fallback = ExportFormat::json);

/// Throws std::runtime_error naming the path on any failure.
void write_text_file(const std::string &path, const std::string &content);
std::string read_text_file(const std::string &path);

/// {"schema_version": 1, "config": ..., "data": ...}
JsonValue json_document(JsonValue config, JsonValue data);

// Tabular renderings. CSV column schemas are fixed and documented in the
// README; JSON builders return the "data" payload for json_document.
std::string records_csv(const std::vector<OriginRecord> &records);
JsonValue records_json(const std::vector<OriginRecord> &records);
JsonValue campaign_json(const CampaignResult &result);
std::string walk_table_csv(const WalkTable &table);
JsonValue walk_table_json(const WalkTable &table);
std::string departure_pmf_csv(const DeparturePMF &pmf);
JsonValue departure_pmf_json(const DeparturePMF &pmf);
std::string histogram_csv(const Histogram &histogram);
JsonValue histogram_json(const Histogram &histogram);
std::string lattice_pmf_csv(const LatticePMF &pmf);
JsonValue lattice_pmf_json(const LatticePMF &pmf);
std::string zero_crossing_csv(const ZeroCrossingSummary &summary);
JsonValue zero_crossing_json(const ZeroCrossingSummary &summary);

/// Parses a JSON array of {"state": [re0, im0, re1, im1], "weight": w}.
/// Throws std::runtime_error with path context on unreadable or malformed
/// input; member validation follows EnsembleSpec::custom.
EnsembleSpec parse_ensemble_file(const std::string &path);

}  // namespace povmwalk

#endif
