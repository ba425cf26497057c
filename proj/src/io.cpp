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

#include "povmwalk/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace povmwalk {

JsonValue JsonValue::null() { return JsonValue(); }

JsonValue JsonValue::boolean(bool v) {
  JsonValue j;
  j.kind_ = Kind::boolean;
  j.bool_ = v;
  return j;
}

JsonValue JsonValue::integer(int64_t v) {
  JsonValue j;
  j.kind_ = Kind::integer;
  j.int_ = v;
  return j;
}

JsonValue JsonValue::unsigned_integer(uint64_t v) {
  JsonValue j;
  j.kind_ = Kind::unsigned_integer;
  j.uint_ = v;
  return j;
}

JsonValue JsonValue::real(double v) {
  if (!std::isfinite(v)) return null();
  JsonValue j;
  j.kind_ = Kind::real;
  j.real_ = v;
  return j;
}

JsonValue JsonValue::string(std::string v) {
  JsonValue j;
  j.kind_ = Kind::string;
  j.string_ = std::move(v);
  return j;
}

JsonValue JsonValue::array() {
  JsonValue j;
  j.kind_ = Kind::array;
  return j;
}

JsonValue JsonValue::object() {
  JsonValue j;
  j.kind_ = Kind::object;
  return j;
}

JsonValue &JsonValue::push(JsonValue element) {
  if (kind_ != Kind::array) throw std::logic_error("json: push on non-array");
  elements_.push_back(std::move(element));
  return *this;
}

JsonValue &JsonValue::add(std::string key, JsonValue value) {
  if (kind_ != Kind::object) throw std::logic_error("json: add on non-object");
  members_.emplace_back(std::move(key), std::move(value));
  return *this;
}

namespace {

void emit_escaped(std::string &out, const std::string &s) {
  out.push_back('"');
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out.push_back(c);
        }
    }
  }
  out.push_back('"');
}

void indent(std::string &out, int depth) { out.append(static_cast<size_t>(depth) * 2, ' '); }

}  // namespace

std::string format_real(double v) {
  if (!std::isfinite(v)) throw std::domain_error("format_real: non-finite value");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void JsonValue::emit(std::string &out, bool pretty, int depth) const {
  switch (kind_) {
    case Kind::null_value: out += "null"; return;
    case Kind::boolean: out += bool_ ? "true" : "false"; return;
    case Kind::integer: out += std::to_string(int_); return;
    case Kind::unsigned_integer: out += std::to_string(uint_); return;
    case Kind::real: out += format_real(real_); return;
    case Kind::string: emit_escaped(out, string_); return;
    case Kind::array: {
      if (elements_.empty()) {
        out += "[]";
        return;
      }
      out.push_back('[');
      for (size_t i = 0; i < elements_.size(); ++i) {
        if (i > 0) out.push_back(',');
        if (pretty) {
          out.push_back('\n');
          indent(out, depth + 1);
        }
        elements_[i].emit(out, pretty, depth + 1);
      }
      if (pretty) {
        out.push_back('\n');
        indent(out, depth);
      }
      out.push_back(']');
      return;
    }
    case Kind::object: {
      if (members_.empty()) {
        out += "{}";
        return;
      }
      out.push_back('{');
      for (size_t i = 0; i < members_.size(); ++i) {
        if (i > 0) out.push_back(',');
        if (pretty) {
          out.push_back('\n');
          indent(out, depth + 1);
        }
        emit_escaped(out, members_[i].first);
        out.push_back(':');
        if (pretty) out.push_back(' ');
        members_[i].second.emit(out, pretty, depth + 1);
      }
      if (pretty) {
        out.push_back('\n');
        indent(out, depth);
      }
      out.push_back('}');
      return;
    }
  }
}

std::string JsonValue::serialize(bool pretty) const {
  std::string out;
  emit(out, pretty, 0);
  if (pretty) out.push_back('\n');
  return out;
}

ExportFormat parse_format(const std::string &name) {
  if (name == "csv") return ExportFormat::csv;
  if (name == "json") return ExportFormat::json;
  throw std::domain_error("unknown format: " + name);
}

ExportFormat infer_format(const std::string &path, ExportFormat fallback) {
  const size_t dot = path.find_last_of('.');
  if (dot == std::string::npos) return fallback;
  const std::string ext = path.substr(dot + 1);
  if (ext == "csv") return ExportFormat::csv;
  if (ext == "json") return ExportFormat::json;
  return fallback;
}

void write_text_file(const std::string &path, const std::string &content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw std::runtime_error("read failed: " + path);
  return std::move(buffer).str();
}

JsonValue json_document(JsonValue config, JsonValue data) {
  JsonValue doc = JsonValue::object();
  doc.add("schema_version", JsonValue::integer(1));
  doc.add("config", std::move(config));
  doc.add("data", std::move(data));
  return doc;
}

namespace {

// CSV cell for a real value; NaN renders as an empty cell.
std::string csv_real(double v) { return std::isfinite(v) ? format_real(v) : std::string(); }

JsonValue uint_array(const std::vector<uint64_t> &values) {
  JsonValue arr = JsonValue::array();
  for (const uint64_t v : values) arr.push(JsonValue::unsigned_integer(v));
  return arr;
}

JsonValue real_array(const std::vector<double> &values) {
  JsonValue arr = JsonValue::array();
  for (const double v : values) arr.push(JsonValue::real(v));
  return arr;
}

}  // namespace

std::string records_csv(const std::vector<OriginRecord> &records) {
  std::string out = "k,n_plus,n_minus\n";
  for (const OriginRecord &r : records) {
    out += std::to_string(r.k);
    out.push_back(',');
    out += std::to_string(r.n_plus);
    out.push_back(',');
    out += std::to_string(r.n_minus);
    out.push_back('\n');
  }
  return out;
}

JsonValue records_json(const std::vector<OriginRecord> &records) {
  JsonValue arr = JsonValue::array();
  for (const OriginRecord &r : records) {
    JsonValue row = JsonValue::object();
    row.add("k", JsonValue::integer(r.k));
    row.add("n_plus", JsonValue::integer(r.n_plus));
    row.add("n_minus", JsonValue::integer(r.n_minus));
    arr.push(std::move(row));
  }
  return arr;
}

JsonValue campaign_json(const CampaignResult &result) {
  JsonValue data = JsonValue::object();
  data.add("copies", JsonValue::unsigned_integer(result.copies));
  data.add("retained", JsonValue::unsigned_integer(result.retained));
  data.add("acceptance_rate", JsonValue::real(result.acceptance_rate()));
  data.add("return_histogram", uint_array(result.return_histogram));
  data.add("records", records_json(result.records));
  return data;
}

std::string walk_table_csv(const WalkTable &table) {
  // All-walks view; rows with zero count are omitted.
  std::string out = "T,k,l,count\n";
  for (int k = 1; k <= table.max_returns(); ++k) {
    for (int l = 0; l <= k; ++l) {
      const uint64_t c = table.count(k, l);
      if (c == 0) continue;
      out += std::to_string(table.steps);
      out.push_back(',');
      out += std::to_string(k);
      out.push_back(',');
      out += std::to_string(l);
      out.push_back(',');
      out += std::to_string(c);
      out.push_back('\n');
    }
  }
  return out;
}

JsonValue walk_table_json(const WalkTable &table) {
  JsonValue data = JsonValue::object();
  data.add("steps", JsonValue::integer(table.steps));
  data.add("no_return_count", JsonValue::unsigned_integer(table.no_return_count));
  JsonValue all = JsonValue::array();
  JsonValue ending = JsonValue::array();
  for (int k = 1; k <= table.max_returns(); ++k) {
    JsonValue row_all = JsonValue::array();
    JsonValue row_end = JsonValue::array();
    for (int l = 0; l <= k; ++l) {
      row_all.push(JsonValue::unsigned_integer(table.count(k, l)));
      row_end.push(JsonValue::unsigned_integer(table.count_ending(k, l)));
    }
    all.push(std::move(row_all));
    ending.push(std::move(row_end));
  }
  data.add("counts", std::move(all));
  data.add("counts_ending_at_origin", std::move(ending));
  return data;
}

std::string departure_pmf_csv(const DeparturePMF &pmf) {
  std::string out = "l,probability\n";
  for (size_t l = 0; l < pmf.probabilities.size(); ++l) {
    out += std::to_string(l);
    out.push_back(',');
    out += format_real(pmf.probabilities[l]);
    out.push_back('\n');
  }
  return out;
}

JsonValue departure_pmf_json(const DeparturePMF &pmf) {
  JsonValue data = JsonValue::object();
  data.add("k", JsonValue::integer(pmf.k));
  data.add("probabilities", real_array(pmf.probabilities));
  return data;
}

std::string histogram_csv(const Histogram &histogram) {
  std::string out = "bin_left,bin_right,count\n";
  for (size_t i = 0; i < histogram.counts.size(); ++i) {
    out += format_real(histogram.edges[i]);
    out.push_back(',');
    out += format_real(histogram.edges[i + 1]);
    out.push_back(',');
    out += std::to_string(histogram.counts[i]);
    out.push_back('\n');
  }
  return out;
}

JsonValue histogram_json(const Histogram &histogram) {
  JsonValue data = JsonValue::object();
  data.add("edges", real_array(histogram.edges));
  data.add("counts", uint_array(histogram.counts));
  data.add("below", JsonValue::unsigned_integer(histogram.below));
  data.add("above", JsonValue::unsigned_integer(histogram.above));
  data.add("total", JsonValue::unsigned_integer(histogram.total));
  return data;
}

std::string lattice_pmf_csv(const LatticePMF &pmf) {
  std::string out = "n,n_over_N,count,probability\n";
  for (size_t i = 0; i < pmf.counts.size(); ++i) {
    out += std::to_string(pmf.n_values[i]);
    out.push_back(',');
    out += format_real(pmf.n_over_N[i]);
    out.push_back(',');
    out += std::to_string(pmf.counts[i]);
    out.push_back(',');
    out += format_real(pmf.probabilities[i]);
    out.push_back('\n');
  }
  return out;
}

JsonValue lattice_pmf_json(const LatticePMF &pmf) {
  JsonValue data = JsonValue::object();
  data.add("n_total", JsonValue::integer(pmf.n_total));
  JsonValue n_values = JsonValue::array();
  for (const int32_t n : pmf.n_values) n_values.push(JsonValue::integer(n));
  data.add("n_values", std::move(n_values));
  data.add("n_over_N", real_array(pmf.n_over_N));
  data.add("counts", uint_array(pmf.counts));
  data.add("probabilities", real_array(pmf.probabilities));
  return data;
}

std::string zero_crossing_csv(const ZeroCrossingSummary &summary) {
  std::string out = "k,count,probability,ratio_to_next\n";
  for (size_t k = 0; k < summary.counts.size(); ++k) {
    out += std::to_string(k);
    out.push_back(',');
    out += std::to_string(summary.counts[k]);
    out.push_back(',');
    out += format_real(summary.probabilities[k]);
    out.push_back(',');
    out += k < summary.ratios.size() ? csv_real(summary.ratios[k]) : std::string();
    out.push_back('\n');
  }
  return out;
}

JsonValue zero_crossing_json(const ZeroCrossingSummary &summary) {
  JsonValue data = JsonValue::object();
  data.add("total", JsonValue::unsigned_integer(summary.total));
  data.add("counts", uint_array(summary.counts));
  data.add("probabilities", real_array(summary.probabilities));
  data.add("ratios", real_array(summary.ratios));  // NaN entries serialize as null
  return data;
}

EnsembleSpec parse_ensemble_file(const std::string &path) {
  const std::string text = read_text_file(path);
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw std::runtime_error("ensemble file " + path + ": " + e.what());
  }
  if (!parsed.is_array() || parsed.empty()) {
    throw std::runtime_error("ensemble file " + path + ": expected a non-empty array");
  }
  std::vector<EnsembleSpec::Member> members;
  members.reserve(parsed.size());
  for (const auto &entry : parsed) {
    if (!entry.is_object() || !entry.contains("state") || !entry.contains("weight")) {
      throw std::runtime_error("ensemble file " + path +
                               ": each entry needs \"state\" and \"weight\"");
    }
    const auto &state = entry["state"];
    if (!state.is_array() || state.size() != 4) {
      throw std::runtime_error("ensemble file " + path +
                               ": \"state\" must be [re0, im0, re1, im1]");
    }
    for (const auto &component : state) {
      if (!component.is_number()) {
        throw std::runtime_error("ensemble file " + path + ": state components must be numbers");
      }
    }
    if (!entry["weight"].is_number()) {
      throw std::runtime_error("ensemble file " + path + ": \"weight\" must be a number");
    }
    EnsembleSpec::Member member;
    member.state = PureState{{state[0].get<double>(), state[1].get<double>()},
                             {state[2].get<double>(), state[3].get<double>()}};
    member.weight = entry["weight"].get<double>();
    members.push_back(member);
  }
  try {
    return EnsembleSpec::custom(std::move(members));
  } catch (const std::domain_error &e) {
    throw std::runtime_error("ensemble file " + path + ": " + e.what());
  }
}

}  // namespace povmwalk
