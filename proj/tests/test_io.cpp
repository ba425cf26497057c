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

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "povmwalk/io.hpp"
#include "povmwalk/walk_oracle.hpp"

using namespace povmwalk;

namespace {

std::string temp_dir() {
  std::string pattern = "/tmp/povmwalk_io_XXXXXX";
  if (mkdtemp(pattern.data()) == nullptr) throw std::runtime_error("mkdtemp failed");
  return pattern;
}

}  // namespace

TEST_CASE("real formatting") {
  CHECK(format_real(0.375) == "0.375");
  CHECK(format_real(1.0) == "1");
  CHECK(format_real(0.0) == "0");
  CHECK(format_real(-2.5) == "-2.5");
  CHECK(format_real(1.0 / 3.0) == "0.33333333333333331");
  CHECK_THROWS_AS(format_real(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
  CHECK_THROWS_AS(format_real(std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST_CASE("json values serialize deterministically") {
  SUBCASE("scalars") {
    CHECK(JsonValue::null().serialize() == "null");
    CHECK(JsonValue::boolean(true).serialize() == "true");
    CHECK(JsonValue::integer(-7).serialize() == "-7");
    CHECK(JsonValue::unsigned_integer(18446744073709551615ULL).serialize() ==
          "18446744073709551615");
    CHECK(JsonValue::real(0.5).serialize() == "0.5");
    CHECK(JsonValue::real(std::numeric_limits<double>::quiet_NaN()).serialize() == "null");
  }
  SUBCASE("object member order is insertion order") {
    JsonValue obj = JsonValue::object();
    obj.add("b", JsonValue::integer(1));
    obj.add("a", JsonValue::integer(2));
    CHECK(obj.serialize() == "{\"b\":1,\"a\":2}");
  }
  SUBCASE("string escaping") {
    CHECK(JsonValue::string("a\"b\\c\nd\te").serialize() == "\"a\\\"b\\\\c\\nd\\te\"");
    CHECK(JsonValue::string(std::string(1, '\x01')).serialize() == "\"\\u0001\"");
  }
  SUBCASE("pretty form is indented and newline terminated") {
    JsonValue obj = JsonValue::object();
    obj.add("xs", JsonValue::array().push(JsonValue::integer(1)).push(JsonValue::integer(2)));
    CHECK(obj.serialize(true) == "{\n  \"xs\": [\n    1,\n    2\n  ]\n}\n");
  }
  SUBCASE("kind misuse throws") {
    JsonValue arr = JsonValue::array();
    CHECK_THROWS_AS(arr.add("k", JsonValue::null()), std::logic_error);
    JsonValue obj = JsonValue::object();
    CHECK_THROWS_AS(obj.push(JsonValue::null()), std::logic_error);
  }
  SUBCASE("document skeleton") {
    CHECK(json_document(JsonValue::object(), JsonValue::array()).serialize() ==
          "{\"schema_version\":1,\"config\":{},\"data\":[]}");
  }
}

TEST_CASE("serialized reals survive a parse round trip") {
  const std::vector<double> values{0.1, 1.0 / 3.0, std::pow(2.0, -53), 6.02e23,
                                   1e-300, -0.0, 12345.678901234567};
  JsonValue arr = JsonValue::array();
  for (const double v : values) arr.push(JsonValue::real(v));
  const nlohmann::json parsed = nlohmann::json::parse(arr.serialize());
  REQUIRE(parsed.size() == values.size());
  for (size_t i = 0; i < values.size(); ++i) {
    CHECK(parsed[i].get<double>() == values[i]);
  }
}

TEST_CASE("format names") {
  CHECK(parse_format("csv") == ExportFormat::csv);
  CHECK(parse_format("json") == ExportFormat::json);
  CHECK_THROWS_AS(parse_format("xml"), std::domain_error);
  CHECK(infer_format("out.csv") == ExportFormat::csv);
  CHECK(infer_format("out.json") == ExportFormat::json);
  CHECK(infer_format("out.txt") == ExportFormat::json);
  CHECK(infer_format("plain") == ExportFormat::json);
  CHECK(infer_format("plain", ExportFormat::csv) == ExportFormat::csv);
}

TEST_CASE("text file round trip and failure messages") {
  const std::string dir = temp_dir();
  const std::string path = dir + "/sample.txt";
  write_text_file(path, "line\n");
  CHECK(read_text_file(path) == "line\n");
  CHECK_THROWS_WITH_AS(write_text_file(dir + "/missing/file.txt", "x"),
                       ("cannot open for writing: " + dir + "/missing/file.txt").c_str(),
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(read_text_file(dir + "/absent.txt"),
                       ("cannot open for reading: " + dir + "/absent.txt").c_str(),
                       std::runtime_error);
}

TEST_CASE("record and campaign renderings") {
  const std::vector<OriginRecord> records{OriginRecord{2, 2, 0}, OriginRecord{1, 0, 1}};
  CHECK(records_csv(records) == "k,n_plus,n_minus\n2,2,0\n1,0,1\n");
  CHECK(records_csv({}) == "k,n_plus,n_minus\n");

  CampaignResult result;
  result.copies = 4;
  result.retained = 2;
  result.records = {OriginRecord{1, 1, 0}, OriginRecord{2, 0, 2}};
  result.return_histogram = {1, 2, 1};
  CHECK(campaign_json(result).serialize() ==
        "{\"copies\":4,\"retained\":2,\"acceptance_rate\":0.5,"
        "\"return_histogram\":[1,2,1],"
        "\"records\":[{\"k\":1,\"n_plus\":1,\"n_minus\":0},"
        "{\"k\":2,\"n_plus\":0,\"n_minus\":2}]}");
}

TEST_CASE("walk table renderings") {
  const WalkTable table = enumerate_all(4);
  CHECK(walk_table_csv(table) ==
        "T,k,l,count\n"
        "4,1,0,3\n"
        "4,1,1,3\n"
        "4,2,0,1\n"
        "4,2,1,2\n"
        "4,2,2,1\n");
  CHECK(walk_table_json(table).serialize() ==
        "{\"steps\":4,\"no_return_count\":6,"
        "\"counts\":[[3,3],[1,2,1]],"
        "\"counts_ending_at_origin\":[[1,1],[1,2,1]]}");
}

TEST_CASE("departure pmf renderings") {
  DeparturePMF pmf;
  pmf.k = 2;
  pmf.probabilities = {0.25, 0.5, 0.25};
  CHECK(departure_pmf_csv(pmf) == "l,probability\n0,0.25\n1,0.5\n2,0.25\n");
  CHECK(departure_pmf_json(pmf).serialize() == "{\"k\":2,\"probabilities\":[0.25,0.5,0.25]}");
}

TEST_CASE("histogram renderings") {
  const Histogram h = histogram({-1.0, 0.0, 1.0}, {-1.5, -0.5, 0.5, 1.5});
  CHECK(histogram_csv(h) ==
        "bin_left,bin_right,count\n-1.5,-0.5,1\n-0.5,0.5,1\n0.5,1.5,1\n");
  CHECK(histogram_json(h).serialize() ==
        "{\"edges\":[-1.5,-0.5,0.5,1.5],\"counts\":[1,1,1],"
        "\"below\":0,\"above\":0,\"total\":3}");
}

TEST_CASE("lattice pmf renderings") {
  const LatticePMF pmf = lattice_pmf({OriginRecord{2, 2, 0}, OriginRecord{2, 1, 1},
                                      OriginRecord{2, 1, 1}, OriginRecord{2, 0, 2}});
  CHECK(lattice_pmf_csv(pmf) ==
        "n,n_over_N,count,probability\n"
        "-2,-1,1,0.25\n"
        "0,0,2,0.5\n"
        "2,1,1,0.25\n");
}

TEST_CASE("zero-crossing renderings keep undefined ratios empty") {
  const ZeroCrossingSummary summary = zero_crossing_summary({0, 5, 10});
  CHECK(zero_crossing_csv(summary) ==
        "k,count,probability,ratio_to_next\n"
        "0,0,0,\n"
        "1,5,0.33333333333333331,2\n"
        "2,10,0.66666666666666663,\n");
  // NaN ratios serialize as null in the JSON form.
  CHECK(zero_crossing_json(summary).serialize() ==
        "{\"total\":15,\"counts\":[0,5,10],"
        "\"probabilities\":[0,0.33333333333333331,0.66666666666666663],"
        "\"ratios\":[null,2]}");
}

TEST_CASE("ensemble file parsing") {
  const std::string dir = temp_dir();
  const std::string path = dir + "/ensemble.json";
  SUBCASE("valid two-member ensemble") {
    write_text_file(path,
                    "[{\"state\": [1, 0, 0, 0], \"weight\": 0.25},"
                    " {\"state\": [0, 0, 0.6, 0.8], \"weight\": 0.75}]");
    const EnsembleSpec spec = parse_ensemble_file(path);
    CHECK(spec.kind == EnsembleSpec::Kind::custom);
    REQUIRE(spec.members.size() == 2);
    CHECK(spec.members[0].weight == doctest::Approx(0.25));
    CHECK(spec.members[1].state.amp1.real() == doctest::Approx(0.6));
    CHECK(spec.members[1].state.amp1.imag() == doctest::Approx(0.8));
  }
  SUBCASE("malformed inputs carry the path in the message") {
    write_text_file(path, "{\"not\": \"an array\"}");
    CHECK_THROWS_WITH_AS(parse_ensemble_file(path),
                         ("ensemble file " + path + ": expected a non-empty array").c_str(),
                         std::runtime_error);
    write_text_file(path, "[{\"state\": [1, 0, 0, 0]}]");
    CHECK_THROWS_AS(parse_ensemble_file(path), std::runtime_error);
    write_text_file(path, "[{\"state\": [1, 0], \"weight\": 1}]");
    CHECK_THROWS_AS(parse_ensemble_file(path), std::runtime_error);
    write_text_file(path, "[{\"state\": [1, 0, 0, 0], \"weight\": \"heavy\"}]");
    CHECK_THROWS_AS(parse_ensemble_file(path), std::runtime_error);
    write_text_file(path, "not json");
    CHECK_THROWS_AS(parse_ensemble_file(path), std::runtime_error);
  }
  SUBCASE("member validation failures are wrapped with context") {
    write_text_file(path, "[{\"state\": [1, 0, 0, 0], \"weight\": 0.5}]");
    CHECK_THROWS_WITH_AS(parse_ensemble_file(path),
                         ("ensemble file " + path + ": ensemble: weights must sum to 1").c_str(),
                         std::runtime_error);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(parse_ensemble_file(dir + "/nope.json"), std::runtime_error);
  }
}
