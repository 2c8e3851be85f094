// Artifact cache integrity and the batch verdict report.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "adeflat/cache.hpp"
#include "adeflat/cells.hpp"
#include "adeflat/report.hpp"

using namespace ade;

namespace {

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() /
                   "adeflat-test-cache";
  std::filesystem::remove_all(dir);
  return dir;
}

const ReportDocument& fresh_report() {
  static const ReportDocument doc = build_report();
  return doc;
}

} // namespace

TEST_CASE("fnv1a matches the published test vectors") {
  CHECK(fnv1a("") == "cbf29ce484222325");
  CHECK(fnv1a("a") == "af63dc4c8601ec8c");
  CHECK(fnv1a("foobar") == "85944171f73967e8");
}

TEST_CASE("a disabled cache always recomputes") {
  const ArtifactCache cache;
  CHECK_FALSE(cache.enabled());
  CHECK_FALSE(cache.load("anything").has_value());
  int calls = 0;
  const auto compute = [&] {
    ++calls;
    return std::string("value");
  };
  CHECK(cache.get("k", compute) == "value");
  CHECK(cache.get("k", compute) == "value");
  CHECK(calls == 2);
}

TEST_CASE("an enabled cache verifies hashes and heals corruption") {
  const auto dir = scratch_dir();
  const ArtifactCache cache(dir);
  CHECK(cache.enabled());

  int calls = 0;
  const auto compute = [&] {
    ++calls;
    return std::string("{\"x\":1}");
  };
  CHECK(cache.get("req/a", compute) == "{\"x\":1}");
  CHECK(cache.get("req/a", compute) == "{\"x\":1}");
  CHECK(calls == 1);  // second call was a hit
  CHECK(cache.load("req/b") == std::nullopt);

  // Unparseable file: detected, removed, recomputed.
  {
    std::ofstream out(cache.entry_path("req/a"));
    out << "garbage{{{";
  }
  CHECK(cache.load("req/a") == std::nullopt);
  CHECK_FALSE(std::filesystem::exists(cache.entry_path("req/a")));
  CHECK(cache.get("req/a", compute) == "{\"x\":1}");
  CHECK(calls == 2);

  // Tampered payload: valid JSON whose integrity hash no longer matches.
  {
    nlohmann::json j;
    j["key"] = "req/a";
    j["hash"] = fnv1a("{\"x\":1}");
    j["payload"] = "{\"x\":2}";
    std::ofstream out(cache.entry_path("req/a"));
    out << j.dump();
  }
  CHECK(cache.load("req/a") == std::nullopt);

  // A different key that collides nowhere reads back its own payload.
  cache.store("req/c", "payload-c");
  CHECK(cache.load("req/c") == std::string("payload-c"));

  std::filesystem::remove_all(dir);
}

TEST_CASE("flat part targets name the commutative partner") {
  CHECK(flat_part_target(find_spec("A5")) == "A5");
  CHECK(flat_part_target(find_spec("D6")) == "D6");
  CHECK(flat_part_target(find_spec("E6")) == "E6");
  CHECK(flat_part_target(find_spec("E8")) == "E8");
  CHECK(flat_part_target(find_spec("D5")) == "A7");
  CHECK(flat_part_target(find_spec("D7")) == "A11");
  CHECK(flat_part_target(find_spec("D9")) == "A15");
  CHECK(flat_part_target(find_spec("E7")) == "D10");
}

TEST_CASE("the report covers the catalog in canonical order") {
  const ReportDocument& doc = fresh_report();
  CHECK(doc.specs == std::vector<std::string>{
                         "A2", "A3", "A4", "A5", "A6", "A7", "A8", "A9",
                         "D4", "D5", "D6", "D7", "D8", "D9", "D10", "E6",
                         "E7", "E8"});
  CHECK(doc.rows.size() == 152);

  // Rows are grouped by spec in the canonical spec order, with lambda
  // ascending and + before - inside each lambda.
  std::size_t i = 0;
  for (const std::string& name : doc.specs) {
    int last_lambda = 0;
    while (i < doc.rows.size() && doc.rows[i].spec == name) {
      const ReportRow& row = doc.rows[i];
      if (row.lambda == last_lambda + 1) {
        CHECK(row.sign == +1);
        last_lambda = row.lambda;
      } else {
        CHECK(row.lambda == last_lambda);
        CHECK(row.sign == -1);
      }
      ++i;
    }
    CHECK(last_lambda >= 1);
  }
  CHECK(i == doc.rows.size());

  for (const ReportRow& row : doc.rows) {
    INFO(row.spec, " lambda=", row.lambda);
    // Verdicts line up with locality, and nonflat rows carry their
    // certificates.
    if (row.flatness == "nonflat") {
      CHECK(row.locality == "nonlocal");
      CHECK(row.certificate.k >= 0);
      CHECK(row.certificate.lhs_dim < row.certificate.rhs_dim);
    } else {
      CHECK(row.locality == "local");
    }
    CHECK(row.biunitarity_residual < 1e-8);
    if (row.spec[0] == 'A') CHECK(row.z_row0 == std::vector<int>{0});
  }
  const auto row_for = [&](const std::string& name) {
    for (const ReportRow& row : doc.rows)
      if (row.spec == name) return row;
    throw std::runtime_error("missing " + name);
  };
  CHECK(row_for("E6").z_row0 == std::vector<int>{0, 6});
  CHECK(row_for("E7").z_row0 == std::vector<int>{0, 16});
  CHECK(row_for("E8").z_row0 == std::vector<int>{0, 10, 18, 28});
  CHECK(row_for("D6").z_row0 == std::vector<int>{0, 8});

  CHECK(doc.max_axiom_residual < 1e-9);
  CHECK(doc.max_biunitarity_residual < 1e-8);
  CHECK(doc.max_z_residual < 1e-8);
}

TEST_CASE("golden comparison accepts itself and rejects edits") {
  const ReportDocument& doc = fresh_report();
  CHECK(matches_golden(doc, doc.golden_json()));

  nlohmann::json mutated = nlohmann::json::parse(doc.golden_json());
  mutated["rows"][0]["flatness"] = "nonflat";
  CHECK_FALSE(matches_golden(doc, mutated.dump()));
  CHECK_FALSE(matches_golden(doc, "not json at all"));

  const nlohmann::json full = nlohmann::json::parse(doc.to_json());
  CHECK(full["version"] == kToolVersion);
  CHECK(full["residuals"]["max_biunitarity"].get<double>() < 1e-8);
  CHECK(full["rows"].size() == doc.rows.size());
}

TEST_CASE("the checked-in golden table matches a fresh build") {
  const std::filesystem::path golden =
      std::filesystem::path(ADE_SOURCE_DIR) / "data" / "golden_report.json";
  REQUIRE(std::filesystem::exists(golden));
  std::ifstream in(golden);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(matches_golden(fresh_report(), buf.str()));
}

TEST_CASE("a cache round trip reproduces the report") {
  const auto dir = scratch_dir();
  const ArtifactCache cache(dir);
  const ReportDocument first = build_report(cache);
  const ReportDocument second = build_report(cache);  // all hits
  CHECK(first.golden_json() == second.golden_json());
  CHECK(first.golden_json() == fresh_report().golden_json());
  CHECK(std::filesystem::exists(dir));
  CHECK_FALSE(std::filesystem::is_empty(dir));
  std::filesystem::remove_all(dir);
}
