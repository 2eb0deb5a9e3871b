#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <fstream>
#include <sstream>

#include "twistgen/cli.hpp"

using namespace twistgen;
using nlohmann::json;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

json load_schema() {
  std::ifstream f(TWISTGEN_SCHEMA_PATH);
  REQUIRE(f.good());
  json schema;
  f >> schema;
  return schema;
}

// Structural validation against the shipped schema: required keys, enum
// membership, and primitive types (the subset the schema uses).
void check_against_schema(const json& doc, const json& schema) {
  for (const auto& req : schema.at("required")) {
    CAPTURE(req.get<std::string>());
    CHECK(doc.contains(req.get<std::string>()));
  }
  const auto& props = schema.at("properties");
  for (const auto& [key, value] : doc.items()) {
    CAPTURE(key);
    REQUIRE(props.contains(key));
    const json& p = props.at(key);
    if (p.contains("const")) CHECK(value == p.at("const"));
    if (p.contains("enum")) {
      bool member = false;
      for (const auto& e : p.at("enum")) member = member || e == value;
      CHECK(member);
    }
    if (p.contains("type")) {
      const std::string t = p.at("type");
      if (t == "string") CHECK(value.is_string());
      if (t == "integer") CHECK(value.is_number_integer());
      if (t == "number") CHECK(value.is_number());
      if (t == "boolean") CHECK(value.is_boolean());
      if (t == "array") CHECK(value.is_array());
    }
  }
  if (doc.contains("steps")) {
    const json& item_schema = props.at("steps").at("items");
    for (const auto& st : doc.at("steps")) {
      for (const auto& req : item_schema.at("required")) {
        CHECK(st.contains(req.get<std::string>()));
      }
      for (const auto& [key, value] : st.items()) {
        CAPTURE(key);
        REQUIRE(item_schema.at("properties").contains(key));
        const json& p = item_schema.at("properties").at(key);
        if (p.contains("enum")) {
          bool member = false;
          for (const auto& e : p.at("enum")) member = member || e == value;
          CHECK(member);
        }
      }
    }
  }
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(cli({"verify", "--theorem", "t9odd", "--genus", "9"}).code == 0);
  CHECK(cli({"verify", "--theorem", "t29", "--genus", "25"}).code == 2);
  CHECK(cli({"verify", "--theorem", "bogus", "--genus", "9"}).code == 2);
  CHECK(cli({"eval", "--genus", "9", "--word", "X5"}).code == 2);
  CHECK(cli({"nonsense"}).code == 2);
  CHECK(cli({"order", "--genus", "27", "--gens", "t29"}).code == 2);  // cap without --force
}

TEST_CASE("verify reports validate against the shipped schema") {
  json schema = load_schema();
  for (auto args : {std::vector<std::string>{"verify", "--theorem", "t9odd", "--genus", "9",
                                             "--format", "json"},
                    std::vector<std::string>{"verify", "--theorem", "prop41", "--genus", "12",
                                             "--format", "json"}}) {
    CliResult r = cli(args);
    CHECK(r.code == 0);
    json doc = json::parse(r.out);
    check_against_schema(doc, schema);
    CHECK(doc.at("verdict") == "pass");
  }
}

TEST_CASE("order reports validate against the shipped schema") {
  json schema = load_schema();
  CliResult r = cli({"order", "--genus", "5", "--gens", "omori", "--format", "json"});
  CHECK(r.code == 0);
  json doc = json::parse(r.out);
  check_against_schema(doc, schema);
  CHECK(doc.at("order") == "720");
  CHECK(doc.at("matches_target") == true);
  CHECK(doc.at("same_as_reference") == true);
}

TEST_CASE("text and json verdicts agree") {
  CliResult text = cli({"verify", "--theorem", "t8even", "--genus", "8"});
  CliResult js = cli({"verify", "--theorem", "t8even", "--genus", "8", "--format", "json"});
  CHECK(text.code == js.code);
  json doc = json::parse(js.out);
  std::string verdict = doc.at("verdict");
  CHECK(text.out.find("verdict: " + verdict) != std::string::npos);
}

TEST_CASE("reports are reproducible modulo timings") {
  auto strip = [](const std::string& s) {
    json doc = json::parse(s);
    doc.erase("wall_ms");
    return doc.dump();
  };
  CliResult a = cli({"verify", "--theorem", "t29", "--genus", "29", "--format", "json"});
  CliResult b = cli({"verify", "--theorem", "t29", "--genus", "29", "--format", "json"});
  CHECK(strip(a.out) == strip(b.out));
}

TEST_CASE("catalog output is canonical and machine-readable") {
  CliResult r = cli({"catalog", "--genus", "29"});
  CHECK(r.code == 0);
  CHECK(r.out.find("a1 = x1+x2\n") != std::string::npos);
  CHECK(r.out.find("genus = 29") != std::string::npos);
  // a1 is the first record.
  auto a1 = r.out.find("a1 = ");
  auto b1 = r.out.find("b1 = ");
  CHECK(a1 < b1);
}

TEST_CASE("eval prints a matrix dump with a form flag") {
  CliResult r = cli({"eval", "--genus", "29", "--word", "T^-4"});
  CHECK(r.code == 0);
  CHECK(r.out.find("preserves_form: true") != std::string::npos);
  CliResult s = cli({"eval", "--genus", "12", "--word", "R2 * R1", "--level", "signed"});
  CHECK(s.code == 0);
  CHECK(s.out.find("D: 1") != std::string::npos);
}

TEST_CASE("infer lists the shipped default") {
  CliResult r = cli({"infer", "--genus", "9"});
  CHECK(r.code == 0);
  CHECK(r.out.find("# shipped default") != std::string::npos);
  CHECK(r.out.find("a2 = x1+x2+x3+x4") != std::string::npos);
}

TEST_CASE("stdout carries only the report") {
  CliResult r = cli({"order", "--genus", "5", "--gens", "omori"});
  CHECK(r.out.find("building stabilizer chains") == std::string::npos);
  CHECK(r.err.find("building stabilizer chains") != std::string::npos);
}
