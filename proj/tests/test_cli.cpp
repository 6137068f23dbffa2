// Document parsing, serialization, command dispatch, and report determinism.

#include <catch2/catch_amalgamated.hpp>
#include <icat/cli.hpp>

#include <fstream>
#include <sstream>

using namespace icat;
using cli::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string example(const std::string& name) {
  return std::string(ICAT_EXAMPLES_DIR) + "/" + name;
}

cli::Command command(std::string name, std::vector<std::string> args = {},
                     std::map<std::string, std::string> options = {}) {
  return {std::move(name), std::move(options), std::move(args)};
}

const std::string minimal_one_object = R"({
  "base": {"kind": "sets"},
  "categories": {"X": {
    "objects": {"*": ["x"]},
    "morphisms": {"*": ["ix"]},
    "dom": {"*": {"ix": "x"}},
    "cod": {"*": {"ix": "x"}},
    "identity": {"*": {"x": "ix"}},
    "compose": {"*": [["ix", "ix", "ix"]]}
  }}
})";

}  // namespace

TEST_CASE("bundled example documents load and validate") {
  for (const std::string name : {"sets_basic.json", "presheaf_walking_arrow.json"}) {
    CAPTURE(name);
    cli::Document doc = cli::parse_document(slurp(example(name)));
    cli::Report rep = cli::execute(command("validate"), doc);
    CHECK(rep.exit_code == 0);
    CHECK(rep.body.at("verdicts").at("document") == true);
    CHECK(rep.body.at("status") == "ok");
    CHECK_FALSE(doc.categories.empty());
  }
}

TEST_CASE("well-formed document yields the described structures") {
  cli::Document doc = cli::parse_document(slurp(example("sets_basic.json")));
  REQUIRE(doc.categories.count("Iw") == 1);
  const InternalCategory& Iw = doc.categories.at("Iw");
  CHECK(Iw.groupoid);
  CHECK(Iw.X0.total_size() == 2);
  CHECK(Iw.X1.total_size() == 4);
  REQUIRE(doc.functors.count("bang_iw") == 1);
  CHECK(doc.functors.at("bang_iw").cod == doc.categories.at("T"));
  CHECK(doc.cleavages.count("fib_iw") == 1);
  CHECK(doc.trivial_cofibrations.count("endpoint") == 1);
  CHECK(doc.nat_isos.count("iw_identity") == 1);
}

TEST_CASE("parse errors report line and column") {
  const std::string text = "{\n  \"base\": }\n";
  CHECK_THROWS_MATCHES(cli::parse_document(text), ParseError,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("line 2")));
}

TEST_CASE("composition entries must reference known morphism labels") {
  json j = json::parse(minimal_one_object);
  j["categories"]["X"]["compose"]["*"].push_back(json::array({"ix", "bogus", "ix"}));
  CHECK_THROWS_MATCHES(
      cli::parse_document(j.dump()), ValidationError,
      Catch::Matchers::MessageMatches(
          Catch::Matchers::ContainsSubstring("unknown morphism label bogus")));
}

TEST_CASE("non-natural tables over a presheaf base are rejected") {
  // Index: walking arrow 0 -> 1.  The object carrier restricts q to r, but the
  // morphism carrier restricts q's identity arrow to p's, so the structure maps
  // cannot be natural.
  const std::string text = R"({
    "base": {"kind": "presheaves", "index": {
      "objects": ["0", "1"],
      "arrows": [["id0", "0", "0"], ["id1", "1", "1"], ["a", "0", "1"]],
      "identity": {"0": "id0", "1": "id1"},
      "compose": [["id0", "id0", "id0"], ["id1", "id1", "id1"],
                  ["a", "id0", "a"], ["id1", "a", "a"]]
    }},
    "categories": {"X": {
      "objects": {"0": ["p", "r"], "1": ["q"]},
      "object_restrictions": {"a": {"q": "r"}},
      "morphisms": {"0": ["p", "r"], "1": ["q"]},
      "morphism_restrictions": {"a": {"q": "p"}},
      "dom": {"0": {"p": "p", "r": "r"}, "1": {"q": "q"}},
      "cod": {"0": {"p": "p", "r": "r"}, "1": {"q": "q"}},
      "identity": {"0": {"p": "p", "r": "r"}, "1": {"q": "q"}},
      "compose": {"0": [["p", "p", "p"], ["r", "r", "r"]], "1": [["q", "q", "q"]]}
    }}
  })";
  CHECK_THROWS_MATCHES(cli::parse_document(text), ValidationError,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("naturality")));
}

TEST_CASE("references to unknown names are validation errors") {
  cli::Document doc = cli::parse_document(minimal_one_object);
  CHECK_THROWS_MATCHES(cli::execute(command("classify", {"missing"}), doc),
                       ValidationError,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("unknown functor")));
  CHECK_THROWS_AS(cli::execute(command("nonsense"), doc), cli::UnknownCommand);
}

TEST_CASE("identity factorization through the first system has the expected middle") {
  cli::Document doc = cli::parse_document(slurp(example("sets_basic.json")));
  cli::Report rep = cli::execute(
      command("factorize", {"id_T"}, {{"system", "ctf"}}), doc);
  CHECK(rep.exit_code == 0);
  CHECK(rep.body.at("middle").at("object_count") == 2);
  CHECK(rep.body.at("middle").at("morphism_count") == 4);
  CHECK(rep.body.at("verdicts").at("composes") == true);
}

TEST_CASE("reports are byte-deterministic") {
  const std::string text = slurp(example("sets_basic.json"));
  cli::Command cmd = command("classify", {"bang_iw"});
  std::string a = cli::emit(cli::execute(cmd, cli::parse_document(text)));
  std::string b = cli::emit(cli::execute(cmd, cli::parse_document(text)));
  CHECK(a == b);
  json body = json::parse(a);
  CHECK(body.at("verdicts").at("fibration") == true);
  CHECK(body.at("verdicts").at("cofibration") == false);
}

TEST_CASE("reordering document sections does not change the report") {
  json j = json::parse(slurp(example("sets_basic.json")));
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  REQUIRE(keys.size() > 1);
  std::string reordered = "{";
  for (auto it = keys.rbegin(); it != keys.rend(); ++it) {
    if (it != keys.rbegin()) reordered += ",";
    reordered += "\"" + *it + "\":" + j.at(*it).dump();
  }
  reordered += "}";
  cli::Command cmd = command("classify", {"bang_iw"});
  CHECK(cli::emit(cli::execute(cmd, cli::parse_document(j.dump()))) ==
        cli::emit(cli::execute(cmd, cli::parse_document(reordered))));
}

TEST_CASE("serialization round trip reproduces every table") {
  for (const std::string name : {"sets_basic.json", "presheaf_walking_arrow.json"}) {
    CAPTURE(name);
    cli::Document doc = cli::parse_document(slurp(example(name)));
    cli::Document back = cli::parse_document(cli::serialize_document(doc).dump());
    REQUIRE(back.categories.size() == doc.categories.size());
    for (const auto& [n, X] : doc.categories) CHECK(back.categories.at(n) == X);
    REQUIRE(back.functors.size() == doc.functors.size());
    for (const auto& [n, f] : doc.functors) CHECK(back.functors.at(n) == f);
    REQUIRE(back.cleavages.size() == doc.cleavages.size());
    for (const auto& [n, c] : doc.cleavages) {
      CHECK(back.cleavages.at(n).f == c.f);
      CHECK(back.cleavages.at(n).k.k == c.k.k);
    }
    REQUIRE(back.trivial_cofibrations.size() == doc.trivial_cofibrations.size());
    for (const auto& [n, t] : doc.trivial_cofibrations) {
      CHECK(back.trivial_cofibrations.at(n).r == t.r);
      CHECK(back.trivial_cofibrations.at(n).beta == t.beta);
    }
    for (const auto& [n, ni] : doc.nat_isos)
      CHECK(back.nat_isos.at(n).component == ni.component);
  }
}

TEST_CASE("property failures exit with code 2") {
  cli::Document doc = cli::parse_document(slurp(example("sets_basic.json")));
  // Keep only the identity fibration and break its cleavage after load: the
  // lift it assigns to u no longer starts at the required object.
  cli::Document small;
  small.base = doc.base;
  small.categories = doc.categories;
  small.functors = doc.functors;
  small.cleavages["broken"] = doc.cleavages.at("fib_id_iw");
  auto& k = small.cleavages.at("broken").k.k.map.at("*");
  k.at("(0,u)") = "id0";
  cli::Report rep = cli::execute(command("verify-ttawfs"), small);
  CHECK(rep.exit_code == 2);
  CHECK(rep.body.at("status") == "property-failure");
  CHECK(rep.body.at("verdicts").at("all_pass") == false);
  bool found_failing = false;
  for (const auto& e : rep.body.at("entries"))
    if (e.at("axiom") == "cloven-validates" && e.at("pass") == false)
      found_failing = true;
  CHECK(found_failing);
}

TEST_CASE("verifier passes on the bundled sets document") {
  cli::Document doc = cli::parse_document(slurp(example("sets_basic.json")));
  cli::Report rep = cli::execute(command("verify-ttawfs"), doc);
  CHECK(rep.exit_code == 0);
  CHECK(rep.body.at("verdicts").at("all_pass") == true);
  CHECK(rep.body.at("entries").size() >= 10);
}
