#include "reflexion/cli.hpp"
#include "reflexion/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

using namespace reflexion;

namespace fs = std::filesystem;

namespace {

const fs::path kTests = REFLEXION_TEST_DIR;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

struct CliTest : ::testing::Test {
  fs::path cache;

  void SetUp() override {
    cache = fs::temp_directory_path() / ("reflexion-cli-" + std::to_string(std::random_device{}()));
  }
  void TearDown() override { fs::remove_all(cache); }

  Result call(std::vector<std::string> args) const {
    args.insert(args.begin(), {"--cache-dir", cache.string()});
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string data(const char* name) { return (kTests / "data" / name).string(); }

// every scalar leaf of the JSON report shows up in the table text
void expect_leaves_in(const Json& j, const std::string& table) {
  if (j.is_object() && j.contains("terms")) {
    return;
  }
  if (j.is_object() || j.is_array()) {
    for (const auto& item : j) {
      expect_leaves_in(item, table);
    }
    return;
  }
  const std::string text = j.is_string() ? j.get<std::string>() : j.is_null() ? "-" : j.dump();
  EXPECT_NE(table.find(text), std::string::npos) << text;
}

} // namespace

TEST_F(CliTest, GroupInfoS3) {
  const Result r = call({"--json", "group", "info", "symmetric:n=3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["degrees"], (std::vector<int>{2, 3}));
  EXPECT_EQ(j["codegrees"], (std::vector<int>{1, 0}));
  EXPECT_EQ(j["N"], 3);
  EXPECT_EQ(j["Nstar"], 3);
  EXPECT_EQ(j["order"], 6);
}

TEST_F(CliTest, RegularReportS3) {
  const Result r = call({"regular", "report", "symmetric:n=3", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  std::map<int, bool> regular;
  for (const auto& row : j["rows"]) {
    regular[row["d"].get<int>()] = row["regular"].get<bool>();
    EXPECT_EQ(row["symbolic"], row["brute_force"]);
    EXPECT_EQ(row["symbolic"], row["lehrer_springer"]);
  }
  EXPECT_TRUE(regular.at(1));
  EXPECT_TRUE(regular.at(2));
  EXPECT_TRUE(regular.at(3));
  EXPECT_FALSE(regular.at(6));
}

TEST_F(CliTest, DominantExample) {
  const Result r = call({"--json", "zariski", "dominant", data("dominance_example.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::set<std::vector<int>> found;
  const Json j = Json::parse(r.out);
  for (const auto& row : j["dominant"]) {
    found.insert(row["exps"].get<std::vector<int>>());
  }
  EXPECT_EQ(found, (std::set<std::vector<int>>{{5, 1}, {1, 3}}));
}

TEST_F(CliTest, BoundTraceFields) {
  const Result r = call({"--json", "zariski", "bound", data("dominance_example.json"),
                         "--monomial", "5,1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["total"], 6);
  for (const auto& step : j["steps"]) {
    EXPECT_TRUE(step.contains("pivot"));
    EXPECT_TRUE(step.contains("local_degree"));
    EXPECT_TRUE(step.contains("head_coefficient"));
  }
  // (4,2) is not dominant
  EXPECT_EQ(call({"zariski", "bound", data("dominance_example.json"), "--monomial", "4,2"}).code, 2);
}

TEST_F(CliTest, ClassifyAndRestrict) {
  Result r = call({"--json", "zariski", "classify-line", data("dominance_example.json"),
                   "--direction", "1", "--point", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  // at X2 = 0 the polynomial vanishes identically in X1
  EXPECT_NE(Json::parse(r.out)["class"].get<std::string>(), "generic");
  r = call({"--json", "zariski", "classify-line", data("dominance_example.json"), "--direction", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)["class"], "generic");

  const fs::path out = cache / "restricted.json";
  fs::create_directories(cache);
  r = call({"--json", "zariski", "restrict", data("dominance_example.json"), "--drop", "1", "--out",
            out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const Poly q = read_poly_file(out);
  EXPECT_EQ(q.nvars(), 1);
  EXPECT_EQ(q.size(), 1u);
  EXPECT_EQ(q.coefficient({3}), Cyclo(1));
  EXPECT_EQ(poly_from_json(Json::parse(r.out)["result"]), q);
}

TEST_F(CliTest, HomogenizeFile) {
  const Result r = call({"--json", "presentation", "homogenize", "--n", "2", "--d", "3",
                         data("relations.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  ASSERT_EQ(j["relations"].size(), 2u);
  EXPECT_EQ(j["relations"][0]["output"], "s1 s1 s2 s1 s2 s1 = s1 s2 s1 s2 s1 s1");
  EXPECT_EQ(j["relations"][1]["output"], "s1 s2 s1 = s2 s1 s2");
}

TEST_F(CliTest, DiscriminantUsesCacheAndWritesFile) {
  fs::create_directories(cache);
  const fs::path out = cache / "delta.json";
  Result r = call({"--json", "group", "discriminant", "symmetric:n=3", "--out", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["cache"], "miss");
  EXPECT_EQ(j["valuation"], 2);
  EXPECT_EQ(poly_from_json(j["discriminant"]), read_poly_file(out));
  r = call({"--json", "group", "discriminant", "symmetric:n=3"});
  j = Json::parse(r.out);
  EXPECT_EQ(j["cache"], "hit");
  EXPECT_EQ(poly_from_json(j["discriminant"]), read_poly_file(out));
}

TEST_F(CliTest, CorruptedCacheIsRecomputed) {
  ASSERT_EQ(call({"group", "discriminant", "symmetric:n=3"}).code, 0);
  const DiscriminantCache c(cache);
  std::ofstream(c.poly_path("symmetric:n=3"), std::ios::trunc) << "{\"format\":1}";
  const Result r = call({"--json", "group", "discriminant", "symmetric:n=3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)["cache"], "corrupted");
  EXPECT_NE(r.err.find("warning"), std::string::npos);
  EXPECT_EQ(Json::parse(call({"--json", "group", "discriminant", "symmetric:n=3"}).out)["cache"],
            "hit");
}

TEST_F(CliTest, Monicize) {
  Result r = call({"--json", "monicize", "symmetric:n=4", "--pivot", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["d"], 4);
  EXPECT_EQ(j["pivot_degree"], 3);
  EXPECT_EQ(j["n"], 3);
  // d = 3 divides one degree of S5 but two codegrees
  r = call({"monicize", "symmetric:n=5", "--pivot", "2"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("regular"), std::string::npos) << r.err;
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(call({}).code, 2);
  EXPECT_EQ(call({"bogus"}).code, 2);
  EXPECT_EQ(call({"group", "info", "foo:n=3"}).code, 2);
  EXPECT_EQ(call({"group", "info", "table:G99"}).code, 2);
  EXPECT_EQ(call({"group", "discriminant", "table:G4"}).code, 2);
  EXPECT_EQ(call({"zariski", "dominant", data("missing.json")}).code, 2);
  EXPECT_EQ(call({"--threads", "0", "group", "info", "symmetric:n=3"}).code, 2);
  EXPECT_EQ(call({"--max-order", "10", "group", "info", "symmetric:n=4"}).code, 3);
  // G(5,1,2) lives over Q(zeta_5), phi(5) = 4
  EXPECT_EQ(call({"--max-conductor", "2", "group", "info", "imprimitive:d=5,e=1,r=2"}).code, 3);
  EXPECT_EQ(call({"--help"}).code, 0);
}

TEST_F(CliTest, ThreadCountDoesNotChangeOutput) {
  const Result one = call({"--threads", "1", "regular", "report", "symmetric:n=4"});
  const Result four = call({"--threads", "4", "regular", "report", "symmetric:n=4"});
  ASSERT_EQ(one.code, 0);
  EXPECT_EQ(one.out, four.out);
}

TEST_F(CliTest, TableAndJsonCarrySameData) {
  const std::vector<std::vector<std::string>> commands = {
      {"group", "info", "symmetric:n=3"},
      {"group", "info", "table:G15"},
      {"regular", "report", "symmetric:n=3"},
      {"regular", "report", "table:G8"},
      {"orlik-solomon", "imprimitive:d=1,e=4,r=2"},
      {"zariski", "dominant", data("dominance_example.json")},
      {"zariski", "bound", data("dominance_example.json"), "--monomial", "1,3"},
      {"presentation", "homogenize", "--n", "3", "--d", "1", data("relations.txt")},
      {"group", "discriminant", "imprimitive:d=2,e=1,r=2"},
  };
  ASSERT_EQ(call({"group", "discriminant", "imprimitive:d=2,e=1,r=2"}).code, 0);
  for (auto args : commands) {
    const Result table = call(args);
    args.push_back("--json");
    const Result json = call(args);
    ASSERT_EQ(table.code, 0) << table.err;
    ASSERT_EQ(json.code, 0) << json.err;
    const Json j = Json::parse(json.out);
    EXPECT_EQ(render_table(j), table.out);
    expect_leaves_in(j, table.out);
  }
}

TEST_F(CliTest, GoldenFiles) {
  struct Case {
    const char* name;
    std::vector<std::string> args;
  };
  const std::vector<Case> cases = {
      {"group_info_s3", {"group", "info", "symmetric:n=3"}},
      {"regular_report_s3", {"regular", "report", "symmetric:n=3"}},
      {"regular_report_g4", {"regular", "report", "table:G4"}},
      {"zariski_dominant", {"zariski", "dominant", data("dominance_example.json")}},
      {"orlik_solomon_b2", {"orlik-solomon", "imprimitive:d=2,e=1,r=2"}},
  };
  for (const auto& c : cases) {
    EXPECT_EQ(call(c.args).out, slurp(kTests / "golden" / (std::string(c.name) + ".txt"))) << c.name;
    auto args = c.args;
    args.insert(args.begin(), "--json");
    EXPECT_EQ(call(args).out, slurp(kTests / "golden" / (std::string(c.name) + ".json"))) << c.name;
  }
}
