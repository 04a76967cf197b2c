#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "endopres/catalog.hpp"
#include "endopres/dsl.hpp"
#include "endopres/verify.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = endo::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json run_json(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  auto r = run(args);
  EXPECT_EQ(r.code, 0) << r.err;
  return nlohmann::json::parse(r.out);
}

}  // namespace

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, endo::cli::usage);
  EXPECT_EQ(run({"frobnicate"}).code, endo::cli::usage);
  EXPECT_EQ(run({"enumerate", "grigorchuk", "--bogus"}).code, endo::cli::usage);
  EXPECT_EQ(run({"enumerate", "no-such-group"}).code, endo::cli::usage);
  EXPECT_EQ(run({"wp", "grigorchuk", "a z"}).code, endo::cli::usage);
  EXPECT_EQ(run({"wp", "lamplighter", "a"}).code, endo::cli::usage);
  EXPECT_EQ(run({"enumerate", "--file", "/nonexistent.grp"}).code, endo::cli::usage);
  EXPECT_EQ(run({"--help"}).code, endo::cli::ok);
}

TEST(Cli, Enumerate) {
  auto j = run_json({"enumerate", "grigorchuk", "--depth", "2"});
  EXPECT_EQ(j["group"], "grigorchuk");
  auto rels = endo::enumerate_relators(endo::get_entry("grigorchuk").lpres(), 2);
  EXPECT_EQ(j["relators"].size(), rels.size());
  EXPECT_EQ(j["counts_by_depth"].back(), rels.size());
  auto text = run({"enumerate", "--entry", "lamplighter", "--depth", "0"});
  EXPECT_EQ(text.code, 0);
  EXPECT_NE(text.out.find("a^2"), std::string::npos);
}

TEST(Cli, FileSource) {
  auto path = std::filesystem::temp_directory_path() / "endopres_cli_test.grp";
  {
    std::ofstream f(path);
    f << "group q8 { generators: i, j; fixed: i^4, i^2 j^-2, j^-1 i j i; }";
  }
  auto r = run({"order", "--file", path.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "8\n");
  std::ofstream(path) << "group broken { generators: ; }";
  r = run({"order", "--file", path.string()});
  EXPECT_EQ(r.code, endo::cli::usage);
  EXPECT_NE(r.err.find("syntax error"), std::string::npos);
  std::filesystem::remove(path);
}

TEST(Cli, Abelianize) {
  auto j = run_json({"abelianize", "grigorchuk-supergroup"});
  EXPECT_EQ(j["torsion"], nlohmann::json::array({"2", "2", "2", "2"}));
  EXPECT_EQ(j["free_rank"], 0);
  EXPECT_EQ(run({"abelianize", "lamplighter", "--depth", "4"}).out, "Z/2 x Z\n");
}

TEST(Cli, WordProblemAndAction) {
  EXPECT_EQ(run({"wp", "grigorchuk", "adad adad"}).out, "trivial\n");
  EXPECT_EQ(run({"wp", "grigorchuk", "ab"}).out, "nontrivial\n");
  EXPECT_EQ(run({"wp", "gupta-sidki", "u^-1 t^a"}).out, "trivial\n");
  auto j = run_json({"act", "grigorchuk", "a", "--level", "2"});
  EXPECT_EQ(j["images"], nlohmann::json::array({3, 4, 1, 2}));
  EXPECT_EQ(run({"act", "grigorchuk", "b", "--level", "2"}).out, "2 1 3 4\n");
}

TEST(Cli, Order) {
  EXPECT_EQ(run({"order", "grigorchuk", "--level", "3"}).out, "128\n");
  EXPECT_EQ(run({"order", "sym(4)"}).out, "24\n");
  EXPECT_EQ(run({"order", "sym-transpositions(4)"}).out, "24\n");
  auto r = run({"order", "lamplighter", "--max-cosets", "200"});
  EXPECT_EQ(r.code, endo::cli::resource_cap);
}

TEST(Cli, ToddCoxeter) {
  auto j = run_json({"tc", "sym(4)", "s1"});
  EXPECT_EQ(j["status"], "closed");
  EXPECT_EQ(j["index"], 12);
  EXPECT_EQ(run({"tc", "lamplighter", "--max-cosets", "100"}).code, endo::cli::resource_cap);
}

TEST(Cli, Embed) {
  auto r = run({"embed", "hnn-example"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto g = endo::parse_dsl(r.out);
  EXPECT_EQ(g.name, "hnn_example_embedded");
  EXPECT_EQ(g.lpres.fixed.size(), 3u);
  EXPECT_EQ(run({"embed", "lamplighter"}).code, endo::cli::usage);
}

TEST(Cli, SmallCancellation) {
  auto ok = run({"smallcanc", "x^7", "y^7", "(x y)^7"});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out, "C'(1/6) holds\n");
  auto bad = run({"smallcanc", "[x,y]"});
  EXPECT_EQ(bad.code, endo::cli::verification_failed);
  EXPECT_NE(bad.out.find("piece"), std::string::npos);
  EXPECT_EQ(run({"smallcanc", "[x,y]", "--lambda", "1/4"}).code, endo::cli::verification_failed);
  // pieces of [x,y] have length 1, under half of 4
  EXPECT_EQ(run({"smallcanc", "[x,y]", "--lambda", "1/2"}).code, endo::cli::ok);
  EXPECT_EQ(run({"smallcanc", "x^7", "--lambda", "oops"}).code, endo::cli::usage);
}

TEST(Cli, Verify) {
  auto r = run({"verify", "bsv", "zn(3)"});
  EXPECT_EQ(r.code, 0) << r.out;
  auto j = run_json({"verify", "lamplighter"});
  ASSERT_TRUE(j.is_array());
  for (const auto& c : j) EXPECT_EQ(c["status"], "pass");
  EXPECT_EQ(run({"verify"}).code, endo::cli::usage);
  // exit 2 exactly when some check failed
  for (const char* name : {"gupta-sidki", "grigorchuk"}) {
    bool failed = endo::run_suite({name})[0].failed();
    EXPECT_EQ(run({"verify", name}).code, failed ? endo::cli::verification_failed : endo::cli::ok);
  }
}

TEST(Cli, Catalog) {
  auto list = run({"catalog"});
  for (const auto& n : endo::entry_names()) EXPECT_NE(list.out.find(n), std::string::npos);
  auto src = run({"catalog", "gamma-bar"});
  EXPECT_EQ(endo::parse_dsl(src.out), endo::get_entry("gamma-bar").group);
  auto j = run_json({"catalog", "hnn-example"});
  EXPECT_EQ(endo::lpres_from_json(j.dump()), endo::get_entry("hnn-example").lpres());
}
