#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "chistar/cli.hpp"

using namespace chistar::cli;
using nlohmann::json;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "chistar");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  const auto parsed = parse_args(static_cast<int>(argv.size()), argv.data());
  if (!parsed.config) return {parsed.exit_code, "", parsed.message};
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(*parsed.config, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("chistar_cli_test_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::filesystem::path write_file(const std::string& name, const std::string& text) {
  const auto path = scratch(name);
  std::ofstream(path) << text;
  return path;
}

std::vector<json> parse_lines(const std::string& text) {
  std::vector<json> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(json::parse(line));
  return out;
}

}  // namespace

TEST(Cli, ParsesGlobalFlagsAfterSubcommand) {
  const char* argv[] = {"chistar", "eval", "--tau-im", "2", "--prec-bits", "200", "--workers", "3", "--format", "table"};
  const auto parsed = parse_args(10, argv);
  ASSERT_TRUE(parsed.config);
  EXPECT_EQ(parsed.config->subcommand, "eval");
  EXPECT_EQ(parsed.config->prec_bits, 200);
  EXPECT_EQ(parsed.config->workers, 3u);
  EXPECT_EQ(parsed.config->tau_im, "2");
  EXPECT_EQ(parsed.config->format, OutputFormat::Table);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({}).code, kExitUsage);
  EXPECT_EQ(invoke({"eval", "--bogus"}).code, kExitUsage);
  EXPECT_EQ(invoke({"eval", "--workers", "0"}).code, kExitUsage);
  EXPECT_EQ(invoke({"eval", "--prec-bits", "32"}).code, kExitUsage);
  EXPECT_EQ(invoke({"eval", "--tau-im", "-1"}).code, kExitUsage);
  EXPECT_EQ(invoke({"special"}).code, kExitUsage);
  EXPECT_EQ(invoke({"special", "--disc", "-5"}).code, kExitUsage);
  EXPECT_EQ(invoke({"--format", "xml", "verify-bounds"}).code, kExitUsage);
  EXPECT_EQ(invoke({"--help"}).code, kExitOk);
}

TEST(Cli, UnreadableInput) {
  const auto r = invoke({"ao-search", "--poly", "/nonexistent/p.json"});
  EXPECT_EQ(r.code, kExitRuntime);
  EXPECT_NE(r.err.find("cannot read"), std::string::npos);
  const auto bad = write_file("bad.json", "{oops");
  EXPECT_EQ(invoke({"maps-det", "--maps", bad.string()}).code, kExitRuntime);
}

TEST(Cli, VerifyBoundsPasses) {
  const auto r = invoke({"verify-bounds", "--format", "json", "--samples", "20", "--robin-limit", "500"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_TRUE(doc.at("pass").get<bool>());
  EXPECT_EQ(doc.at("certificates").size(), 19u);
  const auto table = invoke({"verify-bounds", "--samples", "0", "--robin-limit", "100"});
  EXPECT_NE(table.out.find("all certificates pass"), std::string::npos);
}

TEST(Cli, SpecialMinus7) {
  const auto r = invoke({"special", "--disc", "-7"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = json::parse(r.out);
  const auto& v = doc.at("results")[0].at("values")[0];
  EXPECT_EQ(v.at("chi_star_rounded"), -1215);
  EXPECT_EQ(v.at("j_rounded"), -3375);
}

TEST(Cli, EvalHugeImaginaryPart) {
  const auto r = invoke({"eval", "--function", "j", "--tau-im", "1e6"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_NE(doc.at("mid_re").get<std::string>().find("e+2728752"), std::string::npos);
  EXPECT_NE(doc.at("rad").get<std::string>().find("e+"), std::string::npos);
}

TEST(Cli, ExpandJ) {
  const auto r = invoke({"expand", "--function", "j", "--order", "2"});
  ASSERT_EQ(r.code, kExitOk);
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc.at("lead"), -1);
  EXPECT_EQ(doc.at("coeffs")[1], json::array({744, 1}));
  EXPECT_EQ(doc.at("coeffs")[2], json::array({196884, 1}));
  EXPECT_EQ(invoke({"expand", "--function", "nope"}).code, kExitUsage);
}

TEST(Cli, AoSearchStreamsAndIsDeterministic) {
  const auto poly = write_file("y.json", R"({"field_degree": 1, "coeffs": [{"i": 0, "j": 1, "value": 1}]})");
  const auto a = invoke({"ao-search", "--poly", poly.string(), "--dmax-override", "40"});
  const auto b = invoke({"ao-search", "--poly", poly.string(), "--dmax-override", "40", "--workers", "3"});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto lines = parse_lines(a.out);
  EXPECT_EQ(lines.front().at("type"), "constants");
  EXPECT_EQ(lines.back().at("type"), "summary");
  EXPECT_EQ(lines.back().at("zero_discriminants"), json::array({-3, -4}));
  EXPECT_EQ(lines.size(), lines.back().at("visited").get<std::size_t>() + 2);
  EXPECT_EQ(invoke({"--strict", "ao-search", "--poly", poly.string(), "--dmax-override", "40"}).code, kExitOk);
}

TEST(Cli, CollinearSearch) {
  const auto r = invoke({"collinear-search", "--dmax", "12", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_EQ(doc.at("summary").at("collinear"), 0);
  EXPECT_EQ(doc.at("points").size(), 6u);
}

TEST(Cli, ClassPolyCacheHitsAreIdentical) {
  const auto dir = scratch("cache");
  std::filesystem::remove_all(dir);
  const auto cold = invoke({"classpoly", "--disc", "-23", "--kind", "chi-star", "--cache-dir", dir.string()});
  const auto warm = invoke({"classpoly", "--disc", "-23", "--kind", "chi-star", "--cache-dir", dir.string()});
  ASSERT_EQ(cold.code, kExitOk) << cold.err;
  const auto c = json::parse(cold.out).at("results")[0];
  const auto w = json::parse(warm.out).at("results")[0];
  EXPECT_FALSE(c.at("from_cache").get<bool>());
  EXPECT_TRUE(w.at("from_cache").get<bool>());
  EXPECT_EQ(c.at("coeffs"), w.at("coeffs"));
  EXPECT_TRUE(c.at("irreducible").get<bool>());
  EXPECT_EQ(c.at("degree"), 3);
}

TEST(Cli, CacheCorruptionIsARuntimeError) {
  const auto dir = scratch("corrupt");
  std::filesystem::remove_all(dir);
  ASSERT_EQ(invoke({"classpoly", "--disc", "-7", "--cache-dir", dir.string()}).code, kExitOk);
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    std::ifstream in(entry.path());
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    text.replace(text.find("3375"), 4, "3376");
    std::ofstream(entry.path()) << text;
  }
  const auto r = invoke({"classpoly", "--disc", "-7", "--cache-dir", dir.string()});
  EXPECT_EQ(r.code, kExitRuntime);
  EXPECT_NE(r.err.find("corruption"), std::string::npos);
}

TEST(Cli, MapsDeterminant) {
  const auto pairs = write_file("pairs.json", R"({"pairs": [
      [{"kind": "j", "level": "3", "twist": "0"}, {"kind": "chi", "level": "3", "twist": "0"}],
      [{"kind": "j", "level": "2", "twist": "0"}, {"kind": "chi", "level": "2", "twist": "0"}],
      [{"kind": "j", "level": "1", "twist": "0"}, {"kind": "chi", "level": "1", "twist": "0"}]]})");
  const auto r = invoke({"maps-det", "--maps", pairs.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto doc = json::parse(r.out);
  EXPECT_TRUE(doc.at("match").get<bool>());
  EXPECT_EQ(doc.at("predicted").at("q_exponent"), "-5");

  const auto six = write_file("six.json", R"({"maps": [
      {"kind": "chi", "level": "1", "twist": "0"}, {"kind": "chi", "level": "1", "twist": "0"},
      {"kind": "chi", "level": "1", "twist": "0"}, {"kind": "chi", "level": "1", "twist": "0"},
      {"kind": "chi", "level": "1", "twist": "0"}, {"kind": "chi", "level": "1", "twist": "0"}]})");
  const auto s = invoke({"maps-det", "--maps", six.string()});
  ASSERT_EQ(s.code, kExitOk) << s.err;
  EXPECT_TRUE(json::parse(s.out).at("combined_vanishes").get<bool>());
}

TEST(Cli, OutFile) {
  RunConfig config;
  config.subcommand = "expand";
  config.function = "delta";
  config.order = 4;
  config.out = scratch("delta.json").string();
  ASSERT_EQ(run(config), kExitOk);
  json doc;
  std::ifstream(config.out) >> doc;
  EXPECT_EQ(doc.at("coeffs")[1], json::array({-24, 1}));
}
