#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

using Json = nlohmann::ordered_json;

namespace {

std::string g_cli_path;
std::string g_dir;

struct CliResult {
  int code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = g_cli_path + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string fixture(const std::string& name, const std::string& text) {
  const std::string path = g_dir + "/" + name;
  std::ofstream(path) << text;
  return path;
}

std::string u23, u12, free2, bip_m, bip_n, u17a, u17b;

void write_fixtures() {
  u23 = fixture("u23.json", R"({"type":"uniform","n":3,"rank":2})");
  u12 = fixture("u12.json", R"({"type":"uniform","n":2,"rank":1})");
  free2 = fixture("free2.json", R"({"type":"uniform","n":2,"rank":2})");
  bip_m = fixture("bipM.json", R"({"type":"partition","blocks":[[0,1],[2]],"caps":[1,1]})");
  bip_n = fixture("bipN.json", R"({"type":"partition","blocks":[[0],[1,2]],"caps":[1,1]})");
  u17a = fixture("u17a.json", R"({"type":"uniform","n":17,"rank":3})");
  u17b = fixture("u17b.json", R"({"type":"uniform","n":17,"rank":5})");
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg.rfind("--cli=", 0) == 0) g_cli_path = arg.substr(6);
  }
  if (g_cli_path.empty()) {
    if (const char* env = std::getenv("MINT_CLI_PATH")) g_cli_path = env;
  }
  if (g_cli_path.empty()) {
    std::fprintf(stderr, "pass --cli=<path to mint binary> or set MINT_CLI_PATH\n");
    return 1;
  }
  char dir_template[] = "/tmp/mint_cli_XXXXXX";
  if (!mkdtemp(dir_template)) {
    std::perror("mkdtemp");
    return 1;
  }
  g_dir = dir_template;
  write_fixtures();

  doctest::Context ctx;
  ctx.applyCommandLine(argc, argv);
  return ctx.run();
}

TEST_CASE("rank of a listed set") {
  const CliResult r = run_cli("rank " + u23 + " --set 0,1,2");
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out)["rank"] == 2);
  const CliResult whole = run_cli("rank " + u23);
  CHECK(Json::parse(whole.out)["rank"] == 2);
}

TEST_CASE("circuit extraction") {
  const CliResult dep = run_cli("circuit " + u23 + " --set 0,1,2");
  CHECK(dep.code == 0);
  CHECK(Json::parse(dep.out)["circuit"].dump() == "[0,1,2]");
  const CliResult ind = run_cli("circuit " + u23 + " --set 0,1");
  CHECK(Json::parse(ind.out)["circuit"].is_null());
}

TEST_CASE("axiom check passes on a real oracle") {
  const CliResult r = run_cli("check-axioms " + u23);
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out)["ok"] == true);
}

TEST_CASE("intersect emits a reusable certificate") {
  const CliResult r = run_cli("intersect " + bip_m + " " + bip_n);
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["payload"].size() == 2);
  CHECK(j["certificate"]["common_independent"].size() == 2);

  const std::string cert = g_dir + "/cert.json";
  std::ofstream(cert) << r.out;
  const CliResult ok = run_cli("intersect " + bip_m + " " + bip_n + " --verify " + cert);
  CHECK(ok.code == 0);
  CHECK(Json::parse(ok.out)["valid"] == true);

  Json doctored = j;
  doctored["certificate"]["common_independent"] = Json::array({0, 1});
  const std::string bad = g_dir + "/cert_bad.json";
  std::ofstream(bad) << doctored.dump();
  const CliResult caught = run_cli("intersect " + bip_m + " " + bip_n + " --verify " + bad);
  CHECK(caught.code == 2);
  CHECK(Json::parse(caught.out)["valid"] == false);
}

TEST_CASE("cond reports the counter wave with exit code two") {
  const CliResult r = run_cli("cond " + u12 + " " + free2);
  CHECK(r.code == 2);
  const Json j = Json::parse(r.out);
  CHECK(j["holds"] == false);
  CHECK(j["counter_wave"].dump() == "[0,1]");

  const CliResult holds = run_cli("cond " + free2 + " " + u12);
  CHECK(holds.code == 0);
  CHECK(Json::parse(holds.out)["holds"] == true);

  const std::string stored = g_dir + "/cond.json";
  std::ofstream(stored) << r.out;
  const CliResult ok = run_cli("cond " + u12 + " " + free2 + " --verify " + stored);
  CHECK(ok.code == 0);
  CHECK(Json::parse(ok.out)["valid"] == true);
}

TEST_CASE("largest wave round-trips through verify") {
  const CliResult r = run_cli("largest-wave " + u12 + " " + free2);
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["wave_set"].dump() == "[0,1]");

  const std::string stored = g_dir + "/wave.json";
  std::ofstream(stored) << r.out;
  const CliResult ok = run_cli("largest-wave " + u12 + " " + free2 + " --verify " + stored);
  CHECK(ok.code == 0);

  Json doctored = j;
  doctored["witness"] = Json::array({0, 1});
  const std::string bad = g_dir + "/wave_bad.json";
  std::ofstream(bad) << doctored.dump();
  const CliResult caught = run_cli("largest-wave " + u12 + " " + free2 + " --verify " + bad);
  CHECK(caught.code == 2);
}

TEST_CASE("ind-span solves both directions") {
  const CliResult found = run_cli("ind-span " + free2 + " " + u12);
  CHECK(found.code == 0);
  CHECK(Json::parse(found.out)["payload"].dump() == "[0]");

  const CliResult violated = run_cli("ind-span " + u12 + " " + free2);
  CHECK(violated.code == 2);
  const Json j = Json::parse(violated.out);
  CHECK(j["status"] == "violated");
  CHECK(j["counter_wave"].dump() == "[0,1]");
  CHECK(j["violated_side"] == "mn");

  for (const std::string& out : {found.out, violated.out}) {
    const std::string stored = g_dir + "/span.json";
    std::ofstream(stored) << out;
    const std::string& lhs = out == found.out ? free2 : u12;
    const std::string& rhs = out == found.out ? u12 : free2;
    const CliResult ok = run_cli("ind-span " + lhs + " " + rhs + " --verify " + stored);
    CHECK(ok.code == 0);
  }
}

TEST_CASE("common-base on a self pair") {
  const CliResult r = run_cli("common-base " + u23 + " " + u23);
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out)["payload"].dump() == "[0,1]");

  const CliResult violated = run_cli("common-base " + u12 + " " + free2);
  CHECK(violated.code == 2);
  CHECK(Json::parse(violated.out)["violated_side"] == "mn");

  const std::string stored = g_dir + "/base.json";
  std::ofstream(stored) << r.out;
  CHECK(run_cli("common-base " + u23 + " " + u23 + " --verify " + stored).code == 0);
}

TEST_CASE("key-lemma emits traces, snapshots, and verifiable output") {
  const CliResult r = run_cli("key-lemma " + free2 + " " + u12 + " --edge 0 --trace --dot");
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["independent_set"].dump() == "[0]");
  CHECK(j["trace"]["steps"].size() == 1);
  REQUIRE(j["dot"].size() == 1);
  CHECK(j["dot"][0].get<std::string>().find("digraph") != std::string::npos);

  const std::string stored = g_dir + "/key.json";
  std::ofstream(stored) << r.out;
  const CliResult ok = run_cli("key-lemma " + free2 + " " + u12 + " --edge 0 --verify " + stored);
  CHECK(ok.code == 0);
  CHECK(Json::parse(ok.out)["valid"] == true);

  const CliResult gated = run_cli("key-lemma " + u12 + " " + free2 + " --edge 0");
  CHECK(gated.code == 2);
  CHECK(Json::parse(gated.out)["wave"].dump() == "[0,1]");
}

TEST_CASE("stream demo emits a stabilization report") {
  const CliResult r = run_cli(
      "stream-demo --family-m triangle_sum --family-n triangle_sum --windows 3,6 --targets 3");
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["runs"].size() == 2);
  CHECK(j["instrumentation_clean"] == true);
  CHECK(j["agreements"][0]["verdict"] == "stable");

  CHECK(run_cli("stream-demo --family-m moose --family-n free --windows 2 --targets 1").code == 1);
}

TEST_CASE("oracle corpus agrees with brute force") {
  const CliResult r = run_cli("oracle --seed 5 --count 4");
  CHECK(r.code == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["pairs"] == 4);
  CHECK(j["disagreements"].empty());
  CHECK(j["mutations_caught"] == 4);
}

TEST_CASE("identical invocations are byte identical") {
  const std::string cmd = "intersect " + bip_m + " " + bip_n;
  CHECK(run_cli(cmd).out == run_cli(cmd).out);
  const std::string traced = "key-lemma " + free2 + " " + u12 + " --edge 0 --trace --dot";
  CHECK(run_cli(traced).out == run_cli(traced).out);
  const std::string seeded = "oracle --seed 11 --count 3";
  CHECK(run_cli(seeded).out == run_cli(seeded).out);
}

TEST_CASE("input problems exit with code one") {
  CHECK(run_cli("rank " + g_dir + "/missing.json").code == 1);

  const std::string broken = fixture("broken.json", R"({"type":"uniform","n":)");
  const CliResult parse = run_cli("rank " + broken);
  CHECK(parse.code == 1);
  CHECK(Json::parse(parse.out)["error"].get<std::string>().find("parse error") !=
        std::string::npos);

  const std::string off = fixture("off.json", R"({"type":"uniform","n":"three","rank":1})");
  const CliResult typed = run_cli("rank " + off);
  CHECK(typed.code == 1);
  CHECK(Json::parse(typed.out)["error"].get<std::string>().find("$.n") != std::string::npos);

  CHECK(run_cli("rank " + u23 + " --set 0,5").code == 1);
  CHECK(run_cli("intersect " + u23 + " " + u12).code == 1);  // mismatched grounds
  CHECK(run_cli("no-such-command").code == 1);
}

TEST_CASE("wave search over the bound exits with code three") {
  const CliResult r = run_cli("largest-wave " + u17a + " " + u17b);
  CHECK(r.code == 3);
  const Json j = Json::parse(r.out);
  CHECK(j["bound"] == 16);

  const CliResult lifted = run_cli("largest-wave " + u17a + " " + u17b + " --bound 17");
  CHECK(lifted.code == 0);
}
