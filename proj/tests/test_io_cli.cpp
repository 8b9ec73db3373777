#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "catch_amalgamated.hpp"
#include "hclab/io.hpp"
#include "runner.hpp"
#include "support.hpp"

using namespace hclab;
using namespace hclab::testing;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code;
  std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + "\"" HCLAB_CLI_PATH "\" " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("hclab_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("complex and matrix JSON round trips", "[io][property]") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix m = random_matrix(rng, 1 + static_cast<Index>(rng() % 4), 1 + static_cast<Index>(rng() % 4));
    CHECK(io::matrix_from_json(json::parse(io::to_json(m).dump())) == m);
    const ComplexVector v = random_vector(rng, 5);
    CHECK(io::vector_from_json(io::to_json(v)) == v);
  }
  CHECK(io::to_json(Complex(2.5)) == json(2.5));
  CHECK(io::to_json(Complex(1.0, -2.0)) == json::array({1.0, -2.0}));
  CHECK_THROWS_AS(io::complex_from_json(json("x")), InputError);
  CHECK_THROWS_AS(io::matrix_from_json(json::array({json::array({1, 2}), json::array({1})})), InputError);
}

TEST_CASE("rational JSON parsing", "[io]") {
  CHECK(io::rational_from_json(json(3)) == 3);
  CHECK(io::rational_from_json(json("6/4")) == mpq_class(3, 2));
  CHECK(io::rational_from_json(json("-0.25")) == mpq_class(-1, 4));
  CHECK(io::to_json(mpq_class(-1, 12)) == json("-1/12"));
  CHECK_THROWS_AS(io::rational_from_json(json("1/0")), InputError);
  CHECK_THROWS_AS(io::rational_from_json(json("abc")), InputError);
  const RationalMatrix m{{1, mpq_class(1, 2)}, {mpq_class(-3, 7), 0}};
  CHECK(io::rational_matrix_from_json(io::to_json(m)) == m);
}

TEST_CASE("rational JSON round trips", "[io][property]") {
  std::mt19937_64 rng(72);
  for (int trial = 0; trial < 200; ++trial) {
    const mpq_class q = random_rational(rng, 1000, 97);
    CHECK(io::rational_from_json(io::to_json(q)) == q);
  }
}

TEST_CASE("envelopes and CSV", "[io]") {
  const json e = io::envelope("detan", {{"max-n", 2}}, {{"ok", true}});
  CHECK(e["schema_version"] == io::kSchemaVersion);
  CHECK(e["command"] == "detan");
  CHECK(io::dump(e).back() == '\n');
  CHECK(io::csv({"n", "value"}, {{1, 0.5}, {2, 0.25}}) == "n,value\n1,0.5\n2,0.25\n");
  CHECK_THROWS_AS(io::write_file("/nonexistent-dir/x.json", "{}"), InputError);
}

TEST_CASE("option resolution", "[cli]") {
  const auto& cmd = cli::find_command("salas");
  const json p = cli::resolve(cmd, {{"c", 3}});
  CHECK(p["c"] == 3);
  CHECK(p["weights"] == "genshi-hc");
  CHECK_THROWS_AS(cli::resolve(cmd, {{"bogus", 1}}), InputError);
  CHECK_THROWS_AS(cli::resolve(cmd, {{"m-max", "ten"}}), InputError);
  CHECK_THROWS_AS(cli::find_command("nope"), InputError);
  CHECK(cli::commands().size() == 14);
  const auto& jordan = cli::find_command("jordan");
  for (const auto& opt : jordan.options)
    if (opt.name == "z") CHECK(cli::parse_flag(opt, "2,4") == json::array({2, 4}));
}

TEST_CASE("renders are deterministic and carry the schema", "[cli][property]") {
  for (const auto& cmd : cli::commands()) {
    if (cmd.name == "volterra" || cmd.name == "saan-group" || cmd.name == "mixing") continue;
    const auto a = cli::render(cmd.name, json::object(), "json");
    const auto b = cli::render(cmd.name, json::object(), "json");
    CHECK(a.text == b.text);
    const json j = json::parse(a.text);
    CHECK(j["schema_version"] == io::kSchemaVersion);
    CHECK(j["command"] == cmd.name);
  }
}

TEST_CASE("verdict exit codes through render", "[cli]") {
  CHECK(cli::render("salas", {{"weights", "genshi-hc"}, {"c", 2}, {"m0", 3}}, "json").exit_code == cli::kExitOk);
  CHECK(cli::render("salas", {{"weights", "constant"}, {"c", 1}}, "json").exit_code == cli::kExitViolated);
  CHECK(cli::render("regions", {{"builtin", "V"}}, "json").exit_code == cli::kExitViolated);
  CHECK(cli::render("grading", {{"mode", "member"}}, "json").exit_code == cli::kExitOk);
  CHECK(cli::render("grading", {{"mode", "member"}, {"y", json::array({json::array({1}), json::array({1})})}}, "json")
            .exit_code == cli::kExitViolated);
  const auto inapplicable = cli::render("density", {{"mode", "supercyclic"}, {"family", "unipotent"}, {"dim", 4}}, "json");
  CHECK(inapplicable.exit_code == cli::kExitViolated);
  CHECK_THROWS_AS(cli::render("detan", json::object(), "xml"), InputError);
}

TEST_CASE("golden suites regenerate byte-identically", "[cli]") {
  const auto first = cli::emit_goldens("nilpotent");
  const auto second = cli::emit_goldens("nilpotent");
  CHECK(first == second);
  CHECK(first.count("nilpotent_jordan.json") == 1);
  CHECK(cli::emit_goldens("volterra").count("volterra_trace.csv") == 1);
  CHECK_THROWS_AS(cli::emit_goldens("nope"), InputError);
  for (const auto& [name, text] : first) {
    const fs::path committed = fs::path(HCLAB_GOLDEN_DIR) / name;
    if (fs::exists(committed)) CHECK(slurp(committed) == text);
  }
}

TEST_CASE("spec examples through the binary", "[cli][e2e]") {
  const auto salas = run_cli("salas --weights genshi-hc --c 2 --m0 3");
  CHECK(salas.code == 0);
  CHECK(json::parse(salas.out)["report"]["verdict"] == "satisfied");

  const auto regions = run_cli("regions --builtin U --transform shift1");
  CHECK(regions.code == 0);
  const json r = json::parse(regions.out)["report"];
  CHECK(r["verdict"] == "intersects-circle");
  bool found = false;
  for (const auto& w : r["witnesses"]) found = found || (std::abs(w[0].get<double>() + 0.2) < 1e-12 && std::abs(w[1].get<double>() - 0.6) < 1e-12);
  CHECK(found);

  const auto detan = run_cli("detan --max-n 8");
  CHECK(detan.code == 0);
  CHECK(detan.out.find("recurrence = direct") != std::string::npos);
}

TEST_CASE("every subcommand honours the exit-code contract", "[cli][e2e]") {
  const std::vector<std::pair<std::string, int>> cases = {
      {"detan --max-n 4 --max-k 4", 0},
      {"jordan --n 2 --trials 2", 0},
      {"jordan --n 2 --bogus 1", 1},
      {"tensor --m 16", 0},
      {"kerim --k 16", 0},
      {"kerim --x '[0,0,0,1]'", 2},
      {"salas", 0},
      {"salas --weights constant --c 1", 2},
      {"salas --m-max two", 1},
      {"subspaces --mode lambda --family unipotent", 0},
      {"subspaces --mode ebs --blocks 1,2", 0},
      {"subspaces --mode nope", 1},
      {"perturb", 0},
      {"perturb --dim 4 --n 2", 2},
      {"regions --samples 10000", 0},
      {"regions --builtin V --samples 10000", 2},
      {"symmetry --trials 10", 0},
      {"symmetry --mode bilinear --target random", 2},
      {"grading", 0},
      {"grading --mode member --y '[[1],[1]]'", 2},
      {"grading --mode independent --vectors '[[[1]],[[0,1]]]'", 2},
      {"mixing --horizon 16", 0},
      {"mixing --family rotation --dim 3 --radius-u 0.1 --radius-v 0.1 --horizon 8 --u '[1,1,1]' --v '[3,3,3]'", 2},
      {"density --samples 32", 0},
      {"density --mode supercyclic --family unipotent --dim 4", 2},
      {"volterra --ngrid 256 --n-max 8", 0},
      {"volterra --q 2", 1},
      {"saan-group --degree 4 --trials 2", 0},
      {"nope", 1},
  };
  for (const auto& [args, expected] : cases) {
    INFO(args);
    CHECK(run_cli(args).code == expected);
  }
}

TEST_CASE("config files, output paths and the output directory", "[cli][e2e]") {
  const fs::path dir = scratch("config");
  {
    std::ofstream cfg(dir / "run.json");
    cfg << json{{"command", "detan"}, {"params", {{"max-n", 3}}}, {"format", "csv"}, {"output", (dir / "out.csv").string()}}.dump();
  }
  CHECK(run_cli("run --config " + (dir / "run.json").string()).code == 0);
  const std::string csv = slurp(dir / "out.csv");
  CHECK(csv.rfind("n,k,", 0) == 0);
  CHECK(csv == cli::render("detan", {{"max-n", 3}}, "csv").text);

  {
    std::ofstream cfg(dir / "bad.json");
    cfg << json{{"command", "detan"}, {"extra", 1}}.dump();
  }
  CHECK(run_cli("run --config " + (dir / "bad.json").string()).code == 1);
  CHECK(run_cli("run --config " + (dir / "missing.json").string()).code == 1);
  CHECK(run_cli("detan --max-n 2 -o /nonexistent-dir/x.json").code == 1);

  CHECK(run_cli("grading", "HCLAB_OUTPUT_DIR=" + dir.string()).code == 0);
  CHECK(fs::exists(dir / "grading.json"));

  const fs::path g1 = dir / "g1", g2 = dir / "g2";
  CHECK(run_cli("emit-goldens --suite criteria --dir " + g1.string()).code == 0);
  CHECK(run_cli("emit-goldens --suite criteria --dir " + g2.string()).code == 0);
  for (const auto& entry : fs::directory_iterator(g1)) CHECK(slurp(entry.path()) == slurp(g2 / entry.path().filename()));
  fs::remove_all(dir);
}

TEST_CASE("thread count does not change density reports", "[cli][e2e]") {
  const auto one = run_cli("density --samples 64 --threads 1");
  const auto four = run_cli("density --samples 64 --threads 4");
  CHECK(one.code == 0);
  CHECK(one.out == four.out);
}
