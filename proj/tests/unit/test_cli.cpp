#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <nlohmann/json.hpp>

#include "egyfrac/cli.hpp"

namespace fs = std::filesystem;
using namespace egyfrac::cli;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "egyfrac");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("egyfrac-cli-test-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string write_set(const fs::path& dir, const std::string& name, const std::string& body) {
  const fs::path p = dir / name;
  write_file(p, body);
  return p.string();
}

}  // namespace

TEST_CASE("sha256 and csv helpers") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CsvWriter w({"a", "b"});
  w.row({"1", "x\ny"});
  CHECK(w.str() == "a,b\r\n1,\"x\ny\"\r\n");
  CHECK_THROWS(w.row({"1"}));
}

TEST_CASE("solve exit codes and output") {
  const auto dir = scratch("solve");
  const auto yes = write_set(dir, "yes.txt", "2\n3\n4\n5\n6\n");
  const auto no = write_set(dir, "no.txt", "3\n4\n5\n");
  const auto bad = write_set(dir, "bad.txt", "2\nthree\n");

  const Run a = run_cli({"solve", yes, "--target", "1/1"});
  CHECK(a.code == 0);
  const auto j = json::parse(a.out);
  CHECK(j.at("status") == "found");
  CHECK(j.at("witness") == json::array({2, 3, 6}));

  CHECK(run_cli({"solve", no, "--target", "1/1"}).code == 1);
  const Run m = run_cli({"solve", bad});
  CHECK(m.code == 64);
  CHECK(m.err.find("three") != std::string::npos);
  CHECK(run_cli({"solve", yes, "--target", "x/y"}).code == 64);
  CHECK(run_cli({"solve", yes, "--strategy", "nope"}).code == 64);
  CHECK(run_cli({"solve", (dir / "missing.txt").string()}).code == 66);
  CHECK(run_cli({"solve"}).code == 64);
  CHECK(run_cli({}).code == 64);

  const auto big = write_set(dir, "big.txt", "[3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23,24]");
  CHECK(run_cli({"solve", big, "--strategy", "dfs_bnb", "--budget", "2", "--no-prefilter"}).code == 2);

  // JSON input and --out with a manifest.
  const auto js = write_set(dir, "set.json", "[6, 3, 2]");
  const auto outp = (dir / "res" / "r.json").string();
  CHECK(run_cli({"--out", outp, "solve", js}).code == 0);
  const auto manifest = json::parse(read_file(outp + ".manifest.json"));
  CHECK(manifest.at("command") == "solve");
  CHECK(manifest.at("input_digest") == sha256_hex("[6, 3, 2]"));
  CHECK(manifest.at("output_path") == outp);
  CHECK(manifest.at("parameters").at("target") == "1/1");
  CHECK(json::parse(read_file(outp)).at("status") == "found");
}

TEST_CASE("fourier command") {
  const auto dir = scratch("fourier");
  const Run a = run_cli({"fourier", write_set(dir, "a.txt", "2\n3\n6\n"), "--k", "1", "--K", "2"});
  CHECK(a.code == 0);
  const auto j = json::parse(a.out);
  CHECK(j.at("consistent") == true);
  CHECK(j.at("F") == 2);
  CHECK(j.at("major_hs") == json::array({-1, 1}));
  const Run b = run_cli({"fourier", write_set(dir, "b.txt", "2\n3\n"), "-k", "1"});
  CHECK(json::parse(b.out).at("F") == 1);
  std::string many;
  for (int n = 2; n <= 40; ++n) many += std::to_string(n) + "\n";
  const Run c = run_cli({"fourier", write_set(dir, "c.txt", many)});
  CHECK(c.code == 3);
  CHECK(run_cli({"fourier", write_set(dir, "d.txt", "2\n"), "--k", "0"}).code == 64);
}

TEST_CASE("count, decompose and prune commands") {
  const auto dir = scratch("misc");
  const auto f = write_set(dir, "a.txt", "2\n3\n4\n6\n12\n");
  CHECK(json::parse(run_cli({"count", f, "--target", "1"}).out).at("count") == "2");
  CHECK(json::parse(run_cli({"count", f, "--k", "1"}).out).at("F") == "3");
  const auto d = json::parse(run_cli({"decompose", write_set(dir, "d.txt", "12\n18\n")}).out);
  CHECK(d.at("qset") == json::array({2, 3, 4, 9}));
  CHECK(d.at("masses").at("4") == "1/3");
  const auto p = json::parse(run_cli({"prune", write_set(dir, "p.txt", "100\n"), "--theta", "3/10"}).out);
  CHECK(p.at("final").empty());
  const Run w = run_cli({"prune", write_set(dir, "w.txt", "4\n5\n6\n20\n"), "--alpha", "1/2", "--M", "4"});
  CHECK(w.code == 0);
  CHECK(json::parse(w.out).at("final") == json::array({5, 6, 20}));
  CHECK(run_cli({"prune", write_set(dir, "e.txt", "2\n3\n6\n"), "--alpha", "2", "--M", "2"}).code == 65);
  CHECK(run_cli({"prune", write_set(dir, "i.txt", "6\n"), "--alpha", "1/12", "--theta", "1/2", "--M", "6"})
            .code == 6);
}

TEST_CASE("experiments write artifacts under the output root") {
  const auto dir = scratch("exp");
  const Run l = run_cli({"--out", dir.string(), "experiment", "lambda", "--max", "10"});
  CHECK(l.code == 0);
  const std::string csv = read_file(dir / "lambda.csv");
  CHECK(csv.rfind("N,lambda_exact,lambda_float,witness,nodes\r\n2,1/2,", 0) == 0);
  CHECK(csv.find("\r\n5,77/60,") != std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 10);  // header + N = 2..10

  CHECK(run_cli({"--out", dir.string(), "experiment", "mertens", "--X", "1000"}).code == 0);
  const std::string m = read_file(dir / "mertens.csv");
  CHECK(m.find("\r\n1000,") != std::string::npos);

  CHECK(run_cli({"--out", dir.string(), "experiment", "pomerance", "--N", "200", "--C", "1"}).code == 0);
  const std::string p = read_file(dir / "pomerance.csv");
  CHECK(p.find("\r\n200,1,") != std::string::npos);
  CHECK(p.find(",true\r\n") != std::string::npos);

  CHECK(run_cli({"--out", dir.string(), "experiment", "sieve", "--N", "10000", "--y", "3", "--z", "20"})
            .code == 0);
  CHECK(json::parse(read_file(dir / "sieve.json")).contains("X_count"));

  CHECK(run_cli({"--out", dir.string(), "experiment", "prune-demo"}).code == 0);
  const auto demo = json::parse(read_file(dir / "prune-demo.json"));
  CHECK_FALSE(demo.at("windows").empty());
  for (const auto& w : demo.at("windows")) {
    if (w.contains("consistent")) CHECK(w.at("consistent") == true);
  }

  // Global options may also follow the subcommand.
  const auto late = scratch("late");
  CHECK(run_cli({"experiment", "lambda", "--max", "4", "--out", late.string()}).code == 0);
  CHECK(fs::exists(late / "lambda.csv"));
  CHECK(fs::exists(late / "lambda.manifest.json"));

  CHECK(run_cli({"experiment", "bogus"}).code == 64);
}

TEST_CASE("EGYFRAC_OUT_DIR sets the root and runs are reproducible") {
  const auto dir = scratch("env");
  ::setenv("EGYFRAC_OUT_DIR", dir.string().c_str(), 1);
  CHECK(output_root("") == dir);
  CHECK(output_root("elsewhere") == fs::path("elsewhere"));
  CHECK(run_cli({"experiment", "lambda", "--max", "8"}).code == 0);
  const std::string first = read_file(dir / "lambda.csv");
  const std::string first_manifest = read_file(dir / "lambda.manifest.json");
  CHECK(run_cli({"experiment", "lambda", "--max", "8"}).code == 0);
  CHECK(read_file(dir / "lambda.csv") == first);
  CHECK(read_file(dir / "lambda.manifest.json") == first_manifest);
  ::unsetenv("EGYFRAC_OUT_DIR");

  const auto f = write_set(dir, "a.txt", "2\n3\n5\n6\n7\n10\n15\n");
  const Run a = run_cli({"fourier", f, "--K", "3"});
  const Run b = run_cli({"--threads", "3", "--simd", "scalar", "fourier", f, "--K", "3"});
  CHECK(a.out == b.out);
}
