#include <unistd.h>
#include <sys/wait.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
  char const* p = std::getenv("CRS_CLI_OVERRIDE");
  if (p != nullptr && *p != '\0') {
    return p;
  }
  return CRS_CLI_PATH;  // baked in by the build
}

fs::path fresh_dir() {
  static std::atomic<int> counter{0};
  fs::path const p = fs::temp_directory_path() /
                     ("crs_cli_" + std::to_string(::getpid()) + "_" +
                      std::to_string(counter++));
  fs::create_directories(p);
  return p;
}

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(fs::path const& path) {
  std::ifstream is(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(is),
          std::istreambuf_iterator<char>()};
}

void spit(fs::path const& path, std::string const& data) {
  std::ofstream os(path, std::ios::binary);
  os << data;
  REQUIRE(os.good());
}

// Runs `<prefix> crs <args>` through the shell, capturing both streams.
RunResult run_cli(fs::path const& dir, std::string const& args,
                  std::string const& env_prefix = "") {
  fs::path const out = dir / "stdout.txt";
  fs::path const err = dir / "stderr.txt";
  std::string cmd = env_prefix;
  if (!cmd.empty()) {
    cmd += ' ';
  }
  cmd += '"' + cli_path() + "\" " + args + " > \"" + out.string() +
         "\" 2> \"" + err.string() + '"';
  int const rc = std::system(cmd.c_str());
  RunResult res;
  res.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  res.out = slurp(out);
  res.err = slurp(err);
  return res;
}

std::string sample_plaintext() {
  std::string s;
  for (int t = 0; t < 300; ++t) {
    s.push_back(static_cast<char>(t * 7 % 256));
  }
  return s;
}

}  // namespace

TEST_CASE("cli round trips every mode", "[cli]") {
  fs::path const dir = fresh_dir();
  std::string const plain = sample_plaintext();
  spit(dir / "plain.bin", plain);

  RunResult const kg = run_cli(
      dir, "keygen --modulus 257 --index-bits 16 --seed 9 --out \"" +
               (dir / "p.key").string() + '"');
  INFO(kg.err);
  REQUIRE(kg.code == 0);
  REQUIRE(kg.out.find("modulus 257 (prime)") != std::string::npos);
  REQUIRE(fs::exists(dir / "p.key"));

  RunResult const kg2 = run_cli(
      dir, "keygen --modulus 77 --seed 10 --out \"" +
               (dir / "pq.key").string() + '"');
  REQUIRE(kg2.code == 0);
  REQUIRE(kg2.out.find("(two primes)") != std::string::npos);

  struct Case {
    char const* mode;
    char const* key;
  };
  for (Case const c : {Case{"group", "p.key"}, Case{"cs", "p.key"},
                       Case{"crrsa", "pq.key"}}) {
    fs::path const ct = dir / (std::string(c.mode) + ".ct");
    fs::path const rt = dir / (std::string(c.mode) + ".rt");
    RunResult const enc = run_cli(
        dir, std::string("encrypt --key \"") + (dir / c.key).string() +
                 "\" --mode " + c.mode + " --in \"" +
                 (dir / "plain.bin").string() + "\" --out \"" + ct.string() +
                 "\" --seed 11");
    INFO(c.mode << ": " << enc.err);
    REQUIRE(enc.code == 0);
    RunResult const dec = run_cli(
        dir, std::string("decrypt --key \"") + (dir / c.key).string() +
                 "\" --mode " + c.mode + " --in \"" + ct.string() +
                 "\" --out \"" + rt.string() + '"');
    INFO(c.mode << ": " << dec.err);
    REQUIRE(dec.code == 0);
    REQUIRE(slurp(rt) == plain);
    REQUIRE(slurp(ct) != plain);
  }
}

TEST_CASE("cli seed makes ciphertext reproducible", "[cli]") {
  fs::path const dir = fresh_dir();
  spit(dir / "plain.bin", sample_plaintext());
  REQUIRE(run_cli(dir, "keygen --modulus 257 --seed 4 --out \"" +
                           (dir / "k").string() + '"')
              .code == 0);
  std::string const base = "encrypt --key \"" + (dir / "k").string() +
                           "\" --mode cs --in \"" +
                           (dir / "plain.bin").string() + "\" --out \"";
  REQUIRE(run_cli(dir, base + (dir / "a.ct").string() + "\" --seed 42")
              .code == 0);
  REQUIRE(run_cli(dir, base + (dir / "b.ct").string() + "\" --seed 42")
              .code == 0);
  REQUIRE(run_cli(dir, base + (dir / "c.ct").string() + "\" --seed 43")
              .code == 0);
  REQUIRE(slurp(dir / "a.ct") == slurp(dir / "b.ct"));
  REQUIRE(slurp(dir / "a.ct") != slurp(dir / "c.ct"));
}

TEST_CASE("cli keygen validates before writing", "[cli]") {
  fs::path const dir = fresh_dir();
  RunResult const bad = run_cli(
      dir, "keygen --modulus 4 --out \"" + (dir / "bad.key").string() + '"');
  REQUIRE(bad.code != 0);
  REQUIRE(bad.err.find("error:") != std::string::npos);
  REQUIRE_FALSE(fs::exists(dir / "bad.key"));

  RunResult const bits = run_cli(
      dir, "keygen --modulus 257 --index-bits 12 --out \"" +
               (dir / "bad2.key").string() + '"');
  REQUIRE(bits.code != 0);
  REQUIRE_FALSE(fs::exists(dir / "bad2.key"));
}

TEST_CASE("cli leaves no partial outputs on error", "[cli]") {
  fs::path const dir = fresh_dir();
  REQUIRE(run_cli(dir, "keygen --modulus 257 --seed 4 --out \"" +
                           (dir / "k").string() + '"')
              .code == 0);

  RunResult const enc = run_cli(
      dir, "encrypt --key \"" + (dir / "k").string() + "\" --in \"" +
               (dir / "missing.bin").string() + "\" --out \"" +
               (dir / "ct.bin").string() + '"');
  REQUIRE(enc.code != 0);
  REQUIRE_FALSE(fs::exists(dir / "ct.bin"));

  spit(dir / "garbage.ct", "XXXX not a stream");
  RunResult const dec = run_cli(
      dir, "decrypt --key \"" + (dir / "k").string() + "\" --in \"" +
               (dir / "garbage.ct").string() + "\" --out \"" +
               (dir / "pt.bin").string() + '"');
  REQUIRE(dec.code != 0);
  REQUIRE(dec.err.find("error:") != std::string::npos);
  REQUIRE_FALSE(fs::exists(dir / "pt.bin"));
}

TEST_CASE("cli image demo emits the full artifact set", "[cli]") {
  fs::path const dir = fresh_dir();
  std::string img = "P5\n8 8\n255\n";
  img.append(std::string(64, '\xC8'));  // constant 200
  spit(dir / "flat.pgm", img);

  RunResult const res = run_cli(
      dir, "image-demo --in \"" + (dir / "flat.pgm").string() +
               "\" --out \"" + (dir / "demo").string() + "\" --seed 5");
  INFO(res.err);
  REQUIRE(res.code == 0);
  REQUIRE(res.out.find("sidecar restore: ok") != std::string::npos);
  for (char const* name :
       {"flat.original.pgm", "flat.group.pgm", "flat.cs.pgm", "flat.cs.idx",
        "flat.diffusion.tsv"}) {
    REQUIRE(fs::exists(dir / "demo" / name));
  }
  std::string const tsv = slurp(dir / "demo" / "flat.diffusion.tsv");
  REQUIRE(tsv.rfind("value\tpixels\tgroup_distinct\tcs_distinct\n", 0) == 0);
  REQUIRE(tsv.find("\n200\t64\t1\t") != std::string::npos);
  // Group mode keeps a constant image constant.
  std::string const group = slurp(dir / "demo" / "flat.group.pgm");
  std::string const body = group.substr(group.size() - 64);
  REQUIRE(std::string(64, body[0]) == body);
}

TEST_CASE("cli totient table", "[cli]") {
  fs::path const dir = fresh_dir();
  RunResult const res = run_cli(dir, "totient --range 14:15");
  REQUIRE(res.code == 0);
  REQUIRE(res.out.rfind("n\ts\tt\tbrute_s\tbrute_t\tmatch\n", 0) == 0);
  REQUIRE(res.out.find("14\t\t2\t\t2\t1\n") != std::string::npos);
  REQUIRE(res.out.find("\n15\t3\t") != std::string::npos);

  RunResult const file = run_cli(
      dir, "totient --range 2:40 --out \"" + (dir / "t.tsv").string() + '"');
  REQUIRE(file.code == 0);
  REQUIRE(slurp(dir / "t.tsv").find("4\t\t1\t\t1\t1\n") != std::string::npos);

  REQUIRE(run_cli(dir, "totient --range 1:5").code != 0);
  REQUIRE(run_cli(dir, "totient --range abc").code != 0);
}

TEST_CASE("cli mimic enumeration", "[cli]") {
  fs::path const dir = fresh_dir();
  RunResult const res = run_cli(
      dir, "mimics --p 5 --g 2 --out \"" + (dir / "m.tsv").string() + '"');
  INFO(res.err);
  REQUIRE(res.code == 0);
  REQUIRE(res.out.find("{2, 3}") != std::string::npos);
  REQUIRE(res.out.find("even order: coset g*G^2") != std::string::npos);
  REQUIRE(slurp(dir / "m.tsv").rfind("h\tm\tq\n", 0) == 0);

  RunResult const odd = run_cli(dir, "mimics --p 7 --g 2 --order 3");
  REQUIRE(odd.code == 0);
  REQUIRE(odd.out.find("odd order: whole group") != std::string::npos);
  REQUIRE(odd.out.find("{1, 2, 4}") != std::string::npos);
}

TEST_CASE("cli pigeonhole attack", "[cli]") {
  fs::path const dir = fresh_dir();
  RunResult const res = run_cli(
      dir,
      "attack pigeonhole --modulus 257 --index-bits 4 --trials 3 --seed 1");
  INFO(res.err);
  REQUIRE(res.code == 0);
  REQUIRE(res.out.find("3/3 trials recovered") != std::string::npos);
  REQUIRE(res.out.find("** WRONG **") == std::string::npos);

  RunResult const big = run_cli(
      dir, "attack pigeonhole --modulus 257 --index-bits 32 --trials 1");
  REQUIRE(big.code == 0);
  REQUIRE(big.out.find("infeasible") != std::string::npos);
}

TEST_CASE("cli inverse pair attack", "[cli]") {
  fs::path const dir = fresh_dir();
  RunResult const res =
      run_cli(dir, "attack inverse-pair --modulus 257 --g 2 --seed 3");
  INFO(res.err);
  REQUIRE(res.code == 0);
  REQUIRE(res.out.find("(true value)") != std::string::npos);
  REQUIRE(res.out.find("rejected with IndexMismatch") != std::string::npos);
}

TEST_CASE("cli trial enumeration honors the cost cap", "[cli]") {
  fs::path const dir = fresh_dir();
  RunResult const res = run_cli(dir, "attack trial --p 5 --g 2 --target 2");
  REQUIRE(res.code == 0);
  REQUIRE(res.out.find("6 imitating pair(s)") != std::string::npos);
  REQUIRE(res.out.find("m = 3, q = 2") != std::string::npos);

  RunResult const capped =
      run_cli(dir, "attack trial --p 257 --g 2 --target 2",
              "CRS_COST_CAP=100");
  REQUIRE(capped.code != 0);
  REQUIRE(capped.err.find("error:") != std::string::npos);

  REQUIRE(run_cli(dir, "attack trial --p 257 --g 2 --target 2",
                  "CRS_COST_CAP=junk")
              .code != 0);
}

TEST_CASE("cli verify runs invariant sweeps", "[cli]") {
  fs::path const dir = fresh_dir();
  RunResult const res = run_cli(
      dir, "verify --suite crsalg --out \"" + (dir / "v.tsv").string() + '"');
  INFO(res.out);
  INFO(res.err);
  REQUIRE(res.code == 0);
  REQUIRE(res.out.find("ok   ") != std::string::npos);
  REQUIRE(res.out.find("FAIL") == std::string::npos);
  REQUIRE(slurp(dir / "v.tsv").rfind("check\tpassed\tdetail\n", 0) == 0);

  REQUIRE(run_cli(dir, "verify --suite bogus").code != 0);
}

TEST_CASE("cli rejects malformed invocations", "[cli]") {
  fs::path const dir = fresh_dir();
  REQUIRE(run_cli(dir, "").code != 0);
  REQUIRE(run_cli(dir, "frobnicate").code != 0);
  REQUIRE(run_cli(dir, "keygen").code != 0);            // --modulus required
  REQUIRE(run_cli(dir, "encrypt --mode cs").code != 0);  // missing files
  REQUIRE(run_cli(dir, "attack").code != 0);  // attack needs a subcommand
}
