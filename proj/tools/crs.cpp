// crs: completely simple semigroup cipher toolkit.
//
// Subcommands: keygen, encrypt, decrypt, image-demo, totient, mimics,
// attack {pigeonhole, inverse-pair, trial}, verify.  Every subcommand
// validates its inputs before any output file is created, and a fixed
// --seed reproduces byte-identical outputs.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "crs/attacks.hpp"
#include "crs/cipher.hpp"
#include "crs/crsalg.hpp"
#include "crs/demo.hpp"
#include "crs/error.hpp"
#include "crs/io.hpp"
#include "crs/modmath.hpp"
#include "crs/pgm.hpp"
#include "crs/rng.hpp"
#include "crs/totients.hpp"
#include "crs/verify.hpp"

namespace {

using crs::u64;

std::vector<std::uint8_t> read_file(std::string const& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) {
    throw crs::Error("cannot open " + path);
  }
  std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(is)),
                                 std::istreambuf_iterator<char>());
  if (is.bad()) {
    throw crs::Error("read failed on " + path);
  }
  return data;
}

void write_file(std::string const& path, std::vector<std::uint8_t> const& d) {
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    throw crs::Error("cannot create " + path);
  }
  os.write(reinterpret_cast<char const*>(d.data()),
           static_cast<std::streamsize>(d.size()));
  if (!os) {
    throw crs::Error("write failed on " + path);
  }
}

void write_text(std::string const& path, std::string const& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    throw crs::Error("cannot create " + path);
  }
  os << text;
  if (!os) {
    throw crs::Error("write failed on " + path);
  }
}

crs::SymmetricKey load_key(std::string const& path) {
  std::ifstream is(path);
  if (!is) {
    throw crs::Error("cannot open key file " + path);
  }
  return crs::read_key(is);
}

crs::CipherMode parse_mode(std::string const& s) {
  if (s == "group") {
    return crs::CipherMode::group;
  }
  if (s == "cs") {
    return crs::CipherMode::completely_simple;
  }
  if (s == "crrsa") {
    return crs::CipherMode::cr_rsa;
  }
  throw crs::Error("unknown mode '" + s + "' (expected group, cs or crrsa)");
}

// Seed handling: a fixed --seed makes every output byte-identical across
// runs; without one the engine is seeded from the system entropy source.
crs::Rng make_rng(std::optional<u64> const& seed) {
  if (seed) {
    return crs::Rng(*seed);
  }
  std::random_device rd;
  return crs::Rng(u64{rd()} << 32 | rd());
}

u64 cost_cap_from_env() {
  char const* raw = std::getenv("CRS_COST_CAP");
  if (raw == nullptr || *raw == '\0') {
    return crs::kDefaultCostCap;
  }
  try {
    std::size_t used = 0;
    u64 const v = std::stoull(raw, &used, 10);
    if (used != std::string(raw).size() || v == 0) {
      throw std::invalid_argument("trailing junk");
    }
    return v;
  } catch (std::exception const&) {
    throw crs::Error("CRS_COST_CAP must be a positive integer");
  }
}

// ------------------------------------------------------------- subcommands

int cmd_keygen(u64 modulus, std::string const& out,
               std::optional<u64> const& seed, unsigned index_bits) {
  if (index_bits == 0 || index_bits % 8 != 0 || index_bits > 64) {
    throw crs::Error("index bits must be a multiple of 8 in [8, 64] "
                     "(stream blocks carry whole index bytes)");
  }
  crs::Rng rng = make_rng(seed);
  crs::SymmetricKey const key =
      crs::keygen(crs::Modulus::of(modulus), rng, index_bits);
  if (key.group_order <= 4) {
    std::cerr << "warning: unit group order " << key.group_order
              << " is tiny; the exponent space is trivial\n";
  }
  std::ostringstream os;
  crs::write_key(os, key);
  write_text(out, os.str());
  std::cout << "wrote " << out << ": modulus " << modulus
            << (key.modulus.is_prime() ? " (prime)" : " (two primes)")
            << ", exponent " << key.encrypt_exp << ", index bits "
            << key.index_bits << "\n";
  return 0;
}

int cmd_encrypt(std::string const& key_path, std::string const& mode_str,
                std::string const& in, std::string const& out,
                std::optional<u64> const& seed) {
  crs::SymmetricKey const key = load_key(key_path);
  crs::CipherMode const mode = parse_mode(mode_str);
  std::vector<std::uint8_t> const plain = read_file(in);
  crs::Rng rng = make_rng(seed);
  std::vector<std::uint8_t> const stream =
      crs::encrypt_stream(mode, key, plain, rng);
  write_file(out, stream);
  std::size_t const record =
      stream.size() - crs::kStreamHeaderSize;
  std::cout << plain.size() << " bytes -> " << stream.size() << " bytes ("
            << crs::block_bits(key.modulus.value) << "-bit blocks, mode "
            << mode_name(mode) << ", " << record << " payload bytes)\n";
  return 0;
}

int cmd_decrypt(std::string const& key_path, std::string const& mode_str,
                std::string const& in, std::string const& out) {
  crs::SymmetricKey const key = load_key(key_path);
  crs::CipherMode const mode = parse_mode(mode_str);
  std::vector<std::uint8_t> const stream = read_file(in);
  std::vector<std::uint8_t> const plain =
      crs::decrypt_stream(mode, key, stream);
  write_file(out, plain);
  std::cout << stream.size() << " bytes -> " << plain.size()
            << " bytes (mode " << mode_name(mode) << ")\n";
  return 0;
}

int cmd_image_demo(std::string const& in, std::string const& out_dir,
                   std::optional<u64> const& seed, u64 exponent, u64 secret,
                   unsigned index_bits) {
  std::ifstream is(in, std::ios::binary);
  if (!is) {
    throw crs::Error("cannot open " + in);
  }
  crs::Pgm const img = crs::read_pgm(is);
  crs::SymmetricKey const key =
      crs::make_image_demo_key(exponent, secret, index_bits);
  crs::Rng rng = make_rng(seed);
  crs::ImageDemoResult const res = crs::image_demo(img, key, rng);

  // Invertibility check before anything is written.
  crs::Pgm const restored =
      crs::image_demo_restore(res.cs_image, res.cs_indices, key);
  if (restored.pixels != res.original.pixels) {
    throw crs::Error("image demo: sidecar restore mismatch");
  }

  namespace fs = std::filesystem;
  fs::path const dir = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
  fs::create_directories(dir);
  std::string const stem = fs::path(in).stem().string();
  auto emit_pgm = [&](std::string const& tag, crs::Pgm const& p) {
    std::ostringstream os;
    crs::write_pgm(os, p);
    std::string const s = os.str();
    write_file((dir / (stem + "." + tag + ".pgm")).string(),
               {s.begin(), s.end()});
  };
  emit_pgm("original", res.original);
  emit_pgm("group", res.group_image);
  emit_pgm("cs", res.cs_image);
  write_file((dir / (stem + ".cs.idx")).string(),
             crs::encode_index_sidecar(res.cs_indices, key.index_bits));

  // Diffusion table: distinct ciphertext bytes per constant plaintext value.
  std::ostringstream tsv;
  tsv << "value\tpixels\tgroup_distinct\tcs_distinct\n";
  std::size_t cs_min = SIZE_MAX;
  std::size_t group_max = 0;
  for (crs::DiffusionRow const& row : res.diffusion) {
    tsv << row.value << '\t' << row.pixels << '\t' << row.group_distinct
        << '\t' << row.cs_distinct << '\n';
    group_max = std::max(group_max, row.group_distinct);
    cs_min = std::min(cs_min, row.cs_distinct);
  }
  write_text((dir / (stem + ".diffusion.tsv")).string(), tsv.str());

  std::cout << "image " << res.original.width << "x" << res.original.height
            << ", " << res.diffusion.size() << " distinct plaintext values\n"
            << "group mode: at most " << group_max
            << " distinct output byte(s) per constant region\n"
            << "cs mode: at least "
            << (res.diffusion.empty() ? 0 : cs_min)
            << " distinct output byte(s) per constant region\n"
            << "sidecar restore: ok\n"
            << "wrote " << (dir / (stem + ".{original,group,cs}.pgm")).string()
            << ", " << (dir / (stem + ".cs.idx")).string() << ", "
            << (dir / (stem + ".diffusion.tsv")).string() << "\n";
  return 0;
}

int cmd_totient(std::string const& range, std::string const& out) {
  u64 lo = 0;
  u64 hi = 0;
  auto const sep = range.find_first_of(":-");
  try {
    if (sep == std::string::npos) {
      lo = hi = std::stoull(range);
    } else {
      lo = std::stoull(range.substr(0, sep));
      hi = std::stoull(range.substr(sep + 1));
    }
  } catch (std::exception const&) {
    throw crs::Error("bad --range, expected N or A:B");
  }
  if (lo < 2 || hi > 1'000'000 || lo > hi) {
    throw crs::Error("range must satisfy 2 <= A <= B <= 10^6");
  }
  std::ostringstream tsv;
  tsv << "n\ts\tt\tbrute_s\tbrute_t\tmatch\n";
  u64 mismatches = 0;
  for (u64 n = lo; n <= hi; ++n) {
    crs::TotientReport const r = crs::totient_report(n);
    tsv << r.n << '\t';
    if (n % 2 == 0) {
      tsv << '\t';  // s is an odd-modulus count; leave the column blank
    } else {
      tsv << r.s_value << '\t';
    }
    if (r.t.is_exact) {
      tsv << r.t.value;
    } else {
      tsv << r.t.lo << ".." << r.t.hi;
    }
    tsv << '\t';
    if (n % 2 == 0) {
      tsv << '\t';
    } else {
      tsv << r.brute_s_count << '\t';
    }
    tsv << r.brute_t_count << '\t' << (r.match ? 1 : 0) << '\n';
    if (!r.match) {
      ++mismatches;
    }
  }
  if (out.empty()) {
    std::cout << tsv.str();
  } else {
    write_text(out, tsv.str());
    std::cout << "wrote " << out << " (" << hi - lo + 1 << " rows)\n";
  }
  if (mismatches != 0) {
    std::cerr << "warning: " << mismatches
              << " rows disagree with the closed forms\n";
    return 1;
  }
  return 0;
}

int cmd_mimics(crs::GroupSpec const& group, u64 g, std::string const& out) {
  u64 const p = group.prime();
  std::vector<u64> const ms = crs::mimic_set(g, group);
  // Canonical instance x = (g*1)^{1-1}*g = g: every mimic gets a witness.
  u64 const x = g % p;
  std::ostringstream tsv;
  tsv << "h\tm\tq\n";
  std::cout << "group: order " << group.order() << " subgroup of the units"
            << " mod " << p << ", generator " << group.generator() << "\n"
            << "mimic set of g = " << g << " (" << ms.size() << " of "
            << group.order() << " elements, " <<
      (group.order() % 2 == 1 ? "odd order: whole group"
                              : "even order: coset g*G^2")
            << "): {";
  for (std::size_t t = 0; t < ms.size(); ++t) {
    std::cout << (t == 0 ? "" : ", ") << ms[t];
  }
  std::cout << "}\n";
  for (u64 const h : ms) {
    crs::ImitationSolution const w = crs::mimic_witness(h, g, x, group);
    std::cout << "  h = " << h << ": witness m = " << w.m << ", q = " << w.q
              << "  ((h*q)^(m-1)*h = " << crs::cs_power(h, w.q, w.m, p)
              << " = x)\n";
    tsv << h << '\t' << w.m << '\t' << w.q << '\n';
  }
  if (!out.empty()) {
    write_text(out, tsv.str());
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

int cmd_attack_pigeonhole(u64 modulus, unsigned index_bits,
                          std::optional<u64> const& seed, int trials,
                          std::string const& out) {
  u64 const base_seed = seed.value_or(1);
  u64 const index_space =
      index_bits >= 7 ? u64{1} << 30 : u64{1} << index_bits;
  std::ostringstream tsv;
  tsv << "trial\tstatus\texponent\ttrue_exponent\trounds\n";
  int recovered = 0;
  for (int t = 0; t < trials; ++t) {
    crs::Rng key_rng(base_seed + 2 * static_cast<u64>(t));
    crs::SymmetricKey const key = crs::keygen(
        crs::Modulus::of(modulus), key_rng,
        std::min(index_bits, 63u));
    crs::Rng oracle_rng(base_seed + 2 * static_cast<u64>(t) + 1);
    auto oracle = [&](u64 g) { return crs::cs_encrypt(g, key, oracle_rng).body; };
    crs::Rng attack_rng(base_seed + 7777 + static_cast<u64>(t));
    crs::PigeonholeResult const res =
        crs::pigeonhole_attack(oracle, modulus, index_space, attack_rng);
    switch (res.status) {
      case crs::PigeonholeResult::Status::infeasible:
        std::cout << "trial " << t << ": infeasible, index space 2^"
                  << index_bits << " exceeds the cost model\n";
        tsv << t << "\tinfeasible\t\t" << key.encrypt_exp << "\t0\n";
        break;
      case crs::PigeonholeResult::Status::not_found:
        std::cout << "trial " << t << ": no collision pinned the exponent\n";
        tsv << t << "\tnot_found\t\t" << key.encrypt_exp << "\t"
            << res.rounds << "\n";
        break;
      case crs::PigeonholeResult::Status::recovered:
        std::cout << "trial " << t << ": recovered exponent " << res.exponent
                  << " (true " << key.encrypt_exp << ") in " << res.rounds
                  << " round(s)"
                  << (res.exponent == key.encrypt_exp ? "" : "  ** WRONG **")
                  << "\n";
        tsv << t << "\trecovered\t" << res.exponent << '\t'
            << key.encrypt_exp << '\t' << res.rounds << "\n";
        ++recovered;
        break;
    }
  }
  std::cout << recovered << "/" << trials << " trials recovered the"
            << " exponent\n";
  if (!out.empty()) {
    write_text(out, tsv.str());
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

int cmd_attack_inverse_pair(u64 modulus, u64 g, std::optional<u64> const& seed,
                            std::string const& out) {
  crs::Rng rng = make_rng(seed);
  crs::SymmetricKey const key = crs::keygen(crs::Modulus::of(modulus), rng, 32);
  if (!key.modulus.is_prime()) {
    throw crs::BadModulusError("inverse-pair: modulus must be prime");
  }
  if (g % modulus == 0 || std::gcd(g, modulus) != 1) {
    throw crs::NotUnitError("inverse-pair: g must be a unit");
  }
  u64 const ginv = crs::mod_inv(static_cast<crs::i64>(g % modulus), modulus);

  // Vulnerable reuse: both plaintexts under one index.
  u64 const idx = crs::uniform_below(rng, u64{1} << key.index_bits);
  crs::CiphertextBlock const cg = crs::cs_encrypt_with_index(g, idx, key);
  crs::CiphertextBlock const cginv =
      crs::cs_encrypt_with_index(ginv, idx, key);
  crs::InversePairResult const res =
      crs::inverse_pair_attack(cg, cginv, g, key.modulus);
  u64 const true_gn = crs::pow_mod(g, key.encrypt_exp, modulus);
  std::cout << "index reuse: c_g * c_ginv = " << res.sandwich_pow_squared
            << " = (p_i^(n-1))^2\n";
  std::ostringstream tsv;
  tsv << "sandwich_pow\tgn_candidate\tis_true\n";
  for (std::size_t t = 0; t < res.gn_candidates.size(); ++t) {
    std::cout << "  candidate p_i^(n-1) = " << res.sandwich_pow_candidates[t]
              << " -> g^n = " << res.gn_candidates[t]
              << (res.gn_candidates[t] == true_gn ? "  (true value)" : "")
              << "\n";
    tsv << res.sandwich_pow_candidates[t] << '\t' << res.gn_candidates[t]
        << '\t' << (res.gn_candidates[t] == true_gn ? 1 : 0) << '\n';
  }

  // Defense: independent random indices collide only with probability
  // 2^-index_bits, and the attack refuses mismatched indices.
  crs::CiphertextBlock const dg = crs::cs_encrypt(g, key, rng);
  crs::CiphertextBlock const dginv = crs::cs_encrypt(ginv, key, rng);
  if (dg.index == dginv.index) {
    std::cout << "defense: random indices collided by chance; rerun with "
                 "another seed to see the rejection\n";
  } else {
    try {
      crs::inverse_pair_attack(dg, dginv, g, key.modulus);
      std::cout << "defense: UNEXPECTEDLY accepted mismatched indices\n";
      return 1;
    } catch (crs::IndexMismatchError const&) {
      std::cout << "defense: random indices (" << dg.index << " vs "
                << dginv.index << ") rejected with IndexMismatch\n";
    }
  }
  if (!out.empty()) {
    write_text(out, tsv.str());
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

int cmd_attack_trial(crs::GroupSpec const& group, u64 g, u64 target,
                     std::string const& out) {
  u64 const p = group.prime();
  std::vector<crs::ImitationSolution> const sols =
      crs::trial_multiplication(g, target, group, cost_cap_from_env());
  std::cout << sols.size() << " imitating pair(s) (m, q) with (g*q)^(m-1)*g"
            << " = " << target % p << " in the order-" << group.order()
            << " group mod " << p << ":\n";
  std::ostringstream tsv;
  tsv << "m\tq\n";
  std::size_t const shown = out.empty() ? sols.size() : std::size_t{20};
  for (std::size_t t = 0; t < sols.size(); ++t) {
    if (t < shown) {
      std::cout << "  m = " << sols[t].m << ", q = " << sols[t].q << "\n";
    } else if (t == shown) {
      std::cout << "  ... (" << sols.size() - shown << " more in the TSV)\n";
    }
    tsv << sols[t].m << '\t' << sols[t].q << '\n';
  }
  if (!out.empty()) {
    write_text(out, tsv.str());
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

int cmd_verify(std::string const& suite, std::string const& out) {
  std::vector<crs::verify::CheckResult> const results =
      crs::verify::run_suite(suite);
  std::ostringstream tsv;
  tsv << "check\tpassed\tdetail\n";
  int failures = 0;
  for (crs::verify::CheckResult const& r : results) {
    std::cout << (r.passed ? "ok   " : "FAIL ") << r.name << ": " << r.detail
              << "\n";
    tsv << r.name << '\t' << (r.passed ? 1 : 0) << '\t' << r.detail << '\n';
    failures += r.passed ? 0 : 1;
  }
  std::cout << results.size() - failures << "/" << results.size()
            << " checks passed\n";
  if (!out.empty()) {
    write_text(out, tsv.str());
    std::cout << "wrote " << out << "\n";
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "completely simple semigroup cipher toolkit\n"
      "TSV reports use tab-separated columns with a header row; column\n"
      "orders: totient (n, s, t, brute_s, brute_t, match), mimics (h, m,\n"
      "q), attack pigeonhole (trial, status, exponent, true_exponent,\n"
      "rounds), attack inverse-pair (sandwich_pow, gn_candidate, is_true),\n"
      "attack trial (m, q), verify (check, passed, detail).\n"
      "CRS_COST_CAP bounds enumeration sizes (default 2^24)."};
  app.require_subcommand(1);

  u64 seed_val = 0;
  auto* seed_opt = app.add_option(
      "--seed", seed_val, "RNG seed; fixed seed -> byte-identical outputs");

  // keygen
  auto* keygen = app.add_subcommand("keygen", "generate a key file");
  u64 kg_modulus = 0;
  std::string kg_out = "crs.key";
  unsigned kg_bits = 32;
  keygen->add_option("--modulus", kg_modulus,
                     "prime or product of two distinct primes")
      ->required();
  keygen->add_option("--out", kg_out, "key file path")->capture_default_str();
  keygen->add_option("--index-bits", kg_bits,
                     "index width, multiple of 8 in [8, 64]")
      ->capture_default_str();

  // encrypt / decrypt
  auto* encrypt = app.add_subcommand("encrypt", "encrypt a file");
  auto* decrypt = app.add_subcommand("decrypt", "decrypt a file");
  std::string key_path;
  std::string mode_str = "cs";
  std::string in_path;
  std::string out_path;
  for (auto* cmd : {encrypt, decrypt}) {
    cmd->add_option("--key", key_path, "key file")->required();
    cmd->add_option("--mode", mode_str, "group | cs | crrsa")
        ->capture_default_str();
    cmd->add_option("--in", in_path, "input path")->required();
    cmd->add_option("--out", out_path, "output path")->required();
  }

  // image-demo
  auto* demo = app.add_subcommand(
      "image-demo", "pixel-wise encryption demo on a P5 PGM image");
  std::string demo_in;
  std::string demo_out = ".";
  u64 demo_e = 75;
  u64 demo_s = 201;
  unsigned demo_bits = 32;
  demo->add_option("--in", demo_in, "input image (binary PGM)")->required();
  demo->add_option("--out", demo_out, "output directory")
      ->capture_default_str();
  demo->add_option("--exponent", demo_e, "encryption exponent (odd)")
      ->capture_default_str();
  demo->add_option("--secret", demo_s, "shared secret")->capture_default_str();
  demo->add_option("--index-bits", demo_bits, "index width, multiple of 8")
      ->capture_default_str();

  // totient
  auto* totient = app.add_subcommand(
      "totient", "closed-form vs brute-force totient table (TSV)");
  std::string tot_range;
  std::string tot_out;
  totient->add_option("--range", tot_range, "N or A:B with B <= 10^6")
      ->required();
  totient->add_option("--out", tot_out, "write TSV here instead of stdout");

  // mimics
  auto* mimics = app.add_subcommand(
      "mimics", "enumerate the elements imitating g, with witnesses");
  u64 mim_p = 0;
  u64 mim_g = 0;
  u64 mim_order_val = 0;
  std::string mim_out;
  mimics->add_option("--p", mim_p, "ambient prime")->required();
  mimics->add_option("--g", mim_g, "base element")->required();
  auto* mim_order_opt =
      mimics->add_option("--order", mim_order_val,
                         "cyclic subgroup order (default: whole unit group)");
  mimics->add_option("--out", mim_out, "TSV output path");

  // attack
  auto* attack = app.add_subcommand("attack", "run an attack experiment");
  attack->require_subcommand(1);
  auto* pigeon = attack->add_subcommand(
      "pigeonhole", "chosen-plaintext exponent recovery via index collisions");
  u64 pig_modulus = 257;
  unsigned pig_bits = 4;
  int pig_trials = 1;
  std::string pig_out;
  pigeon->add_option("--modulus", pig_modulus, "prime modulus")
      ->capture_default_str();
  pigeon->add_option("--index-bits", pig_bits, "index width under attack")
      ->capture_default_str();
  pigeon->add_option("--trials", pig_trials, "number of seeded trials")
      ->capture_default_str();
  pigeon->add_option("--out", pig_out, "TSV output path");

  auto* invpair = attack->add_subcommand(
      "inverse-pair", "known-plaintext attack on g, g^-1 under one index");
  u64 inv_modulus = 257;
  u64 inv_g = 2;
  std::string inv_out;
  invpair->add_option("--modulus", inv_modulus, "prime modulus")
      ->capture_default_str();
  invpair->add_option("--g", inv_g, "known plaintext unit")
      ->capture_default_str();
  invpair->add_option("--out", inv_out, "TSV output path");

  auto* trial = attack->add_subcommand(
      "trial", "exhaustive imitation enumeration for one instance");
  u64 tr_p = 0;
  u64 tr_g = 0;
  u64 tr_target = 0;
  u64 tr_order_val = 0;
  std::string tr_out;
  trial->add_option("--p", tr_p, "ambient prime")->required();
  trial->add_option("--g", tr_g, "base element")->required();
  trial->add_option("--target", tr_target, "instance value x")->required();
  auto* tr_order_opt =
      trial->add_option("--order", tr_order_val, "cyclic subgroup order");
  trial->add_option("--out", tr_out, "TSV output path");

  // verify
  auto* verify = app.add_subcommand(
      "verify", "run invariant sweeps; exits nonzero on any violation");
  std::string ver_suite = "all";
  std::string ver_out;
  verify->add_option("--suite", ver_suite, "all | crsalg | totients | attacks")
      ->capture_default_str();
  verify->add_option("--out", ver_out, "TSV output path");

  // --seed lives on the root app; let it be given after the subcommand name.
  for (auto* sub : app.get_subcommands({})) {
    sub->fallthrough();
  }
  for (auto* sub : attack->get_subcommands({})) {
    sub->fallthrough();
  }

  CLI11_PARSE(app, argc, argv);

  std::optional<u64> const seed =
      seed_opt->count() > 0 ? std::optional<u64>(seed_val) : std::nullopt;

  try {
    if (*keygen) {
      return cmd_keygen(kg_modulus, kg_out, seed, kg_bits);
    }
    if (*encrypt) {
      return cmd_encrypt(key_path, mode_str, in_path, out_path, seed);
    }
    if (*decrypt) {
      return cmd_decrypt(key_path, mode_str, in_path, out_path);
    }
    if (*demo) {
      return cmd_image_demo(demo_in, demo_out, seed, demo_e, demo_s,
                            demo_bits);
    }
    if (*totient) {
      return cmd_totient(tot_range, tot_out);
    }
    if (*mimics) {
      return cmd_mimics(mim_order_opt->count() > 0
                            ? crs::GroupSpec::subgroup_of(mim_p, mim_order_val)
                            : crs::GroupSpec::units_of(mim_p),
                        mim_g, mim_out);
    }
    if (*attack) {
      if (*pigeon) {
        return cmd_attack_pigeonhole(pig_modulus, pig_bits, seed, pig_trials,
                                     pig_out);
      }
      if (*invpair) {
        return cmd_attack_inverse_pair(inv_modulus, inv_g, seed, inv_out);
      }
      if (*trial) {
        return cmd_attack_trial(
            tr_order_opt->count() > 0
                ? crs::GroupSpec::subgroup_of(tr_p, tr_order_val)
                : crs::GroupSpec::units_of(tr_p),
            tr_g, tr_target, tr_out);
      }
    }
    if (*verify) {
      return cmd_verify(ver_suite, ver_out);
    }
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  std::cerr << "error: no subcommand\n";
  return 1;
}
