#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <dxs/edit_distance.hpp>
#include <dxs/edit_ecc.hpp>
#include <dxs/harness.hpp>
#include <dxs/sketch_protocol.hpp>

namespace {

using dxs::BitString;

std::vector<uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return std::vector<uint8_t>(std::istreambuf_iterator<char>(in),
                              std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::vector<uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

// Files are raw bytes interpreted MSB-first; --bits pins the exact length of
// strings that are not byte-aligned.
BitString read_bits(const std::string& path, uint64_t bits) {
  std::vector<uint8_t> bytes = read_file(path);
  if (bits == 0) bits = bytes.size() * 8;
  return BitString::from_bytes(bytes, bits);
}

double ms_between(std::chrono::steady_clock::time_point a,
                  std::chrono::steady_clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

struct BenchOptions {
  uint32_t nmin = 10, nmax = 16;
  std::vector<uint32_t> ks{1, 2, 4, 8, 16};
  uint32_t trials = 100;
  uint64_t seed = 1;
  std::string out;
};

int run_bench(const BenchOptions& opt) {
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!opt.out.empty()) {
    file.open(opt.out, std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open " + opt.out);
    os = &file;
  }
  std::vector<uint32_t> ks = opt.ks;
  std::sort(ks.begin(), ks.end());
  *os << "n,k,sketch_bits,ecc_redundancy_bits,encode_ms,decode_ms,"
         "trial_count,success_count\n";
  bool all_ok = true;
  for (uint32_t e = opt.nmin; e <= opt.nmax; ++e) {
    const uint64_t n = uint64_t{1} << e;
    for (uint32_t k : ks) {
      double enc = 0, dec = 0;
      uint32_t success = 0;
      uint64_t sketch_bits = 0;
      for (uint32_t t = 0; t < opt.trials; ++t) {
        uint64_t s0 = dxs::mix_seed(opt.seed, (uint64_t{e} << 40) | (uint64_t{k} << 20) | t);
        BitString ta = dxs::random_bits(n, s0);
        BitString tb = dxs::apply_random_edits(ta, k, dxs::mix_seed(s0, 1));
        auto t0 = std::chrono::steady_clock::now();
        std::vector<uint8_t> wire = dxs::serialize_sketch(dxs::build_sketch(ta, k));
        auto t1 = std::chrono::steady_clock::now();
        dxs::ReconstructResult rec = dxs::reconstruct(tb, dxs::parse_sketch(wire));
        auto t2 = std::chrono::steady_clock::now();
        enc += ms_between(t0, t1);
        dec += ms_between(t1, t2);
        sketch_bits = wire.size() * 8;
        if (rec.text == ta) ++success;
      }
      if (success != opt.trials) all_ok = false;
      char row[256];
      std::snprintf(row, sizeof row, "%llu,%u,%llu,%llu,%.3f,%.3f,%u,%u\n",
                    static_cast<unsigned long long>(n), k,
                    static_cast<unsigned long long>(sketch_bits),
                    static_cast<unsigned long long>(dxs::ecc_protected_bits(n, k)),
                    enc / opt.trials, dec / opt.trials, opt.trials, success);
      *os << row;
    }
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"one-way document exchange under edit distance"};
  app.require_subcommand(1);

  std::string in, out, sketch_path, a_path, b_path, out_a, out_b;
  uint64_t bits = 0, bits_a = 0, bits_b = 0, n_bits = 0, seed = 1;
  uint32_t k = 0, edits = 0;
  bool force_k = false;
  BenchOptions bench;

  CLI::App* c_sketch = app.add_subcommand("sketch", "emit a sketch for a file");
  c_sketch->add_option("--in", in)->required();
  c_sketch->add_option("--k", k)->required();
  c_sketch->add_option("--out", out)->required();
  c_sketch->add_option("--bits", bits, "exact bit length of the input");

  CLI::App* c_rec = app.add_subcommand("reconstruct", "recover a file from a sketch");
  c_rec->add_option("--in", in)->required();
  c_rec->add_option("--sketch", sketch_path)->required();
  c_rec->add_option("--out", out)->required();
  c_rec->add_option("--bits", bits);

  CLI::App* c_ecc_enc = app.add_subcommand("ecc-encode", "edit-error codeword");
  c_ecc_enc->add_option("--in", in)->required();
  c_ecc_enc->add_option("--k", k)->required();
  c_ecc_enc->add_option("--out", out)->required();
  c_ecc_enc->add_option("--bits", bits);
  c_ecc_enc->add_flag("--force-k", force_k, "allow k beyond n^(1/3)");

  CLI::App* c_ecc_dec = app.add_subcommand("ecc-decode", "decode an edit-error codeword");
  c_ecc_dec->add_option("--in", in)->required();
  c_ecc_dec->add_option("--n", n_bits, "payload bit length")->required();
  c_ecc_dec->add_option("--k", k)->required();
  c_ecc_dec->add_option("--out", out)->required();
  c_ecc_dec->add_option("--bits", bits, "received bit length");

  CLI::App* c_gen = app.add_subcommand("gen", "generate a test pair at distance <= e");
  c_gen->add_option("--n", n_bits, "bit length of the source")->required();
  c_gen->add_option("--e", edits)->required();
  c_gen->add_option("--seed", seed);
  c_gen->add_option("--out-a", out_a)->required();
  c_gen->add_option("--out-b", out_b)->required();

  CLI::App* c_verify = app.add_subcommand("verify", "print the edit distance of two files");
  c_verify->add_option("--a", a_path)->required();
  c_verify->add_option("--b", b_path)->required();
  c_verify->add_option("--bits-a", bits_a);
  c_verify->add_option("--bits-b", bits_b);

  CLI::App* c_bench = app.add_subcommand("bench", "round-trip benchmark grid, CSV output");
  c_bench->add_option("--nmin", bench.nmin, "log2 of the smallest n");
  c_bench->add_option("--nmax", bench.nmax, "log2 of the largest n");
  c_bench->add_option("--ks", bench.ks)->delimiter(',');
  c_bench->add_option("--trials", bench.trials);
  c_bench->add_option("--seed", bench.seed);
  c_bench->add_option("--out", bench.out, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (c_sketch->parsed()) {
      BitString ta = read_bits(in, bits);
      write_file(out, dxs::serialize_sketch(dxs::build_sketch(ta, k)));
      return 0;
    }
    if (c_rec->parsed()) {
      BitString tb = read_bits(in, bits);
      dxs::Sketch sk = dxs::parse_sketch(read_file(sketch_path));
      dxs::ReconstructResult rec = dxs::reconstruct(tb, sk);
      write_file(out, rec.text.to_bytes());
      if (rec.detected_failure) {
        std::cerr << "reconstruct: detected failure, output is best-effort\n";
        return 1;
      }
      return 0;
    }
    if (c_ecc_enc->parsed()) {
      BitString s = read_bits(in, bits);
      dxs::EditCodeword cw = dxs::ecc_encode(s, k, force_k);
      BitString full = cw.full();
      write_file(out, full.to_bytes());
      std::cout << "codeword_bits=" << full.size() << "\n";
      return 0;
    }
    if (c_ecc_dec->parsed()) {
      BitString rx = read_bits(in, bits);
      dxs::EccDecodeResult res = dxs::ecc_decode(rx, n_bits, k);
      write_file(out, res.text.to_bytes());
      if (res.detected_failure) {
        std::cerr << "ecc-decode: detected failure, output is best-effort\n";
        return 1;
      }
      return 0;
    }
    if (c_gen->parsed()) {
      BitString ta = dxs::random_bits(n_bits, seed);
      BitString tb = dxs::apply_random_edits(ta, edits, dxs::mix_seed(seed, 1));
      write_file(out_a, ta.to_bytes());
      write_file(out_b, tb.to_bytes());
      std::cout << "a_bits=" << ta.size() << "\n" << "b_bits=" << tb.size() << "\n";
      return 0;
    }
    if (c_verify->parsed()) {
      BitString a = read_bits(a_path, bits_a);
      BitString b = read_bits(b_path, bits_b);
      std::cout << dxs::edit_distance(a, b) << "\n";
      return 0;
    }
    if (c_bench->parsed()) {
      return run_bench(bench);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
