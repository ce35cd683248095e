#include <atomic>
#include <algorithm>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "bfclab/approx.hpp"
#include "bfclab/caps.hpp"
#include "bfclab/chain.hpp"
#include "bfclab/comm.hpp"
#include "bfclab/errors.hpp"
#include "bfclab/matrix.hpp"
#include "bfclab/measures.hpp"
#include "bfclab/pattern.hpp"
#include "bfclab/prng.hpp"
#include "bfclab/specnorm.hpp"
#include "bfclab/structure.hpp"
#include "bfclab/transforms.hpp"
#include "bfclab/truth_table.hpp"
#include "json.hpp"

using namespace bfclab;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

double rounded(double v) { return std::stod(float_str(v)); }

Int ipow(int base, int e) {
  Int r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

void require_json(const std::string& format) {
  if (format != "json") throw input_error("this subcommand only supports --format json");
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

TruthTable parse_fn(const std::string& fn, const std::string& hex, int n) {
  if (!fn.empty() && !hex.empty()) throw input_error("pass --fn or --hex, not both");
  if (n <= 0) throw input_error("--n is required and must be positive");
  if (!fn.empty()) return builtin(fn, n);
  if (!hex.empty()) return table_from_hex(n, hex);
  throw input_error("one of --fn or --hex is required");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

BitMat read_bit_matrix(const std::string& path) {
  ParsedMatrix pm = read_matrix(read_file(path));
  if (!pm.rational) throw input_error(path + ": 0/1 matrix required, found float mode");
  BitMat g{pm.rmat.rows, pm.rmat.cols};
  for (int i = 0; i < g.rows; ++i)
    for (int j = 0; j < g.cols; ++j) {
      const Rat& v = pm.rmat.at(i, j);
      if (v != 0 && v != 1) throw input_error(path + ": entries must be 0 or 1");
      g.at(i, j) = v == 1;
    }
  return g;
}

// ---- analyze ----

int cmd_analyze(const std::string& fn, const std::string& hex, int n,
                const std::string& eps_str, const std::string& format) {
  require_json(format);
  TruthTable f = parse_fn(fn, hex, n);
  ChainReport r = chain_report(f);

  ordered_json out;
  out["schema"] = "bfclab-analyze-v1";
  out["version"] = kVersion;
  ordered_json in;
  if (!fn.empty()) in["fn"] = fn;
  in["hex"] = table_hex(f);
  in["n"] = f.n;
  out["input"] = in;
  out["chain"] = ordered_json::parse(chain_json(r));

  ordered_json meas;
  BlockSensitivity bs = block_sensitivity(f, f.n);
  ZbsShift zs = max_zbs_shift(f);
  meas["s"] = r.s;
  meas["bs"] = r.bs;
  meas["zbs"] = zero_block_sens(f);
  meas["dt"] = r.dt;
  meas["bs_certificate"] = ordered_json::parse(certificate_json(bs.cert));
  meas["zbs_shift"] = ordered_json{{"z", zs.z}, {"k", zs.k}};
  out["measures"] = meas;

  ordered_json anfj;
  anfj["mon"] = r.mon;
  anfj["deg"] = r.deg;
  anfj["terms"] = anf_int(f);
  out["anf"] = anfj;

  Spectrum spec = fourier(f);
  ordered_json fj;
  fj["support_order"] = spec.support_order();
  fj["max_abs_coeff"] = rat_str(spec.max_abs_coeff());
  fj["squared_mass"] = rat_str(spec.squared_mass());
  std::vector<std::string> coeffs;
  for (const Rat& c : spec.coeffs) coeffs.push_back(rat_str(c));
  fj["coeffs"] = coeffs;
  out["fourier"] = fj;

  if (!eps_str.empty()) {
    Rat eps = parse_rat(eps_str);
    ApproxDegree ad = approx_degree(f, eps);
    ordered_json aj;
    aj["eps"] = rat_str(eps);
    aj["d"] = ad.d;
    std::vector<std::string> errs;
    for (const Rat& e : ad.errors) errs.push_back(rat_str(e));
    aj["errors"] = errs;
    out["approx"] = aj;
  }

  ordered_json checks = ordered_json::array();
  auto add = [&checks](const std::string& name, bool pass, const std::string& lhs,
                       const std::string& rhs) {
    checks.push_back(ordered_json{{"name", name}, {"pass", pass}, {"lhs", lhs}, {"rhs", rhs}});
  };
  Int maxrk = std::max(r.rank_and, r.rank_or);
  add("rank_equals_mon", r.rank_equals_mon, r.rank_and.str(), std::to_string(r.mon));
  add("rank_degree_lb", r.rank_degree_lb, (maxrk * maxrk * ipow(2, 3 * r.deg)).str(),
      ipow(3, 2 * r.deg).str());
  if (r.d_exact_available) {
    add("cc_rank_lb_and", ipow(2, *r.d_exact_and) >= r.rank_and, ipow(2, *r.d_exact_and).str(),
        r.rank_and.str());
    add("cc_rank_lb_or", ipow(2, *r.d_exact_or) >= r.rank_or, ipow(2, *r.d_exact_or).str(),
        r.rank_or.str());
    add("cc_dt_ub_and", *r.d_exact_and <= 2 * r.dt, std::to_string(*r.d_exact_and),
        std::to_string(2 * r.dt));
    add("cc_dt_ub_or", *r.d_exact_or <= 2 * r.dt, std::to_string(*r.d_exact_or),
        std::to_string(2 * r.dt));
  }
  add("mon_shift_lb", r.mon_shift_lb, (Int(hard_shift(f).mon) * ipow(2, r.deg)).str(),
      ipow(3, r.deg).str());
  add("dt_bs_cube", r.dt_bs_cube, std::to_string(r.dt), std::to_string(r.bs * r.bs * r.bs));
  out["checks"] = checks;
  out["chain_ok"] = r.chain_ok;

  emit(out);
  return r.chain_ok ? 0 : 1;
}

// ---- sweep ----

const std::vector<std::string> kAllChecks = {"rk-mon",  "rank-lb",    "hard-shift",
                                             "restriction", "protocol", "dt-bs3",
                                             "mono-chain",  "zbs-shift", "proj"};

bool run_check(const std::string& name, const TruthTable& f) {
  if (name == "rk-mon")
    return rational_rank(comm_matrix(f, CommMode::AND).m) == monomial_count(f);
  if (name == "rank-lb") {
    Int rk = std::max(Int(rational_rank(comm_matrix(f, CommMode::AND).m)),
                      Int(rational_rank(comm_matrix(f, CommMode::OR).m)));
    int d = degree(f);
    return rk * rk * ipow(2, 3 * d) >= ipow(3, 2 * d);
  }
  if (name == "hard-shift") {
    int d = degree(f);
    return Int(hard_shift(f).mon) * ipow(2, d) >= ipow(3, d);
  }
  if (name == "restriction") {
    if (f.n < 2) return true;
    for (int i = 1; i <= f.n; ++i)
      if (!restriction_mon_check(f, i).holds) return false;
    return true;
  }
  if (name == "protocol") {
    DepthResult dt = decision_tree_depth(f);
    for (uint32_t x = 0; x < f.size(); ++x)
      for (uint32_t y = 0; y < f.size(); ++y) {
        ProtocolTranscript a = protocol_sim(f, CommMode::AND, x, y, dt);
        if (a.output != f.value(x & y) || int(a.bits.size()) > 2 * dt.d) return false;
        ProtocolTranscript o = protocol_sim(f, CommMode::OR, x, y, dt);
        if (o.output != f.value(x | y) || int(o.bits.size()) > 2 * dt.d) return false;
      }
    return true;
  }
  if (name == "dt-bs3") {
    int bs = block_sens(f);
    return decision_tree_depth(f).d <= bs * bs * bs;
  }
  if (name == "mono-chain") return chain_report(f).chain_ok;
  if (name == "zbs-shift") {
    ZbsShift zs = max_zbs_shift(f);
    return zs.k == block_sens(f) && zero_block_sens(shift(f, zs.z)) == zs.k;
  }
  if (name == "proj") {
    if (f.constant()) return true;
    return block_sensitivity(project_to_sensitive(f).g, 2).k >= block_sens(f);
  }
  throw input_error("unknown check: " + name);
}

std::vector<std::string> parse_checks(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item == "all") {
      for (const std::string& c : kAllChecks) out.push_back(c);
      continue;
    }
    if (std::find(kAllChecks.begin(), kAllChecks.end(), item) == kAllChecks.end())
      throw input_error("unknown check: " + item);
    out.push_back(item);
  }
  if (out.empty()) throw input_error("--checks selected nothing");
  return out;
}

int cmd_sweep(int n, const std::string& checks_csv, int sample, uint64_t seed, int workers,
              const std::string& format) {
  if (format != "json" && format != "csv") throw input_error("--format must be json or csv");
  if (n < 1 || n > 4) throw input_error("sweeps cover n = 1..4");
  if (n <= 3 && sample > 0) throw input_error("sampling applies to n = 4 only");
  if (n == 4 && sample <= 0) throw input_error("n = 4 sweeps need --sample");
  if (n == 4 && sample > 65536) throw input_error("--sample exceeds the number of functions");
  if (workers < 1) throw input_error("--workers must be positive");
  std::vector<std::string> checks = parse_checks(checks_csv);

  std::vector<uint64_t> words;
  if (n <= 3) {
    uint64_t count = uint64_t(1) << (uint64_t(1) << n);
    for (uint64_t w = 0; w < count; ++w) words.push_back(w);
  } else {
    std::set<uint64_t> seen;
    SplitMix64 rng(seed);
    while (int(seen.size()) < sample) seen.insert(rng.next() & 0xFFFF);
    words.assign(seen.begin(), seen.end());
  }

  std::vector<std::vector<char>> results(words.size(), std::vector<char>(checks.size(), 0));
  std::atomic<size_t> cursor{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (size_t i = cursor.fetch_add(1); i < words.size(); i = cursor.fetch_add(1)) {
      try {
        TruthTable f = table_from_word(n, words[i]);
        for (size_t c = 0; c < checks.size(); ++c) results[i][c] = run_check(checks[c], f) ? 1 : 0;
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  int spawn = std::min<size_t>(workers, words.size());
  std::vector<std::thread> threads;
  for (int t = 0; t < spawn; ++t) threads.emplace_back(worker);
  for (std::thread& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);

  size_t failed_functions = 0;
  std::vector<size_t> check_passes(checks.size(), 0);
  ordered_json failures = ordered_json::array();
  for (size_t i = 0; i < words.size(); ++i) {
    bool all = true;
    for (size_t c = 0; c < checks.size(); ++c) {
      if (results[i][c])
        ++check_passes[c];
      else {
        all = false;
        std::string hex = table_hex(table_from_word(n, words[i]));
        failures.push_back(ordered_json{{"hex", hex}, {"check", checks[c]}});
        std::cerr << "FAIL n=" << n << " hex=" << hex << " check=" << checks[c] << "\n";
      }
    }
    if (!all) ++failed_functions;
  }

  if (format == "csv") {
    std::string header = "n,hex";
    for (const std::string& c : checks) header += "," + c;
    std::cout << header << "\n";
    for (size_t i = 0; i < words.size(); ++i) {
      std::string line = std::to_string(n) + "," + table_hex(table_from_word(n, words[i]));
      for (size_t c = 0; c < checks.size(); ++c) line += results[i][c] ? ",1" : ",0";
      std::cout << line << "\n";
    }
  } else {
    ordered_json out;
    out["schema"] = "bfclab-sweep-v1";
    out["version"] = kVersion;
    ordered_json in;
    in["n"] = n;
    in["checks"] = checks;
    if (n == 4) {
      in["sample"] = sample;
      in["seed"] = seed;
    }
    out["input"] = in;
    out["count"] = words.size();
    out["passed"] = words.size() - failed_functions;
    out["failed"] = failed_functions;
    ordered_json per;
    for (size_t c = 0; c < checks.size(); ++c) per[checks[c]] = check_passes[c];
    out["per_check_passes"] = per;
    out["failures"] = failures;
    emit(out);
  }
  return failed_functions == 0 ? 0 : 1;
}

// ---- pattern ----

RealTable parse_phi(const std::string& spec, int n) {
  if (n < 1) throw input_error("--n must be positive");
  if (spec.rfind("chi", 0) == 0) {
    uint32_t mask = 0;
    for (size_t i = 3; i < spec.size(); ++i) {
      if (spec[i] < '1' || spec[i] > '9') throw input_error("chi takes coordinate digits 1-9");
      int coord = spec[i] - '0';
      if (coord > n) throw input_error("chi coordinate beyond the block count");
      mask |= uint32_t(1) << (coord - 1);
    }
    TruthTable t(n);
    for (uint32_t u = 0; u < t.size(); ++u) t.set_bit(u, std::popcount(u & mask) & 1);
    return to_real(t);
  }
  if (spec.rfind("hex:", 0) == 0) return to_real(table_from_hex(n, spec.substr(4)));
  return to_real(builtin(spec, n));
}

int cmd_pattern(int bigN, int n, const std::string& phi_spec, const std::string& format) {
  require_json(format);
  PatternSpec spec;
  spec.N = bigN;
  spec.n = n;
  spec.phi = parse_phi(phi_spec, n);
  double closed = pattern_spectral_norm(spec);
  RatMat m = pattern_matrix(spec);
  double oracle = spectral_norm_oracle(m);
  double delta = std::abs(closed - oracle);
  bool ok = closed > 0 ? delta / closed < 1e-8 : delta < 1e-9;

  ordered_json out;
  out["schema"] = "bfclab-pattern-v1";
  out["version"] = kVersion;
  out["input"] = ordered_json{{"N", bigN}, {"n", n}, {"phi", phi_spec}};
  out["rows"] = m.rows;
  out["cols"] = m.cols;
  out["closed_form"] = rounded(closed);
  out["oracle"] = rounded(oracle);
  out["delta"] = rounded(delta);
  out["agree"] = ok;
  emit(out);
  return ok ? 0 : 1;
}

// ---- witness ----

int cmd_witness(int n, int degree, bool symmetric, const std::string& format) {
  require_json(format);
  if (n < 1) throw input_error("--n must be positive");
  if (degree < 1 || degree > n) throw input_error("--degree must lie in 1..n");
  std::optional<DualWitness> w = dual_witness(n, degree, symmetric);

  ordered_json out;
  out["schema"] = "bfclab-witness-v1";
  out["version"] = kVersion;
  out["input"] = ordered_json{{"n", n}, {"degree", degree}, {"symmetric", symmetric}};
  if (!w) {
    out["feasible"] = false;
    emit(out);
    return 0;
  }
  std::vector<TruthTable> sample;
  if (n <= 20)
    for (uint64_t s = 0; s < 8; ++s) sample.push_back(family_member(n, s));
  WitnessCheck chk = verify_witness(*w, sample);
  out["feasible"] = true;
  out["witness"] = ordered_json::parse(witness_json(*w));
  ordered_json vj;
  vj["zeroing_ok"] = chk.zeroing_ok;
  vj["l1_ok"] = chk.l1_ok;
  vj["margins_ok"] = chk.margins_ok;
  vj["ok"] = chk.ok;
  if (!chk.ok) vj["detail"] = chk.detail;
  out["verify"] = vj;
  emit(out);
  return chk.ok ? 0 : 1;
}

// ---- decompose ----

int cmd_decompose(const std::string& path, const std::string& format) {
  require_json(format);
  if (path.empty()) throw input_error("--matrix FILE is required");
  BitMat g = read_bit_matrix(path);
  ordered_json out;
  out["schema"] = "bfclab-decompose-v1";
  out["version"] = kVersion;
  out["input"] = ordered_json{{"matrix", path}, {"rows", g.rows}, {"cols", g.cols}};
  out["structure"] = ordered_json::parse(structure_json(structure_decompose(g)));
  out["gadget"] = ordered_json::parse(gadget_json(gadget_classify(g)));
  emit(out);
  return 0;
}

// ---- matrix ----

CommMode parse_mode(const std::string& mode) {
  if (mode == "and") return CommMode::AND;
  if (mode == "or") return CommMode::OR;
  if (mode == "masked") return CommMode::MASKED;
  if (mode == "composed") return CommMode::COMPOSED;
  if (mode == "raw") return CommMode::RAW;
  throw input_error("--mode must be one of and, or, masked, composed, raw");
}

int cmd_matrix(const std::string& fn, const std::string& hex, int n, const std::string& mode_str,
               uint32_t z, const std::vector<std::string>& gadget_files, const std::string& out_path,
               const std::string& format) {
  require_json(format);
  TruthTable f = parse_fn(fn, hex, n);
  CommMode mode = parse_mode(mode_str);
  std::vector<BitMat> gadgets;
  for (const std::string& g : gadget_files) gadgets.push_back(read_bit_matrix(g));
  CommMatrix cm = comm_matrix(f, mode, z, gadgets);

  ordered_json out;
  out["schema"] = "bfclab-matrix-v1";
  out["version"] = kVersion;
  ordered_json in;
  if (!fn.empty()) in["fn"] = fn;
  in["hex"] = table_hex(f);
  in["n"] = f.n;
  in["mode"] = mode_str;
  if (mode == CommMode::MASKED) in["z"] = z;
  out["input"] = in;
  out["rows"] = cm.m.rows;
  out["cols"] = cm.m.cols;
  out["rank"] = rational_rank(cm.m);
  if (cm.m.rows <= caps().exact_cc_max_side && cm.m.cols <= caps().exact_cc_max_side)
    out["d_exact"] = deterministic_cc_exact(cm.m).d;
  out["labels"] = ordered_json::parse(labels_json(cm.labels));
  if (!out_path.empty()) {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw input_error("cannot write " + out_path);
    file << write_matrix(cm.m);
    out["written"] = out_path;
  } else {
    out["matrix_text"] = write_matrix(cm.m);
  }
  emit(out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact laboratory for boolean function complexity and composed matrices"};
  app.require_subcommand(1);

  std::string fn, hex, eps, format = "json", phi, matrix_path, mode = "and", out_path, checks = "all";
  std::vector<std::string> gadget_files;
  int n = 0, bigN = 0, degree = 0, sample = 0, workers = 1;
  uint64_t seed = 0;
  uint32_t z = 0;
  bool symmetric = false;
  int rc = 0;

  CLI::App* analyze = app.add_subcommand("analyze", "full report for one function");
  analyze->add_option("--fn", fn, "builtin name: AND, OR, XOR, MAJ, EQ");
  analyze->add_option("--hex", hex, "truth table hex, least significant digit first");
  analyze->add_option("--n", n, "arity");
  analyze->add_option("--eps", eps, "also report the approximation degree at this threshold (p/q)");
  analyze->add_option("--format", format, "output format (json)");
  analyze->callback([&]() { rc = cmd_analyze(fn, hex, n, eps, format); });

  CLI::App* sweep = app.add_subcommand("sweep", "run invariant checks over all functions of an arity");
  sweep->add_option("--n", n, "arity (1-3 exhaustive, 4 sampled)")->required();
  sweep->add_option("--checks", checks, "comma-separated check names, or all");
  sweep->add_option("--sample", sample, "number of distinct sampled functions at n = 4");
  sweep->add_option("--seed", seed, "sampling seed");
  sweep->add_option("--workers", workers, "worker threads");
  sweep->add_option("--format", format, "json or csv");
  sweep->callback([&]() { rc = cmd_sweep(n, checks, sample, seed, workers, format); });

  CLI::App* pattern = app.add_subcommand("pattern", "closed-form vs materialized pattern matrix norm");
  pattern->add_option("--N", bigN, "total coordinates")->required();
  pattern->add_option("--n", n, "number of blocks")->required();
  pattern->add_option("--phi", phi, "block function: chi<digits>, builtin name, or hex:<digits>")
      ->required();
  pattern->add_option("--format", format, "output format (json)");
  pattern->callback([&]() { rc = cmd_pattern(bigN, n, phi, format); });

  CLI::App* witness = app.add_subcommand("witness", "dual witness for the approximation family");
  witness->add_option("--n", n, "arity")->required();
  witness->add_option("--degree", degree, "zeroing degree")->required();
  witness->add_flag("--symmetric", symmetric, "solve over level weights");
  witness->add_option("--format", format, "output format (json)");
  witness->callback([&]() { rc = cmd_witness(n, degree, symmetric, format); });

  CLI::App* decompose = app.add_subcommand("decompose", "block structure of a 0/1 matrix");
  decompose->add_option("--matrix", matrix_path, "matrix file")->required();
  decompose->add_option("--format", format, "output format (json)");
  decompose->callback([&]() { rc = cmd_decompose(matrix_path, format); });

  CLI::App* matrix = app.add_subcommand("matrix", "materialize a composed sign matrix");
  matrix->add_option("--fn", fn, "builtin name");
  matrix->add_option("--hex", hex, "truth table hex");
  matrix->add_option("--n", n, "arity");
  matrix->add_option("--mode", mode, "and, or, masked, composed, raw");
  matrix->add_option("--z", z, "mask for masked mode");
  matrix->add_option("--gadget", gadget_files, "gadget matrix file, one per input (composed mode)");
  matrix->add_option("--out", out_path, "write the matrix text here instead of inline");
  matrix->add_option("--format", format, "output format (json)");
  matrix->callback([&]() { rc = cmd_matrix(fn, hex, n, mode, z, gadget_files, out_path, format); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const cap_error& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
