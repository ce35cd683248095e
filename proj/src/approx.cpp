#include "bfclab/approx.hpp"

#include <bit>
#include <stdexcept>

#include "bfclab/caps.hpp"
#include "bfclab/errors.hpp"
#include "bfclab/prng.hpp"
#include "bfclab/simplex.hpp"
#include "bfclab/transforms.hpp"
#include "json.hpp"

namespace bfclab {

namespace {

int chi(uint32_t x, uint32_t s) { return std::popcount(x & s) & 1 ? -1 : +1; }

std::vector<uint32_t> masks_up_to(int n, int d) {
  std::vector<uint32_t> out;
  for (uint32_t s = 0; s < (uint32_t(1) << n); ++s)
    if (std::popcount(s) <= d) out.push_back(s);
  return out;
}

// Krawtchouk value: sum over weight-t points of chi_S with |S| = j
Rat krawtchouk(int n, int j, int t) {
  Rat sum = 0;
  for (int i = 0; i <= j; ++i) {
    Rat term = Rat(binom(j, i) * binom(n - j, t - i));
    sum += (i & 1) ? -term : term;
  }
  return sum;
}

}  // namespace

Rat best_approx_error(const TruthTable& f, int d) {
  if (f.n > caps().approx_max_n)
    throw cap_error("approximation cap approx_max_n=" + std::to_string(caps().approx_max_n) +
                    " exceeded by arity " + std::to_string(f.n));
  if (d < 0) throw input_error("degree must be nonnegative");
  d = std::min(d, f.n);
  auto masks = masks_up_to(f.n, d);
  int ns = int(masks.size());

  // variables: one free coefficient per character, then the error bound t
  LPProblem lp;
  lp.num_vars = ns + 1;
  lp.maximize = false;
  lp.c.assign(lp.num_vars, Rat(0));
  lp.c[ns] = 1;
  lp.lower.assign(lp.num_vars, std::nullopt);
  lp.lower[ns] = Rat(0);

  for (uint32_t x = 0; x < f.size(); ++x) {
    Rat fx = f.value(x);
    LPConstraint& up = lp.add_row(Rel::LE, fx);
    for (int k = 0; k < ns; ++k) up.a[k] = chi(x, masks[k]);
    up.a[ns] = -1;
    LPConstraint& down = lp.add_row(Rel::GE, fx);
    for (int k = 0; k < ns; ++k) down.a[k] = chi(x, masks[k]);
    down.a[ns] = 1;
  }

  LPResult res = solve_lp(lp);
  if (res.status != LPStatus::OPTIMAL)
    throw std::logic_error("approximation LP must have an optimum");
  return res.objective;
}

ApproxDegree approx_degree(const TruthTable& f, const Rat& eps) {
  if (eps <= 0 || eps >= 1) throw input_error("error target must lie strictly in (0,1)");
  ApproxDegree out;
  for (int d = 0; d <= f.n; ++d) {
    Rat err = best_approx_error(f, d);
    out.errors.push_back(err);
    if (err <= eps) {
      out.d = d;
      return out;
    }
  }
  throw std::logic_error("full-degree approximation must be exact");
}

Rat single_function_dual(const TruthTable& f, int d) {
  if (f.n > caps().approx_max_n)
    throw cap_error("approximation cap approx_max_n=" + std::to_string(caps().approx_max_n) +
                    " exceeded by arity " + std::to_string(f.n));
  uint32_t points = f.size();
  auto masks = masks_up_to(f.n, std::min(d, f.n));

  // variables: u then v, psi = u - v
  LPProblem lp;
  lp.num_vars = int(2 * points);
  lp.maximize = true;
  lp.c.assign(lp.num_vars, Rat(0));
  for (uint32_t x = 0; x < points; ++x) {
    lp.c[x] = f.value(x);
    lp.c[points + x] = -f.value(x);
  }

  LPConstraint& l1 = lp.add_row(Rel::LE, Rat(1));
  for (int j = 0; j < lp.num_vars; ++j) l1.a[j] = 1;

  for (uint32_t s : masks) {
    LPConstraint& zero = lp.add_row(Rel::EQ, Rat(0));
    for (uint32_t x = 0; x < points; ++x) {
      zero.a[x] = chi(x, s);
      zero.a[points + x] = -chi(x, s);
    }
  }

  LPResult res = solve_lp(lp);
  if (res.status != LPStatus::OPTIMAL)
    throw std::logic_error("dual correlation LP must have an optimum");
  return res.objective;
}

namespace {

std::optional<DualWitness> witness_general(int n, int d) {
  uint32_t points = uint32_t(1) << n;
  LPProblem lp;
  lp.num_vars = int(2 * points);
  lp.maximize = true;
  lp.c.assign(lp.num_vars, Rat(0));
  for (uint32_t x = 0; x < points; ++x) {
    int w = std::popcount(x);
    Rat cu = w == 0 ? Rat(1) : Rat(-1);
    Rat cv = w == 0 ? Rat(-1) : (w == 1 ? Rat(1) : Rat(-1));
    lp.c[x] = cu;
    lp.c[points + x] = cv;
  }

  LPConstraint& l1 = lp.add_row(Rel::EQ, Rat(1));
  for (int j = 0; j < lp.num_vars; ++j) l1.a[j] = 1;

  for (uint32_t s = 0; s < points; ++s) {
    if (std::popcount(s) >= d) continue;
    LPConstraint& zero = lp.add_row(Rel::EQ, Rat(0));
    for (uint32_t x = 0; x < points; ++x) {
      zero.a[x] = chi(x, s);
      zero.a[points + x] = -chi(x, s);
    }
  }

  LPResult res = solve_lp(lp);
  if (res.status != LPStatus::OPTIMAL) return std::nullopt;

  DualWitness w;
  w.n = n;
  w.d0 = d;
  w.symmetric = false;
  w.psi = RealTable(n);
  Rat l1_raw = 0;
  for (uint32_t x = 0; x < points; ++x) {
    w.psi.values[x] = res.x[x] - res.x[points + x];
    l1_raw += abs(w.psi.values[x]);
  }
  if (l1_raw == 0) return std::nullopt;
  for (Rat& v : w.psi.values) v /= l1_raw;

  w.l1 = 0;
  w.margin = 0;
  for (uint32_t x = 0; x < points; ++x) {
    const Rat& v = w.psi.values[x];
    w.l1 += abs(v);
    int wt = std::popcount(x);
    if (wt == 0)
      w.margin += v;
    else if (wt == 1)
      w.margin -= v;
    else
      w.margin -= abs(v);
  }
  if (w.margin <= Rat(1, 3)) return std::nullopt;
  return w;
}

std::optional<DualWitness> witness_symmetric(int n, int d) {
  // level weights w_t = u_t - v_t, t = 0..n
  int nl = n + 1;
  LPProblem lp;
  lp.num_vars = 2 * nl;
  lp.maximize = true;
  lp.c.assign(lp.num_vars, Rat(0));
  for (int t = 0; t <= n; ++t) {
    Rat cu = t == 0 ? Rat(1) : (t == 1 ? Rat(-n) : -Rat(binom(n, t)));
    Rat cv = t == 0 ? Rat(-1) : (t == 1 ? Rat(n) : -Rat(binom(n, t)));
    lp.c[t] = cu;
    lp.c[nl + t] = cv;
  }

  LPConstraint& l1 = lp.add_row(Rel::EQ, Rat(1));
  for (int t = 0; t <= n; ++t) {
    l1.a[t] = Rat(binom(n, t));
    l1.a[nl + t] = Rat(binom(n, t));
  }

  for (int j = 0; j < d; ++j) {
    LPConstraint& zero = lp.add_row(Rel::EQ, Rat(0));
    for (int t = 0; t <= n; ++t) {
      Rat k = krawtchouk(n, j, t);
      zero.a[t] = k;
      zero.a[nl + t] = -k;
    }
  }

  LPResult res = solve_lp(lp);
  if (res.status != LPStatus::OPTIMAL) return std::nullopt;

  DualWitness w;
  w.n = n;
  w.d0 = d;
  w.symmetric = true;
  w.levels.assign(nl, Rat(0));
  Rat l1_raw = 0;
  for (int t = 0; t <= n; ++t) {
    w.levels[t] = res.x[t] - res.x[nl + t];
    l1_raw += Rat(binom(n, t)) * abs(w.levels[t]);
  }
  if (l1_raw == 0) return std::nullopt;
  for (Rat& v : w.levels) v /= l1_raw;

  w.l1 = 0;
  w.margin = 0;
  for (int t = 0; t <= n; ++t) {
    Rat mass = Rat(binom(n, t)) * abs(w.levels[t]);
    w.l1 += mass;
    if (t == 0)
      w.margin += w.levels[t];
    else if (t == 1)
      w.margin -= Rat(n) * w.levels[t];
    else
      w.margin -= mass;
  }
  if (w.margin <= Rat(1, 3)) return std::nullopt;

  if (n <= 20) {
    w.psi = RealTable(n);
    for (uint32_t x = 0; x < w.psi.size(); ++x)
      w.psi.values[x] = w.levels[std::popcount(x)];
  }
  return w;
}

bool psi_materialized(const DualWitness& w) {
  return w.n <= 20 && w.psi.n == w.n && w.psi.values.size() == (size_t(1) << w.n);
}

}  // namespace

std::optional<DualWitness> dual_witness(int n, int d, bool symmetric) {
  if (n < 1) throw input_error("witness arity must be at least 1");
  if (d < 0) throw input_error("zeroing degree must be nonnegative");
  if (symmetric) {
    if (n > caps().witness_symmetric_max_n)
      throw cap_error("witness cap witness_symmetric_max_n=" +
                      std::to_string(caps().witness_symmetric_max_n) +
                      " exceeded by arity " + std::to_string(n));
    return witness_symmetric(n, d);
  }
  if (n > caps().witness_general_max_n)
    throw cap_error("witness cap witness_general_max_n=" +
                    std::to_string(caps().witness_general_max_n) + " exceeded by arity " +
                    std::to_string(n));
  return witness_general(n, d);
}

int witness_max_degree(int n, bool symmetric) {
  int best = 0;
  for (int d = 1; d <= n; ++d) {
    if (dual_witness(n, d, symmetric).has_value())
      best = d;
    else
      break;
  }
  return best;
}

WitnessCheck verify_witness(const DualWitness& w, const std::vector<TruthTable>& sample) {
  WitnessCheck out;
  bool mat = psi_materialized(w);

  if (mat) {
    Spectrum spec = fourier(w.psi);
    out.zeroing_ok = true;
    for (uint32_t s = 0; s < spec.coeffs.size(); ++s)
      if (std::popcount(s) < w.d0 && spec.coeffs[s] != 0) {
        out.zeroing_ok = false;
        out.detail = "fourier coefficient " + std::to_string(s) + " is nonzero";
        break;
      }
  } else if (w.symmetric && int(w.levels.size()) == w.n + 1) {
    out.zeroing_ok = true;
    for (int j = 0; j < w.d0; ++j) {
      Rat moment = 0;
      for (int t = 0; t <= w.n; ++t) moment += w.levels[t] * krawtchouk(w.n, j, t);
      if (moment != 0) {
        out.zeroing_ok = false;
        out.detail = "level moment of order " + std::to_string(j) + " is nonzero";
        break;
      }
    }
  } else {
    out.detail = "witness carries neither a table nor level weights";
    return out;
  }

  Rat l1 = 0;
  Rat margin = 0;
  if (mat) {
    for (uint32_t x = 0; x < w.psi.size(); ++x) {
      const Rat& v = w.psi.values[x];
      l1 += abs(v);
      int wt = std::popcount(x);
      if (wt == 0)
        margin += v;
      else if (wt == 1)
        margin -= v;
      else
        margin -= abs(v);
    }
  } else {
    for (int t = 0; t <= w.n; ++t) {
      Rat mass = Rat(binom(w.n, t)) * abs(w.levels[t]);
      l1 += mass;
      if (t == 0)
        margin += w.levels[t];
      else if (t == 1)
        margin -= Rat(w.n) * w.levels[t];
      else
        margin -= mass;
    }
  }
  out.l1_ok = l1 == 1 && w.l1 == l1;
  if (!out.l1_ok && out.detail.empty())
    out.detail = "L1 norm is " + rat_str(l1) + " against a claim of " + rat_str(w.l1);

  out.margins_ok = margin > Rat(1, 3) && margin >= w.margin;
  if (!out.margins_ok && out.detail.empty())
    out.detail = "family minimum correlation is " + rat_str(margin) +
                 ", below the claim or not above 1/3";

  for (const TruthTable& f : sample) {
    bool member = f.n == w.n && f.value(0) == +1;
    for (int i = 0; member && i < f.n; ++i)
      if (f.value(uint32_t(1) << i) != -1) member = false;
    if (!member) {
      out.margins_ok = false;
      if (out.detail.empty()) out.detail = "a sampled function is outside the family";
      break;
    }
    if (!mat) {
      out.margins_ok = false;
      if (out.detail.empty()) out.detail = "samples need a materialized witness table";
      break;
    }
    Rat corr = 0;
    for (uint32_t x = 0; x < f.size(); ++x) corr += w.psi.values[x] * f.value(x);
    out.margins.push_back(corr);
    if (corr <= Rat(1, 3)) {
      out.margins_ok = false;
      if (out.detail.empty())
        out.detail = "a sampled correlation is " + rat_str(corr) + ", not above 1/3";
    }
    if (corr < margin) {
      out.margins_ok = false;
      if (out.detail.empty()) out.detail = "a sampled correlation undercuts the family minimum";
    }
  }

  out.ok = out.zeroing_ok && out.l1_ok && out.margins_ok;
  return out;
}

TruthTable family_member(int n, uint64_t seed) {
  TruthTable f(n);
  SplitMix64 rng(seed);
  for (int i = 0; i < n; ++i) f.set_bit(uint32_t(1) << i, true);
  for (uint32_t x = 0; x < f.size(); ++x) {
    if (std::popcount(x) < 2) continue;
    f.set_bit(x, rng.next() & 1);
  }
  return f;
}

std::string witness_json(const DualWitness& w) {
  nlohmann::ordered_json j;
  j["n"] = w.n;
  j["d0"] = w.d0;
  if (psi_materialized(w)) {
    auto values = nlohmann::ordered_json::array();
    for (const Rat& v : w.psi.values) values.push_back(rat_str(v));
    j["values"] = values;
  }
  j["margin"] = rat_str(w.margin);
  j["l1"] = rat_str(w.l1);
  j["symmetric"] = w.symmetric;
  if (w.symmetric) {
    auto levels = nlohmann::ordered_json::array();
    for (const Rat& v : w.levels) levels.push_back(rat_str(v));
    j["levels"] = levels;
  }
  return j.dump();
}

DualWitness witness_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw input_error(std::string("witness JSON does not parse: ") + e.what());
  }
  DualWitness w;
  try {
    w.n = j.at("n").get<int>();
    w.d0 = j.at("d0").get<int>();
    w.margin = parse_rat(j.at("margin").get<std::string>());
    w.l1 = parse_rat(j.at("l1").get<std::string>());
    w.symmetric = j.value("symmetric", false);
    if (j.contains("values")) {
      if (w.n < 1 || w.n > 20) throw input_error("witness table arity out of range");
      w.psi = RealTable(w.n);
      auto& values = j.at("values");
      if (values.size() != w.psi.values.size())
        throw input_error("witness value count does not match 2^n");
      for (size_t i = 0; i < w.psi.values.size(); ++i)
        w.psi.values[i] = parse_rat(values[i].get<std::string>());
    }
    if (j.contains("levels")) {
      for (auto& v : j.at("levels")) w.levels.push_back(parse_rat(v.get<std::string>()));
      if (int(w.levels.size()) != w.n + 1)
        throw input_error("witness level count does not match n+1");
    }
  } catch (const input_error&) {
    throw;
  } catch (const std::exception& e) {
    throw input_error(std::string("witness JSON is missing fields: ") + e.what());
  }
  return w;
}

}  // namespace bfclab
