// ffdens command line.
#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "ffdens/census.hpp"
#include "ffdens/cusp.hpp"
#include "ffdens/geonum.hpp"
#include "ffdens/mass.hpp"
#include "ffdens/poly_text.hpp"

using namespace ffdens;
using json = nlohmann::ordered_json;

namespace {

struct Global {
  std::uint32_t q = 3;
  std::uint64_t seed = 1;
  int threads = 1;
  bool json_out = false, csv_out = false;
  std::string out;
};

std::string rat(const Rational& x) { return x.get_str(); }

json interval_json(const RationalInterval& v) {
  return {{"lo", RationalInterval::to_decimal(v.lo(), 20)},
          {"hi", RationalInterval::to_decimal(v.hi(), 20)},
          {"lo_exact", rat(v.lo())},
          {"hi_exact", rat(v.hi())}};
}

std::string poly_string(const std::vector<Integer>& c) {
  std::ostringstream s;
  bool first = true;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0) continue;
    Integer a = abs(c[k]);
    if (!first) s << (c[k] < 0 ? " - " : " + ");
    else if (c[k] < 0) s << "-";
    first = false;
    if (k == 0 || a != 1) s << a;
    if (k >= 1) s << "x";
    if (k >= 2) s << "^" << k;
  }
  return first ? "0" : s.str();
}

void emit(const Global& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw std::runtime_error("cannot write " + g.out);
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Densities of discriminants: local masses, orbit censuses, certificates"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--q", g.q, "finite field size (odd prime power)");
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber);
  auto* jflag = app.add_flag("--json", g.json_out, "JSON output");
  auto* cflag = app.add_flag("--csv", g.csv_out, "CSV output");
  jflag->excludes(cflag);
  app.add_option("--out", g.out, "write output to a file");

  // predict
  auto* predict = app.add_subcommand("predict", "assembled density constant");
  int p_n = 3;
  std::string p_field = "Q";
  std::vector<std::string> p_S = {"inf"};
  long p_trunc = 1000;
  predict->add_option("--n", p_n)->check(CLI::Range(2, 5));
  predict->add_option("--field", p_field, "Q or fq_t")->check(CLI::IsMember({"Q", "fq_t"}));
  predict->add_option("--S", p_S, "places in S: inf, or a polynomial in t")->delimiter(',');
  predict->add_option("--trunc", p_trunc, "Euler product truncation (primes <= D, or place degree <= D)");

  // euler-factor
  auto* ef = app.add_subcommand("euler-factor", "E_n(x) from partition counts");
  int e_n = 3;
  ef->add_option("--n", e_n)->check(CLI::Range(2, 5));

  // mass
  auto* mass = app.add_subcommand("mass", "local mass at a place of norm N");
  int m_n = 3;
  long m_N = 5;
  mass->add_option("--n", m_n)->check(CLI::Range(2, 5));
  mass->add_option("--N", m_N, "norm of the place")->required();

  // orbit-census-fq
  auto* oc = app.add_subcommand("orbit-census-fq", "orbits of G_n(F_q) on V_n(F_q) with nonzero disc");
  int o_n = 3;
  oc->add_option("--n", o_n)->check(CLI::Range(3, 4));

  // census-ff
  auto* cf = app.add_subcommand("census-ff", "binary cubic orbit census over F_q[t]");
  int c_B = 2, c_max = -1, c_shards = 0;
  cf->add_option("--B", c_B, "coefficient degree bound")->check(CLI::Range(0, 8));
  cf->add_option("--max-m", c_max, "largest reported bin (default 2(B-1))");
  cf->add_option("--shards", c_shards);

  // geonum
  auto* geo = app.add_subcommand("geonum", "lattice point counts in K_S");
  auto* a3 = geo->add_subcommand("check-A3", "count equals volume past the threshold");
  geo->require_subcommand(1);
  int g_trials = 100;
  a3->add_option("--trials", g_trials)->check(CLI::PositiveNumber);

  // cusp
  auto* cusp = app.add_subcommand("cusp", "cusp certificates");
  auto* cert = cusp->add_subcommand("certify", "dispose every order-closed set");
  cusp->require_subcommand(1);
  int k_n = 4;
  std::string k_facts;
  cert->add_option("--n", k_n)->check(CLI::Range(3, 4));
  cert->add_option("--facts", k_facts, "reducibility facts (JSON)");

  // tail
  auto* tail = app.add_subcommand("tail", "square divisors of disc at large places");
  int t_B = 2;
  std::vector<long> t_M = {3, 9, 27};
  tail->add_option("--B", t_B)->check(CLI::Range(0, 8));
  tail->add_option("--M", t_M, "norm thresholds")->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    if (*predict) {
      FieldDescriptor fd = p_field == "Q" ? FieldDescriptor::rationals() : FieldDescriptor::function_field(g.q);
      auto r = predicted_density(p_n, fd, p_S, {}, p_trunc);
      json j = {{"n", p_n}, {"field", p_field}, {"S", p_S}, {"trunc", p_trunc}};
      if (p_field != "Q") j["q"] = g.q;
      const json iv = interval_json(r.value);
      for (auto& [k, v] : iv.items()) j[k] = v;
      if (r.exact_closed_form) j["exact_closed_form"] = rat(*r.exact_closed_form);
      j["wild_model_used"] = r.wild_model_used;
      j["notes"] = r.notes;
      emit(g, dump(j));
    } else if (*ef) {
      const auto e = euler_factor(e_n);
      const auto ms = mass_series(e_n);
      // (1 - x) * sum q(k, n-k) x^k
      std::vector<Integer> prod(ms.size() + 1, 0);
      for (std::size_t k = 0; k < ms.size(); ++k) {
        prod[k] += ms[k];
        prod[k + 1] -= ms[k];
      }
      while (prod.size() > e.size() && prod.back() == 0) prod.pop_back();
      json coeffs = json::array();
      for (auto& c : e) coeffs.push_back(c.get_str());
      json j = {{"n", e_n}, {"coefficients", coeffs}, {"polynomial", poly_string(e)}, {"identity_holds", prod == e}};
      if (g.csv_out) {
        std::ostringstream s;
        s << "k;coefficient\n";
        for (std::size_t k = 0; k < e.size(); ++k) s << k << ';' << e[k] << '\n';
        emit(g, s.str());
      } else {
        emit(g, dump(j));
      }
    } else if (*mass) {
      const Integer N = m_N;
      // sum_k q(k, n-k) N^-k
      Rational series = 0, x = 1;
      for (auto& c : mass_series(m_n)) {
        series += Rational(c) * x;
        x /= Rational(N);
      }
      json j = {{"n", m_n}, {"N", m_N}, {"series_sum", rat(series)}, {"local_mass", rat(local_mass_nonarch(m_n, N))}};
      try {
        auto rep = tame_local_mass_oracle(m_n, N);
        j["oracle_sum"] = rat(rep.sum_disc_over_aut);
        j["oracle_algebras"] = rep.algebras.size();
        j["agree"] = rep.sum_disc_over_aut == series;
      } catch (const std::exception& e) {
        j["oracle"] = std::string("unavailable: ") + e.what();
      }
      emit(g, dump(j));
    } else if (*oc) {
      const FqField& F = FqField::of_order(g.q);
      auto orbits = orbit_census_fq(o_n, F);
      auto rep_string = [&](const OrbitInfo& o) {
        std::string s;
        for (std::size_t i = 0; i < o.rep.size(); ++i) s += (i ? "," : "") + F.to_string(o.rep[i]);
        return s;
      };
      if (g.json_out) {
        json arr = json::array();
        for (auto& o : orbits)
          arr.push_back({{"rep", rep_string(o)}, {"orbit_size", o.size}, {"stab", o.stabilizer.get_str()},
                         {"splitting_type", o.splitting_type}});
        emit(g, dump({{"n", o_n}, {"q", g.q}, {"orbits", arr}}));
      } else {
        std::ostringstream s;
        s << "rep;orbit_size;stab;splitting_type\n";
        for (auto& o : orbits) s << rep_string(o) << ';' << o.size << ';' << o.stabilizer << ';' << o.splitting_type << '\n';
        emit(g, s.str());
      }
    } else if (*cf) {
      CensusConfig cfg;
      cfg.q = g.q;
      cfg.B = c_B;
      cfg.threads = g.threads;
      cfg.shards = c_shards;
      cfg.report_max_m = c_max;
      auto r = census(cfg);
      if (g.json_out) {
        json bins = json::array();
        for (auto& [m, b] : r.bins) {
          if (m > r.report_max_m()) break;
          bins.push_back({{"m", m},
                          {"raw_count", b.raw},
                          {"generic_maximal_count", b.generic_maximal},
                          {"nongeneric", b.nongeneric},
                          {"nonmaximal", b.nonmaximal},
                          {"ratio", rat(r.ratio(m))}});
        }
        json j = {{"q", g.q},       {"B", c_B},
                  {"stream_length", r.stream_length}, {"visited", r.visited},
                  {"survivors", r.survivors},         {"overflow", r.overflow},
                  {"predicted", interval_json(r.predicted)}, {"bins", bins}};
        emit(g, dump(j));
      } else {
        emit(g, census_csv(r));
      }
    } else if (*a3) {
      const FqField& F = FqField::of_order(g.q);
      if (F.e() != 1) throw std::invalid_argument("check-A3 needs a prime q");
      auto r = threshold_trials(F, g_trials, g.seed);
      json trials = json::array();
      for (auto& c : r.checks)
        trials.push_back({{"count", c.count.get_str()},
                          {"volume", rat(c.volume)},
                          {"equal", Rational(c.count) == c.volume},
                          {"log_t", c.log_t},
                          {"deg_B", c.deg_B}});
      json j = {{"q", g.q},         {"seed", g.seed},           {"trials", r.trials},
                {"equal", r.equal}, {"poisson_ok", r.poisson_ok}, {"all_equal", r.equal == r.trials},
                {"per_trial", trials}};
      emit(g, dump(j));
    } else if (*cert) {
      std::vector<ReducibilityFact> facts;
      if (!k_facts.empty()) facts = load_facts(k_facts);
      auto rep = certify_all(k_n, facts, g.threads);
      json entries = json::array();
      for (auto& e : rep.entries) {
        json x = {{"U", e.U}, {"disposition", e.disposition}};
        if (e.fact >= 0) x["fact"] = facts[e.fact].ideal;
        if (e.cert) {
          json k = json::object();
          for (auto& [c, v] : e.cert->k)
            if (v != 0) k[c] = rat(v);
          json ex = json::array();
          for (auto& s : e.cert->exponents) ex.push_back(rat(s));
          x["k"] = k;
          x["exponents"] = ex;
          x["lambda_exponent"] = rat(e.cert->lambda_exponent);
        }
        entries.push_back(x);
      }
      emit(g, dump({{"n", k_n}, {"all_disposed", rep.all_disposed}, {"entries", entries}}));
    } else if (*tail) {
      CensusConfig cfg;
      cfg.q = g.q;
      cfg.B = t_B;
      cfg.threads = g.threads;
      auto t = tail_measurement(cfg, t_M);
      if (g.csv_out) {
        std::ostringstream s;
        s << "M;total;weak;strong\n";
        for (auto& row : t.rows) s << row.M << ';' << row.total << ';' << row.weak << ';' << row.strong << '\n';
        emit(g, s.str());
      } else {
        json rows = json::array();
        for (auto& row : t.rows)
          rows.push_back({{"M", row.M}, {"total", row.total}, {"weak", row.weak}, {"strong", row.strong}});
        emit(g, dump({{"q", g.q},
                      {"B", t_B},
                      {"flagged", t.flagged},
                      {"mismatches", t.mismatches},
                      {"decreasing", t.decreasing()},
                      {"rows", rows}}));
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
