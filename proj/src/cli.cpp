#include "pslab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pslab/bounds.hpp"
#include "pslab/constants.hpp"
#include "pslab/dickman.hpp"
#include "pslab/errors.hpp"
#include "pslab/lsets.hpp"
#include "pslab/mertens.hpp"
#include "pslab/primes.hpp"
#include "pslab/series.hpp"
#include "pslab/verify.hpp"

namespace pslab::cli {

namespace {

using nlohmann::json;

struct RunConfig {
  unsigned threads = 1;
  std::uint64_t seed = 1;
  std::string format = "json";
  int precision = 10;
  bool timing = false;
};

// Rounds to the configured significant digits; infinities become strings.
json num(double v, int precision) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return std::stod(buf);
}

std::string text_num(double v, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

std::vector<std::uint64_t> read_set_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open set file " + path);
  std::vector<std::uint64_t> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream is(line);
    std::string token;
    if (!(is >> token)) continue;
    std::string extra;
    if (is >> extra) throw DomainError(path + ":" + std::to_string(lineno) + ": one integer per line");
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size() || token.front() == '-') {
      throw DomainError(path + ":" + std::to_string(lineno) + ": not a non-negative integer: " + token);
    }
    out.push_back(v);
  }
  return out;
}

json set_json(const std::vector<std::uint64_t>& v) { return json(v); }

json checked_json(const CheckedSet& s) {
  return {{"elements", set_json(s.elements)}, {"primitive", s.primitive}, {"l_primitive", s.l_primitive}};
}

class Emitter {
 public:
  Emitter(std::ostream& out, const RunConfig& cfg) : out_(out), cfg_(cfg) {}

  json n(double v) const { return num(v, cfg_.precision); }

  void object(const json& j) const {
    if (cfg_.format == "text") {
      for (const auto& [k, v] : j.items()) out_ << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    } else {
      out_ << j.dump(2) << '\n';
    }
  }

  void report(const VerificationReport& r) const {
    if (cfg_.format == "csv") {
      out_ << to_csv(r);
    } else if (cfg_.format == "text") {
      out_ << r.suite << ": " << r.passes << "/" << r.cases << " passed, seed " << r.seed << '\n';
      for (const auto& w : r.failures) out_ << "  FAIL " << w.case_id << ": " << w.detail << '\n';
      for (const auto& note : r.notes) out_ << "  note: " << note << '\n';
    } else {
      out_ << to_json(r, cfg_.timing).dump(2) << '\n';
    }
  }

  const RunConfig& cfg() const { return cfg_; }
  std::ostream& out() const { return out_; }

 private:
  std::ostream& out_;
  const RunConfig& cfg_;
};

json mu_json(const MuValue& m, const Emitter& e) {
  return {{"x", e.n(m.x)}, {"value", e.n(m.value)}, {"lo", e.n(m.lo)}, {"hi", e.n(m.hi)}, {"primes_used", m.primes_used}};
}

json series_json(const SeriesValue& s, const Emitter& e) {
  json j = {{"value", e.n(s.value)}, {"tail_bound", e.n(s.tail_bound)}, {"terms_used", s.terms_used}};
  if (!s.note.empty()) j["note"] = s.note;
  return j;
}

int report_exit(const VerificationReport& r) { return r.ok() ? kOk : kVerificationFailed; }

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Primitive-set numerics: Mertens products, L-multiple densities, and verification suites", "pslab"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML file with default flag values; command-line flags win");
  RunConfig cfg;
  if (const char* env = std::getenv("PSLAB_THREADS")) {
    try {
      cfg.threads = static_cast<unsigned>(std::stoul(env));
    } catch (const std::exception&) {
      err << "error: PSLAB_THREADS must be a positive integer\n";
      return kUsageError;
    }
  }
  app.add_option("--threads", cfg.threads, "Worker threads (default: PSLAB_THREADS or 1)")->check(CLI::Range(1u, 1024u));
  app.add_option("--seed", cfg.seed, "Seed for generated instances")->capture_default_str();
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}))->capture_default_str();
  app.add_option("--precision", cfg.precision, "Significant digits for printed reals")
      ->check(CLI::Range(1, 17))
      ->capture_default_str();
  app.add_flag("--timing", cfg.timing, "Include wall times in reports");

  const Emitter emit(out, cfg);
  std::function<int()> action;

  // sieve
  auto* sieve = app.add_subcommand("sieve", "Sieve primes up to a limit");
  std::uint64_t sieve_limit = 0;
  bool count_only = false;
  std::string dump_path;
  sieve->add_option("--limit", sieve_limit, "Sieve bound")->required();
  sieve->add_flag("--count-only", count_only, "Print only the prime count");
  sieve->add_option("--dump", dump_path, "Write the bitset to FILE");
  sieve->callback([&] {
    action = [&] {
      if (sieve_limit < 2) throw DomainError("sieve needs --limit >= 2");
      SieveOptions opts;
      opts.threads = cfg.threads;
      const PrimeTable table(sieve_limit, opts);
      if (!dump_path.empty()) {
        std::ofstream f(dump_path, std::ios::binary);
        if (!f) throw DomainError("cannot write " + dump_path);
        table.write(f);
      }
      json j = {{"limit", sieve_limit}, {"count", table.count()}};
      if (!count_only) {
        if (table.count() > 100'000) throw DomainError("listing more than 100000 primes; use --count-only or --dump");
        j["primes"] = table.primes();
      }
      emit.object(j);
      return kOk;
    };
  });

  // mu
  auto* mu_cmd = app.add_subcommand("mu", "Mertens ratio mu_x with bounds");
  double mu_x = 0.0;
  mu_cmd->add_option("--x", mu_x, "Argument x > 1")->required();
  mu_cmd->callback([&] {
    action = [&] {
      emit.object(mu_json(mu(mu_x), emit));
      return kOk;
    };
  });

  // mu-scan
  auto* scan = app.add_subcommand("mu-scan", "Check mu_p < 1 over the first N odd primes");
  ScanOptions scan_opts;
  std::string checkpoint;
  scan->add_option("--primes", scan_opts.prime_count, "Number of odd primes")->required();
  scan->add_option("--checkpoint", checkpoint, "Checkpoint file to resume from and update");
  scan->add_option("--block-size", scan_opts.block_size, "Primes per summation block")->capture_default_str();
  scan->add_option("--checkpoint-every", scan_opts.checkpoint_every, "Primes between checkpoints")->capture_default_str();
  scan->add_option("--stop-after", scan_opts.stop_after, "Stop once this many primes are done (0: run to the end)");
  scan->add_option("--probe", scan_opts.probes, "Report the scanned mu_p at these primes");
  scan->callback([&] {
    action = [&] {
      if (!checkpoint.empty()) scan_opts.checkpoint = checkpoint;
      scan_opts.threads = cfg.threads;
      const auto res = mu_scan(scan_opts);
      json probes = json::object();
      for (const auto& [p, v] : res.probe_values) probes[std::to_string(p)] = emit.n(v);
      json j = {{"primes_done", res.primes_done},
                {"last_prime", res.last_prime},
                {"min_mu", emit.n(res.min_mu)},
                {"min_at", res.min_at},
                {"witnesses", res.report.failures.size()},
                {"complete", res.complete},
                {"resumed", res.resumed},
                {"probes", probes},
                {"report", to_json(res.report, cfg.timing)}};
      emit.object(j);
      return report_exit(res.report);
    };
  });

  // mu-table
  auto* mu_table_cmd = app.add_subcommand("mu-table", "mu_q for the primes 2..199 as CSV (q,mu_q,lo,hi)");
  mu_table_cmd->callback([&] {
    action = [&] {
      const auto rows = mu_table();
      if (cfg.format == "json") {
        json arr = json::array();
        for (const auto& m : rows) arr.push_back(mu_json(m, emit));
        emit.object(arr);
      } else {
        out << "q,mu_q,lo,hi\n";
        for (const auto& m : rows) {
          out << static_cast<std::uint64_t>(m.x) << ',' << text_num(m.value, cfg.precision) << ','
              << text_num(m.lo, cfg.precision) << ',' << text_num(m.hi, cfg.precision) << '\n';
        }
      }
      return kOk;
    };
  });

  // constants
  auto* consts = app.add_subcommand("constants", "tau, f(primes), and the bound constants");
  double tol = 1e-6;
  consts->add_option("--tol", tol, "Target accuracy")->capture_default_str();
  consts->callback([&] {
    action = [&] {
      const auto tau = solve_tau(std::min(tol, 1e-12));
      const auto fp = f_prime_total(tol);
      const auto c = bound_constants();
      json j = {{"tau", emit.n(tau.value)},
                {"tau_residual", emit.n(tau_equation(tau.value))},
                {"fP", emit.n(fp.value)},
                {"fP_tail", emit.n(fp.tail_bound)},
                {"e_gamma", emit.n(constants::kExpEulerGamma)},
                {"ess_limit", emit.n(c.ess_const)},
                {"M", emit.n(c.M)},
                {"C1", emit.n(c.C1)},
                {"C2", emit.n(c.C2)},
                {"inner_sum", emit.n(c.inner_sum)},
                {"final_bound", emit.n(c.final_bound)},
                {"sup_bound", emit.n(final_bound_sup())}};
      emit.object(j);
      return kOk;
    };
  });

  // fnk
  auto* fnk = app.add_subcommand("fnk", "Partial sum of f over n <= X with Omega(n) = k");
  unsigned fnk_k = 1;
  std::uint64_t fnk_bound = 0;
  fnk->add_option("--k", fnk_k, "Omega value")->required();
  fnk->add_option("--bound", fnk_bound, "Upper bound X")->required();
  fnk->callback([&] {
    action = [&] {
      json j = series_json(f_nk_partial(fnk_k, fnk_bound), emit);
      j["k"] = fnk_k;
      j["bound"] = fnk_bound;
      emit.object(j);
      return kOk;
    };
  });

  // lset
  auto* lset = app.add_subcommand("lset", "Describe L_a");
  std::uint64_t lset_a = 0;
  bool lset_density = false;
  std::uint64_t lset_members = 0;
  lset->add_option("--a", lset_a, "Generator a >= 2")->required();
  auto* density_flag = lset->add_flag("--density", lset_density, "Print the density only");
  lset->add_option("--members", lset_members, "List members up to N")->excludes(density_flag);
  lset->callback([&] {
    action = [&] {
      const auto d = l_density(lset_a);
      json j = {{"a", lset_a}, {"P", d.fact.big_prime()}, {"density", emit.n(d.density_float)}, {"exact", d.exact()}};
      if (d.density_exact) j["density_exact"] = d.density_exact->get_str();
      if (!lset_density) {
        json factors = json::array();
        for (const auto& [p, e] : d.fact.factors) factors.push_back({p, e});
        j["factors"] = factors;
        j["omega"] = d.fact.omega();
        j["star"] = d.fact.star();
      }
      if (lset_members > 0) {
        std::vector<std::uint64_t> members;
        for (std::uint64_t m = lset_a; m <= lset_members; m += lset_a) {
          if (is_l_multiple(m, lset_a)) members.push_back(m);
        }
        j["members"] = members;
      }
      emit.object(j);
      return kOk;
    };
  });

  // gen-set
  auto* genset = app.add_subcommand("gen-set", "L-primitive generating set of a set file");
  std::string genset_in;
  genset->add_option("--in", genset_in, "Set file: one integer per line, # comments")->required();
  genset->callback([&] {
    action = [&] {
      const auto input = check_set(read_set_file(genset_in));
      json j = {{"input", checked_json(input)}, {"generating_set", checked_json(generating_set(input.elements))}};
      emit.object(j);
      return kOk;
    };
  });

  // cset
  auto* cset = app.add_subcommand("cset", "Members of C_a^v up to a bound");
  std::uint64_t cset_a = 0;
  double cset_v = 0.0;
  std::uint64_t cset_bound = 0;
  cset->add_option("--a", cset_a, "Composite a")->required();
  cset->add_option("--v", cset_v, "v in (0, 1)")->required();
  cset->add_option("--bound", cset_bound, "Largest c listed")->required();
  cset->callback([&] {
    action = [&] {
      const auto spec = make_cset_spec(cset_a, cset_v);
      const auto members = c_set(spec, cset_bound);
      json j = {{"a", cset_a},
                {"v", emit.n(cset_v)},
                {"window_lo", spec.window_lo},
                {"window_hi", emit.n(spec.window_hi)},
                {"window_prime_count", spec.window_primes.size()},
                {"members", members},
                {"harmonic", emit.n(c_set_harmonic(spec))},
                {"harmonic_exact", c_set_harmonic_exact(spec).get_str()}};
      emit.object(j);
      return kOk;
    };
  });

  // dickman
  auto* dick = app.add_subcommand("dickman", "Dickman-de Bruijn rho");
  double dick_x = 0.0;
  dick->add_option("--x", dick_x, "Argument x >= 0")->required();
  dick->callback([&] {
    action = [&] {
      json j = {{"x", emit.n(dick_x)}, {"rho", emit.n(dickman_rho(dick_x))}, {"integral_0_x", emit.n(dickman_integral(dick_x))}};
      emit.object(j);
      return kOk;
    };
  });

  // bq
  auto* bq = app.add_subcommand("bq", "b_q for one odd prime or the table 3..47");
  std::uint64_t bq_q = 0;
  bool bq_table_flag = false;
  auto* q_opt = bq->add_option("--q", bq_q, "Odd prime q");
  auto* t_opt = bq->add_flag("--table", bq_table_flag, "All tabulated primes 3..47");
  q_opt->excludes(t_opt);
  bq->callback([&] {
    action = [&] {
      auto entry = [&](const BqEntry& e) {
        return json{{"q", e.q}, {"mu_q", emit.n(e.mu_q)}, {"m_q", emit.n(e.m_q)}, {"M_q", emit.n(e.M_q)},
                    {"r_q", emit.n(e.r_q)}, {"b_q", emit.n(e.b_q)}};
      };
      if (!bq_table_flag && bq_q == 0) throw DomainError("bq needs --q or --table");
      if (bq_table_flag) {
        if (cfg.format == "csv") {
          out << "q,mu_q,m_q,M_q,r_q,b_q\n";
          for (std::uint64_t q : bq_table_primes()) {
            const auto e = b_value(q);
            out << q << ',' << text_num(e.mu_q, cfg.precision) << ',' << text_num(e.m_q, cfg.precision) << ','
                << text_num(e.M_q, cfg.precision) << ',' << text_num(e.r_q, cfg.precision) << ','
                << text_num(e.b_q, cfg.precision) << '\n';
          }
          return kOk;
        }
        json arr = json::array();
        for (std::uint64_t q : bq_table_primes()) arr.push_back(entry(b_value(q)));
        emit.object(arr);
      } else {
        emit.object(entry(b_value(bq_q)));
      }
      return kOk;
    };
  });

  // check
  auto* check = app.add_subcommand("check", "Seeded instance checks of one inequality");
  std::string lemma;
  std::uint64_t check_cases = 0;
  check->add_option("--lemma", lemma, "Which inequality")
      ->required()
      ->check(CLI::IsMember({"mass", "2.5", "3.2", "4.2", "logp2p"}));
  check->add_option("--cases", check_cases, "Number of instances (0: suite default)");
  check->callback([&] {
    action = [&] {
      static const std::map<std::string, std::string> suite_of = {
          {"mass", "mass"}, {"2.5", "lemma25"}, {"3.2", "prop32"}, {"4.2", "pi4"}, {"logp2p", "logp2p"}};
      const auto r = run_suite(suite_of.at(lemma), cfg.seed, check_cases, cfg.threads);
      emit.report(r);
      return report_exit(r);
    };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  std::string suite = "all";
  std::uint64_t verify_cases = 0;
  std::string json_out;
  std::string csv_out;
  verify->add_option("--suite", suite, "Suite name, or all")->capture_default_str();
  verify->add_option("--cases", verify_cases, "Cases (0: suite default)");
  verify->add_option("--json", json_out, "Also write the JSON report to FILE");
  verify->add_option("--csv", csv_out, "Also write the CSV report to FILE");
  verify->callback([&] {
    action = [&] {
      const auto r = run_suite(suite, cfg.seed, verify_cases, cfg.threads);
      if (!json_out.empty()) {
        std::ofstream f(json_out);
        if (!f) throw DomainError("cannot write " + json_out);
        f << to_json(r, cfg.timing).dump(2) << '\n';
      }
      if (!csv_out.empty()) {
        std::ofstream f(csv_out);
        if (!f) throw DomainError("cannot write " + csv_out);
        f << to_csv(r);
      }
      emit.report(r);
      return report_exit(r);
    };
  });

  // search
  auto* search = app.add_subcommand("search", "Primitive subset of [2, N] maximizing f");
  unsigned max_n = 0;
  search->add_option("--max-n", max_n, "N in [4, 24]")->required();
  search->callback([&] {
    action = [&] {
      const auto res = exhaustive_primitive_max(max_n);
      emit.object({{"n", max_n}, {"set", res.set.elements}, {"f", emit.n(res.value)}, {"nodes", res.nodes}});
      return kOk;
    };
  });

  // chain
  auto* chain = app.add_subcommand("chain", "Longest L-divisibility chain in a set file");
  std::string chain_in;
  chain->add_option("--in", chain_in, "Set file")->required();
  chain->callback([&] {
    action = [&] {
      const auto res = longest_l_chain(read_set_file(chain_in));
      std::string why;
      const bool valid = validate_chain(res, &why);
      json certs = json::array();
      for (const auto& c : res.certificates) certs.push_back({{"b", c.b}, {"p_b", c.small_prime}, {"P_d", c.big_prime}});
      json j = {{"length", res.elements.size()}, {"chain", res.elements}, {"certificates", certs}, {"valid", valid}};
      if (!valid) j["invalid_reason"] = why;
      emit.object(j);
      return valid ? kOk : kVerificationFailed;
    };
  });

  // density
  auto* density = app.add_subcommand("density", "Truncated density estimators for L_A");
  std::string gen_file;
  std::uint64_t density_x = 0;
  density->add_option("--gen", gen_file, "Generator set file")->required();
  density->add_option("--x", density_x, "Truncation x >= 16")->required();
  density->callback([&] {
    action = [&] {
      const auto d = density_estimate_lset(read_set_file(gen_file), density_x);
      json j = {{"set", d.descriptor}, {"x", d.x},           {"count", d.count},
                {"nat", emit.n(d.nat)}, {"log_d", emit.n(d.log_d)}, {"loglog_d", emit.n(d.loglog_d)}};
      if (d.exact) {
        j["exact"] = d.exact->get_str();
        j["exact_value"] = emit.n(to_double(*d.exact));
      }
      emit.object(j);
      return kOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << e.what() << '\n';
      return kOk;
    }
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    return action ? action() : kUsageError;
  } catch (const IntegrityError& e) {
    err << "integrity error: " << e.what() << '\n';
    return kUsageError;
  } catch (const BoundaryAmbiguityError& e) {
    err << "boundary ambiguity: " << e.what() << '\n';
    return kUsageError;
  } catch (const PreconditionError& e) {
    err << "precondition error: " << e.what() << '\n';
    return kUsageError;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
}

int dispatch(int argc, const char* const* argv) { return dispatch(argc, argv, std::cout, std::cerr); }

}  // namespace pslab::cli
