#include "pslab/mertens.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "pslab/constants.hpp"
#include "pslab/errors.hpp"
#include "pslab/parallel.hpp"
#include "pslab/primes.hpp"

namespace pslab {

namespace {

constexpr double kRoundingFactor = 4.0;

double log_term(std::uint64_t p) { return std::log1p(-1.0 / static_cast<double>(p)); }

// Largest integer strictly below x (x > 1).
std::uint64_t largest_below(double x) {
  const double c = std::ceil(x);
  return static_cast<std::uint64_t>(c) - 1;
}

}  // namespace

MuValue make_mu_value(double x, const CompensatedSum& log_product) {
  MuValue out;
  out.x = x;
  out.primes_used = log_product.terms();
  out.value = std::exp(constants::kEulerGamma + std::log(std::log(x)) + log_product.value());
  const double rel = kRoundingFactor * std::numeric_limits<double>::epsilon() *
                     static_cast<double>(log_product.terms() + 2);
  out.lo = out.value * (1.0 - rel);
  out.hi = out.value * (1.0 + rel);
  return out;
}

MuValue mu(double x) {
  if (!(x > 1.0) || !std::isfinite(x)) throw DomainError("mu(x) needs x > 1");
  CompensatedSum acc;
  const std::uint64_t below = largest_below(x);
  if (below >= 2) {
    const PrimeTable table(below);
    for (std::uint64_t p : table) acc.add(log_term(p));
  }
  return make_mu_value(x, acc);
}

MertensTable::MertensTable(std::uint64_t limit) : limit_(limit) {
  primes_ = PrimeTable(std::max<std::uint64_t>(limit, 2)).primes();
  prefix_.reserve(primes_.size() + 1);
  CompensatedSum acc;
  prefix_.push_back(acc);
  for (std::uint64_t p : primes_) {
    acc.add(log_term(p));
    prefix_.push_back(acc);
  }
}

MuValue MertensTable::mu(double x) const {
  if (!(x > 1.0)) throw DomainError("mu(x) needs x > 1");
  if (x > static_cast<double>(limit_) + 1.0) throw DomainError("x beyond MertensTable range");
  const std::uint64_t below = largest_below(x);
  const auto count = static_cast<std::size_t>(
      std::upper_bound(primes_.begin(), primes_.end(), below) - primes_.begin());
  return make_mu_value(x, prefix_[count]);
}

double m_envelope(std::uint64_t q) {
  static const double mu7 = mu(7).value;
  static const double mu19 = mu(19).value;
  if (q < 2) throw DomainError("m_envelope needs a prime q");
  if (q <= 7) return mu7;
  if (q <= 300) return mu19;
  const double l = std::log(static_cast<double>(q));
  return 1.0 - 1.0 / (2.0 * l * l);
}

double M_envelope(double x) {
  static const double mu2 = mu(2).value;
  if (!(x > 1.0)) throw DomainError("M_envelope needs x > 1");
  if (x <= 2.0) return mu2;
  const double l = std::log(x <= constants::kMertensVerifiedRange ? constants::kMertensVerifiedRange : x);
  return 1.0 + 1.0 / (2.0 * l * l);
}

double m_lower(std::uint64_t q) {
  constexpr std::uint64_t kScanTop = 300;
  static const std::vector<std::pair<std::uint64_t, double>> small = [] {
    const MertensTable table(kScanTop);
    std::vector<std::pair<std::uint64_t, double>> out;
    for (std::uint64_t p : table.primes()) out.emplace_back(p, table.mu(static_cast<double>(p)).value);
    return out;
  }();
  if (q < 2) throw DomainError("m_lower needs a prime q");
  if (q > kScanTop) {
    const double l = std::log(static_cast<double>(q));
    return 1.0 - 1.0 / (2.0 * l * l);
  }
  const double l300 = std::log(static_cast<double>(kScanTop));
  double best = 1.0 - 1.0 / (2.0 * l300 * l300);
  for (const auto& [p, value] : small) {
    if (p >= q) best = std::min(best, value);
  }
  return best;
}

double r_ratio(std::uint64_t q) {
  if (q < 2) throw DomainError("r_ratio needs a prime q");
  if (q == 2) q = 3;
  return M_envelope(static_cast<double>(q)) / m_envelope(q);
}

EnvelopeTable envelope_table() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  EnvelopeTable t;
  t.m_pieces = {
      {2, 7, "mu_7", m_envelope(7)},
      {7, 300, "mu_19", m_envelope(11)},
      {300, inf, "1 - 1/(2 log^2 q)", m_envelope(307)},
  };
  t.M_pieces = {
      {1, 2, "mu_2", M_envelope(2)},
      {2, constants::kMertensVerifiedRange, "1 + 1/(2 log^2(2e9))", M_envelope(3)},
      {constants::kMertensVerifiedRange, inf, "1 + 1/(2 log^2 x)", M_envelope(constants::kMertensVerifiedRange)},
  };
  return t;
}

const std::vector<std::uint64_t>& mu_table_primes() {
  static const std::vector<std::uint64_t> primes = simple_sieve(199);
  return primes;
}

std::vector<MuValue> mu_table() {
  const MertensTable table(199);
  std::vector<MuValue> out;
  for (std::uint64_t q : mu_table_primes()) out.push_back(table.mu(static_cast<double>(q)));
  return out;
}

// ---------------------------------------------------------------------------
// Checkpoints

namespace {

std::string hexfloat(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

std::string digest_of(const ScanCheckpoint& cp) {
  std::ostringstream os;
  os << ScanCheckpoint::kVersion << '|' << cp.last_prime << '|' << cp.primes_done << '|' << hexfloat(cp.log_sum)
     << '|' << hexfloat(cp.compensation) << '|' << hexfloat(cp.min_mu) << '|' << cp.min_at << '|'
     << cp.block_size;
  for (auto w : cp.witnesses) os << '|' << w;
  // FNV-1a, 64-bit
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : os.str()) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

void write_checkpoint(const std::filesystem::path& path, const ScanCheckpoint& cp) {
  nlohmann::json j;
  j["version"] = ScanCheckpoint::kVersion;
  j["last_prime"] = cp.last_prime;
  j["primes_done"] = cp.primes_done;
  j["log_sum"] = cp.log_sum;
  j["compensation"] = cp.compensation;
  j["min_mu"] = cp.min_mu;
  j["min_at"] = cp.min_at;
  j["block_size"] = cp.block_size;
  j["witnesses"] = cp.witnesses;
  j["digest"] = digest_of(cp);
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp.string());
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("short write on checkpoint " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

ScanCheckpoint read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IntegrityError("cannot open checkpoint " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IntegrityError("checkpoint " + path.string() + " is not valid JSON: " + e.what());
  }
  ScanCheckpoint cp;
  std::string digest;
  try {
    if (j.at("version").get<int>() != ScanCheckpoint::kVersion) throw IntegrityError("checkpoint version mismatch");
    cp.last_prime = j.at("last_prime").get<std::uint64_t>();
    cp.primes_done = j.at("primes_done").get<std::uint64_t>();
    cp.log_sum = j.at("log_sum").get<double>();
    cp.compensation = j.at("compensation").get<double>();
    cp.min_mu = j.at("min_mu").get<double>();
    cp.min_at = j.at("min_at").get<std::uint64_t>();
    cp.block_size = j.at("block_size").get<std::uint64_t>();
    cp.witnesses = j.at("witnesses").get<std::vector<std::uint64_t>>();
    digest = j.at("digest").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw IntegrityError("checkpoint " + path.string() + " is missing or mistypes a field: " + e.what());
  }
  if (digest != digest_of(cp)) throw IntegrityError("checkpoint " + path.string() + " digest mismatch");
  if (cp.primes_done == 0 || cp.block_size == 0 || !is_prime_u64(cp.last_prime) || cp.last_prime < 3 ||
      !std::isfinite(cp.log_sum) || !(cp.min_mu > 0.0) || !is_prime_u64(cp.min_at)) {
    throw IntegrityError("checkpoint " + path.string() + " has inconsistent state");
  }
  return cp;
}

// ---------------------------------------------------------------------------
// Scan

namespace {

struct BlockOutcome {
  double min_mu = std::numeric_limits<double>::infinity();
  std::uint64_t min_at = 0;
  std::vector<std::uint64_t> witnesses;
  std::vector<std::pair<std::uint64_t, double>> probes;
};

}  // namespace

ScanResult mu_scan(const ScanOptions& options) {
  if (options.prime_count < 1) throw DomainError("mu_scan needs prime_count >= 1");
  if (options.block_size < 1) throw DomainError("mu_scan needs block_size >= 1");
  const std::uint64_t block = options.block_size;
  const std::uint64_t cadence =
      std::max<std::uint64_t>(1, (options.checkpoint_every + block - 1) / block) * block;
  std::uint64_t target = options.prime_count;
  if (options.stop_after != 0) {
    target = std::min(target, (options.stop_after + block - 1) / block * block);
  }

  ScanResult result;
  CompensatedSum global;
  global.add(std::log1p(-0.5));  // the prime 2 is in every product
  std::uint64_t last_prime = 2;
  double min_mu = std::numeric_limits<double>::infinity();
  std::uint64_t min_at = 0;
  std::vector<std::uint64_t> witnesses;
  std::uint64_t done = 0;

  if (options.checkpoint && std::filesystem::exists(*options.checkpoint)) {
    const auto cp = read_checkpoint(*options.checkpoint);
    if (cp.block_size != block) {
      throw IntegrityError("checkpoint block size " + std::to_string(cp.block_size) +
                           " differs from requested " + std::to_string(block));
    }
    if (cp.primes_done > options.prime_count) {
      throw DomainError("checkpoint already covers " + std::to_string(cp.primes_done) +
                        " primes, more than requested");
    }
    global = CompensatedSum(cp.log_sum, cp.compensation);
    global.set_terms(cp.primes_done + 1);
    last_prime = cp.last_prime;
    min_mu = cp.min_mu;
    min_at = cp.min_at;
    witnesses = cp.witnesses;
    done = cp.primes_done;
    result.resumed = true;
  }

  const std::vector<std::uint64_t> probes = [&] {
    auto p = options.probes;
    std::sort(p.begin(), p.end());
    return p;
  }();

  PrimeStream stream(last_prime + 1);
  std::vector<std::uint64_t> primes;
  while (done < target) {
    const std::uint64_t batch = std::min(cadence, target - done);
    primes.clear();
    stream.take(batch, primes);
    const std::size_t nblocks = (primes.size() + block - 1) / block;
    auto block_range = [&](std::size_t b) {
      const std::size_t lo = b * block;
      return std::pair{lo, std::min<std::size_t>(primes.size(), lo + block)};
    };

    std::vector<CompensatedSum> totals(nblocks);
    parallel_for(nblocks, options.threads, [&](std::size_t b) {
      const auto [lo, hi] = block_range(b);
      CompensatedSum acc;
      for (std::size_t i = lo; i < hi; ++i) acc.add(log_term(primes[i]));
      totals[b] = acc;
    });

    std::vector<CompensatedSum> starts(nblocks);
    for (std::size_t b = 0; b < nblocks; ++b) {
      starts[b] = global;
      global.merge(totals[b]);
    }

    std::vector<BlockOutcome> outcomes(nblocks);
    parallel_for(nblocks, options.threads, [&](std::size_t b) {
      const auto [lo, hi] = block_range(b);
      CompensatedSum acc = starts[b];
      BlockOutcome& out = outcomes[b];
      for (std::size_t i = lo; i < hi; ++i) {
        const std::uint64_t p = primes[i];
        const double value =
            std::exp(constants::kEulerGamma + std::log(std::log(static_cast<double>(p))) + acc.value());
        if (value < out.min_mu) {
          out.min_mu = value;
          out.min_at = p;
        }
        if (!(value < 1.0)) out.witnesses.push_back(p);
        if (std::binary_search(probes.begin(), probes.end(), p)) out.probes.emplace_back(p, value);
        acc.add(log_term(p));
      }
    });

    for (const auto& out : outcomes) {
      if (out.min_mu < min_mu) {
        min_mu = out.min_mu;
        min_at = out.min_at;
      }
      witnesses.insert(witnesses.end(), out.witnesses.begin(), out.witnesses.end());
      for (const auto& [p, v] : out.probes) result.probe_values[p] = v;
    }
    done += primes.size();
    last_prime = primes.back();

    if (options.checkpoint) {
      ScanCheckpoint cp;
      cp.last_prime = last_prime;
      cp.primes_done = done;
      cp.log_sum = global.sum();
      cp.compensation = global.compensation();
      cp.min_mu = min_mu;
      cp.min_at = min_at;
      cp.block_size = block;
      cp.witnesses = witnesses;
      write_checkpoint(*options.checkpoint, cp);
    }
  }

  result.primes_done = done;
  result.last_prime = last_prime;
  result.log_sum = global.sum();
  result.compensation = global.compensation();
  result.min_mu = min_mu;
  result.min_at = min_at;
  result.complete = done >= options.prime_count;

  auto& report = result.report;
  report.suite = "mu-scan";
  report.cases = done;
  report.passes = done - witnesses.size();
  for (auto p : witnesses) report.failures.push_back({std::to_string(p), "mu_p >= 1"});
  report.notes.push_back("min mu_p over odd primes = " + std::to_string(min_mu) + " at p = " + std::to_string(min_at));
  report.notes.push_back("M_x on (2, 2e9] beyond the scanned range: paper-trusted range");
  return result;
}

}  // namespace pslab
