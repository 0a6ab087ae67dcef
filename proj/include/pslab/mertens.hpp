#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pslab/report.hpp"
#include "pslab/summation.hpp"

namespace pslab {

// mu_x = e^gamma * log x * prod_{p < x} (1 - 1/p), with a rounding envelope.
struct MuValue {
  double x = 0.0;
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::uint64_t primes_used = 0;
};

// Relative width k * eps * (terms + 2) with k = 4; the +2 covers the final
// exp/log evaluations.
MuValue make_mu_value(double x, const CompensatedSum& log_product);

// From scratch: sieves the primes below x and sums log(1 - 1/p) with
// compensation. Primes equal to x are excluded.
MuValue mu(double x);

// Prefix log-products over all primes <= limit, for bulk evaluation of mu.
// Summation order matches mu(x), so values agree bit for bit.
class MertensTable {
 public:
  explicit MertensTable(std::uint64_t limit);
  std::uint64_t limit() const { return limit_; }
  // Requires x <= limit + 1.
  MuValue mu(double x) const;
  const std::vector<std::uint64_t>& primes() const { return primes_; }

 private:
  std::uint64_t limit_;
  std::vector<std::uint64_t> primes_;
  std::vector<CompensatedSum> prefix_;  // prefix_[i] = sum over primes_[0..i)
};

// Piecewise monotone envelopes from the explicit Mertens bounds:
//   m: mu_7 for q <= 7, mu_19 for 7 < q <= 300, 1 - 1/(2 log^2 q) beyond;
//   M: mu_2 for x <= 2, 1 + 1/(2 log^2(2e9)) up to 2e9, 1 + 1/(2 log^2 x) beyond.
double m_envelope(std::uint64_t q);
double M_envelope(double x);

// A certified lower bound for m_q = inf_{p >= q} mu_p. Equal to the exact
// infimum for q <= 199 (attained at one of 7, 19, 23, 31, 47, 113, 199);
// min(mu_p : q <= p <= 300) capped by 1 - 1/(2 log^2 300) for 199 < q <= 300;
// 1 - 1/(2 log^2 q) above 300. Always >= m_envelope(q).
double m_lower(std::uint64_t q);

// r_q = M_q / m_q using the envelopes, with r_2 = r_3.
double r_ratio(std::uint64_t q);

struct EnvelopePiece {
  double lo;  // exclusive, except the first piece
  double hi;  // inclusive; +inf for the last piece
  std::string formula;
  double value_at_lo;
};

struct EnvelopeTable {
  std::vector<EnvelopePiece> m_pieces;
  std::vector<EnvelopePiece> M_pieces;
};

EnvelopeTable envelope_table();

// The primes 2..199 whose mu values are tabulated (46 entries).
const std::vector<std::uint64_t>& mu_table_primes();
std::vector<MuValue> mu_table();

struct ScanOptions {
  std::uint64_t prime_count = 0;  // odd primes to scan
  std::optional<std::filesystem::path> checkpoint;
  unsigned threads = 1;
  std::uint64_t block_size = 100'000;            // primes per compensated block
  std::uint64_t checkpoint_every = 1'000'000;    // rounded up to whole blocks
  std::vector<std::uint64_t> probes;             // primes whose scanned mu is reported
  // Stop (and checkpoint) once this many primes are done; 0 = run to the end.
  std::uint64_t stop_after = 0;
};

struct ScanResult {
  VerificationReport report;
  std::uint64_t primes_done = 0;
  std::uint64_t last_prime = 0;
  double log_sum = 0.0;
  double compensation = 0.0;
  double min_mu = 0.0;
  std::uint64_t min_at = 0;
  bool resumed = false;
  bool complete = false;
  std::map<std::uint64_t, double> probe_values;
};

// Streams the first prime_count odd primes, checking mu_p < 1 for each.
// Primes are grouped into fixed blocks; each block's log-sum starts from zero
// and blocks are merged in index order, so results do not depend on threads.
ScanResult mu_scan(const ScanOptions& options);

struct ScanCheckpoint {
  static constexpr int kVersion = 1;
  std::uint64_t last_prime = 0;
  std::uint64_t primes_done = 0;
  double log_sum = 0.0;
  double compensation = 0.0;
  double min_mu = 0.0;
  std::uint64_t min_at = 0;
  std::uint64_t block_size = 0;
  std::vector<std::uint64_t> witnesses;
};

void write_checkpoint(const std::filesystem::path& path, const ScanCheckpoint& cp);
// Throws IntegrityError on any malformed, inconsistent or tampered file.
ScanCheckpoint read_checkpoint(const std::filesystem::path& path);

}  // namespace pslab
