#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace pslab {

struct Witness {
  std::string case_id;
  std::string detail;
};

// Outcome of one verification suite. Invariant: passes + failures.size() == cases.
struct VerificationReport {
  std::string suite;
  std::uint64_t cases = 0;
  std::uint64_t passes = 0;
  std::vector<Witness> failures;
  // Passing cases are only kept when log_passes is set (table suites).
  bool log_passes = false;
  std::vector<Witness> passed;
  std::uint64_t seed = 0;
  std::string generator_version;
  double wall_time_s = 0.0;
  std::vector<std::string> notes;

  void record(bool ok, std::string case_id, std::string detail = {});
  bool ok() const { return failures.empty() && passes == cases; }
  // Sorted by case id so merges from parallel batches emit a stable order.
  void sort_witnesses();
  void absorb(const VerificationReport& other);
};

nlohmann::json to_json(const VerificationReport& r, bool include_timing = true);
// Columns: suite,case_id,status,witness.
std::string to_csv(const VerificationReport& r);

}  // namespace pslab
