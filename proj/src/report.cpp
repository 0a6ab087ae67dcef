#include "pslab/report.hpp"

#include <algorithm>
#include <sstream>

namespace pslab {

void VerificationReport::record(bool ok, std::string case_id, std::string detail) {
  ++cases;
  if (ok) {
    ++passes;
    if (log_passes) passed.push_back({std::move(case_id), std::move(detail)});
  } else {
    failures.push_back({std::move(case_id), std::move(detail)});
  }
}

void VerificationReport::sort_witnesses() {
  auto by_id = [](const Witness& a, const Witness& b) {
    return a.case_id < b.case_id || (a.case_id == b.case_id && a.detail < b.detail);
  };
  std::stable_sort(failures.begin(), failures.end(), by_id);
  std::stable_sort(passed.begin(), passed.end(), by_id);
}

void VerificationReport::absorb(const VerificationReport& other) {
  cases += other.cases;
  passes += other.passes;
  failures.insert(failures.end(), other.failures.begin(), other.failures.end());
  passed.insert(passed.end(), other.passed.begin(), other.passed.end());
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
  wall_time_s += other.wall_time_s;
}

nlohmann::json to_json(const VerificationReport& r, bool include_timing) {
  nlohmann::json j;
  j["suite"] = r.suite;
  j["cases"] = r.cases;
  j["passes"] = r.passes;
  j["seed"] = r.seed;
  j["generator_version"] = r.generator_version;
  j["ok"] = r.ok();
  auto& fails = j["failures"] = nlohmann::json::array();
  for (const auto& w : r.failures) fails.push_back({{"case_id", w.case_id}, {"witness", w.detail}});
  if (r.log_passes) {
    auto& rows = j["passed"] = nlohmann::json::array();
    for (const auto& w : r.passed) rows.push_back({{"case_id", w.case_id}, {"detail", w.detail}});
  }
  if (!r.notes.empty()) j["notes"] = r.notes;
  if (include_timing) j["wall_time_s"] = r.wall_time_s;
  return j;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_csv(const VerificationReport& r) {
  std::ostringstream os;
  os << "suite,case_id,status,witness\n";
  for (const auto& w : r.passed) {
    os << csv_field(r.suite) << ',' << csv_field(w.case_id) << ",pass," << csv_field(w.detail) << '\n';
  }
  for (const auto& w : r.failures) {
    os << csv_field(r.suite) << ',' << csv_field(w.case_id) << ",fail," << csv_field(w.detail) << '\n';
  }
  return os.str();
}

}  // namespace pslab
