#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "charp/report.hpp"

namespace charp {

enum class CheckStatus { pass, fail, inconclusive };
std::string_view to_string(CheckStatus s);
CheckStatus parse_status(std::string_view text);

struct SuiteEntry {
  std::string id;
  std::string title;
  CheckStatus status = CheckStatus::inconclusive;
  double runtime_ms = 0;
  Json certificate;  ///< replay data; null when the check has none
  std::string detail;
  bool mandatory = true;
};

struct SuiteReport {
  int schema = kReportSchema;
  std::vector<SuiteEntry> entries;  ///< sorted by id

  /// pass iff no mandatory entry failed or was inconclusive; fail dominates inconclusive.
  CheckStatus overall() const;
};

/// 0 pass, 1 fail, 2 inconclusive.
int exit_code(CheckStatus s);

struct SuiteOptions {
  std::vector<std::string> only;  ///< empty runs every check
  std::uint64_t qmax = 16;        ///< largest q in the tight-closure check
  unsigned ebudget = 4;           ///< largest Frobenius exponent for splitting tests
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::uint32_t jet = 12;
  MonomialOrder order = MonomialOrder::grevlex;
  std::uint64_t split_budget = 50'000'000;
};

/// Identifiers accepted by SuiteOptions::only, in run order.
const std::vector<std::string>& suite_ids();

/// Runs the reference checks. Throws InputError for an unknown id in options.only.
SuiteReport run_reference_suite(const SuiteOptions& options);

Json to_json(const SuiteReport& report);
SuiteReport suite_report_from_json(const Json& j);

struct ReplayEntry {
  std::string id;
  CheckStatus recorded = CheckStatus::inconclusive;
  CheckStatus replayed = CheckStatus::inconclusive;
  std::string method;  ///< "certificate" or "rerun"
  std::string detail;
};

struct ReplayResult {
  std::vector<ReplayEntry> entries;
  /// pass iff every recorded status is reproduced and every recorded certificate re-verifies.
  CheckStatus overall() const;
};

/// Re-verifies stored certificates independently and re-runs checks without one.
ReplayResult replay_report(const Json& report, const SuiteOptions& rerun_options = {});

Json to_json(const ReplayResult& r);

}  // namespace charp
