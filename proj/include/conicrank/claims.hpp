#pragma once

#include <cstddef>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "conicrank/incidence.hpp"
#include "conicrank/plane_geometry.hpp"
#include "conicrank/poly_spaces.hpp"

namespace conicrank {

class UnknownClaim : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// binom(p+1, 2)^e, the quantity every rank formula is built from.
long long triangular_power(unsigned p, unsigned e);

struct ClaimDefinition {
  std::string id;
  std::string source;  // the closed form being checked
};

/// The claim ledger in report order.
const std::vector<ClaimDefinition>& claim_ledger();

long long predict(const std::string& claim_id, unsigned p, unsigned e);

enum class ClaimStatus { Match, Mismatch, Skipped };
const char* to_string(ClaimStatus s);
ClaimStatus parse_claim_status(const std::string& s);

struct ClaimRecord {
  std::string id;
  std::string source;
  long long predicted = 0;
  std::optional<long long> computed;
  ClaimStatus status = ClaimStatus::Skipped;
  std::string skip_reason;
  double seconds = 0.0;

  bool operator==(const ClaimRecord&) const = default;
};

/// Equality between two evaluation-span dimensions, recorded whether or not it holds.
struct SpanProbe {
  std::string name;
  std::size_t lhs = 0;
  std::size_t rhs = 0;
  bool holds = false;
};

inline const std::set<std::string>& default_expected_mismatches() {
  static const std::set<std::string> ids{"rank_A_13", "rank_A_31"};
  return ids;
}

struct VerifyConfig {
  std::shared_ptr<const Field> field;
  unsigned s_guard = kDefaultSizeGuard;
  std::set<std::string> expected_mismatch = default_expected_mismatches();
  unsigned threads = 1;
};

struct Report {
  std::size_t q = 0;
  unsigned p = 0;
  unsigned e = 0;
  std::string modulus;
  std::vector<ClaimRecord> claims;
  Census census;
  bool census_ok = false;
  std::optional<SRelationReport> s_relations;
  std::vector<SpanProbe> span_probes;
  std::optional<JProfile> j_profile_external;
  std::set<std::string> expected_mismatch;

  const ClaimRecord& claim(const std::string& id) const;
  /// Mismatching claims outside the expected list.
  std::vector<std::string> unexpected_mismatches() const;
  /// 0 when every non-flagged claim matches and the census agrees, 2 otherwise.
  int exit_code() const;
};

/// Builds A (and S, evaluation spans when q <= s_guard), computes each claim
/// by elimination and compares it with its closed form. Sub-step failures
/// become Skipped records rather than exceptions.
Report verify(const VerifyConfig& config);

void write_report_json(std::ostream& os, const std::vector<Report>& reports);
void write_report_json(std::ostream& os, const Report& report);
void write_report_csv(std::ostream& os, const std::vector<Report>& reports);
void write_report_table(std::ostream& os, const Report& report);

struct CsvClaimRow {
  std::size_t q = 0;
  ClaimRecord record;
  bool operator==(const CsvClaimRow&) const = default;
};

std::vector<CsvClaimRow> read_report_csv(std::istream& is);

}  // namespace conicrank
