#pragma once

#include "grudyn/fixed_points.hpp"
#include "grudyn/serialize.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace grudyn {

struct CatalogCase {
  std::string id;      // "i".."xxxvi", or a figure row such as "4b"
  std::string source;  // "table" or "figure"
  GruParams params;
  std::optional<TopologySignature> expected;
  std::optional<std::string> suspect;  // reason the expected row is doubtful
  std::optional<std::string> printed_id;
};

/// Embedded catalog, in file order: the 36 table cases then the figure rows.
const std::vector<CatalogCase>& catalog_cases();
int catalog_version();
const CatalogCase& find_case(const std::string& id);  // throws UnknownCase
std::vector<std::string> table_case_ids();

Json to_json(const CatalogCase& c);
CatalogCase catalog_case_from_json(const Json& j);
std::vector<CatalogCase> parse_catalog(const Json& j);

enum class Match { exact, count_only, mismatch, unchecked };
std::string to_string(Match m);

struct VerificationReport {
  std::string id;
  TopologySignature computed;
  std::optional<TopologySignature> expected;
  Match match = Match::unchecked;
  std::vector<FixedPoint> points;
  FixedPointOptions tolerances;
  std::optional<std::string> suspect;
  bool nonzero_bh = false;  // result could depend on where bh enters the candidate activation
};

struct VerificationSummary {
  std::vector<VerificationReport> reports;
  int exact = 0;
  int count_only = 0;
  int mismatch = 0;
  int total_correct = 0;  // exact + count_only
};

Match compare_signatures(const TopologySignature& computed, const TopologySignature& expected);

VerificationReport verify_params(const std::string& id, const GruParams& params,
                                 const std::optional<TopologySignature>& expected,
                                 const FixedPointOptions& opts = {});
VerificationReport verify_case(const std::string& id, const FixedPointOptions& opts = {});

/// Verifies the listed ids (default: every table case) in the given order.
VerificationSummary verify_all(const FixedPointOptions& opts = {},
                               const std::vector<std::string>& ids = table_case_ids());

Json to_json(const VerificationReport& r);
Json to_json(const VerificationSummary& s);

/// CSV with columns id, expected counts, computed counts, match.
void write_summary_csv(const VerificationSummary& s, std::ostream& out);

}  // namespace grudyn
