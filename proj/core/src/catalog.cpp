#include "grudyn/catalog.hpp"

#include "grudyn/report.hpp"

#include <algorithm>
#include <ostream>
#include <string_view>

namespace grudyn {

namespace detail {
extern const std::string_view kCatalogJson;
}

namespace {

struct Embedded {
  int version = 0;
  std::vector<CatalogCase> cases;
};

const Embedded& embedded() {
  static const Embedded data = [] {
    const Json j = Json::parse(detail::kCatalogJson);
    return Embedded{j.at("version").get<int>(), parse_catalog(j)};
  }();
  return data;
}

}  // namespace

CatalogCase catalog_case_from_json(const Json& j) {
  CatalogCase c;
  c.id = j.at("id").get<std::string>();
  c.source = j.value("source", "table");
  c.params = gru_params_from_json(j.at("params"));
  if (j.contains("expected")) {
    c.expected = signature_from_json(j.at("expected"));
    const auto& e = *c.expected;
    if (e.total != e.sinks + e.sources + e.saddles + e.saddle_node_1 + e.saddle_node_2 +
                       e.codim2 + e.other)
      throw ConfigError("catalog case " + c.id + ": expected total is not the category sum");
  }
  if (j.contains("suspect")) c.suspect = j.at("suspect").get<std::string>();
  if (j.contains("printed_id")) c.printed_id = j.at("printed_id").get<std::string>();
  return c;
}

Json to_json(const CatalogCase& c) {
  Json j{{"id", c.id}, {"source", c.source}, {"params", to_json(c.params)}};
  if (c.expected) {
    j["expected"] = to_json(*c.expected);
    j["expected"].erase("other");
  }
  if (c.suspect) j["suspect"] = *c.suspect;
  if (c.printed_id) j["printed_id"] = *c.printed_id;
  return j;
}

std::vector<CatalogCase> parse_catalog(const Json& j) {
  std::vector<CatalogCase> out;
  for (const Json& c : j.at("cases")) out.push_back(catalog_case_from_json(c));
  return out;
}

const std::vector<CatalogCase>& catalog_cases() { return embedded().cases; }

int catalog_version() { return embedded().version; }

const CatalogCase& find_case(const std::string& id) {
  const auto& cases = catalog_cases();
  auto it = std::find_if(cases.begin(), cases.end(), [&](const CatalogCase& c) {
    return c.id == id || (c.printed_id && *c.printed_id == id);
  });
  if (it == cases.end()) throw UnknownCase(id);
  return *it;
}

std::vector<std::string> table_case_ids() {
  std::vector<std::string> ids;
  for (const auto& c : catalog_cases())
    if (c.source == "table") ids.push_back(c.id);
  return ids;
}

std::string to_string(Match m) {
  switch (m) {
    case Match::exact: return "exact";
    case Match::count_only: return "count-only";
    case Match::mismatch: return "mismatch";
    case Match::unchecked: return "unchecked";
  }
  return "unknown";
}

Match compare_signatures(const TopologySignature& computed, const TopologySignature& expected) {
  if (computed == expected) return Match::exact;
  if (computed.total == expected.total) return Match::count_only;
  return Match::mismatch;
}

VerificationReport verify_params(const std::string& id, const GruParams& params,
                                 const std::optional<TopologySignature>& expected,
                                 const FixedPointOptions& opts) {
  VerificationReport r;
  r.id = id;
  r.tolerances = opts;
  r.points = find_fixed_points(params, opts);
  r.computed = topology_signature(r.points);
  r.expected = expected;
  if (expected) r.match = compare_signatures(r.computed, *expected);
  r.nonzero_bh = params.bh.cwiseAbs().maxCoeff() > 0.0;
  return r;
}

VerificationReport verify_case(const std::string& id, const FixedPointOptions& opts) {
  const CatalogCase& c = find_case(id);
  VerificationReport r = verify_params(c.id, c.params, c.expected, opts);
  r.suspect = c.suspect;
  return r;
}

VerificationSummary verify_all(const FixedPointOptions& opts, const std::vector<std::string>& ids) {
  VerificationSummary s;
  for (const std::string& id : ids) {
    s.reports.push_back(verify_case(id, opts));
    switch (s.reports.back().match) {
      case Match::exact: ++s.exact; break;
      case Match::count_only: ++s.count_only; break;
      case Match::mismatch: ++s.mismatch; break;
      case Match::unchecked: break;
    }
  }
  s.total_correct = s.exact + s.count_only;
  return s;
}

Json to_json(const VerificationReport& r) {
  Json pts = Json::array();
  for (const auto& p : r.points) pts.push_back(to_json(p));
  Json j{{"id", r.id},
         {"computed", to_json(r.computed)},
         {"expected", r.expected ? to_json(*r.expected) : Json(nullptr)},
         {"match", to_string(r.match)},
         {"fixed_points", pts},
         {"tolerances", to_json(r.tolerances)}};
  if (r.suspect) j["suspect"] = *r.suspect;
  if (r.nonzero_bh && r.match != Match::exact && r.match != Match::unchecked)
    j["bh_placement_sensitive"] = true;
  return j;
}

Json to_json(const VerificationSummary& s) {
  Json cases = Json::array();
  for (const auto& r : s.reports) {
    Json c{{"id", r.id}, {"match", to_string(r.match)}, {"computed", to_json(r.computed)}};
    if (r.expected) c["expected"] = to_json(*r.expected);
    if (r.suspect) c["suspect"] = *r.suspect;
    cases.push_back(c);
  }
  return {{"catalog_version", catalog_version()},
          {"exact", s.exact},
          {"count_only", s.count_only},
          {"mismatch", s.mismatch},
          {"total_correct", s.total_correct},
          {"cases", cases}};
}

void write_summary_csv(const VerificationSummary& s, std::ostream& out) {
  static const char* cols[] = {"total", "sinks", "sources", "saddles", "sn1", "sn2", "codim2"};
  out << "id";
  for (const char* c : cols) out << ",expected_" << c;
  for (const char* c : cols) out << ",computed_" << c;
  out << ",computed_other,match\n";
  auto row = [&](const TopologySignature& t) {
    out << ',' << t.total << ',' << t.sinks << ',' << t.sources << ',' << t.saddles << ','
        << t.saddle_node_1 << ',' << t.saddle_node_2 << ',' << t.codim2;
  };
  for (const auto& r : s.reports) {
    out << r.id;
    if (r.expected)
      row(*r.expected);
    else
      out << ",,,,,,,";
    row(r.computed);
    out << ',' << r.computed.other << ',' << to_string(r.match) << '\n';
  }
}

}  // namespace grudyn
