#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "procunc/harness.hpp"

namespace procunc {
namespace io {

using json = nlohmann::ordered_json;

/// Parse failure (malformed JSON or schema shape): CLI exit code 2.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Matrices are row-major nested arrays; complex scalars are [re, im].
// Every entry must be finite.
Matrix matrix_from_json(const json& j);
json matrix_to_json(const Matrix& m);

struct ObjectDiagnostic {
  std::string kind;  // "state", "povm", "channel", "tester"
  std::string name;
  bool pass = false;
  std::string message;                       // first failure, empty when pass
  std::map<std::string, double> residuals;   // name -> value
};

struct TesterSpec {
  std::string input_state;
  std::string povm;
};

/// Campaign section: the numeric config plus the tester selection (named
/// testers, or a deterministic random pair with the given outcome counts).
struct CampaignSpec {
  CampaignConfig config;
  std::optional<std::pair<std::string, std::string>> tester_names;
  Index random_outcomes_1 = 2;
  Index random_outcomes_2 = 2;
};

struct InputDocument {
  std::string version = "1";
  std::map<std::string, DensityOperator> states;
  std::map<std::string, Povm> povms;
  std::map<std::string, QuantumChannel> channels;
  std::map<std::string, TesterSpec> tester_specs;
  std::optional<CampaignSpec> campaign;
  std::vector<ObjectDiagnostic> diagnostics;

  bool all_valid() const;
  /// Builds the named tester; the spec references must exist and be valid.
  Tester build_named_tester(const std::string& name) const;
};

/// Throws ParseError on malformed JSON or schema shape; semantic validation
/// failures land in `diagnostics` instead (objects failing validation are not
/// materialized).
InputDocument load_document(std::istream& in);
InputDocument load_document_file(const std::string& path);  // "-" reads stdin

/// Canonical emission of the loadable object sections; numeric fields
/// round-trip bit-exactly through load_document.
json document_to_json(const InputDocument& doc);

json campaign_spec_to_json(const CampaignSpec& spec);

// Report serialization. `log_base` rescales entropic quantities (bits are
// divided by log₂ base); probability-scale vectors are untouched.
json bound_report_to_json(const BoundVectors& bounds, const OverlapTable& table,
                          double overlap_used, double log_base);
json campaign_report_to_json(const CampaignReport& report, const CampaignSpec& spec,
                             double log_base);
json uur_report_to_json(const UurReport& rep);

std::string dump(const json& j);

}  // namespace io
}  // namespace procunc
