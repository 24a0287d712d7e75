#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "spinr/spaces.hpp"

namespace spinr::cli {

enum ExitCode : int {
  kOk = 0,
  kMismatch = 1,
  kUnknownName = 2,
  kHypothesis = 3,
  kCatalogError = 4,
};

struct ClassOut {
  std::string family_id;
  std::string label;
  std::string constraint;
  bool infinite = false;
  std::optional<int> induced_from;
  std::optional<std::string> extends_to;
  std::string distinct_classes;
  std::string provenance;

  bool operator==(const ClassOut&) const = default;
};

struct RejectionOut {
  std::string family_id;
  std::string label;
  std::vector<std::string> witnesses;

  bool operator==(const RejectionOut&) const = default;
};

struct InstanceOut {
  std::string name;
  int expected = 0;
  std::optional<int> lo;
  std::optional<int> hi;
  std::string status;  // "exact", "bounded" or "missing"
  bool match = false;

  bool operator==(const InstanceOut&) const = default;
};

struct RowOut {
  std::string space;
  std::string group;
  std::string formula;
  std::vector<InstanceOut> instances;
  std::string status;
  bool match = false;

  bool operator==(const RowOut&) const = default;
};

struct ErrorOut {
  int code = 0;
  std::string kind;
  std::string message;
  std::vector<std::string> available;

  bool operator==(const ErrorOut&) const = default;
};

/// What every command prints, as markdown or JSON.
struct OutputRecord {
  std::string command;
  std::map<std::string, std::string> query;
  std::optional<std::string> verdict;
  std::optional<int> spin_type_lo;
  std::optional<int> spin_type_hi;
  std::optional<std::string> status;
  std::optional<bool> complete;
  std::optional<std::int64_t> count;
  bool infinite = false;
  std::string certificate;
  std::vector<ClassOut> classes;
  std::vector<RejectionOut> rejected;
  std::vector<std::string> trace;
  std::vector<RowOut> rows;
  std::vector<std::string> diff;
  std::vector<std::string> notes;
  std::vector<std::string> citations;
  std::optional<ErrorOut> error;

  bool operator==(const OutputRecord&) const = default;
};

nlohmann::json to_json(const OutputRecord& rec);
/// Inverse of to_json. Throws InvalidInput on a malformed document.
OutputRecord record_from_json(const nlohmann::json& j);

std::string render_json(const OutputRecord& rec);
std::string render_markdown(const OutputRecord& rec);

struct FixtureRow {
  std::string space;
  std::string group;
  std::string formula;
  std::vector<std::pair<std::string, int>> instances;
};

/// Expected table values. Throws CatalogError when the file is unreadable or malformed.
std::vector<FixtureRow> load_fixture(const std::string& path);
std::vector<FixtureRow> parse_fixture(std::string_view text);
std::string default_fixture_path();

struct CommandResult {
  OutputRecord record;
  int exit_code = kOk;
};

CommandResult cmd_table1(const spaces::Catalog& cat, const std::vector<FixtureRow>& fixture, bool strict);
CommandResult cmd_classify(const spaces::Catalog& cat, std::string_view space, int r);
CommandResult cmd_spin_type(const spaces::Catalog& cat, std::string_view space, bool strict);
CommandResult cmd_holonomy(const spaces::Catalog& cat, std::string_view group, int m, int r);

/// Parses arguments, loads the catalog and dispatches. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spinr::cli
