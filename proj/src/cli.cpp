#include "spinr/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>

#include "spinr/errors.hpp"

namespace spinr::cli {

using nlohmann::json;

namespace {

template <class T>
void put(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <class T>
std::optional<T> get_opt(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

json class_json(const ClassOut& c) {
  json j = {{"family_id", c.family_id},   {"label", c.label},
            {"constraint", c.constraint}, {"infinite", c.infinite},
            {"distinct_classes", c.distinct_classes}, {"provenance", c.provenance}};
  put(j, "induced_from", c.induced_from);
  put(j, "extends_to", c.extends_to);
  return j;
}

ClassOut class_from(const json& j) {
  ClassOut c;
  c.family_id = j.at("family_id").get<std::string>();
  c.label = j.at("label").get<std::string>();
  c.constraint = get_or<std::string>(j, "constraint", "");
  c.infinite = get_or(j, "infinite", false);
  c.induced_from = get_opt<int>(j, "induced_from");
  c.extends_to = get_opt<std::string>(j, "extends_to");
  c.distinct_classes = get_or<std::string>(j, "distinct_classes", "");
  c.provenance = get_or<std::string>(j, "provenance", "");
  return c;
}

json instance_json(const InstanceOut& i) {
  json j = {{"name", i.name}, {"expected", i.expected}, {"status", i.status}, {"match", i.match}};
  put(j, "lo", i.lo);
  put(j, "hi", i.hi);
  return j;
}

InstanceOut instance_from(const json& j) {
  InstanceOut i;
  i.name = j.at("name").get<std::string>();
  i.expected = j.at("expected").get<int>();
  i.lo = get_opt<int>(j, "lo");
  i.hi = get_opt<int>(j, "hi");
  i.status = j.at("status").get<std::string>();
  i.match = j.at("match").get<bool>();
  return i;
}

std::string cell(std::string s) {
  std::string out;
  for (char ch : s) {
    if (ch == '|') out += '\\';
    out += ch;
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

void add_citation(OutputRecord& rec, const std::string& c) {
  if (c.empty()) return;
  for (const auto& have : rec.citations)
    if (have == c) return;
  rec.citations.push_back(c);
}

ClassOut class_out(const spaces::ClassEntry& e) {
  ClassOut c;
  c.family_id = e.family_id;
  c.label = e.label;
  c.constraint = e.constraint;
  c.infinite = e.infinite;
  c.induced_from = e.induced_from;
  c.extends_to = e.extends_to;
  c.distinct_classes = e.distinct_classes;
  c.provenance = e.provenance;
  return c;
}

void fill_classification(OutputRecord& rec, const spaces::Classification& c) {
  rec.complete = c.complete;
  rec.count = c.count;
  rec.infinite = !c.count.has_value();
  rec.certificate = c.certificate;
  rec.trace = c.trace;
  for (const auto& e : c.classes) {
    rec.classes.push_back(class_out(e));
    add_citation(rec, e.provenance);
  }
  for (const auto& r : c.rejected) {
    RejectionOut out{r.family_id, r.label, {}};
    for (const auto& w : r.witnesses) out.witnesses.push_back(w.description);
    rec.rejected.push_back(std::move(out));
    add_citation(rec, r.provenance);
  }
}

CommandResult failure(OutputRecord rec, int code, std::string kind, std::string message,
                      std::vector<std::string> available = {}) {
  rec.error = ErrorOut{code, std::move(kind), std::move(message), std::move(available)};
  return {std::move(rec), code};
}

// Maps library exceptions onto exit codes.
template <class F>
CommandResult guarded(OutputRecord rec, F&& body) {
  try {
    return body(rec);
  } catch (const NotInCatalog& e) {
    return failure(std::move(rec), kUnknownName, "unknown name", e.what(), e.available());
  } catch (const HypothesisViolation& e) {
    return failure(std::move(rec), kHypothesis, "hypothesis violation", e.what());
  } catch (const InvalidInput& e) {
    return failure(std::move(rec), kHypothesis, "invalid input", e.what());
  } catch (const CatalogError& e) {
    return failure(std::move(rec), kCatalogError, "catalog error", e.what());
  }
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

void markdown_classes(std::ostringstream& os, const OutputRecord& rec) {
  if (rec.complete)
    os << "- complete: " << yes_no(*rec.complete) << "\n";
  if (!rec.certificate.empty()) os << "- certificate: " << rec.certificate << "\n";
  if (rec.infinite)
    os << "- classes: infinitely many\n";
  else if (rec.count)
    os << "- classes: " << *rec.count << "\n";
  if (!rec.classes.empty()) {
    os << "\n| family | class | extends to | induced from |\n|---|---|---|---|\n";
    for (const auto& c : rec.classes)
      os << "| " << cell(c.family_id) << " | " << cell(c.label) << " | " << cell(c.extends_to.value_or("-"))
         << " | " << (c.induced_from ? "r = " + std::to_string(*c.induced_from) : "-") << " |\n";
  }
  if (!rec.rejected.empty()) {
    os << "\nRejected:\n\n| family | class | witness |\n|---|---|---|\n";
    for (const auto& r : rec.rejected)
      os << "| " << cell(r.family_id) << " | " << cell(r.label) << " | " << cell(join(r.witnesses, "; ")) << " |\n";
  }
  if (!rec.trace.empty()) {
    os << "\nTrace:\n\n";
    for (const auto& t : rec.trace) os << "- " << t << "\n";
  }
}

}  // namespace

json to_json(const OutputRecord& rec) {
  json j;
  j["command"] = rec.command;
  j["query"] = rec.query;
  put(j, "verdict", rec.verdict);
  put(j, "spin_type_lo", rec.spin_type_lo);
  put(j, "spin_type_hi", rec.spin_type_hi);
  put(j, "status", rec.status);
  put(j, "complete", rec.complete);
  put(j, "count", rec.count);
  j["infinite"] = rec.infinite;
  j["certificate"] = rec.certificate;
  j["classes"] = json::array();
  for (const auto& c : rec.classes) j["classes"].push_back(class_json(c));
  j["rejected"] = json::array();
  for (const auto& r : rec.rejected)
    j["rejected"].push_back({{"family_id", r.family_id}, {"label", r.label}, {"witnesses", r.witnesses}});
  j["trace"] = rec.trace;
  j["rows"] = json::array();
  for (const auto& row : rec.rows) {
    json rj = {{"space", row.space}, {"group", row.group},   {"formula", row.formula},
               {"status", row.status}, {"match", row.match}, {"instances", json::array()}};
    for (const auto& i : row.instances) rj["instances"].push_back(instance_json(i));
    j["rows"].push_back(std::move(rj));
  }
  j["diff"] = rec.diff;
  j["notes"] = rec.notes;
  j["citations"] = rec.citations;
  if (rec.error)
    j["error"] = {{"code", rec.error->code},
                  {"kind", rec.error->kind},
                  {"message", rec.error->message},
                  {"available", rec.error->available}};
  return j;
}

OutputRecord record_from_json(const json& j) {
  try {
    OutputRecord rec;
    rec.command = j.at("command").get<std::string>();
    rec.query = j.at("query").get<std::map<std::string, std::string>>();
    rec.verdict = get_opt<std::string>(j, "verdict");
    rec.spin_type_lo = get_opt<int>(j, "spin_type_lo");
    rec.spin_type_hi = get_opt<int>(j, "spin_type_hi");
    rec.status = get_opt<std::string>(j, "status");
    rec.complete = get_opt<bool>(j, "complete");
    rec.count = get_opt<std::int64_t>(j, "count");
    rec.infinite = get_or(j, "infinite", false);
    rec.certificate = get_or<std::string>(j, "certificate", "");
    for (const auto& c : j.value("classes", json::array())) rec.classes.push_back(class_from(c));
    for (const auto& r : j.value("rejected", json::array()))
      rec.rejected.push_back({r.at("family_id").get<std::string>(), r.at("label").get<std::string>(),
                              r.at("witnesses").get<std::vector<std::string>>()});
    rec.trace = get_or<std::vector<std::string>>(j, "trace", {});
    for (const auto& rj : j.value("rows", json::array())) {
      RowOut row;
      row.space = rj.at("space").get<std::string>();
      row.group = rj.at("group").get<std::string>();
      row.formula = rj.at("formula").get<std::string>();
      row.status = rj.at("status").get<std::string>();
      row.match = rj.at("match").get<bool>();
      for (const auto& i : rj.at("instances")) row.instances.push_back(instance_from(i));
      rec.rows.push_back(std::move(row));
    }
    rec.diff = get_or<std::vector<std::string>>(j, "diff", {});
    rec.notes = get_or<std::vector<std::string>>(j, "notes", {});
    rec.citations = get_or<std::vector<std::string>>(j, "citations", {});
    if (j.contains("error")) {
      const auto& e = j.at("error");
      rec.error = ErrorOut{e.at("code").get<int>(), e.at("kind").get<std::string>(),
                           e.at("message").get<std::string>(), e.at("available").get<std::vector<std::string>>()};
    }
    return rec;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed output record: ") + e.what());
  }
}

std::string render_json(const OutputRecord& rec) { return to_json(rec).dump(2); }

std::string render_markdown(const OutputRecord& rec) {
  std::ostringstream os;
  if (rec.error) {
    // NotInCatalog messages already carry the available names
    os << "error (" << rec.error->kind << "): " << rec.error->message << "\n";
    return os.str();
  }
  if (rec.command == "table1") {
    os << "# G-invariant spin type of homogeneous spheres\n\n";
    os << "| Space | Group | Σ(M,G) | Checked | Status |\n|---|---|---|---|---|\n";
    for (const auto& row : rec.rows) {
      std::vector<std::string> checked;
      for (const auto& i : row.instances) {
        std::string got = i.lo ? std::to_string(*i.lo) : "?";
        if (i.status == "bounded" && i.hi) got = "[" + got + ", " + std::to_string(*i.hi) + "]";
        checked.push_back(i.name + " = " + got + (i.match ? "" : " (expected " + std::to_string(i.expected) + ")"));
      }
      os << "| " << cell(row.space) << " | " << cell(row.group) << " | " << cell(row.formula) << " | "
         << cell(join(checked, ", ")) << " | " << row.status << " |\n";
    }
    if (!rec.diff.empty()) {
      os << "\nMismatches:\n\n";
      for (const auto& d : rec.diff) os << "- " << d << "\n";
    }
  } else if (rec.command == "classify") {
    os << "## classify " << rec.query.at("space") << " at r = " << rec.query.at("r") << "\n\n";
    markdown_classes(os, rec);
  } else if (rec.command == "spin-type") {
    os << "## spin-type " << rec.query.at("space") << "\n\n";
    if (rec.status == "exact")
      os << "Σ = " << *rec.spin_type_lo << " (exact)\n";
    else
      os << "Σ in [" << *rec.spin_type_lo << ", " << *rec.spin_type_hi << "] (bounded)\n";
    if (!rec.classes.empty()) {
      os << "\nStructures at r = " << *rec.spin_type_lo << ":\n\n| family | class |\n|---|---|\n";
      for (const auto& c : rec.classes) os << "| " << cell(c.family_id) << " | " << cell(c.label) << " |\n";
    }
    if (!rec.notes.empty()) {
      os << "\nNotes:\n\n";
      for (const auto& n : rec.notes) os << "- " << n << "\n";
    }
  } else if (rec.command == "holonomy") {
    os << "## holonomy " << rec.query.at("group") << " in SO(" << rec.query.at("m") << ") at r = " << rec.query.at("r")
       << "\n\nverdict: " << rec.verdict.value_or("unknown") << "\n\n";
    markdown_classes(os, rec);
  }
  if (!rec.citations.empty()) {
    os << "\nSources:\n\n";
    for (const auto& c : rec.citations) os << "- " << c << "\n";
  }
  return os.str();
}

std::vector<FixtureRow> parse_fixture(std::string_view text) {
  std::vector<FixtureRow> rows;
  try {
    json j = json::parse(text);
    if (j.at("version").get<int>() != 1) throw CatalogError(0, "fixture: unsupported version");
    for (const auto& rj : j.at("rows")) {
      FixtureRow row{rj.at("space").get<std::string>(), rj.at("group").get<std::string>(),
                     rj.at("formula").get<std::string>(), {}};
      for (const auto& i : rj.at("instances"))
        row.instances.emplace_back(i.at("name").get<std::string>(), i.at("expected").get<int>());
      if (row.instances.empty()) throw CatalogError(0, "fixture: row " + row.space + " has no instances");
      rows.push_back(std::move(row));
    }
  } catch (const json::exception& e) {
    throw CatalogError(0, std::string("fixture: ") + e.what());
  }
  return rows;
}

std::vector<FixtureRow> load_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CatalogError(0, "cannot open fixture " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_fixture(ss.str());
}

std::string default_fixture_path() { return SPINR_DEFAULT_FIXTURE; }

CommandResult cmd_table1(const spaces::Catalog& cat, const std::vector<FixtureRow>& fixture, bool strict) {
  OutputRecord rec;
  rec.command = "table1";
  rec.query["strict"] = strict ? "true" : "false";
  bool all_match = true, all_exact = true;
  for (const auto& f : fixture) {
    RowOut row{f.space, f.group, f.formula, {}, "exact", true};
    for (const auto& [name, expected] : f.instances) {
      InstanceOut inst;
      inst.name = name;
      inst.expected = expected;
      try {
        auto space = cat.spaces.lookup(name);
        auto st = spaces::invariant_spin_type(cat, space);
        inst.lo = st.lo;
        inst.hi = st.hi;
        inst.status = st.status();
        inst.match = st.exact && st.lo == expected;
        add_citation(rec, space.provenance);
        if (!inst.match)
          rec.diff.push_back(name + ": expected " + std::to_string(expected) + ", got " +
                             (st.exact ? std::to_string(st.lo)
                                       : "[" + std::to_string(st.lo) + ", " + std::to_string(st.hi) + "]") +
                             " (" + st.status() + ")");
      } catch (const std::exception& e) {
        inst.status = "missing";
        inst.match = false;
        rec.diff.push_back(name + ": expected " + std::to_string(expected) + ", " + e.what());
      }
      if (inst.status != "exact") row.status = "bounded";
      row.match = row.match && inst.match;
      row.instances.push_back(std::move(inst));
    }
    all_match = all_match && row.match;
    all_exact = all_exact && row.status == "exact";
    rec.rows.push_back(std::move(row));
  }
  rec.status = all_exact ? "exact" : "bounded";
  rec.verdict = all_match ? "match" : "mismatch";
  int code = all_match && (all_exact || !strict) ? kOk : kMismatch;
  return {std::move(rec), code};
}

CommandResult cmd_classify(const spaces::Catalog& cat, std::string_view space, int r) {
  OutputRecord rec;
  rec.command = "classify";
  rec.query = {{"space", std::string(space)}, {"r", std::to_string(r)}};
  return guarded(std::move(rec), [&](OutputRecord& out) -> CommandResult {
    auto s = cat.spaces.lookup(space);
    try {
      add_citation(out, s.provenance);
      fill_classification(out, spaces::classify(cat, s, r));
    } catch (const HypothesisViolation& e) {
      throw HypothesisViolation(std::string(e.what()) +
                                " (the invariant lifting criterion needs a connected isotropy group H)");
    }
    return {std::move(out), kOk};
  });
}

CommandResult cmd_spin_type(const spaces::Catalog& cat, std::string_view space, bool strict) {
  OutputRecord rec;
  rec.command = "spin-type";
  rec.query = {{"space", std::string(space)}, {"strict", strict ? "true" : "false"}};
  return guarded(std::move(rec), [&](OutputRecord& out) -> CommandResult {
    auto s = cat.spaces.lookup(space);
    auto st = spaces::invariant_spin_type(cat, s);
    out.spin_type_lo = st.lo;
    out.spin_type_hi = st.hi;
    out.status = st.status();
    out.verdict = st.exact ? std::to_string(st.lo) : std::to_string(st.lo) + ".." + std::to_string(st.hi);
    out.notes = st.notes;
    add_citation(out, s.provenance);
    for (const auto& w : st.witnesses) {
      out.classes.push_back(class_out(w));
      add_citation(out, w.provenance);
    }
    return {std::move(out), strict && !st.exact ? kMismatch : kOk};
  });
}

CommandResult cmd_holonomy(const spaces::Catalog& cat, std::string_view group, int m, int r) {
  OutputRecord rec;
  rec.command = "holonomy";
  rec.query = {{"group", std::string(group)}, {"m", std::to_string(m)}, {"r", std::to_string(r)}};
  return guarded(std::move(rec), [&](OutputRecord& out) -> CommandResult {
    auto h = spaces::holonomy_lift(cat, group, m, r);
    out.verdict = spaces::to_string(h.verdict);
    add_citation(out, h.provenance);
    fill_classification(out, h.classification);
    return {std::move(out), kOk};
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Invariant spin^r structures on homogeneous spaces", "spinr"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "md";
  std::string catalog_path;
  bool strict = false;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"md", "json"}));
  app.add_option("--catalog", catalog_path, "Catalog file (default: $SPINR_CATALOG or the bundled catalog)");
  app.add_flag("--strict", strict, "Treat a bounded spin type as a failure");

  std::string fixture_path;
  auto* table1 = app.add_subcommand("table1", "Spin types of the homogeneous spheres, checked against a fixture");
  table1->add_option("--fixture", fixture_path, "Expected values (JSON)");

  std::string space;
  int r = 0;
  auto* classify = app.add_subcommand("classify", "Invariant spin^r structures on a space at one r");
  classify->add_option("space", space, "Space name, e.g. S7:Sp(2)·Sp(1)")->required();
  classify->add_option("--r", r, "Rank of the auxiliary bundle")->required()->check(CLI::Range(1, 4096));

  auto* spin_type = app.add_subcommand("spin-type", "Least r admitting an invariant spin^r structure");
  spin_type->add_option("space", space, "Space name")->required();

  std::string group;
  int m = 0;
  auto* holonomy = app.add_subcommand("holonomy", "Whether a holonomy representation lifts to Spin^r(m)");
  holonomy->add_option("group", group, "Holonomy group, e.g. Sp(3)·Sp(1)")->required();
  holonomy->add_option("--m", m, "Dimension of the manifold")->required()->check(CLI::Range(1, 4096));
  holonomy->add_option("--r", r, "Rank of the auxiliary bundle")->required()->check(CLI::Range(1, 4096));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  auto emit = [&](const CommandResult& res) {
    if (format == "json")
      out << render_json(res.record) << "\n";
    else if (res.record.error)
      err << render_markdown(res.record);
    else
      out << render_markdown(res.record);
    return res.exit_code;
  };

  OutputRecord base;
  base.command = app.get_subcommands().front()->get_name();
  std::unique_ptr<spaces::Catalog> cat;
  try {
    cat = spaces::load_catalog(catalog_path.empty() ? spaces::default_catalog_path() : catalog_path);
  } catch (const CatalogError& e) {
    return emit(failure(base, kCatalogError, "catalog error", e.what()));
  }

  if (*table1) {
    std::vector<FixtureRow> fixture;
    try {
      fixture = load_fixture(fixture_path.empty() ? default_fixture_path() : fixture_path);
    } catch (const CatalogError& e) {
      return emit(failure(base, kCatalogError, "fixture error", e.what()));
    }
    return emit(cmd_table1(*cat, fixture, strict));
  }
  if (*classify) return emit(cmd_classify(*cat, space, r));
  if (*spin_type) return emit(cmd_spin_type(*cat, space, strict));
  return emit(cmd_holonomy(*cat, group, m, r));
}

}  // namespace spinr::cli
