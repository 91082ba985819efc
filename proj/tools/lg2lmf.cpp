#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lg2lmf/lg2lmf.hpp"

namespace fs = std::filesystem;
using namespace lg2lmf;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in)
    throw Error("UNREADABLE", "cannot read file", p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary);
  if (!out || !out.write(bytes.data(), static_cast<std::streamsize>(bytes.size())))
    throw Error("UNWRITABLE", "cannot write file", p.string());
}

void report(const Findings& f) {
  for (const auto& item : f.items())
    std::cerr << format_finding(item) << "\n";
}

nlohmann::ordered_json stats_json(const StatsReport& r) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["entries"] = r.entries;
  j["distinct_lemmas"] = r.distinct_lemmas;
  j["frames"] = r.frames;
  j["frame_sets"] = r.frame_sets;
  auto& sizes = j["set_size_histogram"] = nlohmann::ordered_json::object();
  for (const auto& [size, count] : r.set_size_histogram)
    sizes[std::to_string(size)] = count;
  auto& statuses = j["status_histogram"] = nlohmann::ordered_json::object();
  for (auto s : {Status::completed, Status::to_be_completed, Status::to_be_encoded})
    statuses[to_string(s)] = r.status_histogram.count(to_string(s))
                                 ? r.status_histogram.at(to_string(s))
                                 : 0;
  j["mwe_entries"] = r.mwe_entries;
  j["warnings"] = r.warnings;
  return j;
}

char parse_delimiter(const std::string& s) {
  if (s == "tab" || s == "\\t")
    return '\t';
  if (s.size() != 1)
    throw CLI::ValidationError("--delimiter", "expects a single character or 'tab'");
  return s[0];
}

Status parse_status_flag(const std::string& s) {
  std::string spaced = s;
  std::replace(spaced.begin(), spaced.end(), '-', ' ');
  if (auto st = parse_status(spaced))
    return *st;
  throw CLI::ValidationError("--exclude-status",
                             "expects completed, to-be-completed or to-be-encoded");
}

struct ConvertArgs {
  std::string tables, classes, catalog, category = "verb", out, delimiter = ";", dump;
  unsigned jobs = 1;
  std::vector<std::string> exclude;
};

int run_convert(const ConvertArgs& a) {
  ConvertSettings settings;
  settings.delimiter = parse_delimiter(a.delimiter);
  settings.jobs = std::max(1u, a.jobs);
  for (const auto& s : a.exclude)
    settings.exclude_status.insert(parse_status_flag(s));
  Category category = parse_category(a.category);

  FeatureCatalog catalog = load_catalog(read_file(a.catalog));
  if (catalog.category != category)
    throw Error("CATALOG_CATEGORY", "catalog is for '" + std::string(to_string(catalog.category)) +
                                        "', not '" + a.category + "'",
                a.catalog);
  std::vector<TableInput> tables;
  if (!fs::is_directory(a.tables))
    throw Error("UNREADABLE", "not a directory", a.tables);
  for (const auto& entry : fs::directory_iterator(a.tables)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".csv")
      continue;
    tables.push_back({entry.path().stem().string(), entry.path().filename().string(),
                      read_file(entry.path())});
  }
  ConvertResult result = convert(std::move(tables), read_file(a.classes), catalog, settings);
  report(result.findings);
  if (!a.dump.empty())
    write_file(a.dump, dump_lglex(result.lglex, category));
  if (!result.ok()) {
    std::cerr << "conversion failed: " << result.findings.errors() << " error(s); nothing written\n";
    return kFailed;
  }
  write_file(a.out, emit_lmf(result.doc));
  std::cout << stats_text(compute_stats(result.doc, result.findings.warnings()));
  return kOk;
}

int run_validate(const std::string& path, bool strict) {
  Findings f = validate_lmf(read_file(path), strict);
  report(f);
  std::cout << (f.passed() ? "valid" : "invalid") << ": " << f.errors() << " error(s), "
            << f.warnings() << " warning(s)\n";
  return f.passed() ? kOk : kFailed;
}

int run_stats(const std::string& path, const std::string& format) {
  Findings warnings;
  LmfDocument doc = read_lmf(read_file(path), &warnings);
  StatsReport r = compute_stats(doc, warnings.warnings());
  if (format == "json")
    std::cout << stats_json(r).dump(2) << "\n";
  else
    std::cout << stats_text(r);
  return kOk;
}

int run_extract(const std::string& path, const std::string& id) {
  LmfDocument doc = read_lmf(read_file(path));
  const LexicalEntryOut* e = doc.find_entry(id);
  if (!e) {
    std::cerr << "error[UNKNOWN_ENTRY] no entry '" << id << "'\n";
    return kFailed;
  }
  std::cout << write_xml(entry_node(*e), false);
  return kOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lexicon-Grammar tables to LMF converter"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  ConvertArgs conv;
  auto* convert_cmd = app.add_subcommand("convert", "convert class tables to an LMF document");
  convert_cmd->add_option("--tables", conv.tables, "directory of <class>.csv tables")->required();
  convert_cmd->add_option("--classes", conv.classes, "table of classes")->required();
  convert_cmd->add_option("--catalog", conv.catalog, "feature catalog")->required();
  convert_cmd->add_option("--category", conv.category, "grammatical category")
      ->check(CLI::IsMember({"verb"}));
  convert_cmd->add_option("--out", conv.out, "output LMF file")->required();
  convert_cmd->add_option("--jobs", conv.jobs, "worker threads")->check(CLI::Range(1u, 1024u));
  convert_cmd->add_option("--delimiter", conv.delimiter, "cell delimiter");
  convert_cmd->add_option("--dump-intermediate", conv.dump, "write the intermediate lexicon");
  convert_cmd->add_option("--exclude-status", conv.exclude, "drop entries with this status")
      ->check(CLI::IsMember({"completed", "to-be-completed", "to-be-encoded"}));

  std::string file, format = "text", entry;
  bool strict = false;
  auto* validate_cmd = app.add_subcommand("validate", "check an LMF document");
  validate_cmd->add_option("file", file)->required();
  validate_cmd->add_flag("--strict", strict, "treat compatibility warnings as errors");

  auto* stats_cmd = app.add_subcommand("stats", "report counts for an LMF document");
  stats_cmd->add_option("file", file)->required();
  stats_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto* extract_cmd = app.add_subcommand("extract", "print one entry in canonical form");
  extract_cmd->add_option("file", file)->required();
  extract_cmd->add_option("--entry", entry)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (convert_cmd->parsed()) return run_convert(conv);
    if (validate_cmd->parsed()) return run_validate(file, strict);
    if (stats_cmd->parsed()) return run_stats(file, format);
    return run_extract(file, entry);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error[" << e.code() << "] " << e.what() << "\n";
    return kFailed;
  }
}
