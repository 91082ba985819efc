#pragma once

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <boost/crc.hpp>

#include "catalog.hpp"
#include "entry.hpp"
#include "error.hpp"
#include "frame.hpp"
#include "lmf.hpp"
#include "table.hpp"

namespace lg2lmf {

struct TableInput {
  std::string class_id;
  std::string file_name;
  std::string bytes;
};

struct ConvertSettings {
  char delimiter = ';';
  unsigned jobs = 1;
  std::set<Status> exclude_status;
};

struct ConvertResult {
  LmfDocument doc;
  Findings findings;
  std::vector<LGLexEntry> lglex;  // every entry built, in class then row order

  bool ok() const { return findings.passed(); }
};

inline std::string crc32_hex(std::string_view bytes) {
  boost::crc_32_type crc;
  crc.process_bytes(bytes.data(), bytes.size());
  char buf[9];
  std::snprintf(buf, sizeof buf, "%08x", static_cast<unsigned>(crc.checksum()));
  return buf;
}

namespace detail {

struct CompiledEntry {
  LGLexEntry entry;
  Status status = Status::completed;
  std::vector<Frame> frames;
  std::optional<MweUse> mwe;
};

struct TableOutput {
  std::vector<CompiledEntry> entries;
  Findings findings;
};

inline std::string prefixed(const std::string& file, const std::string& location) {
  return location.empty() ? file : file + ": " + location;
}

// Pure in its inputs; runs on a worker thread.
inline TableOutput compile_table(const TableInput& input, const ClassFeatureMatrix& matrix,
                                 const FeatureCatalog& catalog, char delimiter) {
  TableOutput out;
  try {
    ClassTable table = parse_class_table(input.bytes, input.class_id, catalog.category, delimiter);
    Findings local;
    auto records = merge_features(table, matrix, &local);
    for (const auto& record : records) {
      CompiledEntry c;
      c.entry = build_lglex_entry(record, catalog, &local);
      c.status = c.entry.status(&local);
      c.frames = compile_frames(c.entry, catalog, &local);
      c.mwe = detect_frozen_clitic(c.entry, catalog);
      out.entries.push_back(std::move(c));
    }
    for (auto f : local.items()) {
      f.location = prefixed(input.file_name, f.location);
      out.findings.add(std::move(f));
    }
  } catch (const Error& e) {
    out.entries.clear();
    out.findings.error(e.code(), e.what(), input.file_name);
  }
  return out;
}

inline std::vector<TableOutput> compile_tables(const std::vector<TableInput>& tables,
                                               const ClassFeatureMatrix& matrix,
                                               const FeatureCatalog& catalog, char delimiter,
                                               unsigned jobs) {
  std::vector<TableOutput> results(tables.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < tables.size(); i = next++)
      results[i] = compile_table(tables[i], matrix, catalog, delimiter);
  };
  unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(tables.size())));
  if (n == 1) {
    work();
    return results;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n; ++t)
    pool.emplace_back(work);
  for (auto& t : pool)
    t.join();
  return results;
}

// Unknown-feature warnings repeat per row; keep one per feature, sorted.
inline void settle_unknown_features(Findings& f) {
  std::set<std::string> unknown;
  Findings rest;
  for (const auto& item : f.items()) {
    if (item.code == "UNKNOWN_FEATURE" && item.severity == Severity::warning)
      unknown.insert(item.message);
    else
      rest.add(item);
  }
  for (const auto& m : unknown)
    rest.warn("UNKNOWN_FEATURE", m);
  f = std::move(rest);
}

} // namespace detail

// Tables are processed in class-id order whatever their order in `tables`.
inline ConvertResult convert(std::vector<TableInput> tables, std::string_view classes_bytes,
                             const FeatureCatalog& catalog, const ConvertSettings& settings = {}) {
  ConvertResult result;
  result.doc.meta.category = to_string(catalog.category);
  std::sort(tables.begin(), tables.end(),
            [](const auto& a, const auto& b) { return a.class_id < b.class_id; });

  ClassFeatureMatrix matrix;
  try {
    matrix = parse_table_of_classes(classes_bytes, catalog.category, settings.delimiter);
  } catch (const Error& e) {
    result.findings.error(e.code(), e.what(), "table of classes");
    return result;
  }

  for (const auto& t : tables)
    result.doc.meta.sources.push_back({t.file_name, crc32_hex(t.bytes)});

  auto outputs =
      detail::compile_tables(tables, matrix, catalog, settings.delimiter, settings.jobs);

  FrameStore store;
  std::vector<std::vector<std::string>> entry_frames;
  std::vector<const detail::CompiledEntry*> kept;
  std::set<std::string> patterns;
  try {
    for (auto& out : outputs) {
      result.findings.append(out.findings);
      for (const auto& c : out.entries) {
        result.lglex.push_back(c.entry);
        if (settings.exclude_status.count(c.status) || c.frames.empty())
          continue;
        std::vector<std::string> ids;
        for (const auto& f : c.frames)
          ids.push_back(store.intern(f));
        entry_frames.push_back(std::move(ids));
        kept.push_back(&c);
        if (c.mwe)
          patterns.insert(c.mwe->pattern_id);
      }
    }
    auto grouping = group_into_sets(entry_frames);
    for (std::size_t i = 0; i < kept.size(); ++i) {
      const auto& c = *kept[i];
      LexicalEntryOut e;
      e.id = c.entry.entry_id;
      e.status = c.status;
      e.part_of_speech = to_string(c.entry.category);
      e.lemma = c.entry.lemma;
      e.translation = c.entry.translation;
      e.example = c.entry.example;
      e.frame_set_refs = grouping.entry_sets[i];
      e.mwe = c.mwe;
      result.doc.entries.push_back(std::move(e));
    }
    for (auto& [id, set] : grouping.sets)
      result.doc.frame_sets.push_back(std::move(set));
  } catch (const Error& e) {
    result.findings.error(e.code(), e.what());
  }
  for (const auto& [id, frame] : store.frames())
    result.doc.frames.push_back(frame);
  for (const auto& id : patterns)
    result.doc.patterns.push_back(catalog.patterns.at(id));
  sort_blocks(result.doc);
  detail::settle_unknown_features(result.findings);
  return result;
}

} // namespace lg2lmf
