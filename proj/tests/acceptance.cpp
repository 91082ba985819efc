// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any FAIL.
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>

#include "support.hpp"

using namespace lg2lmf;
using namespace testing_support;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass)
      detail = why;
    pass = false;
  }
};

std::string element_xml(const XmlNode& root, const std::string& name, const std::string& id) {
  const XmlNode* n = find_element(root, name, id);
  return n ? write_xml(*n, false) : std::string();
}

// 1
Outcome goldens() {
  Outcome o;
  auto start = std::chrono::steady_clock::now();
  auto r = convert_corpus("sample_corpus");
  auto root = document_node(r.doc);
  auto elapsed = std::chrono::steady_clock::now() - start;
  if (!r.ok())
    o.fail("fixture corpus did not convert");

  auto same = [&](const std::string& got, const std::string& golden) {
    if (got.empty() || canonicalize(got) != canonicalize(slurp(data_path("golden/" + golden))))
      o.fail(golden + " differs");
  };
  same(element_xml(root, "LexicalEntry", "V_32RA_96"), "confirmer_entry.xml");
  same(element_xml(root, "LexicalEntry", "V_5_25") + element_xml(root, "MWEPattern", "en-V_y-V"),
       "en_couter_entry.xml");
  same(element_xml(root, "SubcategorizationFrame",
                   "[Suj:cln|scompl|sinf|sn,Obj:(à-sn|sn|cla)];@être,@SujN-hum,@ObjNhum;%actif"),
       "arriver_frame.xml");
  std::string behaviour;
  if (const auto* e = find_element(root, "LexicalEntry", "V_2_1"))
    for (const auto& c : e->children)
      if (c.name == "SyntacticBehaviour")
        behaviour = write_xml(c, false);
  same(behaviour, "se_hater_behaviour.xml");

  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  if (ms >= 1000)
    o.fail("conversion took " + std::to_string(ms) + " ms");
  if (o.pass)
    o.detail = "4/4 fragments, " + std::to_string(ms) + " ms";
  return o;
}

// 2
Outcome identifiers() {
  Outcome o;
  const std::vector<std::string> literal = {
      "[Suj:cln|sn,Obl:(de-sinf)];@pron,@être,@SujNhum,@CtrlSujObl;%actif",
      "[Suj:cln|scompl|sinf|sn,Obl:(à-sn|sn)];@avoir,@SujN-hum,@OblNhum;%actif,%actif_impersonnel",
      "[Suj:cln|scompl|sinf|sn,Obj:sn|cla];@avoir,@ObjN-hum,@SujN-hum,@SujNhum;%actif,%passif",
      "[Suj:cln|sn,Obl:sinf];@avoir,@SujN-hum,@SujNhum,@CtrlSujObl;%actif",
      "[Suj:cln|scompl|sinf|sn,Obj:(à-sn|sn|cla)];@être,@SujN-hum,@ObjNhum;%actif",
  };
  int failures = 0;
  for (const auto& id : literal) {
    try {
      if (print_mnemonic(parse_mnemonic(id)) != id)
        ++failures;
    } catch (const Error&) {
      ++failures;
    }
  }

  std::mt19937 rng(7);
  const std::vector<std::string> functions{"Suj", "Obj", "Obl", "Objà", "Loc", "Att", "Objde"};
  const std::vector<std::string> tokens{"cln", "sn", "scompl", "qcompl", "sinf", "de-sinf",
                                        "à-sn", "dans-sn", "cla", "cld", "sa", "au-dessus-de-sn"};
  const std::vector<std::string> labels{"pron", "impers", "neg", "être", "avoir", "SujNhum",
                                        "ObjN-hum", "CtrlSujObl", "OblPrep=de+à", "LocRole=source"};
  const std::vector<std::string> redis{"actif", "passif", "actif_impersonnel",
                                       "passif_impersonnel"};
  auto pick = [&](const std::vector<std::string>& pool, std::size_t lo, std::size_t hi) {
    std::vector<std::string> out;
    std::size_t n = lo + rng() % (hi - lo + 1);
    for (std::size_t i = 0; i < n; ++i)
      out.push_back(pool[rng() % pool.size()]);
    return out;
  };
  const int n = 2000;
  for (int i = 0; i < n; ++i) {
    MnemonicId m;
    for (const auto& f : pick(functions, 0, 4))
      m.args.push_back({f, rng() % 3 == 0, pick(tokens, 1, 4)});
    m.features = pick(labels, 0, 6);
    m.redistributions = pick(redis, 1, 4);
    try {
      if (!(parse_mnemonic(print_mnemonic(m)) == m))
        ++failures;
    } catch (const Error&) {
      ++failures;
    }
  }
  if (failures)
    o.fail(std::to_string(failures) + " round-trip failures");
  else
    o.detail = std::to_string(n) + " generated + " + std::to_string(literal.size()) + " literal ids";
  return o;
}

// Restricted feature space shared by the oracle and the random corpora.
const std::vector<std::string> kColumns = {
    "N0 =: Nhum", "N0 =: N-hum", "N1 =: Nhum", "N1 =: N-hum", "N0 V", "N0 V N1",
    "N0 V V0-inf W", "N1 est Vpp W", "Il V N0 W", "Il est Vpp N1 W", "Aux =: être"};

using Row = std::map<std::string, bool>;

struct Counts {
  std::size_t frames = 0;
  std::size_t sets = 0;
  std::map<std::size_t, std::size_t> histogram;
  bool operator==(const Counts&) const = default;
};

std::string show(const Counts& c) {
  std::string h;
  for (const auto& [k, v] : c.histogram)
    h += (h.empty() ? "" : "/") + std::to_string(v);
  return "frames=" + std::to_string(c.frames) + " sets=" + std::to_string(c.sets) + " hist=" + h;
}

// Enumerates entry x construction x redistribution and spells the ids by hand.
Counts oracle(const std::vector<Row>& rows) {
  std::set<std::string> frames;
  std::map<std::string, std::size_t> sets;
  for (const auto& row : rows) {
    auto has = [&](const char* f) { return row.at(f); };
    auto restrict_labels = [&](bool with_object) {
      std::vector<std::string> out;
      if (with_object && has("N1 =: N-hum")) out.push_back("@ObjN-hum");
      if (has("N0 =: N-hum")) out.push_back("@SujN-hum");
      if (with_object && has("N1 =: Nhum")) out.push_back("@ObjNhum");
      if (has("N0 =: Nhum")) out.push_back("@SujNhum");
      return out;
    };
    struct Built {
      std::string args;
      std::vector<std::string> extra;
      bool object;
    };
    std::vector<Built> constructions;
    if (has("N0 V")) constructions.push_back({"Suj:cln|sn", {}, false});
    if (has("N0 V N1")) constructions.push_back({"Suj:cln|sn,Obj:sn", {}, true});
    if (has("N0 V V0-inf W")) constructions.push_back({"Suj:cln|sn,Obl:sinf", {"@CtrlSujObl"}, false});
    for (const auto& c : constructions) {
      std::vector<std::string> feats{has("Aux =: être") ? "@être" : "@avoir"};
      for (const auto& l : restrict_labels(c.object))
        feats.push_back(l);
      for (const auto& l : c.extra)
        feats.push_back(l);
      std::string stem = "[" + c.args + "];";
      for (std::size_t i = 0; i < feats.size(); ++i)
        stem += (i ? "," : "") + feats[i];
      std::vector<std::string> redis{"%actif"};
      if (c.object && has("N1 est Vpp W")) redis.push_back("%passif");
      if (has("Il V N0 W")) redis.push_back("%actif_impersonnel");
      if (c.object && has("Il est Vpp N1 W")) redis.push_back("%passif_impersonnel");
      std::string set_id = stem + ";";
      for (std::size_t i = 0; i < redis.size(); ++i) {
        frames.insert(stem + ";" + redis[i]);
        set_id += (i ? "," : "") + redis[i];
      }
      sets[set_id] = redis.size();
    }
  }
  Counts c;
  c.frames = frames.size();
  c.sets = sets.size();
  for (std::size_t k = 1; k <= 4; ++k)
    c.histogram[k] = 0;
  for (const auto& [id, size] : sets)
    ++c.histogram[size];
  return c;
}

std::string table_text(const std::vector<Row>& rows) {
  std::vector<std::string> header{"<ENT>"};
  header.insert(header.end(), kColumns.begin(), kColumns.end());
  std::string out = write_delimited_record(header);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<std::string> cells{"v" + std::to_string(i)};
    for (const auto& col : kColumns)
      cells.push_back(rows[i].at(col) ? "+" : "-");
    out += write_delimited_record(cells);
  }
  return out;
}

std::string classes_text() {
  std::vector<std::string> header{""}, codes{"R"};
  for (const auto& col : kColumns) {
    header.push_back(col);
    codes.push_back("o");
  }
  return write_delimited_record(header) + write_delimited_record(codes);
}

ConvertResult convert_rows(const std::vector<Row>& rows) {
  return convert({{"R", "R.csv", table_text(rows)}}, classes_text(), shipped_catalog(), {});
}

Counts pipeline(const LmfDocument& doc) {
  auto s = compute_stats(doc);
  return {s.frames, s.frame_sets, s.set_size_histogram};
}

struct PropertyRun {
  int corpora = 0;
  int mismatches = 0;
  std::size_t largest_set = 0;
  std::string first;
};

const PropertyRun& property_run() {
  static const PropertyRun run = [] {
    PropertyRun r;
    std::mt19937 rng(1105);
    for (int k = 0; k < 200; ++k) {
      std::vector<Row> rows(1 + rng() % 50);
      int density = 2 + static_cast<int>(rng() % 5);
      for (auto& row : rows)
        for (const auto& col : kColumns)
          row[col] = static_cast<int>(rng() % 8) < density;
      auto res = convert_rows(rows);
      ++r.corpora;
      Counts want = oracle(rows);
      Counts got = res.ok() ? pipeline(res.doc) : Counts{};
      if (!(want == got)) {
        ++r.mismatches;
        if (r.first.empty())
          r.first = "corpus " + std::to_string(k) + ": oracle " + show(want) + ", pipeline " +
                    show(got);
      }
      for (const auto& s : res.doc.frame_sets)
        r.largest_set = std::max(r.largest_set, s.frame_ids.size());
    }
    return r;
  }();
  return run;
}

// 3
Outcome grouping() {
  Outcome o;
  const auto& r = property_run();
  if (r.corpora < 100)
    o.fail("only " + std::to_string(r.corpora) + " corpora");
  if (r.mismatches)
    o.fail(std::to_string(r.mismatches) + " mismatches; " + r.first);
  else
    o.detail = std::to_string(r.corpora) + " corpora, 0 mismatches";
  return o;
}

// 4
Outcome status_rule() {
  Outcome o;
  auto literal = [](int e, int u) {
    // degenerate class: nothing to count
    if (e == 0 && u == 0)
      return Status::to_be_encoded;
    if (u == 0)
      return Status::completed;
    // e / (e + u) < 1/3
    return 3 * e < e + u ? Status::to_be_encoded : Status::to_be_completed;
  };
  auto rank = [](Status s) {
    return s == Status::to_be_encoded ? 0 : s == Status::to_be_completed ? 1 : 2;
  };
  int checked = 0;
  for (int e = 0; e <= 30; ++e)
    for (int u = 0; e + u <= 30; ++u) {
      ++checked;
      Status got = compute_status(e, u);
      if (got != literal(e, u))
        o.fail("e=" + std::to_string(e) + " u=" + std::to_string(u));
      if (e + u + 1 <= 30 && rank(compute_status(e + 1, u)) < rank(got))
        o.fail("not monotone in encoded count at e=" + std::to_string(e));
      if (u > 0 && e + u + 1 <= 30 && rank(compute_status(e, u + 1)) > rank(got))
        o.fail("not monotone in unencoded count at u=" + std::to_string(u));
    }
  if (o.pass)
    o.detail = std::to_string(checked) + " pairs";
  return o;
}

// 5
Outcome invariants() {
  Outcome o;
  const LmfDocument base = convert_corpus("mini_corpus").doc;
  auto errors_of = [](const std::string& xml) {
    std::set<std::string> codes;
    Findings report = validate_lmf(xml);
    for (const auto& f : report.items())
      if (f.severity == Severity::error)
        codes.insert(f.code);
    return codes;
  };
  std::vector<std::pair<std::string, std::function<std::string()>>> faults = {
      {"DANGLING_REF", [&] {
         auto d = base;
         d.entries[0].frame_set_refs.push_back("[Suj:sn];;%actif");
         return emit_lmf(d);
       }},
      {"ARG_ID_GAP", [&] {
         auto d = base;
         d.frames[0].arguments.back().id += 1;
         return emit_lmf(d);
       }},
      {"CONTROL_OUT_OF_RANGE", [&] {
         auto d = base;
         d.frames[0].arguments[0].control = {7};
         return emit_lmf(d);
       }},
      {"SET_SIZE", [&] {
         auto d = base;
         Frame f = d.frames[0];
         FrameSet s;
         for (const char* r : {"actif", "passif", "actif_impersonnel", "passif_impersonnel", "se_moyen"}) {
           f.mnemonic.redistributions = {r};
           if (f.id() != d.frames[0].id())
             d.frames.push_back(f);
           s.frame_ids.push_back(f.id());
         }
         s.id = print_stem(f.mnemonic) + ";%actif,%passif,%actif_impersonnel,%passif_impersonnel,%se_moyen";
         d.frame_sets.push_back(s);
         d.entries[0].frame_set_refs = {s.id};
         return emit_lmf(d);
       }},
      {"SET_HETEROGENEOUS", [&] {
         auto d = base;
         // second member comes from another stem
         Frame other = d.frames[1];
         other.mnemonic.redistributions = {"actif_impersonnel"};
         d.frames.push_back(other);
         FrameSet s{print_stem(d.frames[0].mnemonic) + ";%actif,%actif_impersonnel",
                    {d.frames[0].id(), other.id()}};
         d.frame_sets.push_back(s);
         d.entries[0].frame_set_refs = {s.id};
         return emit_lmf(d);
       }},
      {"ILLEGAL_STATUS", [&] {
         std::string xml = emit_lmf(base);
         auto at = xml.find("status=\"") + 8;
         xml.replace(at, xml.find('"', at) - at, "finished");
         return xml;
       }},
  };
  int detected = 0;
  std::string misses;
  for (const auto& [code, make] : faults) {
    auto codes = errors_of(make());
    if (codes == std::set<std::string>{code})
      ++detected;
    else {
      std::string got;
      for (const auto& c : codes)
        got += " " + c;
      misses += (misses.empty() ? "" : ", ") + code + " gave" + (got.empty() ? " nothing" : got);
    }
  }
  if (!misses.empty())
    o.fail(misses);
  if (!errors_of(emit_lmf(base)).empty())
    o.fail("unmodified document has errors");
  o.detail = (o.pass ? "" : o.detail + "; ") + std::to_string(detected) + "/" +
             std::to_string(faults.size()) + " detected";
  return o;
}

// 6
Outcome determinism() {
  Outcome o;
  std::string ref = emit_lmf(convert_corpus("sample_corpus", 1).doc);
  for (unsigned jobs : {1u, 4u, 8u})
    for (int rep = 0; rep < 3; ++rep)
      if (emit_lmf(convert_corpus("sample_corpus", jobs).doc) != ref)
        o.fail("jobs=" + std::to_string(jobs) + " run " + std::to_string(rep) + " differs");
  if (o.pass)
    o.detail = "jobs 1/4/8 x 3 runs byte-identical";
  return o;
}

// 7
Outcome statistics() {
  Outcome o;
  std::vector<Row> rows;
  auto tables = corpus_tables("mini_corpus");
  auto records = read_delimited(tables.at(0).bytes);
  const auto& header = records.at(0).fields;
  for (std::size_t i = 1; i < records.size(); ++i) {
    Row row;
    for (const auto& col : kColumns)
      row[col] = false;
    for (std::size_t j = 1; j < header.size(); ++j)
      row[normalize_feature_id(header[j])] = records[i].fields.at(j) == "+";
    rows.push_back(row);
  }
  auto doc = convert_corpus("mini_corpus").doc;
  auto s = compute_stats(doc);
  Counts want = oracle(rows);
  if (!(pipeline(doc) == want))
    o.fail("fixture: oracle " + show(want) + ", stats " + show(pipeline(doc)));
  if (s.entries != rows.size())
    o.fail("fixture entries " + std::to_string(s.entries));
  std::set<std::string> lemmas;
  for (std::size_t i = 1; i < records.size(); ++i)
    lemmas.insert(records[i].fields[0]);
  if (s.distinct_lemmas != lemmas.size())
    o.fail("fixture lemmas " + std::to_string(s.distinct_lemmas));
  if (o.pass)
    o.detail = "fixture entries=" + std::to_string(s.entries) + " lemmas=" +
               std::to_string(s.distinct_lemmas) + " " + show(want);

  if (const char* real = std::getenv("LG2LMF_REAL_LMF")) {
    try {
      auto r = compute_stats(read_lmf(slurp(real)));
      std::cout << "  real data (report only): entries=" << r.entries
                << " lemmas=" << r.distinct_lemmas << " frames=" << r.frames
                << " sets=" << r.frame_sets << " histogram=" << r.set_size_histogram[1] << "/"
                << r.set_size_histogram[2] << "/" << r.set_size_histogram[3] << "/"
                << r.set_size_histogram[4] << " (reference 13900/5740/4700/2800, 880/1700/210/1)\n";
    } catch (const std::exception& e) {
      std::cout << "  real data (report only): " << e.what() << "\n";
    }
  }
  return o;
}

// 8
Outcome set_ceiling() {
  Outcome o;
  const auto& r = property_run();
  if (r.largest_set > 4)
    o.fail("set of " + std::to_string(r.largest_set) + " in a random corpus");
  Row row;
  for (const auto& col : kColumns)
    row[col] = false;
  for (const char* f : {"N0 =: Nhum", "N1 =: Nhum", "N0 V N1", "N1 est Vpp W", "Il V N0 W",
                        "Il est Vpp N1 W"})
    row[f] = true;
  auto res = convert_rows({row});
  if (!res.ok() || res.doc.frame_sets.size() != 1 || res.doc.frame_sets[0].frame_ids.size() != 4)
    o.fail("engineered entry did not give one 4-member set");
  if (o.pass)
    o.detail = "largest random set " + std::to_string(r.largest_set) + ", engineered set of 4";
  return o;
}

}

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"golden fragments", goldens},
      {"identifier round-trip", identifiers},
      {"grouping oracle", grouping},
      {"status rule", status_rule},
      {"invariant suite", invariants},
      {"determinism", determinism},
      {"statistics", statistics},
      {"set-size ceiling", set_ceiling},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " AC" << i + 1 << " " << criteria[i].first
              << (o.detail.empty() ? "" : " (" + o.detail + ")") << "\n";
  }
  return failed ? 1 : 0;
}
