#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lg2lmf/lg2lmf.hpp"

namespace testing_support {

inline std::string data_path(const std::string& rel) { return std::string(LG2LMF_DATA_DIR) + "/" + rel; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("missing fixture " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline const lg2lmf::FeatureCatalog& shipped_catalog() {
  static const lg2lmf::FeatureCatalog c = lg2lmf::load_catalog(slurp(LG2LMF_CATALOG));
  return c;
}

inline std::vector<lg2lmf::TableInput> corpus_tables(const std::string& corpus) {
  std::vector<lg2lmf::TableInput> out;
  for (const auto& e : std::filesystem::directory_iterator(data_path(corpus + "/tables")))
    if (e.path().extension() == ".csv")
      out.push_back({e.path().stem().string(), e.path().filename().string(),
                     slurp(e.path().string())});
  return out;
}

inline lg2lmf::ConvertResult convert_corpus(const std::string& corpus, unsigned jobs = 1) {
  lg2lmf::ConvertSettings s;
  s.jobs = jobs;
  return lg2lmf::convert(corpus_tables(corpus), slurp(data_path(corpus + "/classes.csv")),
                         shipped_catalog(), s);
}

inline const lg2lmf::ConvertResult& sample_corpus() {
  static const lg2lmf::ConvertResult r = convert_corpus("sample_corpus");
  return r;
}

// One element of a converted document, by element name and id.
inline const lg2lmf::XmlNode* find_element(const lg2lmf::XmlNode& root, const std::string& name,
                                           const std::string& id) {
  if (root.name == name) {
    const std::string* a = root.attribute("id");
    if (a && *a == id)
      return &root;
  }
  for (const auto& c : root.children)
    if (const auto* hit = find_element(c, name, id))
      return hit;
  return nullptr;
}

} // namespace testing_support
