#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lg2lmf {

// Raised for every fatal condition. `code` is a stable machine-readable tag
// (the same vocabulary the validator uses), `location` a file/row/path hint.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& message, std::string location = {})
    : std::runtime_error(location.empty() ? message : location + ": " + message),
      code_(std::move(code)), location_(std::move(location)) {}

  const std::string& code() const { return code_; }
  const std::string& location() const { return location_; }

private:
  std::string code_;
  std::string location_;
};

enum class Severity { warning, error };

inline const char* to_string(Severity s) {
  return s == Severity::error ? "error" : "warning";
}

struct Finding {
  Severity severity = Severity::warning;
  std::string code;
  std::string message;
  std::string location;

  bool operator==(const Finding&) const = default;
};

// Ordered sink for warnings and errors. Also serves as the validation report:
// it passes iff it holds no error.
class Findings {
public:
  void warn(std::string code, std::string message, std::string location = {}) {
    items_.push_back({Severity::warning, std::move(code), std::move(message),
                      std::move(location)});
  }
  void error(std::string code, std::string message, std::string location = {}) {
    items_.push_back({Severity::error, std::move(code), std::move(message),
                      std::move(location)});
  }
  void add(Finding f) { items_.push_back(std::move(f)); }
  void append(const Findings& other) {
    items_.insert(items_.end(), other.items_.begin(), other.items_.end());
  }

  const std::vector<Finding>& items() const { return items_; }
  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }

  std::size_t count(Severity s) const {
    return static_cast<std::size_t>(std::count_if(
        items_.begin(), items_.end(), [s](const Finding& f) { return f.severity == s; }));
  }
  std::size_t errors() const { return count(Severity::error); }
  std::size_t warnings() const { return count(Severity::warning); }
  bool passed() const { return errors() == 0; }

  bool has_code(const std::string& code) const {
    return std::any_of(items_.begin(), items_.end(),
                       [&](const Finding& f) { return f.code == code; });
  }

  // Drops exact repeats, keeping the first occurrence.
  void dedupe() {
    std::set<std::tuple<Severity, std::string, std::string, std::string>> seen;
    std::vector<Finding> out;
    for (auto& f : items_)
      if (seen.emplace(f.severity, f.code, f.message, f.location).second)
        out.push_back(std::move(f));
    items_ = std::move(out);
  }

  // Turns every warning carrying one of `codes` into an error.
  void escalate(const std::set<std::string>& codes) {
    for (auto& f : items_)
      if (codes.count(f.code))
        f.severity = Severity::error;
  }

private:
  std::vector<Finding> items_;
};

inline std::string format_finding(const Finding& f) {
  std::string s = to_string(f.severity);
  s += "[" + f.code + "]";
  if (!f.location.empty())
    s += " " + f.location + ":";
  s += " " + f.message;
  return s;
}

} // namespace lg2lmf
