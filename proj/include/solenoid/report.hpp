#pragma once

#include <string>
#include <vector>

namespace solenoid {

inline constexpr int kReportSchema = 1;
inline constexpr const char* kToolVersion = "1.0.0";

/// A "key: value" tree printed with two-space indentation. Children keep
/// insertion order, so identical computations print identical bytes.
struct ReportNode {
  std::string key;
  std::string value;
  std::vector<ReportNode> children;

  ReportNode& add(std::string k, std::string v = {});
  ReportNode& add(std::string k, bool v) { return add(std::move(k), std::string(v ? "true" : "false")); }
  ReportNode& add(std::string k, const char* v) { return add(std::move(k), std::string(v)); }
  template <typename Int>
    requires std::is_integral_v<Int>
  ReportNode& add(std::string k, Int v) {
    return add(std::move(k), std::to_string(v));
  }
  ReportNode& section(std::string k) { return add(std::move(k)); }
  const ReportNode* find(const std::string& k) const;

  /// The children printed at indentation `indent`.
  std::string str(int indent = 0) const;
};

}  // namespace solenoid
