#include "solenoid/report.hpp"

namespace solenoid {

ReportNode& ReportNode::add(std::string k, std::string v) {
  children.push_back(ReportNode{std::move(k), std::move(v), {}});
  return children.back();
}

const ReportNode* ReportNode::find(const std::string& k) const {
  for (const auto& c : children)
    if (c.key == k) return &c;
  return nullptr;
}

std::string ReportNode::str(int indent) const {
  std::string out;
  for (const auto& c : children) {
    out.append(static_cast<std::size_t>(indent) * 2, ' ');
    out += c.key + ":";
    if (!c.value.empty()) out += " " + c.value;
    out += '\n';
    out += c.str(indent + 1);
  }
  return out;
}

}  // namespace solenoid
