#include <iostream>
#include <sstream>

#include "cli.hpp"

namespace relalg::cli {

namespace {

std::string scalar(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool flat(const Json& v) {
  if (!v.is_array()) return !v.is_object();
  for (const auto& e : v) {
    if (e.is_array() || e.is_object()) return false;
  }
  return true;
}

void render(const Json& v, int indent, std::ostringstream& out) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (v.is_object()) {
    for (const auto& [key, value] : v.items()) {
      if (value.is_array() && flat(value)) {
        out << pad << key << ": [";
        bool first = true;
        for (const auto& e : value) {
          out << (first ? "" : ", ") << scalar(e);
          first = false;
        }
        out << "]\n";
      } else if (flat(value)) {
        out << pad << key << ": " << scalar(value) << '\n';
      } else {
        out << pad << key << ":\n";
        render(value, indent + 2, out);
      }
    }
  } else if (v.is_array()) {
    for (const auto& e : v) {
      if (flat(e) && !e.is_array()) {
        out << pad << "- " << scalar(e) << '\n';
      } else {
        std::ostringstream inner;
        render(e, indent + 2, inner);
        std::string text = inner.str();
        // replace the leading indentation of the first line with "- "
        out << pad << "- " << text.substr(static_cast<std::size_t>(indent) + 2);
      }
    }
  } else {
    out << pad << scalar(v) << '\n';
  }
}

}  // namespace

std::string render_text(const Json& report) {
  std::ostringstream out;
  render(report, 0, out);
  return out.str();
}

void emit(const Context& ctx, const Json& report, std::ostream& out) {
  if (ctx.json) {
    out << report.dump(2) << '\n';
  } else {
    out << render_text(report);
  }
}

Json verdict_json(const Verdict& v, const FiniteRelationAlgebra& algebra) {
  Json j;
  j["verdict"] = v.pass ? "PASS" : "FAIL";
  j["strategy"] = v.strategy;
  j["pairs_checked"] = v.checked;
  if (!v.pass) {
    j["clause"] = v.clause;
    j["detail"] = v.detail;
    if (v.x) j["x"] = algebra.format(*v.x);
    if (v.y) j["y"] = algebra.format(*v.y);
    if (v.points) j["points"] = Json::array({v.points->first, v.points->second});
  }
  return j;
}

}  // namespace relalg::cli
