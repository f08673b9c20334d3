#pragma once

#include <CLI11.hpp>
#include <json.hpp>
#include <iosfwd>
#include <string>
#include <vector>

#include "relalg/structure.hpp"

namespace relalg::cli {

using Json = nlohmann::ordered_json;

struct Context {
  bool json = false;
  unsigned threads = 1;
};

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFail = 1;
inline constexpr int kUsage = 2;
inline constexpr int kFile = 3;
inline constexpr int kResource = 4;
inline constexpr int kInternal = 5;

/// Text mode renders the report as indented "key: value" lines.
void emit(const Context& ctx, const Json& report, std::ostream& out);
std::string render_text(const Json& report);

Json verdict_json(const Verdict& v, const FiniteRelationAlgebra& algebra);

// Output files. A structure written to dir/name.rel keeps its algebra in
// dir/name.ra, and paths inside the file are relative to dir.
std::string sibling_algebra(const std::string& structure_path);
std::string relative_to_output(const std::string& target, const std::string& output_path);
/// Algebra path of a structure file, resolved against the file's directory.
std::string structure_algebra_path(const std::string& structure_path);

// Each register_* adds subcommands whose callbacks store their exit code in
// `status` and write to std::cout.
void register_algebra_commands(CLI::App& app, const Context& ctx, int& status);
void register_structure_commands(CLI::App& app, const Context& ctx, int& status);
void register_random_commands(CLI::App& app, const Context& ctx, int& status);
void register_complexity_commands(CLI::App& app, const Context& ctx, int& status);

}  // namespace relalg::cli
