#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "relalg/io.hpp"

namespace relalg::cli {

namespace fs = std::filesystem;

std::string sibling_algebra(const std::string& structure_path) {
  fs::path p(structure_path);
  p.replace_extension(".ra");
  return p.string();
}

std::string relative_to_output(const std::string& target, const std::string& output_path) {
  const fs::path out_dir = fs::absolute(fs::path(output_path)).parent_path();
  const fs::path rel = fs::absolute(fs::path(target)).lexically_normal().lexically_relative(
      out_dir.lexically_normal());
  return rel.empty() ? fs::absolute(fs::path(target)).string() : rel.generic_string();
}

std::string structure_algebra_path(const std::string& structure_path) {
  std::ifstream in(structure_path);
  if (!in) throw FileError("cannot open " + structure_path);
  std::ostringstream text;
  text << in.rdbuf();
  const StructureFile f = parse_structure_file(text.str());
  const fs::path q(f.algebra_path);
  return q.is_absolute() ? q.string() : (fs::path(structure_path).parent_path() / q).string();
}

}  // namespace relalg::cli
