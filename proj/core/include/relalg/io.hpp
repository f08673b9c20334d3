#pragma once
// Text formats.
//
// Algebra file:
//   ra v1
//   atoms <k> <name>...
//   identity <name>...
//   symmetric true|false
//   converse <a> <b>          (non-symmetric algebras only, one per atom)
//   comp <a> <b> = <x>+<y>...|0
// Symmetric algebras list each unordered pair once (a before b in atom
// order); others list every ordered pair.
//
// Structure file:
//   structure v1
//   kind atom-labeling|power|xi
//   algebra <path>
// followed by one of
//   base <d>, then edge <u> <v> <atom> with u < v
//   power m=<m> inner=<path>
//   xi inner=<path> n=<n> [seed=<u64>], then tedge <x> <y> <i> lines when
//   no seed is given (all d*d cross pairs, y indexing D')
// Relative paths are resolved against the directory of the structure file.
// "base=" is accepted as a synonym for "inner=". Blank lines and lines
// starting with '#' are ignored. Parse errors report 1-based line numbers.
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "relalg/algebra.hpp"
#include "relalg/structure.hpp"

namespace relalg {

/// Thrown for missing or unreadable files.
class FileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_algebra(std::ostream& out, const FiniteRelationAlgebra& algebra);
FiniteRelationAlgebra read_algebra(std::istream& in);
std::string algebra_to_text(const FiniteRelationAlgebra& algebra);
FiniteRelationAlgebra algebra_from_text(const std::string& text);

struct StructureFile {
  StructureKind kind = StructureKind::AtomLabeling;
  std::string algebra_path;
  // atom-labeling
  std::size_t base = 0;
  std::vector<std::tuple<std::size_t, std::size_t, std::string>> edges;
  // power and xi
  std::string inner_path;
  unsigned m = 1;
  unsigned n = 1;
  std::optional<std::uint64_t> seed;
  std::vector<std::tuple<std::size_t, std::size_t, unsigned>> tedges;

  friend bool operator==(const StructureFile&, const StructureFile&) = default;
};

StructureFile parse_structure_file(const std::string& text);
std::string structure_file_text(const StructureFile& file);

/// Atom-labeling description of s (labeled pairs u < v).
StructureFile describe_atom_labeling(const LabeledStructure& s, std::string algebra_path);

/// File I/O. ParseError for malformed text, FileError for unreadable files.
/// Saving creates missing parent directories.
FiniteRelationAlgebra load_algebra(const std::filesystem::path& path);
void save_algebra(const std::filesystem::path& path, const FiniteRelationAlgebra& algebra);
void save_text(const std::filesystem::path& path, const std::string& text);
LabeledStructure load_structure(const std::filesystem::path& path);

}  // namespace relalg
