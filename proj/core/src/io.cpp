#include "relalg/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "relalg/errors.hpp"
#include "relalg/lpn.hpp"

namespace relalg {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::istringstream words(raw);
    Line line{number, {}};
    std::string w;
    while (words >> w) line.tokens.push_back(w);
    if (line.tokens.empty() || line.tokens[0][0] == '#') continue;
    lines.push_back(std::move(line));
  }
  return lines;
}

std::uint64_t parse_u64(const std::string& s, std::size_t line, const char* what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(std::string("expected ") + what + ", got '" + s + "'", line);
  }
  return v;
}

bool valid_name(const std::string& name) {
  if (name.empty()) return false;
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '\'') return false;
  }
  return true;
}

void expect_header(const std::vector<Line>& lines, const std::string& magic) {
  if (lines.empty() || lines[0].tokens.size() != 2 || lines[0].tokens[0] != magic ||
      lines[0].tokens[1] != "v1") {
    throw ParseError("expected header '" + magic + " v1'", lines.empty() ? 1 : lines[0].number);
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Algebra files

void write_algebra(std::ostream& out, const FiniteRelationAlgebra& algebra) {
  const std::size_t k = algebra.atom_count();
  out << "ra v1\n";
  out << "atoms " << k;
  for (const auto& name : algebra.atom_names()) out << ' ' << name;
  out << "\nidentity";
  for_each_atom(algebra.identity_atoms(), [&](AtomId a) { out << ' ' << algebra.atom_name(a); });
  const bool symmetric = algebra.is_symmetric();
  out << "\nsymmetric " << (symmetric ? "true" : "false") << '\n';
  if (!symmetric) {
    for (AtomId a = 0; a < k; ++a) {
      out << "converse " << algebra.atom_name(a) << ' '
          << algebra.atom_name(algebra.converse_atom(a)) << '\n';
    }
  }
  for (AtomId a = 0; a < k; ++a) {
    for (AtomId b = symmetric ? a : 0; b < k; ++b) {
      out << "comp " << algebra.atom_name(a) << ' ' << algebra.atom_name(b) << " = "
          << algebra.format(algebra.element(algebra.comp_atoms(a, b))) << '\n';
    }
  }
}

std::string algebra_to_text(const FiniteRelationAlgebra& algebra) {
  std::ostringstream out;
  write_algebra(out, algebra);
  return out.str();
}

FiniteRelationAlgebra algebra_from_text(const std::string& text) {
  const auto lines = tokenize(text);
  expect_header(lines, "ra");
  std::size_t idx = 1;
  auto next = [&](const char* keyword) -> const Line& {
    if (idx >= lines.size() || lines[idx].tokens[0] != keyword) {
      throw ParseError(std::string("expected '") + keyword + "' line",
                       idx < lines.size() ? lines[idx].number : lines.back().number + 1);
    }
    return lines[idx++];
  };

  const Line& atoms_line = next("atoms");
  if (atoms_line.tokens.size() < 2) throw ParseError("atoms line needs a count", atoms_line.number);
  const std::uint64_t k = parse_u64(atoms_line.tokens[1], atoms_line.number, "atom count");
  if (k == 0 || k > kMaxAtoms || atoms_line.tokens.size() != k + 2) {
    throw ParseError("atoms line must list exactly the declared number (1..64) of names",
                     atoms_line.number);
  }
  std::vector<std::string> names(atoms_line.tokens.begin() + 2, atoms_line.tokens.end());
  std::map<std::string, AtomId> index;
  for (AtomId a = 0; a < k; ++a) {
    if (!valid_name(names[a])) throw ParseError("invalid atom name '" + names[a] + "'", atoms_line.number);
    if (!index.emplace(names[a], a).second) {
      throw ParseError("duplicate atom name '" + names[a] + "'", atoms_line.number);
    }
  }
  auto lookup = [&](const std::string& name, std::size_t line) {
    auto it = index.find(name);
    if (it == index.end()) throw ParseError("unknown atom '" + name + "'", line);
    return it->second;
  };

  const Line& id_line = next("identity");
  AtomSet identity = 0;
  for (std::size_t i = 1; i < id_line.tokens.size(); ++i) {
    identity |= atom_bit(lookup(id_line.tokens[i], id_line.number));
  }
  if (identity == 0) throw ParseError("identity line names no atom", id_line.number);

  const Line& sym_line = next("symmetric");
  if (sym_line.tokens.size() != 2 ||
      (sym_line.tokens[1] != "true" && sym_line.tokens[1] != "false")) {
    throw ParseError("expected 'symmetric true|false'", sym_line.number);
  }
  const bool symmetric = sym_line.tokens[1] == "true";

  std::vector<AtomId> converse(k);
  for (AtomId a = 0; a < k; ++a) converse[a] = a;
  if (!symmetric) {
    std::vector<bool> seen(k, false);
    while (idx < lines.size() && lines[idx].tokens[0] == "converse") {
      const Line& l = lines[idx++];
      if (l.tokens.size() != 3) throw ParseError("expected 'converse <a> <b>'", l.number);
      const AtomId a = lookup(l.tokens[1], l.number);
      if (seen[a]) throw ParseError("duplicate converse for " + l.tokens[1], l.number);
      seen[a] = true;
      converse[a] = lookup(l.tokens[2], l.number);
    }
    for (AtomId a = 0; a < k; ++a) {
      if (!seen[a]) throw ParseError("missing converse for " + names[a], lines.back().number);
    }
  }

  std::vector<AtomSet> comp(k * k, 0);
  std::vector<bool> defined(k * k, false);
  for (; idx < lines.size(); ++idx) {
    const Line& l = lines[idx];
    if (l.tokens[0] != "comp" || l.tokens.size() != 5 || l.tokens[3] != "=") {
      throw ParseError("expected 'comp <a> <b> = <atoms>|0'", l.number);
    }
    const AtomId a = lookup(l.tokens[1], l.number);
    const AtomId b = lookup(l.tokens[2], l.number);
    if (symmetric && b < a) throw ParseError("symmetric tables list a <= b in atom order", l.number);
    AtomSet value = 0;
    if (l.tokens[4] != "0") {
      std::string_view rest = l.tokens[4];
      while (true) {
        const std::size_t plus = rest.find('+');
        value |= atom_bit(lookup(std::string(rest.substr(0, plus)), l.number));
        if (plus == std::string_view::npos) break;
        rest.remove_prefix(plus + 1);
      }
    }
    if (defined[a * k + b]) throw ParseError("duplicate comp entry", l.number);
    defined[a * k + b] = true;
    comp[a * k + b] = value;
    if (symmetric) {
      defined[b * k + a] = true;
      comp[b * k + a] = value;
    }
  }
  for (AtomId a = 0; a < k; ++a) {
    for (AtomId b = 0; b < k; ++b) {
      if (!defined[a * k + b]) {
        throw ParseError("composition table misses " + names[a] + " ; " + names[b],
                         lines.back().number);
      }
    }
  }
  try {
    return FiniteRelationAlgebra(std::move(names), identity, std::move(converse), std::move(comp));
  } catch (const ParameterError& e) {
    throw ParseError(std::string("ill-formed algebra: ") + e.what(), lines.back().number);
  }
}


FiniteRelationAlgebra read_algebra(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return algebra_from_text(buf.str());
}

FiniteRelationAlgebra load_algebra(const std::filesystem::path& path) {
  return algebra_from_text(read_file(path));
}

void save_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);  // reported by the open below
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileError("cannot write " + path.string());
  out << text;
  if (!out) throw FileError("error writing " + path.string());
}

void save_algebra(const std::filesystem::path& path, const FiniteRelationAlgebra& algebra) {
  save_text(path, algebra_to_text(algebra));
}

// ---------------------------------------------------------------------------
// Structure files

namespace {

StructureKind parse_kind(const std::string& s, std::size_t line) {
  if (s == "atom-labeling") return StructureKind::AtomLabeling;
  if (s == "power") return StructureKind::Power;
  if (s == "xi") return StructureKind::Xi;
  throw ParseError("unknown structure kind '" + s + "'", line);
}

// key=value arguments of a power/xi line.
std::map<std::string, std::string> key_values(const Line& l) {
  std::map<std::string, std::string> kv;
  for (std::size_t i = 1; i < l.tokens.size(); ++i) {
    const auto eq = l.tokens[i].find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ParseError("expected key=value, got '" + l.tokens[i] + "'", l.number);
    }
    std::string key = l.tokens[i].substr(0, eq);
    if (key == "base") key = "inner";
    if (!kv.emplace(key, l.tokens[i].substr(eq + 1)).second) {
      throw ParseError("duplicate key '" + key + "'", l.number);
    }
  }
  return kv;
}

}  // namespace

StructureFile parse_structure_file(const std::string& text) {
  const auto lines = tokenize(text);
  expect_header(lines, "structure");
  StructureFile f;
  auto need = [&](std::size_t i, const char* keyword, std::size_t count) -> const Line& {
    if (i >= lines.size() || lines[i].tokens[0] != keyword || lines[i].tokens.size() != count) {
      throw ParseError(std::string("expected '") + keyword + "' line",
                       i < lines.size() ? lines[i].number : lines.back().number + 1);
    }
    return lines[i];
  };
  f.kind = parse_kind(need(1, "kind", 2).tokens[1], lines[1].number);
  f.algebra_path = need(2, "algebra", 2).tokens[1];
  std::size_t idx = 3;

  switch (f.kind) {
    case StructureKind::AtomLabeling: {
      const Line& b = need(idx++, "base", 2);
      f.base = parse_u64(b.tokens[1], b.number, "base size");
      if (f.base == 0) throw ParseError("base must be positive", b.number);
      std::set<std::pair<std::size_t, std::size_t>> seen;
      for (; idx < lines.size(); ++idx) {
        const Line& l = lines[idx];
        if (l.tokens[0] != "edge" || l.tokens.size() != 4) {
          throw ParseError("expected 'edge <u> <v> <atom>'", l.number);
        }
        const auto u = parse_u64(l.tokens[1], l.number, "point");
        const auto v = parse_u64(l.tokens[2], l.number, "point");
        if (u >= v || v >= f.base) throw ParseError("edge needs u < v < base", l.number);
        if (!seen.emplace(u, v).second) throw ParseError("duplicate edge", l.number);
        f.edges.emplace_back(u, v, l.tokens[3]);
      }
      break;
    }
    case StructureKind::Power: {
      if (idx >= lines.size() || lines[idx].tokens[0] != "power") {
        throw ParseError("expected 'power m=<m> inner=<path>'",
                         idx < lines.size() ? lines[idx].number : lines.back().number + 1);
      }
      const Line& l = lines[idx++];
      auto kv = key_values(l);
      if (kv.size() != 2 || !kv.count("m") || !kv.count("inner")) {
        throw ParseError("power line needs exactly m= and inner=", l.number);
      }
      f.m = static_cast<unsigned>(parse_u64(kv["m"], l.number, "exponent"));
      if (f.m == 0) throw ParseError("exponent must be positive", l.number);
      f.inner_path = kv["inner"];
      if (idx < lines.size()) throw ParseError("unexpected line after power", lines[idx].number);
      break;
    }
    case StructureKind::Xi: {
      if (idx >= lines.size() || lines[idx].tokens[0] != "xi") {
        throw ParseError("expected 'xi inner=<path> n=<n> [seed=<u64>]'",
                         idx < lines.size() ? lines[idx].number : lines.back().number + 1);
      }
      const Line& l = lines[idx++];
      auto kv = key_values(l);
      if (!kv.count("inner") || !kv.count("n") || kv.size() > 3 ||
          (kv.size() == 3 && !kv.count("seed"))) {
        throw ParseError("xi line needs inner= and n=, optionally seed=", l.number);
      }
      f.inner_path = kv["inner"];
      f.n = static_cast<unsigned>(parse_u64(kv["n"], l.number, "class count"));
      if (f.n == 0) throw ParseError("n must be positive", l.number);
      if (kv.count("seed")) f.seed = parse_u64(kv["seed"], l.number, "seed");
      std::set<std::pair<std::size_t, std::size_t>> seen;
      for (; idx < lines.size(); ++idx) {
        const Line& e = lines[idx];
        if (f.seed) throw ParseError("xi with a seed takes no tedge lines", e.number);
        if (e.tokens[0] != "tedge" || e.tokens.size() != 4) {
          throw ParseError("expected 'tedge <x> <y> <i>'", e.number);
        }
        const auto x = parse_u64(e.tokens[1], e.number, "point");
        const auto y = parse_u64(e.tokens[2], e.number, "point");
        const auto i = parse_u64(e.tokens[3], e.number, "class");
        if (i < 1 || i > f.n) throw ParseError("class out of range 1..n", e.number);
        if (!seen.emplace(x, y).second) throw ParseError("duplicate tedge", e.number);
        f.tedges.emplace_back(x, y, static_cast<unsigned>(i));
      }
      if (!f.seed && f.tedges.empty()) {
        throw ParseError("xi needs seed= or tedge lines", l.number);
      }
      break;
    }
  }
  return f;
}

std::string structure_file_text(const StructureFile& f) {
  std::ostringstream out;
  out << "structure v1\nkind " << to_string(f.kind) << "\nalgebra " << f.algebra_path << '\n';
  switch (f.kind) {
    case StructureKind::AtomLabeling:
      out << "base " << f.base << '\n';
      for (const auto& [u, v, a] : f.edges) out << "edge " << u << ' ' << v << ' ' << a << '\n';
      break;
    case StructureKind::Power:
      out << "power m=" << f.m << " inner=" << f.inner_path << '\n';
      break;
    case StructureKind::Xi:
      out << "xi inner=" << f.inner_path << " n=" << f.n;
      if (f.seed) out << " seed=" << *f.seed;
      out << '\n';
      for (const auto& [x, y, i] : f.tedges) out << "tedge " << x << ' ' << y << ' ' << i << '\n';
      break;
  }
  return out.str();
}

StructureFile describe_atom_labeling(const LabeledStructure& s, std::string algebra_path) {
  if (s.kind() != StructureKind::AtomLabeling) throw UsageError("not an atom labeling");
  StructureFile f;
  f.kind = StructureKind::AtomLabeling;
  f.algebra_path = std::move(algebra_path);
  f.base = s.base_size();
  for (std::size_t u = 0; u < f.base; ++u) {
    for (std::size_t v = u + 1; v < f.base; ++v) {
      if (auto a = s.label(u, v)) f.edges.emplace_back(u, v, s.algebra().atom_name(*a));
    }
  }
  return f;
}

namespace {

LabeledStructure load_structure_at(const std::filesystem::path& path, int depth) {
  if (depth > 16) throw ParseError("structure files nest too deeply (cycle?)", 1);
  const StructureFile f = parse_structure_file(read_file(path));
  const auto dir = path.parent_path();
  auto resolve = [&](const std::string& p) {
    const std::filesystem::path q(p);
    return q.is_absolute() ? q : dir / q;
  };
  FiniteRelationAlgebra algebra = load_algebra(resolve(f.algebra_path));

  switch (f.kind) {
    case StructureKind::AtomLabeling: {
      const std::size_t d = f.base;
      std::vector<std::int16_t> labels(d * d, LabeledStructure::kUnlabeled);
      for (const auto& [u, v, name] : f.edges) {
        const auto a = algebra.find_atom(name);
        if (!a) throw ParseError("edge atom '" + name + "' is not in the algebra", 0);
        labels[u * d + v] = static_cast<std::int16_t>(*a);
        labels[v * d + u] = static_cast<std::int16_t>(algebra.converse_atom(*a));
      }
      try {
        return LabeledStructure::atom_labeling(std::move(algebra), d, std::move(labels));
      } catch (const ParameterError& e) {
        throw ParseError(std::string("invalid labeling: ") + e.what(), 0);
      }
    }
    case StructureKind::Power: {
      auto inner = std::make_shared<const LabeledStructure>(
          load_structure_at(resolve(f.inner_path), depth + 1));
      if (!inner->algebra().same_table(algebra)) {
        throw ParseError("power algebra differs from the inner structure's algebra", 0);
      }
      return LabeledStructure::power(std::move(inner), f.m);
    }
    case StructureKind::Xi: {
      auto inner = std::make_shared<const LabeledStructure>(
          load_structure_at(resolve(f.inner_path), depth + 1));
      const std::size_t d = inner->base_size();
      Partition partition = [&] {
        if (f.seed) return Partition::from_recipe({*f.seed, f.n, d});
        std::vector<std::uint8_t> classes(d * d, 0);
        for (const auto& [x, y, i] : f.tedges) {
          if (x >= d || y >= d) throw ParseError("tedge point outside the inner base", 0);
          classes[x * d + y] = static_cast<std::uint8_t>(i);
        }
        if (f.tedges.size() != d * d) {
          throw ParseError("explicit partition must list all " + std::to_string(d * d) +
                               " cross pairs",
                           0);
        }
        return Partition::explicit_classes(d, f.n, std::move(classes));
      }();
      try {
        return LabeledStructure::xi(std::move(algebra), std::move(inner), std::move(partition));
      } catch (const ParameterError& e) {
        throw ParseError(std::string("invalid xi structure: ") + e.what(), 0);
      }
    }
  }
  throw InternalError("unknown structure kind");
}

}  // namespace

LabeledStructure load_structure(const std::filesystem::path& path) {
  return load_structure_at(path, 0);
}

}  // namespace relalg
