#include "relalg/structure.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "env.hpp"
#include "relalg/errors.hpp"
#include "relalg/gf.hpp"
#include "relalg/parallel.hpp"

namespace relalg {

std::string to_string(StructureKind kind) {
  switch (kind) {
    case StructureKind::AtomLabeling:
      return "atom-labeling";
    case StructureKind::Power:
      return "power";
    case StructureKind::Xi:
      return "xi";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Partition

Partition Partition::from_recipe(const PartitionRecipe& recipe) {
  if (recipe.n == 0 || recipe.n > 255) {
    throw ParameterError("partition needs 1 <= n <= 255 classes");
  }
  Partition out;
  out.d_ = static_cast<std::size_t>(recipe.d);
  out.n_ = recipe.n;
  out.recipe_ = recipe;
  out.classes_.resize(out.d_ * out.d_);
  for (std::size_t x = 0; x < out.d_; ++x) {
    for (std::size_t y = 0; y < out.d_; ++y) {
      out.classes_[x * out.d_ + y] = static_cast<std::uint8_t>(recipe.class_of(x, y));
    }
  }
  return out;
}

Partition Partition::explicit_classes(std::size_t d, unsigned n,
                                      std::vector<std::uint8_t> classes) {
  if (n == 0 || n > 255) throw ParameterError("partition needs 1 <= n <= 255 classes");
  if (classes.size() != d * d) {
    throw ParameterError("explicit partition must assign all d*d cross pairs");
  }
  for (std::uint8_t c : classes) {
    if (c < 1 || c > n) throw ParameterError("partition class out of range 1..n");
  }
  Partition out;
  out.d_ = d;
  out.n_ = n;
  out.classes_ = std::move(classes);
  return out;
}

// ---------------------------------------------------------------------------
// LabeledStructure

LabeledStructure LabeledStructure::atom_labeling(FiniteRelationAlgebra algebra,
                                                 std::size_t d,
                                                 std::vector<std::int16_t> labels) {
  if (!algebra.is_integral()) {
    throw ParameterError("atom labelings need an integral algebra");
  }
  if (d == 0) throw ParameterError("base must be nonempty");
  if (labels.size() != d * d) throw ParameterError("label table must have d*d entries");
  const auto id_atom = static_cast<std::int16_t>(std::countr_zero(algebra.identity_atoms()));
  const auto k = static_cast<std::int16_t>(algebra.atom_count());
  for (std::size_t u = 0; u < d; ++u) {
    labels[u * d + u] = id_atom;
    for (std::size_t v = 0; v < d; ++v) {
      if (u == v) continue;
      const std::int16_t a = labels[u * d + v];
      const std::int16_t b = labels[v * d + u];
      if (a == kUnlabeled && b == kUnlabeled) continue;
      if (a < 0 || a >= k || b < 0 || b >= k) {
        throw ParameterError("pair (" + std::to_string(u) + "," + std::to_string(v) +
                             ") has an invalid label or only one direction labeled");
      }
      if (a == id_atom) {
        throw ParameterError("off-diagonal pair (" + std::to_string(u) + "," +
                             std::to_string(v) + ") labeled with the identity");
      }
      if (algebra.converse_atom(static_cast<AtomId>(a)) != static_cast<AtomId>(b)) {
        throw ParameterError("labels of (" + std::to_string(u) + "," + std::to_string(v) +
                             ") and its reverse are not converse");
      }
    }
  }
  LabeledStructure s(StructureKind::AtomLabeling, std::move(algebra));
  s.d_ = d;
  s.labels_ = std::move(labels);
  return s;
}

LabeledStructure LabeledStructure::power(std::shared_ptr<const LabeledStructure> inner,
                                         unsigned m) {
  if (!inner) throw UsageError("power of a null structure");
  if (m == 0) throw ParameterError("power exponent must be at least 1");
  if (m == 1) return *inner;
  LabeledStructure s(StructureKind::Power, inner->algebra());
  std::size_t d = 1;
  for (unsigned i = 0; i < m; ++i) {
    if (d > std::numeric_limits<std::size_t>::max() / inner->base_size()) {
      d = std::numeric_limits<std::size_t>::max();
      break;
    }
    d *= inner->base_size();
  }
  s.d_ = d;
  s.m_ = m;
  s.inner_ = std::move(inner);
  return s;
}

LabeledStructure LabeledStructure::xi(FiniteRelationAlgebra algebra,
                                      std::shared_ptr<const LabeledStructure> inner,
                                      Partition partition) {
  if (!inner) throw UsageError("xi over a null structure");
  const auto outer = recognize_lpn(algebra);
  const auto base = recognize_lpn(inner->algebra());
  if (!outer || outer->n == 0) throw ParameterError("xi algebra must be L(p,n) with n >= 1");
  if (!base || base->n != 0 || base->p != outer->p) {
    throw ParameterError("xi inner structure must be over L(p,0) with the same p");
  }
  if (partition.d() != inner->base_size()) {
    throw ParameterError("partition size does not match the inner base");
  }
  if (partition.n() != outer->n) {
    throw ParameterError("partition class count does not match n");
  }
  LabeledStructure s(StructureKind::Xi, std::move(algebra));
  s.d_ = 2 * inner->base_size();
  s.inner_ = std::move(inner);
  s.partition_ = std::make_shared<const Partition>(std::move(partition));
  s.xi_params_ = *outer;
  return s;
}

std::optional<AtomId> LabeledStructure::label(std::size_t u, std::size_t v) const {
  if (kind_ != StructureKind::AtomLabeling) {
    throw UsageError("label() is only defined for atom labelings");
  }
  if (u >= d_ || v >= d_) throw UsageError("point out of range");
  const std::int16_t a = labels_[u * d_ + v];
  if (a == kUnlabeled) return std::nullopt;
  return static_cast<AtomId>(a);
}

// ---------------------------------------------------------------------------
// Images

std::size_t max_image_base() {
  return static_cast<std::size_t>(detail::env_u64("RELALG_MAX_IMAGE_BASE", 16384));
}

std::size_t max_verify_base() {
  return static_cast<std::size_t>(detail::env_u64("RELALG_MAX_BASE", 4096));
}

BitMatrix image(const LabeledStructure& s, const Element& x) {
  if (!s.algebra().owns(x)) throw UsageError("element belongs to a different algebra");
  const std::size_t d = s.base_size();
  if (d > max_image_base()) {
    throw ResourceError("image over " + std::to_string(d) +
                        " points exceeds the image budget of " +
                        std::to_string(max_image_base()));
  }
  switch (s.kind()) {
    case StructureKind::AtomLabeling: {
      BitMatrix out(d);
      const AtomSet atoms = x.atoms();
      const auto& labels = s.labels();
      for (std::size_t u = 0; u < d; ++u) {
        for (std::size_t v = 0; v < d; ++v) {
          const std::int16_t a = labels[u * d + v];
          if (a >= 0 && (atoms & atom_bit(static_cast<AtomId>(a))) != 0) out.set(u, v);
        }
      }
      return out;
    }
    case StructureKind::Power: {
      const BitMatrix base = image(s.inner(), x);
      BitMatrix out = base;
      for (unsigned i = 1; i < s.exponent(); ++i) out = out.kron(base);
      return out;
    }
    case StructureKind::Xi: {
      const LpnParams& params = s.xi_params();
      const AtomSet low = x.atoms() & (atom_bit(lpn::identity_atom()) | lpn::a_part(params));
      const BitMatrix base = image(s.inner(), s.inner().algebra().element(low));
      const std::size_t half = s.inner().base_size();
      BitMatrix out(d);
      for (std::size_t u = 0; u < half; ++u) {
        or_bits_at(out.row(u), 0, base.row(u), half);
        or_bits_at(out.row(half + u), half, base.row(u), half);
      }
      const Partition& part = s.partition();
      bool wanted[256] = {};
      bool any = false;
      for (unsigned i = 1; i <= params.n; ++i) {
        wanted[i] = x.contains(lpn::t_atom(params, i));
        any = any || wanted[i];
      }
      if (any) {
        for (std::size_t u = 0; u < half; ++u) {
          for (std::size_t v = 0; v < half; ++v) {
            if (wanted[part.class_of(u, v)]) {
              out.set(u, half + v);
              out.set(half + v, u);
            }
          }
        }
      }
      return out;
    }
  }
  throw InternalError("unknown structure kind");
}

std::vector<std::size_t> power_coordinates(const LabeledStructure& s, std::size_t point) {
  if (s.kind() != StructureKind::Power) throw UsageError("not a power structure");
  const std::size_t d = s.inner().base_size();
  std::vector<std::size_t> coords(s.exponent());
  // kron puts the first factor in the most significant position; all factors
  // are equal, so coordinate i is simply digit i.
  for (auto& c : coords) {
    c = point % d;
    point /= d;
  }
  return coords;
}

// ---------------------------------------------------------------------------
// Builders

namespace {

unsigned require_field_order(unsigned q) {
  if (q < 3 || !is_prime_power(q)) {
    throw ParameterError("q must be a prime power >= 3, got " + std::to_string(q));
  }
  return q;
}

std::vector<std::int16_t> affine_labels(const GaloisField& f) {
  const unsigned q = f.order();
  const std::size_t d = static_cast<std::size_t>(q) * q;
  std::vector<std::int16_t> labels(d * d, LabeledStructure::kUnlabeled);
  for (std::size_t u = 0; u < d; ++u) {
    const FieldElement x1{static_cast<std::uint32_t>(u / q)};
    const FieldElement y1{static_cast<std::uint32_t>(u % q)};
    for (std::size_t v = 0; v < d; ++v) {
      if (u == v) continue;
      const FieldElement dx = f.sub({static_cast<std::uint32_t>(v / q)}, x1);
      const FieldElement dy = f.sub({static_cast<std::uint32_t>(v % q)}, y1);
      const unsigned slope = dx.index == 0 ? q : f.div(dy, dx).index;
      labels[u * d + v] = static_cast<std::int16_t>(lpn::a_atom(slope));
    }
  }
  return labels;
}

}  // namespace

LabeledStructure build_affine(unsigned q) {
  require_field_order(q);
  const GaloisField f = GaloisField::of_order(q);
  const std::size_t d = static_cast<std::size_t>(q) * q;
  return LabeledStructure::atom_labeling(build_lpn({q, 0}), d, affine_labels(f));
}

LabeledStructure build_doubled(unsigned q) {
  require_field_order(q);
  const GaloisField f = GaloisField::of_order(q);
  const LpnParams params{q, 1};
  const std::size_t half = static_cast<std::size_t>(q) * q;
  const std::size_t d = 2 * half;
  const auto plane = affine_labels(f);
  std::vector<std::int16_t> labels(d * d, LabeledStructure::kUnlabeled);
  const auto t1 = static_cast<std::int16_t>(lpn::t_atom(params, 1));
  for (std::size_t u = 0; u < d; ++u) {
    for (std::size_t v = 0; v < d; ++v) {
      if ((u < half) != (v < half)) {
        labels[u * d + v] = t1;
      } else {
        labels[u * d + v] = plane[(u % half) * half + (v % half)];
      }
    }
  }
  return LabeledStructure::atom_labeling(build_lpn(params), d, std::move(labels));
}

LabeledStructure build_power(const LabeledStructure& s, unsigned m) {
  return LabeledStructure::power(std::make_shared<const LabeledStructure>(s), m);
}

// ---------------------------------------------------------------------------
// Verification

namespace {

constexpr std::uint64_t kExhaustivePairLimit = 1ULL << 16;
constexpr std::uint64_t kMaxEnumeratedElements = 1ULL << 16;

std::string pair_text(std::pair<std::size_t, std::size_t> p) {
  return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
}

void check_base(const LabeledStructure& s, const VerifyOptions& options) {
  const std::size_t limit = options.max_base != 0 ? options.max_base : max_verify_base();
  if (s.base_size() > limit) {
    throw ResourceError("base of " + std::to_string(s.base_size()) +
                        " points exceeds the verification budget of " +
                        std::to_string(limit) + " (RELALG_MAX_BASE)");
  }
}

// Which atoms' images contain the pair; used to describe certificates.
std::string pair_atoms(const LabeledStructure& s, std::size_t u, std::size_t v) {
  const auto& alg = s.algebra();
  std::string out;
  for (AtomId a = 0; a < alg.atom_count(); ++a) {
    if (image(s, alg.atom(a)).get(u, v)) {
      if (!out.empty()) out += "+";
      out += alg.atom_name(a);
    }
  }
  return out.empty() ? std::string("unlabeled") : "in atom image " + out;
}

Verdict fail(std::string clause, std::string detail) {
  Verdict v;
  v.pass = false;
  v.clause = std::move(clause);
  v.detail = std::move(detail);
  return v;
}

// Describes a composition mismatch at (u, v): either a missing witness or a
// pair of the product that the image of x;y lacks.
std::string composition_detail(const FiniteRelationAlgebra& alg, const Element& x,
                               const Element& y, const BitMatrix& ix,
                               const BitMatrix& iy, const BitMatrix& ixy,
                               std::pair<std::size_t, std::size_t> at) {
  const auto [u, v] = at;
  std::ostringstream out;
  out << "at " << pair_text(at) << ": ";
  if (ixy.get(u, v)) {
    out << "pair is in image(" << alg.format(alg.compose(x, y))
        << ") but no w has (u,w) in image(" << alg.format(x) << ") and (w,v) in image("
        << alg.format(y) << ")";
  } else {
    std::size_t w = 0;
    while (w < ix.size() && !(ix.get(u, w) && iy.get(w, v))) ++w;
    out << "w=" << w << " links image(" << alg.format(x) << ") and image("
        << alg.format(y) << ") but the pair is not in image("
        << alg.format(alg.compose(x, y)) << ")";
  }
  return out.str();
}

class ImageCache {
 public:
  ImageCache(const LabeledStructure& s, bool cache_all) : s_(s) {
    if (cache_all) {
      const std::uint64_t count = s.algebra().element_count();
      images_.reserve(count);
      for (std::uint64_t e = 0; e < count; ++e) {
        images_.push_back(image(s, s.algebra().element(e)));
      }
    }
  }
  bool cached() const { return !images_.empty(); }
  const BitMatrix& get(AtomSet e, BitMatrix& scratch) const {
    if (cached()) return images_[e];
    scratch = image(s_, s_.algebra().element(e));
    return scratch;
  }

 private:
  const LabeledStructure& s_;
  std::vector<BitMatrix> images_;
};

Verdict verify_element_pairs(const LabeledStructure& s, const VerifyOptions& options,
                             bool full) {
  const auto& alg = s.algebra();
  const std::size_t d = s.base_size();
  if (alg.atom_count() > 16) {
    throw ResourceError("element-pair verification is limited to 16 atoms");
  }
  const std::uint64_t count = alg.element_count();
  const std::uint64_t bytes_per_image = d * ((d + 63) / 64) * 8;
  const std::uint64_t cache_budget =
      detail::env_u64("RELALG_IMAGE_CACHE_MB", 512) * (1ULL << 20);
  const ImageCache cache(s, count * bytes_per_image <= cache_budget);
  BitMatrix scratch_a;
  BitMatrix scratch_b;
  Verdict result;
  result.strategy = "element-pairs";

  const BitMatrix& zero = cache.get(0, scratch_a);
  if (zero.any()) {
    Verdict v = fail("zero", "image(0) is not empty");
    v.x = alg.zero();
    v.points = zero.first_difference(BitMatrix(d));
    return v;
  }
  const BitMatrix& id = cache.get(alg.identity_atoms(), scratch_a);
  if (auto diff = id.first_difference(BitMatrix::identity(d))) {
    Verdict v = fail("identity", "image(1') differs from the diagonal at " + pair_text(*diff));
    v.x = alg.identity();
    v.points = diff;
    return v;
  }

  for (std::uint64_t e = 0; e < count; ++e) {
    const Element x = alg.element(e);
    const BitMatrix& ix = cache.get(e, scratch_a);
    const BitMatrix& ic = cache.get(alg.converse(x).atoms(), scratch_b);
    if (auto diff = ic.first_difference(ix.transpose())) {
      Verdict v = fail("converse", "image(x~) differs from the transpose of image(x) at " +
                                       pair_text(*diff));
      v.x = x;
      v.points = diff;
      return v;
    }
  }

  // Injectivity: first element (in increasing order) whose image repeats an
  // earlier one.
  {
    std::unordered_multimap<std::uint64_t, AtomSet> seen;
    for (std::uint64_t e = 0; e < count; ++e) {
      const BitMatrix& ie = cache.get(e, scratch_a);
      const std::uint64_t h = ie.hash();
      auto [lo, hi] = seen.equal_range(h);
      for (auto it = lo; it != hi; ++it) {
        if (cache.get(it->second, scratch_b) == ie) {
          Verdict v = fail("injective", "distinct elements " + alg.format(alg.element(it->second)) +
                                            " and " + alg.format(alg.element(e)) +
                                            " have the same image");
          v.x = alg.element(it->second);
          v.y = alg.element(e);
          return v;
        }
      }
      seen.emplace(h, e);
    }
  }

  // Meets and compositions. In a symmetric algebra, once converse holds every
  // image is symmetric and the (y, x) checks mirror the (x, y) ones.
  const bool halve = alg.is_symmetric();
  std::vector<std::optional<Verdict>> failures(count);
  std::vector<std::uint64_t> checked(count, 0);
  const std::size_t first = first_failure(count, options.threads, [&](std::size_t xi) {
    BitMatrix sa, sb, sm, sc;
    const Element x = alg.element(xi);
    const BitMatrix& ix = cache.get(xi, sa);
    for (std::uint64_t yi = halve ? xi : 0; yi < count; ++yi) {
      const Element y = alg.element(yi);
      const BitMatrix& iy = cache.get(yi, sb);
      ++checked[xi];
      const BitMatrix& imeet = cache.get(xi & yi, sm);
      if (auto diff = imeet.first_difference(ix & iy)) {
        Verdict v = fail("meet", "image(x.y) differs from image(x) & image(y) at " +
                                     pair_text(*diff));
        v.x = x;
        v.y = y;
        v.points = diff;
        failures[xi] = std::move(v);
        return true;
      }
      const BitMatrix& icomp = cache.get(alg.compose(x, y).atoms(), sc);
      const BitMatrix prod = ix.product(iy);
      if (auto diff = icomp.first_difference(prod)) {
        Verdict v = fail("composition", composition_detail(alg, x, y, ix, iy, icomp, *diff));
        v.x = x;
        v.y = y;
        v.points = diff;
        failures[xi] = std::move(v);
        return true;
      }
    }
    return false;
  });
  for (std::size_t i = 0; i < std::min<std::size_t>(first + 1, count); ++i) {
    result.checked += checked[i];
  }
  if (first < count) {
    Verdict v = *failures[first];
    v.checked = result.checked;
    v.strategy = result.strategy;
    return v;
  }

  if (full) {
    const BitMatrix& top = cache.get(alg.universe(), scratch_a);
    if (auto diff = top.first_difference(BitMatrix::full(d))) {
      Verdict v = fail("top", "image(1) misses the pair " + pair_text(*diff));
      v.x = alg.top();
      v.points = diff;
      v.checked = result.checked;
      v.strategy = result.strategy;
      return v;
    }
    for (std::uint64_t e = 0; e < count; ++e) {
      const BitMatrix& ie = cache.get(e, scratch_a);
      const BitMatrix& ic = cache.get(alg.complement(alg.element(e)).atoms(), scratch_b);
      if (auto diff = ic.first_difference(ie.complement())) {
        Verdict v = fail("complement",
                         "image(-x) differs from the complement of image(x) at " +
                             pair_text(*diff) + "; the pair is " +
                             pair_atoms(s, diff->first, diff->second));
        v.x = alg.element(e);
        v.points = diff;
        v.checked = result.checked;
        v.strategy = result.strategy;
        return v;
      }
    }
  }
  result.pass = true;
  return result;
}

Verdict verify_atom_pairs(const LabeledStructure& s, const VerifyOptions& options,
                          bool full) {
  if (s.kind() != StructureKind::AtomLabeling) {
    throw UsageError("atom-pair verification needs an additive atom labeling");
  }
  const auto& alg = s.algebra();
  const std::size_t d = s.base_size();
  const std::size_t k = alg.atom_count();
  Verdict result;
  result.strategy = "atom-pairs";

  std::vector<BitMatrix> atoms;
  atoms.reserve(k);
  for (AtomId a = 0; a < k; ++a) atoms.push_back(image(s, alg.atom(a)));
  auto union_of = [&](AtomSet set) {
    BitMatrix out(d);
    for_each_atom(set, [&](AtomId c) { out |= atoms[c]; });
    return out;
  };

  const BitMatrix id = union_of(alg.identity_atoms());
  if (auto diff = id.first_difference(BitMatrix::identity(d))) {
    Verdict v = fail("identity", "image(1') differs from the diagonal at " + pair_text(*diff));
    v.x = alg.identity();
    v.points = diff;
    return v;
  }
  for (AtomId a = 0; a < k; ++a) {
    if (auto diff = atoms[alg.converse_atom(a)].first_difference(atoms[a].transpose())) {
      Verdict v = fail("converse", "image(a~) differs from the transpose of image(a) at " +
                                       pair_text(*diff));
      v.x = alg.atom(a);
      v.points = diff;
      return v;
    }
  }
  // Atom images are disjoint by construction, so the additive map is
  // injective iff no atom image is empty.
  for (AtomId a = 0; a < k; ++a) {
    if (!atoms[a].any()) {
      Verdict v = fail("injective", "atom " + alg.atom_name(a) +
                                        " has an empty image, so it is not separated from 0");
      v.x = alg.zero();
      v.y = alg.atom(a);
      return v;
    }
  }
  const bool halve = alg.is_symmetric();
  std::vector<std::optional<Verdict>> failures(k);
  std::vector<std::uint64_t> checked(k, 0);
  const std::size_t first = first_failure(k, options.threads, [&](std::size_t a) {
    for (AtomId b = halve ? static_cast<AtomId>(a) : 0; b < k; ++b) {
      ++checked[a];
      const BitMatrix icomp = union_of(alg.comp_atoms(static_cast<AtomId>(a), b));
      const BitMatrix prod = atoms[a].product(atoms[b]);
      if (auto diff = icomp.first_difference(prod)) {
        const Element x = alg.atom(static_cast<AtomId>(a));
        const Element y = alg.atom(b);
        Verdict v = fail("composition",
                         composition_detail(alg, x, y, atoms[a], atoms[b], icomp, *diff));
        v.x = x;
        v.y = y;
        v.points = diff;
        failures[a] = std::move(v);
        return true;
      }
    }
    return false;
  });
  for (std::size_t i = 0; i < std::min(first + 1, k); ++i) result.checked += checked[i];
  if (first < k) {
    Verdict v = *failures[first];
    v.checked = result.checked;
    v.strategy = result.strategy;
    return v;
  }

  if (full) {
    const BitMatrix top = union_of(alg.universe());
    if (auto diff = top.first_difference(BitMatrix::full(d))) {
      Verdict v = fail("top", "image(1) misses the pair " + pair_text(*diff) +
                                  "; the pair is unlabeled");
      v.x = alg.top();
      v.points = diff;
      v.checked = result.checked;
      v.strategy = result.strategy;
      return v;
    }
    // With a total labeling and disjoint atom images the complement law
    // follows; it is still checked per element while that stays cheap.
    if (alg.element_count() <= kMaxEnumeratedElements) {
      for (std::uint64_t e = 0; e < alg.element_count(); ++e) {
        const BitMatrix ie = union_of(e);
        const BitMatrix ic = union_of(alg.universe() & ~e);
        if (auto diff = ic.first_difference(ie.complement())) {
          Verdict v = fail("complement",
                           "image(-x) differs from the complement of image(x) at " +
                               pair_text(*diff));
          v.x = alg.element(e);
          v.points = diff;
          v.checked = result.checked;
          v.strategy = result.strategy;
          return v;
        }
      }
    }
  }
  result.pass = true;
  return result;
}

Verdict verify(const LabeledStructure& s, const VerifyOptions& options, bool full) {
  check_base(s, options);
  VerifyStrategy strategy = options.strategy;
  if (strategy == VerifyStrategy::Auto) {
    const std::uint64_t k = s.algebra().atom_count();
    const bool small = 2 * k <= 63 && (1ULL << (2 * k)) <= kExhaustivePairLimit;
    strategy = (s.kind() == StructureKind::AtomLabeling && !small)
                   ? VerifyStrategy::AtomPairs
                   : VerifyStrategy::ElementPairs;
  }
  return strategy == VerifyStrategy::AtomPairs ? verify_atom_pairs(s, options, full)
                                               : verify_element_pairs(s, options, full);
}

}  // namespace

Verdict verify_weak(const LabeledStructure& s, const VerifyOptions& options) {
  return verify(s, options, false);
}

Verdict verify_full(const LabeledStructure& s, const VerifyOptions& options) {
  return verify(s, options, true);
}

Verdict verify_network(const LabeledStructure& s) {
  if (s.kind() != StructureKind::AtomLabeling) {
    throw UsageError("the network check needs an atom labeling");
  }
  const auto& alg = s.algebra();
  const std::size_t d = s.base_size();
  const std::size_t k = alg.atom_count();
  const auto& labels = s.labels();
  Verdict result;
  result.strategy = "network";

  for (AtomId a = 0; a < k; ++a) {
    bool used = false;
    for (std::size_t i = 0; i < d * d && !used; ++i) used = labels[i] == static_cast<std::int16_t>(a);
    if (!used) {
      Verdict v = fail("nonempty", "atom " + alg.atom_name(a) + " labels no pair");
      v.y = alg.atom(a);
      v.strategy = result.strategy;
      return v;
    }
  }

  std::vector<std::uint8_t> realized(k * k);
  for (std::size_t u = 0; u < d; ++u) {
    for (std::size_t v = 0; v < d; ++v) {
      const std::int16_t c = labels[u * d + v];
      std::fill(realized.begin(), realized.end(), 0);
      for (std::size_t w = 0; w < d; ++w) {
        const std::int16_t a = labels[u * d + w];
        const std::int16_t b = labels[w * d + v];
        if (a < 0 || b < 0) continue;
        ++result.checked;
        if (c < 0 || (alg.comp_atoms(static_cast<AtomId>(a), static_cast<AtomId>(b)) &
                      atom_bit(static_cast<AtomId>(c))) == 0) {
          Verdict out = fail(
              "triangle", "points " + std::to_string(u) + "," + std::to_string(w) + "," +
                              std::to_string(v) + ": labels " + alg.atom_name(a) + ", " +
                              alg.atom_name(b) + " force (u,v) into " +
                              alg.format(alg.element(alg.comp_atoms(a, b))) + " but it is " +
                              (c < 0 ? std::string("unlabeled") : alg.atom_name(c)));
          out.x = alg.atom(a);
          out.y = alg.atom(b);
          out.points = std::make_pair(u, v);
          out.strategy = result.strategy;
          return out;
        }
        realized[a * k + b] = 1;
      }
      if (c < 0) continue;
      for (AtomId a = 0; a < k; ++a) {
        for (AtomId b = 0; b < k; ++b) {
          if ((alg.comp_atoms(a, b) & atom_bit(static_cast<AtomId>(c))) != 0 &&
              realized[a * k + b] == 0) {
            Verdict out = fail("saturation",
                               "pair " + pair_text({u, v}) + " labeled " +
                                   alg.atom_name(c) + " has no witness w for " +
                                   alg.atom_name(a) + ";" + alg.atom_name(b));
            out.x = alg.atom(a);
            out.y = alg.atom(b);
            out.points = std::make_pair(u, v);
            out.strategy = result.strategy;
            return out;
          }
        }
      }
    }
  }
  result.pass = true;
  return result;
}

// ---------------------------------------------------------------------------
// Degree audit

DegreeAudit degree_audit(const LabeledStructure& s) {
  const auto& alg = s.algebra();
  DegreeAudit audit;
  audit.family = recognize_lpn(alg);
  for (AtomId a = 0; a < alg.atom_count(); ++a) {
    if (alg.identity_atoms() & atom_bit(a)) continue;
    const BitMatrix img = image(s, alg.atom(a));
    AtomDegree deg{a, std::numeric_limits<std::size_t>::max(), 0};
    for (std::size_t u = 0; u < img.size(); ++u) {
      const std::size_t c = img.row_count(u);
      deg.min = std::min(deg.min, c);
      deg.max = std::max(deg.max, c);
    }
    audit.degrees.push_back(deg);
  }
  if (audit.family) {
    const LpnParams& params = *audit.family;
    audit.a_degrees_regular = true;
    for (const auto& deg : audit.degrees) {
      if ((lpn::a_part(params) & atom_bit(deg.atom)) != 0 &&
          (deg.min != params.p - 1 || deg.max != params.p - 1)) {
        audit.a_degrees_regular = false;
      }
    }
    audit.degree_bound = params.p >= 2 * params.n;  // p - 1 >= 2n - 1
    audit.verdict = audit.a_degrees_regular && audit.degree_bound;
  }
  return audit;
}

}  // namespace relalg
