#include "imean/bim.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "imean/kernels.hpp"

namespace imean {

namespace {


Image identity_image(int n) {
  Image img;
  img.fill(kUndefined);
  for (int x = 0; x < n; ++x) img[x] = static_cast<std::uint8_t>(x);
  return img;
}

Image mask_image(Mask m, int n) {
  Image img;
  img.fill(kUndefined);
  for (int x = 0; x < n; ++x) {
    if ((m >> x) & 1u) img[x] = static_cast<std::uint8_t>(x);
  }
  return img;
}

Mask range_of(const Image& img, int n) {
  Mask m = 0;
  for (int x = 0; x < n; ++x) {
    if (img[x] != kUndefined) m |= Mask{1} << img[x];
  }
  return m;
}

Image inverse_image(const Image& img, int n) {
  Image out;
  out.fill(kUndefined);
  for (int x = 0; x < n; ++x) {
    if (img[x] != kUndefined) out[img[x]] = static_cast<std::uint8_t>(x);
  }
  return out;
}

bool is_idempotent_image(const Image& img, int n) {
  for (int x = 0; x < n; ++x) {
    if (img[x] != kUndefined && img[x] != x) return false;
  }
  return true;
}

// Union of two tables if it is a partial bijection.
std::optional<Image> join_images(const Image& a, const Image& b, int n) {
  Image out;
  out.fill(kUndefined);
  Mask targets = 0;
  for (int x = 0; x < n; ++x) {
    std::uint8_t t = a[x];
    if (t == kUndefined) {
      t = b[x];
    } else if (b[x] != kUndefined && b[x] != t) {
      return std::nullopt;
    }
    if (t == kUndefined) continue;
    const Mask bit = Mask{1} << t;
    // A repeated target is only legal when both maps send the same source there.
    if (targets & bit) return std::nullopt;
    targets |= bit;
    out[x] = t;
  }
  return out;
}

std::uint32_t witness_key(Mask d, Mask r) { return (d << 16) | r; }

void check_ground(const FiniteBIM& s, const SubsetIdempotent& e) {
  if (s.ground() != e.ground()) {
    fail(Errc::GroundMismatch, "idempotent ground " + std::to_string(e.ground().size()) +
                                   " vs monoid ground " + std::to_string(s.ground().size()));
  }
}

}  // namespace

void SemisimpleSpec::validate() const {
  if (block_sizes.empty()) fail(Errc::InvalidArgument, "semisimple spec needs at least one block");
  for (int n : block_sizes) {
    if (n < 1) fail(Errc::InvalidArgument, "block sizes must be positive");
  }
}

int SemisimpleSpec::total() const {
  return std::accumulate(block_sizes.begin(), block_sizes.end(), 0);
}

std::vector<int> SemisimpleSpec::offsets() const {
  std::vector<int> out;
  int at = 0;
  for (int n : block_sizes) {
    out.push_back(at);
    at += n;
  }
  return out;
}

FiniteBIM::FiniteBIM(GroundSet ground, std::vector<Image> sorted_images,
                     std::vector<PartialBijection> generators)
    : ground_(ground), images_(std::move(sorted_images)), generators_(std::move(generators)) {
  const int n = ground_.size();
  domains_.resize(images_.size());
  kernels::domain_masks(images_, domains_);
  ranges_.resize(images_.size());
  idempotent_flag_.assign(std::size_t{1} << n, false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    ranges_[i] = range_of(images_[i], n);
    witness_.try_emplace(witness_key(domains_[i], ranges_[i]), static_cast<std::uint32_t>(i));
    if (is_idempotent_image(images_[i], n)) idempotent_flag_[domains_[i]] = true;
  }
  for (Mask m = 0; m < (Mask{1} << n); ++m) {
    if (idempotent_flag_[m]) idempotents_.emplace_back(ground_, m);
  }
  // Atoms: non-zero idempotents with no non-zero idempotent strictly below.
  for (const auto& e : idempotents_) {
    if (e.is_empty()) continue;
    bool minimal = true;
    for (Mask sub = (e.mask() - 1) & e.mask(); sub != 0; sub = (sub - 1) & e.mask()) {
      if (idempotent_flag_[sub]) {
        minimal = false;
        break;
      }
    }
    if (minimal) atoms_.push_back(e);
  }
  // Atom D-classes by union-find on witnesses.
  std::vector<std::size_t> parent(atoms_.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    for (std::size_t j = i + 1; j < atoms_.size(); ++j) {
      if (witness_.contains(witness_key(atoms_[i].mask(), atoms_[j].mask()))) {
        parent[find(j)] = find(i);
      }
    }
  }
  atom_class_.assign(atoms_.size(), 0);
  std::vector<std::size_t> class_of_root(atoms_.size(), static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const std::size_t root = find(i);
    if (class_of_root[root] == static_cast<std::size_t>(-1)) {
      class_of_root[root] = class_sizes_.size();
      class_sizes_.push_back(0);
    }
    atom_class_[i] = class_of_root[root];
    ++class_sizes_[atom_class_[i]];
  }
}

FiniteBIM FiniteBIM::close(GroundSet ground, const std::vector<PartialBijection>& generators,
                           std::size_t cap) {
  const int n = ground.size();
  std::unordered_set<Image, ImageHash> seen;
  std::vector<Image> elems;
  auto add = [&](const Image& img) {
    if (seen.insert(img).second) {
      elems.push_back(img);
      if (elems.size() > cap) {
        fail(Errc::CapExceeded, "closure exceeded cap " + std::to_string(cap));
      }
    }
  };
  std::vector<PartialBijection> gens(generators.begin(), generators.end());
  add(mask_image(0, n));
  add(identity_image(n));
  for (const auto& g : gens) {
    if (g.ground() != ground) {
      fail(Errc::GroundMismatch, "generator " + to_string(g) + " not on ground " +
                                     std::to_string(n));
    }
    add(g.image());
  }

  std::vector<Image> buffer;
  for (std::size_t next = 0; next < elems.size(); ++next) {
    const Image x = elems[next];
    const std::size_t known = elems.size();
    buffer.resize(known);
    // Copy out the prefix: `add` may reallocate elems.
    std::vector<Image> prefix(elems.begin(), elems.begin() + static_cast<std::ptrdiff_t>(known));
    kernels::compose_left(x, prefix, buffer);
    for (const auto& img : buffer) add(img);
    kernels::compose_right(prefix, x, buffer);
    for (const auto& img : buffer) add(img);
    add(inverse_image(x, n));
    for (const auto& y : prefix) {
      if (auto j = join_images(x, y, n)) add(*j);
    }
    if (is_idempotent_image(x, n)) {
      Mask d = 0;
      for (int p = 0; p < n; ++p) {
        if (x[p] != kUndefined) d |= Mask{1} << p;
      }
      add(mask_image(ground.full_mask() & ~d, n));
    }
  }
  std::sort(elems.begin(), elems.end());
  return FiniteBIM(ground, std::move(elems), std::move(gens));
}

std::vector<PartialBijection> enumerate_symmetric(GroundSet ground) {
  const int n = ground.size();
  std::vector<PartialBijection> out;
  Image img;
  img.fill(kUndefined);
  auto rec = [&](auto&& self, int x, Mask used) -> void {
    if (x == n) {
      out.push_back(PartialBijection::from_image(ground, img));
      return;
    }
    img[x] = kUndefined;
    self(self, x + 1, used);
    for (int t = 0; t < n; ++t) {
      if ((used >> t) & 1u) continue;
      img[x] = static_cast<std::uint8_t>(t);
      self(self, x + 1, used | (Mask{1} << t));
    }
    img[x] = kUndefined;
  };
  rec(rec, 0, 0);
  return out;
}

std::vector<PartialBijection> semisimple_generators(const SemisimpleSpec& spec) {
  spec.validate();
  const GroundSet ground(spec.total());
  const auto offsets = spec.offsets();
  std::vector<PartialBijection> out;
  for (std::size_t b = 0; b < spec.block_sizes.size(); ++b) {
    for (int i = 0; i < spec.block_sizes[b]; ++i) {
      for (int j = 0; j < spec.block_sizes[b]; ++j) {
        out.emplace_back(ground, std::vector<std::pair<int, int>>{{offsets[b] + i, offsets[b] + j}});
      }
    }
  }
  return out;
}

FiniteBIM FiniteBIM::semisimple(const SemisimpleSpec& spec) {
  spec.validate();
  const GroundSet ground(spec.total());
  const auto offsets = spec.offsets();
  std::vector<Image> elems;
  {
    Image empty;
    empty.fill(kUndefined);
    elems.push_back(empty);
  }
  for (std::size_t b = 0; b < spec.block_sizes.size(); ++b) {
    const auto block = enumerate_symmetric(GroundSet(spec.block_sizes[b]));
    std::vector<Image> next;
    next.reserve(elems.size() * block.size());
    for (const auto& partial : elems) {
      for (const auto& local : block) {
        Image img = partial;
        for (int x = 0; x < spec.block_sizes[b]; ++x) {
          const auto t = local.image()[x];
          if (t != kUndefined) {
            img[offsets[b] + x] = static_cast<std::uint8_t>(offsets[b] + t);
          }
        }
        next.push_back(img);
      }
    }
    elems = std::move(next);
  }
  std::sort(elems.begin(), elems.end());
  return FiniteBIM(ground, std::move(elems), semisimple_generators(spec));
}

FiniteBIM FiniteBIM::from_elements(GroundSet ground, std::vector<PartialBijection> elements,
                                   std::vector<PartialBijection> generators) {
  const int n = ground.size();
  std::unordered_set<Image, ImageHash> set;
  for (const auto& e : elements) {
    if (e.ground() != ground) fail(Errc::GroundMismatch, "element " + to_string(e));
    set.insert(e.image());
  }
  auto require = [&](const Image& img, const char* what) {
    if (!set.contains(img)) fail(Errc::InvalidArgument, std::string("element set not closed under ") + what);
  };
  require(mask_image(0, n), "zero");
  require(identity_image(n), "identity");
  std::vector<Image> imgs(set.begin(), set.end());
  std::sort(imgs.begin(), imgs.end());
  std::vector<Image> buffer(imgs.size());
  for (const auto& x : imgs) {
    require(inverse_image(x, n), "inverse");
    kernels::compose_left(x, imgs, buffer);
    for (const auto& p : buffer) require(p, "products");
    for (const auto& y : imgs) {
      if (auto j = join_images(x, y, n)) require(*j, "compatible joins");
    }
    if (is_idempotent_image(x, n)) {
      Mask d = 0;
      for (int p = 0; p < n; ++p) {
        if (x[p] != kUndefined) d |= Mask{1} << p;
      }
      require(mask_image(ground.full_mask() & ~d, n), "idempotent complements");
    }
  }
  return FiniteBIM(ground, std::move(imgs), std::move(generators));
}

std::vector<PartialBijection> FiniteBIM::elements() const {
  std::vector<PartialBijection> out;
  out.reserve(images_.size());
  for (const auto& img : images_) out.push_back(PartialBijection::from_image(ground_, img));
  return out;
}

std::optional<std::size_t> FiniteBIM::index_of(const PartialBijection& a) const {
  if (a.ground() != ground_) return std::nullopt;
  auto it = std::lower_bound(images_.begin(), images_.end(), a.image());
  if (it == images_.end() || *it != a.image()) return std::nullopt;
  return static_cast<std::size_t>(it - images_.begin());
}

bool FiniteBIM::contains(const PartialBijection& a) const { return index_of(a).has_value(); }

bool FiniteBIM::is_idempotent(const SubsetIdempotent& e) const noexcept {
  return e.ground() == ground_ && idempotent_flag_[e.mask()];
}

void FiniteBIM::require_idempotent(const SubsetIdempotent& e) const {
  if (!is_idempotent(e)) {
    fail(Errc::NotAnElement, to_string(e) + " is not an idempotent of the monoid");
  }
}

std::vector<std::size_t> FiniteBIM::atoms_below(const SubsetIdempotent& e) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if ((atoms_[i].mask() & ~e.mask()) == 0) out.push_back(i);
  }
  return out;
}

std::optional<std::size_t> FiniteBIM::atom_index(const SubsetIdempotent& a) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), a);
  if (it == atoms_.end() || *it != a) return std::nullopt;
  return static_cast<std::size_t>(it - atoms_.begin());
}

std::optional<PartialBijection> FiniteBIM::d_witness(Mask d, Mask r) const {
  auto it = witness_.find(witness_key(d, r));
  if (it == witness_.end()) return std::nullopt;
  return element(it->second);
}

std::optional<PartialBijection> d_related(const FiniteBIM& s, const SubsetIdempotent& e,
                                          const SubsetIdempotent& f) {
  check_ground(s, e);
  check_ground(s, f);
  s.require_idempotent(e);
  s.require_idempotent(f);
  return s.d_witness(e.mask(), f.mask());
}

bool j_leq(const FiniteBIM& s, const SubsetIdempotent& e, const SubsetIdempotent& f) {
  check_ground(s, e);
  check_ground(s, f);
  s.require_idempotent(e);
  s.require_idempotent(f);
  // Submasks of f, including f itself and 0.
  for (Mask sub = f.mask();; sub = (sub - 1) & f.mask()) {
    if (s.is_idempotent(SubsetIdempotent(s.ground(), sub)) && s.d_witness(e.mask(), sub)) {
      return true;
    }
    if (sub == 0) break;
  }
  return false;
}

bool check_d_eq_j(const FiniteBIM& s) {
  for (const auto& e : s.idempotents()) {
    for (const auto& f : s.idempotents()) {
      if (f.mask() <= e.mask()) continue;
      if (j_leq(s, e, f) && j_leq(s, f, e) && !s.d_witness(e.mask(), f.mask())) return false;
    }
  }
  return true;
}

std::optional<Pencil> preceq(const FiniteBIM& s, const SubsetIdempotent& e,
                             const SubsetIdempotent& f) {
  check_ground(s, e);
  check_ground(s, f);
  s.require_idempotent(e);
  s.require_idempotent(f);
  if (e.is_empty()) fail(Errc::ZeroIdempotent, "pencils start at a non-zero idempotent");

  // One witness per atom of e, landing on an atom under f.
  const auto targets = s.atoms_below(f);
  std::vector<PartialBijection> pieces;
  for (std::size_t a : s.atoms_below(e)) {
    std::optional<PartialBijection> found;
    for (std::size_t b : targets) {
      found = s.d_witness(s.atoms()[a].mask(), s.atoms()[b].mask());
      if (found) break;
    }
    if (!found) return std::nullopt;
    pieces.push_back(*found);
  }
  // Fold pieces with orthogonal ranges together; their joins stay in S.
  std::vector<PartialBijection> merged;
  for (const auto& p : pieces) {
    bool placed = false;
    for (auto& m : merged) {
      if (orthogonal(m, p)) {
        m = join(m, p);
        placed = true;
        break;
      }
    }
    if (!placed) merged.push_back(p);
  }
  return Pencil{e, std::move(merged), f};
}

void validate_pencil(const FiniteBIM& s, const Pencil& p) {
  Mask domains = 0;
  for (const auto& x : p.elements) {
    if (!s.contains(x)) fail(Errc::InvalidPencil, to_string(x) + " is not in the monoid");
    if ((x.range_mask() & ~p.bound.mask()) != 0) {
      fail(Errc::InvalidPencil, "range of " + to_string(x) + " not under " + to_string(p.bound));
    }
    domains |= x.domain_mask();
  }
  if (domains != p.target.mask()) {
    fail(Errc::InvalidPencil, "domains do not join to " + to_string(p.target));
  }
}

Pencil orthogonalize_pencil(const FiniteBIM& s, const Pencil& p) {
  validate_pencil(s, p);
  Pencil out{p.target, {}, p.bound};
  Mask covered = 0;
  for (const auto& x : p.elements) {
    const SubsetIdempotent fresh(s.ground(), x.domain_mask() & ~covered);
    PartialBijection piece = restrict_domain(x, fresh);
    covered |= x.domain_mask();
    if (!piece.is_zero()) out.elements.push_back(std::move(piece));
  }
  return out;
}

std::optional<Pencil> is_large(const FiniteBIM& s, const SubsetIdempotent& e) {
  s.require_idempotent(e);
  return preceq(s, s.one(), e);
}

bool is_zero_simplifying(const FiniteBIM& s) {
  for (const auto& e : s.idempotents()) {
    if (!e.is_empty() && !is_large(s, e)) return false;
  }
  return true;
}

std::vector<PartialBijection> vee_ideal(const FiniteBIM& s, const SubsetIdempotent& e) {
  s.require_idempotent(e);
  const int n = s.ground().size();
  const Image eimg = e.to_partial_identity().image();
  std::unordered_set<Image, ImageHash> set;
  std::vector<Image> left(s.size());
  std::vector<Image> both(s.size());
  // s e t over all s, t.
  kernels::compose_right(s.images(), eimg, left);
  std::sort(left.begin(), left.end());
  left.erase(std::unique(left.begin(), left.end()), left.end());
  for (const auto& se : left) {
    kernels::compose_left(se, s.images(), both);
    for (const auto& img : both) set.insert(img);
  }
  std::vector<Image> elems(set.begin(), set.end());
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (auto u = join_images(elems[i], elems[j], n); u && set.insert(*u).second) {
        elems.push_back(*u);
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  std::vector<PartialBijection> out;
  for (const auto& img : elems) out.push_back(PartialBijection::from_image(s.ground(), img));
  return out;
}

bool is_zero_simplifying_by_ideals(const FiniteBIM& s) {
  for (const auto& e : s.idempotents()) {
    if (!e.is_empty() && vee_ideal(s, e).size() != s.size()) return false;
  }
  return true;
}

SubsetIdempotent to_local(const SubsetIdempotent& e, const SubsetIdempotent& sub) {
  const auto members = e.members();
  Mask m = 0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (sub.contains(members[i])) m |= Mask{1} << i;
  }
  return {GroundSet(static_cast<int>(members.size())), m};
}

SubsetIdempotent from_local(const SubsetIdempotent& e, const SubsetIdempotent& local) {
  const auto members = e.members();
  Mask m = 0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (local.contains(static_cast<int>(i))) m |= Mask{1} << members[i];
  }
  return {e.ground(), m};
}

FiniteBIM local_monoid(const FiniteBIM& s, const SubsetIdempotent& e) {
  s.require_idempotent(e);
  if (e.is_empty()) fail(Errc::ZeroIdempotent, "local monoid at 0");
  const auto members = e.members();
  std::vector<int> position(static_cast<std::size_t>(s.ground().size()), -1);
  for (std::size_t i = 0; i < members.size(); ++i) position[members[i]] = static_cast<int>(i);
  const GroundSet local(static_cast<int>(members.size()));
  std::vector<PartialBijection> elems;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if ((s.domain_mask(i) & ~e.mask()) != 0 || (s.range_mask(i) & ~e.mask()) != 0) continue;
    std::vector<std::pair<int, int>> graph;
    for (auto [x, y] : s.element(i).graph()) graph.emplace_back(position[x], position[y]);
    elems.emplace_back(local, graph);
  }
  return FiniteBIM::from_elements(local, std::move(elems));
}

}  // namespace imean
