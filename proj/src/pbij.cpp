#include "imean/pbij.hpp"

#include <algorithm>
#include <sstream>

namespace imean {

namespace {

void require_same_ground(GroundSet a, GroundSet b) {
  if (a != b) {
    fail(Errc::GroundMismatch,
         "ground sizes " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
  }
}

Image undefined_image() {
  Image img;
  img.fill(kUndefined);
  return img;
}

}  // namespace

GroundSet::GroundSet(int size) : size_(size) {
  if (size < 1) fail(Errc::InvalidArgument, "ground set must be non-empty");
  if (size > kMaxGround) {
    fail(Errc::GroundTooLarge, "ground size " + std::to_string(size) + " exceeds " +
                                   std::to_string(kMaxGround));
  }
}

PartialBijection::PartialBijection(GroundSet ground, std::span<const std::pair<int, int>> graph)
    : ground_(ground), img_(undefined_image()) {
  const int n = ground.size();
  Mask targets = 0;
  for (auto [s, t] : graph) {
    if (s < 0 || s >= n || t < 0 || t >= n) {
      fail(Errc::InvalidArgument, "pair (" + std::to_string(s) + "," + std::to_string(t) +
                                      ") outside ground of size " + std::to_string(n));
    }
    if (img_[s] != kUndefined) fail(Errc::InvalidArgument, "repeated source " + std::to_string(s));
    if ((targets >> t) & 1u) fail(Errc::InvalidArgument, "repeated target " + std::to_string(t));
    img_[s] = static_cast<std::uint8_t>(t);
    targets |= Mask{1} << t;
  }
}

PartialBijection PartialBijection::zero(GroundSet ground) noexcept {
  return PartialBijection(ground, undefined_image());
}

PartialBijection PartialBijection::identity(GroundSet ground) noexcept {
  Image img = undefined_image();
  for (int x = 0; x < ground.size(); ++x) img[x] = static_cast<std::uint8_t>(x);
  return PartialBijection(ground, img);
}

std::vector<std::pair<int, int>> PartialBijection::graph() const {
  std::vector<std::pair<int, int>> out;
  for (int x = 0; x < ground_.size(); ++x) {
    if (img_[x] != kUndefined) out.emplace_back(x, img_[x]);
  }
  return out;
}

Mask PartialBijection::domain_mask() const noexcept {
  Mask m = 0;
  for (int x = 0; x < ground_.size(); ++x) {
    if (img_[x] != kUndefined) m |= Mask{1} << x;
  }
  return m;
}

Mask PartialBijection::range_mask() const noexcept {
  Mask m = 0;
  for (int x = 0; x < ground_.size(); ++x) {
    if (img_[x] != kUndefined) m |= Mask{1} << img_[x];
  }
  return m;
}

bool PartialBijection::is_idempotent() const noexcept {
  for (int x = 0; x < ground_.size(); ++x) {
    if (img_[x] != kUndefined && img_[x] != x) return false;
  }
  return true;
}

SubsetIdempotent::SubsetIdempotent(GroundSet ground, Mask members)
    : ground_(ground), mask_(members) {
  if ((members & ~ground.full_mask()) != 0) {
    fail(Errc::InvalidArgument, "subset has members outside the ground set");
  }
}

SubsetIdempotent::SubsetIdempotent(GroundSet ground, std::span<const int> members)
    : ground_(ground), mask_(0) {
  for (int x : members) {
    if (x < 0 || x >= ground.size()) {
      fail(Errc::InvalidArgument, "member " + std::to_string(x) + " outside the ground set");
    }
    mask_ |= Mask{1} << x;
  }
}

SubsetIdempotent SubsetIdempotent::from_partial_identity(const PartialBijection& a) {
  if (!a.is_idempotent()) fail(Errc::InvalidArgument, to_string(a) + " is not idempotent");
  return {a.ground(), a.domain_mask()};
}

std::vector<int> SubsetIdempotent::members() const {
  std::vector<int> out;
  for (int x = 0; x < ground_.size(); ++x) {
    if (contains(x)) out.push_back(x);
  }
  return out;
}

PartialBijection SubsetIdempotent::to_partial_identity() const {
  Image img = undefined_image();
  for (int x = 0; x < ground_.size(); ++x) {
    if (contains(x)) img[x] = static_cast<std::uint8_t>(x);
  }
  return PartialBijection::from_image(ground_, img);
}

PartialBijection compose(const PartialBijection& a, const PartialBijection& b) {
  require_same_ground(a.ground(), b.ground());
  Image img = undefined_image();
  const Image& ai = a.image();
  const Image& bi = b.image();
  for (int x = 0; x < a.ground().size(); ++x) {
    if (bi[x] != kUndefined) img[x] = ai[bi[x]];
  }
  return PartialBijection::from_image(a.ground(), img);
}

PartialBijection compose(std::initializer_list<PartialBijection> chain) {
  if (chain.size() == 0) fail(Errc::InvalidArgument, "empty composition chain");
  auto it = chain.begin();
  PartialBijection acc = *it;
  for (++it; it != chain.end(); ++it) acc = compose(acc, *it);
  return acc;
}

PartialBijection inverse(const PartialBijection& a) noexcept {
  Image img = undefined_image();
  const Image& ai = a.image();
  for (int x = 0; x < a.ground().size(); ++x) {
    if (ai[x] != kUndefined) img[ai[x]] = static_cast<std::uint8_t>(x);
  }
  return PartialBijection::from_image(a.ground(), img);
}

SubsetIdempotent domain(const PartialBijection& a) { return {a.ground(), a.domain_mask()}; }
SubsetIdempotent range(const PartialBijection& a) { return {a.ground(), a.range_mask()}; }

bool natural_leq(const PartialBijection& a, const PartialBijection& b) {
  require_same_ground(a.ground(), b.ground());
  for (int x = 0; x < a.ground().size(); ++x) {
    if (a.image()[x] != kUndefined && a.image()[x] != b.image()[x]) return false;
  }
  return true;
}

bool compatible(const PartialBijection& a, const PartialBijection& b) {
  require_same_ground(a.ground(), b.ground());
  const Image& ai = a.image();
  const Image& bi = b.image();
  for (int x = 0; x < a.ground().size(); ++x) {
    if (ai[x] != kUndefined && bi[x] != kUndefined && ai[x] != bi[x]) return false;
  }
  // Same target from different sources breaks injectivity of the union.
  const PartialBijection ainv = inverse(a);
  const PartialBijection binv = inverse(b);
  for (int y = 0; y < a.ground().size(); ++y) {
    const auto s = ainv.image()[y];
    const auto t = binv.image()[y];
    if (s != kUndefined && t != kUndefined && s != t) return false;
  }
  return true;
}

bool orthogonal(const PartialBijection& a, const PartialBijection& b) {
  require_same_ground(a.ground(), b.ground());
  return (a.domain_mask() & b.domain_mask()) == 0 && (a.range_mask() & b.range_mask()) == 0;
}

PartialBijection join(const PartialBijection& a, const PartialBijection& b) {
  if (!compatible(a, b)) fail(Errc::NotCompatible, to_string(a) + " and " + to_string(b));
  Image img = a.image();
  for (int x = 0; x < a.ground().size(); ++x) {
    if (img[x] == kUndefined) img[x] = b.image()[x];
  }
  return PartialBijection::from_image(a.ground(), img);
}

PartialBijection restrict_domain(const PartialBijection& a, const SubsetIdempotent& e) {
  require_same_ground(a.ground(), e.ground());
  Image img = a.image();
  for (int x = 0; x < a.ground().size(); ++x) {
    if (!e.contains(x)) img[x] = kUndefined;
  }
  return PartialBijection::from_image(a.ground(), img);
}

PartialBijection restrict_range(const PartialBijection& a, const SubsetIdempotent& e) {
  require_same_ground(a.ground(), e.ground());
  Image img = a.image();
  for (int x = 0; x < a.ground().size(); ++x) {
    if (img[x] != kUndefined && !e.contains(img[x])) img[x] = kUndefined;
  }
  return PartialBijection::from_image(a.ground(), img);
}

SubsetIdempotent meet(const SubsetIdempotent& e, const SubsetIdempotent& f) {
  require_same_ground(e.ground(), f.ground());
  return {e.ground(), e.mask() & f.mask()};
}

SubsetIdempotent join(const SubsetIdempotent& e, const SubsetIdempotent& f) {
  require_same_ground(e.ground(), f.ground());
  return {e.ground(), e.mask() | f.mask()};
}

SubsetIdempotent complement(const SubsetIdempotent& e) {
  return {e.ground(), e.ground().full_mask() & ~e.mask()};
}

bool leq(const SubsetIdempotent& e, const SubsetIdempotent& f) {
  require_same_ground(e.ground(), f.ground());
  return (e.mask() & ~f.mask()) == 0;
}

std::string to_string(const PartialBijection& a) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (auto [s, t] : a.graph()) {
    if (!first) os << ',';
    os << '(' << s << ',' << t << ')';
    first = false;
  }
  os << "}/" << a.ground().size();
  return os.str();
}

std::string to_string(const SubsetIdempotent& e) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (int x : e.members()) {
    if (!first) os << ',';
    os << x;
    first = false;
  }
  os << "}/" << e.ground().size();
  return os.str();
}

std::size_t ImageHash::operator()(const Image& img) const noexcept {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  for (int i = 0; i < 8; ++i) {
    lo |= std::uint64_t{img[i]} << (8 * i);
    hi |= std::uint64_t{img[8 + i]} << (8 * i);
  }
  std::uint64_t h = lo * 0x9E3779B97F4A7C15ull;
  h ^= hi + 0x7F4A7C159E3779B9ull + (h << 6) + (h >> 2);
  h *= 0xBF58476D1CE4E5B9ull;
  return static_cast<std::size_t>(h ^ (h >> 31));
}

std::size_t PartialBijectionHash::operator()(const PartialBijection& a) const noexcept {
  // FNV-1a over the table and the ground size.
  std::uint64_t h = 1469598103934665603ull ^ static_cast<std::uint64_t>(a.ground().size());
  for (auto byte : a.image()) {
    h ^= byte;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace imean
