#include "imean/affine.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace imean {

namespace {

std::int64_t g_modulus_cap = kDefaultModulusCap;

void guard(std::int64_t modulus) {
  if (modulus <= 0 || modulus > g_modulus_cap) {
    fail(Errc::OverflowGuard,
         "modulus " + std::to_string(modulus) + " exceeds the cap " + std::to_string(g_modulus_cap));
  }
}

std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
  const __int128 l = static_cast<__int128>(a / std::gcd(a, b)) * b;
  if (l > g_modulus_cap) {
    fail(Errc::OverflowGuard, "lcm of " + std::to_string(a) + " and " + std::to_string(b) +
                                  " exceeds the cap " + std::to_string(g_modulus_cap));
  }
  return static_cast<std::int64_t>(l);
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  const __int128 p = static_cast<__int128>(a) * b;
  if (p > g_modulus_cap) {
    fail(Errc::OverflowGuard, "modulus " + std::to_string(a) + "·" + std::to_string(b) +
                                  " exceeds the cap " + std::to_string(g_modulus_cap));
  }
  return static_cast<std::int64_t>(p);
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> small, large;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

// Least c ≥ 0 with c ≡ a (mod m) and c ≡ b (mod n), with its modulus.
std::optional<std::pair<std::int64_t, std::int64_t>> crt(std::int64_t a, std::int64_t m,
                                                           std::int64_t b, std::int64_t n) {
  const std::int64_t g = std::gcd(m, n);
  if ((b - a) % g != 0) return std::nullopt;
  const std::int64_t l = checked_lcm(m, n);
  // Solve m·k ≡ b - a (mod n).
  __int128 old_r = m / g, r = n / g, old_s = 1, s = 0;
  while (r != 0) {
    const __int128 q = old_r / r;
    std::tie(old_r, r) = std::pair{r, old_r - q * r};
    std::tie(old_s, s) = std::pair{s, old_s - q * s};
  }
  const __int128 ng = n / g;
  __int128 k = (old_s % ng) * (((b - a) / g) % ng) % ng;
  if (k < 0) k += ng;
  __int128 c = (a + m * k) % l;
  if (c < 0) c += l;
  return std::pair{static_cast<std::int64_t>(c), l};
}

bool classes_meet(std::int64_t r1, std::int64_t m1, std::int64_t r2, std::int64_t m2) {
  return (r1 - r2) % std::gcd(m1, m2) == 0;
}

// Image class of the subclass ρ mod L of each piece's domain, L a multiple
// of every domain modulus.
struct Cell {
  std::int64_t mod = 0;
  std::int64_t res = 0;
  bool defined() const noexcept { return mod != 0; }
  friend bool operator==(const Cell&, const Cell&) = default;
};

std::vector<Cell> table(const std::vector<AffinePiece>& pieces, std::int64_t l) {
  std::vector<Cell> out(static_cast<std::size_t>(l));
  for (const auto& p : pieces) {
    const std::int64_t k = l / p.mod;
    const std::int64_t m = checked_mul(p.img_mod, k);
    for (std::int64_t j = 0; j < k; ++j) {
      out[static_cast<std::size_t>(p.res + p.mod * j)] = Cell{m, p.img_res + p.img_mod * j};
    }
  }
  return out;
}

// Whether the k subclasses ρ + d·j (j < k) form one increasing affine piece;
// on success returns the merged image class.
std::optional<Cell> mergeable(const std::vector<Cell>& tab, std::int64_t d, std::int64_t rho,
                              std::int64_t k, const std::vector<bool>* covered) {
  const Cell& first = tab[static_cast<std::size_t>(rho)];
  if (!first.defined() || first.mod % k != 0) return std::nullopt;
  const std::int64_t step = first.mod / k;
  if (first.res >= step) return std::nullopt;
  for (std::int64_t j = 0; j < k; ++j) {
    const auto idx = static_cast<std::size_t>(rho + d * j);
    if (covered != nullptr && (*covered)[idx]) return std::nullopt;
    const Cell& c = tab[idx];
    if (c.mod != first.mod || c.res != first.res + step * j) return std::nullopt;
  }
  return Cell{step, first.res};
}

std::int64_t domain_period(const std::vector<AffinePiece>& pieces) {
  std::int64_t l = 1;
  for (const auto& p : pieces) l = checked_lcm(l, p.mod);
  return l;
}

AffineMap canonical_or_self(std::vector<AffinePiece> pieces) {
  AffineMap m(std::move(pieces));
  return m.pieces().size() > 1 ? canonical(m) : m;
}

}  // namespace

std::int64_t modulus_cap() noexcept { return g_modulus_cap; }

void set_modulus_cap(std::int64_t cap) {
  if (cap < 1) fail(Errc::InvalidArgument, "modulus cap must be positive");
  g_modulus_cap = cap;
}

PeriodicSet::PeriodicSet(std::int64_t modulus, std::vector<std::int64_t> residues)
    : modulus_(modulus), residues_(std::move(residues)) {
  if (modulus_ <= 0) fail(Errc::InvalidArgument, "modulus must be positive");
  guard(modulus_);
  for (auto r : residues_) {
    if (r < 0 || r >= modulus_) {
      fail(Errc::InvalidArgument, "residue " + std::to_string(r) + " out of range");
    }
  }
  std::sort(residues_.begin(), residues_.end());
  residues_.erase(std::unique(residues_.begin(), residues_.end()), residues_.end());
  if (residues_.empty()) {
    modulus_ = 1;
    return;
  }
  for (auto p : prime_factors(modulus_)) {
    while (modulus_ % p == 0) {
      const std::int64_t coarse = modulus_ / p;
      std::vector<std::int64_t> kept;
      for (auto r : residues_) {
        if (r < coarse) kept.push_back(r);
      }
      if (kept.size() * static_cast<std::size_t>(p) != residues_.size()) break;
      bool periodic = true;
      for (auto r : residues_) {
        periodic = periodic && std::binary_search(kept.begin(), kept.end(), r % coarse);
      }
      if (!periodic) break;
      modulus_ = coarse;
      residues_ = std::move(kept);
    }
  }
}

PeriodicSet PeriodicSet::residue_class(std::int64_t modulus, std::int64_t residue) {
  return PeriodicSet(modulus, {residue});
}

bool PeriodicSet::contains(std::int64_t x) const {
  if (x < 0) return false;
  return std::binary_search(residues_.begin(), residues_.end(), x % modulus_);
}

std::vector<std::int64_t> PeriodicSet::residues_mod(std::int64_t multiple) const {
  if (multiple % modulus_ != 0) fail(Errc::InvalidArgument, "not a multiple of the modulus");
  std::vector<std::int64_t> out;
  out.reserve(residues_.size() * static_cast<std::size_t>(multiple / modulus_));
  for (std::int64_t j = 0; j < multiple / modulus_; ++j) {
    for (auto r : residues_) out.push_back(r + modulus_ * j);
  }
  std::sort(out.begin(), out.end());
  return out;
}

PeriodicSet meet(const PeriodicSet& a, const PeriodicSet& b) {
  const auto l = checked_lcm(a.modulus(), b.modulus());
  const auto x = a.residues_mod(l), y = b.residues_mod(l);
  std::vector<std::int64_t> out;
  std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return PeriodicSet(l, std::move(out));
}

PeriodicSet join(const PeriodicSet& a, const PeriodicSet& b) {
  const auto l = checked_lcm(a.modulus(), b.modulus());
  const auto x = a.residues_mod(l), y = b.residues_mod(l);
  std::vector<std::int64_t> out;
  std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return PeriodicSet(l, std::move(out));
}

PeriodicSet complement(const PeriodicSet& a) {
  std::vector<std::int64_t> out;
  for (std::int64_t r = 0; r < a.modulus(); ++r) {
    if (!std::binary_search(a.residues().begin(), a.residues().end(), r)) out.push_back(r);
  }
  return PeriodicSet(a.modulus(), std::move(out));
}

bool leq(const PeriodicSet& a, const PeriodicSet& b) { return meet(a, b) == a; }

bool orthogonal(const PeriodicSet& a, const PeriodicSet& b) { return meet(a, b).is_empty(); }

std::string to_string(const PeriodicSet& s) {
  if (s.is_empty()) return "∅";
  if (s.is_naturals()) return "ℕ";
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.residues().size(); ++i) {
    if (i != 0) os << ',';
    os << s.residues()[i];
  }
  os << "} mod " << s.modulus();
  return os.str();
}

AffinePiece AffinePiece::slope_offset(std::int64_t a, std::int64_t b, std::int64_t m,
                                      std::int64_t res) {
  if (a <= 0) fail(Errc::InvalidArgument, "slope must be positive");
  if (m <= 0 || res < 0 || res >= m) fail(Errc::InvalidArgument, "bad residue class");
  AffinePiece p{m, res, checked_mul(a, m), a * res + b};
  if (p.img_res < 0 || p.img_res >= p.img_mod) {
    fail(Errc::InvalidArgument, "image of " + std::to_string(a) + "x" + (b < 0 ? "" : "+") +
                                    std::to_string(b) + " on " + std::to_string(res) + " mod " +
                                    std::to_string(m) + " is not a full residue class");
  }
  return p;
}

std::optional<std::int64_t> AffinePiece::apply(std::int64_t x) const {
  if (x < 0 || x % mod != res) return std::nullopt;
  return img_res + img_mod * ((x - res) / mod);
}

void validate(const AffinePiece& p) {
  if (p.mod <= 0 || p.img_mod <= 0) fail(Errc::InvalidArgument, "moduli must be positive");
  guard(p.mod);
  guard(p.img_mod);
  if (p.res < 0 || p.res >= p.mod || p.img_res < 0 || p.img_res >= p.img_mod) {
    fail(Errc::InvalidArgument, "residue out of range");
  }
}

AffineMap::AffineMap(std::vector<AffinePiece> pieces) : pieces_(std::move(pieces)) {
  for (const auto& p : pieces_) validate(p);
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    for (std::size_t j = i + 1; j < pieces_.size(); ++j) {
      const auto& p = pieces_[i];
      const auto& q = pieces_[j];
      if (classes_meet(p.res, p.mod, q.res, q.mod)) {
        fail(Errc::InvalidArgument, "piece domains overlap");
      }
      if (classes_meet(p.img_res, p.img_mod, q.img_res, q.img_mod)) {
        fail(Errc::InvalidArgument, "piece images overlap");
      }
    }
  }
  std::sort(pieces_.begin(), pieces_.end());
}

AffineMap AffineMap::identity_on(const PeriodicSet& s) {
  std::vector<AffinePiece> pieces;
  for (auto r : s.residues()) pieces.push_back({s.modulus(), r, s.modulus(), r});
  return AffineMap(std::move(pieces));
}

AffineMap AffineMap::linear(std::int64_t a, std::int64_t b) {
  return AffineMap({AffinePiece::slope_offset(a, b, 1, 0)});
}

std::optional<std::int64_t> AffineMap::apply(std::int64_t x) const {
  for (const auto& p : pieces_) {
    if (auto y = p.apply(x)) return y;
  }
  return std::nullopt;
}

std::int64_t AffineMap::period() const { return domain_period(pieces_); }

bool operator==(const AffineMap& a, const AffineMap& b) {
  if (a.pieces_ == b.pieces_) return true;
  const auto l = checked_lcm(a.period(), b.period());
  return table(a.pieces_, l) == table(b.pieces_, l);
}

PeriodicSet domain(const AffineMap& a) {
  const auto l = a.period();
  std::vector<std::int64_t> residues;
  for (const auto& p : a.pieces()) {
    for (std::int64_t j = 0; j < l / p.mod; ++j) residues.push_back(p.res + p.mod * j);
  }
  return PeriodicSet(l, std::move(residues));
}

PeriodicSet range(const AffineMap& a) { return domain(inverse(a)); }

AffineMap canonical(const AffineMap& a) {
  if (a.is_zero()) return a;
  std::int64_t l = a.period();
  auto tab = table(a.pieces(), l);
  for (auto p : prime_factors(l)) {
    while (l % p == 0) {
      const std::int64_t coarse = l / p;
      std::vector<Cell> reduced(static_cast<std::size_t>(coarse));
      bool ok = true;
      for (std::int64_t rho = 0; rho < coarse && ok; ++rho) {
        bool any = false, all = true;
        for (std::int64_t j = 0; j < p; ++j) {
          const bool d = tab[static_cast<std::size_t>(rho + coarse * j)].defined();
          any = any || d;
          all = all && d;
        }
        if (!any) continue;
        auto merged = all ? mergeable(tab, coarse, rho, p, nullptr) : std::nullopt;
        if (!merged) {
          ok = false;
        } else {
          reduced[static_cast<std::size_t>(rho)] = *merged;
        }
      }
      if (!ok) break;
      l = coarse;
      tab = std::move(reduced);
    }
  }
  std::vector<bool> covered(static_cast<std::size_t>(l), false);
  std::vector<AffinePiece> pieces;
  for (auto d : divisors(l)) {
    const std::int64_t k = l / d;
    for (std::int64_t rho = 0; rho < d; ++rho) {
      auto merged = mergeable(tab, d, rho, k, &covered);
      if (!merged) continue;
      pieces.push_back({d, rho, merged->mod, merged->res});
      for (std::int64_t j = 0; j < k; ++j) covered[static_cast<std::size_t>(rho + d * j)] = true;
    }
  }
  return AffineMap(std::move(pieces));
}

AffineMap compose(const AffineMap& a, const AffineMap& b) {
  std::vector<AffinePiece> out;
  for (const auto& p : b.pieces()) {
    for (const auto& q : a.pieces()) {
      auto c = crt(p.img_res, p.img_mod, q.res, q.mod);
      if (!c) continue;
      const auto [y, l] = *c;
      const std::int64_t t0 = (y - p.img_res) / p.img_mod;
      const std::int64_t u0 = (y - q.res) / q.mod;
      out.push_back({checked_mul(p.mod, l / p.img_mod), p.res + p.mod * t0,
                     checked_mul(q.img_mod, l / q.mod), q.img_res + q.img_mod * u0});
    }
  }
  return canonical_or_self(std::move(out));
}

AffineMap inverse(const AffineMap& a) {
  std::vector<AffinePiece> out;
  for (const auto& p : a.pieces()) out.push_back({p.img_mod, p.img_res, p.mod, p.res});
  return AffineMap(std::move(out));
}

AffineMap restrict_domain(const AffineMap& a, const PeriodicSet& s) {
  std::vector<AffinePiece> out;
  for (const auto& p : a.pieces()) {
    const auto l = checked_lcm(p.mod, s.modulus());
    const std::int64_t k = l / p.mod;
    const auto m = checked_mul(p.img_mod, k);
    for (std::int64_t j = 0; j < k; ++j) {
      if (s.contains(p.res + p.mod * j)) out.push_back({l, p.res + p.mod * j, m, p.img_res + p.img_mod * j});
    }
  }
  return canonical_or_self(std::move(out));
}

AffineMap restrict_range(const AffineMap& a, const PeriodicSet& s) {
  return inverse(restrict_domain(inverse(a), s));
}

AffineMap pow(const AffineMap& a, unsigned k) {
  AffineMap out = AffineMap::identity();
  for (unsigned i = 0; i < k; ++i) out = compose(a, out);
  return out;
}

PeriodicSet image(const AffineMap& a, const PeriodicSet& s) { return range(restrict_domain(a, s)); }

bool orthogonal(const AffineMap& a, const AffineMap& b) {
  return orthogonal(domain(a), domain(b)) && orthogonal(range(a), range(b));
}

bool compatible(const AffineMap& a, const AffineMap& b) {
  const auto d = meet(domain(a), domain(b));
  const auto r = meet(range(a), range(b));
  return restrict_domain(a, d) == restrict_domain(b, d) &&
         restrict_range(a, r) == restrict_range(b, r);
}

bool natural_leq(const AffineMap& a, const AffineMap& b) {
  return restrict_domain(b, domain(a)) == a;
}

AffineMap join(const AffineMap& a, const AffineMap& b) {
  if (!orthogonal(a, b)) fail(Errc::NotOrthogonal, "affine maps are not orthogonal");
  auto pieces = a.pieces();
  pieces.insert(pieces.end(), b.pieces().begin(), b.pieces().end());
  return canonical_or_self(std::move(pieces));
}

AffineMap join(const std::vector<AffineMap>& maps) {
  AffineMap out;
  for (const auto& m : maps) out = join(out, m);
  return out;
}

std::string to_string(const AffineMap& a) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  const auto c = canonical(a);
  for (std::size_t i = 0; i < c.pieces().size(); ++i) {
    const auto& p = c.pieces()[i];
    if (i != 0) os << " ∨ ";
    if (p.integral_slope()) {
      os << "[n≡" << p.res << " mod " << p.mod << "] n↦" << p.slope() << "n";
      if (p.offset() != 0) os << (p.offset() > 0 ? "+" : "") << p.offset();
    } else {
      os << "[" << p.res << "+" << p.mod << "t ↦ " << p.img_res << "+" << p.img_mod << "t]";
    }
  }
  return os.str();
}

}  // namespace imean
