#include "imean/paradox.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace imean {

namespace {

struct Word {
  std::vector<std::size_t> letters;
  AffineMap map;
};

}  // namespace

std::string_view to_string(ParadoxKind kind) noexcept {
  return kind == ParadoxKind::weak ? "weak" : "strong";
}

bool is_strong_pair(const AffineMap& a, const AffineMap& b) {
  return domain(a).is_naturals() && domain(b).is_naturals() && orthogonal(range(a), range(b)) &&
         join(range(a), range(b)).is_naturals();
}

bool verify(const ParadoxCertificate& cert) {
  if (!domain(cert.a).is_naturals() || !domain(cert.b).is_naturals()) return false;
  if (!orthogonal(range(cert.a), range(cert.b))) return false;
  return cert.kind == ParadoxKind::weak || join(range(cert.a), range(cert.b)).is_naturals();
}

std::optional<ParadoxCertificate> detect_weak(const std::vector<AffineMap>& generators,
                                              unsigned max_word) {
  std::vector<Word> total;
  std::vector<Word> frontier{{{}, AffineMap::identity()}};
  for (unsigned len = 1; len <= max_word && !generators.empty(); ++len) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      for (std::size_t g = 0; g < generators.size(); ++g) {
        Word longer{w.letters, compose(w.map, generators[g])};
        longer.letters.push_back(g);
        if (longer.map.is_zero()) continue;
        if (domain(longer.map).is_naturals()) total.push_back(longer);
        next.push_back(std::move(longer));
      }
    }
    frontier = std::move(next);
  }
  std::vector<PeriodicSet> ranges;
  ranges.reserve(total.size());
  for (const auto& w : total) ranges.push_back(range(w.map));
  for (std::size_t i = 0; i < total.size(); ++i) {
    for (std::size_t j = i + 1; j < total.size(); ++j) {
      if (!orthogonal(ranges[i], ranges[j])) continue;
      ParadoxCertificate cert{ParadoxKind::weak, total[i].map, total[j].map, total[i].letters,
                              total[j].letters};
      if (!verify(cert)) fail(Errc::InternalInvariantViolation, "certificate failed to re-verify");
      return cert;
    }
  }
  return std::nullopt;
}

Amplification bike_amplify(const AffineMap& a, const std::vector<AffineMap>& pencil) {
  if (!domain(a).is_naturals()) fail(Errc::BadPencil, "d(a) is not ℕ");
  if (pencil.empty()) fail(Errc::BadPencil, "empty pencil");
  const PeriodicSet f = complement(range(a));
  PeriodicSet covered = PeriodicSet::empty();
  for (std::size_t i = 0; i < pencil.size(); ++i) {
    const auto d = domain(pencil[i]);
    if (!orthogonal(covered, d)) {
      fail(Errc::BadPencil, "domain of pencil element " + std::to_string(i + 1) + " overlaps");
    }
    covered = join(covered, d);
    if (!leq(range(pencil[i]), f)) {
      fail(Errc::BadPencil, "range of pencil element " + std::to_string(i + 1) +
                                " is not under the complement of r(a)");
    }
  }
  if (!covered.is_naturals()) fail(Errc::BadPencil, "pencil domains do not cover ℕ");

  const auto m = static_cast<unsigned>(pencil.size());
  Amplification out;
  out.f = f;
  AffineMap power = AffineMap::identity();
  std::vector<AffineMap> parts;
  for (unsigned i = 0; i <= m; ++i) {
    out.family.push_back(image(power, f));
    if (i == m) break;
    parts.push_back(compose(power, pencil[i]));
    power = compose(a, power);
  }
  for (std::size_t i = 0; i < out.family.size(); ++i) {
    for (std::size_t j = i + 1; j < out.family.size(); ++j) {
      if (!orthogonal(out.family[i], out.family[j])) {
        fail(Errc::InternalInvariantViolation, "the family a^i f a^-i is not orthogonal");
      }
    }
  }
  out.certificate = ParadoxCertificate{ParadoxKind::weak, power, join(parts), {}, {}};
  if (!domain(out.certificate.b).is_naturals() ||
      !orthogonal(range(out.certificate.b), range(out.certificate.a)) ||
      !verify(out.certificate)) {
    fail(Errc::InternalInvariantViolation, "amplified certificate failed to re-verify");
  }
  return out;
}

ParadoxCertificate arden_upgrade(const ParadoxCertificate& cert, const AffineMap& c) {
  if (!verify(cert)) fail(Errc::BadWitness, "input certificate does not verify");
  if (!domain(c).is_naturals()) fail(Errc::BadWitness, "d(c) is not ℕ");
  if (range(c) != complement(range(cert.a))) {
    fail(Errc::BadWitness, "r(c) is not the complement of r(a)");
  }
  ParadoxCertificate out{ParadoxKind::strong, cert.a, c, cert.a_word, {}};
  if (!verify(out)) fail(Errc::InternalInvariantViolation, "upgraded certificate failed to re-verify");
  return out;
}

std::string_view to_string(KLetter letter) noexcept {
  switch (letter) {
    case KLetter::alpha: return "alpha";
    case KLetter::alpha_inv: return "alpha^-1";
    case KLetter::phi: return "phi";
    case KLetter::phi_inv: return "phi^-1";
    case KLetter::psi: return "psi";
    case KLetter::psi_inv: return "psi^-1";
  }
  return "?";
}

namespace {

void validate_input(const KuratowskiInput& in) {
  const GroundSet g = in.ground;
  if (in.m.ground() != g || in.p.ground() != g || in.phi.ground() != g || in.psi.ground() != g ||
      in.alpha.ground() != g) {
    fail(Errc::PartitionMismatch, "E and E' must have the same size");
  }
  if (in.alpha.domain_mask() != g.full_mask() || in.alpha.range_mask() != g.full_mask()) {
    fail(Errc::NotBijective, "alpha is not a bijection E → E'");
  }
  if (in.phi.domain_mask() != in.m.mask() || in.phi.range_mask() != complement(in.m).mask()) {
    fail(Errc::NotBijective, "phi is not a bijection M → N");
  }
  if (in.psi.domain_mask() != in.p.mask() || in.psi.range_mask() != complement(in.p).mask()) {
    fail(Errc::NotBijective, "psi is not a bijection P → Q");
  }
}

PartialBijection letter_map(const KuratowskiInput& in, KLetter l) {
  switch (l) {
    case KLetter::alpha: return in.alpha;
    case KLetter::alpha_inv: return inverse(in.alpha);
    case KLetter::phi: return in.phi;
    case KLetter::phi_inv: return inverse(in.phi);
    case KLetter::psi: return in.psi;
    case KLetter::psi_inv: return inverse(in.psi);
  }
  fail(Errc::InvalidArgument, "unknown letter");
}

}  // namespace

PartialBijection evaluate_word(const KuratowskiInput& in, const std::vector<KLetter>& word) {
  PartialBijection out = PartialBijection::identity(in.ground);
  for (auto l : word) out = compose(out, letter_map(in, l));
  return out;
}

KuratowskiResult kuratowski_bijection(const KuratowskiInput& in) {
  validate_input(in);
  const auto alpha_inv = inverse(in.alpha);
  const auto phi_inv = inverse(in.phi);
  const auto psi_inv = inverse(in.psi);
  const int n = in.ground.size();
  std::vector<bool> visited(static_cast<std::size_t>(n), false);
  std::vector<std::pair<int, int>> graph;
  std::map<std::vector<KLetter>, Mask> groups;

  // Each cycle of E-pairs and E'-pairs linked by α has two perfect
  // matchings: α applied to u_k, or to its partner v_k. Take the one with
  // more sources already in M, so fewer words need φ.
  auto emit = [&](int z) {
    const int x = *in.alpha.apply(z);
    const bool x_in_p = in.p.contains(x);
    const bool z_in_m = in.m.contains(z);
    const int source = z_in_m ? z : *phi_inv.apply(z);
    std::vector<KLetter> word;
    if (x_in_p) word.push_back(KLetter::psi);
    word.push_back(KLetter::alpha);
    if (!z_in_m) word.push_back(KLetter::phi);
    graph.emplace_back(source, x_in_p ? *in.psi.apply(x) : x);
    groups[word] |= Mask{1} << source;
  };
  for (int start : in.m.members()) {
    std::vector<int> us;
    std::vector<int> vs;
    int u = start;
    while (!visited[static_cast<std::size_t>(u)]) {
      const int v = in.m.contains(u) ? *in.phi.apply(u) : *phi_inv.apply(u);
      visited[static_cast<std::size_t>(u)] = visited[static_cast<std::size_t>(v)] = true;
      us.push_back(u);
      vs.push_back(v);
      const int w = *in.alpha.apply(v);
      const int w2 = in.p.contains(w) ? *in.psi.apply(w) : *psi_inv.apply(w);
      u = *alpha_inv.apply(w2);
    }
    auto in_m = [&](const std::vector<int>& zs) {
      return std::count_if(zs.begin(), zs.end(), [&](int z) { return in.m.contains(z); });
    };
    for (int z : in_m(us) >= in_m(vs) ? us : vs) emit(z);
  }

  KuratowskiResult out{PartialBijection(in.ground, graph), {}};
  for (const auto& [word, mask] : groups) {
    SubsetIdempotent dom(in.ground, mask);
    out.pieces.push_back({word, dom, restrict_domain(out.bijection, dom)});
  }
  if (!verify(in, out)) fail(Errc::InternalInvariantViolation, "Kuratowski construction failed");
  return out;
}

bool verify(const KuratowskiInput& in, const KuratowskiResult& out) {
  if (out.bijection.domain_mask() != in.m.mask() ||
      out.bijection.range_mask() != complement(in.p).mask()) {
    return false;
  }
  PartialBijection joined = PartialBijection::zero(in.ground);
  for (const auto& piece : out.pieces) {
    if (!orthogonal(joined, piece.map)) return false;
    if (piece.map.domain_mask() != piece.domain.mask()) return false;
    if (restrict_domain(evaluate_word(in, piece.word), piece.domain) != piece.map) return false;
    joined = join(joined, piece.map);
  }
  return joined == out.bijection;
}

bool check_kuratowski_property(const FiniteBIM& s) {
  const auto& idem = s.idempotents();
  std::vector<std::size_t> cls(idem.size());
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < idem.size(); ++i) {
    std::size_t c = 0;
    while (c < reps.size() && !d_related(s, idem[reps[c]], idem[i])) ++c;
    if (c == reps.size()) reps.push_back(i);
    cls[i] = c;
  }
  std::unordered_map<Mask, std::size_t> index;
  for (std::size_t i = 0; i < idem.size(); ++i) index.emplace(idem[i].mask(), i);

  struct Pair {
    std::size_t first, second, joined;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < idem.size(); ++i) {
    for (std::size_t j = 0; j < idem.size(); ++j) {
      if ((idem[i].mask() & idem[j].mask()) != 0 || cls[i] != cls[j]) continue;
      pairs.push_back({i, j, index.at(idem[i].mask() | idem[j].mask())});
    }
  }
  for (const auto& e : pairs) {
    for (const auto& f : pairs) {
      if (cls[e.joined] == cls[f.joined] && cls[e.first] != cls[f.second]) return false;
    }
  }
  return true;
}

}  // namespace imean
