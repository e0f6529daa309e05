#include "imean/json_io.hpp"

#include <algorithm>

namespace imean::json {

namespace {

[[noreturn]] void malformed(const std::string& what) { fail(Errc::MalformedInput, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object()) malformed(std::string("expected an object with \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) malformed(std::string("missing field \"") + key + "\"");
  return *it;
}

std::int64_t as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) malformed(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

std::size_t as_index(const json& j, const char* what) {
  auto v = as_int(j, what);
  if (v < 0) malformed(std::string(what) + " must be non-negative");
  return static_cast<std::size_t>(v);
}

const json& as_array(const json& j, const char* what) {
  if (!j.is_array()) malformed(std::string(what) + " must be an array");
  return j;
}

std::vector<std::pair<int, int>> graph_from_json(const json& j) {
  std::vector<std::pair<int, int>> graph;
  for (const auto& e : as_array(j, "graph")) {
    if (!e.is_array() || e.size() != 2) malformed("graph entries must be [source, target]");
    graph.emplace_back(static_cast<int>(as_int(e[0], "source")), static_cast<int>(as_int(e[1], "target")));
  }
  return graph;
}

std::vector<int> members_from_json(const json& j) {
  std::vector<int> out;
  for (const auto& e : as_array(j, "members")) out.push_back(static_cast<int>(as_int(e, "member")));
  return out;
}

GroundSet ground_from_json(const json& j) {
  auto n = as_int(j, "ground");
  if (n < 1) malformed("ground must be positive");
  if (n > kMaxGround) fail(Errc::GroundTooLarge, "ground " + std::to_string(n) + " exceeds 16");
  return GroundSet(static_cast<int>(n));
}

json graph_to_json(const PartialBijection& a) {
  json g = json::array();
  for (auto [s, t] : a.graph()) g.push_back({s, t});
  return g;
}

json members_to_json(const SubsetIdempotent& e) { return e.members(); }

json dim_to_json(Dim d) { return d.is_omega() ? json("omega") : json(d.value()); }

Dim dim_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() != "omega") malformed("dimension must be an integer or \"omega\"");
    return Dim::omega();
  }
  return Dim::finite(as_index(j, "dimension"));
}

IntVector int_vector_from_json(const json& j, const char* what) {
  IntVector out;
  for (const auto& e : as_array(j, what)) out.push_back(as_int(e, what));
  return out;
}

}  // namespace

json to_json(const PartialBijection& a) {
  return {{"ground", a.ground().size()}, {"graph", graph_to_json(a)}};
}

PartialBijection pbij_from_json(const json& j) {
  return PartialBijection(ground_from_json(field(j, "ground")), graph_from_json(field(j, "graph")));
}

PartialBijection pbij_from_json(const json& j, GroundSet ground) {
  if (j.is_array()) return PartialBijection(ground, graph_from_json(j));
  auto a = pbij_from_json(j);
  if (a.ground() != ground) fail(Errc::GroundMismatch, "element has a different ground");
  return a;
}

json to_json(const SubsetIdempotent& e) {
  return {{"ground", e.ground().size()}, {"members", members_to_json(e)}};
}

SubsetIdempotent subset_from_json(const json& j) {
  const auto members = members_from_json(field(j, "members"));
  return SubsetIdempotent(ground_from_json(field(j, "ground")), std::span<const int>(members));
}

SubsetIdempotent subset_from_json(const json& j, GroundSet ground) {
  if (j.is_array()) {
    const auto members = members_from_json(j);
    return SubsetIdempotent(ground, std::span<const int>(members));
  }
  auto e = subset_from_json(j);
  if (e.ground() != ground) fail(Errc::GroundMismatch, "subset has a different ground");
  return e;
}

json to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
  if (!j.is_string()) malformed("rationals are \"p/q\" strings");
  return parse_rational(j.get<std::string>());
}

json to_json(const RationalVector& v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(to_json(q));
  return out;
}

RationalVector rational_vector_from_json(const json& j) {
  RationalVector out;
  for (const auto& e : as_array(j, "rational vector")) out.push_back(rational_from_json(e));
  return out;
}

FiniteBIM MonoidSpec::build() const {
  if (semisimple) return FiniteBIM::semisimple(*semisimple);
  return FiniteBIM::close(ground, generators, cap);
}

MonoidSpec monoid_spec_from_json(const json& j) {
  MonoidSpec spec;
  if (j.is_object() && j.contains("semisimple")) {
    SemisimpleSpec s;
    for (const auto& n : as_array(j["semisimple"], "semisimple")) {
      s.block_sizes.push_back(static_cast<int>(as_int(n, "block size")));
    }
    s.validate();
    spec.semisimple = s;
    spec.ground = GroundSet(s.total());
    return spec;
  }
  spec.ground = ground_from_json(field(j, "ground"));
  for (const auto& g : as_array(field(j, "generators"), "generators")) {
    spec.generators.push_back(pbij_from_json(g, spec.ground));
  }
  if (j.contains("cap")) spec.cap = as_index(j["cap"], "cap");
  return spec;
}

json to_json(const MonoidSpec& spec) {
  if (spec.semisimple) return {{"semisimple", spec.semisimple->block_sizes}};
  json gens = json::array();
  for (const auto& g : spec.generators) gens.push_back(to_json(g));
  return {{"ground", spec.ground.size()}, {"generators", gens}, {"cap", spec.cap}};
}

json summary(const FiniteBIM& s) {
  json atoms = json::array();
  json classes = json::array();
  for (std::size_t a = 0; a < s.atoms().size(); ++a) {
    atoms.push_back(members_to_json(s.atoms()[a]));
    classes.push_back(s.class_of_atom(a));
  }
  return {{"ground", s.ground().size()},
          {"size", s.size()},
          {"idempotents", s.idempotents().size()},
          {"atoms", atoms},
          {"atom_classes", classes},
          {"class_sizes", s.class_sizes()}};
}

json to_json(const MeanVector& mu) {
  json out = json::object();
  for (std::size_t i = 0; i < mu.class_values.size(); ++i) {
    out["g" + std::to_string(i)] = to_json(mu.class_values[i]);
  }
  return out;
}

MeanVector mean_vector_from_json(const json& j) {
  if (j.is_array()) return MeanVector{rational_vector_from_json(j)};
  if (!j.is_object()) malformed("mean must be an object {\"g0\": \"p/q\", ...}");
  MeanVector mu;
  mu.class_values.resize(j.size());
  std::vector<bool> seen(j.size(), false);
  for (const auto& [key, value] : j.items()) {
    std::size_t idx = 0;
    if (key.size() < 2 || key[0] != 'g' ||
        !std::all_of(key.begin() + 1, key.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      malformed("mean keys must be g0, g1, ...");
    }
    idx = std::stoul(key.substr(1));
    if (idx >= seen.size() || seen[idx]) malformed("mean keys must be g0..g(k-1)");
    seen[idx] = true;
    mu.class_values[idx] = rational_from_json(value);
  }
  return mu;
}

json to_json(const MeanSolution& sol) {
  json vertices = json::array();
  for (const auto& v : sol.vertices) vertices.push_back(to_json(v));
  json lhs = json::array();
  for (const auto& row : sol.constraints.lhs) lhs.push_back(to_json(row));
  return {{"status", std::string(to_string(sol.status))},
          {"witness", sol.witness ? to_json(*sol.witness) : json(nullptr)},
          {"vertices", vertices},
          {"dim", sol.dimension},
          {"truncated", sol.truncated},
          {"constraints",
           {{"variables", sol.constraints.variables},
            {"lhs", lhs},
            {"rhs", to_json(sol.constraints.rhs)}}}};
}

MeanSolution mean_solution_from_json(const json& j) {
  MeanSolution sol;
  const auto& status = field(j, "status");
  if (status == "unique") {
    sol.status = MeanStatus::unique;
  } else if (status == "polytope") {
    sol.status = MeanStatus::polytope;
  } else if (status == "infeasible") {
    sol.status = MeanStatus::infeasible;
  } else {
    malformed("status must be unique, polytope or infeasible");
  }
  if (j.contains("witness") && !j["witness"].is_null()) sol.witness = mean_vector_from_json(j["witness"]);
  for (const auto& v : as_array(field(j, "vertices"), "vertices")) sol.vertices.push_back(mean_vector_from_json(v));
  sol.dimension = as_index(field(j, "dim"), "dim");
  const auto& truncated = field(j, "truncated");
  if (!truncated.is_boolean()) malformed("truncated must be a boolean");
  sol.truncated = truncated.get<bool>();
  const auto& c = field(j, "constraints");
  for (const auto& v : as_array(field(c, "variables"), "variables")) {
    if (!v.is_string()) malformed("variables must be strings");
    sol.constraints.variables.push_back(v.get<std::string>());
  }
  for (const auto& row : as_array(field(c, "lhs"), "lhs")) sol.constraints.lhs.push_back(rational_vector_from_json(row));
  sol.constraints.rhs = rational_vector_from_json(field(c, "rhs"));
  return sol;
}

json to_json(const RookMatrix<PartialBijection>& a) {
  json entries = json::array();
  for (const auto& [cell, e] : a.entries()) entries.push_back({cell.first, cell.second, to_json(e)});
  return {{"rows", dim_to_json(a.rows())}, {"cols", dim_to_json(a.cols())}, {"entries", entries}};
}

RookMatrix<PartialBijection> rook_from_json(const json& j) {
  std::vector<RookMatrix<PartialBijection>::Entry> entries;
  std::optional<GroundSet> ground;
  if (j.contains("ground")) ground = ground_from_json(j["ground"]);
  for (const auto& e : as_array(field(j, "entries"), "entries")) {
    if (!e.is_array() || e.size() != 3) malformed("rook entries must be [i, j, element]");
    auto x = ground ? pbij_from_json(e[2], *ground) : pbij_from_json(e[2]);
    if (!ground) ground = x.ground();
    if (x.ground() != *ground) fail(Errc::GroundMismatch, "rook entries on different grounds");
    entries.emplace_back(as_index(e[0], "row"), as_index(e[1], "column"), x);
  }
  return RookMatrix<PartialBijection>(dim_from_json(field(j, "rows")), dim_from_json(field(j, "cols")),
                                      std::move(entries));
}

json to_json(const AFTower& t) { return {{"levels", t.levels}, {"maps", t.maps}}; }

AFTower tower_from_json(const json& j) {
  AFTower t;
  for (const auto& level : as_array(field(j, "levels"), "levels")) {
    t.levels.push_back(int_vector_from_json(level, "level"));
  }
  for (const auto& m : as_array(field(j, "maps"), "maps")) {
    IntMatrix rows;
    for (const auto& row : as_array(m, "map")) rows.push_back(int_vector_from_json(row, "map row"));
    t.maps.push_back(std::move(rows));
  }
  return t;
}

json to_json(const TowerMean& mu) {
  json levels = json::array();
  for (const auto& x : mu.levels) levels.push_back(to_json(x));
  return {{"levels", levels}};
}

TowerMean tower_mean_from_json(const json& j) {
  TowerMean mu;
  for (const auto& x : as_array(field(j, "levels"), "levels")) mu.levels.push_back(rational_vector_from_json(x));
  return mu;
}

json to_json(const TypeElement& x) { return x; }

TypeElement type_element_from_json(const json& j) {
  TypeElement out;
  for (const auto& e : as_array(j, "type element")) out.push_back(as_index(e, "coefficient"));
  return out;
}

json to_json(const TypePresentation& p) {
  json relations = json::array();
  for (const auto& r : p.relations) relations.push_back({r.lhs, r.rhs});
  return {{"generators", p.generators}, {"relations", relations}, {"unit", p.unit}};
}

TypePresentation type_presentation_from_json(const json& j) {
  TypePresentation p;
  for (const auto& g : as_array(field(j, "generators"), "generators")) {
    if (!g.is_string()) malformed("generator names must be strings");
    p.generators.push_back(g.get<std::string>());
  }
  p.unit = type_element_from_json(field(j, "unit"));
  for (const auto& r : as_array(field(j, "relations"), "relations")) {
    if (!r.is_array() || r.size() != 2) malformed("relations must be [lhs, rhs] pairs");
    p.add_relation({type_element_from_json(r[0]), type_element_from_json(r[1])});
  }
  if (p.unit.size() != p.rank()) malformed("unit has the wrong number of coefficients");
  return p;
}

json to_json(const PeriodicSet& s) { return {{"mod", s.modulus()}, {"residues", s.residues()}}; }

PeriodicSet periodic_set_from_json(const json& j) {
  return PeriodicSet(as_int(field(j, "mod"), "mod"), int_vector_from_json(field(j, "residues"), "residues"));
}

json to_json(const AffinePiece& p) {
  if (p.integral_slope()) {
    return {{"a", p.slope()}, {"b", p.offset()}, {"mod", p.mod}, {"res", p.res}};
  }
  return {{"mod", p.mod}, {"res", p.res}, {"img_mod", p.img_mod}, {"img_res", p.img_res}};
}

AffinePiece affine_piece_from_json(const json& j) {
  const auto mod = as_int(field(j, "mod"), "mod");
  const auto res = as_int(field(j, "res"), "res");
  if (j.contains("a")) {
    return AffinePiece::slope_offset(as_int(j["a"], "a"), as_int(field(j, "b"), "b"), mod, res);
  }
  AffinePiece p{mod, res, as_int(field(j, "img_mod"), "img_mod"), as_int(field(j, "img_res"), "img_res")};
  validate(p);
  return p;
}

json to_json(const AffineMap& a) {
  json pieces = json::array();
  const auto c = canonical(a);
  for (const auto& p : c.pieces()) pieces.push_back(to_json(p));
  return {{"pieces", pieces}};
}

AffineMap affine_from_json(const json& j) {
  std::vector<AffinePiece> pieces;
  for (const auto& p : as_array(field(j, "pieces"), "pieces")) pieces.push_back(affine_piece_from_json(p));
  return AffineMap(std::move(pieces));
}

std::vector<AffineMap> affine_list_from_json(const json& j) {
  const json& list = j.is_object() ? field(j, "generators") : j;
  std::vector<AffineMap> out;
  for (const auto& m : as_array(list, "generators")) out.push_back(affine_from_json(m));
  return out;
}

json to_json(const ParadoxCertificate& c) {
  return {{"kind", std::string(to_string(c.kind))},
          {"a", to_json(c.a)},
          {"b", to_json(c.b)},
          {"a_word", c.a_word},
          {"b_word", c.b_word}};
}

ParadoxCertificate certificate_from_json(const json& j) {
  ParadoxCertificate c;
  const auto& kind = field(j, "kind");
  if (kind == "weak") {
    c.kind = ParadoxKind::weak;
  } else if (kind == "strong") {
    c.kind = ParadoxKind::strong;
  } else {
    malformed("kind must be \"weak\" or \"strong\"");
  }
  c.a = affine_from_json(field(j, "a"));
  c.b = affine_from_json(field(j, "b"));
  auto word = [&](const char* key) {
    std::vector<std::size_t> w;
    if (j.contains(key)) {
      for (const auto& e : as_array(j[key], key)) w.push_back(as_index(e, key));
    }
    return w;
  };
  c.a_word = word("a_word");
  c.b_word = word("b_word");
  return c;
}

json to_json(const KuratowskiInput& in) {
  return {{"ground", in.ground.size()},     {"M", members_to_json(in.m)},
          {"phi", graph_to_json(in.phi)},   {"P", members_to_json(in.p)},
          {"psi", graph_to_json(in.psi)},   {"alpha", graph_to_json(in.alpha)}};
}

KuratowskiInput kuratowski_from_json(const json& j) {
  const GroundSet g = ground_from_json(field(j, "ground"));
  return KuratowskiInput{g,
                         subset_from_json(field(j, "M"), g),
                         pbij_from_json(field(j, "phi"), g),
                         subset_from_json(field(j, "P"), g),
                         pbij_from_json(field(j, "psi"), g),
                         pbij_from_json(field(j, "alpha"), g)};
}

json to_json(const KuratowskiResult& r) {
  json pieces = json::array();
  for (const auto& p : r.pieces) {
    json word = json::array();
    for (auto l : p.word) word.push_back(std::string(to_string(l)));
    pieces.push_back({{"word", word}, {"domain", members_to_json(p.domain)}, {"graph", graph_to_json(p.map)}});
  }
  return {{"bijection", graph_to_json(r.bijection)}, {"pieces", pieces}};
}

KuratowskiResult kuratowski_result_from_json(const json& j, GroundSet ground) {
  KuratowskiResult r{pbij_from_json(field(j, "bijection"), ground), {}};
  for (const auto& p : as_array(field(j, "pieces"), "pieces")) {
    std::vector<KLetter> word;
    for (const auto& l : as_array(field(p, "word"), "word")) {
      static constexpr KLetter kLetters[] = {KLetter::alpha, KLetter::alpha_inv, KLetter::phi,
                                             KLetter::phi_inv, KLetter::psi,   KLetter::psi_inv};
      const auto it = std::find_if(std::begin(kLetters), std::end(kLetters),
                                   [&](KLetter k) { return l.is_string() && l.get<std::string>() == to_string(k); });
      if (it == std::end(kLetters)) malformed("unknown letter " + l.dump());
      word.push_back(*it);
    }
    r.pieces.push_back({std::move(word), subset_from_json(field(p, "domain"), ground),
                        pbij_from_json(field(p, "graph"), ground)});
  }
  return r;
}

}  // namespace imean::json
