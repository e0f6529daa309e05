#include "imean/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "imean/json_io.hpp"

namespace imean::cli {

namespace {

namespace jio = imean::json;
using nlohmann::json;

json read_json(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    text = os.str();
  } else {
    std::ifstream in(path);
    if (!in) fail(Errc::MalformedInput, "cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    text = os.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(Errc::MalformedInput, path + ": " + e.what());
  }
}

json parse_inline(const std::string& text, const char* flag) {
  try {
    return json::parse(text);
  } catch (const json::parse_error&) {
    fail(Errc::MalformedInput, std::string(flag) + " is not valid JSON");
  }
}

void render_text(const json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      render_text(value, prefix.empty() ? key : prefix + "." + key, out);
    }
  } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const json& e) { return e.is_object(); })) {
    for (std::size_t i = 0; i < j.size(); ++i) render_text(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

FiniteBIM load_monoid(const std::string& path, std::optional<std::size_t> cap) {
  auto spec = jio::monoid_spec_from_json(read_json(path));
  if (cap) spec.cap = *cap;
  return spec.build();
}

json solve_report(const FiniteBIM& s, std::size_t vertex_cap) {
  auto sol = solve(s, vertex_cap);
  auto out = jio::to_json(sol);
  if (sol.witness) {
    out["faithful"] = is_faithful(s, *sol.witness);
    out["axioms"] = check_axioms(s, *sol.witness).passed;
  }
  return out;
}

// Uniformly weighted random convex combination of the vertices.
MeanVector random_mean(const MeanSolution& sol, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> weight(1, 1000);
  RationalVector acc(sol.vertices.front().class_values.size(), Rational(0));
  Rational total(0);
  for (const auto& v : sol.vertices) {
    Rational w(weight(rng));
    total += w;
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w * v.class_values[i];
  }
  for (auto& q : acc) q /= total;
  return MeanVector{acc};
}

json check_report(const FiniteBIM& s, std::uint64_t seed, std::size_t vertex_cap) {
  json out;
  out["monoid"] = jio::summary(s);
  auto sol = solve(s, vertex_cap);
  out["status"] = std::string(to_string(sol.status));
  bool ok = true;
  if (sol.witness) {
    const bool faithful = is_faithful(s, *sol.witness);
    const auto axioms = check_axioms(s, *sol.witness);
    const auto sample = random_mean(sol, seed);
    const auto sample_axioms = check_axioms(s, sample);
    out["witness_axioms"] = axioms.passed;
    out["sampled_mean"] = jio::to_json(sample);
    out["sampled_axioms"] = sample_axioms.passed;
    out["faithful_witness"] = faithful;
    const bool d_eq_j = check_d_eq_j(s);
    out["d_equals_j"] = d_eq_j;
    ok = ok && axioms.passed && sample_axioms.passed && (!faithful || d_eq_j);
    if (!axioms.passed) out["violation"] = axioms.violation;
    if (!sample_axioms.passed) out["sampled_violation"] = sample_axioms.violation;
  }
  out["zero_simplifying"] = is_zero_simplifying(s);
  out["kuratowski_property"] = check_kuratowski_property(s);
  out["piecewise_factorizable"] = is_piecewise_factorizable(s);
  out["seed"] = seed;
  out["ok"] = ok;
  return out;
}

json decision_json(Decision d) { return std::string(to_string(d)); }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Invariant means on Boolean inverse monoids", "imean"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string format = "json";
  std::uint64_t seed = 20240531;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", seed, "Seed for randomized checks");

  std::string input, input2, base;
  std::optional<std::size_t> cap;
  std::size_t vertex_cap = kDefaultVertexCap;
  std::size_t depth = 0, bound = kDefaultSearchBound, n_max = 10;
  unsigned max_word = 1;
  std::string x_text, y_text, top_text;
  std::function<json()> action;

  auto monoid_input = [&](CLI::App* sub) {
    sub->add_option("spec", input, "Monoid spec JSON")->required();
    sub->add_option("--cap", cap, "Closure cap");
  };

  auto* monoid = app.add_subcommand("monoid", "Close a monoid and summarize it");
  monoid_input(monoid);
  monoid->callback([&] { action = [&] { return jio::summary(load_monoid(input, cap)); }; });

  auto* solve_cmd = app.add_subcommand("solve", "Solve for invariant means");
  monoid_input(solve_cmd);
  solve_cmd->add_option("--vertex-cap", vertex_cap, "Maximum vertices to enumerate");
  solve_cmd->callback([&] { action = [&] { return solve_report(load_monoid(input, cap), vertex_cap); }; });

  auto* type = app.add_subcommand("type", "Type monoid presentations");
  type->require_subcommand(1, 1);
  auto* type_present = type->add_subcommand("present", "Atom-class presentation");
  monoid_input(type_present);
  type_present->callback([&] { action = [&] { return jio::to_json(present(load_monoid(input, cap))); }; });
  auto* type_leq = type->add_subcommand("leq", "Decide x ≤ y");
  monoid_input(type_leq);
  type_leq->add_option("--x", x_text, "Coefficients of x")->required();
  type_leq->add_option("--y", y_text, "Coefficients of y")->required();
  type_leq->add_option("--bound", bound, "Rewriting degree bound");
  type_leq->callback([&] {
    action = [&] {
      auto p = present(load_monoid(input, cap));
      auto x = jio::type_element_from_json(parse_inline(x_text, "--x"));
      auto y = jio::type_element_from_json(parse_inline(y_text, "--y"));
      return json{{"leq", decision_json(leq(p, x, y, bound))},
                  {"equal", decision_json(equivalent(p, x, y, bound))},
                  {"bound", bound}};
    };
  });
  auto* type_obs = type->add_subcommand("obstruction", "Search for (n+1)u ≤ nu");
  monoid_input(type_obs);
  type_obs->add_option("--n-max", n_max, "Largest n to test");
  type_obs->add_option("--bound", bound, "Rewriting degree bound");
  type_obs->callback([&] {
    action = [&] {
      auto r = tarski_obstruction(present(load_monoid(input, cap)), n_max, bound);
      return json{{"n", r.n ? json(*r.n) : json(nullptr)},
                  {"tested_up_to", r.tested_up_to},
                  {"inconclusive", r.inconclusive}};
    };
  });

  auto* rook = app.add_subcommand("rook", "Rook matrices");
  rook->require_subcommand(1, 1);
  auto* rook_mul = rook->add_subcommand("mul", "Product AB");
  rook_mul->add_option("a", input, "Matrix A")->required();
  rook_mul->add_option("b", input2, "Matrix B")->required();
  rook_mul->callback([&] {
    action = [&] {
      auto a = jio::rook_from_json(read_json(input));
      auto b = jio::rook_from_json(read_json(input2));
      if (!validate(a) || !validate(b)) fail(Errc::InvalidArgument, "operand is not a rook matrix");
      return jio::to_json(product(a, b));
    };
  });
  auto* rook_star = rook->add_subcommand("star", "Transpose-inverse A*");
  rook_star->add_option("a", input, "Matrix A")->required();
  rook_star->callback([&] { action = [&] { return jio::to_json(star(jio::rook_from_json(read_json(input)))); }; });
  auto* rook_validate = rook->add_subcommand("validate", "Check RM1 and RM2");
  rook_validate->add_option("a", input, "Matrix A")->required();
  rook_validate->add_option("--base", base, "Monoid spec the entries must belong to");
  rook_validate->callback([&] {
    action = [&] {
      auto a = jio::rook_from_json(read_json(input));
      bool valid = base.empty() ? validate(a) : validate(a, load_monoid(base, cap));
      return json{{"valid", valid}};
    };
  });
  auto* rook_tarski = rook->add_subcommand("tarski", "Exhaustive degree-1 Tarski search");
  monoid_input(rook_tarski);
  rook_tarski->callback([&] {
    action = [&] {
      auto s = load_monoid(input, cap);
      auto m = find_tarski_degree1(s.elements());
      return json{{"found", m.has_value()},
                  {"matrix", m ? jio::to_json(*m) : json(nullptr)},
                  {"searched", s.size()}};
    };
  });

  auto* tower = app.add_subcommand("tower", "AF towers");
  tower->require_subcommand(1, 1);
  auto* tower_validate = tower->add_subcommand("validate", "Check a tower");
  tower_validate->add_option("tower", input, "Tower JSON")->required();
  tower_validate->callback([&] {
    action = [&] {
      auto r = check_tower(jio::tower_from_json(read_json(input)));
      json out{{"valid", r.valid}};
      if (!r.valid) {
        out["error"] = std::string(to_string(*r.code));
        out["level"] = r.level;
        out["column"] = r.column;
        out["message"] = r.message;
      }
      return out;
    };
  });
  auto* tower_mean_cmd = tower->add_subcommand("mean", "Pull a top-level mean down");
  tower_mean_cmd->add_option("tower", input, "Tower JSON")->required();
  tower_mean_cmd->add_option("--depth", depth, "Top level")->required();
  tower_mean_cmd->add_option("--top", top_text, "Mean vector at the top level")->required();
  tower_mean_cmd->callback([&] {
    action = [&] {
      auto t = jio::tower_from_json(read_json(input));
      auto top = jio::rational_vector_from_json(parse_inline(top_text, "--top"));
      return jio::to_json(tower_mean(t, depth, top));
    };
  });
  auto* tower_uhf = tower->add_subcommand("uhf", "Unique mean of a UHF tower");
  tower_uhf->add_option("tower", input, "Tower JSON")->required();
  tower_uhf->add_option("--depth", depth, "Depth")->required();
  tower_uhf->callback([&] {
    action = [&] {
      auto mu = uhf_unique_mean(jio::tower_from_json(read_json(input)), depth);
      json values = json::array();
      for (const auto& x : mu.levels) values.push_back(jio::to_json(x.front()));
      return json{{"values", values}, {"faithful", true}};
    };
  });

  auto* paradox = app.add_subcommand("paradox", "Paradoxicality in the affine monoid");
  paradox->require_subcommand(1, 1);
  auto* detect = paradox->add_subcommand("detect", "Bounded search for a weak certificate");
  detect->add_option("generators", input, "Generators JSON")->required();
  detect->add_option("--max-word", max_word, "Longest word")->check(CLI::PositiveNumber);
  detect->callback([&] {
    action = [&] {
      auto gens = jio::affine_list_from_json(read_json(input));
      auto cert = detect_weak(gens, max_word);
      if (!cert) {
        return json{{"found", false}, {"max_word", max_word}, {"message", "not found ≤ max_word"}};
      }
      return json{{"found", true},
                  {"max_word", max_word},
                  {"certificate", jio::to_json(*cert)},
                  {"also_strong", is_strong_pair(cert->a, cert->b)}};
    };
  });
  auto* amplify = paradox->add_subcommand("amplify", "Amplify a large complement");
  amplify->add_option("input", input, "{\"a\": map, \"pencil\": [maps]}")->required();
  amplify->callback([&] {
    action = [&] {
      auto j = read_json(input);
      if (!j.is_object() || !j.contains("a") || !j.contains("pencil")) {
        fail(Errc::MalformedInput, "expected {\"a\": map, \"pencil\": [maps]}");
      }
      auto r = bike_amplify(jio::affine_from_json(j["a"]), jio::affine_list_from_json(j["pencil"]));
      json family = json::array();
      for (const auto& f : r.family) family.push_back(jio::to_json(f));
      return json{{"certificate", jio::to_json(r.certificate)},
                  {"f", jio::to_json(r.f)},
                  {"family", family},
                  {"verified", verify(r.certificate)}};
    };
  });
  auto* upgrade = paradox->add_subcommand("upgrade", "Upgrade weak to strong with a witness");
  upgrade->add_option("input", input, "{\"certificate\": cert, \"witness\": map}")->required();
  upgrade->callback([&] {
    action = [&] {
      auto j = read_json(input);
      if (!j.is_object() || !j.contains("certificate") || !j.contains("witness")) {
        fail(Errc::MalformedInput, "expected {\"certificate\": cert, \"witness\": map}");
      }
      auto c = arden_upgrade(jio::certificate_from_json(j["certificate"]),
                             jio::affine_from_json(j["witness"]));
      return json{{"certificate", jio::to_json(c)}, {"verified", verify(c)}};
    };
  });
  auto* kura = paradox->add_subcommand("kuratowski", "Back-and-forth bijection M → Q");
  kura->add_option("input", input, "Kuratowski instance JSON")->required();
  kura->callback([&] {
    action = [&] {
      auto in = jio::kuratowski_from_json(read_json(input));
      auto r = kuratowski_bijection(in);
      auto out = jio::to_json(r);
      out["verified"] = verify(in, r);
      return out;
    };
  });

  auto* check = app.add_subcommand("check", "Structural checks on a monoid");
  monoid_input(check);
  check->add_option("--vertex-cap", vertex_cap, "Maximum vertices to enumerate");
  check->callback([&] { action = [&] { return check_report(load_monoid(input, cap), seed, vertex_cap); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    const json result = action();
    if (format == "text") {
      render_text(result, "", out);
    } else {
      out << result.dump(2) << '\n';
    }
    return kExitOk;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return e.code() == Errc::MalformedInput ? kExitUsage : kExitDomain;
  } catch (const json::exception& e) {
    err << "MalformedInput: " << e.what() << '\n';
    return kExitUsage;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace imean::cli
