// conicquot: command-line front end. Every result is a JSON record on stdout
// (or --out); errors go to stderr. Exit codes: 0 success, 2 invalid input,
// 1 internal error or a failed acceptance criterion.

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>

#include "conicquot/acceptance.hpp"
#include "conicquot/records.hpp"

using namespace conicquot;

namespace {

struct GroupOpts {
  std::string group;
  std::string kind;
  int param = 0;
  std::string field;
  int conductor = 0;
};

void add_group_opts(CLI::App* sub, GroupOpts& g) {
  sub->add_option("--group", g.group, "group label: C5, D6, A4, S4, A5");
  sub->add_option("--kind", g.kind, "C, D, A4, S4 or A5")->check(CLI::IsMember({"C", "D", "A4", "S4", "A5"}));
  sub->add_option("--param", g.param, "C: order; D: half the order (D --param 3 is D_6)");
  sub->add_option("--field", g.field, "named base field, e.g. Q, Q(i), Q(i*sqrt2), Q(cos2pi/5)");
  sub->add_option("--conductor", g.conductor, "ambient cyclotomic conductor");
}

GroupType resolve_type(const GroupOpts& g) {
  if (!g.group.empty()) return parse_group_type(g.group);
  if (g.kind.empty()) throw Error(ErrorKind::parse_error, "--group or --kind is required");
  if (g.kind == "A4") return {GroupKind::A4, 0};
  if (g.kind == "S4") return {GroupKind::S4, 0};
  if (g.kind == "A5") return {GroupKind::A5, 0};
  if (g.param < 1) throw Error(ErrorKind::parse_error, "--param must be positive for kind " + g.kind);
  return {g.kind == "C" ? GroupKind::cyclic : GroupKind::dihedral, g.param};
}

FieldSpec resolve_field(const GroupOpts& g, const GroupType& t) {
  if (g.field.empty()) {
    const FieldSpec k = standard_field(t);
    return g.conductor ? k.embed(g.conductor) : k;
  }
  const int n = g.conductor ? g.conductor
                            : std::lcm(standard_conductor(t), FieldSpec::named(g.field).conductor());
  return FieldSpec::named(g.field, n);
}

struct Context {
  GroupType type;
  FieldSpec field;
  FiniteGroup group;
};

Context resolve(const GroupOpts& g) {
  Context c;
  c.type = resolve_type(g);
  c.field = resolve_field(g, c.type);
  c.group = generate_group(standard_generators(c.type, c.field));
  return c;
}

Json group_header(const Context& c) {
  return Json{{"group", c.type.label()}, {"order", c.group.order()}, {"field", to_json(c.field)}};
}

std::vector<CycloNum> parse_numbers(const std::vector<std::string>& items, int conductor) {
  std::vector<CycloNum> out;
  for (const auto& s : items) out.push_back(CycloNum::rational(conductor, parse_rational(s)));
  return out;
}

Json with_error(const Error& e) { return Json{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}}; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite group actions on P^1, conic bundle quotients and their rationality"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_path;
  int jobs = 1;
  bool verbose = false;
  app.add_option("--out", out_path, "write the report to this file instead of stdout");
  app.add_option("--jobs", jobs, "worker threads for scans")->check(CLI::PositiveNumber);
  app.add_flag("-v,--verbose", verbose, "print every sub-check in the reproduce summary");

  std::function<Json()> action;
  int action_exit = 0;

  // ----------------------------------------------------------------- group
  GroupOpts gopts;
  auto* group = app.add_subcommand("group", "finite subgroups of PGL_2")->require_subcommand(1);
  auto* g_info = group->add_subcommand("info", "order, generators and element orders");
  auto* g_orbits = group->add_subcommand("orbits", "orbits with nontrivial stabilizer");
  auto* g_fixed = group->add_subcommand("fixed-points", "fixed points of every element");
  auto* g_def = group->add_subcommand("definability", "fixed points over k against roots of unity in k");
  for (auto* s : {g_info, g_orbits, g_fixed, g_def}) add_group_opts(s, gopts);

  g_info->callback([&] {
    action = [&] {
      const Context c = resolve(gopts);
      Json j = group_header(c);
      Json gens = Json::array();
      for (int i : c.group.generator_indices()) gens.push_back(to_json(c.group.elements()[static_cast<std::size_t>(i)]));
      std::map<int, int> hist;
      for (int o : c.group.element_orders()) ++hist[o];
      Json h = Json::object();
      for (const auto& [o, n] : hist) h[std::to_string(o)] = n;
      j["classified_as"] = classify_group(c.group).label();
      j["generators"] = gens;
      j["element_orders"] = h;
      return j;
    };
  });
  g_orbits->callback([&] {
    action = [&] {
      const Context c = resolve(gopts);
      Json j = group_header(c);
      Json orbits = Json::array();
      for (const auto& o : special_orbits(c.group)) {
        Json pts = Json::array();
        for (const auto& p : o.points) pts.push_back(to_json(p));
        orbits.push_back(Json{{"length", o.points.size()}, {"stabilizer_order", o.stabilizer_order}, {"points", pts}});
      }
      j["orbit_lengths"] = special_orbit_table(c.group);
      j["orbits"] = orbits;
      return j;
    };
  });
  g_fixed->callback([&] {
    action = [&] {
      const Context c = resolve(gopts);
      Json j = group_header(c);
      Json rows = Json::array();
      for (std::size_t i = 0; i < c.group.elements().size(); ++i) {
        const auto& x = c.group.elements()[i];
        Json row{{"element", to_json(x)}, {"order", c.group.element_orders()[i]}};
        try {
          const FixedPoints fp = fixed_points(x);
          if (fp.all) {
            row["fixed_points"] = "all";
          } else {
            Json pts = Json::array();
            for (const auto& p : fp.points) pts.push_back(to_json(p));
            row["fixed_points"] = pts;
            row["defined_over_k"] = fixed_points_defined_over(x, c.field);
          }
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::needs_larger_field) throw;
          row["fixed_points"] = nullptr;
          row["defined_over_k"] = false;
        }
        rows.push_back(row);
      }
      j["elements"] = rows;
      return j;
    };
  });
  g_def->callback([&] {
    action = [&] {
      const Context c = resolve(gopts);
      Json j = group_header(c);
      Json rows = Json::array();
      int disagreements = 0;
      for (std::size_t i = 0; i < c.group.elements().size(); ++i) {
        const int m = c.group.element_orders()[i];
        if (m <= 2) continue;
        const bool fixed = fixed_points_defined_over(c.group.elements()[i], c.field);
        const bool root = contains_root_of_unity(c.field, m);
        if (fixed != root) ++disagreements;
        rows.push_back(Json{{"element", to_json(c.group.elements()[i])},
                            {"order", m},
                            {"fixed_points_defined", fixed},
                            {"root_of_unity_in_field", root}});
      }
      j["elements"] = rows;
      j["disagreements"] = disagreements;
      return j;
    };
  });

  // ----------------------------------------------------------------- chain
  auto* chain = app.add_subcommand("chain", "continued fractions and fibre chains")->require_subcommand(1);
  long ck = 0, ca = 0;
  auto* c_expand = chain->add_subcommand("expand", "k/a as a continued fraction and the smooth-fibre chain");
  c_expand->add_option("--k", ck, "denominator of the singularity type")->required();
  c_expand->add_option("--a", ca, "weight")->required();
  c_expand->callback([&] {
    action = [&] {
      Json j{{"hj", to_json(hj_expand(ck, ca))}};
      j["smooth_fibre_chain"] = to_json(smooth_fibre_chain(ck, ca));
      return j;
    };
  });
  std::string chain_text;
  std::optional<std::uint64_t> seed;
  auto* c_contract = chain->add_subcommand("contract", "run the contraction and report the fate");
  c_contract->add_option("--chain", chain_text, "self-intersections, e.g. \"-3,-1,-3;swap\"")->required();
  c_contract->add_option("--seed", seed, "random admissible order instead of the deterministic one");
  c_contract->callback([&] {
    action = [&] {
      const FibreChain ch = parse_chain(chain_text);
      const FibreFate f = seed ? contract_chain_random(ch, *seed) : contract_chain(ch);
      return Json{{"chain", to_json(ch)}, {"result", to_json(f)}};
    };
  });

  // ----------------------------------------------------------------- quotient
  auto* quotient = app.add_subcommand("quotient", "fibre counts of quotients")->require_subcommand(1);
  std::string model_file;
  auto* q_count = quotient->add_subcommand("count", "m, K_Y^2, fates and the rationality verdict for a model");
  q_count->add_option("--model", model_file, "model record (- for stdin)")->required();
  q_count->callback([&] {
    action = [&] {
      const SurfaceModel m = model_from_json(read_json(model_file));
      const auto violations = validate_model(m);
      if (!violations.empty()) {
        Json v = Json::array();
        for (const auto& x : violations) v.push_back(to_json(x));
        action_exit = 2;
        return Json{{"error", "InvalidModel"}, {"violations", v}};
      }
      return to_json(quotient_count(m));
    };
  });
  GroupOpts topts;
  Table1Counts counts;
  auto* q_table = quotient->add_subcommand("table1", "closed forms of one table row");
  q_table->add_option("--group", topts.group, "group label");
  q_table->add_option("--kind", topts.kind, "C, D, A4, S4 or A5")->check(CLI::IsMember({"C", "D", "A4", "S4", "A5"}));
  q_table->add_option("--param", topts.param, "C: order; D: half the order");
  q_table->add_option("--a", counts.a);
  q_table->add_option("--b", counts.b);
  q_table->add_option("--c", counts.c);
  q_table->add_option("--d", counts.d);
  q_table->callback([&] {
    action = [&] {
      const GroupType t = resolve_type(topts);
      const Table1Value v = table1_bound(t, counts);
      return Json{{"group", t.label()}, {"counts", to_json(counts)}, {"n", v.n}, {"m", v.m}};
    };
  });
  int k_max = 10, n_max = 12;
  auto* q_scan = quotient->add_subcommand("scan-theorem", "check the bounds on every admissible table instance");
  q_scan->add_option("--k-max", k_max, "largest cyclic/dihedral parameter")->check(CLI::Range(2, 60));
  q_scan->add_option("--n-max", n_max, "largest n")->check(CLI::Range(0, 200));
  q_scan->callback([&] {
    action = [&] {
      Json j = to_json(check_theorem_cbundle(k_max, n_max, jobs));
      j["k_max"] = k_max;
      j["n_max"] = n_max;
      return j;
    };
  });

  // ----------------------------------------------------------------- example
  auto* example = app.add_subcommand("example", "explicit conic bundle models")->require_subcommand(1);
  std::string ex_field = "Q", ex_u = "2", ex_q;
  int ex_conductor = 0, ex_l = 2;
  std::vector<std::string> ex_mus;
  auto add_base = [&](CLI::App* s) {
    s->add_option("--field", ex_field, "named base field");
    s->add_option("--conductor", ex_conductor, "ambient conductor");
    s->add_option("--u", ex_u, "radicand, a rational \"p/q\"");
    s->add_option("--l", ex_l, "order of g = diag(xi_l, 1); even")->check(CLI::PositiveNumber);
  };
  auto base_field = [&] {
    const FieldSpec k = FieldSpec::named(ex_field);
    const int n = ex_conductor ? ex_conductor : std::lcm(k.conductor(), std::lcm(4, ex_l));
    return FieldSpec::named(ex_field, n);
  };
  auto* e_build = example->add_subcommand("build", "model over k for G = C_l and the given mus");
  add_base(e_build);
  e_build->add_option("--mus", ex_mus, "comma-separated rationals")->delimiter(',')->required();
  e_build->add_option("--q", ex_q, "the fibre over (q : 1) gets a k-point; default 1");
  e_build->callback([&] {
    action = [&] {
      const FieldSpec k = base_field();
      std::optional<P1Point> q;
      if (!ex_q.empty()) q = P1Point::affine(k.from_rational(parse_rational(ex_q)));
      return to_json(build_example(
          cyclic_example_spec(k, ex_l, k.from_rational(parse_rational(ex_u)), parse_numbers(ex_mus, k.conductor()), q)));
    };
  });
  auto* e_verify = example->add_subcommand("verify", "recheck the hypotheses and verdicts of a built model");
  e_verify->add_option("--model", model_file, "model record (- for stdin)")->required();
  e_verify->callback([&] {
    action = [&] {
      const ExampleVerification v = verify_example(model_from_json(read_json(model_file)));
      if (!v.ok()) action_exit = 2;
      return to_json(v);
    };
  });
  int fam_count = 6, fam_n = 8, fam_bound = 60;
  std::uint64_t fam_seed = 1;
  auto* e_family = example->add_subcommand("family", "members with distinct random mu-tuples");
  add_base(e_family);
  e_family->add_option("--count", fam_count, "number of members")->check(CLI::PositiveNumber);
  e_family->add_option("--n", fam_n, "mus per member")->check(CLI::PositiveNumber);
  e_family->add_option("--bound", fam_bound, "mus are drawn from 1..bound")->check(CLI::PositiveNumber);
  e_family->add_option("--seed", fam_seed, "sampler seed");
  e_family->callback([&] {
    action = [&] {
      const FieldSpec k = base_field();
      const auto base = cyclic_example_spec(k, ex_l, k.from_rational(parse_rational(ex_u)), {});
      Json models = Json::array();
      for (const auto& m : generate_family(base, fam_count, random_mu_sampler(fam_seed, fam_n, fam_bound, k.conductor())))
        models.push_back(to_json(m));
      return Json{{"models", models}};
    };
  });
  GroupOpts sopts;
  int h_order = 0;
  auto* e_stab = example->add_subcommand("stabilized", "a singular fibre with odd stabilizer whose image stays singular");
  add_group_opts(e_stab, sopts);
  e_stab->add_option("--h-order", h_order, "order of h; 0 accepts any odd order");
  e_stab->callback([&] {
    action = [&] {
      const GroupType t = resolve_type(sopts);
      return to_json(build_stabilized_example(t, resolve_field(sopts, t), h_order));
    };
  });

  // ----------------------------------------------------------------- compare
  auto* compare = app.add_subcommand("compare", "birational comparison through singular-fibre loci")->require_subcommand(1);
  std::string file_a, file_b;
  auto* p_pair = compare->add_subcommand("pair", "two models");
  p_pair->add_option("--a", file_a, "first model record")->required();
  p_pair->add_option("--b", file_b, "second model record")->required();
  p_pair->callback([&] {
    action = [&] {
      const auto mat = pairwise_inequivalence(
          {model_from_json(read_json(file_a), "$a"), model_from_json(read_json(file_b), "$b")}, jobs);
      const auto& v = mat[0][1];
      return Json{{"verdict", to_string(v.verdict)}, {"witness", v.witness ? to_json(*v.witness) : Json()}};
    };
  });
  std::string family_file;
  auto* p_family = compare->add_subcommand("family", "verdict matrix for a list of models");
  p_family->add_option("--models", family_file, "array of model records or {\"models\": [...]}")->required();
  p_family->callback([&] {
    action = [&] { return to_json(pairwise_inequivalence(models_from_json(read_json(family_file)), jobs)); };
  });

  // ----------------------------------------------------------------- reproduce
  auto* reproduce = app.add_subcommand("reproduce", "acceptance suite")->require_subcommand(1);
  bool as_json = false;
  auto* r_all = reproduce->add_subcommand("all", "run every criterion and print a pass/fail summary");
  r_all->add_flag("--json", as_json, "JSON instead of text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return 2;
    }
  }
  std::ostream& out = out_path.empty() ? std::cout : file;

  try {
    if (r_all->parsed()) {
      int failed = 0;
      Json rows = Json::array();
      for (const auto& r : run_acceptance(jobs)) {
        if (!r.passed) ++failed;
        if (as_json) {
          rows.push_back(Json{{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"notes", r.notes}});
        } else {
          out << summary_line(r) << "\n";
          if (verbose || !r.passed)
            for (const auto& n : r.notes) out << "      " << n << "\n";
        }
      }
      if (as_json) {
        out << dump(Json{{"criteria", rows}, {"failed", failed}});
      } else {
        out << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " of 9 criteria failed") << "\n";
      }
      return failed == 0 ? 0 : 1;
    }
    const Json j = action();
    out << dump(j);
    if (action_exit != 0) std::cerr << "error: validation failed\n";
    return action_exit;
  } catch (const Error& e) {
    std::cerr << with_error(e).dump() << "\n";
    return is_internal(e.kind()) ? 1 : 2;
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
}
