#include "conicquot/records.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace conicquot {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::parse_error, path + ": " + what);
}

const Json& member(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path + "." + key, "missing");
  return *it;
}

const Json* optional_member(const Json& j, const std::string& key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return nullptr;
  return &*it;
}

int as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

bool as_bool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected true or false");
  return j.get<bool>();
}

std::string as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

const Json& as_array(const Json& j, const std::string& path, std::size_t size = 0) {
  if (!j.is_array()) fail(path, "expected an array");
  if (size != 0 && j.size() != size) fail(path, "expected " + std::to_string(size) + " entries");
  return j;
}

GroupType group_from(const Json& j, const std::string& path) {
  const std::string text = as_string(j, path);
  try {
    return parse_group_type(text);
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

FibreKind fibre_kind_from(const std::string& s, const std::string& path) {
  if (s == "Smooth") return FibreKind::smooth;
  if (s == "Singular") return FibreKind::singular;
  fail(path, "expected Smooth or Singular");
}

SwapKind swap_from(const std::string& s, const std::string& path) {
  if (s == "none") return SwapKind::none;
  if (s == "galois") return SwapKind::galois;
  if (s == "group_only") return SwapKind::group_only;
  fail(path, "expected none, galois or group_only");
}

HomogeneousForm form_from_json(const Json& j, int conductor, const std::string& path) {
  HomogeneousForm f;
  const Json& c = as_array(member(j, "coeffs", path), path + ".coeffs");
  for (std::size_t i = 0; i < c.size(); ++i) f.coeffs.push_back(cyclo_from_json(c[i], conductor, at(path + ".coeffs", i)));
  return f;
}

std::shared_ptr<const EquationPayload> payload_from_json(const Json& j, const std::string& path) {
  auto p = std::make_shared<EquationPayload>();
  p->field = field_from_json(member(j, "field", path), path + ".field");
  const int n = p->field.conductor();
  p->group = group_from(member(j, "group", path), path + ".group");
  p->u = cyclo_from_json(member(j, "u", path), n, path + ".u");
  p->l = as_int(member(j, "l", path), path + ".l");
  const Json& mus = as_array(member(j, "mus", path), path + ".mus");
  for (std::size_t i = 0; i < mus.size(); ++i) p->mus.push_back(cyclo_from_json(mus[i], n, at(path + ".mus", i)));
  p->a = cyclo_from_json(member(j, "a", path), n, path + ".a");
  p->b = cyclo_from_json(member(j, "b", path), n, path + ".b");
  p->c = cyclo_from_json(member(j, "c", path), n, path + ".c");
  p->q = point_from_json(member(j, "q", path), n, path + ".q");
  p->px = form_from_json(member(j, "px", path), n, path + ".px");
  p->py = form_from_json(member(j, "py", path), n, path + ".py");
  const Json& qp = as_array(member(j, "quotient_points", path), path + ".quotient_points");
  for (std::size_t i = 0; i < qp.size(); ++i)
    p->quotient_points.push_back(point_from_json(qp[i], n, at(path + ".quotient_points", i)));
  p->quotient_shift = rational_from_json(member(j, "quotient_shift", path), path + ".quotient_shift");
  return p;
}

}  // namespace

// ------------------------------------------------------------------ encoding

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const CycloNum& x) {
  if (x.is_rational()) return to_string(x.rational_part());
  Json c = Json::array();
  for (const auto& q : x.coeffs()) c.push_back(to_string(q));
  return Json{{"conductor", x.conductor()}, {"coeffs", c}};
}

Json to_json(const P1Point& p) { return Json::array({to_json(p.t1()), to_json(p.t0())}); }

Json to_json(const Pgl2Elem& g) {
  return Json::array({Json::array({to_json(g.a()), to_json(g.b())}), Json::array({to_json(g.c()), to_json(g.d())})});
}

Json to_json(const FieldSpec& k) {
  Json gens = Json::array();
  for (const auto& g : k.generators()) gens.push_back(to_json(g));
  return Json{{"label", k.label()}, {"conductor", k.conductor()}, {"degree", k.degree()}, {"generators", gens}};
}

Json to_json(const HJFraction& f) {
  return Json{{"k", f.k}, {"a", f.a}, {"digits", f.digits}, {"value", to_string(hj_eval(f.digits))}};
}

Json to_json(const FibreChain& c) {
  return Json{{"chain", c.str()}, {"selfints", c.selfints}, {"swap", c.galois_swap}};
}

Json to_json(const FibreFate& f) {
  return Json{{"fate", to_string(f.fate)}, {"contractions", f.contractions}, {"trace", f.trace}};
}

Json to_json(const OrbitDatum& o) {
  Json j{{"orbit_length", o.orbit_length},
         {"stabilizer_order", o.stabilizer_order},
         {"fibre_kind", to_string(o.fibre_kind)},
         {"weight", o.weight ? Json(*o.weight) : Json()},
         {"swap", to_string(o.swap)}};
  if (!o.points.empty()) {
    Json pts = Json::array();
    for (const auto& p : o.points) pts.push_back(to_json(p));
    j["points"] = pts;
  }
  return j;
}

Json to_json(const HomogeneousForm& f) {
  Json c = Json::array();
  for (const auto& x : f.coeffs) c.push_back(to_json(x));
  return Json{{"text", f.str()}, {"coeffs", c}};
}

Json to_json(const EquationPayload& p) {
  Json mus = Json::array(), qp = Json::array();
  for (const auto& m : p.mus) mus.push_back(to_json(m));
  for (const auto& q : p.quotient_points) qp.push_back(to_json(q));
  const std::string eq = "(" + p.x_form().str() + ")*x^2 + (" + p.y_form().str() + ")*y^2 + (" + p.z_form().str() +
                         ")*z^2";
  return Json{{"equation", eq},
              {"field", to_json(p.field)},
              {"group", p.group.label()},
              {"u", to_json(p.u)},
              {"l", p.l},
              {"mus", mus},
              {"a", to_json(p.a)},
              {"b", to_json(p.b)},
              {"c", to_json(p.c)},
              {"q", to_json(p.q)},
              {"px", to_json(p.px)},
              {"py", to_json(p.py)},
              {"quotient_points", qp},
              {"quotient_shift", to_json(p.quotient_shift)}};
}

Json to_json(const SurfaceModel& s) {
  Json orbits = Json::array();
  for (const auto& o : s.orbits) orbits.push_back(to_json(o));
  Json j{{"group", s.group.label()},
         {"field", to_json(s.field)},
         {"n", s.n},
         {"has_k_point", s.has_k_point ? Json(*s.has_k_point) : Json()},
         {"orbits", orbits}};
  if (s.payload) j["payload"] = to_json(*s.payload);
  return j;
}

Json to_json(const Violation& v) {
  return Json{{"rule", v.rule}, {"orbit", v.orbit_index < 0 ? Json() : Json(v.orbit_index)}, {"message", v.message}};
}

Json to_json(const Table1Counts& c) { return Json{{"a", c.a}, {"b", c.b}, {"c", c.c}, {"d", c.d}}; }

Json to_json(const QuotientReport& r) {
  Json fates = Json::array();
  for (const auto& f : r.fates) fates.push_back(f ? to_json(*f) : Json());
  return Json{{"n", r.n},
              {"K_X2", r.k_x2},
              {"m", r.m ? Json(*r.m) : Json()},
              {"m_lo", r.m_lo},
              {"m_hi", r.m_hi},
              {"K_Y2", r.k_y2 ? Json(*r.k_y2) : Json()},
              {"table1_counts", to_json(r.counts)},
              {"table1", Json{{"n", r.table1.n}, {"m", r.table1.m}}},
              {"rationality", to_string(r.rationality)},
              {"fates", fates}};
}

Json to_json(const ScanReport& r) {
  Json ce = Json::array();
  for (const auto& c : r.counterexamples)
    ce.push_back(Json{{"group", c.group.label()}, {"counts", to_json(c.counts)}, {"n", c.value.n}, {"m", c.value.m}});
  return Json{{"instances", r.instances}, {"counterexamples", ce}};
}

Json to_json(const ExampleVerification& v) {
  return Json{{"ok", v.ok()},
              {"coefficients_in_field", v.coefficients_in_field},
              {"k_point_on_q_fibre", v.k_point_on_q_fibre},
              {"x_rational", v.x_rational},
              {"n_mu", v.n_mu},
              {"n", v.n},
              {"m_at_least_n_mu", v.m_at_least_n_mu},
              {"nonrational_when_large", v.nonrational_when_large},
              {"family_dimension", v.family_dimension},
              {"quotient", to_json(v.quotient)},
              {"failures", v.failures}};
}

Json to_json(const StabilizedExample& e) {
  return Json{{"swap_case", e.swap_case},
              {"image_fate", to_json(e.image_fate)},
              {"g", to_json(e.g)},
              {"h", to_json(e.h)},
              {"lambda", to_json(e.lambda)},
              {"model", to_json(e.model)}};
}

Json to_json(const std::vector<std::vector<PairVerdict>>& matrix) {
  Json rows = Json::array(), witnesses = Json::array();
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < matrix[i].size(); ++j) {
      row.push_back(to_string(matrix[i][j].verdict));
      if (i < j && matrix[i][j].witness)
        witnesses.push_back(Json{{"i", i}, {"j", j}, {"map", to_json(*matrix[i][j].witness)}});
    }
    rows.push_back(row);
  }
  return Json{{"verdicts", rows}, {"witnesses", witnesses}};
}

// ------------------------------------------------------------------ decoding

Rational rational_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) fail(path, "expected a \"p/q\" string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::exception&) {
    fail(path, "malformed rational '" + j.get<std::string>() + "'");
  }
}

CycloNum cyclo_from_json(const Json& j, int conductor, const std::string& path) {
  if (!j.is_object()) return CycloNum::rational(conductor, rational_from_json(j, path));
  const int n = as_int(member(j, "conductor", path), path + ".conductor");
  if (n < 1 || n > kMaxConductor) fail(path + ".conductor", "out of range");
  const Json& c = as_array(member(j, "coeffs", path), path + ".coeffs");
  std::vector<Rational> coeffs;
  for (std::size_t i = 0; i < c.size(); ++i) coeffs.push_back(rational_from_json(c[i], at(path + ".coeffs", i)));
  try {
    return CycloNum(n, std::move(coeffs)).embed(conductor);
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

P1Point point_from_json(const Json& j, int conductor, const std::string& path) {
  as_array(j, path, 2);
  const CycloNum t1 = cyclo_from_json(j[0], conductor, at(path, 0));
  const CycloNum t0 = cyclo_from_json(j[1], conductor, at(path, 1));
  if (t1.is_zero() && t0.is_zero()) fail(path, "(0 : 0) is not a point");
  return P1Point(t1, t0);
}

Pgl2Elem matrix_from_json(const Json& j, int conductor, const std::string& path) {
  as_array(j, path, 2);
  as_array(j[0], at(path, 0), 2);
  as_array(j[1], at(path, 1), 2);
  auto e = [&](std::size_t r, std::size_t c) {
    return cyclo_from_json(j[r][c], conductor, at(at(path, r), c));
  };
  try {
    return Pgl2Elem(e(0, 0), e(0, 1), e(1, 0), e(1, 1));
  } catch (const Error& err) {
    fail(path, err.what());
  }
}

FieldSpec field_from_json(const Json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return FieldSpec::named(j.get<std::string>());
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }
  const Json* cj = optional_member(j, "conductor");
  const int n = cj ? as_int(*cj, path + ".conductor") : 0;
  const Json* lj = optional_member(j, "label");
  const std::string label = lj ? as_string(*lj, path + ".label") : "";
  try {
    if (const Json* gj = optional_member(j, "generators"); gj && !gj->empty()) {
      if (n == 0) fail(path + ".conductor", "required with explicit generators");
      as_array(*gj, path + ".generators");
      std::vector<CycloNum> gens;
      for (std::size_t i = 0; i < gj->size(); ++i) gens.push_back(cyclo_from_json((*gj)[i], n, at(path + ".generators", i)));
      FieldSpec k(n, std::move(gens));
      if (!label.empty()) k.set_label(label);
      return k;
    }
    if (label.empty()) fail(path, "needs a label or generators");
    return FieldSpec::named(label, n);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::parse_error) throw;
    fail(path, e.what());
  }
}

OrbitDatum orbit_from_json(const Json& j, int conductor, const std::string& path) {
  OrbitDatum o;
  o.orbit_length = as_int(member(j, "orbit_length", path), path + ".orbit_length");
  o.stabilizer_order = as_int(member(j, "stabilizer_order", path), path + ".stabilizer_order");
  o.fibre_kind = fibre_kind_from(as_string(member(j, "fibre_kind", path), path + ".fibre_kind"), path + ".fibre_kind");
  if (const Json* w = optional_member(j, "weight")) o.weight = as_int(*w, path + ".weight");
  if (const Json* s = optional_member(j, "swap")) o.swap = swap_from(as_string(*s, path + ".swap"), path + ".swap");
  if (const Json* p = optional_member(j, "points")) {
    as_array(*p, path + ".points");
    for (std::size_t i = 0; i < p->size(); ++i)
      o.points.push_back(point_from_json((*p)[i], conductor, at(path + ".points", i)));
  }
  return o;
}

SurfaceModel model_from_json(const Json& j, const std::string& path) {
  SurfaceModel s;
  s.group = group_from(member(j, "group", path), path + ".group");
  s.field = field_from_json(member(j, "field", path), path + ".field");
  const Json& orbits = as_array(member(j, "orbits", path), path + ".orbits");
  for (std::size_t i = 0; i < orbits.size(); ++i)
    s.orbits.push_back(orbit_from_json(orbits[i], s.field.conductor(), at(path + ".orbits", i)));
  if (const Json* n = optional_member(j, "n")) {
    s.n = as_int(*n, path + ".n");
  } else {
    s.n = singular_fibre_total(s.orbits);
  }
  if (const Json* k = optional_member(j, "has_k_point")) s.has_k_point = as_bool(*k, path + ".has_k_point");
  if (const Json* p = optional_member(j, "payload")) s.payload = payload_from_json(*p, path + ".payload");
  return s;
}

std::vector<SurfaceModel> models_from_json(const Json& j, const std::string& path) {
  const Json* arr = &j;
  std::string p = path;
  if (j.is_object()) {
    arr = &member(j, "models", path);
    p += ".models";
  }
  as_array(*arr, p);
  std::vector<SurfaceModel> out;
  for (std::size_t i = 0; i < arr->size(); ++i) out.push_back(model_from_json((*arr)[i], at(p, i)));
  return out;
}

Json read_json(const std::string& file) {
  std::stringstream buf;
  if (file == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(file);
    if (!in) throw Error(ErrorKind::parse_error, "cannot open " + file);
    buf << in.rdbuf();
  }
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::parse_error, file + ": " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace conicquot
