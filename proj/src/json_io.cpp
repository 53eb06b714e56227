#include "aza/json_io.hpp"

#include <fstream>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "aza/error.hpp"

namespace aza {

const char* errc_name(errc c) {
  switch (c) {
    case errc::bad_input: return "bad_input";
    case errc::non_prime_modulus: return "non_prime_modulus";
    case errc::non_monic_modulus: return "non_monic_modulus";
    case errc::zero_localization: return "zero_localization";
    case errc::not_invertible: return "not_invertible";
    case errc::unsupported_base: return "unsupported_base";
    case errc::unsupported_ring: return "unsupported_ring";
    case errc::not_local: return "not_local";
    case errc::non_monic_divisor: return "non_monic_divisor";
    case errc::not_finite_field: return "not_finite_field";
    case errc::non_monic: return "non_monic";
    case errc::coefficient_not_in_base: return "coefficient_not_in_base";
    case errc::rank_cap_exceeded: return "rank_cap_exceeded";
    case errc::not_simple_root: return "not_simple_root";
    case errc::no_residual_root: return "no_residual_root";
    case errc::not_unramifiable: return "not_unramifiable";
    case errc::not_residually_idempotent: return "not_residually_idempotent";
    case errc::not_coprime: return "not_coprime";
    case errc::residue_mismatch: return "residue_mismatch";
    case errc::base_ring_mismatch: return "base_ring_mismatch";
    case errc::not_azumaya: return "not_azumaya";
    case errc::randomness_exhausted: return "randomness_exhausted";
    case errc::not_automorphism: return "not_automorphism";
    case errc::unsupported_family: return "unsupported_family";
    case errc::internal: return "internal";
  }
  return "internal";
}

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  fail(errc::bad_input, path + ": " + what);
}

Int int_from_json(const Json& j, const std::string& path) {
  if (j.is_number_unsigned()) return Int(j.get<unsigned long>());
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) {
    try {
      return Int(j.get<std::string>());
    } catch (const std::invalid_argument&) {
      bad(path, "'" + j.get<std::string>() + "' is not a decimal integer");
    }
  }
  bad(path, "expected an integer as a number or decimal string");
}

Rat rat_from_json(const Json& j, const std::string& path) {
  if (j.is_number_integer() || j.is_number_unsigned())
    return Rat(int_from_json(j, path));
  if (j.is_string()) {
    try {
      Rat q(j.get<std::string>());
      if (q.get_den() == 0) bad(path, "rational has denominator zero");
      q.canonicalize();
      return q;
    } catch (const std::invalid_argument&) {
      bad(path, "'" + j.get<std::string>() + "' is not a decimal rational");
    }
  }
  bad(path, "expected a rational as a number or decimal string");
}

std::uint64_t u64_from_json(const Json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer()) {
    long v = j.get<long>();
    if (v < 0) bad(path, "expected a nonnegative integer");
    return static_cast<std::uint64_t>(v);
  }
  if (j.is_string()) {
    Int v = int_from_json(j, path);
    if (v < 0 || !v.fits_ulong_p()) bad(path, "value out of range");
    return v.get_ui();
  }
  bad(path, "expected a nonnegative integer");
}

Elem elem_from_json_at(const RingPtr& r, const Json& j, const std::string& path);

Elem scalar_elem(const RingPtr& r, const Json& j, const std::string& path) {
  if (r->base().kind == BaseKind::rationals && r->depth() == 0)
    return r->from_rat(rat_from_json(j, path));
  return r->from_int(int_from_json(j, path));
}

Elem quotient_elem(const RingPtr& r, const Json& j, const std::string& path) {
  const ExtensionStep& step = r->steps().back();
  size_t deg = step.degree();
  if (j.size() > deg)
    bad(path, "coordinate vector longer than the quotient degree " +
                  std::to_string(deg));
  RingPtr below = r->prefix(r->depth() - 1);
  Elem x = r->generator(r->depth() - 1);
  Elem acc = r->zero();
  Elem xp = r->one();
  for (size_t i = 0; i < j.size(); ++i) {
    Elem c = elem_from_json_at(below, j[i],
                               path + "[" + std::to_string(i) + "]");
    acc = acc + c.embed_into(r) * xp;
    if (i + 1 < j.size()) xp = xp * x;
  }
  return acc;
}

Elem localized_elem(const RingPtr& r, const Json& j, const std::string& path) {
  RingPtr below = r->prefix(r->depth() - 1);
  if (!j.is_object()) {
    // A bare value denotes num / u^0.
    return elem_from_json_at(below, j, path).embed_into(r);
  }
  if (!j.contains("num")) bad(path, "localized element needs a \"num\" field");
  for (const auto& item : j.items())
    if (item.key() != "num" && item.key() != "pow")
      bad(path, "unknown field \"" + item.key() + "\"");
  Elem num = elem_from_json_at(below, j["num"], path + ".num").embed_into(r);
  std::uint64_t e =
      j.contains("pow") ? u64_from_json(j["pow"], path + ".pow") : 0;
  if (e == 0) return num;
  Elem u = below->element(r->steps().back().unit).embed_into(r);
  return num * u.inverse().pow(e);
}

Elem elem_from_json_at(const RingPtr& r, const Json& j, const std::string& path) {
  if (r->depth() == 0) return scalar_elem(r, j, path);
  if (r->steps().back().kind == ExtensionStep::Kind::monic_quotient) {
    if (j.is_array()) return quotient_elem(r, j, path);
    if (j.is_string() || j.is_number())
      return scalar_elem(r->prefix(0), j, path).embed_into(r);
    bad(path, "expected a coordinate vector or a scalar constant");
  }
  return localized_elem(r, j, path);
}

Json value_to_json(const RingPtr& r, size_t level, const Value& v);

Json scalar_to_json(const RingPtr& r, const Value& v) {
  if (r->base().kind == BaseKind::rationals)
    return std::get<Rat>(v.rep).get_str();
  return std::get<Int>(v.rep).get_str();
}

Json value_to_json(const RingPtr& r, size_t level, const Value& v) {
  if (level == 0) return scalar_to_json(r, v);
  const ExtensionStep& step = r->steps()[level - 1];
  if (step.kind == ExtensionStep::Kind::monic_quotient) {
    const ValueVec& vec = std::get<ValueVec>(v.rep);
    Json out = Json::array();
    for (const Value& c : vec) out.push_back(value_to_json(r, level - 1, c));
    return out;
  }
  const LocPart& loc = std::get<LocPart>(v.rep);
  if (loc.exp == 0) return value_to_json(r, level - 1, *loc.num);
  Json out = Json::object();
  out["num"] = value_to_json(r, level - 1, *loc.num);
  out["pow"] = loc.exp;
  return out;
}

RingPtr base_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  if (!j.contains("kind")) bad(path, "missing \"kind\"");
  std::string kind = j["kind"].is_string() ? j["kind"].get<std::string>() : "";
  if (kind == "integers") return Ring::integers();
  if (kind == "rationals") return Ring::rationals();
  if (kind == "prime_field") {
    if (!j.contains("p")) bad(path, "prime_field needs \"p\"");
    return Ring::prime_field(int_from_json(j["p"], path + ".p"));
  }
  if (kind == "zmod_pk") {
    if (!j.contains("p")) bad(path, "zmod_pk needs \"p\"");
    if (!j.contains("k")) bad(path, "zmod_pk needs \"k\"");
    std::uint64_t k = u64_from_json(j["k"], path + ".k");
    if (k == 0 || k > 64) bad(path + ".k", "exponent out of range");
    return Ring::zmod(int_from_json(j["p"], path + ".p"),
                      static_cast<unsigned>(k));
  }
  bad(path + ".kind",
      "unknown base kind (expected integers, rationals, prime_field, or zmod_pk)");
}

RingPtr ring_from_json_at(const Json& j, const std::string& path) {
  if (!j.is_object()) bad(path, "expected a ring object");
  if (!j.contains("base")) bad(path, "missing \"base\"");
  RingPtr r = base_from_json(j["base"], path + ".base");
  if (!j.contains("steps")) return r;
  const Json& steps = j["steps"];
  if (!steps.is_array()) bad(path + ".steps", "expected an array");
  for (size_t i = 0; i < steps.size(); ++i) {
    const Json& s = steps[i];
    std::string sp = path + ".steps[" + std::to_string(i) + "]";
    if (!s.is_object() || !s.contains("kind")) bad(sp, "step needs a \"kind\"");
    std::string kind = s["kind"].is_string() ? s["kind"].get<std::string>() : "";
    if (kind == "monic_quotient") {
      if (!s.contains("var") || !s["var"].is_string())
        bad(sp, "monic_quotient needs a string \"var\"");
      if (!s.contains("modulus") || !s["modulus"].is_array())
        bad(sp, "monic_quotient needs a \"modulus\" coefficient list");
      std::vector<Elem> mod;
      const Json& m = s["modulus"];
      for (size_t c = 0; c < m.size(); ++c)
        mod.push_back(elem_from_json_at(
            r, m[c], sp + ".modulus[" + std::to_string(c) + "]"));
      r = r->quotient(s["var"].get<std::string>(), mod);
    } else if (kind == "localize") {
      if (!s.contains("unit")) bad(sp, "localize needs a \"unit\"");
      r = r->localized(elem_from_json_at(r, s["unit"], sp + ".unit"));
    } else {
      bad(sp + ".kind", "unknown step kind (expected monic_quotient or localize)");
    }
  }
  return r;
}

AlgebraPtr algebra_from_json_at(const Json& j, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an algebra object");
  for (const char* field : {"ring", "rank", "sc", "unit"})
    if (!j.contains(field))
      bad(path, std::string("missing \"") + field + "\"");
  RingPtr r = ring_from_json_at(j["ring"], path + ".ring");
  std::uint64_t rank64 = u64_from_json(j["rank"], path + ".rank");
  if (rank64 > 64) bad(path + ".rank", "rank out of range (limit 64)");
  size_t rank = static_cast<size_t>(rank64);
  const Json& sc = j["sc"];
  if (!sc.is_array() || sc.size() != rank)
    bad(path + ".sc", "expected " + std::to_string(rank) + " rows");
  std::vector<Elem> flat;
  flat.reserve(rank * rank * rank);
  for (size_t i = 0; i < rank; ++i) {
    std::string pi = path + ".sc[" + std::to_string(i) + "]";
    if (!sc[i].is_array() || sc[i].size() != rank)
      bad(pi, "expected " + std::to_string(rank) + " columns");
    for (size_t jj = 0; jj < rank; ++jj) {
      std::string pj = pi + "[" + std::to_string(jj) + "]";
      const Json& cell = sc[i][jj];
      if (!cell.is_array() || cell.size() != rank)
        bad(pj, "expected a length-" + std::to_string(rank) + " coordinate vector");
      for (size_t k = 0; k < rank; ++k)
        flat.push_back(elem_from_json_at(
            r, cell[k], pj + "[" + std::to_string(k) + "]"));
    }
  }
  const Json& unit = j["unit"];
  if (!unit.is_array() || unit.size() != rank)
    bad(path + ".unit", "expected a length-" + std::to_string(rank) +
                            " coordinate vector");
  std::vector<Elem> uc;
  for (size_t i = 0; i < rank; ++i)
    uc.push_back(elem_from_json_at(r, unit[i],
                                   path + ".unit[" + std::to_string(i) + "]"));
  return FiniteAlgebra::create(r, rank, flat, uc);
}

AlgebraElement unit_from_json(const AlgebraPtr& a, const Json& j,
                              const std::string& path) {
  if (!j.is_array() || j.size() != a->rank())
    bad(path, "expected a length-" + std::to_string(a->rank()) +
                  " coordinate vector");
  std::vector<Elem> coords;
  for (size_t i = 0; i < j.size(); ++i)
    coords.push_back(elem_from_json_at(a->ring(), j[i],
                                       path + "[" + std::to_string(i) + "]"));
  return a->element(coords);
}

SplitNodePtr node_from_json(const Json& j, const RingPtr& ring,
                            const AlgebraPtr& algebra, size_t adjoin_count,
                            const std::string& path) {
  if (!j.is_object() || !j.contains("kind"))
    bad(path, "expected a node object with a \"kind\"");
  std::string kind = j["kind"].is_string() ? j["kind"].get<std::string>() : "";
  if (kind == "leaf") {
    if (!j.contains("n")) bad(path, "leaf needs \"n\"");
    if (!j.contains("units") || !j["units"].is_array())
      bad(path, "leaf needs a \"units\" array");
    MatrixUnitWitness w;
    w.n = static_cast<size_t>(u64_from_json(j["n"], path + ".n"));
    const Json& units = j["units"];
    for (size_t i = 0; i < units.size(); ++i)
      w.units.push_back(unit_from_json(
          algebra, units[i], path + ".units[" + std::to_string(i) + "]"));
    return std::make_shared<SplitNode>(SplitNode{LeafNode{std::move(w)}});
  }
  if (kind == "adjoin") {
    if (!j.contains("poly")) bad(path, "adjoin needs a \"poly\"");
    Poly p = poly_from_json(ring, j["poly"]);
    if (!j.contains("child")) bad(path, "adjoin needs a \"child\"");
    RingPtr s = adjoin_child_ring(ring, p, adjoin_count);
    AlgebraPtr as = base_change(algebra, s);
    SplitNodePtr child =
        node_from_json(j["child"], s, as, adjoin_count + 1, path + ".child");
    return std::make_shared<SplitNode>(
        SplitNode{AdjoinNode{std::move(p), std::move(child)}});
  }
  if (kind == "cover") {
    if (!j.contains("units") || !j["units"].is_array())
      bad(path, "cover needs a \"units\" array");
    if (!j.contains("children") || !j["children"].is_array())
      bad(path, "cover needs a \"children\" array");
    const Json& units = j["units"];
    const Json& children = j["children"];
    if (units.size() != children.size())
      bad(path, "cover unit and child counts differ");
    std::vector<Elem> us;
    std::vector<SplitNodePtr> kids;
    for (size_t i = 0; i < units.size(); ++i) {
      Elem u = elem_from_json_at(ring, units[i],
                                 path + ".units[" + std::to_string(i) + "]");
      RingPtr s = cover_child_ring(ring, u);
      AlgebraPtr as = base_change(algebra, s);
      kids.push_back(node_from_json(children[i], s, as, adjoin_count,
                                    path + ".children[" + std::to_string(i) + "]"));
      us.push_back(std::move(u));
    }
    return std::make_shared<SplitNode>(
        SplitNode{CoverNode{std::move(us), std::move(kids)}});
  }
  bad(path + ".kind", "unknown node kind (expected leaf, adjoin, or cover)");
}

Json node_to_json(const SplitNodePtr& node, const RingPtr& ring,
                  const AlgebraPtr& algebra, size_t adjoin_count) {
  if (!node) fail(errc::bad_input, "cannot serialize a missing tree node");
  Json out = Json::object();
  if (const auto* leaf = std::get_if<LeafNode>(&node->v)) {
    out["kind"] = "leaf";
    out["n"] = leaf->witness.n;
    Json units = Json::array();
    for (const AlgebraElement& u : leaf->witness.units) {
      Json coords = Json::array();
      for (const Elem& c : u.coords()) coords.push_back(elem_to_json(c));
      units.push_back(std::move(coords));
    }
    out["units"] = std::move(units);
    return out;
  }
  if (const auto* adj = std::get_if<AdjoinNode>(&node->v)) {
    out["kind"] = "adjoin";
    out["poly"] = poly_to_json(adj->modulus);
    RingPtr s = adjoin_child_ring(ring, adj->modulus, adjoin_count);
    out["child"] =
        node_to_json(adj->child, s, base_change(algebra, s), adjoin_count + 1);
    return out;
  }
  const auto& cover = std::get<CoverNode>(node->v);
  out["kind"] = "cover";
  Json units = Json::array();
  Json children = Json::array();
  for (size_t i = 0; i < cover.units.size(); ++i) {
    units.push_back(elem_to_json(cover.units[i]));
    RingPtr s = cover_child_ring(ring, cover.units[i]);
    children.push_back(
        node_to_json(cover.children[i], s, base_change(algebra, s), adjoin_count));
  }
  out["units"] = std::move(units);
  out["children"] = std::move(children);
  return out;
}

}  // namespace

RingPtr ring_from_json(const Json& j) { return ring_from_json_at(j, "ring"); }

Elem elem_from_json(const RingPtr& r, const Json& j) {
  return elem_from_json_at(r, j, "element");
}

Poly poly_from_json(const RingPtr& r, const Json& j) {
  if (!j.is_array()) fail(errc::bad_input, "poly: expected a coefficient list");
  std::vector<Elem> coeffs;
  for (size_t i = 0; i < j.size(); ++i)
    coeffs.push_back(
        elem_from_json_at(r, j[i], "poly[" + std::to_string(i) + "]"));
  return Poly::from_coeffs(r, coeffs);
}

AlgebraPtr algebra_from_json(const Json& j) {
  return algebra_from_json_at(j, "algebra");
}

SplitTree tree_from_json(const Json& j) {
  if (!j.is_object()) fail(errc::bad_input, "tree: expected an object");
  SplitTree t;
  if (!j.contains("mode")) fail(errc::bad_input, "tree: missing \"mode\"");
  std::string mode = j["mode"].is_string() ? j["mode"].get<std::string>() : "";
  if (mode == "etale")
    t.mode = TreeMode::etale;
  else if (mode == "fppf")
    t.mode = TreeMode::fppf;
  else
    fail(errc::bad_input, "tree.mode: expected \"etale\" or \"fppf\"");
  if (!j.contains("ring")) fail(errc::bad_input, "tree: missing \"ring\"");
  t.ring = ring_from_json_at(j["ring"], "tree.ring");
  if (!j.contains("algebra")) fail(errc::bad_input, "tree: missing \"algebra\"");
  t.algebra = algebra_from_json_at(j["algebra"], "tree.algebra");
  if (!t.algebra->ring()->same_as(*t.ring))
    fail(errc::bad_input, "tree.algebra: not over tree.ring");
  if (!j.contains("node")) fail(errc::bad_input, "tree: missing \"node\"");
  t.root = node_from_json(j["node"], t.ring, t.algebra, 0, "tree.node");
  return t;
}

Json ring_to_json(const RingPtr& r) {
  Json base = Json::object();
  switch (r->base().kind) {
    case BaseKind::integers: base["kind"] = "integers"; break;
    case BaseKind::rationals: base["kind"] = "rationals"; break;
    case BaseKind::prime_field:
      base["kind"] = "prime_field";
      base["p"] = r->base().p.get_str();
      break;
    case BaseKind::zmod_prime_power:
      base["kind"] = "zmod_pk";
      base["p"] = r->base().p.get_str();
      base["k"] = r->base().k;
      break;
  }
  Json out = Json::object();
  out["base"] = std::move(base);
  if (r->depth() == 0) return out;
  Json steps = Json::array();
  for (size_t level = 1; level <= r->depth(); ++level) {
    const ExtensionStep& step = r->steps()[level - 1];
    Json s = Json::object();
    if (step.kind == ExtensionStep::Kind::monic_quotient) {
      s["kind"] = "monic_quotient";
      s["var"] = step.var;
      Json mod = Json::array();
      for (const Value& c : step.modulus)
        mod.push_back(value_to_json(r, level - 1, c));
      s["modulus"] = std::move(mod);
    } else {
      s["kind"] = "localize";
      s["unit"] = value_to_json(r, level - 1, step.unit);
    }
    steps.push_back(std::move(s));
  }
  out["steps"] = std::move(steps);
  return out;
}

Json elem_to_json(const Elem& e) {
  return value_to_json(e.ring(), e.ring()->depth(), e.value());
}

Json poly_to_json(const Poly& f) {
  Json out = Json::array();
  for (long i = 0; i <= f.degree(); ++i) out.push_back(elem_to_json(f.coeff(i)));
  return out;
}

Json algebra_to_json(const AlgebraPtr& a) {
  Json out = Json::object();
  out["ring"] = ring_to_json(a->ring());
  size_t r = a->rank();
  out["rank"] = r;
  Json sc = Json::array();
  for (size_t i = 0; i < r; ++i) {
    Json row = Json::array();
    for (size_t j = 0; j < r; ++j) {
      Json cell = Json::array();
      for (size_t k = 0; k < r; ++k) cell.push_back(elem_to_json(a->sc(i, j, k)));
      row.push_back(std::move(cell));
    }
    sc.push_back(std::move(row));
  }
  out["sc"] = std::move(sc);
  Json unit = Json::array();
  for (const Elem& c : a->unit_coords()) unit.push_back(elem_to_json(c));
  out["unit"] = std::move(unit);
  return out;
}

Json tree_to_json(const SplitTree& t) {
  Json out = Json::object();
  out["mode"] = t.mode == TreeMode::etale ? "etale" : "fppf";
  out["ring"] = ring_to_json(t.ring);
  out["algebra"] = algebra_to_json(t.algebra);
  out["node"] = node_to_json(t.root, t.ring, t.algebra, 0);
  return out;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::bad_input, path + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& ex) {
    fail(errc::bad_input, path + ": " + ex.what());
  }
}

}  // namespace aza
