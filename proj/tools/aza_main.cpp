#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aza/algebra.hpp"
#include "aza/decomp.hpp"
#include "aza/error.hpp"
#include "aza/hensel.hpp"
#include "aza/json_io.hpp"
#include "aza/poly.hpp"
#include "aza/rand.hpp"
#include "aza/ring.hpp"
#include "aza/splittree.hpp"

namespace {

using namespace aza;

constexpr int kOk = 0;
constexpr int kRejected = 1;
constexpr int kUsage = 2;

// Rejections of a mathematically well-posed question exit 1; everything else
// (malformed input, violated preconditions, internal faults) exits 2.
int exit_code_for(errc c) {
  switch (c) {
    case errc::not_invertible:
    case errc::not_simple_root:
    case errc::no_residual_root:
    case errc::not_unramifiable:
    case errc::not_residually_idempotent:
    case errc::not_coprime:
    case errc::not_azumaya:
    case errc::randomness_exhausted:
    case errc::not_automorphism:
      return kRejected;
    default:
      return kUsage;
  }
}

void emit(const Json& j) { std::cout << j.dump() << "\n"; }

Json coords_to_json(const std::vector<Elem>& coords) {
  Json out = Json::array();
  for (const Elem& c : coords) out.push_back(elem_to_json(c));
  return out;
}

struct Options {
  std::string ring_path;
  std::string poly_path;
  std::string algebra_path;
  std::string root_path;
  std::string idempotent_path;
  std::string element_path;
  std::string f_path;
  std::string g_path;
  std::string map_path;
  std::string units_path;
  std::string tree_path;
  std::string family;
  std::string method = "newton";
  std::string mode;
  std::uint64_t seed = kDefaultSeed;
  unsigned max_degree = 6;
  bool verbose = false;
};

// Arguments are file paths, except that anything starting with '{', '[' or
// '"' is taken as inline JSON.
Json load_json_source(const std::string& arg) {
  size_t i = arg.find_first_not_of(" \t\r\n");
  if (i != std::string::npos &&
      (arg[i] == '{' || arg[i] == '[' || arg[i] == '"')) {
    try {
      return Json::parse(arg);
    } catch (const Json::parse_error& e) {
      fail(errc::bad_input,
           std::string("inline JSON argument does not parse: ") + e.what());
    }
  }
  return load_json_file(arg);
}

RingPtr load_ring(const Options& o) {
  return ring_from_json(load_json_source(o.ring_path));
}

Poly load_poly(const RingPtr& r, const std::string& path) {
  return poly_from_json(r, load_json_source(path));
}

AlgebraPtr load_algebra(const Options& o) {
  return algebra_from_json(load_json_source(o.algebra_path));
}

int run_unramifiable(const Options& o) {
  RingPtr r = load_ring(o);
  Poly f = load_poly(r, o.poly_path);
  UnramifiabilityResult res = test_unramifiable(r, f, o.max_degree);
  Json out = Json::object();
  out["unramifiable"] = res.unramifiable;
  out["deltas"] = coords_to_json(res.delta);
  out["cofactors"] = coords_to_json(res.cofactors);
  emit(out);
  return res.unramifiable ? kOk : kRejected;
}

int run_lift_root(const Options& o) {
  RingPtr r = load_ring(o);
  Poly p = load_poly(r, o.poly_path);
  LocalCertificate cert = check_local(r);
  Elem root = o.root_path.empty()
                  ? find_simple_root(cert, p, o.max_degree)
                  : lift_simple_root(cert, p,
                                     elem_from_json(cert.residue_field(),
                                                    load_json_source(o.root_path)));
  Json out = Json::object();
  out["root"] = elem_to_json(root);
  emit(out);
  return kOk;
}

int run_lift_idempotent(const Options& o) {
  IdempotentMethod method = o.method == "paper"
                                ? IdempotentMethod::universal_roots
                                : IdempotentMethod::newton;
  Json out = Json::object();
  if (!o.algebra_path.empty()) {
    AlgebraPtr a = load_algebra(o);
    LocalCertificate cert = check_local(a->ring());
    Json ej = load_json_source(o.element_path);
    if (!ej.is_array())
      fail(errc::bad_input, "element: expected a coordinate vector");
    std::vector<Elem> coords;
    for (size_t i = 0; i < ej.size(); ++i)
      coords.push_back(elem_from_json(a->ring(), ej[i]));
    out["idempotent"] = coords_to_json(lift_idempotent_algebra(cert, a, coords));
  } else {
    RingPtr r = load_ring(o);
    Poly p = load_poly(r, o.poly_path);
    Poly e = load_poly(r, o.idempotent_path);
    LocalCertificate cert = check_local(r);
    out["idempotent"] =
        poly_to_json(lift_idempotent_monic_quotient(cert, p, e, method));
  }
  emit(out);
  return kOk;
}

int run_hensel_factor(const Options& o) {
  RingPtr r = load_ring(o);
  Poly p = load_poly(r, o.poly_path);
  LocalCertificate cert = check_local(r);
  Poly fbar = load_poly(cert.residue_field(), o.f_path);
  Poly gbar = load_poly(cert.residue_field(), o.g_path);
  HenselFactors res = hensel_factor(cert, p, fbar, gbar);
  Json out = Json::object();
  out["f"] = poly_to_json(res.F);
  out["g"] = poly_to_json(res.G);
  emit(out);
  return kOk;
}

int run_is_azumaya(const Options& o) {
  AlgebraPtr a = load_algebra(o);
  Elem det = canonical_map_determinant(a);
  bool verdict = a->rank() == 0 || det.invertible();
  Json out = Json::object();
  out["azumaya"] = verdict;
  if (o.verbose) out["determinant"] = elem_to_json(det);
  emit(out);
  return verdict ? kOk : kRejected;
}

int run_center(const Options& o) {
  AlgebraPtr a = load_algebra(o);
  Json gens = Json::array();
  for (const AlgebraElement& g : center(a))
    gens.push_back(coords_to_json(g.coords()));
  Json out = Json::object();
  out["center"] = std::move(gens);
  emit(out);
  return kOk;
}

int run_split(const Options& o) {
  AlgebraPtr a = load_algebra(o);
  TreeFamily family;
  if (o.family == "quaternion")
    family = TreeFamily::quaternion;
  else if (o.family == "finite-local")
    family = TreeFamily::finite_local;
  else if (o.family == "matrix")
    family = TreeFamily::matrix;
  else
    fail(errc::bad_input,
         "--family: expected quaternion, finite-local, or matrix");
  SplitTree t = build_tree(a, family, o.seed);
  emit(tree_to_json(t));
  return kOk;
}

int run_verify_tree(const Options& o) {
  SplitTree t = tree_from_json(load_json_source(o.tree_path));
  if (o.mode == "etale") t.mode = TreeMode::etale;
  if (o.mode == "fppf") t.mode = TreeMode::fppf;
  VerifyReport rep = verify_tree(t);
  Json out = Json::object();
  out["ok"] = rep.ok;
  if (!rep.ok) {
    out["path"] = rep.path;
    out["reason"] = rep.reason;
  }
  emit(out);
  return rep.ok ? kOk : kRejected;
}

int run_skolem_noether(const Options& o) {
  AlgebraPtr a = load_algebra(o);
  Json mj = load_json_source(o.map_path);
  if (!mj.is_array() || mj.size() != a->rank())
    fail(errc::bad_input, "map: expected a rank x rank matrix as a list of rows");
  AutomorphismMatrix psi;
  psi.dim = a->rank();
  for (size_t i = 0; i < psi.dim; ++i) {
    if (!mj[i].is_array() || mj[i].size() != psi.dim)
      fail(errc::bad_input,
           "map[" + std::to_string(i) + "]: expected a length-" +
               std::to_string(psi.dim) + " row");
    for (size_t j = 0; j < psi.dim; ++j)
      psi.entries.push_back(elem_from_json(a->ring(), mj[i][j]));
  }
  Json out = Json::object();
  if (!o.units_path.empty()) {
    Json uj = load_json_source(o.units_path);
    if (!uj.is_array())
      fail(errc::bad_input, "units: expected a list of coordinate vectors");
    MatrixUnitWitness w;
    size_t n = 0;
    while (n * n < uj.size()) ++n;
    if (n * n != uj.size())
      fail(errc::bad_input, "units: expected n^2 coordinate vectors");
    w.n = n;
    for (size_t i = 0; i < uj.size(); ++i) {
      const Json& cj = uj[i];
      if (!cj.is_array() || cj.size() != a->rank())
        fail(errc::bad_input,
             "units[" + std::to_string(i) + "]: expected a length-" +
                 std::to_string(a->rank()) + " coordinate vector");
      std::vector<Elem> coords;
      for (size_t k = 0; k < cj.size(); ++k)
        coords.push_back(elem_from_json(a->ring(), cj[k]));
      w.units.push_back(a->element(coords));
    }
    AlgebraElement conj = skolem_noether_matrix(w, psi);
    out["conjugator"] = coords_to_json(conj.coords());
  } else {
    SNResult res = skolem_noether_module(a, psi);
    Json gens = Json::array();
    for (const AlgebraElement& g : res.generators)
      gens.push_back(coords_to_json(g.coords()));
    out["generators"] = std::move(gens);
    out["generator"] =
        res.generator ? coords_to_json(res.generator->coords()) : Json();
  }
  emit(out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact ring towers, Hensel lifting, Azumaya checks, and "
               "splitting-tree certificates"};
  app.require_subcommand(1);
  Options o;

  auto add_ring = [&](CLI::App* c) {
    c->add_option("--ring", o.ring_path, "ring descriptor (JSON file or inline)")
        ->required();
  };
  auto add_poly = [&](CLI::App* c, bool required = true) {
    CLI::Option* opt =
        c->add_option("--poly", o.poly_path, "polynomial, coefficients degree-0 first (JSON file or inline)");
    if (required) opt->required();
  };
  auto add_algebra = [&](CLI::App* c, bool required = true) {
    CLI::Option* opt =
        c->add_option("--algebra", o.algebra_path, "algebra (JSON file or inline)");
    if (required) opt->required();
  };
  auto add_max_degree = [&](CLI::App* c) {
    c->add_option("--max-degree", o.max_degree,
                  "cap on decomposition-algebra degree (default 6)");
  };

  CLI::App* unram = app.add_subcommand(
      "unramifiable", "test whether a monic polynomial is unramifiable");
  add_ring(unram);
  add_poly(unram);
  add_max_degree(unram);

  CLI::App* lroot = app.add_subcommand(
      "lift-root", "lift a residually simple root over a finite local ring");
  add_ring(lroot);
  add_poly(lroot);
  lroot->add_option("--root", o.root_path,
                    "residual root, an element of the residue field; "
                    "searched for when omitted");
  add_max_degree(lroot);

  CLI::App* lidem = app.add_subcommand(
      "lift-idempotent",
      "lift a residual idempotent in a monic quotient or a finite algebra");
  lidem->add_option("--ring", o.ring_path,
                    "ring descriptor (JSON file or inline, with --poly)");
  add_poly(lidem, false);
  lidem->add_option("--idempotent", o.idempotent_path,
                    "residually idempotent polynomial (JSON file or inline)");
  add_algebra(lidem, false);
  lidem->add_option("--element", o.element_path,
                    "residually idempotent coordinate vector (JSON file or inline)");
  lidem->add_option("--method", o.method, "newton (default) or paper")
      ->check(CLI::IsMember({"newton", "paper"}));

  CLI::App* hf = app.add_subcommand(
      "hensel-factor", "lift a coprime residual factorization P = f*g");
  add_ring(hf);
  add_poly(hf);
  hf->add_option("--f", o.f_path, "residual factor over the residue field (JSON file or inline)")
      ->required();
  hf->add_option("--g", o.g_path, "residual cofactor over the residue field (JSON file or inline)")
      ->required();

  CLI::App* azu = app.add_subcommand(
      "is-azumaya", "decide whether the canonical map is an isomorphism");
  add_algebra(azu);
  azu->add_flag("--verbose", o.verbose, "include the determinant");

  CLI::App* cen = app.add_subcommand("center", "compute center generators");
  add_algebra(cen);

  CLI::App* spl = app.add_subcommand(
      "split", "build a splitting tree for a supported family");
  add_algebra(spl);
  spl->add_option("--family", o.family, "quaternion, finite-local, or matrix")
      ->required();
  spl->add_option("--seed", o.seed, "random seed (default 1729)");

  CLI::App* vt = app.add_subcommand("verify-tree", "check a splitting tree");
  vt->add_option("tree", o.tree_path, "tree (JSON file or inline)")
      ->required();
  vt->add_option("--mode", o.mode, "override the tree's mode: etale or fppf")
      ->check(CLI::IsMember({"etale", "fppf"}));

  CLI::App* sn = app.add_subcommand(
      "skolem-noether",
      "express an automorphism as conjugation; with --units returns the "
      "conjugator, otherwise the conjugation module");
  add_algebra(sn);
  sn->add_option("--map", o.map_path, "automorphism matrix as a list of rows (JSON file or inline)")
      ->required();
  sn->add_option("--units", o.units_path,
                 "matrix unit witness: n^2 coordinate vectors (JSON file or inline)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kUsage;
  }

  try {
    if (*unram) return run_unramifiable(o);
    if (*lroot) return run_lift_root(o);
    if (*lidem) {
      bool poly_form = !o.poly_path.empty();
      bool algebra_form = !o.algebra_path.empty();
      if (poly_form == algebra_form)
        fail(errc::bad_input,
             "lift-idempotent: give either --poly with --idempotent and "
             "--ring, or --algebra with --element");
      if (poly_form && (o.ring_path.empty() || o.idempotent_path.empty()))
        fail(errc::bad_input,
             "lift-idempotent: --poly needs --ring and --idempotent");
      if (algebra_form && o.element_path.empty())
        fail(errc::bad_input, "lift-idempotent: --algebra needs --element");
      return run_lift_idempotent(o);
    }
    if (*hf) return run_hensel_factor(o);
    if (*azu) return run_is_azumaya(o);
    if (*cen) return run_center(o);
    if (*spl) return run_split(o);
    if (*vt) return run_verify_tree(o);
    if (*sn) return run_skolem_noether(o);
    return kUsage;
  } catch (const error& e) {
    Json out = Json::object();
    out["error"] = errc_name(e.code);
    out["message"] = e.what();
    std::cerr << out.dump() << "\n";
    return exit_code_for(e.code);
  } catch (const std::exception& e) {
    Json out = Json::object();
    out["error"] = "internal";
    out["message"] = e.what();
    std::cerr << out.dump() << "\n";
    return kUsage;
  }
}
