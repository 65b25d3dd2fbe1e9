// bondcat: block matrices over graded posets with involution, their
// triangulated quotient, and the functor from complexes of projectives over
// gentle algebras.
//
// Exit codes: 0 success / decision "yes", 1 validation failure,
//             2 malformed input, 3 decision "no".

#include <CLI11.hpp>

#include <bondcat/harness.hpp>
#include <bondcat/json_io.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

using namespace bondcat;
namespace io = bondcat::io;
namespace fs = std::filesystem;

namespace {

struct Options {
  std::string field = "rational";
  bool json_output = false;
};

constexpr int kExitOk = 0, kExitInvalid = 1, kExitMalformed = 2, kExitNo = 3;

io::json load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("/", "cannot open '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return io::parse_text(text, path);
}

void save(const std::string& path, const io::json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << io::dump(j);
}

std::string stem_of(const std::string& path) { return fs::path(path).stem().string(); }

/// "path or inline" references resolve relative to the referencing file.
io::FileLoader loader_for(const std::string& path) {
  fs::path base = fs::path(path).parent_path();
  return [base](const std::string& ref) { return load((base / ref).string()); };
}

template <Scalar K>
void require_field(const io::json& j, const std::string& path) {
  std::string file_field = io::field_of(j, field_name<K>());
  if (file_field != field_name<K>())
    throw ParseError("/field", path + " carries field '" + file_field +
                                   "' but the session field is '" + field_name<K>() + "'");
}

int report_outcome(const Report& rep, const Options& opt, const std::string& what) {
  if (opt.json_output) {
    io::json j{{"type", "report"}, {"subject", what}, {"valid", rep.ok()},
               {"problems", rep.problems}};
    std::cout << io::dump(j);
  } else if (rep.ok()) {
    std::cout << what << ": valid\n";
  } else {
    std::cout << what << ": INVALID\n" << rep.str();
  }
  return rep.ok() ? kExitOk : kExitInvalid;
}

// ---------------------------------------------------------------------------

template <Scalar K>
struct Runner {
  Options opt;

  int validate(const std::string& path, std::string kind) {
    io::json j = load(path);
    if (kind.empty()) kind = io::type_of(j);
    if (kind.empty()) throw ParseError("/type", "no type field; pass --kind");
    require_field<K>(j, path);
    if (kind == "object") {
      auto b = io::object_from_json<K>(j, "");
      return report_outcome(validate_object(b), opt, "object");
    }
    if (kind == "morphism") {
      auto t = io::morphism_from_json<K>(j, "");
      Report rep = validate_object(t.source);
      Report rep2 = validate_object(t.target);
      Report out;
      out.merge(rep, "source");
      out.merge(rep2, "target");
      out.merge(validate_morphism(t));
      return report_outcome(out, opt, "morphism");
    }
    if (kind == "witness") {
      auto l = io::witness_from_json<K>(j, "");
      Report out;
      out.merge(validate_object(l.source), "source");
      out.merge(validate_object(l.target), "target");
      // region + sigma conditions, via the zero-pair check on equal morphisms
      for (const auto& [key, m] : l.blocks) {
        if (!region_allows(l.variant, key.first, key.second) && !m.is_zero())
          out.fail("block outside the allowed region");
        if (m.rows() != l.source.dim(key.first) || m.cols() != l.target.dim(key.second))
          out.fail("block shape mismatch");
      }
      return report_outcome(out, opt, "witness");
    }
    if (kind == "triangle") {
      auto t = io::triangle_from_json<K>(j, "", loader_for(path));
      return report_outcome(validate_triangle(t), opt, "triangle");
    }
    if (kind == "quiver") {
      io::algebra_from_json(j, "");  // throws on non-gentle input
      return report_outcome(Report{}, opt, "quiver");
    }
    if (kind == "complex") {
      auto p = io::complex_from_json<K>(j, "", nullptr, loader_for(path));
      return report_outcome(validate_complex(p), opt, "complex");
    }
    if (kind == "chainmap") {
      auto f = io::chain_map_from_json<K>(j, "", loader_for(path));
      Report out;
      out.merge(validate_complex(f.source), "source");
      out.merge(validate_complex(f.target), "target");
      out.merge(validate_chain_map(f));
      return report_outcome(out, opt, "chainmap");
    }
    throw ParseError("/type", "unknown entity kind '" + kind + "'");
  }

  int shift(const std::string& path, std::int64_t n, std::string out) {
    io::json j = load(path);
    require_field<K>(j, path);
    auto b = io::object_from_json<K>(j, "");
    Report rep = validate_object(b);
    if (!rep.ok()) return report_outcome(rep, opt, "object");
    b.normalize();
    if (out.empty()) out = stem_of(path) + "_shift" + std::to_string(n) + ".json";
    save(out, io::object_to_json(shift_object(b, n)));
    std::cout << "wrote " << out << "\n";
    return kExitOk;
  }

  BondMorphism<K> load_valid_morphism(const std::string& path) {
    io::json j = load(path);
    require_field<K>(j, path);
    auto t = io::morphism_from_json<K>(j, "");
    Report rep;
    rep.merge(validate_object(t.source), "source");
    rep.merge(validate_object(t.target), "target");
    rep.merge(validate_morphism(t));
    if (!rep.ok()) throw Error(path + " is not a valid morphism:\n" + rep.str());
    t.source.normalize();
    t.target.normalize();
    drop_zero_blocks(t.blocks);
    return t;
  }

  int cone_cmd(const std::string& path, std::string prefix) {
    auto t = load_valid_morphism(path);
    if (prefix.empty()) prefix = stem_of(path);
    save(prefix + "_cone.json", io::object_to_json(cone(t)));
    save(prefix + "_inclusion.json", io::morphism_to_json(inclusion(t)));
    save(prefix + "_projection.json", io::morphism_to_json(projection(t)));
    save(prefix + "_triangle.json", io::triangle_to_json(standard_triangle(t)));
    std::cout << "wrote " << prefix << "_{cone,inclusion,projection,triangle}.json\n";
    return kExitOk;
  }

  int equiv(const std::string& spath, const std::string& tpath, const std::string& variant_name_,
            std::string out) {
    WitnessVariant variant;
    if (variant_name_ == "K")
      variant = WitnessVariant::K;
    else if (variant_name_ == "kappa")
      variant = WitnessVariant::Kappa;
    else
      throw ParseError("/variant", "expected K or kappa");
    auto s = load_valid_morphism(spath);
    auto t = load_valid_morphism(tpath);
    auto l = find_witness(s, t, variant);
    if (!l) {
      std::cout << "not equivalent (" << variant_name_ << ")\n";
      return kExitNo;
    }
    Report rep = check_witness(s, t, *l);
    if (!rep.ok()) throw Error("internal: solver returned an invalid witness\n" + rep.str());
    if (out.empty()) out = stem_of(spath) + "_witness.json";
    save(out, io::witness_to_json(*l));
    std::cout << "equivalent; wrote " << out << "\n";
    return kExitOk;
  }

  int iso(const std::string& path, std::string out) {
    auto t = load_valid_morphism(path);
    auto cert = is_iso_in_quotient(t);
    if (!cert) {
      std::cout << "not iso\n";
      return kExitNo;
    }
    if (out.empty()) out = stem_of(path) + "_iso.json";
    io::json j{{"format", io::kFormatTag},
               {"type", "iso_certificate"},
               {"field", field_name<K>()},
               {"inverse", io::morphism_to_json(cert->inverse)},
               {"l1", io::witness_to_json(cert->l1)},
               {"l2", io::witness_to_json(cert->l2)}};
    save(out, j);
    std::cout << "iso; wrote " << out << "\n";
    return kExitOk;
  }

  int rotate(const std::string& path, std::string prefix) {
    auto t = load_valid_morphism(path);
    RotationData<K> rot = rotation_witnesses(t);
    if (prefix.empty()) prefix = stem_of(path);
    save(prefix + "_R.json", io::morphism_to_json(rot.R));
    save(prefix + "_S.json", io::morphism_to_json(rot.S));
    save(prefix + "_Lcomm.json", io::witness_to_json(rot.L_comm));
    save(prefix + "_Linv.json", io::witness_to_json(rot.L_inv));
    Triangle<K> rotated{t.target, cone(t), shift_object(t.source), inclusion(t), projection(t),
                        scale(K(0) - K(1), shift_morphism(t))};
    save(prefix + "_rotated_triangle.json", io::triangle_to_json(rotated));
    std::cout << "wrote " << prefix << "_{R,S,Lcomm,Linv,rotated_triangle}.json\n";
    return kExitOk;
  }

  int tr3(const std::string& tpath, const std::string& t2path, const std::string& fpath,
          const std::string& gpath, const std::string& witness_path, std::string out) {
    auto t = load_valid_morphism(tpath);
    auto t2 = load_valid_morphism(t2path);
    auto f = load_valid_morphism(fpath);
    auto g = load_valid_morphism(gpath);
    KMatrix<K> l{WitnessVariant::K, t.source, t2.target, {}};
    if (!witness_path.empty()) {
      io::json j = load(witness_path);
      require_field<K>(j, witness_path);
      l = io::witness_from_json<K>(j, "");
    } else {
      auto found = find_witness(compose(t, g), compose(f, t2), WitnessVariant::K);
      if (!found) {
        std::cout << "square does not commute up to equivalence\n";
        return kExitNo;
      }
      l = *found;
    }
    BondMorphism<K> h = tr3_fill(t, t2, f, g, l);
    if (out.empty()) out = stem_of(tpath) + "_fillin.json";
    save(out, io::morphism_to_json(h));
    std::cout << "wrote " << out << "\n";
    return kExitOk;
  }

  int octahedron_cmd(const std::string& spath, const std::string& tpath, std::string prefix) {
    auto s = load_valid_morphism(spath);
    auto t = load_valid_morphism(tpath);
    OctahedronData<K> oct = octahedron(s, t);
    if (prefix.empty()) prefix = stem_of(spath) + "_oct";
    save(prefix + "_F.json", io::morphism_to_json(oct.F));
    save(prefix + "_G.json", io::morphism_to_json(oct.G));
    save(prefix + "_Lambda.json", io::morphism_to_json(oct.Lambda));
    save(prefix + "_Lrot.json", io::witness_to_json(oct.L_rot));
    save(prefix + "_Lcomm.json", io::witness_to_json(oct.L_comm));
    auto cert = is_iso_in_quotient(oct.Lambda);
    if (!cert) throw Error("internal: Lambda is not iso in the quotient");
    io::json j{{"format", io::kFormatTag},
               {"type", "iso_certificate"},
               {"field", field_name<K>()},
               {"inverse", io::morphism_to_json(cert->inverse)},
               {"l1", io::witness_to_json(cert->l1)},
               {"l2", io::witness_to_json(cert->l2)}};
    save(prefix + "_Lambda_iso.json", j);
    std::cout << "wrote " << prefix << "_{F,G,Lambda,Lrot,Lcomm,Lambda_iso}.json\n";
    return kExitOk;
  }

  int gentle_analyze(const std::string& path) {
    io::json j = load(path);
    AlgebraPtr a = io::algebra_from_json(j, "");
    if (opt.json_output) {
      io::json paths = io::json::array();
      for (std::size_t i = 0; i < a->path_count(); ++i) paths.push_back(a->path((int)i).name);
      io::json maximal = io::json::array();
      for (int m : a->maximal_paths()) maximal.push_back(a->path(m).name);
      io::json inv = io::json::object();
      const BasePoset& p = *a->poset();
      for (int e = 0; e < p.size(); ++e)
        if (p.sigma[(std::size_t)e] > e)
          inv[p.names[(std::size_t)e]] = p.names[(std::size_t)p.sigma[(std::size_t)e]];
      std::cout << io::dump(io::json{{"type", "gentle_analysis"},
                                     {"paths", paths},
                                     {"maximal", maximal},
                                     {"poset", p.names},
                                     {"involution", inv}});
      return kExitOk;
    }
    std::cout << "Pa = {";
    for (std::size_t i = 0; i < a->path_count(); ++i)
      std::cout << (i ? ", " : "") << a->path((int)i).name;
    std::cout << "}\nM  = {";
    for (std::size_t i = 0; i < a->maximal_paths().size(); ++i)
      std::cout << (i ? ", " : "") << a->path(a->maximal_paths()[i]).name;
    std::cout << "}   (order fixed for this run)\nposet  ";
    const BasePoset& p = *a->poset();
    for (int e = 0; e < p.size(); ++e) std::cout << (e ? " < " : "") << p.names[(std::size_t)e];
    std::cout << "   (x Z, anti-lexicographic)\nsigma  ";
    bool first = true;
    for (int e = 0; e < p.size(); ++e) {
      int se = p.sigma[(std::size_t)e];
      if (se < e) continue;
      if (!first) std::cout << ", ";
      first = false;
      if (se == e)
        std::cout << p.names[(std::size_t)e] << " fixed";
      else
        std::cout << p.names[(std::size_t)e] << " <-> " << p.names[(std::size_t)se];
    }
    std::cout << "\n";
    return kExitOk;
  }

  int functor_cmd(const std::string& what, const std::string& path, std::string out) {
    io::json j = load(path);
    require_field<K>(j, path);
    if (out.empty()) out = stem_of(path) + "_image.json";
    if (what == "object") {
      auto p = io::complex_from_json<K>(j, "", nullptr, loader_for(path));
      Report rep = validate_complex(p);
      if (!rep.ok()) return report_outcome(rep, opt, "complex");
      p.normalize();
      auto img = functor_object(p);
      io::json oj = io::object_to_json(img.object);
      oj["placement"] = placements_json(img.placements, *p.algebra);
      save(out, oj);
    } else {
      auto f = io::chain_map_from_json<K>(j, "", loader_for(path));
      Report rep = validate_chain_map(f);
      if (!rep.ok()) return report_outcome(rep, opt, "chainmap");
      f.source.normalize();
      f.target.normalize();
      f.normalize();
      auto img = functor_morphism(f);
      io::json mj = io::morphism_to_json(img.morphism);
      mj["placement"] = placements_json(img.placements, *f.source.algebra);
      save(out, mj);
    }
    std::cout << "wrote " << out << "\n";
    return kExitOk;
  }

  int homotopy(const std::string& phipath, const std::string& psipath, std::string out) {
    io::json j = load(phipath);
    require_field<K>(j, phipath);
    auto phi = io::chain_map_from_json<K>(j, "", loader_for(phipath));
    Report rep = validate_chain_map(phi);
    if (!rep.ok()) return report_outcome(rep, opt, "chainmap");
    phi.source.normalize();
    phi.target.normalize();
    phi.normalize();
    ChainMap<K> psi = zero_chain_map(phi.source, phi.target);
    if (!psipath.empty()) {
      io::json j2 = load(psipath);
      require_field<K>(j2, psipath);
      psi = io::chain_map_from_json<K>(j2, "", loader_for(psipath));
      Report rep2 = validate_chain_map(psi);
      if (!rep2.ok()) return report_outcome(rep2, opt, "chainmap");
      psi.source.normalize();
      psi.target.normalize();
      psi.normalize();
    }
    auto h = homotopy_witness(phi, psi);
    if (!h) {
      std::cout << "not homotopic\n";
      return kExitNo;
    }
    io::json blocks = io::json::object();
    for (const auto& [key, m] : *h)
      blocks[std::to_string(key.second)].push_back(io::json{
          {"path", phi.source.algebra->path(key.first).name}, {"matrix", io::mat_to_json<K>(m)}});
    if (out.empty()) out = stem_of(phipath) + "_homotopy.json";
    save(out, io::json{{"format", io::kFormatTag},
                       {"type", "homotopy"},
                       {"field", field_name<K>()},
                       {"blocks", blocks}});
    std::cout << "homotopic; wrote " << out << "\n";
    return kExitOk;
  }

  int verify_axioms(std::uint64_t seed, int trials) {
    AxiomHarness<K> harness(seed);
    auto results = harness.run_all(trials);
    int total_failures = 0;
    io::json checks = io::json::array();
    for (const auto& r : results) {
      total_failures += r.failures;
      if (opt.json_output) {
        checks.push_back(io::json{
            {"name", r.name}, {"trials", r.trials}, {"failures", r.failures}, {"notes", r.notes}});
      } else {
        std::cout << (r.failures == 0 ? "[ok]   " : "[FAIL] ") << r.name << "  (" << r.trials
                  << " trials)\n";
        for (const auto& n : r.notes) std::cout << "       " << n << "\n";
      }
    }
    if (opt.json_output) {
      std::cout << io::dump(io::json{{"type", "axiom_summary"},
                                     {"field", field_name<K>()},
                                     {"seed", seed},
                                     {"trials", trials},
                                     {"checks", checks},
                                     {"failures_total", total_failures}});
    } else {
      std::cout << (total_failures == 0 ? "all axiom checks passed\n"
                                        : std::to_string(total_failures) + " FAILURES\n");
    }
    return total_failures == 0 ? kExitOk : kExitInvalid;
  }

 private:
  static io::json placements_json(const std::vector<Placement>& ps, const GentleAlgebra& alg) {
    io::json out = io::json::array();
    const BasePoset& poset = *alg.poset();
    for (const auto& pl : ps)
      out.push_back(io::json{{"path", alg.path(pl.path).name},
                             {"degree", pl.degree},
                             {"row", io::element_to_json(poset, pl.row)},
                             {"col", io::element_to_json(poset, pl.col)}});
    return out;
  }
};

template <class F>
int dispatch(const Options& opt, F&& run) {
  if (opt.field == "rational") {
    Runner<Rational> r{opt};
    return run(r);
  }
  if (opt.field.rfind("gf:", 0) == 0) {
    std::uint64_t p = 0;
    try {
      p = static_cast<std::uint64_t>(std::stoull(opt.field.substr(3)));
    } catch (const std::exception&) {
      throw ParseError("/field", "bad field spec '" + opt.field + "'");
    }
    Gf::set_modulus(p);
    Runner<Gf> r{opt};
    return run(r);
  }
  throw ParseError("/field", "unknown field '" + opt.field + "' (use rational or gf:p)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bondarenko block-matrix category toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  if (const char* env = std::getenv("BONDCAT_FIELD")) opt.field = env;
  app.add_option("--field", opt.field, "scalar field: rational or gf:p")->capture_default_str();
  app.add_flag("--json", opt.json_output, "machine-readable reports");

  std::string in1, in2, in3, in4, out, kind, variant = "K", witness;
  std::int64_t shift_n = 1;
  std::uint64_t seed = 1;
  int trials = 25;

  auto* validate = app.add_subcommand("validate", "validate an entity file");
  validate->add_option("file", in1)->required();
  validate->add_option("--kind", kind, "entity kind override");

  auto* shiftc = app.add_subcommand("shift", "shift an object by n degrees");
  shiftc->add_option("file", in1)->required();
  shiftc->add_option("-n", shift_n, "shift amount")->capture_default_str();
  shiftc->add_option("-o,--out", out);

  auto* conec = app.add_subcommand("cone", "cone, inclusion, projection, standard triangle");
  conec->add_option("file", in1)->required();
  conec->add_option("-o,--out-prefix", out);

  auto* equivc = app.add_subcommand("equiv", "decide S ~ T and emit a witness");
  equivc->add_option("S", in1)->required();
  equivc->add_option("T", in2)->required();
  equivc->add_option("--variant", variant, "K or kappa")->capture_default_str();
  equivc->add_option("-o,--out", out);

  auto* isoc = app.add_subcommand("iso", "decide invertibility in the quotient");
  isoc->add_option("T", in1)->required();
  isoc->add_option("-o,--out", out);

  auto* rotc = app.add_subcommand("rotate", "rotation morphisms R, S and their witnesses");
  rotc->add_option("file", in1)->required();
  rotc->add_option("-o,--out-prefix", out);

  auto* tr3c = app.add_subcommand("tr3", "fill-in between cones of a commuting square");
  tr3c->add_option("T", in1)->required();
  tr3c->add_option("T2", in2)->required();
  tr3c->add_option("F", in3)->required();
  tr3c->add_option("G", in4)->required();
  tr3c->add_option("--witness", witness, "K-matrix certifying TG ~ FT2 (solved when omitted)");
  tr3c->add_option("-o,--out", out);

  auto* octc = app.add_subcommand("octahedron", "octahedron morphisms and witnesses");
  octc->add_option("S", in1)->required();
  octc->add_option("T", in2)->required();
  octc->add_option("-o,--out-prefix", out);

  auto* gentlec = app.add_subcommand("gentle", "gentle algebra tools");
  auto* analyzec = gentlec->add_subcommand("analyze", "paths, maximal paths, poset, involution");
  analyzec->add_option("file", in1)->required();

  auto* functorc = app.add_subcommand("functor", "Bondarenko image of a complex or chain map");
  auto* fobj = functorc->add_subcommand("object", "image of a complex");
  fobj->add_option("file", in1)->required();
  fobj->add_option("-o,--out", out);
  auto* fmor = functorc->add_subcommand("morphism", "image of a chain map");
  fmor->add_option("file", in1)->required();
  fmor->add_option("-o,--out", out);

  auto* homc = app.add_subcommand("homotopy", "decide phi ~ psi and emit the homotopy");
  homc->add_option("phi", in1)->required();
  homc->add_option("psi", in2);
  homc->add_option("-o,--out", out);

  auto* axc = app.add_subcommand("verify-axioms", "randomized verification battery");
  axc->add_option("--seed", seed)->capture_default_str();
  axc->add_option("--trials", trials)->check(CLI::PositiveNumber)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    return dispatch(opt, [&](auto& r) -> int {
      if (*validate) return r.validate(in1, kind);
      if (*shiftc) return r.shift(in1, shift_n, out);
      if (*conec) return r.cone_cmd(in1, out);
      if (*equivc) return r.equiv(in1, in2, variant, out);
      if (*isoc) return r.iso(in1, out);
      if (*rotc) return r.rotate(in1, out);
      if (*tr3c) return r.tr3(in1, in2, in3, in4, witness, out);
      if (*octc) return r.octahedron_cmd(in1, in2, out);
      if (*analyzec) return r.gentle_analyze(in1);
      if (*fobj) return r.functor_cmd("object", in1, out);
      if (*fmor) return r.functor_cmd("morphism", in1, out);
      if (*homc) return r.homotopy(in1, in2, out);
      if (*axc) return r.verify_axioms(seed, trials);
      return kExitMalformed;
    });
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitMalformed;
  }
}
