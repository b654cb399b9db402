#include "genus/cli.hpp"

#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "genus/errors.hpp"
#include "genus/oracle.hpp"
#include "genus/selftest.hpp"

namespace genus {

namespace {

std::string with_prefix(const std::string& field, const std::string& msg) {
  if (msg.rfind("field '", 0) == 0) return msg;
  return "field '" + field + "': " + msg;
}

// Runs f and tags any library error with the descriptor field it came from.
template <class F>
auto in_field(const std::string& field, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const SchemaError& e) {
    throw SchemaError(with_prefix(field, e.what()));
  } catch (const DomainError& e) {
    throw DomainError(with_prefix(field, e.what()));
  } catch (const DimensionError& e) {
    throw DimensionError(with_prefix(field, e.what()));
  } catch (const AmbientMismatch& e) {
    throw AmbientMismatch(with_prefix(field, e.what()));
  } catch (const BoundExceeded& e) {
    throw BoundExceeded(with_prefix(field, e.what()));
  } catch (const OverflowError& e) {
    throw OverflowError(with_prefix(field, e.what()));
  } catch (const PrecisionError& e) {
    throw PrecisionError(with_prefix(field, e.what()));
  }
}

Int unit_bound(const CliOptions& o) { return o.bound.value_or(kDefaultUnitGroupBound); }
Int poly_bound(const CliOptions& o) { return o.bound.value_or(kDefaultPolyUnitBound); }
Int lattice_bound(const CliOptions& o) { return o.bound.value_or(kDefaultLatticeBound); }

FqFieldPtr field_of(Int q) {
  return in_field("q", [&] { return FqField::of_order(q); });
}

FqPoly poly_from(const FqFieldPtr& f, const Coeffs& c, const std::string& field) {
  std::vector<FqPoly::Elem> e;
  for (Int x : c) {
    if (x < 0 || x >= f->q())
      throw SchemaError("field '" + field + "': coefficient " + std::to_string(x) + " is not in [0, " +
                        std::to_string(f->q()) + ")");
    e.push_back(static_cast<FqPoly::Elem>(x));
  }
  return FqPoly(f, std::move(e));
}

FqPoly monic_from(const FqFieldPtr& f, const Coeffs& c, const std::string& field) {
  FqPoly p = poly_from(f, c, field);
  if (p.degree() < 1 || !p.is_monic()) throw SchemaError("field '" + field + "': expected a monic polynomial of degree >= 1");
  return p;
}

std::vector<GeneratorInfo> generator_info(const CharacterAmbient& a) {
  std::vector<GeneratorInfo> out;
  const auto& m = a.group().moduli();
  if (a.is_numeric()) {
    const auto& g = a.numeric_units().generators();
    for (std::size_t i = 0; i < g.size(); ++i) out.push_back({std::to_string(g[i]), m[i]});
  } else {
    const auto& g = a.poly_units().generators();
    for (std::size_t i = 0; i < g.size(); ++i) out.push_back({g[i].to_string(), m[i]});
  }
  return out;
}

std::vector<GeneratorInfo> generator_info(const PolyUnitGroup& u) {
  std::vector<GeneratorInfo> out;
  for (std::size_t i = 0; i < u.generators().size(); ++i)
    out.push_back({u.generators()[i].to_string(), u.group().moduli()[i]});
  return out;
}

CharacterGroup select_characters(const CharacterAmbient& amb, const CharacterSelection& sel) {
  switch (sel.mode) {
    case CharacterSelection::Mode::Full:
      return CharacterGroup::full(amb);
    case CharacterSelection::Mode::Trivial:
      return CharacterGroup::trivial(amb);
    case CharacterSelection::Mode::Vectors:
      break;
  }
  const std::size_t rank = amb.group().moduli().size();
  std::vector<Character> gens;
  for (std::size_t i = 0; i < sel.vectors.size(); ++i) {
    const auto& v = sel.vectors[i];
    if (v.size() != rank)
      throw SchemaError("field 'characters[" + std::to_string(i) + "]': expected " + std::to_string(rank) +
                        " exponents, one per unit generator");
    gens.emplace_back(amb, amb.group().reduce(v));
  }
  return CharacterGroup::generated(amb, gens);
}

struct Abelian {
  CharacterGroup x;
  bool numeric;
  std::optional<FFAbelianDescriptor> descriptor;  // function fields only
};

Abelian abelian_from(const FieldSpec& spec, const CliOptions& opt) {
  if (const auto* s = std::get_if<NumberAbelianSpec>(&spec.body)) {
    Int n = s->modulus == 1 ? 2 : s->modulus;
    auto amb = in_field("modulus", [&] { return CharacterAmbient::numeric(n, unit_bound(opt)); });
    auto x = in_field("characters", [&] { return select_characters(amb, s->characters); });
    return {x, true, std::nullopt};
  }
  if (const auto* s = std::get_if<NumberQuadraticSpec>(&spec.body)) {
    auto chi = in_field("discriminant", [&] { return kronecker_character(s->discriminant, unit_bound(opt)); });
    return {CharacterGroup::generated(chi.ambient(), {chi}), true, std::nullopt};
  }
  if (const auto* s = std::get_if<FunctionAbelianSpec>(&spec.body)) {
    auto f = field_of(s->q);
    FqPoly n = monic_from(f, s->modulus, "modulus");
    auto amb = in_field("modulus", [&] { return CharacterAmbient::polynomial(n, poly_bound(opt)); });
    auto x = in_field("characters", [&] { return select_characters(amb, s->characters); });
    FFAbelianDescriptor d{amb.poly_units().modulus(), x, s->constants_degree, s->wild_infinity_index};
    return {x, false, d};
  }
  throw SchemaError("field 'kind': '" + spec.kind + "' does not describe an abelian field");
}

// The unit norm group has index e; a proper divisor means the level is too low.
void check_index(Int index, Int e, const std::string& field) {
  if (index == e) return;
  const std::string msg = "norm subgroup index " + std::to_string(index) + " does not match e = " + std::to_string(e);
  if (index < e && e % index == 0) throw PrecisionError("field 'level': " + msg);
  throw SchemaError("field '" + field + "': " + msg);
}

Subgroup numeric_subgroup(const ModularUnitGroup& u, const std::vector<Int>& residues, const std::string& field) {
  std::vector<GroupElement> gens;
  for (Int r : residues) {
    Int m = u.modulus();
    Int v = ((r % m) + m) % m;
    if (gcd(v, m) != 1) throw SchemaError("field '" + field + "': " + std::to_string(r) + " is not a unit mod " + std::to_string(m));
    gens.push_back(u.dlog(v));
  }
  return Subgroup::generated(u.group(), gens);
}

NumberLocalReport number_local(const NumberLocalSpec& s, const CliOptions& opt, std::vector<GeneratorInfo>& header) {
  if (!is_prime(s.p)) throw SchemaError("field 'p': " + std::to_string(s.p) + " is not prime");
  int level = s.level;
  if (opt.level) {
    if (*opt.level < s.level)
      throw SchemaError("field 'level': --level " + std::to_string(*opt.level) + " is below the descriptor level " +
                        std::to_string(s.level));
    level = *opt.level;
  }
  const Int base = in_field("level", [&] { return checked_pow(s.p, static_cast<unsigned>(s.level)); });
  const Int pm = in_field("level", [&] { return checked_pow(s.p, static_cast<unsigned>(level)); });
  ModularUnitGroup u = in_field("level", [&] { return ModularUnitGroup(pm, unit_bound(opt)); });
  for (std::size_t i = 0; i < u.generators().size(); ++i)
    header.push_back({std::to_string(u.generators()[i]), u.group().moduli()[i]});

  NumberLocalReport r;
  r.p = s.p;
  r.level = level;
  LocalPrimeData data{s.p, level, {}};
  std::vector<Int> es;
  std::size_t with_norms = 0;
  for (std::size_t i = 0; i < s.above.size(); ++i) {
    const auto& a = s.above[i];
    es.push_back(a.e);
    PrimeAbove pa{a.e, a.f, std::nullopt};
    if (a.norm_generators) {
      ++with_norms;
      std::vector<Int> gens = *a.norm_generators;
      // Preimage of the descriptor-level subgroup: adjoin the kernel of reduction.
      if (level > s.level) {
        gens.push_back(1 + base);
        if (s.p == 2) gens.push_back(1 + 2 * base);
      }
      pa.norm_subgroup = numeric_subgroup(u, gens, "above[" + std::to_string(i) + "].norm_generators");
      check_index(pa.norm_subgroup->index(), a.e, "above[" + std::to_string(i) + "].e");
    }
    data.primes_above.push_back(std::move(pa));
  }
  if (with_norms != 0 && with_norms != s.above.size())
    throw SchemaError("field 'above.norm_generators': give norm generators for every prime above p or for none");
  if (s.p != 2) r.tame = in_field("above", [&] { return tame_degree(s.p, es); });
  if (with_norms == 0) return r;
  r.degree = in_field("above", [&] { return lp_degree_from_local(data); });
  if (s.p == 2) {
    Subgroup prod = *data.primes_above.front().norm_subgroup;
    for (const auto& pa : data.primes_above) prod = product(prod, *pa.norm_subgroup);
    int m = 0;
    for (Int k = prod.index(); k > 1; k /= 2) ++m;
    r.l2 = in_field("level", [&] { return classify_l2(u, prod, m); });
  }
  return r;
}

FqPoly power(const FqPoly& p, int k) {
  FqPoly out = FqPoly::constant(p.field(), 1);
  for (int i = 0; i < k; ++i) out = out * p;
  return out;
}

FunctionLocalReport function_local(const FunctionLocalSpec& s, const CliOptions& opt,
                                   std::vector<GeneratorInfo>& header) {
  auto f = field_of(s.q);
  FunctionLocalReport r;
  r.q = s.q;
  if (opt.level && !s.finite) throw SchemaError("field 'finite': --level needs a finite prime");
  if (s.finite) {
    const auto& fin = *s.finite;
    FqPoly p = monic_from(f, fin.prime, "finite.prime");
    if (!is_irreducible(p)) throw SchemaError("field 'finite.prime': " + p.to_string() + " is not irreducible");
    int level = fin.level;
    if (opt.level) {
      if (*opt.level < fin.level)
        throw SchemaError("field 'finite.level': --level " + std::to_string(*opt.level) + " is below the descriptor level " +
                          std::to_string(fin.level));
      level = *opt.level;
    }
    PolyUnitGroup u = in_field("finite.level", [&] {
      return PolyUnitGroup(FactoredModulus{power(p, level), {{p, level}}}, poly_bound(opt));
    });
    header = generator_info(u);
    std::vector<Subgroup> subs;
    std::vector<Int> es;
    for (std::size_t i = 0; i < fin.above.size(); ++i) {
      const std::string field = "finite.above[" + std::to_string(i) + "].norm_generators";
      std::vector<GroupElement> gens;
      for (const auto& c : fin.above[i].norm_generators) {
        FqPoly g = poly_from(f, c, field) % u.modulus().modulus;
        if (!gcd(g, p).is_one()) throw SchemaError("field '" + field + "': " + g.to_string() + " is not a unit mod P");
        gens.push_back(u.dlog(g));
      }
      for (int t = fin.level; t < level; ++t)
        for (const auto& k : level_kernel_generators(p, t)) gens.push_back(u.dlog(k));
      subs.push_back(Subgroup::generated(u.group(), gens));
      check_index(subs.back().index(), fin.above[i].e, "finite.above[" + std::to_string(i) + "].e");
      es.push_back(fin.above[i].e);
    }
    auto ep = in_field("finite", [&] { return ep_degree_from_local(p, level, subs, es); });
    r.prime = p.to_string();
    r.level = level;
    r.degree = ep.degree;
    r.tame = ep.tame;
  }
  if (s.infinity) {
    const auto& inf = *s.infinity;
    PolyUnitGroup iq = in_field("infinity.n_max", [&] { return infinity_unit_quotient(s.q, inf.n_max); });
    if (header.empty()) header = generator_info(iq);
    InfinitePrimeData data;
    for (std::size_t i = 0; i < inf.primes.size(); ++i) {
      const auto& ip = inf.primes[i];
      const std::string base = "infinity.primes[" + std::to_string(i) + "]";
      InfinitePrime pr{ip.e, ip.t, std::nullopt, std::nullopt};
      if (ip.norm_generators) {
        std::vector<GroupElement> gens;
        for (const auto& c : *ip.norm_generators) {
          FqPoly g = poly_from(f, c, base + ".norm_generators") % iq.modulus().modulus;
          if (g.coeff(0) == 0) throw SchemaError("field '" + base + ".norm_generators': " + g.to_string() + " is not a unit");
          gens.push_back(iq.dlog(g));
        }
        pr.norm_subgroup = Subgroup::generated(iq.group(), gens);
      }
      if (ip.uniformizer_norm) {
        FqPoly g = poly_from(f, *ip.uniformizer_norm, base + ".uniformizer_norm");
        if (g.coeff(0) == 0) throw SchemaError("field '" + base + ".uniformizer_norm': must be a unit");
        pr.uniformizer_norm = g;
      }
      data.primes.push_back(std::move(pr));
    }
    r.n_max = inf.n_max;
    r.s_field = in_field("infinity", [&] { return s_field_invariants(data, s.q, inf.n_max); });
  }
  return r;
}

bool is_number_kind(const std::string& k) { return k.rfind("number-", 0) == 0; }

}  // namespace

ReportDocument build_report(const std::string& command, const FieldSpec& spec, const CliOptions& opt) {
  ReportDocument doc;
  doc.command = command;
  doc.kind = spec.kind;
  const bool local = spec.kind == "number-local" || spec.kind == "function-local";
  if (opt.level && !local) throw SchemaError("field 'kind': --level applies to number-local and function-local specs");
  if (command == "number" || command == "function") {
    if ((command == "number") != is_number_kind(spec.kind))
      throw SchemaError("field 'kind': '" + spec.kind + "' cannot be used with the " + command + " subcommand");
    if (const auto* s = std::get_if<NumberLocalSpec>(&spec.body)) {
      doc.number_local = number_local(*s, opt, doc.generators);
      doc.modulus = std::to_string(s->p) + "^" + std::to_string(doc.number_local->level);
      return doc;
    }
    if (const auto* s = std::get_if<FunctionLocalSpec>(&spec.body)) {
      doc.function_local = function_local(*s, opt, doc.generators);
      const auto& r = *doc.function_local;
      doc.modulus = r.prime ? "(" + *r.prime + ")^" + std::to_string(*r.level) : "infinity";
      return doc;
    }
    Abelian a = abelian_from(spec, opt);
    doc.modulus = a.x.ambient().modulus_string();
    doc.generators = generator_info(a.x.ambient());
    doc.genus = a.numeric ? genus_report(a.x) : genus_report_ff(*a.descriptor);
    return doc;
  }
  if (command == "oracle") {
    if (local) throw SchemaError("field 'kind': the oracle subcommand needs an abelian or quadratic spec");
    Abelian a = abelian_from(spec, opt);
    doc.modulus = a.x.ambient().modulus_string();
    doc.generators = generator_info(a.x.ambient());
    auto lattice = enumerate_subfields(a.x.ambient(), lattice_bound(opt));
    OracleReport r;
    r.subfields = static_cast<Int>(lattice.size());
    auto y = a.numeric ? extended_genus_characters(a.x) : extended_genus_characters_ff(a.x);
    auto g = a.numeric ? genus_characters(a.x) : genus_characters_ff(a.x);
    auto ys = maximal_extended_search(a.x, &lattice);
    auto gs = maximal_genus_search(a.x, &lattice);
    r.extended_order = y.order();
    r.extended_search_order = ys.order();
    r.genus_order = g.order();
    r.genus_search_order = gs.order();
    r.extended_agrees = y == ys;
    r.genus_agrees = g == gs;
    doc.oracle = r;
    return doc;
  }
  throw SchemaError("unknown subcommand '" + command + "'");
}

int exit_code_for_current_exception(std::ostream& err) {
  try {
    throw;
  } catch (const SchemaError& e) {
    err << "genusctl: schema error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "genusctl: invalid input: " << e.what() << "\n";
    return 2;
  } catch (const DimensionError& e) {
    err << "genusctl: invalid input: " << e.what() << "\n";
    return 2;
  } catch (const AmbientMismatch& e) {
    err << "genusctl: invalid input: " << e.what() << "\n";
    return 2;
  } catch (const BoundExceeded& e) {
    err << "genusctl: bound exceeded: " << e.what() << "\n";
    return 3;
  } catch (const OverflowError& e) {
    err << "genusctl: bound exceeded: " << e.what() << "\n";
    return 3;
  } catch (const PrecisionError& e) {
    err << "genusctl: precision error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    err << "genusctl: internal error: " << e.what() << "\n";
    return 1;
  }
}

namespace {

Int parse_bound(const std::string& s, const std::string& source) {
  Int v = 0;
  std::size_t used = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size() || v < 1) throw SchemaError(source + ": expected a positive integer, got '" + s + "'");
  return v;
}

int run_selftest_command(std::ostream& out) {
  bool ok = true;
  for (int k = 1; k <= kSelftestSuites; ++k) {
    SuiteResult r = run_suite(k);
    ok = ok && r.pass;
    out << "suite " << k << " " << (r.pass ? "PASS" : "FAIL") << " " << r.name << ": " << r.detail << "\n";
    out.flush();
  }
  out << (ok ? "selftest: all suites passed" : "selftest: FAILED") << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const char* env_bound) {
  CLI::App app{"Genus and extended genus fields of abelian extensions of Q and F_q(T)", "genusctl"};
  app.require_subcommand(1, 1);
  std::string spec_path;
  std::optional<Int> bound;
  std::optional<int> level;
  bool json = false;
  for (const char* name : {"number", "function", "oracle"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--spec", spec_path, "field descriptor (TOML)")->required();
    sub->add_option("--level", level, "raise the level of local norm data");
    sub->add_option("--bound", bound, "enumeration bound (GENUSCTL_BOUND wins)");
    sub->add_flag("--json", json, "print the JSON document");
  }
  app.get_subcommand("number")->description("genus report of an abelian number field, or number-local data");
  app.get_subcommand("function")->description("genus report of an abelian function field, or function-local data");
  app.get_subcommand("oracle")->description("compare with the brute-force subfield lattice search");
  app.add_subcommand("selftest", "run acceptance suites 1-9");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "genusctl: usage error: " << e.what() << "\n";
    return 2;
  }
  try {
    const std::string command = app.get_subcommands().front()->get_name();
    if (command == "selftest") return run_selftest_command(out);
    CliOptions opt;
    opt.bound = bound;
    if (env_bound) opt.bound = parse_bound(env_bound, "GENUSCTL_BOUND");
    if (opt.bound && *opt.bound < 1) throw SchemaError("--bound: expected a positive integer");
    opt.level = level;
    opt.json = json;
    FieldSpec spec = load_field_spec(spec_path);
    ReportDocument doc = build_report(command, spec, opt);
    out << (json ? to_json_string(doc) : render_text(doc));
    if (doc.oracle && !(doc.oracle->extended_agrees && doc.oracle->genus_agrees)) {
      err << "genusctl: oracle disagreement\n";
      return 1;
    }
    return 0;
  } catch (...) {
    return exit_code_for_current_exception(err);
  }
}

}  // namespace genus
