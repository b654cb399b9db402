#include "genus/report_io.hpp"

#include <cstdio>
#include <sstream>

#include "genus/errors.hpp"
#include "json.hpp"

namespace genus {

using json = nlohmann::ordered_json;

namespace {

template <class T>
void put_opt(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
  else j[key] = nullptr;
}

template <class T>
std::optional<T> get_opt(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<T>();
}

json rows_json(const std::vector<PrimeRow>& rows) {
  json a = json::array();
  for (const auto& r : rows) {
    a.push_back({{"label", r.label},
                 {"prime", r.prime},
                 {"e", r.e},
                 {"tame", r.tame},
                 {"wild", r.wild},
                 {"component_degree", r.component_degree},
                 {"conductor_exponent", r.conductor_exponent}});
  }
  return a;
}

json genus_json(const GenusReport& r) {
  json j;
  j["kind"] = r.kind;
  j["modulus"] = r.modulus;
  j["degree"] = r.degree;
  j["genus_order"] = r.genus_order;
  j["extended_order"] = r.extended_order;
  j["genus_degree"] = r.genus_degree;
  j["extended_degree"] = r.extended_degree;
  j["gap"] = r.gap;
  j["conductor"] = r.conductor;
  j["components"] = rows_json(r.primes);
  j["genus_generators"] = r.genus_generators;
  j["extended_generators"] = r.extended_generators;
  j["notes"] = r.notes;
  return j;
}

GenusReport genus_from(const json& j) {
  GenusReport r;
  r.kind = j.at("kind").get<std::string>();
  r.modulus = j.at("modulus").get<std::string>();
  r.degree = j.at("degree").get<Int>();
  r.genus_order = j.at("genus_order").get<Int>();
  r.extended_order = j.at("extended_order").get<Int>();
  r.genus_degree = j.at("genus_degree").get<Int>();
  r.extended_degree = j.at("extended_degree").get<Int>();
  r.gap = j.at("gap").get<Int>();
  r.conductor = j.at("conductor").get<std::string>();
  for (const auto& c : j.at("components")) {
    PrimeRow p;
    p.label = c.at("label").get<std::string>();
    p.prime = c.at("prime").get<Int>();
    p.e = c.at("e").get<Int>();
    p.tame = c.at("tame").get<Int>();
    p.wild = c.at("wild").get<Int>();
    p.component_degree = c.at("component_degree").get<Int>();
    p.conductor_exponent = c.at("conductor_exponent").get<int>();
    r.primes.push_back(p);
  }
  r.genus_generators = j.at("genus_generators").get<std::vector<std::vector<Int>>>();
  r.extended_generators = j.at("extended_generators").get<std::vector<std::vector<Int>>>();
  r.notes = j.at("notes").get<std::vector<std::string>>();
  return r;
}

json number_local_json(const NumberLocalReport& r) {
  json j;
  j["p"] = r.p;
  j["level"] = r.level;
  put_opt(j, "degree", r.degree);
  put_opt(j, "tame", r.tame);
  if (r.l2) j["l2"] = {{"tag", to_string(r.l2->tag)}, {"m", r.l2->m}, {"label", r.l2->label}};
  else j["l2"] = nullptr;
  return j;
}

NumberLocalReport number_local_from(const json& j) {
  NumberLocalReport r;
  r.p = j.at("p").get<Int>();
  r.level = j.at("level").get<int>();
  r.degree = get_opt<Int>(j, "degree");
  r.tame = get_opt<Int>(j, "tame");
  if (auto it = j.find("l2"); it != j.end() && !it->is_null()) {
    r.l2 = L2Classification{l2_tag_from_string(it->at("tag").get<std::string>()), it->at("m").get<int>(),
                            it->at("label").get<std::string>()};
  }
  return r;
}

json s_field_json(const SFieldInvariants& s) {
  json j;
  j["t0"] = s.t0;
  put_opt(j, "n0", s.n0);
  put_opt(j, "m0", s.m0);
  put_opt(j, "script_s_index", s.script_s_index);
  put_opt(j, "alpha", s.alpha);
  put_opt(j, "f_infinity", s.f_infinity);
  put_opt(j, "e_over_wild", s.e_over_wild);
  return j;
}

SFieldInvariants s_field_from(const json& j) {
  SFieldInvariants s;
  s.t0 = j.at("t0").get<Int>();
  s.n0 = get_opt<int>(j, "n0");
  s.m0 = get_opt<Int>(j, "m0");
  s.script_s_index = get_opt<Int>(j, "script_s_index");
  s.alpha = get_opt<int>(j, "alpha");
  s.f_infinity = get_opt<Int>(j, "f_infinity");
  s.e_over_wild = get_opt<Int>(j, "e_over_wild");
  return s;
}

json function_local_json(const FunctionLocalReport& r) {
  json j;
  j["q"] = r.q;
  put_opt(j, "prime", r.prime);
  put_opt(j, "level", r.level);
  put_opt(j, "degree", r.degree);
  put_opt(j, "tame", r.tame);
  put_opt(j, "n_max", r.n_max);
  if (r.s_field) j["s_field"] = s_field_json(*r.s_field);
  else j["s_field"] = nullptr;
  return j;
}

FunctionLocalReport function_local_from(const json& j) {
  FunctionLocalReport r;
  r.q = j.at("q").get<Int>();
  r.prime = get_opt<std::string>(j, "prime");
  r.level = get_opt<int>(j, "level");
  r.degree = get_opt<Int>(j, "degree");
  r.tame = get_opt<Int>(j, "tame");
  r.n_max = get_opt<int>(j, "n_max");
  if (auto it = j.find("s_field"); it != j.end() && !it->is_null()) r.s_field = s_field_from(*it);
  return r;
}

json oracle_json(const OracleReport& r) {
  return {{"subfields", r.subfields},
          {"extended_order", r.extended_order},
          {"extended_search_order", r.extended_search_order},
          {"genus_order", r.genus_order},
          {"genus_search_order", r.genus_search_order},
          {"extended_agrees", r.extended_agrees},
          {"genus_agrees", r.genus_agrees}};
}

OracleReport oracle_from(const json& j) {
  OracleReport r;
  r.subfields = j.at("subfields").get<Int>();
  r.extended_order = j.at("extended_order").get<Int>();
  r.extended_search_order = j.at("extended_search_order").get<Int>();
  r.genus_order = j.at("genus_order").get<Int>();
  r.genus_search_order = j.at("genus_search_order").get<Int>();
  r.extended_agrees = j.at("extended_agrees").get<bool>();
  r.genus_agrees = j.at("genus_agrees").get<bool>();
  return r;
}

template <class T, class F>
void put_section(json& j, const char* key, const std::optional<T>& v, F&& f) {
  if (v) j[key] = f(*v);
}

}  // namespace

L2Tag l2_tag_from_string(const std::string& s) {
  if (s == "PlusField") return L2Tag::PlusField;
  if (s == "FullCyclotomic") return L2Tag::FullCyclotomic;
  if (s == "MinusField") return L2Tag::MinusField;
  throw SchemaError("field 'l2.tag': unknown tag '" + s + "'");
}

std::string to_json_string(const ReportDocument& doc) {
  json j;
  j["command"] = doc.command;
  j["kind"] = doc.kind;
  j["modulus"] = doc.modulus;
  json gens = json::array();
  for (const auto& g : doc.generators) gens.push_back({{"residue", g.residue}, {"order", g.order}});
  j["generators"] = gens;
  put_section(j, "genus", doc.genus, genus_json);
  put_section(j, "number_local", doc.number_local, number_local_json);
  put_section(j, "function_local", doc.function_local, function_local_json);
  put_section(j, "oracle", doc.oracle, oracle_json);
  return j.dump(2) + "\n";
}

ReportDocument report_from_json(const std::string& text) {
  try {
    json j = json::parse(text);
    ReportDocument d;
    d.command = j.at("command").get<std::string>();
    d.kind = j.at("kind").get<std::string>();
    d.modulus = j.at("modulus").get<std::string>();
    for (const auto& g : j.at("generators")) {
      d.generators.push_back({g.at("residue").get<std::string>(), g.at("order").get<Int>()});
    }
    if (j.contains("genus")) d.genus = genus_from(j["genus"]);
    if (j.contains("number_local")) d.number_local = number_local_from(j["number_local"]);
    if (j.contains("function_local")) d.function_local = function_local_from(j["function_local"]);
    if (j.contains("oracle")) d.oracle = oracle_from(j["oracle"]);
    return d;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("report document: ") + e.what());
  }
}

namespace {

std::string opt_str(const std::optional<Int>& v) { return v ? std::to_string(*v) : "-"; }
std::string opt_str(const std::optional<int>& v) { return v ? std::to_string(*v) : "-"; }

void line(std::ostream& os, const std::string& key, const std::string& value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%-22s", key.c_str());
  os << buf << value << "\n";
}

std::string cell(const std::string& s, int width) {
  std::string out = s;
  if (static_cast<int>(out.size()) < width) out.append(width - out.size(), ' ');
  return out + " ";
}

std::string vectors(const std::vector<std::vector<Int>>& vs) {
  if (vs.empty()) return "(none)";
  std::string s;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) s += " ";
    s += "[";
    for (std::size_t k = 0; k < vs[i].size(); ++k) {
      if (k) s += ",";
      s += std::to_string(vs[i][k]);
    }
    s += "]";
  }
  return s;
}

}  // namespace

std::string render_text(const ReportDocument& doc) {
  std::ostringstream os;
  os << "genusctl " << doc.command << "  kind=" << doc.kind << "\n";
  line(os, "modulus", doc.modulus);
  if (!doc.generators.empty()) {
    std::string g;
    for (std::size_t i = 0; i < doc.generators.size(); ++i) {
      if (i) g += ", ";
      g += doc.generators[i].residue + " (order " + std::to_string(doc.generators[i].order) + ")";
    }
    line(os, "unit generators", g);
  }
  if (doc.genus) {
    const auto& r = *doc.genus;
    line(os, "degree [K:k]", std::to_string(r.degree));
    line(os, "[gK:K]", std::to_string(r.genus_degree));
    line(os, "[geK:K]", std::to_string(r.extended_degree));
    line(os, "gap [geK:gK]", std::to_string(r.gap));
    line(os, "conductor(geK)", r.conductor);
    os << "components\n";
    os << "  " << cell("prime", 16) << cell("e", 6) << cell("tame", 6) << cell("wild", 6) << cell("deg", 6)
       << "cond.exp\n";
    if (r.primes.empty()) os << "  (none)\n";
    for (const auto& p : r.primes) {
      os << "  " << cell(p.label, 16) << cell(std::to_string(p.e), 6) << cell(std::to_string(p.tame), 6)
         << cell(std::to_string(p.wild), 6) << cell(std::to_string(p.component_degree), 6) << p.conductor_exponent
         << "\n";
    }
    line(os, "genus generators", vectors(r.genus_generators));
    line(os, "extended generators", vectors(r.extended_generators));
    for (const auto& n : r.notes) line(os, "note", n);
  }
  if (doc.number_local) {
    const auto& r = *doc.number_local;
    line(os, "p", std::to_string(r.p));
    line(os, "level", std::to_string(r.level));
    line(os, "local degree", opt_str(r.degree));
    line(os, "tame degree", opt_str(r.tame));
    if (r.l2) {
      line(os, "2-part class", to_string(r.l2->tag));
      line(os, "2-part m", std::to_string(r.l2->m));
      line(os, "2-part field", r.l2->label);
    }
  }
  if (doc.function_local) {
    const auto& r = *doc.function_local;
    line(os, "q", std::to_string(r.q));
    if (r.prime) {
      line(os, "finite prime", *r.prime);
      line(os, "level", opt_str(r.level));
      line(os, "local degree", opt_str(r.degree));
      line(os, "tame degree", opt_str(r.tame));
    }
    if (r.s_field) {
      const auto& s = *r.s_field;
      line(os, "n_max", opt_str(r.n_max));
      line(os, "t0", std::to_string(s.t0));
      line(os, "n0", opt_str(s.n0));
      line(os, "m0", opt_str(s.m0));
      line(os, "alpha", opt_str(s.alpha));
      line(os, "unit index p^alpha", opt_str(s.script_s_index));
      line(os, "f_inf(S|k)", opt_str(s.f_infinity));
      line(os, "e_inf(S|S cap L_n0)", opt_str(s.e_over_wild));
    }
  }
  if (doc.oracle) {
    const auto& r = *doc.oracle;
    line(os, "subfields", std::to_string(r.subfields));
    line(os, "|Y| computed", std::to_string(r.extended_order));
    line(os, "|Y| lattice search", std::to_string(r.extended_search_order));
    line(os, "|genus| computed", std::to_string(r.genus_order));
    line(os, "|genus| search", std::to_string(r.genus_search_order));
    line(os, "extended agrees", r.extended_agrees ? "yes" : "no");
    line(os, "genus agrees", r.genus_agrees ? "yes" : "no");
  }
  return os.str();
}

}  // namespace genus
