#include "moonshine/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "moonshine/error.hpp"
#include "moonshine/series_io.hpp"
#include "moonshine/version.hpp"

namespace moonshine {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

Integer to_big(const json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    Integer x;
    if (x.set_str(j.get<std::string>(), 10) != 0) throw ParseError("not an integer: " + j.dump());
    return x;
  }
  throw ParseError("expected an integer, got " + j.dump());
}

ordered_json from_big(const Integer& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

ordered_json from_rational(const Rational& x) {
  if (x.get_den() == 1) return from_big(x.get_num());
  return x.get_str();
}

Rational to_rational(const json& j) {
  if (j.is_number_integer()) return Rational(to_big(j));
  if (j.is_string()) {
    Rational x;
    if (x.set_str(j.get<std::string>(), 10) != 0) throw ParseError("not a rational: " + j.dump());
    x.canonicalize();
    return x;
  }
  throw ParseError("expected a rational, got " + j.dump());
}

std::int64_t to_i64(const json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

Cyclotomic to_cyclotomic(const json& j) {
  if (j.is_object()) {
    std::vector<Integer> c;
    for (const auto& x : j.at("coeffs")) c.push_back(to_big(x));
    return Cyclotomic(to_i64(j.at("n"), "n"), std::move(c));
  }
  return Cyclotomic::integer(to_big(j));
}

ordered_json from_cyclotomic(const Cyclotomic& c) {
  if (c.is_integer()) return from_big(c.to_integer());
  ordered_json o;
  o["n"] = c.conductor();
  o["coeffs"] = ordered_json::array();
  for (const auto& x : c.coefficients()) o["coeffs"].push_back(from_big(x));
  return o;
}

ordered_json group_json(const GroupDescriptor& g) {
  ordered_json o;
  o["name"] = g.name;
  if (g.abelian) {
    o["abelian"] = g.abelian->to_string();
    return o;
  }
  const ClassData& d = *g.classes;
  o["classes"] = ordered_json::array();
  for (const auto& c : d.classes) {
    ordered_json x;
    x["label"] = c.label;
    x["size"] = c.size;
    x["order"] = c.order;
    if (!c.cycle_type.empty()) x["cycle_type"] = c.cycle_type;
    o["classes"].push_back(x);
  }
  o["characters"] = ordered_json::array();
  for (std::size_t i = 0; i < d.num_characters(); ++i) {
    ordered_json row = ordered_json::array();
    for (const auto& c : d.classes) row.push_back(from_cyclotomic(c.chi[i]));
    o["characters"].push_back(row);
  }
  return o;
}

GroupDescriptor group_from(const json& j) {
  const std::string name = j.value("name", "");
  if (j.contains("abelian")) {
    const auto& a = j.at("abelian");
    AbelianShape s;
    if (a.is_string()) {
      s = parse_shape(a.get<std::string>());
    } else {
      for (const auto& [p, layers] : a.items()) s.layers[std::stoll(p)] = layers.get<std::vector<int>>();
      s.validate();
    }
    auto g = GroupDescriptor::from_shape(s);
    if (!name.empty()) g.name = name;
    return g;
  }
  if (!j.contains("classes") || !j.contains("characters"))
    throw ParseError("group needs \"abelian\" or \"classes\" and \"characters\"");
  ClassData d;
  d.name = name;
  for (const auto& c : j.at("classes")) {
    ConjugacyClass k;
    k.label = c.at("label").get<std::string>();
    k.size = to_i64(c.at("size"), "size");
    k.order = to_i64(c.at("order"), "order");
    if (c.contains("cycle_type")) k.cycle_type = c.at("cycle_type").get<std::vector<int>>();
    d.classes.push_back(std::move(k));
  }
  for (const auto& row : j.at("characters")) {
    if (row.size() != d.classes.size()) throw ParseError("character row length differs from class count");
    for (std::size_t i = 0; i < row.size(); ++i) d.classes[i].chi.push_back(to_cyclotomic(row[i]));
    d.dims.push_back(d.classes.front().chi.back().to_integer().get_si());
  }
  validate_class_data(d);
  auto g = GroupDescriptor::from_classes(d);
  if (!name.empty()) g.name = name;
  return g;
}

const char* kind_name(SeriesTerm::Kind k) {
  switch (k) {
    case SeriesTerm::Kind::hecke_j: return "hecke_j";
    case SeriesTerm::Kind::bbar: return "bbar";
    case SeriesTerm::Kind::hauptmodul: return "hauptmodul";
    case SeriesTerm::Kind::tensor: return "tensor";
  }
  return "hecke_j";
}

SeriesTerm::Kind kind_from(const std::string& s) {
  if (s == "hecke_j") return SeriesTerm::Kind::hecke_j;
  if (s == "bbar") return SeriesTerm::Kind::bbar;
  if (s == "hauptmodul") return SeriesTerm::Kind::hauptmodul;
  if (s == "tensor") return SeriesTerm::Kind::tensor;
  throw ParseError("unknown series term kind " + s);
}

ordered_json versioned(const char* kind) {
  ordered_json o;
  o["kind"] = kind;
  o["version"] = kVersion;
  return o;
}

}  // namespace

std::string read_text(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ParseError("cannot read " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GroupDescriptor parse_group(const std::string& json_text) {
  try {
    return group_from(parse_json(json_text));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed group: ") + e.what());
  }
}

GroupDescriptor load_group(const std::filesystem::path& file) { return parse_group(read_text(file)); }

std::string group_to_json(const GroupDescriptor& g) { return group_json(g).dump(2) + "\n"; }

EtaQuotient parse_eta_quotient(const std::string& json_text) {
  const json j = parse_json(json_text);
  try {
    EtaQuotient e;
    e.level = to_i64(j.at("level"), "level");
    for (const auto& [d, r] : j.at("terms").items()) e.terms[std::stoll(d)] = to_i64(r, "exponent");
    e.shift = j.contains("shift") ? to_i64(j.at("shift"), "shift") : 0;
    return e;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed eta quotient: ") + e.what());
  }
}

std::string eta_quotient_to_json(const EtaQuotient& e) {
  ordered_json o;
  o["level"] = e.level;
  o["terms"] = ordered_json::object();
  for (const auto& [d, r] : e.terms) o["terms"][std::to_string(d)] = r;
  o["shift"] = e.shift;
  return o.dump();
}

std::vector<CongruenceRequest> parse_congruence_specs(const std::string& json_text) {
  const json j = parse_json(json_text);
  const auto one = [](const json& x) {
    CongruenceRequest r;
    for (const auto& t : x.at("terms")) {
      if (!t.is_array() || t.size() != 2) throw ParseError("term must be [level, coefficient]");
      r.spec.terms.emplace_back(to_i64(t[0], "level"), to_big(t[1]));
    }
    r.spec.modulus = to_big(x.at("modulus"));
    if (x.contains("prefix")) r.prefix = to_i64(x.at("prefix"), "prefix");
    return r;
  };
  std::vector<CongruenceRequest> out;
  try {
    if (j.is_array())
      for (const auto& x : j) out.push_back(one(x));
    else
      out.push_back(one(j));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed congruence spec: ") + e.what());
  }
  return out;
}

std::string congruence_certificates_to_json(const std::vector<CongruenceCertificate>& certs) {
  ordered_json o = versioned("congruence-certificates");
  o["certificates"] = ordered_json::array();
  for (const auto& c : certs) {
    ordered_json x;
    x["combination"] = format_combination(c.terms);
    x["terms"] = ordered_json::array();
    for (const auto& [N, a] : c.terms) x["terms"].push_back(ordered_json::array({N, from_big(a)}));
    x["modulus"] = c.modulus.get_str();
    x["prefix"] = c.checked_prefix;
    x["sturm"] = c.sturm_bound;
    x["status"] = to_string(c.status);
    if (c.first_bad) x["first_bad"] = *c.first_bad;
    o["certificates"].push_back(x);
  }
  return o.dump(2) + "\n";
}

std::string module_certificate_to_json(const ModuleCertificate& c, std::int64_t rows_precision) {
  ordered_json o = versioned("module-certificate");
  o["group"] = c.group;
  o["mode"] = c.mode;
  o["depth"] = c.depth;
  o["group_order"] = from_big(c.group_order);
  o["status"] = c.pass ? "pass" : "fail";
  o["integrality"] = {{"pass", c.integral}, {"regime", c.integrality_regime}};
  if (c.non_integral_at)
    o["integrality"]["witness"] = {{"row", c.non_integral_at->first}, {"n", c.non_integral_at->second}};
  o["nonnegativity"] = {{"pass", c.nonnegative}, {"regime", c.nonneg_regime}, {"prefix", c.nonneg_prefix}};
  o["nonnegativity"]["threshold_n0"] = c.threshold_n0 ? ordered_json(*c.threshold_n0) : ordered_json(nullptr);
  if (c.negative_at)
    o["nonnegativity"]["witness"] = {{"row", c.negative_at->first}, {"n", c.negative_at->second}};
  o["level_check"] = c.level_check ? ordered_json(*c.level_check ? "pass" : "fail") : ordered_json("skipped");
  ordered_json lim;
  lim["kind"] = to_string(c.limit.kind);
  lim["values"] = c.limit.values;
  if (c.limit.exact) {
    lim["exact"] = ordered_json::array();
    for (const auto& x : *c.limit.exact) lim["exact"].push_back(x.get_str());
  }
  o["limit_profile"] = lim;
  o["rows"] = ordered_json::array();
  for (const auto& r : c.rows) {
    ordered_json x;
    x["label"] = r.block.label;
    x["dim"] = r.block.dim;
    x["count"] = from_big(r.block.count);
    x["valuation"] = r.F.valuation();
    x["coefficients"] = ordered_json::array();
    const std::int64_t top = std::min(r.F.precision(), rows_precision);
    for (std::int64_t n = r.F.valuation(); n < top; ++n) x["coefficients"].push_back(from_rational(r.F.coeff(n)));
    o["rows"].push_back(x);
  }
  return o.dump(2) + "\n";
}

ModuleCertificate parse_module_certificate(const std::string& json_text) {
  const json j = parse_json(json_text);
  try {
    ModuleCertificate c;
    c.group = j.at("group").get<std::string>();
    c.mode = j.at("mode").get<std::string>();
    c.depth = to_i64(j.at("depth"), "depth");
    c.group_order = to_big(j.at("group_order"));
    c.pass = j.at("status") == "pass";
    c.integral = j.at("integrality").at("pass").get<bool>();
    c.integrality_regime = j.at("integrality").at("regime").get<std::string>();
    c.nonnegative = j.at("nonnegativity").at("pass").get<bool>();
    c.nonneg_regime = j.at("nonnegativity").at("regime").get<std::string>();
    c.nonneg_prefix = to_i64(j.at("nonnegativity").at("prefix"), "prefix");
    if (!j.at("nonnegativity").at("threshold_n0").is_null())
      c.threshold_n0 = to_i64(j.at("nonnegativity").at("threshold_n0"), "threshold_n0");
    const std::string lc = j.at("level_check").get<std::string>();
    if (lc != "skipped") c.level_check = lc == "pass";
    const auto& lim = j.at("limit_profile");
    const std::string kind = lim.at("kind").get<std::string>();
    c.limit.kind = kind == "trivial" ? ProfileKind::trivial : kind == "regular" ? ProfileKind::regular : ProfileKind::other;
    c.limit.values = lim.at("values").get<std::vector<double>>();
    if (lim.contains("exact")) {
      c.limit.exact.emplace();
      for (const auto& x : lim.at("exact")) c.limit.exact->push_back(to_rational(x));
    }
    for (const auto& r : j.at("rows")) {
      CharacterBlock b;
      b.label = r.at("label").get<std::string>();
      b.dim = to_i64(r.at("dim"), "dim");
      b.count = to_big(r.at("count"));
      std::vector<Rational> coeffs;
      for (const auto& x : r.at("coefficients")) coeffs.push_back(to_rational(x));
      if (coeffs.empty()) throw ParseError("row " + b.label + " has no coefficients");
      c.rows.push_back({b, QSeriesRational(to_i64(r.at("valuation"), "valuation"), std::move(coeffs))});
    }
    return c;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed module certificate: ") + e.what());
  }
}

void save_assignment(const std::filesystem::path& dir, const GroupDescriptor& g, const TraceAssignment& R) {
  std::filesystem::create_directories(dir);
  ordered_json o = versioned("trace-assignment");
  o["group"] = group_json(g);
  o["mode"] = R.mode;
  o["keying"] = R.keying == TraceAssignment::Keying::order ? "order" : "class";
  o["depth"] = R.depth;
  o["entries"] = ordered_json::array();
  const auto put = [&](const std::string& key, const TraceEntry& e) {
    const std::string file = "R_" + key + ".txt";
    std::ofstream out(dir / file);
    if (!out) throw Error("cannot write " + (dir / file).string());
    write_series(out, e.series);
    ordered_json x;
    x["key"] = key;
    x["level"] = e.level;
    x["series"] = file;
    x["terms"] = ordered_json::array();
    for (const auto& t : e.terms) {
      ordered_json y;
      y["kind"] = kind_name(t.kind);
      y["m"] = t.m;
      y["t"] = t.t;
      if (!t.cycle.empty()) y["cycle"] = t.cycle;
      y["coeff"] = from_big(t.coeff);
      y["lift"] = t.lift;
      x["terms"].push_back(y);
    }
    o["entries"].push_back(x);
  };
  for (const auto& [v, e] : R.by_order) put(std::to_string(v), e);
  for (const auto& [k, e] : R.by_class) put(k, e);
  std::ofstream out(dir / "assignment.json");
  if (!out) throw Error("cannot write " + (dir / "assignment.json").string());
  out << o.dump(2) << "\n";
}

std::pair<GroupDescriptor, TraceAssignment> load_assignment(const std::filesystem::path& dir) {
  const json j = parse_json(read_text(dir / "assignment.json"));
  try {
    GroupDescriptor g = group_from(j.at("group"));
    TraceAssignment R;
    R.mode = j.at("mode").get<std::string>();
    R.keying = j.at("keying") == "order" ? TraceAssignment::Keying::order : TraceAssignment::Keying::cls;
    R.depth = to_i64(j.at("depth"), "depth");
    for (const auto& x : j.at("entries")) {
      TraceEntry e;
      std::ifstream in(dir / x.at("series").get<std::string>());
      if (!in) throw ParseError("missing series file " + x.at("series").get<std::string>());
      e.series = read_series(in);
      e.level = to_i64(x.at("level"), "level");
      for (const auto& y : x.at("terms")) {
        SeriesTerm t;
        t.kind = kind_from(y.at("kind").get<std::string>());
        t.m = to_i64(y.at("m"), "m");
        t.t = to_i64(y.at("t"), "t");
        if (y.contains("cycle")) t.cycle = y.at("cycle").get<std::vector<int>>();
        t.coeff = to_big(y.at("coeff"));
        t.lift = to_i64(y.at("lift"), "lift");
        e.terms.push_back(std::move(t));
      }
      const std::string key = x.at("key").get<std::string>();
      if (R.keying == TraceAssignment::Keying::order)
        R.by_order[std::stoll(key)] = std::move(e);
      else
        R.by_class[key] = std::move(e);
    }
    return {std::move(g), std::move(R)};
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed assignment: ") + e.what());
  }
}

}  // namespace moonshine
