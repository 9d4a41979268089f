// moonshine: command-line front end.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "moonshine/arith.hpp"
#include "moonshine/congruence.hpp"
#include "moonshine/error.hpp"
#include "moonshine/etalab.hpp"
#include "moonshine/hecke.hpp"
#include "moonshine/io.hpp"
#include "moonshine/module.hpp"
#include "moonshine/qseries.hpp"
#include "moonshine/rademacher.hpp"
#include "moonshine/series_io.hpp"
#include "moonshine/version.hpp"

using namespace moonshine;

namespace {

constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kPrecision = 3;

std::vector<std::int64_t> parse_list(const std::string& s) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stoll(item));
  if (out.empty()) throw DomainError("empty list: " + s);
  return out;
}

std::string factored(const Integer& m) {
  if (m == 1) return "1";
  Integer r = m;
  std::string out;
  for (unsigned long p = 2; r > 1 && p < 1000000; ++p) {
    int k = 0;
    while (mpz_divisible_ui_p(r.get_mpz_t(), p)) r /= p, ++k;
    if (k == 0) continue;
    if (!out.empty()) out += " ";
    out += std::to_string(p) + "^" + std::to_string(k);
  }
  if (r > 1) out += (out.empty() ? "" : " ") + r.get_str();
  return out;
}

std::string sci(double x) {
  if (x == 0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4e", x);
  return buf;
}

std::string fmt_rational(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  if (x.get_den() < 1000000) return x.get_str();
  return sci(x.get_d());
}

/// "(R1 + 9R2 + 8R3 + 6R4)/24" with `sym` the symbol prefix.
std::string weighted_sum(const std::map<std::int64_t, Integer>& a, const std::string& sym, const Integer& order) {
  std::string s;
  for (auto [r, c] : a) {
    if (c == 0) continue;
    const bool neg = c < 0;
    if (neg) c = -c;
    if (s.empty())
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    if (c != 1) s += c.get_str();
    s += sym + std::to_string(r);
  }
  if (s.empty()) return "0";
  return order == 1 ? s : "(" + s + ")/" + order.get_str();
}

std::string term_symbol(const SeriesTerm& t) {
  switch (t.kind) {
    case SeriesTerm::Kind::hecke_j: return t.m == 1 ? "J" : "R1";
    case SeriesTerm::Kind::bbar: return "B" + std::to_string(t.m);
    case SeriesTerm::Kind::hauptmodul: return "T" + std::to_string(t.m);
    case SeriesTerm::Kind::tensor: {
      std::string s = "J(";
      for (std::size_t i = 0; i < t.cycle.size(); ++i) s += (i ? "," : "") + std::to_string(t.cycle[i]);
      return s + ")";
    }
  }
  return "?";
}

/// The block's multiplicity series written in the building blocks of the entries.
std::string expanded_form(const CharacterBlock& b, const TraceAssignment& R, const Integer& order) {
  std::map<std::string, Rational> acc;
  for (const auto& [r, a] : b.a) {
    const auto& e = R.by_order.at(r);
    for (const auto& t : e.terms) acc[term_symbol(t)] += Rational(a * t.coeff) / Rational(order);
  }
  std::string s;
  // identity term first
  std::vector<std::pair<std::string, Rational>> items;
  for (const auto& [k, v] : acc)
    if (k == "R1" || k == "J") items.insert(items.begin(), {k, v});
    else
      items.emplace_back(k, v);
  for (auto [k, v] : items) {
    v.canonicalize();
    if (v == 0) continue;
    const bool neg = v < 0;
    if (neg) v = -v;
    if (s.empty())
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    if (v != 1) s += fmt_rational(v);
    s += k;
  }
  return s.empty() ? "0" : s;
}

GroupDescriptor group_arg(const std::string& path) { return load_group(path); }

TraceAssignment build(const GroupDescriptor& g, const std::string& mode, std::int64_t depth, const std::string& lift,
                      std::int64_t regular, std::int64_t prec, std::int64_t scan) {
  TraceAssignment R;
  if (mode == "hauptmodul") {
    R = hauptmodul_assignment(g, prec);
  } else if (mode == "tensor") {
    R = tensor_assignment(g, prec);
  } else if (mode == "theorem12") {
    std::int64_t p = 1;
    if (lift == "auto") {
      const auto base = theorem12_construct(g, depth, scan + 1);
      p = find_lift_prime(base, g, scan);
      std::cout << "lift prime: " << p << "\n";
    } else if (!lift.empty()) {
      p = std::stoll(lift);
    }
    R = theorem12_construct(g, depth, prec, p);
  } else {
    throw DomainError("unknown mode " + mode);
  }
  if (regular > 0) R = regularize(R, g, regular, prec);
  return R;
}

void print_certificate(const ModuleCertificate& c) {
  std::cout << (c.pass ? "PASS" : "FAIL") << " " << c.group << " mode=" << c.mode << " depth=" << c.depth << "\n";
  std::cout << "  integrality: " << (c.integral ? "pass" : "fail") << " (" << c.integrality_regime << ")";
  if (c.non_integral_at)
    std::cout << " at " << c.rows[c.non_integral_at->first].block.label << " q^" << c.non_integral_at->second;
  std::cout << "\n  nonnegativity: " << (c.nonnegative ? "pass" : "fail") << " (" << c.nonneg_regime << ", prefix "
            << c.nonneg_prefix;
  if (c.threshold_n0) std::cout << ", n0 = " << *c.threshold_n0;
  std::cout << ")";
  if (c.negative_at) std::cout << " at " << c.rows[c.negative_at->first].block.label << " q^" << c.negative_at->second;
  std::cout << "\n  level check: " << (c.level_check ? (*c.level_check ? "pass" : "fail") : "skipped") << "\n";
  std::cout << "  limit profile: " << to_string(c.limit.kind);
  if (c.limit.exact) {
    std::cout << " (";
    for (std::size_t i = 0; i < c.limit.exact->size(); ++i)
      std::cout << (i ? ", " : "") << (*c.limit.exact)[i].get_str();
    std::cout << ")";
  }
  std::cout << "\n";
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moonshine modules from Hauptmoduln and Hecke operators"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  int code = 0;

  // expand
  auto* expand_cmd = app.add_subcommand("expand", "q-expansion of a classical form");
  std::string which;
  std::int64_t prec = 10;
  bool pretty_out = false;
  expand_cmd->add_option("form", which, "J, delta, eta, eisenstein4 or eisenstein6")
      ->required()
      ->check(CLI::IsMember({"J", "delta", "eta", "eisenstein4", "eisenstein6"}));
  expand_cmd->add_option("--prec", prec, "exponents below this bound")->check(CLI::Range(1, 1 << 24));
  expand_cmd->add_flag("--pretty", pretty_out, "one-line rendering");
  expand_cmd->callback([&] {
    QSeries s = which == "J"     ? j_function(prec)
                : which == "delta" ? delta(prec)
                : which == "eta"   ? eta_expansion(prec)
                : which == "eisenstein4" ? eisenstein(4, prec)
                                         : eisenstein(6, prec);
    if (pretty_out)
      std::cout << pretty(s, prec) << "\n";
    else
      write_series(std::cout, s);
  });

  // hauptmodul
  auto* haupt_cmd = app.add_subcommand("hauptmodul", "normalized Hauptmodul of Gamma_0(N)");
  std::int64_t level = 1;
  bool derive = false;
  haupt_cmd->add_option("N", level, "genus-zero level")->required();
  haupt_cmd->add_flag("--derive", derive, "rerun the eta-quotient search");
  haupt_cmd->add_option("--prec", prec, "exponents below this bound")->check(CLI::Range(0, 1 << 24));
  haupt_cmd->callback([&] {
    if (!is_genus_zero_level(level)) throw DomainError("level " + std::to_string(level) + " is not genus zero");
    if (level > 1) {
      const EtaQuotient& table = hauptmodul_quotient(level);
      std::cout << "quotient: " << eta_quotient_to_json(table) << "\n";
      if (derive) {
        const EtaQuotient found = find_hauptmodul_quotient(level);
        std::cout << "derived:  " << eta_quotient_to_json(found) << "\n";
        std::cout << (found == table ? "matches built-in table" : "differs from built-in table") << "\n";
        if (!(found == table)) code = kFail;
      }
    }
    std::cout << pretty(hauptmodul(level, prec), prec + 1) << "\n";
  });

  // congruence
  auto* cong_cmd = app.add_subcommand("congruence", "congruences between Hauptmoduln");
  cong_cmd->require_subcommand(1);
  std::string spec_file;
  bool as_json = false;
  auto* verify_cmd = cong_cmd->add_subcommand("verify", "check congruences from a JSON spec");
  verify_cmd->add_option("--spec", spec_file, "JSON file")->required()->check(CLI::ExistingFile);
  verify_cmd->add_flag("--json", as_json, "print certificates as JSON");
  verify_cmd->callback([&] {
    std::vector<CongruenceCertificate> certs;
    for (const auto& r : parse_congruence_specs(read_text(spec_file))) {
      certs.push_back(verify_congruence(r.spec.terms, r.spec.modulus, r.prefix));
      if (certs.back().status == CertificateStatus::fail) code = kFail;
    }
    if (as_json) {
      std::cout << congruence_certificates_to_json(certs);
      return;
    }
    for (const auto& c : certs) {
      std::cout << std::left << std::setw(8) << to_string(c.status) << format_combination(c.terms) << " = 0 mod "
                << c.modulus << " (prefix " << c.checked_prefix << ", Sturm " << c.sturm_bound << ")";
      if (c.first_bad) std::cout << " first failure at q^" << *c.first_bad;
      std::cout << "\n";
    }
  });

  std::string levels_arg;
  std::int64_t prime = 2;
  std::int64_t prefix = -1;
  auto* discover_cmd = cong_cmd->add_subcommand("discover", "largest k with a relation mod p^k");
  discover_cmd->add_option("--levels", levels_arg, "comma-separated levels, first one normalized")->required();
  discover_cmd->add_option("--prime", prime, "prime p")->required();
  discover_cmd->add_option("--prefix", prefix, "last exponent checked (default: Sturm prefix)");
  discover_cmd->callback([&] {
    const auto levels = parse_list(levels_arg);
    if (!arith::is_prime(prime)) throw DomainError(std::to_string(prime) + " is not prime");
    const std::int64_t pre = prefix >= 0 ? prefix : conservative_prefix(levels);
    const auto rel = max_prime_power_relation(levels, prime, pre);
    std::cout << "k=" << rel.k << "\n";
    std::cout << "modulus: " << prime << "^" << rel.k << "\n";
    std::cout << "prefix: " << pre << "\n";
    std::cout << "witness:";
    for (std::size_t i = 0; i < levels.size(); ++i) std::cout << " " << rel.witness[i] << "*T" << levels[i];
    std::cout << "\n";
  });

  auto* appendix_cmd = cong_cmd->add_subcommand("appendix-a", "replay the table of maximal Hauptmodul congruences");
  appendix_cmd->callback([&] {
    for (const auto& row : hauptmodul_congruence_table()) {
      const auto c = verify_congruence(row.terms, row.modulus);
      bool maximal = true;
      for (const auto& [p, k] : arith::factor(row.modulus.get_si()))
        maximal = maximal && verify_congruence(row.terms, row.modulus * p).status == CertificateStatus::fail;
      std::cout << "0 = " << std::left << std::setw(20) << format_combination(row.terms) << " mod " << std::setw(10)
                << factored(row.modulus) << " " << std::setw(8) << to_string(c.status) << "prefix " << std::setw(4)
                << c.checked_prefix << (maximal ? "maximal" : "not maximal") << "\n";
      if (c.status != CertificateStatus::pass || !maximal) code = kFail;
    }
  });

  // abelian
  auto* ab_cmd = app.add_subcommand("abelian", "abelian groups with Hauptmodul traces");
  ab_cmd->require_subcommand(1);
  std::int64_t max_order = 1 << 16;
  bool show_all = false;
  auto* classify_cmd = ab_cmd->add_subcommand("classify", "classify genus-zero abelian shapes");
  classify_cmd->add_option("--max-order", max_order, "largest group order searched")->check(CLI::PositiveNumber);
  classify_cmd->add_flag("--all", show_all, "also list rejected shapes with reasons");
  classify_cmd->callback([&] {
    std::size_t total = 0, accepted = 0;
    std::vector<std::string> diffs;
    for (const auto& s : genus_zero_shapes(default_classification_region())) {
      if (s.order() > max_order) continue;
      const auto e = classify_shape(s);
      ++total;
      if (e.accepted) ++accepted;
      if (e.accepted || show_all)
        std::cout << (e.accepted ? "accept " : "reject ") << s.to_string() << (e.accepted ? "" : "  " + e.reason)
                  << "\n";
      if (e.accepted != in_published_table(s))
        diffs.push_back(s.to_string() + (e.accepted ? " accepted, not in published table"
                                                    : " rejected, in published table: " + e.reason));
    }
    std::cout << accepted << " of " << total << " shapes accepted\n";
    for (const auto& d : diffs) std::cout << "differs: " << d << "\n";
  });

  std::string group_file;
  auto* check_cmd = ab_cmd->add_subcommand("check", "certify the Hauptmodul module of one abelian group");
  check_cmd->add_option("--group", group_file, "group JSON")->required()->check(CLI::ExistingFile);
  check_cmd->callback([&] {
    const auto g = group_arg(group_file);
    if (!g.abelian) throw DomainError("group is not given by an abelian shape");
    const auto e = classify_shape(*g.abelian);
    if (!e.accepted) {
      std::cout << "FAIL " << g.name << ": " << e.reason << "\n";
      code = kFail;
      return;
    }
    const auto c = certify(hauptmodul_assignment(g, 10), g, 10);
    print_certificate(c);
    if (!c.pass) code = kFail;
  });

  // module
  auto* mod_cmd = app.add_subcommand("module", "trace assignments and certificates");
  mod_cmd->require_subcommand(1);
  std::string mode = "hauptmodul", lift, out_dir, cert_file;
  std::int64_t depth = 0, regular = 0, scan = 400;
  std::int64_t mprec = 10;
  auto* mbuild = mod_cmd->add_subcommand("build", "build and certify a trace assignment");
  mbuild->add_option("--group", group_file, "group JSON")->required()->check(CLI::ExistingFile);
  mbuild->add_option("--mode", mode, "construction")->check(CLI::IsMember({"hauptmodul", "theorem12", "tensor"}));
  mbuild->add_option("--depth", depth, "d for theorem12 (default h + 1)");
  mbuild->add_option("--lift", lift, "Hecke lift prime or auto");
  mbuild->add_option("--regularize", regular, "add |G| J|pT(p) to the identity trace");
  mbuild->add_option("--prec", mprec, "certificate window: exponents below this bound")->check(CLI::PositiveNumber);
  mbuild->add_option("--scan", scan, "scan length for --lift auto")->check(CLI::PositiveNumber);
  mbuild->add_option("--out", out_dir, "write the assignment to this directory");
  mbuild->add_option("--certificate", cert_file, "write the certificate JSON here");
  mbuild->callback([&] {
    const auto g = group_arg(group_file);
    const std::int64_t d = depth > 0 ? depth : h_of(g) + 1;
    const auto R = build(g, mode, d, lift, regular, mprec, scan);
    if (!out_dir.empty()) save_assignment(out_dir, g, R);
    const auto c = certify(R, g, mprec);
    print_certificate(c);
    if (!cert_file.empty()) write_file(cert_file, module_certificate_to_json(c, mprec));
    if (!c.pass) code = kFail;
  });

  std::string assignment_dir;
  auto* mcert = mod_cmd->add_subcommand("certify", "certify a saved trace assignment");
  mcert->add_option("--assignment", assignment_dir, "directory written by module build --out")
      ->required()
      ->check(CLI::ExistingDirectory);
  mcert->add_option("--prec", mprec, "exponents below this bound")->check(CLI::PositiveNumber);
  mcert->add_option("--certificate", cert_file, "write the certificate JSON here");
  mcert->callback([&] {
    const auto [g, R] = load_assignment(assignment_dir);
    const auto c = certify(R, g, mprec);
    print_certificate(c);
    if (!cert_file.empty()) write_file(cert_file, module_certificate_to_json(c, mprec));
    if (!c.pass) code = kFail;
  });

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "floating-point coefficient formulas");
  oracle_cmd->require_subcommand(1);
  std::string kind, args;
  std::int64_t cmax = 1000;
  auto* est_cmd = oracle_cmd->add_subcommand("estimate", "truncated Rademacher-type sum");
  est_cmd->add_option("--kind", kind, "heckej or hauptmodul")->required()->check(CLI::IsMember({"heckej", "hauptmodul"}));
  est_cmd->add_option("--args", args, "m,n for heckej; N,n for hauptmodul")->required();
  est_cmd->add_option("--cmax", cmax, "largest c summed")->check(CLI::PositiveNumber);
  est_cmd->callback([&] {
    const auto a = parse_list(args);
    if (a.size() != 2) throw DomainError("--args takes two integers");
    const auto [m, n] = std::pair{a[0], a[1]};
    CoeffEstimate e;
    Integer exact;
    if (kind == "heckej") {
      e = coeff_estimate_hecke_j(m, n, cmax);
      exact = hecke(j_function(hecke_input_precision(m, n + 1)), m).coeff(n);
    } else {
      e = coeff_estimate_hauptmodul(m, n, cmax);
      exact = hauptmodul(m, n + 1).coeff(n);
    }
    std::cout << "estimate: " << std::setprecision(17) << e.value << "\n";
    std::cout << "cutoff c: " << e.cutoff_c << "\n";
    std::cout << "tail bound: " << e.tail_bound << "\n";
    std::cout << "exact: " << exact << "\n";
    if (exact != 0) std::cout << "relative error: " << std::abs(e.value - exact.get_d()) / std::abs(exact.get_d()) << "\n";
  });

  // report
  auto* rep_cmd = app.add_subcommand("report", "tables in the layout of the printed figures");
  rep_cmd->require_subcommand(1);
  std::string rows_arg = "1,2,3";
  auto* prop_cmd = rep_cmd->add_subcommand("proportions", "delta(mult_i(n)) per character block");
  prop_cmd->add_option("--certificate", cert_file, "module certificate JSON")->required()->check(CLI::ExistingFile);
  prop_cmd->add_option("--rows", rows_arg, "comma-separated n");
  prop_cmd->callback([&] {
    const auto c = parse_module_certificate(read_text(cert_file));
    std::cout << std::left << std::setw(6) << "n";
    for (const auto& r : c.rows) {
      std::string h = "delta(" + r.block.label + ")";
      if (r.block.count != 1) h += " x" + r.block.count.get_str();
      std::cout << std::setw(24) << h;
    }
    std::cout << "\n";
    for (std::int64_t n : parse_list(rows_arg)) {
      std::cout << std::setw(6) << n;
      const auto d = proportions(c, n);
      for (const auto& x : d) std::cout << std::setw(24) << (x == 0 ? std::string("0") : sci(x.get_d()));
      std::cout << "\n";
    }
    std::cout << std::setw(6) << "inf";
    for (std::size_t i = 0; i < c.rows.size(); ++i) {
      std::string v = c.limit.exact ? (*c.limit.exact)[i].get_str()
                                    : (i < c.limit.values.size() ? sci(c.limit.values[i]) : "?");
      std::cout << std::setw(24) << v;
    }
    std::cout << "\n";
  });

  std::int64_t terms = 4;
  auto* mult_cmd = rep_cmd->add_subcommand("multiplicities", "multiplicity series as combinations of traces");
  mult_cmd->add_option("--group", group_file, "group JSON")->required()->check(CLI::ExistingFile);
  mult_cmd->add_option("--mode", mode, "construction")->check(CLI::IsMember({"hauptmodul", "theorem12"}));
  mult_cmd->add_option("--depth", depth, "d for theorem12 (default h + 1)");
  mult_cmd->add_option("--terms", terms, "coefficients shown")->check(CLI::PositiveNumber);
  mult_cmd->callback([&] {
    const auto g = group_arg(group_file);
    const std::int64_t d = depth > 0 ? depth : h_of(g) + 1;
    std::int64_t p = terms + 2;
    if (mode == "theorem12") {
      const auto orders = g.element_orders();
      p += h_of(g) * *std::max_element(orders.begin(), orders.end());
    }
    const auto R = mode == "hauptmodul" ? hauptmodul_assignment(g, p) : theorem12_construct(g, d, p);
    const auto blocks = character_blocks(g);
    const auto F = multiplicity_series(g, blocks, R);
    const std::string sym = mode == "hauptmodul" ? "T" : "R";
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      std::cout << "F[" << blocks[i].label << "]";
      if (blocks[i].count != 1) std::cout << " x" << blocks[i].count;
      std::cout << " = " << weighted_sum(blocks[i].a, sym, g.order()) << "\n";
      if (mode == "theorem12") std::cout << "  = " << expanded_form(blocks[i], R, g.order()) << "\n";
      if (is_integral(F[i])) {
        const QSeries f = to_integer(F[i]);
        std::cout << "  = " << pretty(f, terms) << "\n";
      }
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  } catch (const PrecisionExhausted& e) {
    std::cerr << "precision exhausted: " << e.what() << "\n";
    return kPrecision;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return code;
}
