#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "torcert.hpp"

using json = nlohmann::json;
using namespace torcert;

namespace {

struct Output {
  bool as_json = false;
  json doc = json::object();
  std::ostringstream text;

  void put(const std::string& key, const std::string& value) {
    doc[key] = value;
    text << key << " = " << value << "\n";
  }
  void put(const std::string& key, const Int& value) { put(key, value.str()); }
  void put(const std::string& key, std::uint64_t value) {
    doc[key] = value;
    text << key << " = " << value << "\n";
  }
  void put(const std::string& key, long long value) {
    doc[key] = value;
    text << key << " = " << value << "\n";
  }
  void put_flag(const std::string& key, bool value) {
    doc[key] = value;
    text << key << " = " << (value ? "yes" : "no") << "\n";
  }
  void raw(const std::string& line) { text << line << "\n"; }

  void flush() {
    if (as_json)
      std::cout << doc.dump(2) << "\n";
    else
      std::cout << text.str();
  }
};

Int parse_int(const std::string& s) {
  try {
    return Int(s);
  } catch (const std::exception&) {
    throw SyntaxError("not an integer: " + s, 0);
  }
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// Polynomial files: `# vars: a,b,c` and optional `# units: t` headers, other
// `#` lines ignored, remaining lines joined into one polynomial expression.
struct PolyFile {
  std::vector<std::string> vars;
  std::vector<std::string> units;
  std::string body;
};

PolyFile read_poly_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  PolyFile f;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') {
      auto grab = [&](const std::string& tag) -> std::optional<std::string> {
        auto pos = line.find(tag);
        if (pos == std::string::npos) return std::nullopt;
        return line.substr(pos + tag.size());
      };
      if (auto v = grab("vars:")) f.vars = split_csv(*v);
      if (auto u = grab("units:")) f.units = split_csv(*u);
      continue;
    }
    f.body += line;
    f.body += " ";
  }
  if (f.vars.empty()) throw Error("file lacks a '# vars:' header: " + path);
  bool blank = true;
  for (char c : f.body)
    if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
  if (blank) throw Error("file holds no polynomial: " + path);
  return f;
}

std::string read_whole_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

template <class Fn>
int with_field(const Int& chr, Fn&& fn) {
  if (chr == 0) return fn(RationalField{});
  return fn(PrimeField{chr});
}

std::string context_header(const std::vector<std::string>& names,
                           const std::vector<std::string>& units) {
  std::string vars;
  std::string unit_list;
  for (const auto& n : names) {
    if (!vars.empty()) vars += ",";
    vars += n;
  }
  for (const auto& u : units) {
    if (!unit_list.empty()) unit_list += ",";
    unit_list += u;
  }
  std::string out = "# vars: " + vars;
  if (!unit_list.empty()) out += "\n# units: " + unit_list;
  return out;
}

template <class F>
std::vector<std::string> unit_names(const Context<F>& ctx) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < ctx.size(); ++i)
    if (ctx.is_unit_param(i)) out.push_back(ctx.name(i));
  return out;
}

template <class F>
void emit_spec(Output& out, const HypersurfaceSpec<F>& spec,
               const std::string& label) {
  out.doc["source"] = spec.source;
  out.doc["ambient"] = spec.ambient;
  out.doc["vars"] = spec.ctx.names();
  out.doc["units"] = unit_names(spec.ctx);
  out.doc[label] = spec.equation.to_string();
  json params = json::object();
  for (const auto& [key, value] : spec.params) params[key] = value.str();
  out.doc["params"] = params;

  out.raw("# source: " + spec.source);
  out.raw("# ambient: " + spec.ambient);
  out.raw(context_header(spec.ctx.names(), unit_names(spec.ctx)));
  out.raw(label + " = " + spec.equation.to_string());
  std::string pline = "params:";
  for (const auto& [key, value] : spec.params)
    pline += " " + key + "=" + value.str();
  out.raw(pline);
  for (const auto& note : spec.notes) out.raw("note: " + note);
}

int run_pfister(std::uint64_t m, std::uint64_t n, const Int& chr,
                std::optional<std::uint64_t> coefficient, bool relation,
                Output& out) {
  return with_field(chr, [&](auto field) {
    using F = decltype(field);
    if (relation) {
      auto rel = canonical_relation(field, m, n);
      out.doc["relation"] = serialize_relation(rel);
      out.text << serialize_relation(rel);
      return 0;
    }
    auto form = pfister_form(field, m, n);
    out.put("m", m);
    out.put("n", n);
    out.put("variables", std::uint64_t(form.ctx.size()));
    if (coefficient) {
      auto c = pfister_coefficient(form.ctx, n, *coefficient);
      out.put("coefficient_" + std::to_string(*coefficient), c.to_string());
    }
    out.put("form", form.body.to_string());
    (void)sizeof(F);
    return 0;
  });
}

int run_relation(std::uint64_t m, std::uint64_t n, bool verify, const Int& chr,
                 Output& out) {
  return with_field(chr, [&](auto field) {
    auto rel = base_relation(field, m);
    for (std::uint64_t i = 1; i < n; ++i) rel = propagate_relation(rel);
    out.doc["relation"] = serialize_relation(rel);
    out.text << serialize_relation(rel);
    if (verify) {
      std::size_t total = rel.witnesses.size();
      std::size_t good = 0;
      for (const auto& w : rel.witnesses)
        if (verify_steinberg_sum(w.entries, w.root, rel.m).pass) ++good;
      out.doc["witnesses"] = total;
      out.doc["verified"] = good;
      out.text << "witnesses: " << good << "/" << total << " verified\n";
      if (good != total) return 1;
    }
    return 0;
  });
}

int run_twisting(std::uint64_t m, const std::string& file, bool strict_units,
                 const Int& chr, Output& out) {
  auto pf = read_poly_file(file);
  return with_field(chr, [&](auto field) {
    using F = decltype(field);
    Context<F> ctx(field, pf.vars, pf.units);
    auto p = parse_polynomial(pf.body, ctx);
    auto report = is_twisting_type(p, m, strict_units);

    out.put("input", report.input.to_string());
    out.put("m", m);
    out.put("degree", report.input.degree());
    out.put_flag("degree_divisible", report.degree_divisible);
    json checks = json::array();
    for (const auto& c : report.checks) {
      json jc;
      jc["var"] = c.var;
      jc["pure_power"] = c.has_pure_power;
      if (c.has_pure_power) jc["coefficient"] = c.pure_coefficient.to_string();
      jc["root_found"] = c.root_found;
      if (c.root_found) jc["root"] = c.root.to_string();
      if (!c.obstruction.empty()) jc["obstruction"] = c.obstruction;
      jc["pass"] = c.pass;
      checks.push_back(jc);

      std::string line = c.var + ": pure_power=";
      line += c.has_pure_power ? "yes" : "no";
      if (c.has_pure_power)
        line += " coefficient=" + c.pure_coefficient.to_string();
      if (c.root_found) line += " root=" + c.root.to_string();
      if (!c.obstruction.empty()) line += " obstruction=" + c.obstruction;
      line += c.pass ? " pass" : " FAIL";
      out.raw(line);
    }
    out.doc["checks"] = checks;
    out.doc["verdict"] = report.verdict;
    out.raw(std::string("verdict = ") +
            (report.verdict ? "twisting-type" : "not-twisting-type"));
    return report.verdict ? 0 : 1;
  });
}

int run_residue(const std::string& file, const std::string& order_csv,
                bool certify, Output& out) {
  auto sym = parse_symbol(read_whole_file(file));
  auto norm = normalize(sym);
  out.put("m", sym.m);
  out.put("coeff", sym.coeff);
  out.put("normalized_coeff", norm.coeff);
  out.doc["vars"] = sym.vars;
  out.doc["rows"] = sym.rows;
  if (!order_csv.empty()) {
    auto order = split_csv(order_csv);
    std::uint64_t value = iterated_residue(sym, order);
    out.put("order", order_csv);
    out.put("residue", value);
  }
  if (certify) out.put("certified_order", certify_order(sym));
  return 0;
}

int run_construct(const std::string& kind, std::uint64_t N, std::uint64_t d,
                  std::uint64_t m, const Int& p, const Int& chr,
                  const std::string& mode, Output& out) {
  if (kind == "pencil") {
    return with_field(chr, [&](auto field) {
      auto spec = pencil_member(field, N, d, m);
      emit_spec(out, spec, "equation");
      return 0;
    });
  }
  if (kind == "bundle") {
    return with_field(chr, [&](auto field) {
      auto model = bundle_model(field, N, m);
      emit_spec(out, model.spec, "equation");
      out.put("generic_fiber", model.generic_fiber.to_string());
      out.put("exceptional_fiber", model.exceptional_fiber.to_string());
      return 0;
    });
  }
  if (kind == "fiber-check") {
    return with_field(chr, [&](auto field) {
      auto check = special_fiber_check(field, N, m);
      out.raw("# source: special fiber section check, N=" + std::to_string(N) +
              " m=" + std::to_string(m));
      out.doc["source"] = "special fiber section check";
      out.put("fiber", check.fiber.to_string());
      out.put("residual", check.residual.to_string());
      out.put_flag("pass", check.pass);
      return check.pass ? 0 : 1;
    });
  }
  if (kind == "cyclic") {
    return with_field(chr, [&](auto field) {
      auto cover = cyclic_cover(field, N, d, m);
      emit_spec(out, cover.branch, "branch");
      out.put("blowup", cover.blowup.to_string());
      out.put("generic_fiber", cover.generic_fiber.to_string());
      out.put("d_eta", cover.d_eta.to_string());
      out.put("affine_model", cover.affine_model.to_string());
      out.put("head_margin", cover.exponents.head);
      if (cover.exponents.middle_applies)
        out.put("middle_margin", cover.exponents.middle_min);
      out.put("tail_margin", cover.exponents.tail);
      out.put_flag("exponents_pass", cover.exponents.pass);
      return cover.exponents.pass ? 0 : 1;
    });
  }
  if (kind == "example") {
    if (p == 0) throw OutOfRange("--p is required for the explicit example");
    if (mode == "qs") {
      auto ex = explicit_example_rational(N, d, m, p);
      emit_spec(out, ex.spec, "equation");
      out.put("pencil_part", ex.pencil_part.to_string());
      return 0;
    }
    if (mode == "fpst") {
      auto ex = explicit_example_prime(N, d, m, p);
      emit_spec(out, ex.spec, "equation");
      out.put("pencil_part", ex.pencil_part.to_string());
      return 0;
    }
    throw OutOfRange("mode must be qs or fpst");
  }
  throw OutOfRange("unknown construct kind: " + kind);
}

int run_probe_smooth(const Int& q, const std::string& file,
                     const std::vector<std::string>& assigns, const Int& chr,
                     std::uint64_t seed, Output& out) {
  auto pf = read_poly_file(file);
  std::map<std::string, Int> assignments;
  for (const auto& u : pf.units) assignments[u] = 1;
  for (const auto& a : assigns) {
    auto eq = a.find('=');
    if (eq == std::string::npos)
      throw SyntaxError("assignment must look like name=value: " + a, 0);
    assignments[a.substr(0, eq)] = parse_int(a.substr(eq + 1));
  }
  return with_field(chr, [&](auto field) {
    using F = decltype(field);
    Context<F> ctx(field, pf.vars, pf.units);
    HypersurfaceSpec<F> spec{ctx, parse_polynomial(pf.body, ctx),
                             "P^" + std::to_string(pf.vars.size() -
                                                   pf.units.size() - 1),
                             "polynomial file " + file,
                             {},
                             {}};
    auto rep = smoothness_probe(spec, q, assignments);
    out.put("seed", seed);
    out.put("q", rep.q);
    out.put("points_scanned", rep.points_scanned);
    out.put("verdict", rep.verdict);
    if (!rep.witness.empty()) out.put("witness", rep.witness);
    for (const auto& n : rep.notes) out.raw("note: " + n);
    out.doc["notes"] = rep.notes;
    return rep.pass ? 0 : 1;
  });
}

int run_probe_integral(const std::string& file, std::uint64_t trials,
                       const Int& chr, std::uint64_t seed, Output& out) {
  auto pf = read_poly_file(file);
  return with_field(chr, [&](auto field) {
    using F = decltype(field);
    Context<F> ctx(field, pf.vars, pf.units);
    auto p = parse_polynomial(pf.body, ctx);
    auto rep = integrality_probe(p, trials, seed);
    out.put("seed", seed);
    out.put("trials", rep.trials);
    out.put("squarefree_restrictions", rep.squarefree_restrictions);
    out.put("verdict", rep.verdict);
    if (!rep.witness.empty()) out.put("witness", rep.witness);
    for (const auto& n : rep.notes) out.raw("note: " + n);
    out.doc["notes"] = rep.notes;
    return rep.pass ? 0 : 1;
  });
}

int run_bounds(std::uint64_t N, std::uint64_t d, const Int& chr,
               const std::string& check_divisor, Output& out) {
  auto rep = divisor_report(N, d, chr);
  out.put("N", rep.N);
  out.put("d", rep.d);
  out.put("char", rep.chr);
  out.put_flag("fano_valid", rep.fano_valid);
  out.put("n", rep.split.n);
  out.put("r", rep.split.r);

  json divisors = json::array();
  out.raw("   m  m+n<=d  N<=2^(d-m)");
  for (const auto& e : rep.divisors) {
    json je;
    je["m"] = e.m;
    je["by_split"] = e.by_split;
    je["by_log2"] = e.by_log2;
    divisors.push_back(je);
    std::ostringstream line;
    line.width(4);
    line << e.m;
    line << "  " << (e.by_split ? "yes   " : "no    ") << "  "
         << (e.by_log2 ? "yes" : "no");
    out.raw(line.str());
  }
  out.doc["divisors"] = divisors;

  json powers = json::array();
  if (!rep.prime_powers.empty()) out.raw(" p^j  value");
  for (const auto& e : rep.prime_powers) {
    json je;
    je["p"] = e.p;
    je["j"] = e.j;
    je["value"] = e.value;
    powers.push_back(je);
    out.raw(" " + std::to_string(e.p) + "^" + std::to_string(e.j) + "  " +
            std::to_string(e.value));
  }
  out.doc["prime_powers"] = powers;

  out.put("combined", rep.combined);
  out.put("upper", rep.upper);
  out.put_flag("combined_divides_upper", rep.combined_divides_upper);

  int code = 0;
  if (!check_divisor.empty()) {
    Int divisor = parse_int(check_divisor);
    if (divisor == 0) throw OutOfRange("--check-divisor must be nonzero");
    bool divides = rep.combined % divisor == 0;
    out.doc["check_divisor"] = divisor.str();
    out.doc["check_divides"] = divides;
    out.raw(divisor.str() + " divides combined: " + (divides ? "yes" : "no"));
    if (!divides) code = 1;
  }
  out.raw("combined=" + rep.combined.str() + " upper=" + rep.upper.str());
  return code;
}

int run_bounds_cyclic(std::uint64_t N, std::uint64_t m, Output& out) {
  auto bound = cyclic_thresholds(N, m);
  out.put("N", bound.N);
  out.put("m", bound.m);
  out.put("n", bound.n);
  out.put("epsilon", bound.epsilon);
  out.put("min_degree", bound.min_degree);
  out.put("min_degree_log", bound.min_degree_log);
  auto exps =
      cyclic_exponent_report(N, bound.min_degree.convert_to<std::uint64_t>(), m);
  out.put("head_margin", exps.head);
  if (exps.middle_applies) out.put("middle_margin", exps.middle_min);
  out.put("tail_margin", exps.tail);
  out.put_flag("exponents_pass", exps.pass);
  return exps.pass ? 0 : 1;
}

int run_bounds_range(std::uint64_t N, std::uint64_t m, Output& out) {
  auto range = order_dimension_range(N, m);
  out.put("N", N);
  out.put("m", m);
  out.doc["dimensions"] = range;
  std::string line = "dimensions:";
  for (auto n : range) line += " " + std::to_string(n);
  out.raw(line);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact certificates for torsion orders of hypersurfaces"};
  app.require_subcommand(1);

  std::string format = "text";
  std::uint64_t seed = 0;
  std::string chr_text = "0";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", seed, "seed for randomized probes");
  app.add_option("--char", chr_text, "field characteristic (0 or a prime)");

  // pfister
  auto* pfister = app.add_subcommand("pfister", "diagonal form combinations");
  pfister->fallthrough();
  std::uint64_t pf_m = 2, pf_n = 1;
  std::optional<std::uint64_t> pf_coeff;
  bool pf_relation = false;
  pfister->add_option("--m", pf_m, "power")->required();
  pfister->add_option("--n", pf_n, "fold count")->required();
  std::uint64_t pf_coeff_raw = 0;
  auto* pf_coeff_opt =
      pfister->add_option("--coefficient", pf_coeff_raw, "coefficient index");
  pfister->add_flag("--relation", pf_relation,
                    "print the canonical symbol relation");

  // relation
  auto* relation = app.add_subcommand("relation", "universal symbol relations");
  relation->fallthrough();
  std::uint64_t rel_m = 2, rel_n = 1;
  bool rel_verify = false;
  relation->add_option("--m", rel_m, "torsion exponent")->required();
  relation->add_option("--n", rel_n, "symbol length")->required();
  relation->add_flag("--verify", rel_verify, "re-verify stored witnesses");

  // twisting
  auto* twisting = app.add_subcommand("twisting", "twisting-type verdict");
  twisting->fallthrough();
  std::uint64_t tw_m = 2;
  std::string tw_file;
  bool tw_strict = false;
  twisting->add_option("--m", tw_m, "power")->required();
  twisting->add_option("--poly-file", tw_file, "polynomial file")->required();
  twisting->add_flag("--strict-units", tw_strict,
                     "treat declared unit parameters as m-th powers");

  // residue
  auto* residue = app.add_subcommand("residue", "monomial symbol residues");
  residue->fallthrough();
  std::string rs_file, rs_order;
  bool rs_certify = false;
  residue->add_option("--file", rs_file, "symbol file")->required();
  residue->add_option("--order", rs_order, "comma-separated residue order");
  residue->add_flag("--certify", rs_certify, "certify the symbol order");

  // construct
  auto* construct = app.add_subcommand("construct", "hypersurface equations");
  construct->fallthrough();
  std::string ct_kind;
  std::uint64_t ct_N = 3, ct_d = 4, ct_m = 2;
  std::string ct_p = "0", ct_mode = "qs";
  construct
      ->add_option("kind", ct_kind, "pencil|bundle|fiber-check|cyclic|example")
      ->required()
      ->check(CLI::IsMember({"pencil", "bundle", "fiber-check", "cyclic",
                             "example", "z", "y", "y0-check"}));
  construct->add_option("--N", ct_N, "ambient dimension parameter");
  construct->add_option("--d", ct_d, "degree");
  construct->add_option("--m", ct_m, "torsion exponent");
  construct->add_option("--p", ct_p, "twist prime for the explicit example");
  construct->add_option("--mode", ct_mode, "qs|fpst");

  // example (shorthand for construct example)
  auto* example = app.add_subcommand("example", "explicit smooth example");
  example->fallthrough();
  std::uint64_t ex_N = 3, ex_d = 4, ex_m = 2;
  std::string ex_p = "3", ex_mode = "qs";
  example->add_option("--N", ex_N, "ambient dimension parameter");
  example->add_option("--d", ex_d, "degree");
  example->add_option("--m", ex_m, "torsion exponent");
  example->add_option("--p", ex_p, "twist prime");
  example->add_option("--mode", ex_mode, "qs|fpst");

  // probe
  auto* probe = app.add_subcommand("probe", "finite-field probes");
  probe->fallthrough();
  std::string pr_kind, pr_file, pr_q = "5";
  std::uint64_t pr_trials = 32;
  std::vector<std::string> pr_assign;
  probe->add_option("kind", pr_kind, "smooth|integral")
      ->required()
      ->check(CLI::IsMember({"smooth", "integral"}));
  probe->add_option("--q", pr_q, "field size (p or p^2)");
  probe->add_option("--file", pr_file, "polynomial file")->required();
  probe->add_option("--trials", pr_trials, "line restrictions to try");
  probe->add_option("--assign", pr_assign,
                    "unit parameter assignment name=value");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "divisibility certificates");
  bounds->fallthrough();
  bounds->require_subcommand(0, 1);
  std::uint64_t bd_N = 3, bd_d = 4;
  std::string bd_check;
  bounds->add_option("--N", bd_N, "hypersurface dimension");
  bounds->add_option("--d", bd_d, "degree");
  bounds->add_option("--check-divisor", bd_check,
                     "verify this integer divides the combined bound");

  auto* cyclic = bounds->add_subcommand("cyclic", "cyclic cover thresholds");
  cyclic->fallthrough();
  std::uint64_t cy_N = 3, cy_m = 2;
  cyclic->add_option("--N", cy_N, "ambient projective dimension")->required();
  cyclic->add_option("--m", cy_m, "cover degree")->required();

  auto* range = bounds->add_subcommand("range", "order-detecting dimensions");
  range->alias("asok");
  range->fallthrough();
  std::uint64_t rg_N = 3, rg_m = 2;
  range->add_option("--N", rg_N, "very general member dimension")->required();
  range->add_option("--m", rg_m, "order to detect")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Output out;
  out.as_json = format == "json";

  try {
    Int chr = parse_int(chr_text);
    int code = 2;
    if (*pfister) {
      if (pf_coeff_opt->count() > 0) pf_coeff = pf_coeff_raw;
      code = run_pfister(pf_m, pf_n, chr, pf_coeff, pf_relation, out);
    } else if (*relation) {
      code = run_relation(rel_m, rel_n, rel_verify, chr, out);
    } else if (*twisting) {
      code = run_twisting(tw_m, tw_file, tw_strict, chr, out);
    } else if (*residue) {
      code = run_residue(rs_file, rs_order, rs_certify, out);
    } else if (*construct) {
      std::string kind = ct_kind;
      if (kind == "z") kind = "pencil";
      if (kind == "y") kind = "bundle";
      if (kind == "y0-check") kind = "fiber-check";
      code = run_construct(kind, ct_N, ct_d, ct_m, parse_int(ct_p), chr,
                           ct_mode, out);
    } else if (*example) {
      code = run_construct("example", ex_N, ex_d, ex_m, parse_int(ex_p), chr,
                           ex_mode, out);
    } else if (*probe) {
      if (pr_kind == "smooth")
        code = run_probe_smooth(parse_int(pr_q), pr_file, pr_assign, chr, seed,
                                out);
      else
        code = run_probe_integral(pr_file, pr_trials, chr, seed, out);
    } else if (*bounds) {
      if (*cyclic)
        code = run_bounds_cyclic(cy_N, cy_m, out);
      else if (*range)
        code = run_bounds_range(rg_N, rg_m, out);
      else
        code = run_bounds(bd_N, bd_d, chr, bd_check, out);
    }
    out.flush();
    return code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
