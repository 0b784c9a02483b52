#include "gsla/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "gsla/catalog.hpp"
#include "gsla/io.hpp"

namespace gsla {

namespace {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
  Json witness;  // null when passed
};

struct Settings {
  std::string input = "-";
  std::string output;
  bool json = false;
  ProbeOptions probe;
  std::string commute_order;
  std::string field = "Q";
  std::vector<std::string> params;
};

class Report {
 public:
  Report(std::string command, const Settings& s) {
    doc_ = Json{{"format", kFormat}, {"tool", "gsla"}, {"version", kVersion}, {"command", std::move(command)}};
    doc_["seed"] = s.probe.seed;
    doc_["caps"] = {{"probes", s.probe.probes}, {"max_subsets", s.probe.max_subsets}};
  }

  void add(Check c) { checks_.push_back(std::move(c)); }
  void add(const std::vector<Certificate>& certs) {
    for (const auto& c : certs) checks_.push_back({c.name, c.passed, c.detail, c.passed ? Json() : Json(c.detail)});
  }
  Json& operator[](const char* key) { return doc_[key]; }

  /// Fills verdict and certificates; returns the exit code.
  int finish(const std::string& verdict, int code) {
    doc_["verdict"] = verdict;
    Json certs = Json::array();
    std::string first_failed;
    for (const auto& c : checks_) {
      Json j{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}};
      if (!c.passed) {
        j["witness"] = c.witness;
        if (first_failed.empty()) first_failed = c.name;
      }
      certs.push_back(j);
    }
    doc_["certificates"] = certs;
    if (code == kNegative) doc_["failed"] = first_failed.empty() ? verdict : first_failed;
    doc_["exit"] = code;
    return code;
  }

  const Json& doc() const { return doc_; }
  const std::vector<Check>& checks() const { return checks_; }

 private:
  Json doc_;
  std::vector<Check> checks_;
};

int code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::GradingMismatch:
    case ErrorCode::FieldMismatch:
    case ErrorCode::AmbientMismatch:
    case ErrorCode::BadCharacteristic:
      return kInvalid;
    case ErrorCode::NonSplit:
    case ErrorCode::SearchCapExceeded:
      return kInconclusive;
    default:
      return kNegative;
  }
}

std::string message(const Error& e) {
  std::string m = e.what();
  std::string prefix = std::string(error_code_name(e.code())) + ": ";
  return m.rfind(prefix, 0) == 0 ? m.substr(prefix.size()) : m;
}

int fail_with(Report& r, const Error& e) {
  int code = code_for(e.code());
  std::string name(error_code_name(e.code()));
  r.add({name, false, message(e), Json{{"error", name}}});
  return r.finish(code == kInvalid ? "invalid-input" : code == kInconclusive ? "inconclusive" : "negative", code);
}

std::vector<std::size_t> parse_order(const std::string& text) {
  std::vector<std::size_t> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      long v = std::stol(tok, &used);
      if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::InvalidArgument, "--commute-order: '" + tok + "' is not an index");
    }
  }
  return out;
}

Json graded_json(const GradedVerdict& v) {
  Json j{{"kind", std::string(graded_kind_name(v.kind))}, {"tier", v.tier}, {"evidence", v.evidence}};
  if (v.witness) j["witness"] = to_json(*v.witness);
  return j;
}

std::string simplicity_name(SimplicityKind k) {
  switch (k) {
    case SimplicityKind::SimpleCertified: return "SimpleCertified";
    case SimplicityKind::NotSimple: return "NotSimple";
    default: return "Unknown";
  }
}

std::filesystem::path dir_of(const std::string& file) {
  return file == "-" ? std::filesystem::current_path() : std::filesystem::path(file).parent_path();
}

// ---- commands ----

int cmd_verify(const Settings& s, std::istream& in, Report& r) {
  GradedLieAlgebra g = algebra_from_json(read_json(s.input, in));
  AlgebraReport a = verify_algebra(g);
  auto first = [](const auto& v) { return v.empty() ? Json() : Json(v.front()); };
  r.add({"antisymmetry", a.antisymmetry.empty(), std::to_string(a.antisymmetry.size()) + " violating pairs",
         first(a.antisymmetry)});
  r.add({"jacobi", a.jacobi.empty(), std::to_string(a.jacobi.size()) + " violating triples", first(a.jacobi)});
  r.add({"grading", a.grading.empty(), std::to_string(a.grading.size()) + " brackets leaving their component",
         first(a.grading)});
  r["dim"] = g.dim();
  r["minimal"] = a.minimal;
  if (!a.ok()) return r.finish("invalid", kNegative);
  r["graded"] = graded_json(graded_simple_check(g, s.probe));
  return r.finish("valid", kPositive);
}

int cmd_loop_build(const Settings& s, std::istream& in, Report& r) {
  GradedLieAlgebra a = algebra_from_json(read_json(s.input, in));
  LoopAlgebra l = loop_algebra(a.group(), a.grading().subgroup(), a);
  r["algebra"] = to_json(l);
  r["dim"] = l.underlying.dim();
  r.add({"dimension", l.underlying.dim() == a.dim() * l.p.order(), "dim a * |P|", Json()});
  return r.finish("built", kPositive);
}

int cmd_decompose(const Settings& s, std::istream& in, Report& r) {
  Json doc = read_json(s.input, in);
  auto l = loop_from_json(doc);
  if (!l) throw Error(ErrorCode::ParseError, "$.loop: missing (decompose needs loop data)");
  LoopDecomposition d = loop_ideal_decomposition(*l);
  Json ideals = Json::array();
  for (std::size_t k = 0; k < d.ideals.size(); ++k)
    ideals.push_back({{"character", d.chars[k].exps}, {"basis", to_json(d.ideals[k])}, {"iso", to_json(d.isos[k])}});
  r["count"] = d.ideals.size();
  r["ideals"] = ideals;
  r.add({"count", true, std::to_string(d.ideals.size()) + " = |P|", Json()});
  r.add({"commuting", true, "pairwise brackets vanish", Json()});
  r.add({"direct-sum", true, "ideals sum directly to g", Json()});
  r.add({"isomorphic", true, "each ideal is graded-isomorphic to a", Json()});
  return r.finish("decomposed", kPositive);
}

int cmd_recognize(const Settings& s, std::istream& in, Report& r) {
  GradedLieAlgebra g = algebra_from_json(read_json(s.input, in));
  AlgebraReport a = verify_algebra(g);
  r.add({"verify", a.ok(), a.ok() ? "Lie algebra axioms hold" : "axioms fail", Json()});
  if (!a.ok()) return r.finish("invalid", kNegative);
  GradedVerdict v = graded_simple_check(g, s.probe);
  r["graded"] = graded_json(v);
  if (v.kind == GradedKind::Inconclusive) return r.finish("inconclusive", kInconclusive);
  if (v.kind == GradedKind::NotGradedSimple) {
    r.add({"graded-simple", false, v.evidence, v.witness ? to_json(*v.witness) : Json()});
    return r.finish("not-graded-simple", kNegative);
  }
  Recognition rec = recognize(g, s.probe);
  r.add(rec.certificates);
  Json gens = Json::array();
  for (const auto& p : rec.p.generators()) gens.push_back(p);
  r["P_generators"] = gens;
  r["P_order"] = rec.p.order();
  r["untwisted"] = rec.untwisted();
  Json aj = to_json(rec.a);
  aj.erase("format");
  r["a"] = aj;
  r["phi"] = to_json(rec.phi);
  bool ok = std::all_of(rec.certificates.begin(), rec.certificates.end(), [](const auto& c) { return c.passed; });
  return r.finish(ok ? "recognized" : "verification-failed", ok ? kPositive : kNegative);
}

int cmd_schur(const Settings& s, std::istream& in, Report& r) {
  GradedModule w = module_from_json(read_json(s.input, in), dir_of(s.input));
  SchurReport sr = schur_report(w, s.probe);
  r["end0_dim"] = sr.end0_dim;
  r["scalar_only"] = sr.scalar_only;
  Json per = Json::array();
  for (const auto& [a, n] : sr.per_degree) per.push_back({{"degree", a}, {"dim", n}});
  r["per_degree"] = per;
  r.add({"scalar", sr.scalar_only, "dim End_0 = " + std::to_string(sr.end0_dim), sr.scalar_only ? Json() : Json(sr.end0_dim)});
  return r.finish(sr.scalar_only ? "scalar" : "not-scalar", sr.scalar_only ? kPositive : kNegative);
}

int cmd_weyl(const Settings& s, std::istream& in, Report& r) {
  GradedModule w = module_from_json(read_json(s.input, in), dir_of(s.input));
  auto parts = weyl_decompose(w, s.probe);
  Json sums = Json::array();
  std::size_t total = 0;
  for (const auto& p : parts) {
    sums.push_back({{"dim", p.dim()}, {"basis", to_json(p)}});
    total += p.dim();
  }
  r["summands"] = sums;
  r.add({"dimensions", total == w.dim(), std::to_string(total) + " of " + std::to_string(w.dim()), Json()});
  return r.finish("decomposed", kPositive);
}

int cmd_mod_verify(const Settings& s, std::istream& in, Report& r) {
  GradedModule w = module_from_json(read_json(s.input, in), dir_of(s.input));
  ModuleReport m = verify_module(w);
  auto first = [](const auto& v) { return v.empty() ? Json() : Json(v.front()); };
  r.add({"action", m.action.empty(), std::to_string(m.action.size()) + " violating triples", first(m.action)});
  r.add({"grading", m.grading.empty(), std::to_string(m.grading.size()) + " actions leaving their component",
         first(m.grading)});
  r["dim"] = w.dim();
  r["nontrivial"] = m.nontrivial;
  if (!m.ok()) return r.finish("invalid", kNegative);
  r["graded"] = graded_json(graded_simple_module_check(w, s.probe));
  return r.finish("valid", kPositive);
}

int cmd_mod_recognize(const Settings& s, std::istream& in, Report& r) {
  GradedModule w = module_from_json(read_json(s.input, in), dir_of(s.input));
  ModuleReconstruction rec = reconstruct_module(w, s.probe, parse_order(s.commute_order));
  r.add(rec.certificates);
  Json pp = Json::array();
  for (std::size_t k = 0; k < rec.d.elements.size(); ++k)
    pp.push_back({{"degree", rec.d.elements[k]}, {"dim", rec.d.dims[k]}});
  r["P_prime"] = pp;
  Json kept = Json::array();
  for (const auto& a : rec.choice.kept) kept.push_back(a);
  r["kept"] = kept;
  Json gens = Json::array();
  for (const auto& p : rec.choice.p.generators()) gens.push_back(p);
  r["P_generators"] = gens;
  r["P_order"] = rec.choice.p.order();
  r["vprime"] = to_json(rec.vprime);
  Json vj = to_json(rec.v);
  vj.erase("format");
  r["V"] = vj;
  r["V_graded"] = graded_json(rec.v_graded);
  r["V_simple"] = simplicity_name(rec.v_simple.kind);
  r["canonical"] = to_json(rec.canonical);
  bool ok = std::all_of(rec.certificates.begin(), rec.certificates.end(), [](const auto& c) { return c.passed; });
  return r.finish(ok ? "recognized" : "verification-failed", ok ? kPositive : kNegative);
}

long param(const Settings& s, std::size_t k, long fallback) {
  if (k >= s.params.size()) return fallback;
  try {
    return std::stol(s.params[k]);
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::InvalidArgument, "parameter '" + s.params[k] + "' is not an integer");
  }
}

Json catalog_document(const std::string& name, const Settings& s) {
  const Field& f = Field::get(FieldSpec::parse(s.field));
  if (name == "list") {
    Json a = Json::array();
    for (const auto& e : catalog_entries()) a.push_back({{"name", e.name}, {"params", e.params}, {"expected", e.expected}});
    return Json{{"format", kFormat}, {"entries", a}};
  }
  if (name == "sl2") return to_json(sl_n(f, 2));
  if (name == "sl-n") return to_json(sl_n(f, static_cast<int>(param(s, 0, 2))));
  if (name == "pauli-sl2") return to_json(pauli_sl2(f));
  if (name == "sl2-pair") return to_json(sl2_pair(f));
  if (name == "matrix2") return to_json(matrix2_module(f));
  if (name == "sl2-irrep") return to_json(sl2_irrep(sl_n(f, 2), static_cast<int>(param(s, 0, 1))));
  if (name == "pair-module")
    return to_json(pair_module(f, static_cast<int>(param(s, 0, 1)), static_cast<int>(param(s, 1, 0))));
  if (name == "ex1-algebra") return to_json(ex1_module(f).g);
  if (name == "ex1-w") return to_json(ex1_module(f).w);
  if (name == "ex1-v") return to_json(ex1_module(f).v);
  if (name == "example0") return to_json(example0_algebra(static_cast<std::uint64_t>(param(s, 0, 3))));
  if (name == "g-z2z2-sl2") {
    // sl_2 with its Cartan Z2-grading, looped over Z2 x Z2 with P = <(1,0)>
    FinAbGroup q({2, 2});
    Subgroup p = Subgroup::generate(q, {{1, 0}});
    GradedLieAlgebra a = sl2_graded(f, QuotientGroup(p), {0, 1}, {0, 0}, {0, 1});
    return to_json(loop_algebra(q, p, a));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown catalog entry '" + name + "'");
}

void write_text(const std::string& file, const std::string& text, std::ostream& out) {
  if (file.empty() || file == "-") {
    out << text;
    return;
  }
  std::ofstream o(file);
  if (!o) throw Error(ErrorCode::InvalidArgument, file + ": cannot write");
  o << text;
}

std::string human(const Report& r) {
  const Json& d = r.doc();
  std::ostringstream o;
  o << d["command"].get<std::string>() << ": " << d["verdict"].get<std::string>() << "\n";
  for (const auto& c : r.checks()) {
    o << "  [" << (c.passed ? "pass" : "FAIL") << "] " << c.name;
    if (!c.detail.empty()) o << ": " << c.detail;
    if (!c.passed && !c.witness.is_null()) o << " (witness " << c.witness.dump() << ")";
    o << "\n";
  }
  for (const char* key : {"dim", "P_order", "count", "end0_dim", "untwisted"})
    if (d.contains(key)) o << "  " << key << " = " << d[key].dump() << "\n";
  if (d.contains("summands")) {
    o << "  summand dims =";
    for (const auto& s : d["summands"]) o << " " << s["dim"].dump();
    o << "\n";
  }
  return o.str();
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graded simple Lie algebras and modules: verification, loop algebras and recognition", "gsla"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  Settings s;
  auto common = [&](CLI::App* sub, const char* what) {
    sub->add_option("input", s.input, what)->capture_default_str();
    sub->add_option("--seed", s.probe.seed, "probe seed")->capture_default_str();
    sub->add_option("--probes", s.probe.probes, "random probes per search")->capture_default_str()->check(CLI::NonNegativeNumber);
    sub->add_option("--max-subsets", s.probe.max_subsets, "cap on degree subsets in size searches")->capture_default_str();
    sub->add_flag("--json", s.json, "print the JSON report");
    sub->add_option("-o,--output", s.output, "write the JSON report to a file ('-' for stdout)");
  };
  std::map<std::string, std::function<int(const Settings&, std::istream&, Report&)>> commands{
      {"verify", cmd_verify},   {"loop-build", cmd_loop_build}, {"decompose", cmd_decompose},
      {"recognize", cmd_recognize}, {"schur", cmd_schur},       {"weyl", cmd_weyl},
      {"mod-verify", cmd_mod_verify}, {"mod-recognize", cmd_mod_recognize}};
  std::map<std::string, const char*> help{
      {"verify", "check the Lie algebra axioms and the grading"},
      {"loop-build", "build g(Q,P,a) from a graded by Q/P"},
      {"decompose", "split a loop algebra into its |P| ideals"},
      {"recognize", "recover (P, a) with g graded-isomorphic to g(Q,P,a)"},
      {"schur", "degree-wise endomorphism dimensions of a graded simple module"},
      {"weyl", "graded simple summands of a module over a semisimple algebra"},
      {"mod-verify", "check the module axioms and the grading"},
      {"mod-recognize", "recover (P, V) with W graded-isomorphic to M(Q,P,V)"}};
  for (const auto& [name, fn] : commands) {
    CLI::App* sub = app.add_subcommand(name, help[name]);
    common(sub, name.rfind("mod", 0) == 0 || name == "schur" || name == "weyl" ? "module JSON file or -" : "algebra JSON file or -");
    if (name == "mod-recognize")
      sub->add_option("--commute-order", s.commute_order, "comma-separated permutation of P' indices");
  }
  CLI::App* cat = app.add_subcommand("catalog", "emit a named example as JSON ('list' shows all)");
  std::string cat_name;
  cat->add_option("name", cat_name, "entry name")->required();
  cat->add_option("params", s.params, "integer parameters");
  cat->add_option("--field", s.field, "field: Q, Q(zN) or Fp")->capture_default_str();
  cat->add_option("-o,--output", s.output, "output file ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kPositive : kInvalid;
  }

  if (cat->parsed()) {
    try {
      write_text(s.output, catalog_document(cat_name, s).dump(2) + "\n", out);
      return kPositive;
    } catch (const Error& e) {
      err << "gsla catalog: " << e.what() << "\n";
      return kInvalid;
    }
  }

  for (const auto& [name, fn] : commands) {
    if (!app.got_subcommand(name)) continue;
    Report r(name, s);
    r["input"] = s.input;
    int code;
    try {
      code = fn(s, in, r);
    } catch (const Error& e) {
      code = fail_with(r, e);
      if (code == kInvalid) err << "gsla " << name << ": " << e.what() << "\n";
    }
    std::string text = r.doc().dump(2) + "\n";
    if (!s.output.empty()) write_text(s.output, text, out);
    if (s.json && (s.output.empty() || s.output != "-"))
      out << text;
    else if (!s.json && s.output != "-")
      out << human(r);
    return code;
  }
  return kInvalid;
}

}  // namespace gsla
