#include "gsla/io.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace gsla {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::ParseError, path + ": " + what);
}

const Json& need(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path + "." + key, "missing");
  return *it;
}

std::string at(const std::string& path, std::size_t k) { return path + "[" + std::to_string(k) + "]"; }

const Json& need_array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

long as_long(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long>();
}

std::size_t as_index(const Json& j, std::size_t bound, const std::string& path) {
  long v = as_long(j, path);
  if (v < 0 || static_cast<std::size_t>(v) >= bound)
    fail(path, "index " + std::to_string(v) + " out of range [0, " + std::to_string(bound) + ")");
  return static_cast<std::size_t>(v);
}

std::string as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

GroupElem elem_from_json(const Json& j, const FinAbGroup& q, const std::string& path) {
  need_array(j, path);
  if (j.size() != q.rank()) fail(path, "expected " + std::to_string(q.rank()) + " coordinates");
  GroupElem a;
  for (std::size_t k = 0; k < j.size(); ++k) a.push_back(as_long(j[k], at(path, k)));
  return q.normalize(a);
}

GradingGroup group_from_json(const Json& j, const std::string& path) {
  const Json& m = need_array(need(j, "moduli", path), path + ".moduli");
  std::vector<long> moduli;
  for (std::size_t k = 0; k < m.size(); ++k) {
    long v = as_long(m[k], at(path + ".moduli", k));
    if (v < 1) fail(at(path + ".moduli", k), "modulus must be positive");
    moduli.push_back(v);
  }
  FinAbGroup q(moduli);
  std::vector<GroupElem> gens;
  if (auto it = j.find("subgroup"); it != j.end()) {
    need_array(*it, path + ".subgroup");
    for (std::size_t k = 0; k < it->size(); ++k) gens.push_back(elem_from_json((*it)[k], q, at(path + ".subgroup", k)));
  }
  return QuotientGroup(Subgroup::generate(q, gens));
}

// Message without the leading "<code>: ".
std::string detail(const Error& e) {
  std::string m = e.what();
  std::string prefix = std::string(error_code_name(e.code())) + ": ";
  return m.rfind(prefix, 0) == 0 ? m.substr(prefix.size()) : m;
}

const Field& field_from_json(const Json& j, const std::string& path) {
  std::string text = as_string(j, path);
  try {
    return Field::get(FieldSpec::parse(text));
  } catch (const Error& e) {
    fail(path, detail(e));
  }
}

FieldElem scalar_from_json(const Field& f, const Json& j, const std::string& path) {
  if (j.is_number_integer()) return f.from_int(j.get<long long>());
  std::string text = as_string(j, path);
  try {
    return f.parse(text);
  } catch (const Error& e) {
    fail(path, detail(e));
  }
}

SparseVec coeffs_from_json(const Field& f, const Json& j, std::size_t bound, const std::string& path) {
  need_array(j, path);
  SparseVec out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    std::string p = at(path, k);
    std::size_t idx = as_index(need(j[k], "k", p), bound, p + ".k");
    FieldElem c = scalar_from_json(f, need(j[k], "c", p), p + ".c");
    if (!c.is_zero()) out.emplace_back(idx, c);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t k = 1; k < out.size(); ++k)
    if (out[k].first == out[k - 1].first) fail(path, "repeated index " + std::to_string(out[k].first));
  return out;
}

Json coeffs_to_json(const SparseVec& v) {
  Json a = Json::array();
  for (const auto& [k, c] : v) a.push_back({{"k", k}, {"c", c.to_string()}});
  return a;
}

std::vector<GroupElem> degrees_from_json(const Json& j, const FinAbGroup& q, std::size_t dim, const std::string& path) {
  need_array(j, path);
  if (j.size() != dim) fail(path, "expected " + std::to_string(dim) + " degrees");
  std::vector<GroupElem> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(elem_from_json(j[k], q, at(path, k)));
  return out;
}

std::vector<std::string> names_from_json(const Json& j, std::size_t dim, const std::string& path) {
  auto it = j.find("names");
  if (it == j.end()) return {};
  need_array(*it, path + ".names");
  if (it->size() != dim) fail(path + ".names", "expected " + std::to_string(dim) + " names");
  std::vector<std::string> out;
  for (std::size_t k = 0; k < it->size(); ++k) out.push_back(as_string((*it)[k], at(path + ".names", k)));
  return out;
}

std::size_t dim_from_json(const Json& j, const std::string& path) {
  long d = as_long(need(j, "dim", path), path + ".dim");
  if (d < 0) fail(path + ".dim", "negative dimension");
  return static_cast<std::size_t>(d);
}

bool same_table(const GradedLieAlgebra& a, const GradedLieAlgebra& b) {
  if (a.dim() != b.dim() || a.degrees() != b.degrees()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (dense(a.field(), a.dim(), a.bracket_basis(i, j)) != dense(b.field(), b.dim(), b.bracket_basis(i, j)))
        return false;
  return true;
}

}  // namespace

Json to_json(const GroupElem& a) { return Json(a); }

Json to_json(const GradingGroup& q) {
  Json j{{"moduli", q.ambient().moduli()}};
  if (!q.is_full()) {
    Json gens = Json::array();
    for (const auto& g : q.subgroup().generators()) gens.push_back(g);
    j["subgroup"] = gens;
  }
  return j;
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c).to_string());
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const Subspace& s) {
  Json rows = Json::array();
  for (const auto& v : s.basis()) {
    Json row = Json::array();
    for (const auto& x : v) row.push_back(x.to_string());
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const std::vector<Certificate>& certs) {
  Json a = Json::array();
  for (const auto& c : certs) a.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return a;
}

Json to_json(const GradedLieAlgebra& g) {
  Json j{{"format", kFormat}, {"field", g.field().spec().name()}, {"group", to_json(g.grading())}, {"dim", g.dim()}};
  j["degrees"] = g.degrees();
  if (!g.fine_degrees().empty()) j["fine_degrees"] = g.fine_degrees();
  if (!g.names().empty()) j["names"] = g.names();
  Json br = Json::array();
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t k = i + 1; k < g.dim(); ++k)
      if (!g.bracket_basis(i, k).empty()) br.push_back({{"i", i}, {"j", k}, {"coeffs", coeffs_to_json(g.bracket_basis(i, k))}});
  j["brackets"] = br;
  return j;
}

Json to_json(const LoopAlgebra& l) {
  Json j = to_json(l.underlying);
  Json labels = Json::array();
  for (const auto& [i, a] : l.labels) labels.push_back(Json::array({i, a}));
  Json gens = Json::array();
  for (const auto& g : l.p.generators()) gens.push_back(g);
  Json base = to_json(l.base);
  base.erase("format");
  j["loop"] = {{"subgroup", gens}, {"labels", labels}, {"base", base}};
  return j;
}

Json to_json(const GradedModule& w) {
  Json alg = to_json(w.algebra());
  alg.erase("format");
  Json j{{"format", kFormat}, {"algebra", alg}, {"dim", w.dim()}};
  j["degrees"] = w.degrees();
  if (!w.names().empty()) j["names"] = w.names();
  Json act = Json::array();
  for (std::size_t i = 0; i < w.algebra().dim(); ++i)
    for (std::size_t v = 0; v < w.dim(); ++v)
      if (!w.action_basis(i, v).empty()) act.push_back({{"xi", i}, {"vj", v}, {"coeffs", coeffs_to_json(w.action_basis(i, v))}});
  j["action"] = act;
  return j;
}

GradedLieAlgebra algebra_from_json(const Json& j, const std::string& path) {
  if (auto it = j.find("format"); it != j.end() && as_long(*it, path + ".format") != kFormat)
    fail(path + ".format", "unsupported format");
  const Field& f = field_from_json(need(j, "field", path), path + ".field");
  GradingGroup q = group_from_json(need(j, "group", path), path + ".group");
  std::size_t d = dim_from_json(j, path);
  GradedLieAlgebra g(f, q, degrees_from_json(need(j, "degrees", path), q.ambient(), d, path + ".degrees"));
  if (auto it = j.find("fine_degrees"); it != j.end())
    g.set_fine_degrees(degrees_from_json(*it, q.ambient(), d, path + ".fine_degrees"));
  g.set_names(names_from_json(j, d, path));
  const Json& br = need_array(need(j, "brackets", path), path + ".brackets");
  std::vector<std::tuple<std::size_t, std::size_t, SparseVec>> raw;
  for (std::size_t k = 0; k < br.size(); ++k) {
    std::string p = at(path + ".brackets", k);
    std::size_t a = as_index(need(br[k], "i", p), d, p + ".i");
    std::size_t b = as_index(need(br[k], "j", p), d, p + ".j");
    SparseVec c = coeffs_from_json(f, need(br[k], "coeffs", p), d, p + ".coeffs");
    if (a < b)
      g.set_bracket(a, b, std::move(c));
    else
      raw.emplace_back(a, b, std::move(c));
  }
  for (auto& [a, b, c] : raw) g.set_bracket_raw(a, b, std::move(c));
  return g;
}

std::optional<LoopAlgebra> loop_from_json(const Json& j, const std::string& path) {
  auto it = j.find("loop");
  if (it == j.end()) return std::nullopt;
  std::string lp = path + ".loop";
  GradedLieAlgebra g = algebra_from_json(j, path);
  GradedLieAlgebra base = algebra_from_json(need(*it, "base", lp), lp + ".base");
  const FinAbGroup& q = g.group();
  std::vector<GroupElem> gens;
  const Json& sub = need_array(need(*it, "subgroup", lp), lp + ".subgroup");
  for (std::size_t k = 0; k < sub.size(); ++k) gens.push_back(elem_from_json(sub[k], q, at(lp + ".subgroup", k)));
  LoopAlgebra l;
  try {
    l = loop_algebra(q, Subgroup::generate(q, gens), base);
  } catch (const Error& e) {
    fail(lp, detail(e));
  }
  if (!same_table(l.underlying, g)) fail(lp, "loop data does not reproduce the algebra");
  return l;
}

GradedModule module_from_json(const Json& j, const std::filesystem::path& base_dir, const std::string& path) {
  if (auto it = j.find("format"); it != j.end() && as_long(*it, path + ".format") != kFormat)
    fail(path + ".format", "unsupported format");
  const Json& a = need(j, "algebra", path);
  GradedLieAlgebra g;
  if (a.is_string()) {
    std::filesystem::path file = base_dir / a.get<std::string>();
    Json doc;
    try {
      doc = read_json(file.string());
    } catch (const Error& e) {
      fail(path + ".algebra", detail(e));
    }
    g = algebra_from_json(doc, path + ".algebra");
  } else {
    g = algebra_from_json(a, path + ".algebra");
  }
  std::size_t d = dim_from_json(j, path);
  GradedModule w(g, degrees_from_json(need(j, "degrees", path), g.group(), d, path + ".degrees"));
  w.set_names(names_from_json(j, d, path));
  const Json& act = need_array(need(j, "action", path), path + ".action");
  for (std::size_t k = 0; k < act.size(); ++k) {
    std::string p = at(path + ".action", k);
    std::size_t xi = as_index(need(act[k], "xi", p), g.dim(), p + ".xi");
    std::size_t vj = as_index(need(act[k], "vj", p), d, p + ".vj");
    w.set_action(xi, vj, coeffs_from_json(g.field(), need(act[k], "coeffs", p), d, p + ".coeffs"));
  }
  return w;
}

Json read_json(const std::string& file) { return read_json(file, std::cin); }

Json read_json(const std::string& file, std::istream& stdin_stream) {
  std::string text;
  if (file == "-") {
    std::ostringstream s;
    s << stdin_stream.rdbuf();
    text = s.str();
  } else {
    std::ifstream in(file);
    if (!in) throw Error(ErrorCode::ParseError, file + ": cannot open");
    std::ostringstream s;
    s << in.rdbuf();
    text = s.str();
  }
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, (file == "-" ? std::string("<stdin>") : file) + ": " + e.what());
  }
}

}  // namespace gsla
