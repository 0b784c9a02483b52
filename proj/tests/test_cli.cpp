#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gsla/catalog.hpp"
#include "gsla/cli.hpp"
#include "gsla/io.hpp"

using namespace gsla;

namespace {

const Field& QQ() { return Field::get(FieldSpec::rationals()); }
const Field& QI() { return Field::get(FieldSpec::cyclotomic(4)); }

struct Outcome {
  int code;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

Outcome invoke(std::vector<std::string> args, const std::string& stdin_text = "") {
  args.insert(args.begin(), "gsla");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  int code = run(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("gsla_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

// Structure constants compared entry by entry.
void expect_same_table(const GradedLieAlgebra& a, const GradedLieAlgebra& b) {
  ASSERT_EQ(a.dim(), b.dim());
  EXPECT_EQ(a.degrees(), b.degrees());
  EXPECT_EQ(a.grading(), b.grading());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      auto x = a.bracket_basis(i, j), y = b.bracket_basis(i, j);
      ASSERT_EQ(x.size(), y.size()) << i << "," << j;
      for (std::size_t k = 0; k < x.size(); ++k) {
        EXPECT_EQ(x[k].first, y[k].first);
        EXPECT_EQ(x[k].second.to_string(), y[k].second.to_string());
      }
    }
}

}  // namespace

TEST(Json, AlgebraRoundTrip) {
  std::vector<GradedLieAlgebra> corpus{sl_n(QQ(), 3), pauli_sl2(QI()), sl2_pair(QQ()), sl_n(Field::get(FieldSpec::prime(5)), 2)};
  for (const auto& g : sl2_gradings(QI(), QuotientGroup(FinAbGroup({2, 4})))) corpus.push_back(g);
  for (const auto& g : corpus) {
    Json j = to_json(g);
    GradedLieAlgebra back = algebra_from_json(Json::parse(j.dump()));
    expect_same_table(g, back);
    EXPECT_EQ(to_json(back).dump(), j.dump());
  }
}

TEST(Json, LoopRoundTrip) {
  FinAbGroup q({2, 2});
  Subgroup p = Subgroup::generate(q, {{1, 0}});
  LoopAlgebra l = loop_algebra(q, p, sl2_graded(QQ(), QuotientGroup(p), {0, 1}, {0, 0}, {0, 1}));
  auto back = loop_from_json(Json::parse(to_json(l).dump()));
  ASSERT_TRUE(back);
  expect_same_table(l.underlying, back->underlying);
  expect_same_table(l.base, back->base);
  EXPECT_EQ(back->p, l.p);
  EXPECT_EQ(back->labels, l.labels);
  EXPECT_FALSE(loop_from_json(to_json(l.base)));
}

TEST(Json, ModuleRoundTrip) {
  for (const GradedModule& w : {matrix2_module(QI()), pair_module(QQ(), 1, 0), ex1_module(QQ()).w}) {
    Json j = to_json(w);
    GradedModule back = module_from_json(Json::parse(j.dump()));
    ASSERT_EQ(back.dim(), w.dim());
    EXPECT_EQ(back.degrees(), w.degrees());
    for (std::size_t i = 0; i < w.algebra().dim(); ++i) EXPECT_EQ(back.action_matrix(i), w.action_matrix(i));
    EXPECT_EQ(to_json(back).dump(), j.dump());
  }
}

TEST(Json, ModuleAlgebraByReference) {
  GradedModule w = ex1_module(QQ()).w;
  std::string alg = temp_file("ref_alg.json", to_json(w.algebra()).dump());
  Json j = to_json(w);
  j["algebra"] = std::filesystem::path(alg).filename().string();
  GradedModule back = module_from_json(j, std::filesystem::path(alg).parent_path());
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(back.action_matrix(i), w.action_matrix(i));
}

TEST(Json, BrokenEntriesSurvive) {
  // [x1, x0] stored as something other than -[x0, x1]
  Json j = to_json(sl_n(QQ(), 2));
  j["brackets"].push_back({{"i", 1}, {"j", 0}, {"coeffs", Json::array({{{"k", 0}, {"c", 5}}})}});
  GradedLieAlgebra g = algebra_from_json(j);
  auto r = verify_algebra(g);
  ASSERT_FALSE(r.antisymmetry.empty());
  EXPECT_EQ(r.antisymmetry.front(), (std::pair<std::size_t, std::size_t>{0, 1}));
}

TEST(Json, DiagnosticsNamePath) {
  auto message = [](const Json& j) {
    try {
      algebra_from_json(j);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ParseError);
      return std::string(e.what());
    }
    return std::string("no error");
  };
  Json base = to_json(sl_n(QQ(), 2));
  Json j = base;
  j["degrees"][2] = "x";
  EXPECT_NE(message(j).find("$.degrees[2]"), std::string::npos) << message(j);
  j = base;
  j["brackets"][0]["coeffs"][0]["c"] = "1/0";
  EXPECT_NE(message(j).find("$.brackets[0].coeffs[0].c"), std::string::npos) << message(j);
  j = base;
  j["brackets"][1]["j"] = 7;
  EXPECT_NE(message(j).find("$.brackets[1].j"), std::string::npos) << message(j);
  j = base;
  j.erase("field");
  EXPECT_NE(message(j).find("$.field"), std::string::npos) << message(j);
  j = base;
  j["format"] = 2;
  EXPECT_NE(message(j).find("$.format"), std::string::npos) << message(j);
}

TEST(Cli, CatalogPipesIntoVerify) {
  Outcome cat = invoke({"catalog", "pauli-sl2"});
  ASSERT_EQ(cat.code, 0);
  Outcome v = invoke({"verify", "-", "--json"}, cat.out);
  EXPECT_EQ(v.code, 0);
  Json r = v.json();
  EXPECT_EQ(r["verdict"], "valid");
  EXPECT_EQ(r["graded"]["kind"], "GradedSimple");
  EXPECT_EQ(r["format"], 1);
  EXPECT_EQ(r["version"], kVersion);
  EXPECT_EQ(r["caps"]["probes"], 8);
  EXPECT_EQ(r["caps"]["max_subsets"], 65536);
}

TEST(Cli, RecognizeLoop) {
  std::string file = temp_file("g_z2z2_sl2.json", invoke({"catalog", "g-z2z2-sl2"}).out);
  Outcome o = invoke({"recognize", file, "--json"});
  EXPECT_EQ(o.code, 0) << o.out;
  Json r = o.json();
  EXPECT_EQ(r["P_order"], 2);
  EXPECT_EQ(r["verdict"], "recognized");
  GradedLieAlgebra a = algebra_from_json(r["a"]);
  EXPECT_EQ(a.dim(), 3u);
  for (const auto& c : r["certificates"]) EXPECT_TRUE(c["passed"].get<bool>()) << c.dump();
}

TEST(Cli, DecomposeExample0) {
  std::string file = temp_file("example0_p3.json", invoke({"catalog", "example0", "3"}).out);
  Outcome o = invoke({"decompose", file, "--json"});
  EXPECT_EQ(o.code, 1);
  Json r = o.json();
  EXPECT_EQ(r["failed"], "NoSuchRoot");
  EXPECT_FALSE(r["certificates"][0]["passed"].get<bool>());
  EXPECT_FALSE(r["certificates"][0]["witness"].is_null());
}

TEST(Cli, DecomposeCounts) {
  FinAbGroup q({2, 2});
  QuotientGroup one(Subgroup::whole(q));
  LoopAlgebra l = loop_algebra(q, Subgroup::whole(q), sl2_graded(QI(), one, one.zero(), one.zero(), one.zero()));
  Outcome o = invoke({"decompose", "-", "--json"}, to_json(l).dump());
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.json()["count"], 4);
  Outcome plain = invoke({"decompose", "-"}, to_json(l.underlying).dump());
  EXPECT_EQ(plain.code, 2);
}

TEST(Cli, FailedCertificateNamed) {
  Json j = to_json(sl_n(QQ(), 2));
  j["brackets"].push_back({{"i", 1}, {"j", 0}, {"coeffs", Json::array({{{"k", 0}, {"c", 5}}})}});
  Outcome o = invoke({"verify", "-", "--json"}, j.dump());
  EXPECT_EQ(o.code, 1);
  Json r = o.json();
  EXPECT_EQ(r["failed"], "antisymmetry");
  for (const auto& c : r["certificates"])
    if (!c["passed"].get<bool>()) EXPECT_FALSE(c["witness"].is_null());
}

TEST(Cli, InvalidInput) {
  Outcome o = invoke({"verify", "-"}, "{\"format\":1}");
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.err.find("$.field"), std::string::npos) << o.err;
  EXPECT_EQ(invoke({"verify", "-"}, "not json").code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
  EXPECT_EQ(invoke({"verify", "-", "--probes", "x"}).code, 2);
  EXPECT_EQ(invoke({"catalog", "nothing"}).code, 2);
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST(Cli, ModuleCommands) {
  std::string m2 = temp_file("matrix2.json", invoke({"catalog", "matrix2", "--field", "Q(z4)"}).out);
  EXPECT_EQ(invoke({"mod-verify", m2}).code, 0);
  Outcome s = invoke({"schur", m2, "--json"});
  EXPECT_EQ(s.code, 0);
  EXPECT_EQ(s.json()["end0_dim"], 1);
  std::set<std::string> ps;
  for (const char* order : {"1,0,2,3", "2,0,1,3", "3,0,1,2"}) {
    Outcome r = invoke({"mod-recognize", m2, "--commute-order", order, "--json"});
    ASSERT_EQ(r.code, 0) << r.out;
    ps.insert(r.json()["P_generators"].dump());
  }
  EXPECT_EQ(ps.size(), 3u);
  EXPECT_EQ(invoke({"mod-recognize", m2, "--commute-order", "a,b"}).code, 2);

  std::string ex1 = temp_file("ex1_w.json", invoke({"catalog", "ex1-w"}).out);
  Outcome r = invoke({"mod-recognize", ex1, "--json"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.json()["P_order"], 2);
  EXPECT_EQ(r.json()["V"]["dim"], 1);

  std::string l10 = temp_file("pair10.json", invoke({"catalog", "pair-module", "1", "0"}).out);
  Outcome w = invoke({"weyl", l10, "--json"});
  EXPECT_EQ(w.code, 0);
  Json wj = w.json();
  std::size_t total = 0;
  for (const auto& x : wj["summands"]) total += x["dim"].get<std::size_t>();
  EXPECT_EQ(total, 4u);
}

TEST(Cli, LoopBuild) {
  FinAbGroup q({4});
  Subgroup p = Subgroup::generate(q, {{2}});
  GradedLieAlgebra a = sl2_graded(QI(), QuotientGroup(p), {1}, {0}, {1});
  Outcome o = invoke({"loop-build", "-", "--json"}, to_json(a).dump());
  ASSERT_EQ(o.code, 0) << o.err;
  auto l = loop_from_json(o.json()["algebra"]);
  ASSERT_TRUE(l);
  EXPECT_EQ(l->underlying.dim(), 6u);
}

TEST(Cli, Deterministic) {
  std::string file = temp_file("det.json", invoke({"catalog", "g-z2z2-sl2"}).out);
  for (const char* cmd : {"recognize", "verify"}) {
    Outcome a = invoke({cmd, file, "--json", "--seed", "7"});
    Outcome b = invoke({cmd, file, "--json", "--seed", "7"});
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.json()["seed"], 7);
  }
}
