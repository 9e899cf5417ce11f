#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "graphlim.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  gl_string_free(s);
  return out;
}

struct Graph {
  gl_graph* g = nullptr;
  ~Graph() { gl_graph_free(g); }
};
struct Graphon {
  gl_graphon* w = nullptr;
  ~Graphon() { gl_graphon_free(w); }
};
struct Config {
  gl_config* c = nullptr;
  ~Config() { gl_config_free(c); }
};
struct Property {
  gl_property* p = nullptr;
  ~Property() { gl_property_free(p); }
};

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("graphlim_capi_" + name)).string();
}

}  // namespace

TEST(CApi, ErrorsCarryStatusAndMessage) {
  Graph g;
  EXPECT_EQ(gl_graph_from_text("3\n0 1\n1 x\n", &g.g), GL_PARSE_ERROR);
  EXPECT_NE(std::string(gl_last_error()).find("line 3"), std::string::npos) << gl_last_error();
  EXPECT_EQ(g.g, nullptr);

  EXPECT_EQ(gl_graph_motif("no_such_motif", &g.g), GL_INVALID_ARGUMENT);
  EXPECT_EQ(gl_graph_new(3, nullptr), GL_INVALID_ARGUMENT);

  Graphon w;
  const double m[2] = {0.5, 0.5};
  const double asym[4] = {0, 1, 0, 0};
  EXPECT_NE(gl_graphon_new(2, m, asym, &w.w), GL_OK);
  const double out_of_range[4] = {0, 2, 2, 0};
  EXPECT_NE(gl_graphon_new(2, m, out_of_range, &w.w), GL_OK);
  EXPECT_STREQ(gl_status_name(GL_OK), "ok");
}

TEST(CApi, GraphRoundTripThroughTextAndFile) {
  Graph g;
  ASSERT_EQ(gl_graph_new(5, &g.g), GL_OK);
  ASSERT_EQ(gl_graph_add_edge(g.g, 0, 4), GL_OK);
  ASSERT_EQ(gl_graph_add_edge(g.g, 2, 3), GL_OK);
  EXPECT_EQ(gl_graph_add_edge(g.g, 1, 1), GL_INVALID_ARGUMENT);
  EXPECT_EQ(gl_graph_add_edge(g.g, 1, 7), GL_OUT_OF_RANGE);

  char* text = nullptr;
  ASSERT_EQ(gl_graph_to_text(g.g, &text), GL_OK);
  const std::string t = take(text);
  Graph back;
  ASSERT_EQ(gl_graph_from_text(t.c_str(), &back.g), GL_OK);
  ASSERT_EQ(gl_graph_node_count(back.g), 5u);
  ASSERT_EQ(gl_graph_edge_count(back.g), 2u);
  int has = 0;
  ASSERT_EQ(gl_graph_has_edge(back.g, 4, 0, &has), GL_OK);
  EXPECT_EQ(has, 1);
  ASSERT_EQ(gl_graph_has_edge(back.g, 0, 1, &has), GL_OK);
  EXPECT_EQ(has, 0);

  const std::string path = temp_path("g.graph");
  ASSERT_EQ(gl_graph_save(g.g, path.c_str()), GL_OK);
  Graph loaded;
  ASSERT_EQ(gl_graph_load(path.c_str(), &loaded.g), GL_OK);
  char* text2 = nullptr;
  ASSERT_EQ(gl_graph_to_text(loaded.g, &text2), GL_OK);
  EXPECT_EQ(take(text2), t);
  std::remove(path.c_str());
}

TEST(CApi, GraphonJsonRoundTripIsExact) {
  const double m[3] = {0.1, 0.2, 0.7};
  const double v[9] = {0.1, 1.0 / 3.0, 0.7, 1.0 / 3.0, 0.0, 0.123456789012345678, 0.7, 0.123456789012345678, 1.0};
  Graphon w;
  ASSERT_EQ(gl_graphon_new(3, m, v, &w.w), GL_OK);
  char* js = nullptr;
  ASSERT_EQ(gl_graphon_to_json(w.w, &js), GL_OK);
  const std::string text = take(js);
  Graphon back;
  ASSERT_EQ(gl_graphon_from_json(text.c_str(), &back.w), GL_OK);
  ASSERT_EQ(gl_graphon_parts(back.w), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    double a = 0, b = 0;
    ASSERT_EQ(gl_graphon_measure(back.w, i, &a), GL_OK);
    EXPECT_EQ(a, m[i]);
    for (std::size_t j = 0; j < 3; ++j) {
      ASSERT_EQ(gl_graphon_value(back.w, i, j, &b), GL_OK);
      EXPECT_EQ(b, v[i * 3 + j]);
    }
  }
  double x = 0;
  EXPECT_EQ(gl_graphon_value(back.w, 3, 0, &x), GL_OUT_OF_RANGE);
}

TEST(CApi, DensitiesMatchClosedForms) {
  Graph c4, k2, k3;
  ASSERT_EQ(gl_graph_motif("C4", &c4.g), GL_OK);
  ASSERT_EQ(gl_graph_motif("K2", &k2.g), GL_OK);
  ASSERT_EQ(gl_graph_motif("K3", &k3.g), GL_OK);
  Graphon half;
  ASSERT_EQ(gl_graphon_from_literal("constant:0.5", &half.w), GL_OK);

  gl_density d{};
  ASSERT_EQ(gl_hom_density_graphon(c4.g, half.w, &d), GL_OK);
  EXPECT_EQ(d.value, 0.0625);
  EXPECT_EQ(d.exact, 1);
  ASSERT_EQ(gl_hom_density_graphon(k2.g, half.w, &d), GL_OK);
  EXPECT_EQ(d.value, 0.5);

  // t(K2, K3) = 6 / 9; t_ind(K2, K3) = 1.
  ASSERT_EQ(gl_hom_density_graph(k2.g, k3.g, &d), GL_OK);
  EXPECT_DOUBLE_EQ(d.value, 6.0 / 9.0);
  ASSERT_EQ(gl_induced_density_graph(k2.g, k3.g, &d), GL_OK);
  EXPECT_DOUBLE_EQ(d.value, 1.0);

  Graphon wk3;
  ASSERT_EQ(gl_graphon_embed(k3.g, &wk3.w), GL_OK);
  ASSERT_EQ(gl_hom_density_graphon(k2.g, wk3.w, &d), GL_OK);
  EXPECT_NEAR(d.value, 6.0 / 9.0, 1e-15);

  ASSERT_EQ(gl_estimate_density(c4.g, half.w, 4000, 11, 0.05, &d), GL_OK);
  EXPECT_EQ(d.exact, 0);
  EXPECT_NEAR(d.ci_halfwidth, std::sqrt(std::log(40.0) / 8000.0), 1e-15);
  EXPECT_LE(std::fabs(d.value - 0.0625), d.ci_halfwidth);
}

TEST(CApi, DistancesOnTriangleVersusEmpty) {
  Graph k3, e3;
  ASSERT_EQ(gl_graph_motif("K3", &k3.g), GL_OK);
  ASSERT_EQ(gl_graph_new(3, &e3.g), GL_OK);
  gl_interval iv{};
  ASSERT_EQ(gl_delta_graphs(k3.g, e3.g, GL_METRIC_CUT, nullptr, &iv), GL_OK);
  EXPECT_NEAR(iv.lower, 2.0 / 3.0, 1e-9);
  EXPECT_NEAR(iv.upper, 2.0 / 3.0, 1e-9);

  Graphon a, b;
  ASSERT_EQ(gl_graphon_embed(k3.g, &a.w), GL_OK);
  ASSERT_EQ(gl_graphon_embed(e3.g, &b.w), GL_OK);
  double cut = 0, l1 = 0;
  int exact = 0;
  ASSERT_EQ(gl_cut_distance(a.w, b.w, nullptr, &cut, &exact), GL_OK);
  ASSERT_EQ(gl_l1_distance(a.w, b.w, &l1), GL_OK);
  EXPECT_NEAR(cut, 2.0 / 3.0, 1e-15);
  EXPECT_EQ(exact, 1);
  EXPECT_NEAR(l1, 2.0 / 3.0, 1e-15);
}

TEST(CApi, ConfigRejectsUnknownKeysAndRoundTrips) {
  Config bad;
  EXPECT_EQ(gl_config_from_json(R"({"seed": 1, "colour": 2})", &bad.c), GL_PARSE_ERROR);

  Config c;
  ASSERT_EQ(gl_config_new(&c.c), GL_OK);
  ASSERT_EQ(gl_config_set_seed(c.c, 18446744073709551615ull), GL_OK);
  ASSERT_EQ(gl_config_set_trials(c.c, 77), GL_OK);
  ASSERT_EQ(gl_config_set_exact_cap(c.c, 12), GL_OK);
  EXPECT_EQ(gl_config_set_exact_cap(c.c, 31), GL_INVALID_ARGUMENT);
  ASSERT_EQ(gl_config_set_format(c.c, "csv"), GL_OK);
  EXPECT_NE(gl_config_set_format(c.c, "xml"), GL_OK);
  ASSERT_EQ(gl_config_set_confidence_delta(c.c, 0.01), GL_OK);
  EXPECT_EQ(gl_config_set_confidence_delta(c.c, 0), GL_INVALID_ARGUMENT);
  ASSERT_EQ(gl_config_set_log_base(c.c, 2), GL_OK);
  ASSERT_EQ(gl_config_set_override(c.c, "squareclose.trials", 5), GL_OK);
  EXPECT_EQ(gl_config_set_override(c.c, "trials", 5), GL_INVALID_ARGUMENT);

  char* js = nullptr;
  ASSERT_EQ(gl_config_to_json(c.c, &js), GL_OK);
  const std::string text = take(js);
  const auto j = nlohmann::json::parse(text);
  EXPECT_EQ(j["seed"].get<std::uint64_t>(), 18446744073709551615ull);
  EXPECT_EQ(j["trials"], 77);
  EXPECT_EQ(j["exact_cap"], 12);
  EXPECT_EQ(j["format"], "csv");
  EXPECT_EQ(j["confidence_delta"], 0.01);
  EXPECT_EQ(j["log_base"], 2.0);
  EXPECT_EQ(j["overrides"]["squareclose.trials"], 5.0);

  Config back;
  ASSERT_EQ(gl_config_from_json(text.c_str(), &back.c), GL_OK);
  char* js2 = nullptr;
  ASSERT_EQ(gl_config_to_json(back.c, &js2), GL_OK);
  EXPECT_EQ(take(js2), text);
}

TEST(CApi, SamplingIsSeededAndThreadIndependent) {
  Graphon half;
  ASSERT_EQ(gl_graphon_from_literal("constant:0.5", &half.w), GL_OK);
  auto sample_text = [&](unsigned threads, uint64_t seed, const char* kind) {
    gl_set_max_threads(threads);
    Graph g;
    EXPECT_EQ(gl_sample_graphon(half.w, kind, 300, seed, &g.g), GL_OK);
    char* t = nullptr;
    EXPECT_EQ(gl_graph_to_text(g.g, &t), GL_OK);
    return take(t);
  };
  for (const char* kind : {"gnw", "gprime"}) {
    const std::string one = sample_text(1, 5, kind);
    EXPECT_EQ(one, sample_text(4, 5, kind)) << kind;
    EXPECT_NE(one, sample_text(1, 6, kind)) << kind;
  }
  gl_set_max_threads(0);

  Graph g;
  EXPECT_EQ(gl_sample_graphon(half.w, "bogus", 3, 0, &g.g), GL_INVALID_ARGUMENT);
  EXPECT_EQ(gl_sample_graphon(half.w, "weighted", 3, 0, &g.g), GL_INVALID_ARGUMENT);

  Graph k3, sub;
  ASSERT_EQ(gl_graph_motif("K3", &k3.g), GL_OK);
  ASSERT_EQ(gl_sample_induced(k3.g, 2, 9, &sub.g), GL_OK);
  EXPECT_EQ(gl_graph_node_count(sub.g), 2u);
  EXPECT_EQ(gl_graph_edge_count(sub.g), 1u);
}

TEST(CApi, PropertiesAndTesters) {
  Property tf, edge, corner;
  ASSERT_EQ(gl_property_new("triangle_free", nullptr, &tf.p), GL_OK);
  ASSERT_EQ(gl_property_new("has_edge", nullptr, &edge.p), GL_OK);
  ASSERT_EQ(gl_property_new("corner_one:0.5", nullptr, &corner.p), GL_OK);
  EXPECT_EQ(gl_property_new("not_a_property", nullptr, &corner.p), GL_INVALID_ARGUMENT);

  Graph k3, k4;
  ASSERT_EQ(gl_graph_motif("K3", &k3.g), GL_OK);
  ASSERT_EQ(gl_graph_motif("K4", &k4.g), GL_OK);
  int member = 1;
  ASSERT_EQ(gl_property_member(tf.p, k3.g, &member), GL_OK);
  EXPECT_EQ(member, 0);
  EXPECT_EQ(gl_property_member(corner.p, k3.g, &member), GL_INVALID_ARGUMENT);

  double d = 0;
  ASSERT_EQ(gl_edit_distance(k3.g, tf.p, &d), GL_OK);
  EXPECT_DOUBLE_EQ(d, 2.0 / 9.0);
  ASSERT_EQ(gl_edit_distance(k4.g, tf.p, &d), GL_OK);
  EXPECT_DOUBLE_EQ(d, 0.25);

  double est = -1;
  ASSERT_EQ(gl_test_graph(k3.g, edge.p, 2, 50, 1, &est), GL_OK);
  EXPECT_EQ(est, 1.0);

  Graphon one, half;
  ASSERT_EQ(gl_graphon_from_literal("constant:1", &one.w), GL_OK);
  ASSERT_EQ(gl_graphon_from_literal("constant:0.5", &half.w), GL_OK);
  Property edgeless;
  ASSERT_EQ(gl_property_new("edgeless", nullptr, &edgeless.p), GL_OK);
  ASSERT_EQ(gl_test_graphon(one.w, edgeless.p, 5, 50, 1, &est), GL_OK);
  EXPECT_EQ(est, 0.0);

  gl_interval iv{};
  ASSERT_EQ(gl_graphon_distance(half.w, corner.p, nullptr, &iv), GL_OK);
  EXPECT_DOUBLE_EQ(iv.lower, 0.125);
  EXPECT_DOUBLE_EQ(iv.upper, 0.125);
}

TEST(CApi, ReportsAreJsonOrCsv) {
  Config c;
  ASSERT_EQ(gl_config_new(&c.c), GL_OK);
  char* s = nullptr;
  ASSERT_EQ(gl_report_density("C4", "constant:0.5", 0, 0, c.c, &s), GL_OK);
  auto j = nlohmann::json::parse(take(s));
  EXPECT_EQ(j["value"], 0.0625);
  EXPECT_EQ(j["exact"], true);

  ASSERT_EQ(gl_report_test("constant:0.5", "density:K2:0.5", 200, 40, c.c, &s), GL_OK);
  j = nlohmann::json::parse(take(s));
  for (const char* key : {"estimate", "ci", "verdict", "witnesses"}) EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["verdict"], "accept");

  EXPECT_EQ(gl_report_test("constant:0.5", "corner_one:0.5", 5, 10, c.c, &s), GL_INVALID_ARGUMENT);

  ASSERT_EQ(gl_config_set_format(c.c, "csv"), GL_OK);
  ASSERT_EQ(gl_report_density("K2", "constant:0.5", 0, 0, c.c, &s), GL_OK);
  const std::string csv = take(s);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "motif,subject,kind,value,exact,ci_halfwidth");

  ASSERT_EQ(gl_property_catalog(c.c, &s), GL_OK);
  EXPECT_EQ(take(s).rfind("syntax,kind,description\n", 0), 0u);
}

TEST(CApi, VerifyReportsPassAndRejectsUnknownNames) {
  Config c;
  ASSERT_EQ(gl_config_new(&c.c), GL_OK);
  ASSERT_EQ(gl_config_set_seed(c.c, 7), GL_OK);
  char* s = nullptr;
  int pass = 0;
  ASSERT_EQ(gl_verify("flex_convexity", c.c, 0, &s, &pass), GL_OK);
  EXPECT_EQ(pass, 1);
  const auto j = nlohmann::json::parse(take(s));
  EXPECT_EQ(j["schema"], "graphlim.verify/1");
  EXPECT_EQ(j["pass"], true);
  EXPECT_FALSE(j["experiments"][0].contains("runtime_seconds"));

  EXPECT_EQ(gl_verify("no_such_experiment", c.c, 0, &s, &pass), GL_INVALID_ARGUMENT);
}
