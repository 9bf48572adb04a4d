#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <string>

#include "antinorm.h"
#include "doctest.h"

namespace {

struct Str {
  char* s = nullptr;
  ~Str() { an_string_free(s); }
  std::string view() const { return s ? s : ""; }
};

const char* kDiag14 = R"({"n":2,"re":[[1,0],[0,4]]})";
const char* kDiag31 = R"({"n":2,"re":[[3,0],[0,1]]})";

}  // namespace

TEST_CASE("version and null-argument handling") {
  CHECK(std::string(an_version()).size() > 0);
  CHECK(an_matrix_parse(nullptr, nullptr) == AN_ERR_INVALID_ARGUMENT);
  CHECK(std::string(an_last_error()).find("null") != std::string::npos);
}

TEST_CASE("matrix parsing, JSON and CSV") {
  an_matrix* m = nullptr;
  REQUIRE(an_matrix_parse(kDiag14, &m) == AN_OK);
  Str json;
  REQUIRE(an_matrix_to_json(m, &json.s) == AN_OK);
  CHECK(json.view().find("\"n\":2") != std::string::npos);
  an_matrix_free(m);

  an_matrix* c = nullptr;
  REQUIRE(an_matrix_parse("2,1\n1,2\n", &c) == AN_OK);
  double v = 0;
  REQUIRE(an_eval_norm("{\"kind\":\"opsup\"}", c, &v) == AN_OK);
  CHECK(v == doctest::Approx(3.0).epsilon(1e-10));
  an_matrix_free(c);

  an_matrix* bad = nullptr;
  CHECK(an_matrix_parse("{\"n\":2}", &bad) == AN_ERR_PARSE);
  CHECK(std::string(an_last_error()).find("re") != std::string::npos);
}

TEST_CASE("norm and anti-norm evaluation") {
  an_matrix* d14 = nullptr;
  REQUIRE(an_matrix_parse(kDiag14, &d14) == AN_OK);
  an_matrix* d31 = nullptr;
  REQUIRE(an_matrix_parse(kDiag31, &d31) == AN_OK);

  double v = 0;
  REQUIRE(an_eval_antinorm("{\"kind\":\"fkdet\"}", d14, &v) == AN_OK);
  CHECK(v == doctest::Approx(2.0).epsilon(1e-12));
  REQUIRE(an_eval_norm("{\"kind\":\"kyfan\",\"t\":0.75}", d31, &v) == AN_OK);
  CHECK(v == doctest::Approx(1.75).epsilon(1e-12));
  REQUIRE(an_eval_antinorm(
              "{\"kind\":\"derived\",\"gauge\":{\"kind\":\"kyfan\",\"t\":1},\"p\":1}",
              d14, &v) == AN_OK);
  CHECK(v == doctest::Approx(1.0 / (0.5 * (1.0 + 0.25))).epsilon(1e-12));

  CHECK(an_eval_antinorm("{\"kind\":\"unheard_of\"}", d14, &v) == AN_ERR_PARSE);

  an_matrix* indef = nullptr;
  REQUIRE(an_matrix_parse(R"({"n":2,"re":[[1,0],[0,-1]]})", &indef) == AN_OK);
  CHECK(an_eval_antinorm("{\"kind\":\"fkdet\"}", indef, &v) == AN_ERR_PRECONDITION);
  an_matrix_free(indef);
  an_matrix_free(d14);
  an_matrix_free(d31);
}

TEST_CASE("scales through the C surface") {
  an_scale* s = nullptr;
  REQUIRE(an_scale_parse(R"({"steps":[[0.5,3],[0.5,1]]})", &s) == AN_OK);
  double v = 0;
  REQUIRE(an_eval_norm_scale("{\"kind\":\"kyfan\",\"t\":0.75}", s, &v) == AN_OK);
  CHECK(v == doctest::Approx(1.75).epsilon(1e-12));
  Str json;
  REQUIRE(an_scale_to_json(s, &json.s) == AN_OK);
  CHECK(json.view().find("steps") != std::string::npos);

  an_matrix* m = nullptr;
  REQUIRE(an_matrix_parse(kDiag31, &m) == AN_OK);
  an_scale* from_matrix = nullptr;
  REQUIRE(an_scale_of_matrix(m, &from_matrix) == AN_OK);
  Str j2;
  REQUIRE(an_scale_to_json(from_matrix, &j2.s) == AN_OK);
  CHECK(j2.view() == R"({"steps":[[0.5,3.0],[0.5,1.0]]})");
  an_matrix_free(m);

  an_scale* named = nullptr;
  REQUIRE(an_scale_named("exp_neg_s", &named) == AN_OK);
  REQUIRE(an_eval_antinorm_scale("{\"kind\":\"fkdet\"}", named, &v) == AN_OK);
  CHECK(v == doctest::Approx(std::exp(-0.5)).epsilon(1e-9));
  CHECK(an_scale_named("made_up", &named) == AN_ERR_NOT_FOUND);

  // relation checks need step data on both sides
  Str rep;
  an_scale* one = nullptr;
  REQUIRE(an_scale_named("one", &one) == AN_OK);
  CHECK(an_relation_check(s, one, "sub_w", &rep.s) == AN_ERR_UNSUPPORTED);

  REQUIRE(an_relation_check(s, s, "super_wlog", &rep.s) == AN_OK);
  CHECK(rep.view().find("\"holds\":true") != std::string::npos);
  CHECK(an_relation_check(s, s, "sideways", &rep.s) == AN_ERR_NOT_FOUND);

  an_scale_free(one);
  an_scale_free(from_matrix);
  an_scale_free(s);
}

TEST_CASE("witness requests") {
  an_matrix* a = nullptr;
  an_matrix* b = nullptr;
  REQUIRE(an_matrix_parse(R"({"n":2,"re":[[2,0.3],[0.3,1]]})", &a) == AN_OK);
  REQUIRE(an_matrix_parse(R"({"n":2,"re":[[1.5,-0.2],[-0.2,2.5]]})", &b) == AN_OK);

  Str res;
  REQUIRE(an_witness("{\"op\":\"agm\"}", a, b, &res.s) == AN_OK);
  CHECK(res.view().find("\"method\":\"constructive\"") != std::string::npos);
  CHECK(res.view().find("unitaries") != std::string::npos);

  Str orbit;
  REQUIRE(an_witness(
              R"x({"op":"orbit","mode":"concave_sub","f":"sqrt(t)","eps":0})x", a, b,
              &orbit.s) == AN_OK);
  CHECK(orbit.view().find("margin") != std::string::npos);

  // dominance on a non-dominated pair surfaces the violating index
  an_matrix* hi = nullptr;
  REQUIRE(an_matrix_parse(R"({"n":2,"re":[[3,0],[0,0.1]]})", &hi) == AN_OK);
  Str nope;
  CHECK(an_witness("{\"op\":\"dominance\"}", hi, a, &nope.s) == AN_ERR_PRECONDITION);
  CHECK(std::string(an_last_error()).find("index") != std::string::npos);

  CHECK(an_witness("{\"op\":\"banana\"}", a, b, &nope.s) == AN_ERR_NOT_FOUND);
  CHECK(an_witness("{}", a, b, &nope.s) == AN_ERR_PARSE);

  an_matrix_free(hi);
  an_matrix_free(a);
  an_matrix_free(b);
}

TEST_CASE("suite runs through the C surface") {
  Str reports, summary;
  int all_pass = 0;
  REQUIRE(an_run_suite(R"({"trials":2,"seed":11,"cases":["rotfeld","sandwich"]})",
                       &reports.s, &summary.s, &all_pass) == AN_OK);
  CHECK(all_pass == 1);
  // two lines per case
  int lines = 0;
  for (char ch : reports.view())
    if (ch == '\n') ++lines;
  CHECK(lines == 4);
  CHECK(summary.view().find("rotfeld,2,0,") != std::string::npos);

  Str r2, s2;
  CHECK(an_run_suite(R"({"cases":["nope"]})", &r2.s, &s2.s, &all_pass) ==
        AN_ERR_NOT_FOUND);
  CHECK(an_run_suite("not json", &r2.s, &s2.s, &all_pass) == AN_ERR_PARSE);

  Str cases;
  REQUIRE(an_suite_cases(&cases.s) == AN_OK);
  CHECK(cases.view().find("superadditivity\n") != std::string::npos);
  CHECK(cases.view().find("equivalence_6_12\n") != std::string::npos);
}
