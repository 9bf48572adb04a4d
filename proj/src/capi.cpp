#include "antinorm.h"

#include <cstring>
#include <string>

#include "antinorm/io.hpp"
#include "antinorm/majorization.hpp"
#include "antinorm/orbit.hpp"
#include "antinorm/verify.hpp"
#include "json.hpp"

using namespace antinorm;

struct an_matrix {
  Matrix m;
};

struct an_scale {
  AnyScale s;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

an_status status_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::Parse: return AN_ERR_PARSE;
    case ErrorCode::Domain: return AN_ERR_DOMAIN;
    case ErrorCode::Precondition: return AN_ERR_PRECONDITION;
    case ErrorCode::InvalidArgument: return AN_ERR_INVALID_ARGUMENT;
    case ErrorCode::Unsupported: return AN_ERR_UNSUPPORTED;
    case ErrorCode::NotFound: return AN_ERR_NOT_FOUND;
    case ErrorCode::WitnessNotFound: return AN_ERR_WITNESS_NOT_FOUND;
    case ErrorCode::Internal: return AN_ERR_INTERNAL;
  }
  return AN_ERR_INTERNAL;
}

template <typename Fn>
an_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return AN_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return AN_ERR_INTERNAL;
  }
}

an_status require(bool ok, const char* what) {
  if (ok) return AN_OK;
  g_last_error = std::string("null argument: ") + what;
  return AN_ERR_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

const char* an_version(void) { return "1.0.0"; }

const char* an_last_error(void) { return g_last_error.c_str(); }

void an_string_free(char* s) { delete[] s; }

an_status an_matrix_parse(const char* text, an_matrix** out) {
  if (an_status s = require(text && out, "text/out")) return s;
  return guarded([&] { *out = new an_matrix{parse_matrix_text(text)}; });
}

an_status an_matrix_to_json(const an_matrix* m, char** out) {
  if (an_status s = require(m && out, "matrix/out")) return s;
  return guarded([&] { *out = dup_string(matrix_to_json(m->m)); });
}

void an_matrix_free(an_matrix* m) { delete m; }

an_status an_scale_parse(const char* text, an_scale** out) {
  if (an_status s = require(text && out, "text/out")) return s;
  return guarded([&] { *out = new an_scale{AnyScale(parse_scale_text(text))}; });
}

an_status an_scale_named(const char* id, an_scale** out) {
  if (an_status s = require(id && out, "id/out")) return s;
  return guarded([&] { *out = new an_scale{AnyScale(named_analytic_scale(id))}; });
}

an_status an_scale_of_matrix(const an_matrix* m, an_scale** out) {
  if (an_status s = require(m && out, "matrix/out")) return s;
  return guarded([&] {
    *out = new an_scale{AnyScale(spectral_scale(HermitianMatrix(m->m)))};
  });
}

an_status an_scale_to_json(const an_scale* s, char** out) {
  if (an_status st = require(s && out, "scale/out")) return st;
  return guarded([&] {
    if (!std::holds_alternative<SpectralScale>(s->s))
      fail(ErrorCode::Unsupported, "analytic scales have no step serialization");
    *out = dup_string(scale_to_json(std::get<SpectralScale>(s->s)));
  });
}

void an_scale_free(an_scale* s) { delete s; }

an_status an_eval_norm(const char* gauge_json, const an_matrix* m, double* out) {
  if (an_status s = require(gauge_json && m && out, "gauge/matrix/out")) return s;
  return guarded([&] { *out = norm_eval(gauge_from_json_text(gauge_json), m->m); });
}

an_status an_eval_norm_scale(const char* gauge_json, const an_scale* s, double* out) {
  if (an_status st = require(gauge_json && s && out, "gauge/scale/out")) return st;
  return guarded([&] {
    if (!std::holds_alternative<SpectralScale>(s->s))
      fail(ErrorCode::Unsupported, "norms on analytic scales are not exposed");
    *out = norm_eval(gauge_from_json_text(gauge_json), std::get<SpectralScale>(s->s));
  });
}

an_status an_eval_antinorm(const char* spec_json, const an_matrix* m, double* out) {
  if (an_status s = require(spec_json && m && out, "spec/matrix/out")) return s;
  return guarded([&] {
    *out = antinorm_eval(antinorm_from_json_text(spec_json), HermitianMatrix(m->m));
  });
}

an_status an_eval_antinorm_scale(const char* spec_json, const an_scale* s,
                                 double* out) {
  if (an_status st = require(spec_json && s && out, "spec/scale/out")) return st;
  return guarded(
      [&] { *out = antinorm_eval(antinorm_from_json_text(spec_json), s->s); });
}

an_status an_relation_check(const an_scale* a, const an_scale* b,
                            const char* relation, char** report_json) {
  if (an_status s = require(a && b && relation && report_json, "a/b/relation/out"))
    return s;
  return guarded([&] {
    if (!std::holds_alternative<SpectralScale>(a->s) ||
        !std::holds_alternative<SpectralScale>(b->s))
      fail(ErrorCode::Unsupported, "relation checks need step scales");
    const RelationReport rep =
        relation_check(std::get<SpectralScale>(a->s), std::get<SpectralScale>(b->s),
                       relation_from_string(relation));
    nlohmann::json j;
    j["relation"] = relation_to_string(rep.relation);
    j["holds"] = rep.holds;
    j["worst_t"] = rep.worst_t;
    j["margin"] = rep.margin;
    *report_json = dup_string(j.dump());
  });
}

an_status an_witness(const char* request_json, const an_matrix* a, const an_matrix* b,
                     char** result_json) {
  if (an_status s = require(request_json && a && b && result_json, "request/a/b/out"))
    return s;
  return guarded([&] {
    const nlohmann::json req = nlohmann::json::parse(request_json, nullptr, false);
    if (req.is_discarded() || !req.is_object() || !req.contains("op"))
      fail(ErrorCode::Parse, "witness request needs an 'op' field");
    const std::string op = req["op"].get<std::string>();
    const double eps = req.value("eps", 0.0);

    WitnessResult w;
    if (op == "dominance") {
      w = dominance_unitary(HermitianMatrix(a->m), HermitianMatrix(b->m));
    } else if (op == "agm") {
      w = agm_witness(HermitianMatrix(a->m), HermitianMatrix(b->m));
    } else if (op == "triangle") {
      w = triangle_witness(a->m, b->m);
    } else if (op == "orbit") {
      const std::string mode = req.value("mode", "convex_super");
      if (mode == "convex_super") {
        const ScalarFunction g = with_verified_properties(
            parse_scalar_function(req.value("g", req.value("f", ""))),
            fn_flag(FnProperty::Convex) | fn_flag(FnProperty::ZeroAtZero) |
                fn_flag(FnProperty::NonDecreasing));
        w = orbit_witness(HermitianMatrix(a->m), HermitianMatrix(b->m), g,
                          OrbitMode::ConvexSuper, eps);
      } else if (mode == "concave_sub") {
        const ScalarFunction f = with_verified_properties(
            parse_scalar_function(req.value("f", req.value("g", ""))),
            fn_flag(FnProperty::Concave) | fn_flag(FnProperty::NonDecreasing));
        w = orbit_witness(HermitianMatrix(a->m), HermitianMatrix(b->m), f,
                          OrbitMode::ConcaveSub, eps);
      } else {
        fail(ErrorCode::InvalidArgument, "unknown orbit mode '" + mode + "'");
      }
    } else if (op == "mixed") {
      const ScalarFunction g = with_verified_properties(
          parse_scalar_function(req.value("g", "")),
          fn_flag(FnProperty::Convex) | fn_flag(FnProperty::NonDecreasing));
      w = mixed_witness(a->m, b->m, g, eps);
    } else {
      fail(ErrorCode::NotFound, "unknown witness op '" + op + "'");
    }

    nlohmann::json j;
    j["margin"] = w.psd_margin;
    j["method"] =
        w.method == WitnessResult::Method::Constructive ? "constructive" : "search";
    j["epsilon_used"] = w.epsilon_used;
    nlohmann::json us = nlohmann::json::array();
    for (const Matrix& u : w.unitaries)
      us.push_back(nlohmann::json::parse(matrix_to_json(u)));
    j["unitaries"] = std::move(us);
    *result_json = dup_string(j.dump());
  });
}

an_status an_run_suite(const char* config_json, char** reports_jsonl,
                       char** summary_csv, int* all_pass) {
  if (an_status s =
          require(config_json && reports_jsonl && summary_csv && all_pass,
                  "config/reports/summary/all_pass"))
    return s;
  return guarded([&] {
    const nlohmann::json j = nlohmann::json::parse(config_json, nullptr, false);
    if (j.is_discarded() || !j.is_object())
      fail(ErrorCode::Parse, "malformed suite config");
    SuiteConfig cfg;
    cfg.trials = j.value("trials", cfg.trials);
    cfg.tolerance = j.value("tolerance", cfg.tolerance);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.jobs = j.value("jobs", cfg.jobs);
    cfg.scale_b = j.value("scale_b", cfg.scale_b);
    if (j.contains("dims")) cfg.dims = j["dims"].get<std::vector<int>>();
    if (j.contains("cases")) cfg.cases = j["cases"].get<std::vector<std::string>>();

    const SuiteResult res = run_suite(cfg);
    std::string lines;
    for (const auto& r : res.reports) {
      lines += report_to_json_line(r);
      lines += "\n";
    }
    *reports_jsonl = dup_string(lines);
    *summary_csv = dup_string(summary_to_csv(res));
    *all_pass = res.all_pass() ? 1 : 0;
  });
}

an_status an_suite_cases(char** out) {
  if (an_status s = require(out != nullptr, "out")) return s;
  return guarded([&] {
    std::string names;
    for (const std::string& n : suite_case_names()) {
      names += n;
      names += "\n";
    }
    *out = dup_string(names);
  });
}

}  // extern "C"
