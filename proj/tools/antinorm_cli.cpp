// Command-line front end. Talks to the library exclusively through the C API,
// so it doubles as a smoke test of the shared-library surface.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "antinorm.h"

namespace {

const char* status_name(an_status s) {
  switch (s) {
    case AN_OK: return "AN_OK";
    case AN_ERR_PARSE: return "AN_ERR_PARSE";
    case AN_ERR_DOMAIN: return "AN_ERR_DOMAIN";
    case AN_ERR_PRECONDITION: return "AN_ERR_PRECONDITION";
    case AN_ERR_INVALID_ARGUMENT: return "AN_ERR_INVALID_ARGUMENT";
    case AN_ERR_UNSUPPORTED: return "AN_ERR_UNSUPPORTED";
    case AN_ERR_NOT_FOUND: return "AN_ERR_NOT_FOUND";
    case AN_ERR_WITNESS_NOT_FOUND: return "AN_ERR_WITNESS_NOT_FOUND";
    case AN_ERR_INTERNAL: return "AN_ERR_INTERNAL";
  }
  return "AN_ERR_INTERNAL";
}

int report_error(an_status s) {
  std::cerr << "error[" << status_name(s) << "]: " << an_last_error() << "\n";
  return 1;
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct ScaleHandle {
  an_scale* s = nullptr;
  ~ScaleHandle() { an_scale_free(s); }
};

struct MatrixHandle {
  an_matrix* m = nullptr;
  ~MatrixHandle() { an_matrix_free(m); }
};

struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { an_string_free(s); }
};

/// INPUT is a file (scale JSON, matrix JSON or CSV) or the name of a built-in
/// analytic scale.
an_status resolve_scale(const std::string& input, an_scale** out) {
  if (auto text = read_file(input)) {
    if (text->find("\"steps\"") != std::string::npos)
      return an_scale_parse(text->c_str(), out);
    MatrixHandle m;
    if (an_status s = an_matrix_parse(text->c_str(), &m.m)) return s;
    return an_scale_of_matrix(m.m, out);
  }
  return an_scale_named(input.c_str(), out);
}

an_status resolve_matrix(const std::string& input, an_matrix** out) {
  auto text = read_file(input);
  if (!text) {
    // surface a parse error with the path in the message
    return an_matrix_parse(("cannot open file: " + input).c_str(), out);
  }
  return an_matrix_parse(text->c_str(), out);
}

int run_eval(const std::string& input, const std::string& norm_spec,
             const std::string& anti_spec) {
  if (norm_spec.empty() == anti_spec.empty()) {
    std::cerr << "error[AN_ERR_INVALID_ARGUMENT]: pass exactly one of --norm / "
                 "--antinorm\n";
    return 2;
  }
  double value = 0;
  const auto text = read_file(input);
  const bool is_scale =
      !text || text->find("\"steps\"") != std::string::npos;

  an_status s;
  if (is_scale) {
    ScaleHandle h;
    if ((s = resolve_scale(input, &h.s))) return report_error(s);
    s = norm_spec.empty() ? an_eval_antinorm_scale(anti_spec.c_str(), h.s, &value)
                          : an_eval_norm_scale(norm_spec.c_str(), h.s, &value);
  } else {
    MatrixHandle h;
    if ((s = an_matrix_parse(text->c_str(), &h.m))) return report_error(s);
    s = norm_spec.empty() ? an_eval_antinorm(anti_spec.c_str(), h.m, &value)
                          : an_eval_norm(norm_spec.c_str(), h.m, &value);
  }
  if (s) return report_error(s);
  std::printf("%.15g\n", value);
  return 0;
}

int run_relate(const std::string& a_path, const std::string& b_path,
               const std::string& relation) {
  ScaleHandle a, b;
  if (an_status s = resolve_scale(a_path, &a.s)) return report_error(s);
  if (an_status s = resolve_scale(b_path, &b.s)) return report_error(s);
  OwnedString rep;
  if (an_status s = an_relation_check(a.s, b.s, relation.c_str(), &rep.s))
    return report_error(s);
  std::printf("%s\n", rep.s);
  return std::string(rep.s).find("\"holds\":true") != std::string::npos ? 0 : 1;
}

int run_witness(const std::string& a_path, const std::string& b_path,
                const std::string& op, const std::string& mode,
                const std::string& fexpr, const std::string& gexpr, double eps,
                const std::string& out_dir) {
  MatrixHandle a, b;
  if (an_status s = resolve_matrix(a_path, &a.m)) return report_error(s);
  if (an_status s = resolve_matrix(b_path, &b.m)) return report_error(s);

  std::string req = "{\"op\":\"" + op + "\"";
  if (!mode.empty()) req += ",\"mode\":\"" + mode + "\"";
  if (!fexpr.empty()) req += ",\"f\":\"" + fexpr + "\"";
  if (!gexpr.empty()) req += ",\"g\":\"" + gexpr + "\"";
  req += ",\"eps\":" + std::to_string(eps) + "}";

  OwnedString res;
  if (an_status s = an_witness(req.c_str(), a.m, b.m, &res.s))
    return report_error(s);

  const std::string text = res.s;
  if (!out_dir.empty()) {
    // Pull the unitaries array apart into one matrix file per witness.
    const auto upos = text.find("\"unitaries\":[");
    std::size_t depth = 0, start = 0;
    int index = 0;
    for (std::size_t i = upos + 13; i < text.size(); ++i) {
      if (text[i] == '{') {
        if (depth == 0) start = i;
        ++depth;
      } else if (text[i] == '}') {
        if (--depth == 0) {
          const std::string path = out_dir + "/U" + std::to_string(index++) + ".json";
          std::ofstream out(path, std::ios::binary);
          if (!out) {
            std::cerr << "error[AN_ERR_INVALID_ARGUMENT]: cannot write " << path << "\n";
            return 1;
          }
          out << text.substr(start, i - start + 1) << "\n";
        }
      } else if (text[i] == ']' && depth == 0) {
        break;
      }
    }
  }
  std::printf("%s\n", text.c_str());
  return 0;
}

int run_check(const std::string& cases_csv, int trials, const std::string& dims_csv,
              double tol, long long seed, int jobs, const std::string& scale_b,
              const std::string& out_path, const std::string& format) {
  std::string cfg = "{";
  cfg += "\"trials\":" + std::to_string(trials);
  cfg += ",\"seed\":" + std::to_string(seed);
  cfg += ",\"jobs\":" + std::to_string(jobs);
  char tolbuf[40];
  std::snprintf(tolbuf, sizeof tolbuf, "%.17g", tol);
  cfg += ",\"tolerance\":";
  cfg += tolbuf;
  if (!dims_csv.empty()) {
    cfg += ",\"dims\":[" + dims_csv + "]";
  }
  if (!cases_csv.empty() && cases_csv != "all") {
    cfg += ",\"cases\":[";
    std::istringstream ss(cases_csv);
    std::string item;
    bool first = true;
    while (std::getline(ss, item, ',')) {
      if (!first) cfg += ",";
      cfg += "\"" + item + "\"";
      first = false;
    }
    cfg += "]";
  }
  if (!scale_b.empty()) cfg += ",\"scale_b\":\"" + scale_b + "\"";
  cfg += "}";

  OwnedString reports, summary;
  int all_pass = 0;
  if (an_status s = an_run_suite(cfg.c_str(), &reports.s, &summary.s, &all_pass))
    return report_error(s);

  const std::string& primary = format == "csv" ? summary.s : reports.s;
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error[AN_ERR_INVALID_ARGUMENT]: cannot write " << out_path << "\n";
      return 1;
    }
    out << primary;
    if (format != "csv") std::fputs(summary.s, stdout);
  } else {
    std::fputs(primary.c_str(), stdout);
    if (format != "csv") std::fputs(summary.s, stderr);
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetric norms, anti-norms and majorization checks on Hermitian "
               "matrices and spectral step functions"};
  app.require_subcommand(1);

  long long default_seed = 1;
  if (const char* env = std::getenv("ANTINORM_SEED")) default_seed = std::atoll(env);

  // eval
  std::string eval_input, eval_norm, eval_anti;
  CLI::App* eval = app.add_subcommand("eval", "Evaluate a norm or anti-norm");
  eval->add_option("input", eval_input,
                   "matrix/scale file or named analytic scale")->required();
  eval->add_option("--norm", eval_norm, "gauge spec JSON");
  eval->add_option("--antinorm", eval_anti, "anti-norm spec JSON");

  // relate
  std::string rel_a, rel_b, rel_name = "sub_w";
  CLI::App* relate = app.add_subcommand("relate", "Check a majorization relation");
  relate->add_option("a", rel_a, "first scale")->required();
  relate->add_option("b", rel_b, "second scale")->required();
  relate->add_option("--relation", rel_name, "sub_w | maj | super_w | super_wlog");

  // witness
  std::string wit_a, wit_b, wit_op, wit_mode, wit_f, wit_g, wit_out;
  double wit_eps = 0.0;
  CLI::App* witness = app.add_subcommand("witness", "Produce a certified unitary witness");
  witness->add_option("--op", wit_op, "agm | dominance | triangle | orbit | mixed")
      ->required();
  witness->add_option("--mode", wit_mode, "convex_super | concave_sub");
  witness->add_option("--f", wit_f, "scalar function expression");
  witness->add_option("--g", wit_g, "scalar function expression");
  witness->add_option("--eps", wit_eps, "identity shift");
  witness->add_option("--out", wit_out, "directory for witness unitaries");
  witness->add_option("a", wit_a, "first matrix")->required();
  witness->add_option("b", wit_b, "second matrix")->required();

  // check
  std::string chk_suite, chk_case, chk_dims, chk_scale_b, chk_out, chk_format = "json";
  int chk_trials = 200, chk_jobs = 1;
  double chk_tol = 1e-9;
  long long chk_seed = default_seed;
  CLI::App* check = app.add_subcommand("check", "Run inequality suites");
  check->add_option("--suite", chk_suite, "'all' to run every case");
  check->add_option("--case", chk_case, "comma-separated case ids");
  check->add_option("--trials", chk_trials, "trials per case");
  check->add_option("--dims", chk_dims, "comma-separated dimensions");
  check->add_option("--tol", chk_tol, "relative tolerance");
  check->add_option("--seed", chk_seed, "RNG seed");
  check->add_option("--jobs", chk_jobs, "worker threads");
  check->add_option("--scale-b", chk_scale_b, "named analytic scale for equivalence");
  check->add_option("--out", chk_out, "output file");
  check->add_option("--format", chk_format, "json | csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (eval->parsed()) return run_eval(eval_input, eval_norm, eval_anti);
  if (relate->parsed()) return run_relate(rel_a, rel_b, rel_name);
  if (witness->parsed())
    return run_witness(wit_a, wit_b, wit_op, wit_mode, wit_f, wit_g, wit_eps, wit_out);
  if (check->parsed()) {
    if (chk_suite.empty() && chk_case.empty()) {
      std::cerr << "error[AN_ERR_INVALID_ARGUMENT]: pass --suite all or --case IDS\n";
      return 2;
    }
    return run_check(chk_case.empty() ? "all" : chk_case, chk_trials, chk_dims,
                     chk_tol, chk_seed, chk_jobs, chk_scale_b, chk_out, chk_format);
  }
  return 2;
}
