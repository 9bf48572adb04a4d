#include "antinorm/io.hpp"

#include <cmath>
#include <sstream>

#include "antinorm/util.hpp"
#include "json.hpp"

namespace antinorm {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(ErrorCode::Parse, "malformed JSON");
  return j;
}

double number_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    fail(ErrorCode::Parse, std::string("missing numeric field '") + key + "'");
  return j[key].get<double>();
}

Matrix matrix_from_json(const json& j) {
  if (!j.contains("n") || !j["n"].is_number_integer())
    fail(ErrorCode::Parse, "matrix JSON needs integer field 'n'");
  const int n = j["n"].get<int>();
  if (n <= 0) fail(ErrorCode::Parse, "matrix dimension must be positive");
  if (!j.contains("re") || !j["re"].is_array())
    fail(ErrorCode::Parse, "matrix JSON needs field 're'");
  const json& re = j["re"];
  const json* im = j.contains("im") ? &j["im"] : nullptr;
  if (static_cast<int>(re.size()) != n || (im && static_cast<int>(im->size()) != n))
    fail(ErrorCode::Parse, "matrix rows do not match 'n'");
  Matrix m(n);
  for (int i = 0; i < n; ++i) {
    const json& row = re[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      fail(ErrorCode::Parse, "matrix row " + std::to_string(i) + " has wrong length");
    for (int k = 0; k < n; ++k) {
      double imv = 0;
      if (im) {
        const json& irow = (*im)[static_cast<std::size_t>(i)];
        if (!irow.is_array() || static_cast<int>(irow.size()) != n)
          fail(ErrorCode::Parse, "imag row " + std::to_string(i) + " has wrong length");
        imv = irow[static_cast<std::size_t>(k)].get<double>();
      }
      m(i, k) = Complex(row[static_cast<std::size_t>(k)].get<double>(), imv);
    }
  }
  if (!m.all_finite()) fail(ErrorCode::Parse, "matrix has non-finite entries");
  return m;
}

Matrix matrix_from_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        fail(ErrorCode::Parse, "bad CSV cell '" + cell + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) fail(ErrorCode::Parse, "empty CSV matrix");
  const int n = static_cast<int>(rows.size());
  Matrix m(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n)
      fail(ErrorCode::Parse, "CSV matrix is not square");
    for (int k = 0; k < n; ++k)
      m(i, k) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
  }
  return m;
}

}  // namespace

Matrix parse_matrix_text(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{')
    return matrix_from_json(parse_json(text));
  return matrix_from_csv(text);
}

std::string matrix_to_json(const Matrix& m) {
  json re = json::array(), im = json::array();
  for (int i = 0; i < m.n(); ++i) {
    json rrow = json::array(), irow = json::array();
    for (int k = 0; k < m.n(); ++k) {
      rrow.push_back(m(i, k).real());
      irow.push_back(m(i, k).imag());
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  json j;
  j["n"] = m.n();
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j.dump();
}

SpectralScale parse_scale_text(const std::string& text) {
  const json j = parse_json(text);
  if (!j.contains("steps") || !j["steps"].is_array())
    fail(ErrorCode::Parse, "scale JSON needs field 'steps'");
  std::vector<SpectralScale::Step> steps;
  for (const json& st : j["steps"]) {
    if (!st.is_array() || st.size() != 2)
      fail(ErrorCode::Parse, "each step must be [width, value]");
    steps.push_back({st[0].get<double>(), st[1].get<double>()});
  }
  return SpectralScale::from_steps(std::move(steps));
}

std::string scale_to_json(const SpectralScale& s) {
  json steps = json::array();
  for (const auto& st : s.steps()) steps.push_back(json::array({st.width, st.value}));
  json j;
  j["steps"] = std::move(steps);
  return j.dump();
}

namespace {

SymmetricGauge gauge_from_json(const json& j);

SymmetricGauge gauge_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    fail(ErrorCode::Parse, "gauge spec needs string field 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "kyfan") return SymmetricGauge::ky_fan(number_field(j, "t"));
  if (kind == "schatten") return SymmetricGauge::schatten(number_field(j, "p"));
  if (kind == "opsup") return SymmetricGauge::operator_sup();
  if (kind == "mixture") {
    if (!j.contains("terms") || !j["terms"].is_array())
      fail(ErrorCode::Parse, "mixture needs array field 'terms'");
    std::vector<std::pair<double, SymmetricGauge>> terms;
    for (const json& t : j["terms"]) {
      if (!t.is_array() || t.size() != 2)
        fail(ErrorCode::Parse, "each mixture term must be [weight, gauge]");
      terms.emplace_back(t[0].get<double>(), gauge_from_json(t[1]));
    }
    return SymmetricGauge::mixture(std::move(terms));
  }
  if (kind == "qlift") {
    if (!j.contains("inner")) fail(ErrorCode::Parse, "qlift needs field 'inner'");
    return qnorm_lift(gauge_from_json(j["inner"]));
  }
  fail(ErrorCode::Parse, "unknown gauge kind '" + kind + "'");
}

json gauge_to_json_obj(const SymmetricGauge& g) {
  json j;
  switch (g.kind) {
    case SymmetricGauge::Kind::KyFan:
      j["kind"] = "kyfan";
      j["t"] = g.t;
      break;
    case SymmetricGauge::Kind::Schatten:
      j["kind"] = "schatten";
      j["p"] = g.p;
      break;
    case SymmetricGauge::Kind::OperatorSup:
      j["kind"] = "opsup";
      break;
    case SymmetricGauge::Kind::Mixture: {
      j["kind"] = "mixture";
      json terms = json::array();
      for (const auto& [w, sub] : g.terms)
        terms.push_back(json::array({w, gauge_to_json_obj(sub)}));
      j["terms"] = std::move(terms);
      break;
    }
    case SymmetricGauge::Kind::QLift:
      j["kind"] = "qlift";
      j["inner"] = gauge_to_json_obj(*g.inner);
      break;
  }
  return j;
}

AntiNormSpec antinorm_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    fail(ErrorCode::Parse, "anti-norm spec needs string field 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "derived") {
    if (!j.contains("gauge")) fail(ErrorCode::Parse, "derived needs field 'gauge'");
    return AntiNormSpec::derived(gauge_from_json(j["gauge"]), number_field(j, "p"));
  }
  if (kind == "tailintegral") return AntiNormSpec::tail_integral(number_field(j, "t"));
  if (kind == "logmean") return AntiNormSpec::log_mean(number_field(j, "t"));
  if (kind == "fkdet") return AntiNormSpec::fk_det();
  if (kind == "schattenq") return AntiNormSpec::schatten_q(number_field(j, "q"));
  if (kind == "marcuslopes") {
    const double m = number_field(j, "m");
    if (m != std::floor(m)) fail(ErrorCode::Parse, "'m' must be an integer");
    return AntiNormSpec::marcus_lopes(static_cast<int>(m));
  }
  if (kind == "powercompose") {
    if (!j.contains("inner")) fail(ErrorCode::Parse, "powercompose needs field 'inner'");
    return AntiNormSpec::power_compose(number_field(j, "q"),
                                       antinorm_from_json(j["inner"]));
  }
  fail(ErrorCode::Parse, "unknown anti-norm kind '" + kind + "'");
}

json antinorm_to_json_obj(const AntiNormSpec& a) {
  json j;
  switch (a.kind) {
    case AntiNormSpec::Kind::Derived:
      j["kind"] = "derived";
      j["gauge"] = gauge_to_json_obj(a.gauge);
      j["p"] = a.p;
      break;
    case AntiNormSpec::Kind::TailIntegral:
      j["kind"] = "tailintegral";
      j["t"] = a.t;
      break;
    case AntiNormSpec::Kind::LogMean:
      j["kind"] = "logmean";
      j["t"] = a.t;
      break;
    case AntiNormSpec::Kind::FKDet:
      j["kind"] = "fkdet";
      break;
    case AntiNormSpec::Kind::SchattenQ:
      j["kind"] = "schattenq";
      j["q"] = a.q;
      break;
    case AntiNormSpec::Kind::MarcusLopes:
      j["kind"] = "marcuslopes";
      j["m"] = a.m;
      break;
    case AntiNormSpec::Kind::PowerCompose:
      j["kind"] = "powercompose";
      j["q"] = a.q;
      j["inner"] = antinorm_to_json_obj(*a.inner);
      break;
  }
  return j;
}

}  // namespace

SymmetricGauge gauge_from_json_text(const std::string& text) {
  return gauge_from_json(parse_json(text));
}

std::string gauge_to_json(const SymmetricGauge& g) {
  return gauge_to_json_obj(g).dump();
}

AntiNormSpec antinorm_from_json_text(const std::string& text) {
  return antinorm_from_json(parse_json(text));
}

std::string antinorm_to_json(const AntiNormSpec& a) {
  return antinorm_to_json_obj(a).dump();
}

std::uint64_t fingerprint_text(const std::string& canonical) {
  return fnv1a64(canonical);
}

}  // namespace antinorm
