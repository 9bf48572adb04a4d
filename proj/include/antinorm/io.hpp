#pragma once

#include <string>

#include "antinorm/complex_matrix.hpp"
#include "antinorm/gauges.hpp"
#include "antinorm/spectral_scale.hpp"

namespace antinorm {

/// JSON {"n": int, "re": [[...]], "im": [[...]] } (im optional) or, as a
/// fallback, CSV rows of a real symmetric matrix.
Matrix parse_matrix_text(const std::string& text);
std::string matrix_to_json(const Matrix& m);

/// JSON {"steps": [[width, value], ...]}.
SpectralScale parse_scale_text(const std::string& text);
std::string scale_to_json(const SpectralScale& s);

/// e.g. {"kind":"kyfan","t":0.5}, {"kind":"schatten","p":2}, {"kind":"opsup"},
/// {"kind":"mixture","terms":[[w, {...}], ...]}, {"kind":"qlift","inner":{...}}.
SymmetricGauge gauge_from_json_text(const std::string& text);
std::string gauge_to_json(const SymmetricGauge& g);

/// e.g. {"kind":"derived","gauge":{"kind":"kyfan","t":0.5},"p":2},
/// {"kind":"tailintegral","t":0.5}, {"kind":"logmean","t":1}, {"kind":"fkdet"},
/// {"kind":"schattenq","q":0.5}, {"kind":"marcuslopes","m":2},
/// {"kind":"powercompose","q":0.5,"inner":{...}}.
AntiNormSpec antinorm_from_json_text(const std::string& text);
std::string antinorm_to_json(const AntiNormSpec& a);

std::uint64_t fingerprint_text(const std::string& canonical);

}  // namespace antinorm
