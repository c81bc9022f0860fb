#include "hsm/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hsm {

namespace {

int line_at(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

// Line of the first occurrence of `needle` after `from`, used to point at
// semantically bad entries (the JSON parser keeps no positions).
int line_of(std::string_view text, std::string_view needle, std::size_t from = 0) {
  const auto pos = text.find(needle, from);
  return pos == std::string_view::npos ? 1 : line_at(text, pos);
}

Rat rat_from_json(const nlohmann::json& value, std::string_view text, const std::string& what) {
  if (value.is_string()) {
    const auto s = value.get<std::string>();
    try {
      return parse_rat(s);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_of(text, "\"" + s + "\""), what + ": " + e.what());
    }
  }
  if (value.is_number_integer()) return Rat(BigInt(value.dump(), 10));
  if (value.is_number_float()) return from_double(value.get<double>());
  throw ParseError(line_of(text, value.dump()), what + ": expected a \"p/q\" string or a number");
}

}  // namespace

std::string format_double(double value) {
  std::ostringstream os;
  os.precision(17);
  os << value;
  return os.str();
}

nlohmann::json rat_to_json(const Rat& value) { return {{"exact", to_string(value)}, {"value", to_double(value)}}; }

nlohmann::json estimation_to_json(const EstimationResult& result) {
  const auto& cfg = result.config;
  nlohmann::json moments = nlohmann::json::array();
  for (const auto& e : result.estimates) {
    nlohmann::json row{{"order", e.order}, {"estimate", e.estimate}, {"std_error", e.std_error}};
    if (e.exact) {
      row["exact_if_known"] = to_string(*e.exact);
      row["z_score"] = e.std_error > 0 ? (e.estimate - to_double(*e.exact)) / e.std_error : 0.0;
    } else {
      row["exact_if_known"] = nullptr;
      row["z_score"] = nullptr;
    }
    moments.push_back(std::move(row));
  }
  nlohmann::json out{{"schema", kSchemaVersion},
                     {"family", to_string(cfg.family)},
                     {"N", cfg.dim},
                     {"target", to_string(cfg.target)},
                     {"n", cfg.samples},
                     {"seed", cfg.seed},
                     {"threads", cfg.threads},
                     {"chunk_size", cfg.chunk_size},
                     {"moments", std::move(moments)}};
  const auto& acc = result.accumulator;
  if (acc.separability_tested() > 0) {
    out["separability"] = {{"count", acc.separable_count()},
                           {"estimate", acc.separable_fraction()},
                           {"std_error", acc.separable_std_error()},
                           {"multiple_negative", acc.multiple_negative_count()}};
  } else {
    out["separability"] = nullptr;
  }
  return out;
}

std::string estimation_to_csv(const EstimationResult& result) {
  std::ostringstream os;
  os << "order,estimate,std_error,exact_if_known,z_score\n";
  for (const auto& e : result.estimates) {
    os << e.order << ',' << format_double(e.estimate) << ',' << format_double(e.std_error) << ',';
    if (e.exact) {
      os << to_string(*e.exact) << ','
         << format_double(e.std_error > 0 ? (e.estimate - to_double(*e.exact)) / e.std_error : 0.0);
    } else {
      os << ',';
    }
    os << '\n';
  }
  const auto& acc = result.accumulator;
  if (acc.separability_tested() > 0) {
    os << "# separable," << acc.separable_count() << ',' << format_double(acc.separable_fraction()) << ','
       << format_double(acc.separable_std_error()) << '\n';
  }
  return os.str();
}

nlohmann::json curve_to_json(const std::vector<CurvePoint>& curve) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& p : curve) out.push_back({{"x", p.x}, {"density", p.density}});
  return out;
}

std::string curve_to_csv(const std::vector<CurvePoint>& curve) {
  std::ostringstream os;
  os << "x,density\n";
  for (const auto& p : curve) os << format_double(p.x) << ',' << format_double(p.density) << '\n';
  return os.str();
}

MomentVector parse_moment_file(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(line_at(text, e.byte == 0 ? 0 : e.byte - 1), e.what());
  }
  if (!doc.is_object()) throw ParseError(1, "expected a JSON object");
  if (!doc.contains("support") || !doc["support"].is_array() || doc["support"].size() != 2) {
    throw ParseError(line_of(text, "\"support\""), "\"support\" must be a two-element array");
  }
  if (!doc.contains("moments") || !doc["moments"].is_array()) {
    throw ParseError(line_of(text, "\"moments\""), "\"moments\" must be an array");
  }
  MomentVector mv;
  mv.support.lo = rat_from_json(doc["support"][0], text, "support");
  mv.support.hi = rat_from_json(doc["support"][1], text, "support");
  if (!(mv.support.lo < mv.support.hi)) {
    throw ParseError(line_of(text, "\"support\""), "support must satisfy a < b");
  }
  int order = 0;
  for (const auto& entry : doc["moments"]) {
    ++order;
    mv.raw.push_back(rat_from_json(entry, text, "moment " + std::to_string(order)));
  }
  return mv;
}

nlohmann::json moment_vector_to_json(const MomentVector& mv) {
  nlohmann::json moments = nlohmann::json::array();
  for (const auto& m : mv.raw) moments.push_back(to_string(m));
  return {{"support", {to_string(mv.support.lo), to_string(mv.support.hi)}}, {"moments", moments}};
}

}  // namespace hsm
