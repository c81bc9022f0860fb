#pragma once

// Machine-readable output. Exact values are written as "p/q" strings with a
// float view alongside; documents carry a schema tag.

#include "hsm/moments.hpp"
#include "hsm/reconstruct.hpp"
#include "hsm/sampler.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace hsm {

inline constexpr std::string_view kSchemaVersion = "hsmoments/1";

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

nlohmann::json rat_to_json(const Rat& value);

nlohmann::json estimation_to_json(const EstimationResult& result);
std::string estimation_to_csv(const EstimationResult& result);

nlohmann::json curve_to_json(const std::vector<CurvePoint>& curve);
std::string curve_to_csv(const std::vector<CurvePoint>& curve);

/// Reads {"support": [a, b], "moments": [m_1, ..., m_K]}; entries may be
/// "p/q" strings or JSON numbers (taken exactly). Throws ParseError.
MomentVector parse_moment_file(std::string_view text);
nlohmann::json moment_vector_to_json(const MomentVector& mv);

/// Shortest round-trip decimal form.
std::string format_double(double value);

}  // namespace hsm
