#pragma once

#include <string>

#include "json.hpp"
#include "o4d/bubbles.hpp"
#include "o4d/decompose.hpp"
#include "o4d/orlicz.hpp"
#include "o4d/radial.hpp"

namespace o4d::io {

using json = nlohmann::ordered_json;

/// Serializes with every floating-point number written as %.16e
/// (17 significant digits); integers stay integers.
std::string dump(const json& j, int indent = 2);

/// Parses text; syntax errors become ValidationError with the byte offset.
json parse(const std::string& text, const std::string& source = "<input>");
json read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

json to_json(const LogRadialFunction& f);
/// `path` prefixes error messages, e.g. "$.members[2]".
LogRadialFunction function_from_json(const json& j, const std::string& path = "$");

json to_json(const decompose::SequenceFamily& fam);
decompose::SequenceFamily family_from_json(const json& j, const std::string& path = "$");

json to_json(const bubbles::Profile& p);
bubbles::Profile profile_from_json(const json& j, const std::string& path = "$");

json to_json(const orlicz::ConcentrationReport& r);
json to_json(const radial::InequalityReport& r);
json to_json(const radial::NormSet& n);
json to_json(const decompose::DecompositionResult& r);

}  // namespace o4d::io
