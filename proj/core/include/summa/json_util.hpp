#pragma once

#include <string>

#include <json.hpp>

#include "summa/number.hpp"
#include "summa/polynomial.hpp"

namespace summa {

using Json = nlohmann::json;

// Sorted keys, no whitespace, floats printed with %.17g (always with a
// fractional part or exponent, so float-ness survives a round trip).
std::string canonical_dump(const Json& j);
std::string format_double(double x);

Json number_to_json(const Number& n);
Number number_from_json(const Json& j);
double double_from_json(const Json& j);

Json polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& j);

Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace summa
